//! Binary-partition listing of st-paths, and cycle listing by reduction to
//! st-paths.
//!
//! Each recursion node holds the current partial path `s ~> u` and a
//! certificate of the bead string `B_{u,t}`. If `u = t` the path is a
//! solution. Otherwise `choose` picks an edge `e = (u, v)`: paths avoiding
//! `e` are listed first (only when `e` is a back edge, since a tree edge is
//! then the only way on), then the paths through `e`. The recursion runs on
//! an explicit frame stack.

use std::ops::ControlFlow;

use serde::Serialize;
use thiserror::Error;

use crate::blocks::{biconnected_components, BeadError, BlockTree};
use crate::certificate::{bead_oracle, CertEdge, Certificate, EdgeKind, UndoLog};
use crate::graph::{Graph, VertexId};
use crate::solution::{canonical_cycle, is_st_path, CheckReport, RunStats, SolutionSink, SpineRecord};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EnumOptions {
    /// Record the compacted head and descendant leaves of every spine.
    pub per_spine: bool,
    /// Verify recursion-tree properties, certificate invariants and undo
    /// round-trips at every node.
    pub check: bool,
    /// In checked runs, also compare the certificate against a bead string
    /// recomputed from scratch when the graph has at most this many
    /// vertices.
    pub oracle_limit: usize,
}

impl EnumOptions {
    /// Every check on, oracle comparison for graphs up to 16 vertices.
    pub fn checked() -> Self {
        EnumOptions {
            per_spine: true,
            check: true,
            oracle_limit: 16,
        }
    }

    pub fn instrumented() -> Self {
        EnumOptions {
            per_spine: true,
            ..Self::default()
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumError {
    #[error("source and target coincide (vertex {0}); list cycles instead")]
    SameVertex(VertexId),
    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: VertexId, n: usize },
}

/// Lists every simple st-path of `g` into `sink`.
pub fn list_st_paths<S: SolutionSink + ?Sized>(
    g: &Graph,
    s: VertexId,
    t: VertexId,
    sink: &mut S,
) -> Result<RunStats, EnumError> {
    list_st_paths_with(g, s, t, EnumOptions::default(), sink)
}

pub fn list_st_paths_with<S: SolutionSink + ?Sized>(
    g: &Graph,
    s: VertexId,
    t: VertexId,
    opts: EnumOptions,
    sink: &mut S,
) -> Result<RunStats, EnumError> {
    for v in [s, t] {
        if v >= g.n() {
            return Err(EnumError::VertexOutOfRange { vertex: v, n: g.n() });
        }
    }
    if s == t {
        return Err(EnumError::SameVertex(s));
    }
    let bt = biconnected_components(g);
    let mut stats = RunStats {
        work_units: (g.n() + g.m()) as u64,
        ..RunStats::default()
    };
    let Some(cert) = certificate_for(g, &bt, s, t) else {
        return Ok(finish(stats, opts));
    };
    let run = Driver::new(g, cert, opts).run(&mut |p: &[VertexId]| sink.emit(p));
    stats.absorb(run);
    Ok(finish(stats, opts))
}

fn finish(mut stats: RunStats, opts: EnumOptions) -> RunStats {
    if opts.per_spine && stats.per_spine.is_none() {
        stats.per_spine = Some(Vec::new());
    }
    if opts.check && stats.check.is_none() {
        stats.check = Some(CheckReport::default());
    }
    stats
}

fn certificate_for(g: &Graph, bt: &BlockTree, s: VertexId, t: VertexId) -> Option<Certificate> {
    match bt.bead_string(s, t) {
        Ok(b) => Some(Certificate::build(g, &b).expect("bead string endpoints are connected")),
        Err(BeadError::Disconnected(..)) => None,
        Err(e) => unreachable!("endpoints validated: {e}"),
    }
}

/// Lists every simple cycle of `g` in canonical form.
pub fn list_cycles<S: SolutionSink + ?Sized>(g: &Graph, sink: &mut S) -> RunStats {
    list_cycles_with(g, EnumOptions::default(), sink)
}

/// Worklist of biconnected pieces. For each piece `B`: take the first back
/// edge `b = (s, t)` of a DFS from its lowest vertex, list the st-paths of
/// `B - b` (each closes a cycle through `b`), then queue the biconnected
/// components of `B - b` that still have a cycle. One decomposition of
/// `B - b` serves both the bead string and the new pieces.
pub fn list_cycles_with<S: SolutionSink + ?Sized>(g: &Graph, opts: EnumOptions, sink: &mut S) -> RunStats {
    let mut stats = RunStats::default();
    let bt = biconnected_components(g);
    stats.work_units += (g.n() + g.m()) as u64;
    let identity: Vec<VertexId> = (0..g.n()).collect();
    let mut work: Vec<(Graph, Vec<VertexId>)> = Vec::new();
    push_blocks(&bt, &identity, &mut work, &mut stats);
    let mut cycle = Vec::new();

    while let Some((h, map)) = work.pop() {
        let (s, t) = first_back_edge(&h).expect("a block with three edges has a cycle");
        let hb = h.without_edge(s, t);
        let bt = biconnected_components(&hb);
        stats.work_units += 2 * (h.n() + h.m()) as u64;
        let cert = certificate_for(&hb, &bt, s, t).expect("removing one block edge keeps its ends connected");
        let run = Driver::new(&hb, cert, opts).run(&mut |p: &[VertexId]| {
            cycle.clear();
            cycle.extend(p.iter().map(|&x| map[x]));
            sink.emit(&canonical_cycle(&cycle))
        });
        let stop = run.truncated;
        stats.absorb(run);
        if stop {
            break;
        }
        push_blocks(&bt, &map, &mut work, &mut stats);
    }
    // a cycle of k vertices has k edges, one more than its path
    stats.output_size += stats.leaves;
    finish(stats, opts)
}

fn push_blocks(bt: &BlockTree, map: &[VertexId], out: &mut Vec<(Graph, Vec<VertexId>)>, stats: &mut RunStats) {
    for b in (0..bt.num_bccs()).rev() {
        let edges = bt.bcc_edges(b);
        if edges.len() < 3 {
            continue;
        }
        let verts = bt.bcc_vertices(b);
        let local = |x: VertexId| verts.binary_search(&x).expect("block vertex");
        let g =
            Graph::new(verts.len(), edges.iter().map(|&(x, y)| (local(x), local(y)))).expect("block of a simple graph");
        stats.work_units += (verts.len() + edges.len()) as u64;
        out.push((g, verts.iter().map(|&x| map[x]).collect()));
    }
}

/// First non-tree edge met by a DFS from vertex 0, as `(scanning vertex,
/// ancestor)`.
fn first_back_edge(g: &Graph) -> Option<(VertexId, VertexId)> {
    let mut parent = vec![usize::MAX; g.n()];
    let mut seen = vec![false; g.n()];
    let mut stack = vec![(0usize, 0usize)];
    seen[0] = true;
    while let Some(top) = stack.last_mut() {
        let v = top.0;
        match g.adj(v).get(top.1) {
            Some(&w) => {
                top.1 += 1;
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = v;
                    stack.push((w, 0));
                } else if parent[v] != w {
                    return Some((v, w));
                }
            }
            None => {
                stack.pop();
            }
        }
    }
    None
}

enum Frame {
    Node {
        spine_start: bool,
    },
    AfterRight {
        e: CertEdge,
        log: UndoLog,
        fp: u64,
        spine: Option<usize>,
        leaves_before: u64,
    },
    AfterLeft {
        log: UndoLog,
        fp: u64,
        spine: Option<usize>,
        leaves_before: u64,
        old_root: VertexId,
    },
}

struct Driver<'g> {
    g: &'g Graph,
    t: VertexId,
    cert: Certificate,
    opts: EnumOptions,
    stats: RunStats,
    report: CheckReport,
    per_spine: Vec<SpineRecord>,
    path: Vec<VertexId>,
    left_depth: usize,
    /// Checked runs only: deleted path vertices and edges removed at the
    /// current root, mirrored for the oracle.
    deleted: Vec<bool>,
    removed: Vec<(VertexId, VertexId)>,
}

impl<'g> Driver<'g> {
    fn new(g: &'g Graph, cert: Certificate, opts: EnumOptions) -> Self {
        let oracle = opts.check && g.n() <= opts.oracle_limit;
        Driver {
            g,
            t: cert.target(),
            path: vec![cert.root()],
            cert,
            opts,
            stats: RunStats::default(),
            report: CheckReport::default(),
            per_spine: Vec::new(),
            left_depth: 0,
            deleted: if oracle { vec![false; g.n()] } else { Vec::new() },
            removed: Vec::new(),
        }
    }

    fn oracle_on(&self) -> bool {
        !self.deleted.is_empty()
    }

    fn fingerprint(&self) -> u64 {
        if self.opts.check {
            self.cert.fingerprint()
        } else {
            0
        }
    }

    fn run(mut self, emit: &mut dyn FnMut(&[VertexId]) -> ControlFlow<()>) -> RunStats {
        self.stats.subruns = 1;
        let mut frames = vec![Frame::Node { spine_start: true }];
        while let Some(frame) = frames.pop() {
            self.stats.work_units += 1;
            match frame {
                Frame::Node { spine_start } => {
                    if self.opts.check {
                        self.check_node();
                    }
                    if self.cert.root() == self.t {
                        if self.leaf(emit).is_break() {
                            self.stats.truncated = true;
                            break;
                        }
                        continue;
                    }
                    let e = self.cert.choose().expect("root differs from target");
                    let leaves_before = self.stats.leaves;
                    let spine = (e.kind == EdgeKind::Back && spine_start).then(|| self.open_spine());
                    if e.kind == EdgeKind::Back {
                        self.stats.binary_nodes += 1;
                        let fp = self.fingerprint();
                        let log = self.cert.right_update(e).expect("chosen back edge");
                        if self.oracle_on() {
                            self.removed.push((e.root, e.other));
                        }
                        frames.push(Frame::AfterRight {
                            e,
                            log,
                            fp,
                            spine,
                            leaves_before,
                        });
                        frames.push(Frame::Node { spine_start: false });
                    } else {
                        self.stats.unary_nodes += 1;
                        self.go_left(e, spine, leaves_before, &mut frames);
                    }
                }
                Frame::AfterRight {
                    e,
                    log,
                    fp,
                    spine,
                    leaves_before,
                } => {
                    self.restore(log, fp);
                    if self.oracle_on() {
                        self.removed.pop();
                    }
                    self.go_left(e, spine, leaves_before, &mut frames);
                }
                Frame::AfterLeft {
                    log,
                    fp,
                    spine,
                    leaves_before,
                    old_root,
                } => {
                    self.restore(log, fp);
                    self.path.pop();
                    self.left_depth -= 1;
                    if self.oracle_on() {
                        self.deleted[old_root] = false;
                    }
                    if let Some(i) = spine {
                        self.cert.close_spine();
                        if let Some(r) = self.per_spine.get_mut(i) {
                            r.descendant_leaves = self.stats.leaves - leaves_before;
                        }
                    }
                    if self.opts.check && self.stats.leaves == leaves_before {
                        self.report.dead_nodes += 1;
                        self.report.note(|| format!("dead node at root {old_root}"));
                    }
                }
            }
        }
        self.stats.work_units += self.cert.work();
        if self.stats.truncated {
            self.drop_open_spines(&frames);
        }
        if self.opts.per_spine {
            self.stats.per_spine = Some(self.per_spine);
        }
        if self.opts.check {
            self.stats.check = Some(self.report);
        }
        self.stats
    }

    /// Spines still open when the sink stopped the run have partial leaf
    /// counts; their records are discarded.
    fn drop_open_spines(&mut self, frames: &[Frame]) {
        let open: Vec<usize> = frames
            .iter()
            .filter_map(|f| match f {
                Frame::AfterRight { spine, .. } | Frame::AfterLeft { spine, .. } => *spine,
                Frame::Node { .. } => None,
            })
            .collect();
        let mut keep = vec![true; self.per_spine.len()];
        for i in open {
            if let Some(k) = keep.get_mut(i) {
                *k = false;
            }
        }
        let mut it = keep.into_iter();
        self.per_spine.retain(|_| it.next().unwrap_or(true));
    }

    fn open_spine(&mut self) -> usize {
        self.stats.spines += 1;
        let record = if self.opts.per_spine || self.opts.check {
            let h = self.cert.compacted_head();
            self.per_spine.push(SpineRecord {
                v_x: h.v_x,
                e_x: h.e_x,
                descendant_leaves: 0,
            });
            self.per_spine.len() - 1
        } else {
            usize::MAX
        };
        self.cert.open_spine();
        record
    }

    fn go_left(&mut self, e: CertEdge, spine: Option<usize>, leaves_before: u64, frames: &mut Vec<Frame>) {
        let fp = self.fingerprint();
        let old_root = e.root;
        let log = self.cert.left_update(e).expect("chosen edge");
        self.path.push(e.other);
        self.left_depth += 1;
        if self.oracle_on() {
            self.deleted[old_root] = true;
        }
        frames.push(Frame::AfterLeft {
            log,
            fp,
            spine,
            leaves_before,
            old_root,
        });
        frames.push(Frame::Node { spine_start: true });
    }

    fn restore(&mut self, log: UndoLog, fp: u64) {
        if let Err(e) = self.cert.restore(log) {
            unreachable!("driver keeps undo logs in LIFO order: {e}");
        }
        if self.opts.check && self.cert.fingerprint() != fp {
            self.report.fingerprint_mismatches += 1;
            let r = self.cert.root();
            self.report
                .note(|| format!("fingerprint changed across update at root {r}"));
        }
    }

    fn leaf(&mut self, emit: &mut dyn FnMut(&[VertexId]) -> ControlFlow<()>) -> ControlFlow<()> {
        let edges = self.path.len() - 1;
        self.stats.leaves += 1;
        self.stats.output_size += edges as u64;
        self.stats.work_units += self.path.len() as u64;
        if self.opts.check {
            if self.left_depth != edges {
                self.report.left_count_mismatches += 1;
            }
            if !is_st_path(self.g, &self.path, self.path[0], self.t) {
                self.report.invariant_failures += 1;
                let p = self.path.clone();
                self.report.note(|| format!("emitted non-path {p:?}"));
            }
        }
        emit(&self.path)
    }

    fn check_node(&mut self) {
        self.report.nodes_checked += 1;
        if let Err(msg) = self.cert.check_invariants() {
            self.report.invariant_failures += 1;
            self.report.note(|| msg);
        }
        if self.oracle_on() {
            let u = self.cert.root();
            let removed: Vec<_> = self.removed.iter().copied().filter(|&(r, _)| r == u).collect();
            let expect = bead_oracle(self.g, &self.deleted, &removed, u, self.t);
            if self.cert.attached_subgraph() != expect {
                self.report.oracle_mismatches += 1;
                self.report
                    .note(|| format!("certificate differs from bead string at root {u}"));
            }
        }
    }
}

/// Cost audit of an instrumented run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CostReport {
    /// `work_units / (m + output_size)`.
    pub ratio: f64,
    pub spines: usize,
    /// Largest per-spine charge `(V_X + E_X) / (E_X - V_X + 1)` over spines
    /// with `E_X > V_X`.
    pub max_charge: f64,
    /// `(a + 1) / (a - 1)` for the density `a = 11/10`.
    pub charge_bound: f64,
    /// Raw measured work.
    pub raw_work: u64,
    /// `m + output_size + sum of (V_X + E_X)` over spines: the cost the
    /// per-node accounting charges for this run.
    pub charged_work: u64,
    pub lemma5_violations: usize,
    pub lemma6_violations: usize,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AuditError {
    #[error("run was not instrumented with per-spine records")]
    NotInstrumented,
}

pub fn audit_costs(stats: &RunStats, g: &Graph) -> Result<CostReport, AuditError> {
    let spines = stats.per_spine.as_ref().ok_or(AuditError::NotInstrumented)?;
    let denom = (g.m() as u64 + stats.output_size).max(1);
    let mut max_charge: f64 = 0.0;
    let mut head_cost = 0u64;
    let mut lemma5 = 0;
    let mut lemma6 = 0;
    for r in spines {
        head_cost += (r.v_x + r.e_x) as u64;
        if r.e_x > r.v_x {
            max_charge = max_charge.max(spine_charge(r.v_x, r.e_x));
        }
        if (r.descendant_leaves as i64) < r.e_x as i64 - r.v_x as i64 + 1 {
            lemma5 += 1;
        }
        let trivial = r.v_x <= 2 && r.e_x <= 2;
        if !trivial && 10 * r.e_x < 11 * r.v_x {
            lemma6 += 1;
        }
    }
    Ok(CostReport {
        ratio: stats.work_units as f64 / denom as f64,
        spines: spines.len(),
        max_charge,
        charge_bound: (1.1 + 1.0) / (1.1 - 1.0),
        raw_work: stats.work_units,
        charged_work: g.m() as u64 + stats.output_size + head_cost,
        lemma5_violations: lemma5,
        lemma6_violations: lemma6,
    })
}

/// `(V_X + E_X) / (E_X - V_X + 1)`.
pub fn spine_charge(v_x: usize, e_x: usize) -> f64 {
    (v_x + e_x) as f64 / (e_x as f64 - v_x as f64 + 1.0)
}

#[cfg(test)]
mod tests;
