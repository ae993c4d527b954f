//! Reference enumerators: exhaustive backtracking oracles and a
//! Johnson-style blocked search for cycles.

use std::collections::BTreeSet;
use std::ops::ControlFlow;

use thiserror::Error;

use crate::blocks::biconnected_components;
use crate::graph::{Graph, VertexId};
use crate::solution::{canonical_cycle, RunStats, SolutionSink};

/// Default vertex limit for the exhaustive oracles.
pub const DEFAULT_BRUTE_LIMIT: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BaselineError {
    #[error("graph has {n} vertices, above the brute-force limit of {limit}")]
    LimitExceeded { n: usize, limit: usize },
    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: VertexId, n: usize },
    #[error("source and target coincide (vertex {0})")]
    SameVertex(VertexId),
}

fn check_limit(g: &Graph, limit: usize) -> Result<(), BaselineError> {
    if g.n() > limit {
        Err(BaselineError::LimitExceeded { n: g.n(), limit })
    } else {
        Ok(())
    }
}

/// Every simple st-path, by exhaustive DFS with a visited set.
pub fn brute_force_st_paths(
    g: &Graph,
    s: VertexId,
    t: VertexId,
    limit: usize,
) -> Result<BTreeSet<Vec<VertexId>>, BaselineError> {
    check_limit(g, limit)?;
    for v in [s, t] {
        if v >= g.n() {
            return Err(BaselineError::VertexOutOfRange { vertex: v, n: g.n() });
        }
    }
    if s == t {
        return Err(BaselineError::SameVertex(s));
    }
    fn go(g: &Graph, t: VertexId, path: &mut Vec<VertexId>, on: &mut [bool], out: &mut BTreeSet<Vec<VertexId>>) {
        let v = *path.last().expect("nonempty");
        if v == t {
            out.insert(path.clone());
            return;
        }
        for &w in g.adj(v) {
            if !on[w] {
                on[w] = true;
                path.push(w);
                go(g, t, path, on, out);
                path.pop();
                on[w] = false;
            }
        }
    }
    let mut on = vec![false; g.n()];
    on[s] = true;
    let mut out = BTreeSet::new();
    go(g, t, &mut vec![s], &mut on, &mut out);
    Ok(out)
}

/// Every simple cycle in canonical form. Each cycle is found from its
/// minimum vertex only, in the orientation whose second vertex is smaller
/// than its last.
pub fn brute_force_cycles(g: &Graph, limit: usize) -> Result<BTreeSet<Vec<VertexId>>, BaselineError> {
    check_limit(g, limit)?;
    fn go(g: &Graph, s: VertexId, path: &mut Vec<VertexId>, on: &mut [bool], out: &mut BTreeSet<Vec<VertexId>>) {
        let v = *path.last().expect("nonempty");
        for &w in g.adj(v) {
            if w == s && path.len() >= 3 && path[1] < v {
                out.insert(path.clone());
            } else if w > s && !on[w] {
                on[w] = true;
                path.push(w);
                go(g, s, path, on, out);
                path.pop();
                on[w] = false;
            }
        }
    }
    let mut out = BTreeSet::new();
    let mut on = vec![false; g.n()];
    for s in 0..g.n() {
        go(g, s, &mut vec![s], &mut on, &mut out);
    }
    Ok(out)
}

/// Johnson's blocked circuit search, adapted to undirected graphs.
///
/// For each start vertex `s` in ascending order the search runs inside each
/// biconnected component of `G[{v >= s}]` that contains `s` and has at least
/// three edges. Each undirected edge acts as a pair of opposite arcs, so
/// every cycle is met in both orientations; only the orientation with
/// `second < last` is emitted. Returning to `s` after a single edge closes a
/// two-arc circuit: it counts as found for the blocking bookkeeping but is
/// not a cycle of the graph and is never emitted.
///
/// `work_units` counts adjacency scans, pushes, unblocks, and the vertices
/// and edges of every subgraph built.
pub fn johnson_cycles<S: SolutionSink + ?Sized>(g: &Graph, sink: &mut S) -> RunStats {
    let mut stats = RunStats::default();
    let mut scratch = Circuit::default();
    for s in 0..g.n() {
        let rest: Vec<VertexId> = (s..g.n()).collect();
        let (sub, map) = g.induced_subgraph(&rest);
        stats.work_units += (sub.n() + sub.m()) as u64;
        let bt = biconnected_components(&sub);
        stats.work_units += (sub.n() + sub.m()) as u64;
        for &b in bt.vertex_bccs(0) {
            let edges = bt.bcc_edges(b);
            if edges.len() < 3 {
                continue;
            }
            let verts = bt.bcc_vertices(b);
            let local = |x: VertexId| verts.binary_search(&x).expect("block vertex");
            let block = Graph::new(verts.len(), edges.iter().map(|&(x, y)| (local(x), local(y))))
                .expect("block of a simple graph");
            stats.work_units += (block.n() + block.m()) as u64;
            let to_global: Vec<VertexId> = verts.iter().map(|&x| map[x]).collect();
            stats.subruns += 1;
            if scratch.run(&block, &to_global, sink, &mut stats).is_break() {
                stats.truncated = true;
                return stats;
            }
        }
    }
    stats
}

#[derive(Default)]
struct Circuit {
    blocked: Vec<bool>,
    b_sets: Vec<BTreeSet<usize>>,
    frames: Vec<(usize, usize, bool)>,
    path: Vec<usize>,
    out: Vec<VertexId>,
    unblock_stack: Vec<usize>,
}

impl Circuit {
    /// Circuits through local vertex 0, the minimum of `g`.
    fn run<S: SolutionSink + ?Sized>(
        &mut self,
        g: &Graph,
        to_global: &[VertexId],
        sink: &mut S,
        stats: &mut RunStats,
    ) -> ControlFlow<()> {
        let n = g.n();
        self.blocked.clear();
        self.blocked.resize(n, false);
        self.b_sets.clear();
        self.b_sets.resize(n, BTreeSet::new());
        self.frames.clear();
        self.path.clear();
        let s = 0;
        self.blocked[s] = true;
        self.path.push(s);
        self.frames.push((s, 0, false));
        while let Some(&(v, idx, found)) = self.frames.last() {
            stats.work_units += 1;
            if let Some(&w) = g.adj(v).get(idx) {
                self.frames.last_mut().expect("top").1 += 1;
                if w == s {
                    self.frames.last_mut().expect("top").2 = true;
                    let k = self.path.len();
                    if k >= 3 && self.path[1] < self.path[k - 1] {
                        self.out.clear();
                        self.out.extend(self.path.iter().map(|&x| to_global[x]));
                        let c = canonical_cycle(&self.out);
                        stats.leaves += 1;
                        stats.output_size += k as u64;
                        stats.work_units += k as u64;
                        sink.emit(&c)?;
                    }
                } else if !self.blocked[w] {
                    self.blocked[w] = true;
                    self.path.push(w);
                    self.frames.push((w, 0, false));
                }
                continue;
            }
            if found {
                self.unblock(v, stats);
            } else {
                for &w in g.adj(v) {
                    stats.work_units += 1;
                    self.b_sets[w].insert(v);
                }
            }
            self.frames.pop();
            self.path.pop();
            if let Some(parent) = self.frames.last_mut() {
                parent.2 |= found;
            }
        }
        ControlFlow::Continue(())
    }

    fn unblock(&mut self, u: usize, stats: &mut RunStats) {
        self.unblock_stack.clear();
        self.unblock_stack.push(u);
        self.blocked[u] = false;
        while let Some(x) = self.unblock_stack.pop() {
            for w in std::mem::take(&mut self.b_sets[x]) {
                stats.work_units += 1;
                if self.blocked[w] {
                    self.blocked[w] = false;
                    self.unblock_stack.push(w);
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, diamond, path_graph, random_graph, tripartite};
    use crate::solution::CollectSink;
    use proptest::prelude::*;

    /// Falling-factorial count of st-paths in K_n.
    fn complete_path_count(n: u64) -> u64 {
        (0..=n - 2).map(|k| ((n - 1 - k)..=(n - 2)).product::<u64>()).sum()
    }

    #[test]
    fn brute_paths_examples() {
        let k4 = complete(4);
        let p = brute_force_st_paths(&k4, 0, 3, DEFAULT_BRUTE_LIMIT).unwrap();
        assert_eq!(p.len() as u64, complete_path_count(4));
        assert_eq!(p.len(), 5);
        for n in 2..=7 {
            let c = brute_force_st_paths(&complete(n), 0, 1, DEFAULT_BRUTE_LIMIT).unwrap();
            assert_eq!(c.len() as u64, complete_path_count(n as u64));
        }
        let path = brute_force_st_paths(&path_graph(3), 0, 2, DEFAULT_BRUTE_LIMIT).unwrap();
        assert_eq!(path.into_iter().collect::<Vec<_>>(), vec![vec![0, 1, 2]]);
        let two = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert!(brute_force_st_paths(&two, 0, 3, DEFAULT_BRUTE_LIMIT)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn brute_errors() {
        assert_eq!(
            brute_force_cycles(&complete(17), DEFAULT_BRUTE_LIMIT),
            Err(BaselineError::LimitExceeded { n: 17, limit: 16 })
        );
        assert_eq!(
            brute_force_st_paths(&complete(3), 1, 1, 16),
            Err(BaselineError::SameVertex(1))
        );
    }

    #[test]
    fn brute_cycle_examples() {
        assert_eq!(brute_force_cycles(&complete(3), 16).unwrap().len(), 1);
        assert_eq!(brute_force_cycles(&complete(4), 16).unwrap().len(), 7);
        let d1 = brute_force_cycles(&diamond(1).unwrap(), 16).unwrap();
        assert_eq!(d1.len(), 1);
        assert_eq!(d1.iter().next().unwrap().len(), 5);
    }

    #[test]
    fn diamond_cycle_kinds() {
        for k in 1..=4usize {
            let cycles = brute_force_cycles(&diamond(k).unwrap(), 16).unwrap();
            assert_eq!(cycles.len(), 2 * k * k - k);
            let through_a_and_c = cycles.iter().filter(|c| c.contains(&0) && c.contains(&2)).count();
            assert_eq!(through_a_and_c, k * k);
        }
    }

    #[test]
    fn tripartite_six_has_more_than_triangles() {
        let cycles = brute_force_cycles(&tripartite(6).unwrap(), 16).unwrap();
        let triangles = cycles.iter().filter(|c| c.len() == 3).count();
        assert_eq!(triangles, 8);
        assert_eq!(cycles.len(), 63);
    }

    fn johnson_set(g: &Graph) -> (Vec<Vec<VertexId>>, RunStats) {
        let mut sink = CollectSink::default();
        let stats = johnson_cycles(g, &mut sink);
        (sink.solutions, stats)
    }

    #[test]
    fn johnson_examples() {
        let (k4, stats) = johnson_set(&complete(4));
        assert_eq!(k4.len(), 7);
        assert_eq!(stats.leaves, 7);
        assert_eq!(johnson_set(&diamond(2).unwrap()).0.len(), 6);
        assert_eq!(johnson_set(&path_graph(5)).0.len(), 0);
    }

    #[test]
    fn johnson_early_stop() {
        let mut sink = crate::solution::CountSink::with_limit(3);
        let stats = johnson_cycles(&complete(5), &mut sink);
        assert!(stats.truncated);
        assert_eq!(sink.count, 3);
    }

    proptest! {
        #[test]
        fn johnson_matches_brute_force(n in 1usize..=9, p in 0.0f64..1.0, seed: u64) {
            let g = random_graph(n, p, seed);
            let (cycles, _) = johnson_set(&g);
            let set: BTreeSet<_> = cycles.iter().cloned().collect();
            prop_assert_eq!(set.len(), cycles.len(), "duplicate cycle");
            prop_assert_eq!(set, brute_force_cycles(&g, 16).unwrap());
        }
    }
}
