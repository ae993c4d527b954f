//! Output types, sinks, and run statistics.

use std::ops::ControlFlow;

use serde::Serialize;

use crate::graph::{Graph, VertexId};

/// Rotates a cycle so its minimum vertex is first and orients it so the
/// second vertex is the smaller neighbor of the first.
pub fn canonical_cycle(cycle: &[VertexId]) -> Vec<VertexId> {
    let k = cycle.len();
    if k == 0 {
        return Vec::new();
    }
    let (i, _) = cycle.iter().enumerate().min_by_key(|&(_, v)| *v).expect("nonempty");
    let next = cycle[(i + 1) % k];
    let prev = cycle[(i + k - 1) % k];
    if next <= prev {
        (0..k).map(|j| cycle[(i + j) % k]).collect()
    } else {
        (0..k).map(|j| cycle[(i + k - j) % k]).collect()
    }
}

/// True iff `p` is a simple path in `g` from `s` to `t`.
pub fn is_st_path(g: &Graph, p: &[VertexId], s: VertexId, t: VertexId) -> bool {
    p.first() == Some(&s)
        && p.last() == Some(&t)
        && p.windows(2).all(|w| g.has_edge(w[0], w[1]))
        && all_distinct(g.n(), p)
}

/// True iff `c` is a simple cycle of length at least 3 in canonical form.
pub fn is_canonical_cycle(g: &Graph, c: &[VertexId]) -> bool {
    c.len() >= 3
        && all_distinct(g.n(), c)
        && (0..c.len()).all(|i| g.has_edge(c[i], c[(i + 1) % c.len()]))
        && canonical_cycle(c) == c
}

fn all_distinct(n: usize, vs: &[VertexId]) -> bool {
    let mut seen = vec![false; n];
    vs.iter().all(|&v| v < n && !std::mem::replace(&mut seen[v], true))
}

/// Receives solutions as they are emitted. Returning `Break` stops the
/// enumeration early.
pub trait SolutionSink {
    fn emit(&mut self, vertices: &[VertexId]) -> ControlFlow<()>;
}

impl<F: FnMut(&[VertexId]) -> ControlFlow<()>> SolutionSink for F {
    fn emit(&mut self, vertices: &[VertexId]) -> ControlFlow<()> {
        self(vertices)
    }
}

/// Counts solutions and their total vertex count without storing them.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct CountSink {
    pub count: u64,
    pub total_vertices: u64,
    /// Stop after this many solutions, if set.
    pub limit: Option<u64>,
}

impl CountSink {
    pub fn with_limit(limit: u64) -> Self {
        CountSink {
            limit: Some(limit),
            ..Self::default()
        }
    }
}

impl SolutionSink for CountSink {
    fn emit(&mut self, vertices: &[VertexId]) -> ControlFlow<()> {
        self.count += 1;
        self.total_vertices += vertices.len() as u64;
        match self.limit {
            Some(l) if self.count >= l => ControlFlow::Break(()),
            _ => ControlFlow::Continue(()),
        }
    }
}

#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct CollectSink {
    pub solutions: Vec<Vec<VertexId>>,
}

impl SolutionSink for CollectSink {
    fn emit(&mut self, vertices: &[VertexId]) -> ControlFlow<()> {
        self.solutions.push(vertices.to_vec());
        ControlFlow::Continue(())
    }
}

/// Per-spine record: compacted head size and the number of leaves below
/// the spine's first node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SpineRecord {
    pub v_x: usize,
    pub e_x: usize,
    pub descendant_leaves: u64,
}

/// Failures found by checked runs. All zero on a correct run.
#[derive(Debug, Default, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub nodes_checked: u64,
    pub fingerprint_mismatches: u64,
    pub left_count_mismatches: u64,
    pub dead_nodes: u64,
    pub invariant_failures: u64,
    pub oracle_mismatches: u64,
    /// First few failure descriptions, for diagnostics.
    pub messages: Vec<String>,
}

impl CheckReport {
    pub fn is_clean(&self) -> bool {
        self.fingerprint_mismatches == 0
            && self.left_count_mismatches == 0
            && self.dead_nodes == 0
            && self.invariant_failures == 0
            && self.oracle_mismatches == 0
    }

    pub(crate) fn note(&mut self, msg: impl FnOnce() -> String) {
        if self.messages.len() < 8 {
            self.messages.push(msg());
        }
    }

    pub fn absorb(&mut self, other: CheckReport) {
        self.nodes_checked += other.nodes_checked;
        self.fingerprint_mismatches += other.fingerprint_mismatches;
        self.left_count_mismatches += other.left_count_mismatches;
        self.dead_nodes += other.dead_nodes;
        self.invariant_failures += other.invariant_failures;
        self.oracle_mismatches += other.oracle_mismatches;
        for m in other.messages {
            self.note(|| m);
        }
    }
}

/// Recursion-tree and work counters of one enumeration.
///
/// `output_size` counts edges: `|p| - 1` per path and `|c|` per cycle.
#[derive(Debug, Default, Clone, PartialEq, Eq, Serialize)]
pub struct RunStats {
    pub leaves: u64,
    pub unary_nodes: u64,
    pub binary_nodes: u64,
    pub spines: u64,
    pub work_units: u64,
    pub output_size: u64,
    /// Number of st-path runs (1 for path listing, one per reduction step
    /// for cycle listing).
    pub subruns: u64,
    /// Set when the sink stopped the run early.
    pub truncated: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub per_spine: Option<Vec<SpineRecord>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub check: Option<CheckReport>,
}

impl RunStats {
    pub(crate) fn absorb(&mut self, other: RunStats) {
        self.leaves += other.leaves;
        self.unary_nodes += other.unary_nodes;
        self.binary_nodes += other.binary_nodes;
        self.spines += other.spines;
        self.work_units += other.work_units;
        self.output_size += other.output_size;
        self.subruns += other.subruns;
        self.truncated |= other.truncated;
        if let Some(p) = other.per_spine {
            self.per_spine.get_or_insert_with(Vec::new).extend(p);
        }
        if let Some(c) = other.check {
            self.check.get_or_insert_with(CheckReport::default).absorb(c);
        }
    }
}
