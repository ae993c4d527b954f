//! Full structural verification, for tests and checked runs.

use std::collections::BTreeSet;

use super::{Certificate, NIL};
use crate::blocks::biconnected_components;
use crate::graph::{Graph, VertexId};

impl Certificate {
    /// Lowpoint recomputed from the current fields, without counting work.
    pub fn recomputed_low(&self, v: VertexId) -> i64 {
        let mut l = self.gamma[v];
        if let Some(&a) = self.ab[v].last() {
            l = l.min(self.gamma[a]);
        }
        self.children[v].iter().fold(l, |l, &c| l.min(self.low[c]))
    }

    /// Attached vertices (sorted) and the edges among them (`u < v`,
    /// sorted): tree edges plus back edges.
    pub fn attached_subgraph(&self) -> (Vec<VertexId>, Vec<(VertexId, VertexId)>) {
        let order = self.preorder();
        let mut edges = Vec::new();
        for &v in &order {
            for &c in &self.children[v] {
                edges.push((v.min(c), v.max(c)));
            }
            for &a in &self.ab[v] {
                edges.push((v.min(a), v.max(a)));
            }
        }
        let mut vs = order;
        vs.sort_unstable();
        edges.sort_unstable();
        (vs, edges)
    }

    /// Checks every documented invariant; returns the first violation.
    pub fn check_invariants(&self) -> Result<(), String> {
        let n = self.parent.len();
        let order = self.preorder();
        let mut pos = vec![NIL; n];
        for (i, &v) in order.iter().enumerate() {
            if pos[v] != NIL {
                return Err(format!("vertex {v} reached twice"));
            }
            pos[v] = i;
        }
        let mut size = vec![1usize; n];
        for &v in order.iter().rev() {
            for &c in &self.children[v] {
                size[v] += size[c];
            }
        }
        let is_anc = |a: VertexId, v: VertexId| pos[a] < pos[v] && pos[v] < pos[a] + size[a];

        if self.parent[self.root] != NIL {
            return Err(format!("root {} has a parent", self.root));
        }
        if pos[self.target] == NIL {
            return Err(format!("target {} detached", self.target));
        }
        if self.root != self.target && self.children[self.root].len() != 1 {
            return Err(format!("root has {} children", self.children[self.root].len()));
        }

        let mut left = BTreeSet::new();
        let mut x = self.target;
        loop {
            left.insert(x);
            if x == self.root {
                break;
            }
            let p = self.parent[x];
            if self.children[p].first() != Some(&x) {
                return Err(format!("{x} on the target path is not a leftmost child"));
            }
            x = p;
        }
        for &v in &order {
            if self.on_left[v] != left.contains(&v) {
                return Err(format!("leftmost-path flag wrong at {v}"));
            }
        }

        let mut down = Vec::new();
        let mut up = Vec::new();
        for &v in &order {
            for &c in &self.children[v] {
                if self.parent[c] != v {
                    return Err(format!("child {c} of {v} has parent {}", self.parent[c]));
                }
                if self.gamma[v] >= self.gamma[c] {
                    return Err(format!("gamma not increasing on tree edge {v}-{c}"));
                }
            }
            for w in self.ab[v].windows(2) {
                if self.gamma[w[0]] <= self.gamma[w[1]] {
                    return Err(format!("ab({v}) not deepest-first"));
                }
            }
            for &a in &self.ab[v] {
                if pos[a] == NIL || !is_anc(a, v) || self.parent[v] == a {
                    return Err(format!("ab({v}) holds non-ancestor or parent {a}"));
                }
                up.push((a, v));
            }
            for w in self.lb[v].windows(2) {
                if pos[w[0].far] >= pos[w[1].far] {
                    return Err(format!("lb({v}) not in preorder"));
                }
            }
            for b in &self.lb[v] {
                if pos[b.far] == NIL || self.parent[b.via] != v || pos[b.via] == NIL {
                    return Err(format!("lb({v}) entry {b:?} detached or bad via"));
                }
                if !(b.via == b.far || is_anc(b.via, b.far)) || self.parent[b.far] == v {
                    return Err(format!("lb({v}) entry {b:?} not below its via child"));
                }
                down.push((v, b.far));
            }
            if v != self.root {
                if self.low[v] != self.recomputed_low(v) {
                    return Err(format!(
                        "low({v}) = {} but recomputes to {}",
                        self.low[v],
                        self.recomputed_low(v)
                    ));
                }
                let p = self.parent[v];
                if p != self.root && self.is_cut_edge(v, p) {
                    return Err(format!("subtree at {v} hangs off the bead string"));
                }
            }
        }
        down.sort_unstable();
        up.sort_unstable();
        if down != up {
            return Err("lb and ab lists disagree".into());
        }
        Ok(())
    }
}

/// Bead string of `u`, `t` computed from scratch in `g` minus the
/// `deleted` vertices and the `removed` edges: its vertices (sorted) and
/// edges (`a < b`, sorted). Independent of the certificate machinery.
pub fn bead_oracle(
    g: &Graph,
    deleted: &[bool],
    removed: &[(VertexId, VertexId)],
    u: VertexId,
    t: VertexId,
) -> (Vec<VertexId>, Vec<(VertexId, VertexId)>) {
    let gone: BTreeSet<(VertexId, VertexId)> = removed.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
    let h = Graph::new(
        g.n(),
        g.edges()
            .filter(|&(a, b)| !deleted[a] && !deleted[b] && !gone.contains(&(a, b))),
    )
    .expect("subgraph of a simple graph");
    if u == t {
        return (vec![u], Vec::new());
    }
    let bt = biconnected_components(&h);
    match bt.bead_string(u, t) {
        Ok(b) => {
            let mut edges: Vec<_> = b.beads.iter().flat_map(|&x| bt.bcc_edges(x).to_vec()).collect();
            edges.sort_unstable();
            (b.vertex_set, edges)
        }
        Err(_) => (Vec::new(), Vec::new()),
    }
}
