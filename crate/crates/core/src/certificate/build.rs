//! Initial construction: a path-first DFS from `s`, lowpoints bottom-up,
//! then pruning of the subtrees that hang off the bead string.

use super::layout::layout;
use super::{BackRef, CertError, Certificate, NIL};
use crate::blocks::{biconnected_components, BeadError, BeadString};
use crate::graph::{Graph, VertexId};

impl Certificate {
    /// Certificate for `s`, `t` built over the bead string between them.
    pub fn for_pair(g: &Graph, s: VertexId, t: VertexId) -> Result<Self, CertError> {
        let bt = biconnected_components(g);
        let b = bt.bead_string(s, t).map_err(|e| match e {
            BeadError::SameVertex(v) => CertError::SameVertex(v),
            BeadError::VertexOutOfRange { vertex, n } => CertError::VertexOutOfRange { vertex, n },
            BeadError::Disconnected(s, t) => CertError::Unreachable(s, t),
        })?;
        let mut c = Self::build(g, &b)?;
        c.work += (g.n() + g.m()) as u64;
        Ok(c)
    }

    /// Certificate rooted at `b.s` over the vertices of `b`.
    pub fn build(g: &Graph, b: &BeadString) -> Result<Self, CertError> {
        Self::build_within(g, &b.vertex_set, b.s, b.t)
    }

    /// Certificate rooted at `s` over the subgraph induced by `vertices`.
    /// Parts of that subgraph outside the bead string are pruned, so any
    /// superset of the bead string gives the same attached structure.
    pub fn build_within(g: &Graph, vertices: &[VertexId], s: VertexId, t: VertexId) -> Result<Self, CertError> {
        for v in [s, t] {
            if v >= g.n() {
                return Err(CertError::VertexOutOfRange { vertex: v, n: g.n() });
            }
        }
        if s == t {
            return Err(CertError::SameVertex(s));
        }
        let (sub, map) = g.induced_subgraph(vertices);
        let local = |v: VertexId| map.binary_search(&v).map_err(|_| CertError::Unreachable(s, t));
        let (ls, lt) = (local(s)?, local(t)?);
        let lay = layout(sub.n(), |v| sub.adj(v), ls, lt).ok_or(CertError::Unreachable(s, t))?;

        let mut c = Certificate::with_capacity(g.n(), s, t);
        c.work = lay.work + (sub.n() + sub.m()) as u64;
        for &x in &lay.preorder {
            let v = map[x];
            c.parent[v] = if lay.parent[x] == NIL { NIL } else { map[lay.parent[x]] };
            c.children[v] = lay.children[x].iter().map(|&y| map[y]).collect();
            c.gamma[v] = lay.depth[x] as i64;
            c.lb[v] = lay.lb[x]
                .iter()
                .map(|&(far, via)| BackRef {
                    far: map[far],
                    via: map[via],
                })
                .collect();
            c.ab[v] = lay.ab[x].iter().map(|&a| map[a]).collect();
        }
        for &x in &lay.path {
            c.on_left[map[x]] = true;
        }
        let order: Vec<VertexId> = lay.preorder.iter().map(|&x| map[x]).collect();
        for &v in order.iter().rev() {
            c.low[v] = c.fresh_low(v);
        }
        c.prune(&order);
        Ok(c)
    }

    /// `min(gamma(v), gamma(top of ab(v)), low(children))`.
    pub(super) fn fresh_low(&mut self, v: VertexId) -> i64 {
        self.work += 1 + self.children[v].len() as u64;
        self.recomputed_low(v)
    }

    /// Detaches every subtree joined to the rest only through its parent.
    fn prune(&mut self, preorder: &[VertexId]) {
        let mut cut = vec![false; self.parent.len()];
        for &v in &preorder[1..] {
            let p = self.parent[v];
            cut[v] = cut[p] || self.is_cut_edge(v, p);
        }
        for &v in preorder {
            if cut[v] {
                continue;
            }
            self.work += (self.children[v].len() + self.lb[v].len()) as u64;
            self.children[v].retain(|&c| !cut[c]);
            self.lb[v].retain(|b| !cut[b.via]);
        }
    }
}
