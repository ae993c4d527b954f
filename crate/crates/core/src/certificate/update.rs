//! `right_update` and `left_update`, plus the per-spine head context.

use super::layout::layout;
use super::undo::UndoLog;
use super::{BackRef, CertEdge, CertError, Certificate, EdgeKind, SpineCtx, NIL};
use crate::blocks::biconnected_components;
use crate::graph::{Graph, VertexId};

impl Certificate {
    /// Removes the back edge `e = (root, z)` and repairs lowpoints on the
    /// path from `z` upward, detaching subtrees that fall off the bead
    /// string. The walk stops at the first unchanged lowpoint or at the
    /// root's child.
    pub fn right_update(&mut self, e: CertEdge) -> Result<UndoLog, CertError> {
        let u = self.root;
        if e.kind != EdgeKind::Back || e.root != u || u == self.target {
            return Err(CertError::InvalidEdge(e));
        }
        let i = self.lb[u]
            .iter()
            .rposition(|b| b.far == e.other)
            .ok_or(CertError::InvalidEdge(e))?;
        self.work += (self.lb[u].len() - i) as u64;
        let mut log = self.open_log();
        self.remove_lb(&mut log, u, i);
        let z = e.other;
        let top = self.pop_ab(&mut log, z);
        debug_assert_eq!(top, Some(u), "root must be the topmost ancestor");

        let floor = self.gamma[u];
        let mut w = z;
        loop {
            let l = self.raised_low(w, floor);
            if l == self.low[w] {
                break;
            }
            self.set_low(&mut log, w, l);
            let p = self.parent[w];
            if p == u {
                break;
            }
            if self.is_cut_edge(w, p) {
                self.remove_child(&mut log, p, w);
                // back edges from the subtree reach no higher than `p`
                if l == self.gamma[p] {
                    self.remove_lb_via(&mut log, p, w);
                }
            }
            w = p;
        }
        Ok(log)
    }

    /// Lowpoint of `w` after a back edge to the root is gone. `floor` is
    /// the root's label, the least any lowpoint can be, so the children
    /// scan stops at the first child that reaches it.
    fn raised_low(&mut self, w: VertexId, floor: i64) -> i64 {
        self.work += 1;
        let mut l = self.gamma[w];
        if let Some(&a) = self.ab[w].last() {
            l = l.min(self.gamma[a]);
        }
        for &c in &self.children[w] {
            if l == floor {
                break;
            }
            self.work += 1;
            l = l.min(self.low[c]);
        }
        l
    }

    pub(super) fn is_cut_edge(&self, w: VertexId, p: VertexId) -> bool {
        !self.on_left[w] && self.low[w] >= self.gamma[p]
    }

    /// Moves the root along `e` and deletes the old root.
    ///
    /// A tree edge just promotes the only child. A back edge `(root, z)`
    /// rebuilds the part of the certificate between `z` and the head's exit
    /// vertex `t'`, keeping everything below `t'` untouched; labels on the
    /// new `z ~> t'` path count down from `gamma(t')`.
    pub fn left_update(&mut self, e: CertEdge) -> Result<UndoLog, CertError> {
        let u = self.root;
        if e.root != u || u == self.target {
            return Err(CertError::InvalidEdge(e));
        }
        match e.kind {
            EdgeKind::Tree => {
                if !self.lb[u].is_empty() || self.children[u].first() != Some(&e.other) {
                    return Err(CertError::InvalidEdge(e));
                }
                let v = e.other;
                debug_assert!(self.children[v].len() <= 1, "unary node with extra subtrees");
                let mut log = self.open_log();
                self.set_root(&mut log, v);
                self.set_parent(&mut log, v, NIL);
                Ok(log)
            }
            EdgeKind::Back => {
                if !self.lb[u].iter().rev().any(|b| b.far == e.other) {
                    return Err(CertError::InvalidEdge(e));
                }
                let ctx = match self.spines.last() {
                    Some(c) if c.root == u => self.spines.pop().expect("present"),
                    _ => {
                        let mut c = self.spine_ctx();
                        // marks the context as temporary
                        c.root = NIL;
                        c
                    }
                };
                let log = self.rebuild_from(e.other, &ctx);
                if ctx.root != NIL {
                    self.spines.push(ctx);
                }
                Ok(log)
            }
        }
    }

    /// Computes the head context of the current root and keeps it until
    /// [`close_spine`](Self::close_spine). Back-edge `left_update`s at this
    /// root then share one decomposition of the head.
    pub fn open_spine(&mut self) {
        let ctx = self.spine_ctx();
        self.spines.push(ctx);
    }

    pub fn close_spine(&mut self) {
        let ctx = self.spines.pop();
        debug_assert!(
            ctx.is_some_and(|c| c.root == self.root),
            "spine closed at a foreign root"
        );
    }

    fn spine_ctx(&mut self) -> SpineCtx {
        let u = self.root;
        let (t_prime, tail) = self.head_exit();
        let mut verts = self.head_vertices(tail);
        verts.sort_unstable();
        for (i, &v) in verts.iter().enumerate() {
            self.slot[v] = i;
        }
        let mut edges = Vec::new();
        for &x in &verts {
            let p = self.parent[x];
            if p != u {
                edges.push((self.slot[x], self.slot[p]));
            }
            for &a in &self.ab[x] {
                if a != u {
                    edges.push((self.slot[x], self.slot[a]));
                }
            }
        }
        for &v in &verts {
            self.slot[v] = NIL;
        }
        self.work += (2 * verts.len() + 2 * edges.len()) as u64;
        let w = Graph::new(verts.len(), edges).expect("head edges are simple");
        let blocks = biconnected_components(&w);
        let lt = verts.binary_search(&t_prime).expect("exit vertex in head");
        let node_parent = match blocks.node_of(lt) {
            Some(root) => blocks.rooted_parents(root),
            None => Vec::new(),
        };
        self.work += (w.n() + w.m() + blocks.node_count()) as u64;
        SpineCtx {
            root: u,
            t_prime,
            tail,
            verts,
            blocks,
            node_parent,
        }
    }

    /// Bead string of `z` to `t'` inside the head minus the root, as global
    /// vertex ids (sorted) and edges.
    fn head_beads(&mut self, z: VertexId, ctx: &SpineCtx) -> (Vec<VertexId>, Vec<(VertexId, VertexId)>) {
        if z == ctx.t_prime {
            return (vec![z], Vec::new());
        }
        let bt = &ctx.blocks;
        let local = |v: VertexId| ctx.verts.binary_search(&v).expect("head vertex");
        let nz = bt.node_of(local(z)).expect("z has an edge inside the head");
        let nt = bt.node_of(local(ctx.t_prime)).expect("t' has an edge inside the head");
        let mut vs = Vec::new();
        let mut es = Vec::new();
        let mut x = nz;
        loop {
            self.work += 1;
            if let Some(b) = bt.node_block(x) {
                vs.extend(bt.bcc_vertices(b).iter().map(|&l| ctx.verts[l]));
                es.extend(bt.bcc_edges(b).iter().map(|&(a, c)| (ctx.verts[a], ctx.verts[c])));
            }
            if x == nt {
                break;
            }
            x = ctx.node_parent[x];
            debug_assert!(x != NIL, "z and t' in different head components");
        }
        vs.sort_unstable();
        vs.dedup();
        self.work += (vs.len() + es.len()) as u64;
        (vs, es)
    }

    fn rebuild_from(&mut self, z: VertexId, ctx: &SpineCtx) -> UndoLog {
        let tp = ctx.t_prime;
        let (s_verts, s_edges) = self.head_beads(z, ctx);
        for (i, &v) in s_verts.iter().enumerate() {
            self.slot[v] = i;
        }
        let k = s_verts.len();
        let mut adj = vec![Vec::new(); k];
        for &(a, b) in &s_edges {
            let (la, lb) = (self.slot[a], self.slot[b]);
            adj[la].push(lb);
            adj[lb].push(la);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let lay =
            layout(k, |x| adj[x].as_slice(), self.slot[z], self.slot[tp]).expect("t' reachable from z inside the head");
        for &v in &s_verts {
            self.slot[v] = NIL;
        }
        self.work += lay.work;

        let glob = |x: usize| s_verts[x];
        let path_len = lay.path.len() as i64 - 1;
        let base = self.gamma[tp];
        let mut gamma = vec![0i64; k];
        for (i, &x) in lay.path.iter().enumerate() {
            gamma[x] = base - (path_len - i as i64);
        }
        for &x in &lay.preorder[lay.path.len()..] {
            gamma[x] = gamma[lay.parent[x]] + 1;
        }

        let mut log = self.open_log();
        let kept_lb: Vec<BackRef> = match ctx.tail {
            Some(tail) => self.lb[tp].iter().copied().filter(|b| b.via == tail).collect(),
            None => Vec::new(),
        };
        let mut on_path = vec![false; k];
        for &x in &lay.path {
            on_path[x] = true;
        }
        for &x in &lay.preorder {
            let v = glob(x);
            let p = lay.parent[x];
            self.set_parent(&mut log, v, if p == NIL { NIL } else { glob(p) });
            let mut children: Vec<VertexId> = Vec::with_capacity(lay.children[x].len() + 1);
            let mut lb: Vec<BackRef> = Vec::new();
            if v == tp {
                children.extend(ctx.tail);
                lb.extend_from_slice(&kept_lb);
            }
            children.extend(lay.children[x].iter().map(|&c| glob(c)));
            lb.extend(lay.lb[x].iter().map(|&(far, via)| BackRef {
                far: glob(far),
                via: glob(via),
            }));
            self.set_children(&mut log, v, children);
            self.set_lb(&mut log, v, lb);
            self.set_ab(&mut log, v, lay.ab[x].iter().map(|&a| glob(a)).collect());
            self.set_gamma(&mut log, v, gamma[x]);
            self.set_on_left(&mut log, v, on_path[x]);
        }
        for &x in lay.preorder.iter().rev() {
            let v = glob(x);
            let l = self.fresh_low(v);
            self.set_low(&mut log, v, l);
            debug_assert!(p_ok(self, v), "rebuilt subtree at {v} hangs off the bead string");
        }
        self.set_root(&mut log, z);
        log
    }
}

fn p_ok(c: &Certificate, v: VertexId) -> bool {
    let p = c.parent[v];
    p == NIL || !c.is_cut_edge(v, p)
}
