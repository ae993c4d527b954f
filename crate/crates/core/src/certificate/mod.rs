//! Dynamic certificate: an augmented DFS tree of the current bead string
//! `B_{u,t}`, rooted at `u`, with `t` on the leftmost root-to-leaf path.
//!
//! Per vertex the certificate stores its tree parent and ordered children
//! (leftmost first), an ordering label `gamma` that increases from ancestor
//! to descendant, a lowpoint, and the back edges to descendants (`lb`) and
//! ancestors (`ab`). Vertices are never deleted: a vertex leaves the
//! certificate when it becomes unreachable from the root through children
//! lists, and its stale fields are ignored from then on.
//!
//! Invariants kept between operations:
//!
//! * the attached tree plus the back edges between attached vertices is
//!   exactly the current bead string;
//! * `lb(v)` lists back edges in preorder of their far endpoint, each tagged
//!   with the child of `v` whose subtree holds that endpoint;
//! * `ab(v)` lists ancestors deepest first, so the root is last;
//! * `low(v) = min(gamma(v), gamma(top of ab(v)), low(children of v))` for
//!   every attached non-root vertex;
//! * an attached vertex `w` off the leftmost path with parent `p != root`
//!   has `low(w) < gamma(p)`.
//!
//! Updates return an [`UndoLog`]; logs must be restored in LIFO order.

mod build;
mod check;
mod layout;
mod undo;
mod update;

use std::fmt::Write as _;
use std::hash::{DefaultHasher, Hash, Hasher};

use thiserror::Error;

use crate::blocks::BlockTree;
use crate::graph::VertexId;

pub use check::bead_oracle;
pub use undo::UndoLog;

use undo::Change;

/// Sentinel for "no vertex".
pub const NIL: usize = usize::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BackRef {
    /// Descendant endpoint of the back edge.
    pub far: VertexId,
    /// Child of the owning vertex whose subtree contains `far`.
    pub via: VertexId,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeKind {
    Tree,
    Back,
}

/// An edge incident to the current root: `(root, other)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CertEdge {
    pub root: VertexId,
    pub other: VertexId,
    pub kind: EdgeKind,
}

/// Size of the compacted head. `v_h`/`e_h` are the uncompacted counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CompactedHead {
    pub v_x: usize,
    pub e_x: usize,
    pub v_h: usize,
    pub e_h: usize,
}

impl CompactedHead {
    /// Single or double edge.
    pub fn is_trivial(&self) -> bool {
        self.v_x <= 2 && self.e_x <= 2
    }

    /// `E_X / V_X >= 11/10`, checked in integers.
    pub fn is_dense(&self) -> bool {
        10 * self.e_x >= 11 * self.v_x
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CertError {
    #[error("source and target coincide (vertex {0})")]
    SameVertex(VertexId),
    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: VertexId, n: usize },
    #[error("target {1} unreachable from {0}")]
    Unreachable(VertexId, VertexId),
    #[error("root already equals the target")]
    RootIsTarget,
    #[error("edge {0:?} is not a valid choice at the current root")]
    InvalidEdge(CertEdge),
    #[error("undo log {got} restored while {expected:?} is the most recent open log")]
    OutOfOrderRestore { expected: Option<u64>, got: u64 },
}

/// Head structure of the spine rooted at `root`, shared by every
/// back-edge `left_update` at that root.
#[derive(Debug, Clone)]
struct SpineCtx {
    root: VertexId,
    t_prime: VertexId,
    tail: Option<VertexId>,
    /// Head vertices other than the root, sorted; position is the local id.
    verts: Vec<VertexId>,
    blocks: BlockTree,
    /// Block-cut tree parents, rooted at the node of `t_prime`.
    node_parent: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct Certificate {
    root: VertexId,
    target: VertexId,
    parent: Vec<usize>,
    children: Vec<Vec<VertexId>>,
    gamma: Vec<i64>,
    low: Vec<i64>,
    on_left: Vec<bool>,
    lb: Vec<Vec<BackRef>>,
    ab: Vec<Vec<VertexId>>,
    work: u64,
    spines: Vec<SpineCtx>,
    next_log: u64,
    open_logs: Vec<u64>,
    pool: Vec<Vec<Change>>,
    /// Scratch map from global id to a local slot; `NIL` between uses.
    slot: Vec<usize>,
}

impl Certificate {
    fn with_capacity(n: usize, root: VertexId, target: VertexId) -> Self {
        Certificate {
            root,
            target,
            parent: vec![NIL; n],
            children: vec![Vec::new(); n],
            gamma: vec![0; n],
            low: vec![0; n],
            on_left: vec![false; n],
            lb: vec![Vec::new(); n],
            ab: vec![Vec::new(); n],
            work: 0,
            spines: Vec::new(),
            next_log: 0,
            open_logs: Vec::new(),
            pool: Vec::new(),
            slot: vec![NIL; n],
        }
    }

    pub fn root(&self) -> VertexId {
        self.root
    }

    pub fn target(&self) -> VertexId {
        self.target
    }

    pub fn parent(&self, v: VertexId) -> Option<VertexId> {
        (self.parent[v] != NIL && v != self.root).then_some(self.parent[v])
    }

    pub fn children(&self, v: VertexId) -> &[VertexId] {
        &self.children[v]
    }

    pub fn gamma(&self, v: VertexId) -> i64 {
        self.gamma[v]
    }

    pub fn lowpoint(&self, v: VertexId) -> i64 {
        self.low[v]
    }

    pub fn on_leftmost_path(&self, v: VertexId) -> bool {
        self.on_left[v]
    }

    pub fn lb(&self, v: VertexId) -> &[BackRef] {
        &self.lb[v]
    }

    /// Ancestors joined to `v` by back edges, deepest first.
    pub fn ab(&self, v: VertexId) -> &[VertexId] {
        &self.ab[v]
    }

    /// Elementary steps performed so far (vertex and edge touches plus
    /// undo entries written and replayed).
    pub fn work(&self) -> u64 {
        self.work
    }

    /// Attached vertices in preorder.
    pub fn preorder(&self) -> Vec<VertexId> {
        let mut out = Vec::new();
        let mut stack = vec![self.root];
        while let Some(v) = stack.pop() {
            out.push(v);
            stack.extend(self.children[v].iter().rev());
        }
        out
    }

    /// Last back edge of `lb(root)`, or else the tree edge to the root's
    /// only child.
    pub fn choose(&self) -> Result<CertEdge, CertError> {
        let u = self.root;
        if u == self.target {
            return Err(CertError::RootIsTarget);
        }
        Ok(match self.lb[u].last() {
            Some(b) => CertEdge {
                root: u,
                other: b.far,
                kind: EdgeKind::Back,
            },
            None => CertEdge {
                root: u,
                other: self.children[u][0],
                kind: EdgeKind::Tree,
            },
        })
    }

    /// Order-sensitive hash of the attached structure.
    pub fn fingerprint(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.root.hash(&mut h);
        self.target.hash(&mut h);
        for v in self.preorder() {
            v.hash(&mut h);
            self.parent(v).hash(&mut h);
            self.gamma[v].hash(&mut h);
            self.low[v].hash(&mut h);
            self.on_left[v].hash(&mut h);
            self.children[v].hash(&mut h);
            self.lb[v].hash(&mut h);
            self.ab[v].hash(&mut h);
        }
        h.finish()
    }

    /// One line per attached vertex in preorder:
    /// `v parent gamma lowpoint [lb:f1,f2] [ab:a1,a2]`, with `-` as the
    /// root's parent and `ab` listed from the topmost ancestor down.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for v in self.preorder() {
            let parent = self.parent(v).map_or("-".to_string(), |p| p.to_string());
            let lb: Vec<String> = self.lb[v].iter().map(|b| b.far.to_string()).collect();
            let ab: Vec<String> = self.ab[v].iter().rev().map(|a| a.to_string()).collect();
            let _ = writeln!(
                out,
                "{v} {parent} {} {} [lb:{}] [ab:{}]",
                self.gamma[v],
                self.low[v],
                lb.join(","),
                ab.join(",")
            );
        }
        out
    }

    /// Exit vertex of the head on the leftmost path and the leftmost child
    /// below it, if any.
    fn head_exit(&self) -> (VertexId, Option<VertexId>) {
        let mut y = self.children[self.root][0];
        loop {
            if y == self.target {
                return (y, None);
            }
            let lc = self.children[y][0];
            if self.low[lc] >= self.gamma[y] {
                return (y, Some(lc));
            }
            y = lc;
        }
    }

    /// Head vertices other than the root, in preorder.
    fn head_vertices(&self, tail: Option<VertexId>) -> Vec<VertexId> {
        let mut out = Vec::new();
        let mut stack = vec![self.children[self.root][0]];
        while let Some(v) = stack.pop() {
            out.push(v);
            stack.extend(self.children[v].iter().rev().filter(|&&c| Some(c) != tail));
        }
        out
    }

    /// Sizes of the head `H_u` and of its compaction. Chain vertices (one
    /// head child, head degree 2, not the root) are contracted; the root and
    /// DFS leaves are kept.
    pub fn compacted_head(&self) -> CompactedHead {
        if self.root == self.target {
            return CompactedHead::default();
        }
        let (t_prime, tail) = self.head_exit();
        let head = self.head_vertices(tail);
        let mut e_h = 0;
        let mut chains = 0;
        for &x in &head {
            e_h += 1 + self.ab[x].len();
            let (kids, down) = if x == t_prime {
                let kids = self.children[x].iter().filter(|&&c| Some(c) != tail).count();
                let down = self.lb[x].iter().filter(|b| Some(b.via) != tail).count();
                (kids, down)
            } else {
                (self.children[x].len(), self.lb[x].len())
            };
            if kids == 1 && 1 + self.ab[x].len() + kids + down == 2 {
                chains += 1;
            }
        }
        let v_h = head.len() + 1;
        CompactedHead {
            v_x: v_h - chains,
            e_x: e_h - chains,
            v_h,
            e_h,
        }
    }
}
