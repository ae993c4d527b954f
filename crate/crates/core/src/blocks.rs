//! Biconnected components, articulation points, the block tree, and bead
//! strings.
//!
//! Internally the block tree is kept as the bipartite block-cut tree: one
//! node per block followed by one node per articulation point. A vertex maps
//! to its cut node if it is an articulation point and to its unique block
//! otherwise, so the bead string between two vertices is read off the unique
//! tree path between their nodes.

use std::collections::VecDeque;

use thiserror::Error;

use crate::graph::{Graph, VertexId};

pub type BccId = usize;

const NONE: usize = usize::MAX;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BeadError {
    #[error("source and target coincide (vertex {0})")]
    SameVertex(VertexId),
    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: VertexId, n: usize },
    #[error("vertices {0} and {1} lie in different connected components")]
    Disconnected(VertexId, VertexId),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockTree {
    n: usize,
    bccs: Vec<Vec<(VertexId, VertexId)>>,
    bcc_vertices: Vec<Vec<VertexId>>,
    articulation_points: Vec<VertexId>,
    vertex_to_bccs: Vec<Vec<BccId>>,
    cut_index: Vec<usize>,
    tree_adjacency: Vec<(BccId, BccId)>,
    node_adj: Vec<Vec<usize>>,
}

/// The beads between `s` and `t`, in order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BeadString {
    pub s: VertexId,
    pub t: VertexId,
    pub beads: Vec<BccId>,
    /// `cut_vertices[i]` joins `beads[i]` and `beads[i + 1]`.
    pub cut_vertices: Vec<VertexId>,
    /// Sorted union of the bead vertex sets.
    pub vertex_set: Vec<VertexId>,
}

/// Hopcroft-Tarjan lowpoint decomposition, iterative. `O(n + m)`.
pub fn biconnected_components(g: &Graph) -> BlockTree {
    let n = g.n();
    let mut disc = vec![NONE; n];
    let mut low = vec![0usize; n];
    let mut estack: Vec<(VertexId, VertexId)> = Vec::new();
    let mut raw: Vec<Vec<(VertexId, VertexId)>> = Vec::new();
    // (vertex, parent, next adjacency index)
    let mut frames: Vec<(VertexId, VertexId, usize)> = Vec::new();
    let mut clock = 0;

    for root in 0..n {
        if disc[root] != NONE || g.degree(root) == 0 {
            continue;
        }
        disc[root] = clock;
        low[root] = clock;
        clock += 1;
        frames.push((root, NONE, 0));
        while let Some(top) = frames.last_mut() {
            let (v, parent, idx) = *top;
            if let Some(&w) = g.adj(v).get(idx) {
                top.2 += 1;
                if disc[w] == NONE {
                    estack.push((v, w));
                    disc[w] = clock;
                    low[w] = clock;
                    clock += 1;
                    frames.push((w, v, 0));
                } else if w != parent && disc[w] < disc[v] {
                    estack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
                continue;
            }
            frames.pop();
            if parent == NONE {
                continue;
            }
            low[parent] = low[parent].min(low[v]);
            if low[v] >= disc[parent] {
                let mut comp = Vec::new();
                loop {
                    let (a, b) = estack.pop().expect("tree edge on edge stack");
                    comp.push((a.min(b), a.max(b)));
                    if (a, b) == (parent, v) {
                        break;
                    }
                }
                comp.sort_unstable();
                raw.push(comp);
            }
        }
    }
    BlockTree::from_blocks(n, raw)
}

impl BlockTree {
    fn from_blocks(n: usize, mut bccs: Vec<Vec<(VertexId, VertexId)>>) -> Self {
        bccs.sort_unstable_by_key(|b| b[0]);
        let mut vertex_to_bccs = vec![Vec::new(); n];
        let mut bcc_vertices = Vec::with_capacity(bccs.len());
        for (id, edges) in bccs.iter().enumerate() {
            let mut vs: Vec<VertexId> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
            vs.sort_unstable();
            vs.dedup();
            for &v in &vs {
                vertex_to_bccs[v].push(id);
            }
            bcc_vertices.push(vs);
        }
        let articulation_points: Vec<VertexId> = (0..n).filter(|&v| vertex_to_bccs[v].len() >= 2).collect();
        let mut cut_index = vec![NONE; n];
        for (i, &v) in articulation_points.iter().enumerate() {
            cut_index[v] = i;
        }
        let nb = bccs.len();
        let mut node_adj = vec![Vec::new(); nb + articulation_points.len()];
        let mut tree_adjacency = Vec::new();
        for (i, &c) in articulation_points.iter().enumerate() {
            let blocks = &vertex_to_bccs[c];
            for &b in blocks {
                node_adj[nb + i].push(b);
                node_adj[b].push(nb + i);
            }
            for &b in &blocks[1..] {
                tree_adjacency.push((blocks[0], b));
            }
        }
        tree_adjacency.sort_unstable();
        BlockTree {
            n,
            bccs,
            bcc_vertices,
            articulation_points,
            vertex_to_bccs,
            cut_index,
            tree_adjacency,
            node_adj,
        }
    }

    pub fn num_bccs(&self) -> usize {
        self.bccs.len()
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn bcc_edges(&self, b: BccId) -> &[(VertexId, VertexId)] {
        &self.bccs[b]
    }

    /// Sorted vertex set.
    pub fn bcc_vertices(&self, b: BccId) -> &[VertexId] {
        &self.bcc_vertices[b]
    }

    /// Sorted ascending.
    pub fn articulation_points(&self) -> &[VertexId] {
        &self.articulation_points
    }

    pub fn is_articulation(&self, v: VertexId) -> bool {
        self.cut_index[v] != NONE
    }

    /// Blocks containing `v`, ascending. Empty for isolated vertices.
    pub fn vertex_bccs(&self, v: VertexId) -> &[BccId] {
        &self.vertex_to_bccs[v]
    }

    /// Block pairs sharing an articulation point. Every block at a cut
    /// vertex is linked to the lowest-numbered block there, which keeps the
    /// relation a forest even when many blocks meet at one vertex.
    pub fn tree_adjacency(&self) -> &[(BccId, BccId)] {
        &self.tree_adjacency
    }

    /// Number of block-cut tree nodes: blocks first, then cut vertices.
    pub fn node_count(&self) -> usize {
        self.node_adj.len()
    }

    /// Block-cut tree node of `v`; `None` for isolated vertices.
    pub fn node_of(&self, v: VertexId) -> Option<usize> {
        if self.cut_index[v] != NONE {
            Some(self.bccs.len() + self.cut_index[v])
        } else {
            self.vertex_to_bccs[v].first().copied()
        }
    }

    /// The block a node stands for, or `None` for cut nodes.
    pub fn node_block(&self, node: usize) -> Option<BccId> {
        (node < self.bccs.len()).then_some(node)
    }

    /// The vertex a cut node stands for.
    pub fn node_cut_vertex(&self, node: usize) -> Option<VertexId> {
        node.checked_sub(self.bccs.len())
            .and_then(|i| self.articulation_points.get(i).copied())
    }

    pub fn node_neighbors(&self, node: usize) -> &[usize] {
        &self.node_adj[node]
    }

    /// BFS parents of the block-cut tree component containing `root`.
    /// The root and unreached nodes get `usize::MAX`.
    pub fn rooted_parents(&self, root: usize) -> Vec<usize> {
        let mut parent = vec![NONE; self.node_count()];
        let mut seen = vec![false; self.node_count()];
        let mut queue = VecDeque::from([root]);
        seen[root] = true;
        while let Some(x) = queue.pop_front() {
            for &y in &self.node_adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    parent[y] = x;
                    queue.push_back(y);
                }
            }
        }
        parent
    }

    /// The bead string between `s` and `t`.
    pub fn bead_string(&self, s: VertexId, t: VertexId) -> Result<BeadString, BeadError> {
        for v in [s, t] {
            if v >= self.n {
                return Err(BeadError::VertexOutOfRange { vertex: v, n: self.n });
            }
        }
        if s == t {
            return Err(BeadError::SameVertex(s));
        }
        let (Some(ns), Some(nt)) = (self.node_of(s), self.node_of(t)) else {
            return Err(BeadError::Disconnected(s, t));
        };
        let mut parent = vec![NONE; self.node_count()];
        parent[ns] = ns;
        let mut queue = VecDeque::from([ns]);
        while let Some(x) = queue.pop_front() {
            if x == nt {
                break;
            }
            for &y in &self.node_adj[x] {
                if parent[y] == NONE {
                    parent[y] = x;
                    queue.push_back(y);
                }
            }
        }
        if parent[nt] == NONE {
            return Err(BeadError::Disconnected(s, t));
        }
        let mut nodes = vec![nt];
        let mut x = nt;
        while x != ns {
            x = parent[x];
            nodes.push(x);
        }
        nodes.reverse();
        let last = nodes.len() - 1;
        let mut beads = Vec::new();
        let mut cut_vertices = Vec::new();
        for (i, &x) in nodes.iter().enumerate() {
            match self.node_block(x) {
                Some(b) => beads.push(b),
                None if i != 0 && i != last => cut_vertices.push(self.node_cut_vertex(x).expect("cut node")),
                None => {}
            }
        }
        let mut vertex_set: Vec<VertexId> = beads
            .iter()
            .flat_map(|&b| self.bcc_vertices[b].iter().copied())
            .collect();
        vertex_set.sort_unstable();
        vertex_set.dedup();
        Ok(BeadString {
            s,
            t,
            beads,
            cut_vertices,
            vertex_set,
        })
    }
}

/// Subgraph induced by the bead string's vertices, with the local-to-`g`
/// vertex map.
pub fn induced_bead_subgraph(g: &Graph, b: &BeadString) -> (Graph, Vec<VertexId>) {
    g.induced_subgraph(&b.vertex_set)
}
