//! Immutable simple undirected graphs and the edge-list text format.
//!
//! The edge-list format is line oriented:
//!
//! ```text
//! # comment
//! n m_declared
//! u v
//! ...
//! ```
//!
//! The header declares the vertex count `n`; ids are dense in `[0, n)`.
//! `m_declared` is advisory: duplicate edge lines (in either orientation)
//! are collapsed and a mismatch between the declared and actual edge count
//! is reported as a warning.

use std::fmt::Write as _;

use thiserror::Error;

/// Dense vertex index in `[0, n)`.
pub type VertexId = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop on vertex {0}")]
    SelfLoop(VertexId),
    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: VertexId, n: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("empty input")]
    Empty,
    #[error("line {line}: malformed {what}: {text:?}")]
    Malformed {
        line: usize,
        what: &'static str,
        text: String,
    },
    #[error("line {line}: {source}")]
    Invalid {
        line: usize,
        #[source]
        source: GraphError,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseWarning {
    /// The header's edge count differs from the number of distinct edges.
    EdgeCountMismatch { declared: usize, actual: usize },
}

impl std::fmt::Display for ParseWarning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ParseWarning::EdgeCountMismatch { declared, actual } => write!(
                f,
                "header declares {declared} edges but {actual} distinct edges were read"
            ),
        }
    }
}

/// Simple undirected graph in sorted adjacency-list form.
///
/// Invariants: no self-loops, no parallel edges, symmetric adjacency,
/// every adjacency list sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<VertexId>>,
    m: usize,
}

impl Graph {
    /// Builds a graph from an edge iterator. Duplicates (in either
    /// orientation) are collapsed.
    pub fn new<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut m2 = 0;
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            m2 += list.len();
        }
        Ok(Graph { adj, m: m2 / 2 })
    }

    /// Graph with `n` vertices and no edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Sorted neighborhood of `v`, checked.
    pub fn neighbors(&self, v: VertexId) -> Result<&[VertexId], GraphError> {
        self.adj
            .get(v)
            .map(Vec::as_slice)
            .ok_or(GraphError::VertexOutOfRange { vertex: v, n: self.n() })
    }

    /// Sorted neighborhood of `v`. Panics if `v` is out of range.
    #[inline]
    pub fn adj(&self, v: VertexId) -> &[VertexId] {
        &self.adj[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// All edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<(), GraphError> {
        if v < self.n() {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange { vertex: v, n: self.n() })
        }
    }

    /// Subgraph induced by `vertices` (need not be sorted), relabelled to
    /// `0..k` in ascending order of the original ids. Returns the subgraph
    /// and the local-to-original id map.
    pub fn induced_subgraph(&self, vertices: &[VertexId]) -> (Graph, Vec<VertexId>) {
        let mut map: Vec<VertexId> = vertices.to_vec();
        map.sort_unstable();
        map.dedup();
        let mut local = vec![usize::MAX; self.n()];
        for (i, &v) in map.iter().enumerate() {
            local[v] = i;
        }
        let adj = map
            .iter()
            .map(|&v| {
                self.adj[v]
                    .iter()
                    .filter_map(|&w| (local[w] != usize::MAX).then_some(local[w]))
                    .collect::<Vec<_>>()
            })
            .collect::<Vec<_>>();
        let m = adj.iter().map(Vec::len).sum::<usize>() / 2;
        (Graph { adj, m }, map)
    }

    /// Copy of the graph with one edge removed (no-op if absent).
    pub fn without_edge(&self, u: VertexId, v: VertexId) -> Graph {
        let mut g = self.clone();
        if let Ok(i) = g.adj[u].binary_search(&v) {
            g.adj[u].remove(i);
            let j = g.adj[v].binary_search(&u).expect("symmetric adjacency");
            g.adj[v].remove(j);
            g.m -= 1;
        }
        g
    }
}

/// Connected components, each sorted ascending, ordered by smallest member.
pub fn connected_components(g: &Graph) -> Vec<Vec<VertexId>> {
    let mut seen = vec![false; g.n()];
    let mut out = Vec::new();
    let mut stack = Vec::new();
    for s in 0..g.n() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        stack.push(s);
        let mut comp = Vec::new();
        while let Some(v) = stack.pop() {
            comp.push(v);
            for &w in g.adj(v) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Parses the edge-list format, discarding warnings.
pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    parse_edge_list_with_warnings(text).map(|(g, _)| g)
}

pub fn parse_edge_list_with_warnings(text: &str) -> Result<(Graph, Vec<ParseWarning>), ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let lineno = i + 1;
        let mut fields = line.split_whitespace();
        let pair = match (fields.next(), fields.next(), fields.next()) {
            (Some(a), Some(b), None) => a.parse::<usize>().ok().zip(b.parse::<usize>().ok()),
            _ => None,
        };
        let what = if header.is_none() { "header" } else { "edge" };
        let (a, b) = pair.ok_or_else(|| ParseError::Malformed {
            line: lineno,
            what,
            text: raw.to_string(),
        })?;
        match header {
            None => header = Some((a, b)),
            Some((n, _)) => {
                for x in [a, b] {
                    if x >= n {
                        return Err(ParseError::Invalid {
                            line: lineno,
                            source: GraphError::VertexOutOfRange { vertex: x, n },
                        });
                    }
                }
                if a == b {
                    return Err(ParseError::Invalid {
                        line: lineno,
                        source: GraphError::SelfLoop(a),
                    });
                }
                edges.push((a, b));
            }
        }
    }
    let (n, declared) = header.ok_or(ParseError::Empty)?;
    let g = Graph::new(n, edges).expect("edges validated while parsing");
    let mut warnings = Vec::new();
    if declared != g.m() {
        warnings.push(ParseWarning::EdgeCountMismatch {
            declared,
            actual: g.m(),
        });
    }
    Ok((g, warnings))
}

/// Serializes to the edge-list format, one `u v` line per edge with `u < v`.
pub fn to_edge_list(g: &Graph) -> String {
    let mut out = String::with_capacity(16 + 12 * g.m());
    let _ = writeln!(out, "{} {}", g.n(), g.m());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_triangle() {
        let g = parse_edge_list("3 3\n0 1\n1 2\n2 0\n").unwrap();
        assert_eq!((g.n(), g.m()), (3, 3));
        assert_eq!(g.neighbors(0).unwrap(), &[1, 2]);
    }

    #[test]
    fn rejects_self_loop() {
        let err = parse_edge_list("2 1\n0 0\n").unwrap_err();
        assert!(matches!(
            err,
            ParseError::Invalid {
                line: 2,
                source: GraphError::SelfLoop(0)
            }
        ));
    }

    #[test]
    fn collapses_duplicate_edges() {
        let (g, warnings) = parse_edge_list_with_warnings("4 7\n0 1\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n").unwrap();
        // six distinct unordered pairs of a 4-set
        assert_eq!((g.n(), g.m()), (4, 6));
        assert_eq!(
            warnings,
            vec![ParseWarning::EdgeCountMismatch { declared: 7, actual: 6 }]
        );
        assert_eq!(g.neighbors(2).unwrap(), &[0, 1, 3]);
    }

    #[test]
    fn parse_errors() {
        assert_eq!(parse_edge_list(""), Err(ParseError::Empty));
        assert_eq!(parse_edge_list("# only a comment\n\n"), Err(ParseError::Empty));
        assert!(matches!(
            parse_edge_list("3 1\n0 x\n"),
            Err(ParseError::Malformed { line: 2, .. })
        ));
        assert!(matches!(
            parse_edge_list("3 1\n0 1 2\n"),
            Err(ParseError::Malformed { line: 2, .. })
        ));
        assert!(matches!(
            parse_edge_list("3\n"),
            Err(ParseError::Malformed {
                line: 1,
                what: "header",
                ..
            })
        ));
        assert!(matches!(
            parse_edge_list("3 1\n0 3\n"),
            Err(ParseError::Invalid {
                source: GraphError::VertexOutOfRange { vertex: 3, n: 3 },
                ..
            })
        ));
    }

    #[test]
    fn comments_and_blank_lines() {
        let g = parse_edge_list("# header next\n3 2\n\n0 1\n# mid\n1 2\n").unwrap();
        assert_eq!(g.m(), 2);
    }

    #[test]
    fn neighbors_examples() {
        let path = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(path.neighbors(1).unwrap(), &[0, 2]);
        assert!(path.neighbors(3).is_err());
    }

    #[test]
    fn components() {
        let tri = Graph::new(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(connected_components(&tri), vec![vec![0, 1, 2]]);
        let two = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(connected_components(&two), vec![vec![0, 1], vec![2, 3]]);
        assert_eq!(connected_components(&Graph::empty(3)), vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn induced_subgraph_relabels() {
        let g = Graph::new(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        let (h, map) = g.induced_subgraph(&[4, 0, 1]);
        assert_eq!(map, vec![0, 1, 4]);
        assert_eq!(h.m(), 2);
        assert!(h.has_edge(0, 1) && h.has_edge(0, 2) && !h.has_edge(1, 2));
    }

    fn arb_edge_list() -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
        (2usize..12).prop_flat_map(|n| {
            let e = (0..n, 1..n).prop_map(move |(u, d)| (u, (u + d) % n));
            (Just(n), proptest::collection::vec(e, 0..40))
        })
    }

    proptest! {
        #[test]
        fn parsed_graphs_are_simple_and_symmetric((n, edges) in arb_edge_list()) {
            let mut text = format!("{} {}\n", n, edges.len());
            for (u, v) in &edges {
                text.push_str(&format!("{u} {v}\n"));
            }
            let g = parse_edge_list(&text).unwrap();
            let mut degree_sum = 0;
            for v in 0..g.n() {
                let nb = g.adj(v);
                prop_assert!(!nb.contains(&v));
                prop_assert!(nb.windows(2).all(|w| w[0] < w[1]));
                for &w in nb {
                    prop_assert!(g.adj(w).binary_search(&v).is_ok());
                }
                degree_sum += nb.len();
            }
            prop_assert_eq!(g.m() * 2, degree_sum);
            for (u, v) in &edges {
                prop_assert!(g.has_edge(*u, *v));
            }
        }

        #[test]
        fn edge_list_round_trip((n, edges) in arb_edge_list()) {
            let g = Graph::new(n, edges).unwrap();
            prop_assert_eq!(parse_edge_list(&to_edge_list(&g)).unwrap(), g);
        }
    }
}
