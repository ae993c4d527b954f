//! Deterministic graph families.
//!
//! Vertex layouts are fixed so that golden outputs stay stable:
//!
//! * `tripartite(n)`: parts `0..k`, `k..2k`, `2k..3k` with `k = n / 3`.
//! * `diamond(k)`: `a = 0`, `b = 1`, `c = 2`, `v_i = 2 + i`, `u_i = 2 + k + i`
//!   for `i` in `1..=k`.
//! * `random_graph(n, p, seed)`: G(n, p) driven by SplitMix64 seeded with
//!   `seed`. Pairs `u < v` are visited in lexicographic order; each draws one
//!   64-bit word `x` and the edge is kept iff `(x >> 11) * 2^-53 < p`.

use rand_core::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;
use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("tripartite size must be a positive multiple of 3, got {0}")]
    NotMultipleOfThree(usize),
    #[error("diamond parameter must be at least 1")]
    ZeroDiamond,
}

/// Complete tripartite graph with three parts of size `n / 3`.
pub fn tripartite(n: usize) -> Result<Graph, GenError> {
    if n == 0 || !n.is_multiple_of(3) {
        return Err(GenError::NotMultipleOfThree(n));
    }
    let k = n / 3;
    let mut edges = Vec::with_capacity(3 * k * k);
    for (lo, hi) in [(0, 1), (0, 2), (1, 2)] {
        for i in 0..k {
            for j in 0..k {
                edges.push((lo * k + i, hi * k + j));
            }
        }
    }
    Ok(Graph::new(n, edges).expect("valid by construction"))
}

/// The sparse diamond graph on `2k + 3` vertices.
pub fn diamond(k: usize) -> Result<Graph, GenError> {
    if k == 0 {
        return Err(GenError::ZeroDiamond);
    }
    let (a, b, c) = (0, 1, 2);
    let mut edges = vec![(a, c)];
    for i in 1..=k {
        let (v, u) = (2 + i, 2 + k + i);
        edges.extend([(a, v), (v, b), (b, u), (u, c)]);
    }
    Ok(Graph::new(2 * k + 3, edges).expect("valid by construction"))
}

/// Erdos-Renyi G(n, p); deterministic in `seed` on every platform.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = SplitMix64::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if unit_interval(rng.next_u64()) < p {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).expect("valid by construction")
}

#[inline]
fn unit_interval(x: u64) -> f64 {
    (x >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

pub fn complete(n: usize) -> Graph {
    Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).expect("simple")
}

/// Path `0 - 1 - ... - (n-1)`.
pub fn path_graph(n: usize) -> Graph {
    Graph::new(n, (1..n).map(|v| (v - 1, v))).expect("simple")
}

/// Cycle `0 - 1 - ... - (n-1) - 0`, `n >= 3`.
pub fn cycle_graph(n: usize) -> Graph {
    assert!(n >= 3, "cycle needs at least 3 vertices");
    Graph::new(n, (0..n).map(|v| (v, (v + 1) % n))).expect("simple")
}

/// Triangles `0 1 2` and `2 3 4` sharing vertex 2.
pub fn bowtie() -> Graph {
    Graph::new(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).expect("simple")
}

pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::new(10, edges).expect("simple")
}

/// Small named graphs used by tests, the acceptance suite and the CLI.
pub fn named_graphs() -> Vec<(&'static str, Graph)> {
    vec![
        ("path3", path_graph(3)),
        ("triangle", complete(3)),
        ("square", cycle_graph(4)),
        ("k4", complete(4)),
        ("k5", complete(5)),
        ("bowtie", bowtie()),
        ("bowtie_pendant", {
            Graph::new(6, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4), (2, 5)]).unwrap()
        }),
        ("two_edges", Graph::new(4, [(0, 1), (2, 3)]).unwrap()),
        ("c7", cycle_graph(7)),
        ("petersen", petersen()),
        (
            "k33",
            Graph::new(6, (0..3).flat_map(|i| (3..6).map(move |j| (i, j)))).unwrap(),
        ),
        ("diamond2", diamond(2).unwrap()),
        ("tripartite6", tripartite(6).unwrap()),
        ("wheel6", {
            let mut e: Vec<_> = (1..6).map(|i| (0, i)).collect();
            e.extend((1..6).map(|i| (i, i % 5 + 1)));
            Graph::new(6, e).unwrap()
        }),
    ]
}
