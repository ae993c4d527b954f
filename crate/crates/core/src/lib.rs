//! Listing of simple cycles and simple st-paths of undirected graphs in time
//! proportional to the input size plus the total length of the output.
//!
//! The engine ([`enumerator`]) partitions the solution space recursively and
//! keeps a dynamic DFS certificate ([`certificate`]) of the part of the graph
//! that still holds solutions, so that every recursion node leads to output.
//! [`baselines`] holds a brute-force oracle and a Johnson-style comparator.

pub mod baselines;
pub mod bench;
pub mod blocks;
pub mod certificate;
pub mod enumerator;
pub mod generators;
pub mod graph;
pub mod solution;

pub use enumerator::{list_cycles, list_cycles_with, list_st_paths, list_st_paths_with, EnumOptions};
pub use graph::{Graph, VertexId};
