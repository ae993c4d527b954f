//! Benchmark cells: one (family, size, engine) measurement per CSV row.

use std::fmt;
use std::time::Instant;

use rayon::prelude::*;
use thiserror::Error;

use crate::baselines::johnson_cycles;
use crate::enumerator::{audit_costs, list_cycles_with, EnumOptions};
use crate::generators::{diamond, random_graph, tripartite, GenError};
use crate::graph::Graph;
use crate::solution::CountSink;

pub const CSV_HEADER: &str =
    "family,n,m,eta,total_output,algo,work_units,elapsed_ns,ratio,lemma5_violations,lemma6_violations";

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Family {
    /// Size is the vertex count, a multiple of 3.
    Tripartite,
    /// Size is the parameter `k`.
    Diamond,
    /// Size is the vertex count.
    Random { p: f64, seed: u64 },
}

impl Family {
    pub fn graph(&self, size: usize) -> Result<Graph, GenError> {
        match *self {
            Family::Tripartite => tripartite(size),
            Family::Diamond => diamond(size),
            Family::Random { p, seed } => Ok(random_graph(size, p, seed)),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Family::Tripartite => "tripartite",
            Family::Diamond => "diamond",
            Family::Random { .. } => "random",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Engine {
    Optimal,
    Johnson,
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Engine::Optimal => "optimal",
            Engine::Johnson => "johnson",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BenchError {
    #[error(transparent)]
    Generator(#[from] GenError),
    #[error("empty size range {start}..{end}")]
    EmptyRange { start: usize, end: usize },
    #[error("step must be positive")]
    ZeroStep,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub family: &'static str,
    pub size: usize,
    pub n: usize,
    pub m: usize,
    /// Number of cycles listed.
    pub eta: u64,
    /// Total cycle length in edges.
    pub total_output: u64,
    pub engine: Engine,
    pub work_units: u64,
    pub elapsed_ns: u128,
    /// `work_units / (m + total_output)`.
    pub ratio: f64,
    /// Optimal engine only.
    pub lemma5_violations: Option<usize>,
    pub lemma6_violations: Option<usize>,
    /// The solution budget ran out; counts are lower bounds.
    pub truncated: bool,
}

impl BenchRow {
    pub fn csv_line(&self) -> String {
        let opt = |v: Option<usize>| v.map_or(String::new(), |x| x.to_string());
        format!(
            "{},{},{},{},{},{},{},{},{:.6},{},{}",
            self.family,
            self.n,
            self.m,
            self.eta,
            self.total_output,
            self.engine,
            self.work_units,
            self.elapsed_ns,
            self.ratio,
            opt(self.lemma5_violations),
            opt(self.lemma6_violations)
        )
    }
}

/// `start..=end` by `step`.
pub fn size_range(start: usize, end: usize, step: usize) -> Result<Vec<usize>, BenchError> {
    if step == 0 {
        return Err(BenchError::ZeroStep);
    }
    if start > end {
        return Err(BenchError::EmptyRange { start, end });
    }
    Ok((start..=end).step_by(step).collect())
}

/// Lists the cycles of `family(size)` with a counting sink. `budget` caps
/// the number of cycles.
pub fn run_cell(family: Family, size: usize, engine: Engine, budget: Option<u64>) -> Result<BenchRow, BenchError> {
    let g = family.graph(size)?;
    let mut sink = budget.map_or_else(CountSink::default, CountSink::with_limit);
    let start = Instant::now();
    let stats = match engine {
        Engine::Optimal => list_cycles_with(&g, EnumOptions::instrumented(), &mut sink),
        Engine::Johnson => johnson_cycles(&g, &mut sink),
    };
    let elapsed_ns = start.elapsed().as_nanos();
    let audit = match engine {
        Engine::Optimal => Some(audit_costs(&stats, &g).expect("instrumented run")),
        Engine::Johnson => None,
    };
    let denom = (g.m() as u64 + stats.output_size).max(1);
    Ok(BenchRow {
        family: family.name(),
        size,
        n: g.n(),
        m: g.m(),
        eta: sink.count,
        total_output: stats.output_size,
        engine,
        work_units: stats.work_units,
        elapsed_ns,
        ratio: stats.work_units as f64 / denom as f64,
        lemma5_violations: audit.as_ref().map(|a| a.lemma5_violations),
        lemma6_violations: audit.as_ref().map(|a| a.lemma6_violations),
        truncated: stats.truncated,
    })
}

/// Every (size, engine) cell, in parallel; rows come back in size-major,
/// engine-minor order.
pub fn run_bench(
    family: Family,
    sizes: &[usize],
    engines: &[Engine],
    budget: Option<u64>,
) -> Result<Vec<BenchRow>, BenchError> {
    let cells: Vec<(usize, Engine)> = sizes
        .iter()
        .flat_map(|&s| engines.iter().map(move |&e| (s, e)))
        .collect();
    cells
        .into_par_iter()
        .map(|(s, e)| run_cell(family, s, e, budget))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tripartite_three_has_one_cycle() {
        let row = run_cell(Family::Tripartite, 3, Engine::Optimal, None).unwrap();
        assert_eq!((row.n, row.m, row.eta, row.total_output), (3, 3, 1, 3));
        assert_eq!(row.lemma5_violations, Some(0));
    }

    #[test]
    fn rows_are_ordered_and_stable() {
        let sizes = size_range(1, 5, 2).unwrap();
        assert_eq!(sizes, vec![1, 3, 5]);
        let engines = [Engine::Optimal, Engine::Johnson];
        let a = run_bench(Family::Diamond, &sizes, &engines, None).unwrap();
        let b = run_bench(Family::Diamond, &sizes, &engines, None).unwrap();
        let strip = |r: &[BenchRow]| {
            r.iter()
                .map(|x| (x.size, x.engine, x.eta, x.total_output, x.work_units))
                .collect::<Vec<_>>()
        };
        assert_eq!(strip(&a), strip(&b));
        assert_eq!(a.iter().map(|r| r.size).collect::<Vec<_>>(), vec![1, 1, 3, 3, 5, 5]);
        for pair in a.chunks(2) {
            assert_eq!(pair[0].eta, pair[1].eta);
        }
        assert_eq!(a[0].csv_line().split(',').count(), CSV_HEADER.split(',').count());
        assert!(a[1].csv_line().ends_with(",,"));
    }

    #[test]
    fn bad_ranges() {
        assert_eq!(size_range(5, 1, 1), Err(BenchError::EmptyRange { start: 5, end: 1 }));
        assert_eq!(size_range(1, 5, 0), Err(BenchError::ZeroStep));
        assert!(run_cell(Family::Tripartite, 4, Engine::Optimal, None).is_err());
    }
}
