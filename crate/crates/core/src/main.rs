use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::ops::ControlFlow;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use pathlister::baselines::{brute_force_cycles, johnson_cycles, BaselineError, DEFAULT_BRUTE_LIMIT};
use pathlister::bench::{run_bench, size_range, BenchError, Engine, Family, CSV_HEADER};
use pathlister::blocks::biconnected_components;
use pathlister::enumerator::{list_cycles, list_st_paths, EnumError};
use pathlister::generators::{diamond, random_graph, tripartite};
use pathlister::graph::{parse_edge_list_with_warnings, to_edge_list, Graph, VertexId};
use pathlister::solution::RunStats;

const EXIT_PARSE: u8 = 2;
const EXIT_ENDPOINT: u8 = 3;
const EXIT_LIMIT: u8 = 4;
const EXIT_IO: u8 = 1;

#[derive(Parser)]
#[command(
    name = "pathlister",
    version,
    about = "List simple cycles and st-paths of undirected graphs"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Algo {
    Optimal,
    Johnson,
    Brute,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Tripartite,
    Diamond,
    Random,
}

#[derive(clap::Args)]
struct Listing {
    /// Print only the number of solutions.
    #[arg(long)]
    count_only: bool,
    /// Print run statistics as JSON on stderr.
    #[arg(long)]
    stats: bool,
    /// Write solutions here instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// List the simple paths between two vertices.
    Paths {
        graph: PathBuf,
        s: VertexId,
        t: VertexId,
        #[command(flatten)]
        listing: Listing,
    },
    /// List the simple cycles in canonical form.
    Cycles {
        graph: PathBuf,
        #[arg(long, value_enum, default_value = "optimal")]
        algo: Algo,
        #[command(flatten)]
        listing: Listing,
    },
    /// Print each biconnected component's edges, then the articulation points.
    Bcc {
        graph: PathBuf,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Write a generated graph in edge-list format.
    Generate {
        #[arg(long, value_enum)]
        family: FamilyArg,
        /// Vertex count (tripartite, random) or diamond parameter.
        #[arg(long)]
        n: usize,
        /// Edge probability for random graphs.
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Count cycles over a range of sizes and print a CSV report.
    Bench {
        #[arg(value_enum)]
        family: FamilyArg,
        /// Inclusive size range `a..b`, or a single size.
        range: String,
        #[arg(long, default_value_t = 1)]
        step: usize,
        /// Engines to run, comma separated.
        #[arg(long, value_enum, value_delimiter = ',', default_value = "optimal,johnson")]
        algo: Vec<Algo>,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Stop each cell after this many cycles.
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

struct Failure {
    code: u8,
    msg: String,
}

fn fail(code: u8, msg: impl ToString) -> Failure {
    Failure {
        code,
        msg: msg.to_string(),
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        fail(EXIT_IO, e)
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("pathlister: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.cmd {
        Cmd::Paths { graph, s, t, listing } => {
            let g = load(&graph)?;
            let mut out = open_output(listing.output.as_deref())?;
            let mut lines = LineSink::new(&mut out, listing.count_only);
            let start = Instant::now();
            let stats = list_st_paths(&g, s, t, &mut |p: &[VertexId]| lines.emit(p)).map_err(|e| match e {
                EnumError::SameVertex(_) | EnumError::VertexOutOfRange { .. } => fail(EXIT_ENDPOINT, e),
            })?;
            finish(lines, Some(stats), start, listing.stats)?;
            out.flush()?;
        }
        Cmd::Cycles { graph, algo, listing } => {
            let g = load(&graph)?;
            let mut out = open_output(listing.output.as_deref())?;
            let mut lines = LineSink::new(&mut out, listing.count_only);
            let start = Instant::now();
            let stats = match algo {
                Algo::Optimal => Some(list_cycles(&g, &mut |c: &[VertexId]| lines.emit(c))),
                Algo::Johnson => Some(johnson_cycles(&g, &mut |c: &[VertexId]| lines.emit(c))),
                Algo::Brute => {
                    let all = brute_force_cycles(&g, DEFAULT_BRUTE_LIMIT).map_err(|e| match e {
                        BaselineError::LimitExceeded { .. } => fail(EXIT_LIMIT, e),
                        _ => fail(EXIT_IO, e),
                    })?;
                    for c in &all {
                        if lines.emit(c).is_break() {
                            break;
                        }
                    }
                    None
                }
            };
            finish(lines, stats, start, listing.stats)?;
            out.flush()?;
        }
        Cmd::Bcc { graph, output } => {
            let g = load(&graph)?;
            let mut out = open_output(output.as_deref())?;
            let bt = biconnected_components(&g);
            for b in 0..bt.num_bccs() {
                let edges: Vec<String> = bt.bcc_edges(b).iter().map(|(u, v)| format!("{u}-{v}")).collect();
                writeln!(out, "{}", edges.join(" "))?;
            }
            let cuts: Vec<String> = bt.articulation_points().iter().map(|v| v.to_string()).collect();
            writeln!(out, "articulation: {}", cuts.join(" "))?;
            out.flush()?;
        }
        Cmd::Generate {
            family,
            n,
            p,
            seed,
            output,
        } => {
            if !(0.0..=1.0).contains(&p) {
                return Err(fail(EXIT_PARSE, format!("probability {p} outside [0, 1]")));
            }
            let g = match family {
                FamilyArg::Tripartite => tripartite(n),
                FamilyArg::Diamond => diamond(n),
                FamilyArg::Random => Ok(random_graph(n, p, seed)),
            }
            .map_err(|e| fail(EXIT_PARSE, e))?;
            let mut out = open_output(output.as_deref())?;
            out.write_all(to_edge_list(&g).as_bytes())?;
            out.flush()?;
        }
        Cmd::Bench {
            family,
            range,
            step,
            algo,
            p,
            seed,
            budget,
            output,
        } => {
            let (a, b) = parse_range(&range).ok_or_else(|| fail(EXIT_PARSE, format!("bad range {range:?}")))?;
            let sizes = size_range(a, b, step).map_err(|e| fail(EXIT_PARSE, e))?;
            let family = match family {
                FamilyArg::Tripartite => Family::Tripartite,
                FamilyArg::Diamond => Family::Diamond,
                FamilyArg::Random => Family::Random { p, seed },
            };
            let mut engines = Vec::new();
            for a in algo {
                match a {
                    Algo::Optimal => engines.push(Engine::Optimal),
                    Algo::Johnson => engines.push(Engine::Johnson),
                    Algo::Brute => return Err(fail(EXIT_PARSE, "bench runs the optimal and johnson engines only")),
                }
            }
            let rows = run_bench(family, &sizes, &engines, budget).map_err(|e| match e {
                BenchError::Generator(_) | BenchError::EmptyRange { .. } | BenchError::ZeroStep => fail(EXIT_PARSE, e),
            })?;
            let mut out = open_output(output.as_deref())?;
            writeln!(out, "{CSV_HEADER}")?;
            for r in &rows {
                if r.truncated {
                    eprintln!("pathlister: {} {} {} stopped at the budget", r.family, r.size, r.engine);
                }
                writeln!(out, "{}", r.csv_line())?;
            }
            out.flush()?;
        }
    }
    Ok(())
}

fn load(path: &Path) -> Result<Graph, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| fail(EXIT_PARSE, format!("{}: {e}", path.display())))?;
    let (g, warnings) =
        parse_edge_list_with_warnings(&text).map_err(|e| fail(EXIT_PARSE, format!("{}: {e}", path.display())))?;
    for w in warnings {
        eprintln!("pathlister: {}: {w}", path.display());
    }
    Ok(g)
}

fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>, Failure> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

/// `a..b` (inclusive) or a single number.
fn parse_range(s: &str) -> Option<(usize, usize)> {
    match s.split_once("..") {
        Some((a, b)) => Some((a.trim().parse().ok()?, b.trim_start_matches('=').trim().parse().ok()?)),
        None => {
            let x = s.trim().parse().ok()?;
            Some((x, x))
        }
    }
}

/// Writes one solution per line; the first write error stops the run.
struct LineSink<'w> {
    out: &'w mut dyn Write,
    count_only: bool,
    count: u64,
    error: Option<io::Error>,
    buf: String,
}

impl<'w> LineSink<'w> {
    fn new(out: &'w mut dyn Write, count_only: bool) -> Self {
        LineSink {
            out,
            count_only,
            count: 0,
            error: None,
            buf: String::new(),
        }
    }

    fn emit(&mut self, vs: &[VertexId]) -> ControlFlow<()> {
        self.count += 1;
        if self.count_only {
            return ControlFlow::Continue(());
        }
        self.buf.clear();
        for (i, v) in vs.iter().enumerate() {
            if i > 0 {
                self.buf.push(' ');
            }
            self.buf.push_str(&v.to_string());
        }
        self.buf.push('\n');
        match self.out.write_all(self.buf.as_bytes()) {
            Ok(()) => ControlFlow::Continue(()),
            Err(e) => {
                self.error = Some(e);
                ControlFlow::Break(())
            }
        }
    }
}

fn finish(lines: LineSink<'_>, stats: Option<RunStats>, start: Instant, want_stats: bool) -> Result<(), Failure> {
    let elapsed_ns = start.elapsed().as_nanos();
    if let Some(e) = lines.error {
        return Err(e.into());
    }
    if lines.count_only {
        writeln!(lines.out, "{}", lines.count)?;
    }
    if want_stats {
        let json = match stats {
            Some(s) => serde_json::json!({
                "leaves": s.leaves,
                "unary_nodes": s.unary_nodes,
                "binary_nodes": s.binary_nodes,
                "spines": s.spines,
                "work_units": s.work_units,
                "output_size": s.output_size,
                "elapsed_ns": elapsed_ns,
            }),
            None => serde_json::json!({ "solutions": lines.count, "elapsed_ns": elapsed_ns }),
        };
        eprintln!("{json}");
    }
    Ok(())
}
