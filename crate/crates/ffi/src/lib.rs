//! C ABI for the pathlister engine.
//!
//! Graphs are opaque `PlGraph` handles created by the `pl_graph_*`
//! constructors and released with [`pl_graph_free`]. Every fallible call
//! returns a [`PlStatus`]; on failure [`pl_last_error`] describes the cause.
//! Solutions are streamed to a callback as arrays of vertex ids.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, c_void, CStr, CString};
use std::ops::ControlFlow;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use pathlister::baselines::{brute_force_cycles, johnson_cycles, DEFAULT_BRUTE_LIMIT};
use pathlister::enumerator::{list_cycles, list_st_paths};
use pathlister::generators::{diamond, random_graph, tripartite};
use pathlister::graph::{parse_edge_list, Graph};
use pathlister::solution::RunStats;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlStatus {
    Ok = 0,
    NullPointer = 1,
    Parse = 2,
    InvalidVertex = 3,
    LimitExceeded = 4,
    InvalidArgument = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlAlgo {
    Optimal = 0,
    Johnson = 1,
    /// Exhaustive search; graphs of at most 16 vertices.
    Brute = 2,
}

/// Counters of one listing. Recursion counters are zero for the brute
/// engine.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PlStats {
    pub solutions: u64,
    pub leaves: u64,
    pub unary_nodes: u64,
    pub binary_nodes: u64,
    pub spines: u64,
    pub work_units: u64,
    /// Total solution length in edges.
    pub output_size: u64,
    /// The callback asked to stop.
    pub truncated: bool,
}

/// Opaque graph handle.
pub struct PlGraph {
    graph: Graph,
}

/// Receives one solution: `len` vertex ids, valid only during the call.
/// Return 0 to continue, anything else to stop the listing.
pub type PlSolutionCallback =
    Option<unsafe extern "C" fn(vertices: *const usize, len: usize, user_data: *mut c_void) -> c_int>;

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn fail(status: PlStatus, msg: impl Into<String>) -> PlStatus {
    set_error(msg);
    status
}

/// Runs `f`, turning a panic into `PlStatus::Panic`.
fn guard(f: impl FnOnce() -> PlStatus) -> PlStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            fail(PlStatus::Panic, format!("internal error: {msg}"))
        }
    }
}

unsafe fn store(out: *mut *mut PlGraph, graph: Graph) -> PlStatus {
    *out = Box::into_raw(Box::new(PlGraph { graph }));
    PlStatus::Ok
}

/// Message of the last failed call on this thread, or NULL. Valid until
/// the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn pl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn pl_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses the edge-list format: a `n m` header, then one `u v` line per
/// edge; `#` starts a comment line.
///
/// # Safety
/// `text` must be NULL or a NUL-terminated string; `out` must be NULL or
/// writable.
#[no_mangle]
pub unsafe extern "C" fn pl_graph_parse(text: *const c_char, out: *mut *mut PlGraph) -> PlStatus {
    guard(|| {
        if text.is_null() || out.is_null() {
            return fail(PlStatus::NullPointer, "null argument");
        }
        let Ok(s) = CStr::from_ptr(text).to_str() else {
            return fail(PlStatus::Parse, "input is not UTF-8");
        };
        match parse_edge_list(s) {
            Ok(g) => store(out, g),
            Err(e) => fail(PlStatus::Parse, e.to_string()),
        }
    })
}

/// Builds a graph on `n` vertices from `m` pairs stored flat in `edges`
/// (`2 * m` ids). Duplicate edges are merged.
///
/// # Safety
/// `edges` must point to `2 * m` readable ids (it may be NULL when
/// `m == 0`); `out` must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn pl_graph_from_edges(
    n: usize,
    edges: *const usize,
    m: usize,
    out: *mut *mut PlGraph,
) -> PlStatus {
    guard(|| {
        if out.is_null() || (edges.is_null() && m > 0) {
            return fail(PlStatus::NullPointer, "null argument");
        }
        let flat: &[usize] = if m == 0 {
            &[]
        } else {
            std::slice::from_raw_parts(edges, 2 * m)
        };
        match Graph::new(n, flat.chunks_exact(2).map(|p| (p[0], p[1]))) {
            Ok(g) => store(out, g),
            Err(e) => fail(PlStatus::InvalidVertex, e.to_string()),
        }
    })
}

/// Complete tripartite graph with parts of size `n / 3`.
///
/// # Safety
/// `out` must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn pl_graph_tripartite(n: usize, out: *mut *mut PlGraph) -> PlStatus {
    guard(|| {
        if out.is_null() {
            return fail(PlStatus::NullPointer, "null argument");
        }
        match tripartite(n) {
            Ok(g) => store(out, g),
            Err(e) => fail(PlStatus::InvalidArgument, e.to_string()),
        }
    })
}

/// Diamond graph with parameter `k` (`2k + 3` vertices).
///
/// # Safety
/// `out` must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn pl_graph_diamond(k: usize, out: *mut *mut PlGraph) -> PlStatus {
    guard(|| {
        if out.is_null() {
            return fail(PlStatus::NullPointer, "null argument");
        }
        match diamond(k) {
            Ok(g) => store(out, g),
            Err(e) => fail(PlStatus::InvalidArgument, e.to_string()),
        }
    })
}

/// G(n, p), deterministic in `seed`.
///
/// # Safety
/// `out` must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn pl_graph_random(n: usize, p: f64, seed: u64, out: *mut *mut PlGraph) -> PlStatus {
    guard(|| {
        if out.is_null() {
            return fail(PlStatus::NullPointer, "null argument");
        }
        if !(0.0..=1.0).contains(&p) {
            return fail(PlStatus::InvalidArgument, format!("probability {p} outside [0, 1]"));
        }
        store(out, random_graph(n, p, seed))
    })
}

/// Releases a graph. NULL is ignored.
///
/// # Safety
/// `g` must be NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pl_graph_free(g: *mut PlGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Vertex count, or 0 for NULL.
///
/// # Safety
/// `g` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pl_graph_vertex_count(g: *const PlGraph) -> usize {
    g.as_ref().map_or(0, |g| g.graph.n())
}

/// Edge count, or 0 for NULL.
///
/// # Safety
/// `g` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pl_graph_edge_count(g: *const PlGraph) -> usize {
    g.as_ref().map_or(0, |g| g.graph.m())
}

struct Forward {
    callback: PlSolutionCallback,
    user_data: *mut c_void,
    count: u64,
}

impl Forward {
    unsafe fn emit(&mut self, vs: &[usize]) -> ControlFlow<()> {
        self.count += 1;
        match self.callback {
            Some(f) if f(vs.as_ptr(), vs.len(), self.user_data) != 0 => ControlFlow::Break(()),
            _ => ControlFlow::Continue(()),
        }
    }
}

unsafe fn write_stats(out: *mut PlStats, solutions: u64, st: Option<&RunStats>, truncated: bool) {
    if let Some(o) = out.as_mut() {
        *o = match st {
            Some(s) => PlStats {
                solutions,
                leaves: s.leaves,
                unary_nodes: s.unary_nodes,
                binary_nodes: s.binary_nodes,
                spines: s.spines,
                work_units: s.work_units,
                output_size: s.output_size,
                truncated: s.truncated,
            },
            None => PlStats {
                solutions,
                truncated,
                ..PlStats::default()
            },
        };
    }
}

/// Lists every simple path from `s` to `t`. `callback` may be NULL to
/// only count; `stats` may be NULL.
///
/// # Safety
/// `g` must be a live handle; `stats` must be NULL or writable; the
/// callback must not unwind.
#[no_mangle]
pub unsafe extern "C" fn pl_list_st_paths(
    g: *const PlGraph,
    s: usize,
    t: usize,
    callback: PlSolutionCallback,
    user_data: *mut c_void,
    stats: *mut PlStats,
) -> PlStatus {
    guard(|| {
        let Some(g) = g.as_ref() else {
            return fail(PlStatus::NullPointer, "null graph");
        };
        let mut fwd = Forward {
            callback,
            user_data,
            count: 0,
        };
        match list_st_paths(&g.graph, s, t, &mut |p: &[usize]| fwd.emit(p)) {
            Ok(st) => {
                write_stats(stats, fwd.count, Some(&st), false);
                PlStatus::Ok
            }
            Err(e) => fail(PlStatus::InvalidVertex, e.to_string()),
        }
    })
}

/// Lists every simple cycle in canonical form (smallest vertex first,
/// then its smaller neighbour on the cycle). `algo` is a `PlAlgo` value.
///
/// # Safety
/// As for [`pl_list_st_paths`].
#[no_mangle]
pub unsafe extern "C" fn pl_list_cycles(
    g: *const PlGraph,
    algo: u32,
    callback: PlSolutionCallback,
    user_data: *mut c_void,
    stats: *mut PlStats,
) -> PlStatus {
    guard(|| {
        let Some(g) = g.as_ref() else {
            return fail(PlStatus::NullPointer, "null graph");
        };
        let mut fwd = Forward {
            callback,
            user_data,
            count: 0,
        };
        let algo = match algo {
            0 => PlAlgo::Optimal,
            1 => PlAlgo::Johnson,
            2 => PlAlgo::Brute,
            other => return fail(PlStatus::InvalidArgument, format!("unknown algorithm {other}")),
        };
        let st = match algo {
            PlAlgo::Optimal => list_cycles(&g.graph, &mut |c: &[usize]| fwd.emit(c)),
            PlAlgo::Johnson => johnson_cycles(&g.graph, &mut |c: &[usize]| fwd.emit(c)),
            PlAlgo::Brute => {
                let all = match brute_force_cycles(&g.graph, DEFAULT_BRUTE_LIMIT) {
                    Ok(all) => all,
                    Err(e) => return fail(PlStatus::LimitExceeded, e.to_string()),
                };
                let mut stopped = false;
                for c in &all {
                    if fwd.emit(c).is_break() {
                        stopped = true;
                        break;
                    }
                }
                write_stats(stats, fwd.count, None, stopped);
                return PlStatus::Ok;
            }
        };
        write_stats(stats, fwd.count, Some(&st), false);
        PlStatus::Ok
    })
}
