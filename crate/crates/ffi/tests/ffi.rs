use std::ffi::{c_int, c_void, CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use pathlister_ffi::*;

fn graph_from(text: &str) -> *mut PlGraph {
    let c = CString::new(text).unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { pl_graph_parse(c.as_ptr(), &mut g) }, PlStatus::Ok);
    g
}

fn last_error() -> String {
    let p = pl_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

unsafe extern "C" fn collect(vs: *const usize, len: usize, user: *mut c_void) -> c_int {
    let out = &mut *(user as *mut Vec<Vec<usize>>);
    out.push(std::slice::from_raw_parts(vs, len).to_vec());
    0
}

unsafe extern "C" fn stop_after_two(_: *const usize, _: usize, user: *mut c_void) -> c_int {
    let n = &mut *(user as *mut u32);
    *n += 1;
    c_int::from(*n >= 2)
}

#[test]
fn k4_paths_and_cycles() {
    let g = graph_from("4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
    unsafe {
        assert_eq!((pl_graph_vertex_count(g), pl_graph_edge_count(g)), (4, 6));
        let mut paths: Vec<Vec<usize>> = Vec::new();
        let mut st = PlStats::default();
        let user = &mut paths as *mut Vec<Vec<usize>> as *mut c_void;
        assert_eq!(pl_list_st_paths(g, 0, 3, Some(collect), user, &mut st), PlStatus::Ok);
        paths.sort();
        assert_eq!(
            paths,
            vec![
                vec![0, 1, 2, 3],
                vec![0, 1, 3],
                vec![0, 2, 1, 3],
                vec![0, 2, 3],
                vec![0, 3]
            ]
        );
        assert_eq!(
            (st.solutions, st.leaves, st.binary_nodes, st.output_size),
            (5, 5, 4, 11)
        );

        for algo in [PlAlgo::Optimal, PlAlgo::Johnson, PlAlgo::Brute] {
            let mut st = PlStats::default();
            assert_eq!(
                pl_list_cycles(g, algo as u32, None, ptr::null_mut(), &mut st),
                PlStatus::Ok
            );
            assert_eq!(st.solutions, 7);
        }
        pl_graph_free(g);
    }
}

#[test]
fn callback_can_stop() {
    let mut g = ptr::null_mut();
    unsafe {
        assert_eq!(pl_graph_diamond(3, &mut g), PlStatus::Ok);
        let mut seen = 0u32;
        let mut st = PlStats::default();
        let user = &mut seen as *mut u32 as *mut c_void;
        assert_eq!(
            pl_list_cycles(g, PlAlgo::Optimal as u32, Some(stop_after_two), user, &mut st),
            PlStatus::Ok
        );
        assert_eq!((seen, st.solutions), (2, 2));
        assert!(st.truncated);
        pl_graph_free(g);
    }
}

#[test]
fn generators() {
    let mut g = ptr::null_mut();
    unsafe {
        assert_eq!(pl_graph_tripartite(9, &mut g), PlStatus::Ok);
        assert_eq!((pl_graph_vertex_count(g), pl_graph_edge_count(g)), (9, 27));
        pl_graph_free(g);
        assert_eq!(pl_graph_tripartite(7, &mut g), PlStatus::InvalidArgument);
        assert!(last_error().contains("multiple of 3"));
        assert_eq!(pl_graph_random(8, 1.0, 1, &mut g), PlStatus::Ok);
        assert_eq!(pl_graph_edge_count(g), 28);
        pl_graph_free(g);
        assert_eq!(pl_graph_random(8, 1.5, 1, &mut g), PlStatus::InvalidArgument);
        let edges = [0usize, 1, 1, 2, 2, 0, 0, 1];
        assert_eq!(pl_graph_from_edges(3, edges.as_ptr(), 4, &mut g), PlStatus::Ok);
        assert_eq!(pl_graph_edge_count(g), 3);
        pl_graph_free(g);
        let bad = [0usize, 5];
        assert_eq!(pl_graph_from_edges(3, bad.as_ptr(), 1, &mut g), PlStatus::InvalidVertex);
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut g = ptr::null_mut();
        let text = CString::new("3 1\n0 q\n").unwrap();
        assert_eq!(pl_graph_parse(text.as_ptr(), &mut g), PlStatus::Parse);
        assert!(last_error().contains("line 2"));
        assert_eq!(pl_graph_parse(ptr::null(), &mut g), PlStatus::NullPointer);
        assert_eq!(
            pl_list_cycles(ptr::null(), 0, None, ptr::null_mut(), ptr::null_mut()),
            PlStatus::NullPointer
        );

        let g = graph_from("3 2\n0 1\n1 2\n");
        assert_eq!(
            pl_list_st_paths(g, 0, 7, None, ptr::null_mut(), ptr::null_mut()),
            PlStatus::InvalidVertex
        );
        assert_eq!(
            pl_list_st_paths(g, 1, 1, None, ptr::null_mut(), ptr::null_mut()),
            PlStatus::InvalidVertex
        );
        assert_eq!(
            pl_list_cycles(g, 9, None, ptr::null_mut(), ptr::null_mut()),
            PlStatus::InvalidArgument
        );
        assert_eq!(
            pl_list_st_paths(g, 0, 2, None, ptr::null_mut(), ptr::null_mut()),
            PlStatus::Ok
        );
        assert!(pl_last_error().is_null());
        pl_graph_free(g);

        let mut big = ptr::null_mut();
        assert_eq!(pl_graph_diamond(10, &mut big), PlStatus::Ok);
        assert_eq!(
            pl_list_cycles(big, PlAlgo::Brute as u32, None, ptr::null_mut(), ptr::null_mut()),
            PlStatus::LimitExceeded
        );
        pl_graph_free(big);
        pl_graph_free(ptr::null_mut());
        assert_eq!(pl_graph_vertex_count(ptr::null()), 0);
    }
}

#[test]
fn version_matches_crate() {
    let v = unsafe { CStr::from_ptr(pl_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_api_and_compiles() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/pathlister.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for name in [
        "pl_graph_parse",
        "pl_graph_from_edges",
        "pl_graph_free",
        "pl_list_st_paths",
        "pl_list_cycles",
        "pl_last_error",
        "PL_STATUS_LIMIT_EXCEEDED = 4",
        "typedef struct PlGraph PlGraph",
    ] {
        assert!(text.contains(name), "header lacks {name}");
    }
    // a C compiler is optional in build environments
    let Ok(out) = Command::new("cc")
        .args(["-fsyntax-only", "-Wall", "-Werror", "-x", "c"])
        .arg(&header)
        .output()
    else {
        return;
    };
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}
