use std::collections::BTreeSet;

use super::*;
use crate::baselines::{brute_force_cycles, brute_force_st_paths};
use crate::generators::{complete, cycle_graph, diamond, named_graphs, path_graph, random_graph, tripartite};
use crate::solution::{is_canonical_cycle, CollectSink, CountSink};
use proptest::prelude::*;

fn paths(g: &Graph, s: VertexId, t: VertexId) -> (Vec<Vec<VertexId>>, RunStats) {
    let mut sink = CollectSink::default();
    let stats = list_st_paths_with(g, s, t, EnumOptions::checked(), &mut sink).unwrap();
    assert!(stats.check.as_ref().unwrap().is_clean(), "{:?}", stats.check);
    (sink.solutions, stats)
}

fn cycles(g: &Graph) -> (Vec<Vec<VertexId>>, RunStats) {
    let mut sink = CollectSink::default();
    let stats = list_cycles_with(g, EnumOptions::checked(), &mut sink);
    assert!(stats.check.as_ref().unwrap().is_clean(), "{:?}", stats.check);
    (sink.solutions, stats)
}

fn as_set(v: &[Vec<VertexId>]) -> BTreeSet<Vec<VertexId>> {
    v.iter().cloned().collect()
}

#[test]
fn path_graph_has_one_path() {
    let (p, st) = paths(&path_graph(3), 0, 2);
    assert_eq!(p, vec![vec![0, 1, 2]]);
    assert_eq!((st.leaves, st.binary_nodes, st.spines), (1, 0, 0));
    assert_eq!(st.output_size, 2);
}

#[test]
fn k4_paths() {
    let (p, st) = paths(&complete(4), 0, 3);
    let expect: BTreeSet<Vec<VertexId>> = [
        vec![0, 3],
        vec![0, 1, 3],
        vec![0, 2, 3],
        vec![0, 1, 2, 3],
        vec![0, 2, 1, 3],
    ]
    .into_iter()
    .collect();
    assert_eq!(as_set(&p), expect);
    assert_eq!(p.len(), 5);
    assert_eq!((st.leaves, st.binary_nodes), (5, 4));
}

#[test]
fn square_paths() {
    let (p, _) = paths(&cycle_graph(4), 0, 2);
    assert_eq!(as_set(&p), [vec![0, 1, 2], vec![0, 3, 2]].into_iter().collect());
}

#[test]
fn disconnected_and_invalid_endpoints() {
    let two = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
    let (p, st) = paths(&two, 0, 3);
    assert!(p.is_empty());
    assert_eq!(st.leaves, 0);
    let mut sink = CountSink::default();
    assert_eq!(list_st_paths(&two, 1, 1, &mut sink), Err(EnumError::SameVertex(1)));
    assert!(matches!(
        list_st_paths(&two, 0, 4, &mut sink),
        Err(EnumError::VertexOutOfRange { .. })
    ));
}

#[test]
fn small_cycle_counts() {
    assert_eq!(cycles(&complete(3)).0, vec![vec![0, 1, 2]]);
    let (k4, st) = cycles(&complete(4));
    assert_eq!(k4.len(), 7);
    assert_eq!(k4.iter().filter(|c| c.len() == 3).count(), 4);
    assert_eq!(st.binary_nodes, st.leaves - st.subruns);
    assert_eq!(cycles(&path_graph(6)).0.len(), 0);
}

#[test]
fn tripartite_six_matches_oracle() {
    let g = tripartite(6).unwrap();
    let (c, _) = cycles(&g);
    assert_eq!(as_set(&c), brute_force_cycles(&g, 16).unwrap());
    assert_eq!(c.iter().filter(|c| c.len() == 3).count(), 8);
}

#[test]
fn diamond_counts() {
    for k in 1..=6usize {
        let g = diamond(k).unwrap();
        let (c, _) = cycles(&g);
        assert_eq!(c.len(), 2 * k * k - k, "k = {k}");
        if k <= 4 {
            assert_eq!(as_set(&c), brute_force_cycles(&g, 16).unwrap());
        }
    }
}

#[test]
fn named_graphs_match_oracles() {
    for (name, g) in named_graphs() {
        let (c, _) = cycles(&g);
        assert_eq!(as_set(&c), brute_force_cycles(&g, 16).unwrap(), "{name}");
        for s in 0..g.n() {
            for t in 0..g.n() {
                if s != t {
                    let (p, st) = paths(&g, s, t);
                    assert_eq!(
                        as_set(&p),
                        brute_force_st_paths(&g, s, t, 16).unwrap(),
                        "{name} {s} {t}"
                    );
                    let r = audit_costs(&st, &g).unwrap();
                    assert_eq!((r.lemma5_violations, r.lemma6_violations), (0, 0), "{name} {s} {t}");
                }
            }
        }
    }
}

#[test]
fn early_stop_truncates() {
    let mut sink = CountSink::with_limit(4);
    let st = list_st_paths(&complete(6), 0, 5, &mut sink).unwrap();
    assert!(st.truncated);
    assert_eq!((sink.count, st.leaves), (4, 4));
    let mut sink = CountSink::with_limit(4);
    let st = list_cycles(&complete(6), &mut sink);
    assert!(st.truncated);
    assert_eq!(sink.count, 4);
    let g = tripartite(15).unwrap();
    let mut sink = CountSink::with_limit(2000);
    let st = list_cycles_with(&g, EnumOptions::instrumented(), &mut sink);
    assert!(st.truncated);
    let r = audit_costs(&st, &g).unwrap();
    assert_eq!((r.lemma5_violations, r.lemma6_violations), (0, 0));
}

#[test]
fn deterministic_order() {
    let g = random_graph(10, 0.5, 7);
    let run = || {
        let mut a = CollectSink::default();
        list_cycles(&g, &mut a);
        let mut b = CollectSink::default();
        list_st_paths(&g, 0, 9, &mut b).unwrap();
        (a.solutions, b.solutions)
    };
    assert_eq!(run(), run());
}

#[test]
fn audit_examples() {
    assert!((spine_charge(4, 6) - 10.0 / 3.0).abs() < 1e-12);
    assert!(spine_charge(4, 6) <= 21.0);
    let g = path_graph(8);
    let mut sink = CountSink::default();
    let st = list_st_paths_with(&g, 0, 7, EnumOptions::instrumented(), &mut sink).unwrap();
    let r = audit_costs(&st, &g).unwrap();
    assert_eq!(r.spines, 0);
    assert!(r.ratio.is_finite() && r.ratio > 0.0);
    let plain = list_st_paths(&g, 0, 7, &mut sink).unwrap();
    assert_eq!(audit_costs(&plain, &g), Err(AuditError::NotInstrumented));
}

#[test]
fn long_path_does_not_overflow_the_stack() {
    let n = 200_000;
    let g = path_graph(n);
    let mut sink = CountSink::default();
    let st = list_st_paths(&g, 0, n - 1, &mut sink).unwrap();
    assert_eq!(sink.count, 1);
    assert_eq!(st.output_size, (n - 1) as u64);
    let c = cycle_graph(n);
    let mut sink = CountSink::default();
    list_cycles(&c, &mut sink);
    assert_eq!(sink.count, 1);
}

fn graph_strategy() -> impl Strategy<Value = Graph> {
    (2usize..=10, prop::sample::select(vec![0.3, 0.5, 0.8]), any::<u64>())
        .prop_map(|(n, p, seed)| random_graph(n, p, seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn st_paths_equal_oracle(g in graph_strategy(), s in 0usize..10, t in 0usize..10) {
        prop_assume!(s < g.n() && t < g.n() && s != t);
        let mut sink = CollectSink::default();
        let st = list_st_paths_with(&g, s, t, EnumOptions::checked(), &mut sink).unwrap();
        let check = st.check.clone().unwrap();
        prop_assert!(check.is_clean(), "{:?}", check);
        let set = as_set(&sink.solutions);
        prop_assert_eq!(set.len(), sink.solutions.len(), "duplicate path");
        prop_assert_eq!(&set, &brute_force_st_paths(&g, s, t, 16).unwrap());
        prop_assert_eq!(st.leaves as usize, set.len());
        if st.leaves > 0 {
            prop_assert_eq!(st.binary_nodes, st.leaves - 1);
        }
        let r = audit_costs(&st, &g).unwrap();
        prop_assert_eq!((r.lemma5_violations, r.lemma6_violations), (0, 0));
    }

    #[test]
    fn cycles_equal_oracle(g in graph_strategy()) {
        let mut sink = CollectSink::default();
        let st = list_cycles_with(&g, EnumOptions::checked(), &mut sink);
        let check = st.check.clone().unwrap();
        prop_assert!(check.is_clean(), "{:?}", check);
        for c in &sink.solutions {
            prop_assert!(is_canonical_cycle(&g, c));
        }
        let set = as_set(&sink.solutions);
        prop_assert_eq!(set.len(), sink.solutions.len(), "duplicate cycle");
        prop_assert_eq!(set, brute_force_cycles(&g, 16).unwrap());
        prop_assert_eq!(st.binary_nodes, st.leaves - st.subruns);
        let r = audit_costs(&st, &g).unwrap();
        prop_assert_eq!((r.lemma5_violations, r.lemma6_violations), (0, 0));
    }
}

#[test]
fn diamond_work_is_linear_in_output() {
    let ratio = |k: usize| {
        let g = diamond(k).unwrap();
        let mut sink = CountSink::default();
        let st = list_cycles_with(&g, EnumOptions::instrumented(), &mut sink);
        audit_costs(&st, &g).unwrap().ratio
    };
    let (small, large) = (ratio(10), ratio(40));
    assert!(large < 1.1 * small, "ratio grew from {small} to {large}");
}
