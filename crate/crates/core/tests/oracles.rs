//! Small instances with frozen expected values, each cross-checked against
//! the exhaustive oracles.

use matchkern::check::{check_blossom, check_crown_equivalence, check_unweighted, check_weighted};
use matchkern::crown::{reduce_unweighted, RuleSet};
use matchkern::random::{gnp, rng, weighted_gnp};
use matchkern::solvers::{blossom_mcm, brute_force_mcm, brute_force_mwm, brute_force_vc};
use matchkern::unweighted::{apply_degree_rules_exhaustive, check_fes_kernel_bound};
use matchkern::weighted::{
    apply_deg1_weighted_exhaustive, check_weighted_kernel_bound, mwm_on_path, solve_isolated_paths_cycles,
    weighted_kernel_pipeline, Mode, RuleOrder,
};
use matchkern::{Error, Graph, Trace, WeightedGraph};

fn cycle(n: u64) -> Graph {
    Graph::from_edges((0..n).map(|i| (i, (i + 1) % n)))
}

fn complete_bipartite(a: u64, b: u64) -> Graph {
    let mut g = Graph::new();
    for l in 0..a {
        for r in a..a + b {
            g.add_edge(l, r);
        }
    }
    g
}

fn petersen() -> Graph {
    let mut g = cycle(5);
    for i in 0..5 {
        g.add_edge(i, i + 5);
        g.add_edge(i + 5, (i + 2) % 5 + 5);
    }
    g
}

#[test]
fn solver_examples() {
    assert_eq!(blossom_mcm(&cycle(5)).cardinality(), 2);
    assert_eq!(blossom_mcm(&petersen()).cardinality(), 5);
    assert_eq!(brute_force_mcm(&petersen()).unwrap().0, 5);
    assert_eq!(brute_force_mcm(&cycle(4)).unwrap().0, 2);
    assert_eq!(brute_force_mcm(&complete_bipartite(3, 5)).unwrap().0, 3);
    assert_eq!(brute_force_vc(&cycle(5)).unwrap(), 3);
    assert_eq!(brute_force_vc(&complete_bipartite(1, 3)).unwrap(), 1);
    let k4 = Graph::from_edges([(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
    assert_eq!(brute_force_vc(&k4).unwrap(), 3);
    assert_eq!(brute_force_mwm(&WeightedGraph::from_edges([(0, 1, 7)])).unwrap().0, 7);
    assert_eq!(brute_force_mwm(&WeightedGraph::from_edges([(0, 1, 2), (1, 2, 5)])).unwrap().0, 5);
}

#[test]
fn oracle_guards_refuse_large_inputs() {
    let big = cycle(21);
    assert!(matches!(brute_force_mcm(&big), Err(Error::GuardExceeded { .. })));
    assert!(matches!(brute_force_vc(&big), Err(Error::GuardExceeded { .. })));
    let wbig = WeightedGraph::uniform(&cycle(19), 1);
    assert!(matches!(brute_force_mwm(&wbig), Err(Error::GuardExceeded { .. })));
}

#[test]
fn degree_kernel_sizes() {
    let k4 = Graph::from_edges([(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
    let r = apply_degree_rules_exhaustive(&k4).unwrap();
    assert_eq!((r.kernel.n(), r.kernel.m()), (4, 6));
    let report = check_fes_kernel_bound(&k4, &r.kernel).unwrap();
    assert_eq!((report.vertex_bound, report.edge_bound), (6, 9));

    let k35 = complete_bipartite(3, 5);
    let r = reduce_unweighted(&k35, RuleSet::All).unwrap();
    assert!(r.kernel.is_empty());
    assert!(r.kernel.n() <= 2 * brute_force_vc(&k35).unwrap());
}

#[test]
fn weighted_examples() {
    let mut star = WeightedGraph::from_edges([(0, 1, 7), (0, 2, 5), (0, 3, 2)]);
    let mut t = Trace::new();
    apply_deg1_weighted_exhaustive(&mut star, &mut t).unwrap();
    assert_eq!(t.weight_offset(), 7);
    assert_eq!(star.m(), 0);

    let mut edge = WeightedGraph::from_edges([(0, 1, 9)]);
    let mut t = Trace::new();
    apply_deg1_weighted_exhaustive(&mut edge, &mut t).unwrap();
    assert_eq!((t.weight_offset(), edge.m()), (9, 0));

    let mut c4 = WeightedGraph::uniform(&cycle(4), 1);
    let mut t = Trace::new();
    solve_isolated_paths_cycles(&mut c4, &mut t).unwrap();
    assert!(c4.is_empty());
    assert_eq!(t.weight_offset(), 2);

    let s = mwm_on_path(&[2, 5, 3]).unwrap();
    assert_eq!(
        (s.values.full, s.values.without_last, s.values.without_first, s.values.without_both),
        (5, 5, 5, 5)
    );
}

#[test]
fn forests_vanish_in_both_modes() {
    let tree = WeightedGraph::from_edges([(0, 1, 3), (1, 2, 8), (1, 3, 2), (3, 4, 6), (4, 5, 1)]);
    let opt = brute_force_mwm(&tree).unwrap().0;
    for mode in [Mode::Prescribed, Mode::Exhaustive] {
        let r = weighted_kernel_pipeline(&tree, mode).unwrap();
        assert!(r.kernel.is_empty(), "{mode:?}");
        assert_eq!(r.trace.weight_offset() as u128, opt);
    }
}

#[test]
fn c5_with_chord_meets_weighted_bound() {
    let mut g = WeightedGraph::uniform(&cycle(5), 3);
    g.add_edge(0, 2, 5);
    let r = weighted_kernel_pipeline(&g, Mode::Prescribed).unwrap();
    let report = check_weighted_kernel_bound(&g, &r.kernel).unwrap();
    assert_eq!((report.vertex_bound, report.edge_bound), (14, 18));
}

#[test]
fn random_sweeps_against_oracles() {
    let mut r = rng(42);
    for i in 0..150 {
        let n = 2 + i % 11;
        let g = gnp(&mut r, n, 0.15 + (i % 7) as f64 * 0.1);
        for rules in [RuleSet::Degree, RuleSet::Crown, RuleSet::All] {
            let f = check_unweighted(&g, rules, false);
            assert!(f.ok(), "graph {i} {rules:?}: {:?}", f.0);
        }
        let f = check_crown_equivalence(&g);
        assert!(f.ok(), "graph {i}: {:?}", f.0);
        assert!(check_blossom(&g).ok());

        let wg = weighted_gnp(&mut r, n.min(11), 0.3, 10);
        for (mode, order) in [
            (Mode::Prescribed, RuleOrder::DegreeOneFirst),
            (Mode::Exhaustive, RuleOrder::DegreeOneFirst),
            (Mode::Exhaustive, RuleOrder::PathsFirst),
        ] {
            let f = check_weighted(&wg, mode, order);
            assert!(f.ok(), "weighted graph {i} {mode:?}: {:?}", f.0);
        }
    }
}

#[test]
fn tampered_offset_is_detected() {
    let f = check_unweighted(&cycle(5), RuleSet::Degree, true);
    assert!(!f.ok());
}
