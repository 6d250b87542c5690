use std::collections::BTreeSet;

use proptest::prelude::*;

use matchkern::crown::{reduce_unweighted, RuleSet};
use matchkern::io::{parse_edge_list, parse_weighted_edge_list, write_edge_list, write_weighted_edge_list};
use matchkern::random::{rng, vertex_permutation};
use matchkern::solvers::{brute_force_mcm, brute_force_mwm, component_index, kosaraju_scc, Digraph};
use matchkern::trace::{lift_unweighted, lift_weighted, replay_unweighted, replay_weighted};
use matchkern::unweighted::apply_degree_rules_exhaustive;
use matchkern::weighted::{mwm_on_cycle, mwm_on_path, weighted_kernel_pipeline_ordered, Mode, RuleOrder};
use matchkern::{Graph, Trace, WeightedGraph};

fn arb_graph(max_n: u64) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec((0..n, 0..n), 0..=(2 * n as usize)).prop_map(move |pairs| {
            let mut g = Graph::new();
            for v in 0..n {
                g.add_vertex(v);
            }
            for (u, v) in pairs {
                if u != v {
                    g.add_edge(u, v);
                }
            }
            g
        })
    })
}

fn arb_weighted(max_n: u64) -> impl Strategy<Value = WeightedGraph> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec((0..n, 0..n, 0..=10u64), 0..=(2 * n as usize)).prop_map(move |triples| {
            let mut g = WeightedGraph::new();
            for v in 0..n {
                g.add_vertex(v);
            }
            for (u, v, w) in triples {
                if u != v {
                    g.add_edge(u, v, w);
                }
            }
            g
        })
    })
}

fn round_trip(t: &Trace) -> Trace {
    let mut buf = Vec::new();
    t.write(&mut buf).unwrap();
    Trace::read(buf.as_slice()).unwrap()
}

fn path_graph(weights: &[u64], skip: &[u64]) -> WeightedGraph {
    let mut g = WeightedGraph::new();
    for (i, &w) in weights.iter().enumerate() {
        let (a, b) = (i as u64, i as u64 + 1);
        if !skip.contains(&a) && !skip.contains(&b) {
            g.add_edge(a, b, w);
        }
    }
    g
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn degree_kernel_is_consistent(g in arb_graph(14)) {
        let r = apply_degree_rules_exhaustive(&g).unwrap();
        r.kernel.check_invariants().unwrap();
        prop_assert!(r.kernel.vertices().all(|v| r.kernel.degree(v).unwrap() >= 3));
        prop_assert_eq!(&replay_unweighted(&g, &r.trace).unwrap(), &r.kernel);
        prop_assert_eq!(&round_trip(&r.trace), &r.trace);
    }

    #[test]
    fn unweighted_lift_is_optimal(g in arb_graph(12), rules in prop_oneof![Just(RuleSet::Degree), Just(RuleSet::Crown), Just(RuleSet::All)]) {
        let r = reduce_unweighted(&g, rules).unwrap();
        let (km, kmatch) = brute_force_mcm(&r.kernel).unwrap();
        let lifted = lift_unweighted(&g, &r.kernel, &r.trace, &kmatch).unwrap();
        lifted.validate(&g).unwrap();
        prop_assert_eq!(lifted.cardinality(), brute_force_mcm(&g).unwrap().0);
        prop_assert_eq!(lifted.cardinality() as u64, km as u64 + r.trace.cardinality_offset());
    }

    #[test]
    fn weighted_trace_replays_and_round_trips(
        g in arb_weighted(12),
        mode in prop_oneof![Just(Mode::Prescribed), Just(Mode::Exhaustive)],
        order in prop_oneof![Just(RuleOrder::DegreeOneFirst), Just(RuleOrder::PathsFirst)],
    ) {
        let r = weighted_kernel_pipeline_ordered(&g, mode, order).unwrap();
        r.kernel.check_invariants().unwrap();
        prop_assert_eq!(&replay_weighted(&g, &r.trace).unwrap(), &r.kernel);
        let back = round_trip(&r.trace);
        prop_assert_eq!(back.weight_offset(), r.trace.weight_offset());
        prop_assert_eq!(&back, &r.trace);
        let (kopt, km) = brute_force_mwm(&r.kernel).unwrap();
        let lifted = lift_weighted(&g, &r.kernel, &r.trace, &km).unwrap();
        prop_assert_eq!(lifted.weight(), kopt + r.trace.weight_offset() as u128);
        prop_assert_eq!(lifted.weight(), brute_force_mwm(&g).unwrap().0);
    }

    #[test]
    fn optimum_is_invariant_under_relabeling(g in arb_weighted(10), seed in any::<u64>()) {
        let p = vertex_permutation(&mut rng(seed), g.vertices());
        let h = g.relabel(|v| p[&v]);
        for mode in [Mode::Prescribed, Mode::Exhaustive] {
            let a = weighted_kernel_pipeline_ordered(&g, mode, RuleOrder::DegreeOneFirst).unwrap();
            let b = weighted_kernel_pipeline_ordered(&h, mode, RuleOrder::DegreeOneFirst).unwrap();
            prop_assert_eq!(
                brute_force_mwm(&a.kernel).unwrap().0 + a.trace.weight_offset() as u128,
                brute_force_mwm(&b.kernel).unwrap().0 + b.trace.weight_offset() as u128
            );
        }
    }

    #[test]
    fn edge_lists_round_trip(g in arb_graph(30), wg in arb_weighted(30)) {
        let mut buf = Vec::new();
        write_edge_list(&g, &mut buf).unwrap();
        let back = parse_edge_list(buf.as_slice()).unwrap().graph;
        prop_assert_eq!(back.edges().collect::<Vec<_>>(), g.edges().collect::<Vec<_>>());

        let mut buf = Vec::new();
        write_weighted_edge_list(&wg, &mut buf).unwrap();
        let back = parse_weighted_edge_list(buf.as_slice()).unwrap().graph;
        prop_assert_eq!(back.edges().collect::<Vec<_>>(), wg.edges().collect::<Vec<_>>());
    }

    #[test]
    fn path_dp_matches_exhaustive(weights in prop::collection::vec(0..=20u64, 1..=12)) {
        let l = weights.len() as u64;
        let sol = mwm_on_path(&weights).unwrap();
        let opt = |skip: &[u64]| brute_force_mwm(&path_graph(&weights, skip)).unwrap().0 as u64;
        prop_assert_eq!(sol.values.full, opt(&[]));
        prop_assert_eq!(sol.values.without_first, opt(&[0]));
        prop_assert_eq!(sol.values.without_last, opt(&[l]));
        prop_assert_eq!(sol.values.without_both, opt(&[0, l]));
        let sum = |idx: &[usize]| idx.iter().map(|&i| weights[i]).sum::<u64>();
        prop_assert_eq!(sum(&sol.full), sol.values.full);
        prop_assert_eq!(sum(&sol.without_both), sol.values.without_both);
        prop_assert!(sol.without_first.iter().all(|&i| i > 0));
        prop_assert!(sol.without_last.iter().all(|&i| i + 1 < weights.len()));
        for w in sol.full.windows(2) {
            prop_assert!(w[1] >= w[0] + 2);
        }
    }

    #[test]
    fn cycle_dp_matches_exhaustive(weights in prop::collection::vec(0..=20u64, 3..=12)) {
        let l = weights.len() as u64;
        let mut g = WeightedGraph::new();
        for (i, &w) in weights.iter().enumerate() {
            g.add_edge(i as u64, (i as u64 + 1) % l, w);
        }
        let sol = mwm_on_cycle(&weights).unwrap();
        prop_assert_eq!(sol.value as u128, brute_force_mwm(&g).unwrap().0);
        g.remove_vertex(0).unwrap();
        prop_assert_eq!(sol.without_anchor as u128, brute_force_mwm(&g).unwrap().0);
        let sum: u64 = sol.witness.iter().map(|&i| weights[i]).sum();
        prop_assert_eq!(sum, sol.value);
        let covered: BTreeSet<u64> = sol.witness.iter().flat_map(|&i| [i as u64, (i as u64 + 1) % l]).collect();
        prop_assert_eq!(covered.len(), 2 * sol.witness.len());
    }

    #[test]
    fn scc_order_is_reverse_topological(n in 1..20usize, arcs in prop::collection::vec((0..20usize, 0..20usize), 0..60)) {
        let mut d = Digraph::new(n);
        for (a, b) in arcs {
            if a < n && b < n {
                d.add_arc(a, b);
            }
        }
        let comps = kosaraju_scc(&d);
        prop_assert_eq!(comps.iter().map(Vec::len).sum::<usize>(), n);
        let index = component_index(n, &comps);
        for (a, b) in d.arcs() {
            // Components are listed sinks first.
            prop_assert!(index[b] <= index[a]);
        }
    }
}
