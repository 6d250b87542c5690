//! Oracle checks shared by the `verify` command and the test suites.
//!
//! Every check takes one small graph, runs a reduction and compares against
//! the exhaustive oracles. It returns the list of violations found; library
//! errors count as violations too.

use std::collections::BTreeSet;

use crate::crown::{apply_crown, find_crown_bruteforce, maximal_persistency, apply_lp_rule, reduce_unweighted, RuleSet};
use crate::error::Result;
use crate::graph::{export_perfect_matching_instance, Graph, VertexId, WeightedGraph};
use crate::solvers::{blossom_mcm, brute_force_mcm, brute_force_mwm, brute_force_vc};
use crate::trace::{lift_unweighted, lift_weighted, replay_unweighted, replay_weighted, Trace};
use crate::unweighted::check_fes_kernel_bound;
use crate::weighted::{check_weighted_kernel_bound, enumerate_chains, weighted_kernel_pipeline_ordered, Mode, RuleOrder};

/// Violations collected by one check.
#[derive(Debug, Default)]
pub struct Findings(pub Vec<String>);

impl Findings {
    pub fn ok(&self) -> bool {
        self.0.is_empty()
    }

    fn expect(&mut self, cond: bool, msg: impl FnOnce() -> String) {
        if !cond {
            self.0.push(msg());
        }
    }

    fn absorb(&mut self, r: Result<()>) {
        if let Err(e) = r {
            self.0.push(e.to_string());
        }
    }
}

/// Unweighted reduction against the cardinality oracle. With `tamper` set
/// the recorded offset is deliberately misread by one, which must be caught.
pub fn check_unweighted(g: &Graph, rules: RuleSet, tamper: bool) -> Findings {
    let mut f = Findings::default();
    let r = (|| -> Result<()> {
        let reduced = reduce_unweighted(g, rules)?;
        let (kernel, trace) = (&reduced.kernel, &reduced.trace);
        f.expect(replay_unweighted(g, trace)? == *kernel, || "replay does not reproduce the kernel".into());
        let offset = trace.cardinality_offset() + tamper as u64;
        let (opt, _) = brute_force_mcm(g)?;
        let (kopt, _) = brute_force_mcm(kernel)?;
        f.expect(opt as u64 == kopt as u64 + offset, || {
            format!("mm(G) = {opt} but mm(kernel) + offset = {kopt} + {offset}")
        });
        let lifted = lift_unweighted(g, kernel, trace, &blossom_mcm(kernel))?;
        f.expect(lifted.cardinality() == opt, || {
            format!("lifted matching has {} edges, optimum is {opt}", lifted.cardinality())
        });
        if rules != RuleSet::Crown {
            let min_degree = kernel.vertices().filter_map(|v| kernel.degree(v)).min();
            f.expect(min_degree.is_none_or(|d| d >= 3), || format!("kernel has minimum degree {min_degree:?}"));
        }
        match rules {
            RuleSet::Degree => {
                check_fes_kernel_bound(g, kernel)?;
            }
            RuleSet::All => {
                let tau = brute_force_vc(g)?;
                f.expect(kernel.n() <= 2 * tau, || format!("kernel has {} vertices, 2τ = {}", kernel.n(), 2 * tau));
            }
            RuleSet::Crown => {}
        }
        Ok(())
    })();
    f.absorb(r);
    f
}

/// Weighted pipeline against the weight oracle.
pub fn check_weighted(g: &WeightedGraph, mode: Mode, order: RuleOrder) -> Findings {
    let mut f = Findings::default();
    let r = (|| -> Result<()> {
        let reduced = weighted_kernel_pipeline_ordered(g, mode, order)?;
        let (kernel, trace) = (&reduced.kernel, &reduced.trace);
        f.expect(replay_weighted(g, trace)? == *kernel, || "replay does not reproduce the kernel".into());
        let (opt, _) = brute_force_mwm(g)?;
        let (kopt, kmatching) = brute_force_mwm(kernel)?;
        let offset = trace.weight_offset() as u128;
        f.expect(opt == kopt + offset, || format!("ω(G) = {opt} but ω(kernel) + offset = {kopt} + {offset}"));
        let lifted = lift_weighted(g, kernel, trace, &kmatching)?;
        f.expect(lifted.weight() == opt, || format!("lifted matching weighs {}, optimum is {opt}", lifted.weight()));
        let (paths, cycles) = enumerate_chains(kernel);
        f.expect(paths.is_empty() && cycles.is_empty(), || "kernel still has a maximal path or pending cycle".into());
        match mode {
            Mode::Prescribed => {
                check_weighted_kernel_bound(g, kernel)?;
            }
            Mode::Exhaustive => {
                let bad = kernel
                    .vertices()
                    .any(|v| kernel.degree(v) == Some(1))
                    || kernel.edges().any(|(_, w)| w == 0);
                f.expect(!bad, || "exhaustive kernel has a pendant or a zero-weight edge".into());
            }
        }
        Ok(())
    })();
    f.absorb(r);
    f
}

/// The LP-reduced graph is crown-free, and removing oracle-found crowns one
/// at a time ends at the same vertex set.
pub fn check_crown_equivalence(g: &Graph) -> Findings {
    let mut f = Findings::default();
    let r = (|| -> Result<()> {
        let sol = maximal_persistency(g)?;
        sol.check_feasible(g)?;
        f.expect(2 * sol.doubled_value() <= 2 * g.n(), || "LP objective exceeds n/2".into());
        let mut lp = g.clone();
        apply_lp_rule(&mut lp, &sol, &mut Trace::new())?;
        f.expect(find_crown_bruteforce(&lp)?.is_none(), || "LP-reduced graph still contains a crown".into());
        let mut by_oracle = g.clone();
        let mut t = Trace::new();
        while let Some(c) = find_crown_bruteforce(&by_oracle)? {
            apply_crown(&mut by_oracle, &c, &mut t)?;
        }
        let a: BTreeSet<VertexId> = lp.vertices().collect();
        let b: BTreeSet<VertexId> = by_oracle.vertices().collect();
        f.expect(a == b, || format!("LP leaves {a:?}, crown removal leaves {b:?}"));
        f.expect(t.cardinality_offset() == sol.ones.len() as u64, || "crown and LP offsets differ".into());
        Ok(())
    })();
    f.absorb(r);
    f
}

/// Size of the doubled instance and its optimum against twice the original.
pub fn check_export(g: &WeightedGraph) -> Findings {
    let mut f = Findings::default();
    let r = (|| -> Result<()> {
        let pm = export_perfect_matching_instance(g);
        f.expect(pm.graph.n() == 2 * g.n(), || format!("export has {} vertices", pm.graph.n()));
        f.expect(pm.graph.m() == 2 * g.m() + g.n(), || format!("export has {} edges", pm.graph.m()));
        let (opt, _) = brute_force_mwm(g)?;
        let (double, _) = brute_force_mwm(&pm.graph)?;
        f.expect(double == 2 * opt, || format!("doubled optimum {double}, expected 2·{opt}"));
        Ok(())
    })();
    f.absorb(r);
    f
}

/// Blossom against the exhaustive oracle.
pub fn check_blossom(g: &Graph) -> Findings {
    let mut f = Findings::default();
    let r = (|| -> Result<()> {
        let m = blossom_mcm(g);
        m.validate(g)?;
        let (opt, _) = brute_force_mcm(g)?;
        f.expect(m.cardinality() == opt, || format!("blossom found {}, optimum is {opt}", m.cardinality()));
        Ok(())
    })();
    f.absorb(r);
    f
}
