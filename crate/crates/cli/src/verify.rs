use std::path::PathBuf;

use anyhow::Result;
use clap::Args;
use rand::Rng;

use matchkern::check::{check_blossom, check_crown_equivalence, check_export, check_unweighted, check_weighted, Findings};
use matchkern::crown::{apply_lp_rule, maximal_persistency, RuleSet, CROWN_SEARCH_LIMIT};
use matchkern::random::{gnp, rng, with_random_weights};
use matchkern::solvers::MWM_LIMIT;
use matchkern::weighted::{Mode, RuleOrder};
use matchkern::{Graph, Trace, WeightedGraph};

use crate::pipeline::{self, Instance};
use crate::CliError;

const DENSITIES: [f64; 9] = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9];

const WEIGHTED_RUNS: [(Mode, RuleOrder); 3] = [
    (Mode::Prescribed, RuleOrder::DegreeOneFirst),
    (Mode::Exhaustive, RuleOrder::DegreeOneFirst),
    (Mode::Exhaustive, RuleOrder::PathsFirst),
];

#[derive(Args)]
pub struct VerifyArgs {
    /// Also check this graph if it is small enough.
    input: Option<PathBuf>,
    #[arg(long, default_value_t = 200)]
    trials: usize,
    #[arg(long, default_value_t = 12)]
    max_n: u64,
    /// Also run the weighted suites.
    #[arg(long)]
    weighted: bool,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Misreport every unweighted offset by one, to check that the harness
    /// notices.
    #[arg(long, hide = true)]
    inject_failure: bool,
}

#[derive(Default)]
struct Tally {
    checks: usize,
    violations: Vec<String>,
}

impl Tally {
    fn add(&mut self, what: &str, f: Findings) {
        self.checks += 1;
        self.violations.extend(f.0.into_iter().map(|v| format!("{what}: {v}")));
    }

    fn unweighted(&mut self, what: &str, g: &Graph, tamper: bool) {
        for rules in [RuleSet::Degree, RuleSet::Crown, RuleSet::All] {
            self.add(&format!("{what} {rules:?}"), check_unweighted(g, rules, tamper));
        }
        if g.n() <= CROWN_SEARCH_LIMIT {
            self.add(what, check_crown_equivalence(g));
        }
        self.add(what, check_blossom(g));
    }

    fn weighted(&mut self, what: &str, g: &WeightedGraph) {
        for (mode, order) in WEIGHTED_RUNS {
            self.add(&format!("{what} {mode:?}/{order:?}"), check_weighted(g, mode, order));
        }
        if 2 * g.n() <= MWM_LIMIT {
            self.add(what, check_export(g));
        }
    }
}

pub fn run(a: VerifyArgs) -> Result<()> {
    let limit = if a.weighted { MWM_LIMIT.min(CROWN_SEARCH_LIMIT) } else { CROWN_SEARCH_LIMIT } as u64;
    if a.max_n == 0 || a.max_n > limit {
        return Err(CliError::Usage(format!("--max-n must be between 1 and {limit}")).into());
    }
    let mut tally = Tally::default();
    if let Some(path) = &a.input {
        let (instance, _) = pipeline::load(path, a.weighted)?;
        let g = instance.graph();
        if g.n() as u64 <= limit {
            tally.unweighted("input", g, a.inject_failure);
            if let Instance::Weighted(wg) = &instance {
                tally.weighted("input", wg);
            }
            let sol = maximal_persistency(g)?;
            let mut lp = g.clone();
            apply_lp_rule(&mut lp, &sol, &mut Trace::new())?;
            println!("input: crown pass removed {} vertices", g.n() - lp.n());
        } else {
            println!("input: {} vertices, above the oracle limit of {limit}; skipped", g.n());
        }
    }
    let mut r = rng(a.seed);
    for t in 0..a.trials {
        let n = r.gen_range(1..=a.max_n);
        let g = gnp(&mut r, n, DENSITIES[t % DENSITIES.len()]);
        tally.unweighted(&format!("trial {t}"), &g, a.inject_failure);
        if a.weighted {
            let wg = with_random_weights(&mut r, &g, 1, 10);
            tally.weighted(&format!("trial {t}"), &wg);
        }
    }
    println!(
        "verify: {} trials, {} checks, {} violations",
        a.trials,
        tally.checks,
        tally.violations.len()
    );
    for v in tally.violations.iter().take(20) {
        println!("  {v}");
    }
    if tally.violations.is_empty() {
        Ok(())
    } else {
        Err(CliError::Verification(format!("{} violations", tally.violations.len())).into())
    }
}
