use std::path::{Path, PathBuf};

use anyhow::Result;
use clap::Args;
use rayon::prelude::*;
use serde::Serialize;

use matchkern::crown::{reduce_unweighted, RuleSet};
use matchkern::solvers::{brute_force_vc, VC_LIMIT};
use matchkern::weighted::{weighted_kernel_pipeline, Mode};

use crate::pipeline::{self, Instance};
use crate::report;

#[derive(Args)]
pub struct StatsArgs {
    #[arg(required = true)]
    inputs: Vec<PathBuf>,
    /// Inputs carry weights; adds the weighted kernel columns.
    #[arg(long)]
    weighted: bool,
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Debug, Serialize)]
struct StatsRow {
    input: String,
    n: usize,
    m: usize,
    k: usize,
    vertex_bound: usize,
    edge_bound: usize,
    degree_n: usize,
    degree_m: usize,
    crown_n: usize,
    crown_m: usize,
    all_n: usize,
    all_m: usize,
    two_tau: Option<usize>,
    weighted_vertex_bound: Option<usize>,
    weighted_edge_bound: Option<usize>,
    prescribed_n: Option<usize>,
    prescribed_m: Option<usize>,
    exhaustive_n: Option<usize>,
    exhaustive_m: Option<usize>,
}

fn row(path: &Path, weighted: bool) -> Result<StatsRow> {
    let (instance, _) = pipeline::load(path, weighted)?;
    let g = instance.graph();
    let k = g.feedback_edge_number();
    let size = |rules| reduce_unweighted(g, rules).map(|r| (r.kernel.n(), r.kernel.m()));
    let (degree_n, degree_m) = size(RuleSet::Degree)?;
    let (crown_n, crown_m) = size(RuleSet::Crown)?;
    let (all_n, all_m) = size(RuleSet::All)?;
    let mut out = StatsRow {
        input: path.display().to_string(),
        n: g.n(),
        m: g.m(),
        k,
        vertex_bound: 2 * k,
        edge_bound: 3 * k,
        degree_n,
        degree_m,
        crown_n,
        crown_m,
        all_n,
        all_m,
        two_tau: if g.n() <= VC_LIMIT { Some(2 * brute_force_vc(g)?) } else { None },
        weighted_vertex_bound: None,
        weighted_edge_bound: None,
        prescribed_n: None,
        prescribed_m: None,
        exhaustive_n: None,
        exhaustive_m: None,
    };
    if let Instance::Weighted(wg) = &instance {
        let p = weighted_kernel_pipeline(wg, Mode::Prescribed)?.kernel;
        let e = weighted_kernel_pipeline(wg, Mode::Exhaustive)?.kernel;
        out.weighted_vertex_bound = Some(7 * k);
        out.weighted_edge_bound = Some(9 * k);
        out.prescribed_n = Some(p.n());
        out.prescribed_m = Some(p.m());
        out.exhaustive_n = Some(e.n());
        out.exhaustive_m = Some(e.m());
    }
    Ok(out)
}

pub fn run(a: StatsArgs) -> Result<()> {
    let rows = a
        .inputs
        .par_iter()
        .map(|p| row(p, a.weighted))
        .collect::<Result<Vec<_>>>()?;
    report::emit(&rows, a.out.as_deref())
}
