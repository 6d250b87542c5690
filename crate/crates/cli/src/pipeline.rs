//! Loading, permuting, reducing, solving and lifting, shared by the
//! subcommands.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fs::File;
use std::io::{BufReader, Write};
use std::path::Path;
use std::time::{Duration, Instant};

use anyhow::{Context, Result};
use clap::{Args, ValueEnum};

use matchkern::crown::{reduce_unweighted, RuleSet};
use matchkern::io::{parse_edge_list, parse_weighted_edge_list, write_edge_list, write_weighted_edge_list};
use matchkern::random::{rng, vertex_permutation};
use matchkern::solvers::{blossom_mcm, brute_force_mwm, MWM_LIMIT};
use matchkern::trace::{lift_unweighted, lift_weighted};
use matchkern::weighted::{weighted_kernel_pipeline_ordered, Mode, RuleOrder};
use matchkern::{Edge, Graph, Matching, Trace, VertexId, WeightedGraph};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RulesArg {
    Degree,
    Crown,
    All,
}

impl From<RulesArg> for RuleSet {
    fn from(r: RulesArg) -> Self {
        match r {
            RulesArg::Degree => RuleSet::Degree,
            RulesArg::Crown => RuleSet::Crown,
            RulesArg::All => RuleSet::All,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    #[default]
    Prescribed,
    Exhaustive,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum OrderArg {
    #[default]
    DegreeOneFirst,
    PathsFirst,
}

/// Flags selecting the reduction pipeline.
#[derive(Args, Clone, Debug)]
pub struct PipelineArgs {
    /// Read `u v w` lines and reduce for maximum-weight matching.
    #[arg(long)]
    pub weighted: bool,
    /// Unweighted rule set [default: degree].
    #[arg(long, value_enum)]
    pub rules: Option<RulesArg>,
    /// Weighted pipeline mode.
    #[arg(long, value_enum, default_value_t)]
    pub mode: ModeArg,
    /// Rule order of the exhaustive weighted pipeline.
    #[arg(long, value_enum, default_value_t)]
    pub order: OrderArg,
    /// Randomly permute vertex ids with this seed before reducing.
    #[arg(long)]
    pub seed: Option<u64>,
}

impl PipelineArgs {
    pub fn check(&self) -> Result<()> {
        if self.weighted && self.rules.is_some() {
            return Err(CliError::Usage("--rules applies to unweighted inputs only".into()).into());
        }
        Ok(())
    }

    pub fn label(&self) -> String {
        if self.weighted {
            let mode = match self.mode {
                ModeArg::Prescribed => "prescribed",
                ModeArg::Exhaustive => "exhaustive",
            };
            match (self.mode, self.order) {
                (ModeArg::Exhaustive, OrderArg::PathsFirst) => format!("{mode}/paths-first"),
                _ => mode.to_string(),
            }
        } else {
            format!("{:?}", self.rules.unwrap_or(RulesArg::Degree)).to_lowercase()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Instance {
    Unweighted(Graph),
    Weighted(WeightedGraph),
}

impl Instance {
    pub fn n(&self) -> usize {
        match self {
            Instance::Unweighted(g) => g.n(),
            Instance::Weighted(g) => g.n(),
        }
    }

    pub fn m(&self) -> usize {
        match self {
            Instance::Unweighted(g) => g.m(),
            Instance::Weighted(g) => g.m(),
        }
    }

    pub fn graph(&self) -> &Graph {
        match self {
            Instance::Unweighted(g) => g,
            Instance::Weighted(g) => g.graph(),
        }
    }

    pub fn write<W: Write>(&self, out: W) -> matchkern::Result<()> {
        match self {
            Instance::Unweighted(g) => write_edge_list(g, out),
            Instance::Weighted(g) => write_weighted_edge_list(g, out),
        }
    }

    pub fn parse(bytes: &[u8], weighted: bool) -> matchkern::Result<Instance> {
        Ok(if weighted {
            Instance::Weighted(parse_weighted_edge_list(bytes)?.graph)
        } else {
            Instance::Unweighted(parse_edge_list(bytes)?.graph)
        })
    }

    fn relabel(&self, f: impl Fn(VertexId) -> VertexId) -> Instance {
        match self {
            Instance::Unweighted(g) => Instance::Unweighted(g.relabel(f)),
            Instance::Weighted(g) => Instance::Weighted(g.relabel(f)),
        }
    }
}

pub fn load(path: &Path, weighted: bool) -> Result<(Instance, Duration)> {
    let start = Instant::now();
    let file = File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
    let reader = BufReader::new(file);
    let instance = if weighted {
        Instance::Weighted(parse_weighted_edge_list(reader)?.graph)
    } else {
        Instance::Unweighted(parse_edge_list(reader)?.graph)
    };
    Ok((instance, start.elapsed()))
}

/// Vertex relabeling applied before reduction, with its inverse.
#[derive(Clone, Debug, Default)]
pub struct Relabeling {
    forward: HashMap<VertexId, VertexId>,
    back: HashMap<VertexId, VertexId>,
}

impl Relabeling {
    pub fn from_seed(g: &Graph, seed: Option<u64>) -> Self {
        let Some(seed) = seed else { return Relabeling::default() };
        let forward = vertex_permutation(&mut rng(seed), g.vertices());
        let back = forward.iter().map(|(&a, &b)| (b, a)).collect();
        Relabeling { forward, back }
    }

    pub fn apply(&self, instance: &Instance) -> Instance {
        if self.forward.is_empty() {
            return instance.clone();
        }
        instance.relabel(|v| self.forward[&v])
    }

    pub fn undo(&self, e: Edge) -> Edge {
        let f = |v| self.back.get(&v).copied().unwrap_or(v);
        Edge::new(f(e.u()), f(e.v()))
    }
}

pub struct Reduction {
    pub kernel: Instance,
    pub trace: Trace,
    pub elapsed: Duration,
}

pub fn reduce(instance: &Instance, args: &PipelineArgs) -> Result<Reduction> {
    let start = Instant::now();
    let (kernel, trace) = match instance {
        Instance::Unweighted(g) => {
            let r = reduce_unweighted(g, args.rules.unwrap_or(RulesArg::Degree).into())?;
            (Instance::Unweighted(r.kernel), r.trace)
        }
        Instance::Weighted(g) => {
            let mode = match args.mode {
                ModeArg::Prescribed => Mode::Prescribed,
                ModeArg::Exhaustive => Mode::Exhaustive,
            };
            let order = match args.order {
                OrderArg::DegreeOneFirst => RuleOrder::DegreeOneFirst,
                OrderArg::PathsFirst => RuleOrder::PathsFirst,
            };
            let r = weighted_kernel_pipeline_ordered(g, mode, order)?;
            (Instance::Weighted(r.kernel), r.trace)
        }
    };
    Ok(Reduction {
        kernel,
        trace,
        elapsed: start.elapsed(),
    })
}

/// Optimal matching of an instance: blossom for cardinality, exhaustive
/// search per connected component for weight.
pub fn solve(instance: &Instance) -> Result<Matching> {
    match instance {
        Instance::Unweighted(g) => Ok(blossom_mcm(g)),
        Instance::Weighted(g) => {
            let mut m = Matching::new();
            for comp in g.connected_components() {
                if comp.len() < 2 {
                    continue;
                }
                if comp.len() > MWM_LIMIT {
                    return Err(CliError::Unsupported(format!(
                        "weighted kernel has a component with {} vertices, above the exact solver limit of \
                         {MWM_LIMIT}; write it with `matchkern export --format perfect` and use an external solver",
                        comp.len()
                    ))
                    .into());
                }
                let keep: BTreeSet<VertexId> = comp.into_iter().collect();
                let part = WeightedGraph::from_edges(
                    g.edges()
                        .filter(|(e, _)| keep.contains(&e.u()))
                        .map(|(e, w)| (e.u(), e.v(), w)),
                );
                for (e, w) in brute_force_mwm(&part)?.1.weighted_edges() {
                    m.insert(e, w)?;
                }
            }
            Ok(m)
        }
    }
}

pub fn lift(original: &Instance, kernel: &Instance, trace: &Trace, m: &Matching) -> Result<Matching> {
    let lifted = match (original, kernel) {
        (Instance::Unweighted(g), Instance::Unweighted(k)) => {
            let m = lift_unweighted(g, k, trace, m)?;
            m.validate(g)?;
            m
        }
        (Instance::Weighted(g), Instance::Weighted(k)) => {
            let m = lift_weighted(g, k, trace, m)?;
            m.validate_weighted(g)?;
            m
        }
        _ => return Err(CliError::Usage("kernel and input differ in weightedness".into()).into()),
    };
    Ok(lifted)
}

/// Maps a matching of the relabeled instance back to original ids.
pub fn restore(original: &Instance, relabel: &Relabeling, m: &Matching) -> Result<Matching> {
    let edges = m.edges().map(|e| relabel.undo(e));
    Ok(match original {
        Instance::Unweighted(g) => Matching::in_graph(g, edges)?,
        Instance::Weighted(g) => Matching::in_weighted_graph(g, edges)?,
    })
}

pub fn write_matching<W: Write>(m: &Matching, weighted: bool, mut out: W) -> Result<()> {
    if weighted {
        writeln!(out, "# size={} weight={}", m.cardinality(), m.weight())?;
    } else {
        writeln!(out, "# size={}", m.cardinality())?;
    }
    for (e, w) in m.weighted_edges() {
        if weighted {
            writeln!(out, "{} {} {w}", e.u(), e.v())?;
        } else {
            writeln!(out, "{} {}", e.u(), e.v())?;
        }
    }
    Ok(())
}

/// Per-kind event counts as `kind=count` pairs.
pub fn event_counts(trace: &Trace) -> String {
    let counts: BTreeMap<&str, usize> = trace.counts();
    counts
        .iter()
        .map(|(k, c)| format!("{k}={c}"))
        .collect::<Vec<_>>()
        .join(";")
}
