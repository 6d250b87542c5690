mod bench;
mod pipeline;
mod report;
mod stats;
mod verify;

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use matchkern::io::{parse_matching_edges, write_dimacs};
use matchkern::solvers::{brute_force_vc, VC_LIMIT};
use matchkern::trace::{replay_unweighted, replay_weighted};
use matchkern::{export_perfect_matching_instance, Edge, Matching, Trace, WeightedGraph};

use pipeline::{Instance, PipelineArgs, Relabeling};
use report::{ms, RunReport};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Unsupported(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

#[derive(Parser)]
#[command(name = "matchkern", version, about = "Exact data reduction for maximum matching")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Reduce a graph to a kernel and write the kernel and its trace.
    Reduce(ReduceArgs),
    /// Reduce, solve the kernel, lift and write an optimal matching.
    Solve(SolveArgs),
    /// Lift a kernel matching back to the input graph.
    Lift(LiftArgs),
    /// Write a graph for external solvers.
    Export(ExportArgs),
    /// Check the reductions against exhaustive oracles on random graphs.
    Verify(verify::VerifyArgs),
    /// Kernel sizes and bounds per input, as CSV.
    Stats(stats::StatsArgs),
    /// Timings over random vertex permutations, as CSV.
    Bench(bench::BenchArgs),
}

#[derive(Args)]
struct ReduceArgs {
    input: PathBuf,
    #[command(flatten)]
    pipeline: PipelineArgs,
    /// Kernel edge list to write.
    #[arg(long, short)]
    kernel: PathBuf,
    /// Reduction trace to write.
    #[arg(long, short)]
    trace: Option<PathBuf>,
    /// Append the CSV row here instead of printing it.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct SolveArgs {
    input: PathBuf,
    #[command(flatten)]
    pipeline: PipelineArgs,
    /// Matching to write [default: stdout].
    #[arg(long, short)]
    output: Option<PathBuf>,
    /// Append a CSV row here.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct LiftArgs {
    /// The graph given to `reduce`.
    input: PathBuf,
    #[arg(long)]
    weighted: bool,
    /// Trace written by `reduce`.
    #[arg(long, short)]
    trace: PathBuf,
    /// Matching of the kernel, one `u v` pair per line.
    #[arg(long, short)]
    matching: PathBuf,
    /// The seed passed to `reduce`, if any.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ExportFormat {
    /// DIMACS `p edge` format.
    Dimacs,
    /// Doubled graph whose maximum-weight perfect matchings are twice the
    /// maximum-weight matchings of the input, in DIMACS format.
    Perfect,
}

#[derive(Args)]
struct ExportArgs {
    input: PathBuf,
    #[arg(long)]
    weighted: bool,
    #[arg(long, value_enum, default_value = "dimacs")]
    format: ExportFormat,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

fn writer(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("cannot create {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(std::io::stdout().lock())),
    })
}

fn base_report(input: &Path, args: &PipelineArgs, instance: &Instance) -> RunReport {
    let g = instance.graph();
    RunReport {
        input: input.display().to_string(),
        pipeline: args.label(),
        seed: args.seed,
        n: g.n(),
        m: g.m(),
        k: g.feedback_edge_number(),
        tau: (g.n() <= VC_LIMIT).then(|| brute_force_vc(g).ok()).flatten(),
        ..RunReport::default()
    }
}

fn cmd_reduce(a: ReduceArgs) -> Result<()> {
    a.pipeline.check()?;
    let (original, parse) = pipeline::load(&a.input, a.pipeline.weighted)?;
    let relabel = Relabeling::from_seed(original.graph(), a.pipeline.seed);
    let instance = relabel.apply(&original);
    let r = pipeline::reduce(&instance, &a.pipeline)?;
    r.kernel.write(writer(Some(&a.kernel))?)?;
    if let Some(path) = &a.trace {
        r.trace.write(writer(Some(path))?)?;
    }
    let row = RunReport {
        kernel_n: r.kernel.n(),
        kernel_m: r.kernel.m(),
        cardinality_offset: r.trace.cardinality_offset(),
        weight_offset: r.trace.weight_offset(),
        events: pipeline::event_counts(&r.trace),
        parse_ms: ms(parse),
        reduce_ms: ms(r.elapsed),
        ..base_report(&a.input, &a.pipeline, &original)
    };
    report::emit(&[row], a.report.as_deref())
}

fn cmd_solve(a: SolveArgs) -> Result<()> {
    a.pipeline.check()?;
    let (original, parse) = pipeline::load(&a.input, a.pipeline.weighted)?;
    let relabel = Relabeling::from_seed(original.graph(), a.pipeline.seed);
    let instance = relabel.apply(&original);
    let r = pipeline::reduce(&instance, &a.pipeline)?;
    let start = Instant::now();
    let km = pipeline::solve(&r.kernel)?;
    let solve_time = start.elapsed();
    let start = Instant::now();
    let lifted = pipeline::lift(&instance, &r.kernel, &r.trace, &km)?;
    let lift_time = start.elapsed();
    let m = pipeline::restore(&original, &relabel, &lifted)?;
    pipeline::write_matching(&m, a.pipeline.weighted, writer(a.output.as_deref())?)?;
    if a.pipeline.weighted {
        eprintln!("matching: {} edges, weight {}", m.cardinality(), m.weight());
    } else {
        eprintln!("matching: {} edges", m.cardinality());
    }
    if let Some(path) = &a.report {
        let row = RunReport {
            kernel_n: r.kernel.n(),
            kernel_m: r.kernel.m(),
            cardinality_offset: r.trace.cardinality_offset(),
            weight_offset: r.trace.weight_offset(),
            events: pipeline::event_counts(&r.trace),
            matching_size: Some(m.cardinality()),
            matching_weight: Some(m.weight()),
            parse_ms: ms(parse),
            reduce_ms: ms(r.elapsed),
            solve_ms: Some(ms(solve_time)),
            lift_ms: Some(ms(lift_time)),
            ..base_report(&a.input, &a.pipeline, &original)
        };
        report::emit(&[row], Some(path))?;
    }
    Ok(())
}

fn cmd_lift(a: LiftArgs) -> Result<()> {
    let (original, _) = pipeline::load(&a.input, a.weighted)?;
    let relabel = Relabeling::from_seed(original.graph(), a.seed);
    let instance = relabel.apply(&original);
    let trace = Trace::read(BufReader::new(File::open(&a.trace)?))?;
    let kernel = match &instance {
        Instance::Unweighted(g) => Instance::Unweighted(replay_unweighted(g, &trace)?),
        Instance::Weighted(g) => Instance::Weighted(replay_weighted(g, &trace)?),
    };
    let pairs = parse_matching_edges(BufReader::new(File::open(&a.matching)?))?;
    let edges = pairs.into_iter().map(|(u, v)| Edge::new(u, v));
    let km = match &kernel {
        Instance::Unweighted(k) => Matching::in_graph(k, edges)?,
        Instance::Weighted(k) => Matching::in_weighted_graph(k, edges)?,
    };
    let lifted = pipeline::lift(&instance, &kernel, &trace, &km)?;
    let m = pipeline::restore(&original, &relabel, &lifted)?;
    pipeline::write_matching(&m, a.weighted, writer(a.output.as_deref())?)
}

fn cmd_export(a: ExportArgs) -> Result<()> {
    let (instance, _) = pipeline::load(&a.input, a.weighted)?;
    let g = match instance {
        Instance::Weighted(g) => g,
        Instance::Unweighted(g) => WeightedGraph::uniform(&g, 1),
    };
    let out = writer(a.output.as_deref())?;
    match a.format {
        ExportFormat::Dimacs => write_dimacs(&g, a.weighted, out)?,
        ExportFormat::Perfect => write_dimacs(&export_perfect_matching_instance(&g).graph, true, out)?,
    }
    Ok(())
}

fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<CliError>() {
        Some(CliError::Usage(_)) => 1,
        Some(CliError::Verification(_)) => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let result = match cli.command {
        Command::Reduce(a) => cmd_reduce(a),
        Command::Solve(a) => cmd_solve(a),
        Command::Lift(a) => cmd_lift(a),
        Command::Export(a) => cmd_export(a),
        Command::Verify(a) => verify::run(a),
        Command::Stats(a) => stats::run(a),
        Command::Bench(a) => bench::run(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
