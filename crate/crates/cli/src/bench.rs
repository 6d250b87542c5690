//! Timing protocol: each repetition relabels the vertices with its own seed,
//! reduces, writes and re-parses the kernel, solves it and lifts the result.
//! The direct solve runs on the same relabeled graph. Parsing the input is
//! timed once and kept out of the comparison; parsing the kernel is counted
//! on the reduced side.

use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use anyhow::Result;
use clap::Args;
use rayon::prelude::*;

use crate::pipeline::{self, Instance, PipelineArgs, Relabeling};
use crate::report::ms;

#[derive(Args)]
pub struct BenchArgs {
    #[arg(required = true)]
    inputs: Vec<PathBuf>,
    #[command(flatten)]
    pipeline: PipelineArgs,
    #[arg(long, default_value_t = 5)]
    repetitions: u64,
    /// Worker threads; one input per worker [default: all cores].
    #[arg(long)]
    threads: Option<usize>,
    /// Leave the timing columns empty, making the output reproducible.
    #[arg(long)]
    no_timing: bool,
    #[arg(long, short)]
    out: Option<PathBuf>,
}

const HEADER: [&str; 16] = [
    "input",
    "run",
    "seed",
    "n",
    "m",
    "kernel_n",
    "kernel_m",
    "cardinality_offset",
    "weight_offset",
    "value",
    "parse_ms",
    "reduce_ms",
    "kernel_io_ms",
    "solve_kernel_ms",
    "lift_ms",
    "direct_ms",
];

/// Timings of one repetition; `None` where a phase could not run.
struct Rep {
    seed: u64,
    kernel: (usize, usize),
    offsets: (u64, u64),
    value: Option<u128>,
    reduce: Duration,
    kernel_io: Duration,
    solve: Option<Duration>,
    lift: Option<Duration>,
    direct: Option<Duration>,
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn repetition(original: &Instance, args: &PipelineArgs, seed: u64) -> Result<Rep> {
    let relabel = Relabeling::from_seed(original.graph(), Some(seed));
    let instance = relabel.apply(original);
    let r = pipeline::reduce(&instance, args)?;
    let (parsed, kernel_io) = timed(|| -> Result<Instance> {
        let mut buf = Vec::new();
        r.kernel.write(&mut buf)?;
        Ok(Instance::parse(&buf, args.weighted)?)
    });
    let parsed = parsed?;
    let (solved, solve) = timed(|| pipeline::solve(&parsed));
    let (lifted, lift) = match &solved {
        Ok(km) => {
            let (m, t) = timed(|| pipeline::lift(&instance, &r.kernel, &r.trace, km));
            (Some(m?), Some(t))
        }
        Err(_) => (None, None),
    };
    let (direct, direct_time) = timed(|| pipeline::solve(&instance));
    let value = lifted.as_ref().map(|m| match original {
        Instance::Unweighted(_) => m.cardinality() as u128,
        Instance::Weighted(_) => m.weight(),
    });
    if let (Some(v), Ok(d)) = (value, &direct) {
        let dv = match original {
            Instance::Unweighted(_) => d.cardinality() as u128,
            Instance::Weighted(_) => d.weight(),
        };
        anyhow::ensure!(v == dv, "reduced solve found {v}, direct solve {dv}");
    }
    Ok(Rep {
        seed,
        kernel: (r.kernel.n(), r.kernel.m()),
        offsets: (r.trace.cardinality_offset(), r.trace.weight_offset()),
        value,
        reduce: r.elapsed,
        kernel_io,
        solve: solved.is_ok().then_some(solve),
        lift,
        direct: direct.is_ok().then_some(direct_time),
    })
}

fn median(mut xs: Vec<f64>) -> Option<f64> {
    if xs.is_empty() {
        return None;
    }
    xs.sort_by(f64::total_cmp);
    let mid = xs.len() / 2;
    Some(if xs.len() % 2 == 1 { xs[mid] } else { (xs[mid - 1] + xs[mid]) / 2.0 })
}

fn mean(xs: Vec<f64>) -> Option<f64> {
    (!xs.is_empty()).then(|| xs.iter().sum::<f64>() / xs.len() as f64)
}

fn fmt(x: Option<f64>) -> String {
    x.map(|v| format!("{v:.3}")).unwrap_or_default()
}

fn rows_for(path: &Path, args: &BenchArgs) -> Result<Vec<Vec<String>>> {
    let (original, parse) = pipeline::load(path, args.pipeline.weighted)?;
    let base = args.pipeline.seed.unwrap_or(0);
    let reps = (0..args.repetitions)
        .map(|i| repetition(&original, &args.pipeline, base.wrapping_add(i)))
        .collect::<Result<Vec<_>>>()?;
    let time = |d: Option<Duration>| if args.no_timing { String::new() } else { fmt(d.map(ms)) };
    let input = path.display().to_string();
    let (n, m) = (original.n().to_string(), original.m().to_string());
    let parse_ms = time(Some(parse));
    let mut rows = Vec::new();
    for (i, r) in reps.iter().enumerate() {
        rows.push(vec![
            input.clone(),
            i.to_string(),
            r.seed.to_string(),
            n.clone(),
            m.clone(),
            r.kernel.0.to_string(),
            r.kernel.1.to_string(),
            r.offsets.0.to_string(),
            r.offsets.1.to_string(),
            r.value.map(|v| v.to_string()).unwrap_or_default(),
            parse_ms.clone(),
            time(Some(r.reduce)),
            time(Some(r.kernel_io)),
            time(r.solve),
            time(r.lift),
            time(r.direct),
        ]);
    }
    type Pick = fn(&Rep) -> Option<f64>;
    let columns: [Pick; 11] = [
        |r| Some(r.kernel.0 as f64),
        |r| Some(r.kernel.1 as f64),
        |r| Some(r.offsets.0 as f64),
        |r| Some(r.offsets.1 as f64),
        |r| r.value.map(|v| v as f64),
        |_| None,
        |r| Some(ms(r.reduce)),
        |r| Some(ms(r.kernel_io)),
        |r| r.solve.map(ms),
        |r| r.lift.map(ms),
        |r| r.direct.map(ms),
    ];
    for (name, agg) in [("mean", mean as fn(Vec<f64>) -> Option<f64>), ("median", median)] {
        let mut row = vec![input.clone(), name.to_string(), String::new(), n.clone(), m.clone()];
        for (j, pick) in columns.iter().enumerate() {
            let is_timing = j >= 5;
            if j == 5 {
                row.push(parse_ms.clone());
            } else if is_timing && args.no_timing {
                row.push(String::new());
            } else {
                row.push(fmt(agg(reps.iter().filter_map(pick).collect())));
            }
        }
        rows.push(row);
    }
    Ok(rows)
}

pub fn run(a: BenchArgs) -> Result<()> {
    a.pipeline.check()?;
    let work = || {
        a.inputs
            .par_iter()
            .map(|p| rows_for(p, &a))
            .collect::<Result<Vec<_>>>()
    };
    let per_input = match a.threads {
        Some(t) => rayon::ThreadPoolBuilder::new().num_threads(t).build()?.install(work)?,
        None => work()?,
    };
    let out: Box<dyn std::io::Write> = match &a.out {
        Some(p) => Box::new(std::fs::File::create(p)?),
        None => Box::new(std::io::stdout().lock()),
    };
    let mut w = csv::Writer::from_writer(out);
    w.write_record(HEADER)?;
    for row in per_input.into_iter().flatten() {
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}
