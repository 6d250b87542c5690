use std::fs::OpenOptions;
use std::io::Write;
use std::path::Path;
use std::time::Duration;

use anyhow::Result;
use serde::Serialize;

/// One CSV row per reduce or solve run.
#[derive(Clone, Debug, Default, Serialize)]
pub struct RunReport {
    pub input: String,
    pub pipeline: String,
    pub seed: Option<u64>,
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub tau: Option<usize>,
    pub kernel_n: usize,
    pub kernel_m: usize,
    pub cardinality_offset: u64,
    pub weight_offset: u64,
    pub events: String,
    pub matching_size: Option<usize>,
    pub matching_weight: Option<u128>,
    pub parse_ms: f64,
    pub reduce_ms: f64,
    pub solve_ms: Option<f64>,
    pub lift_ms: Option<f64>,
}

pub fn ms(d: Duration) -> f64 {
    (d.as_secs_f64() * 1e6).round() / 1e3
}

/// Writes the rows to `path`, appending to an existing report, or to stdout.
pub fn emit<T: Serialize>(rows: &[T], path: Option<&Path>) -> Result<()> {
    match path {
        Some(p) => {
            let fresh = std::fs::metadata(p).map_or(true, |m| m.len() == 0);
            let file = OpenOptions::new().create(true).append(true).open(p)?;
            write_rows(rows, fresh, file)
        }
        None => write_rows(rows, true, std::io::stdout().lock()),
    }
}

fn write_rows<T: Serialize, W: Write>(rows: &[T], headers: bool, out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(headers).from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}
