//! Benchmark harness for comparing BMSSP with Dijkstra: timed runs, CSV
//! records, and the cost-model calculators.

pub mod analysis;
pub mod harness;
pub mod record;

pub use analysis::{crossover_threshold, theoretical_ratio, AnalysisError, Threshold};
pub use harness::{
    bench_graph, run_benchmark, time_once, Algorithm, BenchError, BenchOptions, GraphSource,
};
pub use record::{emit_csv, parse_csv, BenchRecord, ChecksumMismatch, CsvError};

use std::io::Write;

/// `(n, theoretical_ratio(n))` for `n = 2^p` with `p` in `p_min..=p_max`,
/// where `1 <= p_min <= p_max <= 63`.
pub fn ratio_curve(p_min: u32, p_max: u32) -> Result<Vec<(u64, f64)>, AnalysisError> {
    if p_min == 0 || p_min > p_max || p_max > 63 {
        return Err(AnalysisError::BadExponentRange { p_min, p_max });
    }
    (p_min..=p_max)
        .map(|p| {
            let n = 1u64 << p;
            theoretical_ratio(n as f64).map(|r| (n, r))
        })
        .collect()
}

/// Writes a ratio curve as `n,theoretical_ratio` rows at full precision.
pub fn emit_ratio_curve<W: Write>(curve: &[(u64, f64)], destination: W) -> Result<(), csv::Error> {
    let mut out = csv::Writer::from_writer(destination);
    out.write_record(["n", "theoretical_ratio"])?;
    for (n, r) in curve {
        out.write_record([n.to_string(), r.to_string()])?;
    }
    out.flush()?;
    Ok(())
}
