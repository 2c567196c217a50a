//! Benchmark records and their CSV form.

use std::io::{Read, Write};

use thiserror::Error;

pub const CSV_HEADER: [&str; 8] = [
    "instance",
    "n",
    "m",
    "time_dijkstra_ms",
    "time_bmssp_ms",
    "ratio",
    "repetitions",
    "checksum",
];

/// Decimal places written for the time columns.
pub const TIME_DECIMALS: usize = 6;
/// Decimal places written for the ratio column.
pub const RATIO_DECIMALS: usize = 3;

/// Shortest times are clamped to this many milliseconds so ratios stay finite.
const MIN_TIME_MS: f64 = 1e-6;

/// Checksums reported by the two algorithms on the same run when they differ.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChecksumMismatch {
    pub dijkstra: u64,
    pub bmssp: u64,
}

/// Mean timings of both algorithms on one instance.
///
/// Times and ratio are stored at the precision they are written with, so a
/// record survives a CSV round trip unchanged.
#[derive(Clone, Debug, PartialEq)]
pub struct BenchRecord {
    pub instance: String,
    pub n: usize,
    pub m: usize,
    pub time_dijkstra_ms: f64,
    pub time_bmssp_ms: f64,
    /// `time_bmssp_ms / time_dijkstra_ms`.
    pub ratio: f64,
    pub repetitions: u32,
    /// Wrapping sum of finite distances (the Dijkstra one when flagged).
    pub checksum: u64,
    /// Set when the algorithms disagreed; such records are never written.
    pub mismatch: Option<ChecksumMismatch>,
}

impl BenchRecord {
    /// Builds a record from mean times, rounding to the CSV precision. The
    /// ratio is taken from the unrounded times.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        instance: impl Into<String>,
        n: usize,
        m: usize,
        time_dijkstra_ms: f64,
        time_bmssp_ms: f64,
        repetitions: u32,
        checksum: u64,
        mismatch: Option<ChecksumMismatch>,
    ) -> Self {
        let td = time_dijkstra_ms.max(MIN_TIME_MS);
        let tb = time_bmssp_ms.max(MIN_TIME_MS);
        Self {
            instance: instance.into(),
            n,
            m,
            time_dijkstra_ms: round_to(td, TIME_DECIMALS),
            time_bmssp_ms: round_to(tb, TIME_DECIMALS),
            ratio: round_to(tb / td, RATIO_DECIMALS),
            repetitions,
            checksum,
            mismatch,
        }
    }

    pub fn is_valid(&self) -> bool {
        self.mismatch.is_none()
    }
}

fn round_to(x: f64, decimals: usize) -> f64 {
    // Round through the decimal formatter so the stored value is exactly what
    // parsing the written text gives back.
    format!("{x:.decimals$}").parse().unwrap_or(x)
}

#[derive(Debug, Error)]
pub enum CsvError {
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("unexpected header {0:?}")]
    Header(Vec<String>),
    #[error("row {row}: bad {column} value {value:?}")]
    Field {
        row: usize,
        column: &'static str,
        value: String,
    },
}

impl CsvError {
    pub fn is_io(&self) -> bool {
        matches!(self, CsvError::Csv(e) if e.is_io_error())
    }
}

/// Writes the header and one row per valid record; flagged records are
/// skipped. Returns the number of rows written.
pub fn emit_csv<W: Write>(records: &[BenchRecord], destination: W) -> Result<usize, CsvError> {
    let mut out = csv::Writer::from_writer(destination);
    out.write_record(CSV_HEADER)?;
    let mut rows = 0;
    for r in records.iter().filter(|r| r.is_valid()) {
        out.write_record([
            r.instance.clone(),
            r.n.to_string(),
            r.m.to_string(),
            format!("{:.TIME_DECIMALS$}", r.time_dijkstra_ms),
            format!("{:.TIME_DECIMALS$}", r.time_bmssp_ms),
            format!("{:.RATIO_DECIMALS$}", r.ratio),
            r.repetitions.to_string(),
            r.checksum.to_string(),
        ])?;
        rows += 1;
    }
    out.flush().map_err(csv::Error::from)?;
    Ok(rows)
}

/// Reads records written by [`emit_csv`].
pub fn parse_csv<R: Read>(source: R) -> Result<Vec<BenchRecord>, CsvError> {
    let mut reader = csv::Reader::from_reader(source);
    let header = reader.headers()?;
    if !header.iter().eq(CSV_HEADER) {
        return Err(CsvError::Header(header.iter().map(String::from).collect()));
    }
    let mut records = Vec::new();
    for (i, row) in reader.records().enumerate() {
        let row = row?;
        let row_no = i + 1;
        let field = |c: usize| -> &str { row.get(c).unwrap_or("") };
        fn parse<T: std::str::FromStr>(
            row: usize,
            column: &'static str,
            value: &str,
        ) -> Result<T, CsvError> {
            value.parse().map_err(|_| CsvError::Field {
                row,
                column,
                value: value.to_string(),
            })
        }
        records.push(BenchRecord {
            instance: field(0).to_string(),
            n: parse(row_no, CSV_HEADER[1], field(1))?,
            m: parse(row_no, CSV_HEADER[2], field(2))?,
            time_dijkstra_ms: parse(row_no, CSV_HEADER[3], field(3))?,
            time_bmssp_ms: parse(row_no, CSV_HEADER[4], field(4))?,
            ratio: parse(row_no, CSV_HEADER[5], field(5))?,
            repetitions: parse(row_no, CSV_HEADER[6], field(6))?,
            checksum: parse(row_no, CSV_HEADER[7], field(7))?,
            mismatch: None,
        });
    }
    Ok(records)
}
