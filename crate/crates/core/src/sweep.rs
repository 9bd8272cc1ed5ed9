//! Grid sweeps over `(m, n)` comparing every computed value against its
//! Fibonacci bound, with deterministic CSV/JSON report emission.
//!
//! Rows are ordered lexicographically by `(m, n)` and the report bytes are
//! identical for identical configs regardless of the worker count: cells are
//! pure functions of their coordinates, workers split the grid by `m` so each
//! owns its memo cache, and a single writer assembles the ordered output.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::partition::{fibonacci_bound_for, PartitionCounter};
use crate::partset::PartSet;
use crate::report::{BoundVerdict, RowKind};
use crate::sl2::{dim_verdict, total_verdict, CohomCounter};
use crate::Count;

/// What to sweep and which counter to use per cell.
#[derive(Clone, Debug)]
pub enum SweepMode {
    /// `P(m, n, A)` rows; the bound (`F(n)` or `F(2n-1)`) is selected by the
    /// growth conditions checked up to `s_max` (default: the number of parts
    /// `<= m_max`, capped at 64).
    Partitions { set: PartSet, s_max: Option<u64> },
    /// Cohomology rows at characteristic `p`: dimension cells by default,
    /// total-dimension cells when `total` is set. Odd weights are skipped
    /// unless `include_odd_m` (their rows are identically zero under the
    /// adopted convention).
    Cohomology {
        p: u64,
        total: bool,
        include_odd_m: bool,
    },
}

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub mode: SweepMode,
    pub m_min: u64,
    pub m_max: u64,
    pub n_min: u64,
    pub n_max: u64,
    /// Worker count; affects scheduling only, never the output bytes.
    pub jobs: usize,
}

/// Per-`n` extremal cell: the maximum value, the smallest `m` attaining it,
/// and whether it touches the bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extreme {
    pub kind: RowKind,
    pub n: u64,
    pub max_value: Count,
    pub max_at_m: u64,
    pub touches_bound: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Summary {
    pub per_n: Vec<Extreme>,
    pub sharp_cells: u64,
    pub violations: Vec<BoundVerdict>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct SweepReport {
    pub config: SweepConfig,
    pub rows: Vec<BoundVerdict>,
    pub summary: Summary,
}

impl SweepReport {
    pub fn has_violations(&self) -> bool {
        !self.summary.violations.is_empty()
    }
}

/// Evaluates every grid cell. Work is split by `m` (outer coordinate) so
/// each worker owns its memo cache; results are assembled in lexicographic
/// `(m, n)` order.
pub fn run_sweep(config: &SweepConfig) -> Result<SweepReport> {
    if config.jobs < 1 {
        return Err(Error::BadJobs);
    }
    if config.m_min > config.m_max || config.n_min > config.n_max {
        return Err(Error::EmptyGrid(format!(
            "m={}..={}, n={}..={}",
            config.m_min, config.m_max, config.n_min, config.n_max
        )));
    }

    let m_values: Vec<u64> = match &config.mode {
        SweepMode::Partitions { .. } => (config.m_min.max(1)..=config.m_max).collect(),
        SweepMode::Cohomology { include_odd_m, .. } => (config.m_min..=config.m_max)
            .filter(|m| *include_odd_m || m % 2 == 0)
            .collect(),
    };
    let n_values: Vec<u64> = match &config.mode {
        SweepMode::Partitions { .. } => (config.n_min.max(1)..=config.n_max).collect(),
        SweepMode::Cohomology { .. } => (config.n_min..=config.n_max).collect(),
    };
    if m_values.is_empty() || n_values.is_empty() {
        return Err(Error::EmptyGrid(format!(
            "m={}..={}, n={}..={}",
            config.m_min, config.m_max, config.n_min, config.n_max
        )));
    }

    // Resolve the partition bound rule once, before spawning workers.
    let partition_bounds: Option<Vec<Count>> = match &config.mode {
        SweepMode::Partitions { set, s_max } => {
            let s_max = s_max.unwrap_or_else(|| (set.len_up_to(config.m_max) as u64).min(64)).max(2);
            for &n in &n_values {
                if fibonacci_bound_for(set, n, s_max).is_none() {
                    return Err(Error::NoBound {
                        set: set.to_string(),
                        s_max,
                    });
                }
            }
            Some(
                n_values
                    .iter()
                    .map(|&n| fibonacci_bound_for(set, n, s_max).expect("checked above"))
                    .collect(),
            )
        }
        SweepMode::Cohomology { .. } => None,
    };

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .expect("worker pool");

    let chunk_size = m_values.len().div_ceil(config.jobs * 4).max(1);
    let mode = &config.mode;
    let n_values_ref = &n_values;
    let partition_bounds_ref = partition_bounds.as_ref();

    let chunks: Vec<Vec<BoundVerdict>> = pool.install(|| {
        use rayon::prelude::*;
        m_values
            .par_chunks(chunk_size)
            .map(|ms| sweep_chunk(mode, ms, n_values_ref, partition_bounds_ref))
            .collect()
    });

    let rows: Vec<BoundVerdict> = chunks.into_iter().flatten().collect();
    let notes = match &config.mode {
        SweepMode::Cohomology {
            include_odd_m: true,
            ..
        } => vec![
            "odd weights counted with the no-integral-target convention (value 0)".to_string(),
        ],
        _ => Vec::new(),
    };
    let summary = summarize(&rows, notes);
    Ok(SweepReport {
        config: config.clone(),
        rows,
        summary,
    })
}

fn sweep_chunk(
    mode: &SweepMode,
    ms: &[u64],
    ns: &[u64],
    partition_bounds: Option<&Vec<Count>>,
) -> Vec<BoundVerdict> {
    match mode {
        SweepMode::Partitions { set, .. } => {
            let mut counter = PartitionCounter::new(set.clone());
            let descriptor = set.to_string();
            let bounds = partition_bounds.expect("partition bounds resolved before dispatch");
            let mut rows = Vec::with_capacity(ms.len() * ns.len());
            for &m in ms {
                for (idx, &n) in ns.iter().enumerate() {
                    let value = counter.count(m, n).expect("positive m, n by construction");
                    rows.push(BoundVerdict::new(
                        RowKind::Partition,
                        descriptor.clone(),
                        m,
                        n,
                        value,
                        bounds[idx].clone(),
                    ));
                }
            }
            rows
        }
        SweepMode::Cohomology { p, total, .. } => {
            let mut counter = CohomCounter::new(*p).expect("validated at config time");
            let mut rows = Vec::with_capacity(ms.len() * ns.len());
            for &m in ms {
                for &n in ns {
                    rows.push(if *total {
                        total_verdict(&mut counter, m, n)
                    } else {
                        dim_verdict(&mut counter, m, n)
                    });
                }
            }
            rows
        }
    }
}

/// Per-`n` extremal table: the maximum value over the report's rows, the
/// smallest `m` attaining it, and whether it touches the bound.
pub fn find_extremes(rows: &[BoundVerdict]) -> Vec<Extreme> {
    let mut extremes: Vec<Extreme> = Vec::new();
    for row in rows {
        match extremes
            .iter_mut()
            .find(|e| e.kind == row.kind && e.n == row.n)
        {
            Some(entry) => {
                if row.value > entry.max_value {
                    entry.max_value = row.value.clone();
                    entry.max_at_m = row.m;
                    entry.touches_bound = row.sharp;
                }
            }
            None => extremes.push(Extreme {
                kind: row.kind,
                n: row.n,
                max_value: row.value.clone(),
                max_at_m: row.m,
                touches_bound: row.sharp,
            }),
        }
    }
    extremes.sort_by_key(|e| (kind_order(e.kind), e.n));
    extremes
}

fn kind_order(kind: RowKind) -> u8 {
    match kind {
        RowKind::Partition => 0,
        RowKind::Dim => 1,
        RowKind::Total => 2,
    }
}

fn summarize(rows: &[BoundVerdict], notes: Vec<String>) -> Summary {
    Summary {
        per_n: find_extremes(rows),
        sharp_cells: rows.iter().filter(|r| r.sharp).count() as u64,
        violations: rows.iter().filter(|r| !r.holds).cloned().collect(),
        notes,
    }
}

/// Report output format.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

pub const CSV_HEADER: &str = "kind,p_or_set,m,n,value,bound,holds,sharp,slack";

/// Writes the report to `path` in the given format (CSV: one row per cell
/// under the exact header; JSON: `{config, rows, summary}`).
pub fn emit(report: &SweepReport, format: OutputFormat, path: &Path) -> Result<()> {
    let file = File::create(path).map_err(|source| Error::ReportIo {
        path: path.to_path_buf(),
        source,
    })?;
    let mut writer = BufWriter::new(file);
    match format {
        OutputFormat::Csv => write_csv(report, &mut writer)?,
        OutputFormat::Json => write_json(report, &mut writer)?,
    }
    writer.flush().map_err(|source| Error::ReportIo {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(())
}

/// CSV form: header + one `kind,p_or_set,m,n,value,bound,holds,sharp,slack`
/// record per row, integers in decimal, booleans as true/false.
pub fn write_csv<W: Write>(report: &SweepReport, writer: W) -> Result<()> {
    let mut csv_writer = csv::Writer::from_writer(writer);
    csv_writer.write_record(CSV_HEADER.split(','))?;
    for row in &report.rows {
        csv_writer.write_record([
            row.kind.to_string(),
            row.p_or_set.clone(),
            row.m.to_string(),
            row.n.to_string(),
            row.value.to_string(),
            row.bound.to_string(),
            row.holds.to_string(),
            row.sharp.to_string(),
            row.slack.to_string(),
        ])?;
    }
    csv_writer.flush().map_err(csv::Error::from)?;
    Ok(())
}

/// JSON form: `{config, rows, summary}` with the same field names as the CSV
/// columns; counts are decimal strings.
pub fn write_json<W: Write>(report: &SweepReport, writer: W) -> Result<()> {
    serde_json::to_writer_pretty(writer, &JsonReport::from(report))?;
    Ok(())
}

/// Parses rows back out of the CSV form (used by round-trip checks and
/// downstream tooling).
pub fn parse_csv<R: std::io::Read>(reader: R) -> Result<Vec<BoundVerdict>> {
    let mut csv_reader = csv::Reader::from_reader(reader);
    let mut rows = Vec::new();
    for record in csv_reader.records() {
        let record = record?;
        let kind = match &record[0] {
            "partition" => RowKind::Partition,
            "dim" => RowKind::Dim,
            "total" => RowKind::Total,
            other => return Err(Error::EmptyGrid(format!("unknown row kind `{other}`"))),
        };
        let parse_count = |s: &str| s.parse::<Count>().unwrap_or_else(|_| Count::zero());
        rows.push(BoundVerdict {
            kind,
            p_or_set: record[1].to_string(),
            m: record[2].parse().unwrap_or(0),
            n: record[3].parse().unwrap_or(0),
            value: parse_count(&record[4]),
            bound: parse_count(&record[5]),
            holds: &record[6] == "true",
            sharp: &record[7] == "true",
            slack: parse_count(&record[8]),
        });
    }
    Ok(rows)
}

// serde view of the report: counts as decimal strings, config without the
// jobs knob (output bytes must not depend on scheduling)

#[derive(Serialize)]
struct JsonReport {
    config: JsonConfig,
    rows: Vec<JsonRow>,
    summary: JsonSummary,
}

#[derive(Serialize)]
struct JsonConfig {
    mode: &'static str,
    kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    set: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    s_max: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    p: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    include_odd_m: Option<bool>,
    m_min: u64,
    m_max: u64,
    n_min: u64,
    n_max: u64,
}

#[derive(Serialize)]
struct JsonRow {
    kind: String,
    p_or_set: String,
    m: u64,
    n: u64,
    value: String,
    bound: String,
    holds: bool,
    sharp: bool,
    slack: String,
}

#[derive(Serialize)]
struct JsonSummary {
    per_n: Vec<JsonExtreme>,
    sharp_cells: u64,
    violations: Vec<JsonRow>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    notes: Vec<String>,
}

#[derive(Serialize)]
struct JsonExtreme {
    kind: String,
    n: u64,
    max_value: String,
    max_at_m: u64,
    touches_bound: bool,
}

impl From<&SweepReport> for JsonReport {
    fn from(report: &SweepReport) -> Self {
        let config = match &report.config.mode {
            SweepMode::Partitions { set, s_max } => JsonConfig {
                mode: "partitions",
                kind: RowKind::Partition.to_string(),
                set: Some(set.to_string()),
                s_max: *s_max,
                p: None,
                include_odd_m: None,
                m_min: report.config.m_min,
                m_max: report.config.m_max,
                n_min: report.config.n_min,
                n_max: report.config.n_max,
            },
            SweepMode::Cohomology {
                p,
                total,
                include_odd_m,
            } => JsonConfig {
                mode: "cohomology",
                kind: if *total {
                    RowKind::Total.to_string()
                } else {
                    RowKind::Dim.to_string()
                },
                set: None,
                s_max: None,
                p: Some(*p),
                include_odd_m: Some(*include_odd_m),
                m_min: report.config.m_min,
                m_max: report.config.m_max,
                n_min: report.config.n_min,
                n_max: report.config.n_max,
            },
        };
        JsonReport {
            config,
            rows: report.rows.iter().map(JsonRow::from).collect(),
            summary: JsonSummary {
                per_n: report
                    .summary
                    .per_n
                    .iter()
                    .map(|e| JsonExtreme {
                        kind: e.kind.to_string(),
                        n: e.n,
                        max_value: e.max_value.to_string(),
                        max_at_m: e.max_at_m,
                        touches_bound: e.touches_bound,
                    })
                    .collect(),
                sharp_cells: report.summary.sharp_cells,
                violations: report.summary.violations.iter().map(JsonRow::from).collect(),
                notes: report.summary.notes.clone(),
            },
        }
    }
}

impl From<&BoundVerdict> for JsonRow {
    fn from(row: &BoundVerdict) -> Self {
        JsonRow {
            kind: row.kind.to_string(),
            p_or_set: row.p_or_set.clone(),
            m: row.m,
            n: row.n,
            value: row.value.to_string(),
            bound: row.bound.to_string(),
            holds: row.holds,
            sharp: row.sharp,
            slack: row.slack.to_string(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fib::fib;

    fn c(v: u64) -> Count {
        Count::from(v)
    }

    fn partition_config(desc: &str, m_max: u64, n_max: u64) -> SweepConfig {
        SweepConfig {
            mode: SweepMode::Partitions {
                set: PartSet::parse(desc).unwrap(),
                s_max: None,
            },
            m_min: 1,
            m_max,
            n_min: 1,
            n_max,
            jobs: 1,
        }
    }

    #[test]
    fn binary_partition_sweep_holds() {
        let report = run_sweep(&partition_config("powers:2", 100, 10)).unwrap();
        assert_eq!(report.rows.len(), 100 * 10);
        assert!(!report.has_violations());
        let row = report
            .rows
            .iter()
            .find(|r| r.m == 4 && r.n == 3)
            .unwrap();
        assert_eq!(row.value, c(3));
        assert_eq!(row.bound, c(5)); // F(2*3 - 1)
        let extreme = report
            .summary
            .per_n
            .iter()
            .find(|e| e.n == 3)
            .unwrap();
        assert_eq!(extreme.max_value, c(3));
        assert_eq!(extreme.max_at_m, 4);
        assert!(!extreme.touches_bound);
    }

    #[test]
    fn strict_condition_sets_get_the_tight_bound() {
        let report = run_sweep(&partition_config("powers:5", 50, 8)).unwrap();
        assert!(!report.has_violations());
        for row in &report.rows {
            assert_eq!(row.bound, fib(row.n as i64));
        }
    }

    #[test]
    fn odd_p_cohomology_sweep_has_no_violations() {
        let config = SweepConfig {
            mode: SweepMode::Cohomology {
                p: 3,
                total: false,
                include_odd_m: false,
            },
            m_min: 0,
            m_max: 500,
            n_min: 0,
            n_max: 10,
            jobs: 2,
        };
        let report = run_sweep(&config).unwrap();
        assert_eq!(report.rows.len(), 251 * 11);
        assert!(!report.has_violations());

        // degree 0 peaks at the trivial module and touches F(1)
        let extreme = report.summary.per_n.iter().find(|e| e.n == 0).unwrap();
        assert_eq!(extreme.max_value, c(1));
        assert_eq!(extreme.max_at_m, 0);
        assert!(extreme.touches_bound);
    }

    #[test]
    fn single_cell_cohomology_sweep() {
        let config = SweepConfig {
            mode: SweepMode::Cohomology {
                p: 2,
                total: false,
                include_odd_m: false,
            },
            m_min: 286,
            m_max: 286,
            n_min: 4,
            n_max: 4,
            jobs: 1,
        };
        let report = run_sweep(&config).unwrap();
        assert_eq!(report.rows.len(), 1);
        assert_eq!(report.rows[0].value, c(6));
        assert_eq!(report.rows[0].bound, c(13));
    }

    #[test]
    fn no_bound_is_an_error() {
        let config = SweepConfig {
            mode: SweepMode::Partitions {
                set: PartSet::explicit((1..=20).collect()).unwrap(),
                s_max: Some(10),
            },
            m_min: 1,
            m_max: 20,
            n_min: 1,
            n_max: 4,
            jobs: 1,
        };
        assert!(matches!(run_sweep(&config), Err(Error::NoBound { .. })));
    }

    #[test]
    fn empty_grid_is_an_error() {
        let mut config = partition_config("powers:2", 10, 5);
        config.m_min = 11;
        assert!(matches!(run_sweep(&config), Err(Error::EmptyGrid(_))));
    }

    #[test]
    fn deterministic_across_job_counts() {
        let mut bytes_by_jobs = Vec::new();
        for jobs in [1usize, 4] {
            let mut config = partition_config("powers:3", 60, 8);
            config.jobs = jobs;
            let report = run_sweep(&config).unwrap();
            let mut csv_bytes = Vec::new();
            write_csv(&report, &mut csv_bytes).unwrap();
            let mut json_bytes = Vec::new();
            write_json(&report, &mut json_bytes).unwrap();
            bytes_by_jobs.push((csv_bytes, json_bytes));
        }
        assert_eq!(bytes_by_jobs[0], bytes_by_jobs[1]);
    }

    #[test]
    fn csv_round_trip() {
        let report = run_sweep(&partition_config("powers:2", 20, 5)).unwrap();
        let mut bytes = Vec::new();
        write_csv(&report, &mut bytes).unwrap();
        let text = String::from_utf8(bytes.clone()).unwrap();
        assert!(text.starts_with(CSV_HEADER));
        let parsed = parse_csv(bytes.as_slice()).unwrap();
        assert_eq!(parsed, report.rows);
    }

    #[test]
    fn csv_quotes_descriptors_with_commas() {
        let config = SweepConfig {
            mode: SweepMode::Partitions {
                set: PartSet::parse("list:1,10,100").unwrap(),
                s_max: None,
            },
            m_min: 1,
            m_max: 5,
            n_min: 1,
            n_max: 2,
            jobs: 1,
        };
        let report = run_sweep(&config).unwrap();
        let mut bytes = Vec::new();
        write_csv(&report, &mut bytes).unwrap();
        let parsed = parse_csv(bytes.as_slice()).unwrap();
        assert_eq!(parsed, report.rows);
        assert_eq!(parsed[0].p_or_set, "list:1,10,100");
    }

    #[test]
    fn forced_violation_is_listed() {
        let rows = vec![
            BoundVerdict::new(RowKind::Partition, "powers:2".into(), 3, 2, c(2), c(5)),
            BoundVerdict::new(RowKind::Partition, "powers:2".into(), 4, 2, c(9), c(5)),
        ];
        let summary = summarize(&rows, Vec::new());
        assert_eq!(summary.violations.len(), 1);
        assert_eq!(summary.violations[0].m, 4);
        assert!(!summary.violations[0].holds);
        assert_eq!(summary.violations[0].slack, c(0));
    }

    #[test]
    fn clean_report_has_empty_violations() {
        let report = run_sweep(&partition_config("powers:2", 30, 6)).unwrap();
        assert!(report.summary.violations.is_empty());
        let mut bytes = Vec::new();
        write_json(&report, &mut bytes).unwrap();
        let json: serde_json::Value = serde_json::from_slice(&bytes).unwrap();
        assert_eq!(json["summary"]["violations"].as_array().unwrap().len(), 0);
        assert_eq!(json["config"]["mode"], "partitions");
        assert_eq!(json["rows"][0]["value"], "1");
    }

    #[test]
    fn row_fields_are_mutually_consistent() {
        let report = run_sweep(&partition_config("powers:4", 80, 10)).unwrap();
        for row in &report.rows {
            assert_eq!(row.holds, row.value <= row.bound);
            assert_eq!(row.sharp, row.value == row.bound);
            if row.holds {
                assert_eq!(&row.value + &row.slack, row.bound);
            }
        }
    }

    #[test]
    fn odd_weight_rows_are_zero_and_noted() {
        let config = SweepConfig {
            mode: SweepMode::Cohomology {
                p: 3,
                total: false,
                include_odd_m: true,
            },
            m_min: 0,
            m_max: 9,
            n_min: 2,
            n_max: 2,
            jobs: 1,
        };
        let report = run_sweep(&config).unwrap();
        assert_eq!(report.rows.len(), 10);
        for row in report.rows.iter().filter(|r| r.m % 2 == 1) {
            assert_eq!(row.value, c(0));
        }
        assert_eq!(report.summary.notes.len(), 1);
    }
}
