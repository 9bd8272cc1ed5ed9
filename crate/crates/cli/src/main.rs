//! Command-line surface for the counting library: exact counts, condition
//! checks, cohomology dimensions, grid sweeps and the verification suites.
//!
//! Exit codes: 0 success and all bounds hold; 1 usage or config error;
//! 2 bound violation detected; 3 oracle mismatch.

mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use weylpart::{
    check_condition, count_at_most_naive_bounded, fib, run_sweep, CohomCounter, CohomParams,
    Condition, OutputFormat, PartSet, PartitionCountQuery, PartitionCounter, SweepConfig,
    SweepMode, LISTING_CAP,
};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_VIOLATION: u8 = 2;
pub const EXIT_MISMATCH: u8 = 3;

#[derive(Parser)]
#[command(
    name = "weylpart",
    about = "Exact restricted-partition and SL2 Weyl-module cohomology counts with Fibonacci bound verification",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the i-th Fibonacci number (F(i) = 0 for i <= 0, F(1) = F(2) = 1).
    Fib {
        /// Index, may be negative.
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
    },
    /// Count partitions of m into at most n parts from a set.
    Count {
        /// Number being partitioned (>= 1).
        #[arg(long)]
        m: u64,
        /// Maximum number of parts (>= 1).
        #[arg(long)]
        n: u64,
        /// Set descriptor: `powers:<q>` | `list:<a1>,<a2>,...` | `file:<path>`.
        #[arg(long)]
        set: String,
        /// Also run the brute-force enumeration oracle and print its count.
        #[arg(long)]
        oracle: bool,
        /// Feasibility cap on m for the oracle.
        #[arg(long, default_value_t = weylpart::NAIVE_DEFAULT_BOUND)]
        naive_bound: u64,
    },
    /// Check a growth condition on a part set over the prefix s <= s_max.
    CheckSet {
        #[arg(long)]
        set: String,
        /// star: sum 2j*a_{s-j} < a_s (grants F(n));
        /// c23: sum j*a_{s-j} < a_{s+1} (grants F(2n-1)).
        #[arg(long)]
        condition: ConditionArg,
        #[arg(long, default_value_t = 20)]
        s_max: u64,
    },
    /// Dimension of H^n(SL2, V(m)) in characteristic p (or the total
    /// dimension up to degree n with --total).
    Cohom {
        /// Prime characteristic.
        #[arg(long)]
        p: u64,
        /// Highest weight of the Weyl module.
        #[arg(long)]
        m: u64,
        /// Cohomological degree.
        #[arg(long)]
        n: u64,
        /// Sum the dimensions over degrees 0..=n.
        #[arg(long)]
        total: bool,
        /// Also print every solution vector as a JSON array (suppressed when
        /// the count exceeds the listing cap).
        #[arg(long, conflicts_with = "total")]
        list_solutions: bool,
        #[arg(long, default_value_t = LISTING_CAP)]
        listing_cap: u64,
    },
    /// Sweep a grid and write a CSV/JSON bound-verification report.
    Sweep {
        #[command(subcommand)]
        target: SweepTarget,
    },
    /// Run the verification suites and print one line per check.
    Verify {
        #[arg(long)]
        suite: SuiteArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ConditionArg {
    Star,
    C23,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum SuiteArg {
    Partitions,
    Cohom,
    Lemma,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Args)]
struct GridArgs {
    #[arg(long, default_value_t = 0)]
    m_min: u64,
    #[arg(long)]
    m_max: u64,
    #[arg(long, default_value_t = 0)]
    n_min: u64,
    #[arg(long)]
    n_max: u64,
    /// Report destination.
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    format: FormatArg,
    /// Worker count (affects scheduling only, never the report bytes).
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Subcommand)]
enum SweepTarget {
    /// Partition counts against their condition-selected bound.
    Partitions {
        #[arg(long)]
        set: String,
        /// Prefix length for the growth-condition check (default: number of
        /// parts <= m_max, capped at 64).
        #[arg(long)]
        s_max: Option<u64>,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Cohomology dimensions (or totals) against their Fibonacci bound.
    Cohom {
        #[arg(long)]
        p: u64,
        /// Sweep total dimensions instead of per-degree dimensions.
        #[arg(long)]
        total: bool,
        /// Emit rows for odd weights too (identically zero by convention).
        #[arg(long)]
        include_odd_m: bool,
        #[command(flatten)]
        grid: GridArgs,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // help/version requests arrive as "errors" but are successes
            if err.use_stderr() {
                eprint!("{err}");
                return ExitCode::from(EXIT_USAGE);
            }
            print!("{err}");
            return ExitCode::from(EXIT_OK);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn run(cli: Cli) -> weylpart::Result<u8> {
    match cli.command {
        Command::Fib { n } => {
            println!("{}", fib(n));
            Ok(EXIT_OK)
        }
        Command::Count {
            m,
            n,
            set,
            oracle,
            naive_bound,
        } => {
            let set = PartSet::parse(&set)?;
            let query = PartitionCountQuery::new(m, n, set.clone())?;
            let count = PartitionCounter::new(set).count(m, n)?;
            println!("{count}");
            if oracle {
                let oracle_count = count_at_most_naive_bounded(&query, naive_bound)?;
                println!("{oracle_count}");
                if oracle_count != count {
                    eprintln!(
                        "oracle mismatch at m={m}, n={n}: counter={count}, oracle={oracle_count}"
                    );
                    return Ok(EXIT_MISMATCH);
                }
            }
            Ok(EXIT_OK)
        }
        Command::CheckSet {
            set,
            condition,
            s_max,
        } => {
            let set = PartSet::parse(&set)?;
            let condition = match condition {
                ConditionArg::Star => Condition::Star,
                ConditionArg::C23 => Condition::C23,
            };
            let report = check_condition(&set, condition, s_max)?;
            println!("set={set} {report}");
            Ok(EXIT_OK)
        }
        Command::Cohom {
            p,
            m,
            n,
            total,
            list_solutions,
            listing_cap,
        } => {
            let params = CohomParams::new(p, m, n)?;
            let mut counter = CohomCounter::new(params.p())?;
            if m % 2 != 0 {
                eprintln!(
                    "note: odd highest weight m={m}: the counted system has no solutions; value is 0 by convention"
                );
            }
            if total {
                println!("{}", counter.total(m, n));
            } else {
                println!("{}", counter.dim(m, n));
                if list_solutions {
                    match counter.solutions(m, n, listing_cap) {
                        Some(solutions) => {
                            println!("{}", serde_json::to_string(&solutions)?);
                        }
                        None => eprintln!(
                            "note: solution count exceeds the listing cap ({listing_cap}); no listing emitted"
                        ),
                    }
                }
            }
            Ok(EXIT_OK)
        }
        Command::Sweep { target } => {
            let (mode, grid) = match target {
                SweepTarget::Partitions { set, s_max, grid } => (
                    SweepMode::Partitions {
                        set: PartSet::parse(&set)?,
                        s_max,
                    },
                    grid,
                ),
                SweepTarget::Cohom {
                    p,
                    total,
                    include_odd_m,
                    grid,
                } => {
                    CohomParams::new(p, 0, 0)?;
                    (
                        SweepMode::Cohomology {
                            p,
                            total,
                            include_odd_m,
                        },
                        grid,
                    )
                }
            };
            let config = SweepConfig {
                mode,
                m_min: grid.m_min,
                m_max: grid.m_max,
                n_min: grid.n_min,
                n_max: grid.n_max,
                jobs: grid.jobs,
            };
            let report = run_sweep(&config)?;
            let format = match grid.format {
                FormatArg::Csv => OutputFormat::Csv,
                FormatArg::Json => OutputFormat::Json,
            };
            weylpart::sweep::emit(&report, format, &grid.out)?;
            println!(
                "rows={} violations={} sharp_cells={} out={}",
                report.rows.len(),
                report.summary.violations.len(),
                report.summary.sharp_cells,
                grid.out.display()
            );
            for violation in report.summary.violations.iter().take(10) {
                println!(
                    "violation: kind={} {} m={} n={} value={} bound={}",
                    violation.kind,
                    violation.p_or_set,
                    violation.m,
                    violation.n,
                    violation.value,
                    violation.bound
                );
            }
            if report.has_violations() {
                Ok(EXIT_VIOLATION)
            } else {
                Ok(EXIT_OK)
            }
        }
        Command::Verify { suite } => Ok(verify::run_suite(suite)),
    }
}
