//! Exact enumeration of restricted integer partitions and of solution counts
//! that give the dimensions of `SL2` cohomology with Weyl-module coefficients,
//! together with verification of their Fibonacci upper bounds.
//!
//! The crate is organized around three counting problems:
//!
//! - [`partition`]: `P(m, n, A)`, the number of partitions of `m` into at most
//!   `n` parts drawn from a part set `A` ([`PartSet`]). Two growth conditions
//!   on `A` ([`Condition::Star`], [`Condition::C23`]) select which Fibonacci
//!   bound applies: `F(n)` or `F(2n-1)`.
//! - [`sl2`]: dimensions of `H^n(SL2, V(m))` over a field of characteristic
//!   `p`, computed exactly as solution counts of a weighted digit system in
//!   base `p`, plus total dimensions up to a degree.
//! - [`sweep`]: grid sweeps over `(m, n)` that compare every computed value
//!   against its bound and emit CSV/JSON reports.
//!
//! All counts use arbitrary precision ([`Count`]); every comparison in this
//! crate is exact.

pub mod error;
pub mod fib;
pub mod partition;
pub mod partset;
pub mod report;
pub mod sl2;
pub mod sweep;

/// Arbitrary-precision nonnegative integer used for all counts and
/// Fibonacci values. Arithmetic never overflows.
pub type Count = num_bigint::BigUint;

pub use error::{Error, Result};
pub use fib::{check_identities, fib, IdentityVerdict};
pub use partition::{
    count_at_most, count_at_most_naive, count_at_most_naive_bounded, enumerate_naive,
    fibonacci_bound_for, PartitionCountQuery, PartitionCounter, NAIVE_DEFAULT_BOUND,
};
pub use partset::{
    check_condition, check_condition_23, check_condition_star, Condition, ConditionOutcome,
    ConditionReport, PartSet,
};
pub use report::{BoundVerdict, RowKind};
pub use sl2::{
    count_solutions, count_solutions_naive, strictness_scan, verify_dim_bounds, BudgetMode,
    CohomCounter, CohomParams, SolutionVector, StrictnessReport, LISTING_CAP,
};
pub use sweep::{
    emit, find_extremes, parse_csv, run_sweep, write_csv, write_json, Extreme, OutputFormat,
    Summary, SweepConfig, SweepMode, SweepReport, CSV_HEADER,
};
