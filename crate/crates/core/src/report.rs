//! Verdict rows shared by the bound-verification grid and the sweep reports.

use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use crate::Count;

/// What a row's value measures.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RowKind {
    /// `P(m, n, A)` against its Fibonacci bound.
    Partition,
    /// `dim H^n(SL2, V(m))` against `F(n+1)` (odd p) or `F(2n-1)` (p = 2).
    Dim,
    /// Total dimension up to degree `n` against `F(n+2)` or `F(2n)`.
    Total,
}

impl fmt::Display for RowKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RowKind::Partition => write!(f, "partition"),
            RowKind::Dim => write!(f, "dim"),
            RowKind::Total => write!(f, "total"),
        }
    }
}

/// One computed value compared against its bound.
///
/// Invariants: `holds == (value <= bound)`, `sharp == (value == bound)`,
/// and `slack == bound - value` when the bound holds (zero otherwise; the
/// violation magnitude stays recoverable from `value` and `bound`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundVerdict {
    pub kind: RowKind,
    /// Prime `p` (cohomology rows) or set descriptor (partition rows).
    pub p_or_set: String,
    pub m: u64,
    pub n: u64,
    pub value: Count,
    pub bound: Count,
    pub holds: bool,
    pub sharp: bool,
    pub slack: Count,
}

impl BoundVerdict {
    pub fn new(kind: RowKind, p_or_set: String, m: u64, n: u64, value: Count, bound: Count) -> Self {
        let holds = value <= bound;
        let sharp = value == bound;
        let slack = if holds {
            &bound - &value
        } else {
            Count::zero()
        };
        Self {
            kind,
            p_or_set,
            m,
            n,
            value,
            bound,
            holds,
            sharp,
            slack,
        }
    }
}
