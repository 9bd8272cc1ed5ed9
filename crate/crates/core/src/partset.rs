//! Part sets `A = {a_1 < a_2 < ...}` and the growth conditions that decide
//! which Fibonacci bound applies to `P(m, n, A)`.
//!
//! A set is described by one of three descriptors (the grammar is shared by
//! the CLI and the sweep config):
//!
//! - `powers:<q>` — all powers of `q` starting at `q^0 = 1`, for `q >= 2`;
//! - `list:<a1>,<a2>,...` — an explicit finite list;
//! - `file:<path>` — ASCII decimal, one integer per line.
//!
//! Explicit and file-backed sets must be strictly increasing and positive;
//! violations are load-time errors.

use std::fmt;
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::Count;

#[derive(Clone, Debug, PartialEq, Eq)]
enum SetKind {
    Powers(u64),
    Explicit(Vec<u64>),
    File { path: String, parts: Vec<u64> },
}

/// A strictly increasing set of positive integer parts, generated on demand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartSet {
    kind: SetKind,
}

impl PartSet {
    /// Parses a set descriptor (`powers:<q>` | `list:...` | `file:<path>`).
    /// File-backed sets are read and validated here.
    pub fn parse(descriptor: &str) -> Result<Self> {
        match descriptor.split_once(':') {
            Some(("powers", q)) => {
                let q: u64 = q
                    .trim()
                    .parse()
                    .map_err(|_| Error::BadDescriptor(descriptor.to_string()))?;
                Self::powers(q)
            }
            Some(("list", items)) => {
                let parts = items
                    .split(',')
                    .map(|s| {
                        s.trim()
                            .parse::<u64>()
                            .map_err(|_| Error::BadDescriptor(descriptor.to_string()))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Self::explicit(parts)
            }
            Some(("file", path)) => Self::from_file(path),
            _ => Err(Error::BadDescriptor(descriptor.to_string())),
        }
    }

    /// The set `{q^i : i >= 0}` for `q >= 2`.
    pub fn powers(q: u64) -> Result<Self> {
        if q < 2 {
            return Err(Error::BadPowersBase(q));
        }
        Ok(Self {
            kind: SetKind::Powers(q),
        })
    }

    /// An explicit list; must be nonempty, positive, strictly increasing.
    pub fn explicit(parts: Vec<u64>) -> Result<Self> {
        validate_parts(&parts)?;
        Ok(Self {
            kind: SetKind::Explicit(parts),
        })
    }

    /// Loads one integer per line from `path`.
    pub fn from_file<P: AsRef<Path>>(path: P) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| Error::SetFile {
            path: path.to_path_buf(),
            source,
        })?;
        let mut parts = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let value: u64 = line.parse().map_err(|_| Error::BadPart {
                entry: line.to_string(),
                line: idx + 1,
            })?;
            if value == 0 || parts.last().is_some_and(|&prev| value <= prev) {
                return Err(Error::BadPart {
                    entry: line.to_string(),
                    line: idx + 1,
                });
            }
            parts.push(value);
        }
        if parts.is_empty() {
            return Err(Error::EmptySet);
        }
        Ok(Self {
            kind: SetKind::File {
                path: path.display().to_string(),
                parts,
            },
        })
    }

    /// All elements that are `<= bound`, in increasing order.
    pub fn parts_up_to(&self, bound: u64) -> Vec<u64> {
        match &self.kind {
            SetKind::Powers(q) => {
                let mut parts = Vec::new();
                let mut power = 1u64;
                while power <= bound {
                    parts.push(power);
                    match power.checked_mul(*q) {
                        Some(next) => power = next,
                        None => break,
                    }
                }
                parts
            }
            SetKind::Explicit(parts) | SetKind::File { parts, .. } => {
                parts.iter().copied().take_while(|&a| a <= bound).collect()
            }
        }
    }

    /// The first `count` elements `a_1, ..., a_count`; fewer if the set
    /// exhausts first (finite lists, or powers exceeding the u64 range).
    pub fn first_parts(&self, count: usize) -> Vec<u64> {
        match &self.kind {
            SetKind::Powers(q) => {
                let mut parts = Vec::with_capacity(count);
                let mut power = 1u64;
                for _ in 0..count {
                    parts.push(power);
                    match power.checked_mul(*q) {
                        Some(next) => power = next,
                        None => break,
                    }
                }
                parts
            }
            SetKind::Explicit(parts) | SetKind::File { parts, .. } => {
                parts.iter().copied().take(count).collect()
            }
        }
    }

    /// Number of elements `<= bound`.
    pub fn len_up_to(&self, bound: u64) -> usize {
        self.parts_up_to(bound).len()
    }

    /// Membership test.
    pub fn contains(&self, value: u64) -> bool {
        self.parts_up_to(value).last() == Some(&value)
    }
}

fn validate_parts(parts: &[u64]) -> Result<()> {
    if parts.is_empty() {
        return Err(Error::EmptySet);
    }
    for (idx, window) in parts.windows(2).enumerate() {
        if window[1] <= window[0] {
            return Err(Error::BadPart {
                entry: window[1].to_string(),
                line: idx + 2,
            });
        }
    }
    if parts[0] == 0 {
        return Err(Error::BadPart {
            entry: "0".to_string(),
            line: 1,
        });
    }
    Ok(())
}

impl fmt::Display for PartSet {
    /// Canonical descriptor form, suitable for re-parsing.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            SetKind::Powers(q) => write!(f, "powers:{q}"),
            SetKind::Explicit(parts) => {
                write!(f, "list:")?;
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{p}")?;
                }
                Ok(())
            }
            SetKind::File { path, .. } => write!(f, "file:{path}"),
        }
    }
}

/// Which growth condition to check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Condition {
    /// `sum_{j=1}^{s-1} 2j * a_{s-j} < a_s` for all `s >= 2`; grants the
    /// bound `P(m, n, A) <= F(n)`.
    Star,
    /// `sum_{j=1}^{s-1} j * a_{s-j} < a_{s+1}` for all `s >= 2`; weaker, and
    /// grants `P(m, n, A) <= F(2n-1)`.
    C23,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Condition::Star => write!(f, "star"),
            Condition::C23 => write!(f, "c23"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConditionOutcome {
    Pass,
    /// First index where the strict inequality fails, with both sides
    /// (`lhs >= rhs` at that index).
    Fail { at_s: u64, lhs: Count, rhs: Count },
}

/// Result of verifying a growth condition over the prefix `2 <= s <= s_checked`.
///
/// `s_checked` may fall short of the requested `s_max` when the set exhausts
/// first; the verdict then covers only the available prefix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionReport {
    pub condition: Condition,
    pub s_checked: u64,
    pub outcome: ConditionOutcome,
}

impl ConditionReport {
    pub fn passed(&self) -> bool {
        self.outcome == ConditionOutcome::Pass
    }
}

impl fmt::Display for ConditionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "condition={} s_checked={} outcome=",
            self.condition, self.s_checked
        )?;
        match &self.outcome {
            ConditionOutcome::Pass => write!(f, "pass"),
            ConditionOutcome::Fail { at_s, lhs, rhs } => {
                write!(f, "fail at_s={at_s} lhs={lhs} rhs={rhs}")
            }
        }
    }
}

/// Verifies `sum_{j=1}^{s-1} 2j * a_{s-j} < a_s` for `2 <= s <= s_max`,
/// reporting the first failing index with both side values.
pub fn check_condition_star(set: &PartSet, s_max: u64) -> Result<ConditionReport> {
    if s_max < 2 {
        return Err(Error::BadSMax(s_max));
    }
    let parts = set.first_parts(s_max as usize);
    let s_checked = parts.len() as u64;
    Ok(ConditionReport {
        condition: Condition::Star,
        s_checked,
        outcome: scan_condition(&parts, s_checked, |parts, s| {
            // lhs = 2*a_{s-1} + 4*a_{s-2} + ... + 2(s-1)*a_1, rhs = a_s
            let lhs = weighted_prefix_sum(parts, s, 2);
            (lhs, Count::from(parts[s as usize - 1]))
        }),
    })
}

/// Verifies `sum_{j=1}^{s-1} j * a_{s-j} < a_{s+1}` for `2 <= s <= s_max`.
pub fn check_condition_23(set: &PartSet, s_max: u64) -> Result<ConditionReport> {
    if s_max < 2 {
        return Err(Error::BadSMax(s_max));
    }
    // Index s needs a_{s+1}, so one extra element.
    let parts = set.first_parts(s_max as usize + 1);
    let s_checked = (parts.len() as u64).saturating_sub(1);
    Ok(ConditionReport {
        condition: Condition::C23,
        s_checked,
        outcome: scan_condition(&parts, s_checked, |parts, s| {
            let lhs = weighted_prefix_sum(parts, s, 1);
            (lhs, Count::from(parts[s as usize]))
        }),
    })
}

/// Dispatches on [`Condition`].
pub fn check_condition(set: &PartSet, condition: Condition, s_max: u64) -> Result<ConditionReport> {
    match condition {
        Condition::Star => check_condition_star(set, s_max),
        Condition::C23 => check_condition_23(set, s_max),
    }
}

/// `sum_{j=1}^{s-1} (scale * j) * a_{s-j}` in exact arithmetic.
fn weighted_prefix_sum(parts: &[u64], s: u64, scale: u64) -> Count {
    (1..s)
        .map(|j| Count::from(scale * j) * Count::from(parts[(s - j) as usize - 1]))
        .sum()
}

fn scan_condition(
    parts: &[u64],
    s_checked: u64,
    sides: impl Fn(&[u64], u64) -> (Count, Count),
) -> ConditionOutcome {
    for s in 2..=s_checked {
        let (lhs, rhs) = sides(parts, s);
        if lhs >= rhs {
            return ConditionOutcome::Fail { at_s: s, lhs, rhs };
        }
    }
    ConditionOutcome::Pass
}
