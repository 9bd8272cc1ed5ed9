//! Exact dimensions of `H^n(SL2, V(m))` in characteristic `p`, computed as
//! solution counts of weighted digit systems in base `p`.
//!
//! For odd `p`, `dim H^n(SL2, V(m)) = N(m/2 + 1, n + 1)` where `N(t, b)`
//! counts tuples `(a_1..a_r in N, b_1..b_r in {0,1})` with
//!
//! ```text
//! 2*(a_1 + ... + a_r) + (b_1 + ... + b_r) = b        (budget)
//! b_1 + sum_{i=1}^{r-1} (a_i + b_{i+1}) p^i + a_r p^r = t   (target)
//! ```
//!
//! For `p = 2` the count is over `(a_1..a_r in N)` with
//! `a_1 + ... + a_r = n + 1` and `a_1*2 + a_2*2^2 + ... + a_r*2^r = m/2 + 1`
//! (weights start at `2^1`).
//!
//! Slot bound: each `a_i` carries weight `p^i` and each `b_j` weight
//! `p^{j-1}`, so with `r` the least index satisfying `p^r > t` every variable
//! beyond the `r`-slot system has weight `> t` and is forced to zero; the
//! finite system therefore captures every solution of the unbounded one.
//! The counters below walk digit positions from the low end and divide the
//! residual target by `p` at each step, which is the same recursion with the
//! position folded into the scaled residual; the memo key `(residual target,
//! residual budget)` is then shared across queries for the same `p`.

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fib::fib;
use crate::report::{BoundVerdict, RowKind};
use crate::Count;

/// Default cap on how many solution vectors a listing request may return.
pub const LISTING_CAP: u64 = 10_000;

/// Whether the budget equation is an equality or an upper bound
/// (the upper-bound form counts total dimension up to a degree).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BudgetMode {
    Exact,
    AtMost,
}

/// One cohomology computation: characteristic `p` (prime), highest weight
/// `m`, cohomological degree `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CohomParams {
    p: u64,
    m: u64,
    n: u64,
}

impl CohomParams {
    pub fn new(p: u64, m: u64, n: u64) -> Result<Self> {
        if !primal_check::miller_rabin(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Self { p, m, n })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn n(&self) -> u64 {
        self.n
    }
}

/// One explicit solution of the counted system. `a[i]` is the multiplicity
/// of weight `p^(i+1)`; `b[j]` (odd `p` only) is the bit of weight `p^j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolutionVector {
    pub a: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<Vec<u8>>,
}

impl SolutionVector {
    /// The weighted digit sum of this solution (must equal the target).
    pub fn weighted_sum(&self, p: u64) -> Count {
        let mut total = Count::zero();
        let mut weight = Count::from(p);
        for &a in &self.a {
            total += Count::from(a) * &weight;
            weight *= p;
        }
        if let Some(b) = &self.b {
            let mut weight = Count::one();
            for &bit in b {
                total += Count::from(bit) * &weight;
                weight *= p;
            }
        }
        total
    }

    /// The budget this solution consumes: `2*sum(a) + sum(b)` for odd `p`,
    /// `sum(a)` for `p = 2`.
    pub fn budget_used(&self) -> u64 {
        match &self.b {
            Some(b) => 2 * self.a.iter().sum::<u64>() + b.iter().map(|&x| x as u64).sum::<u64>(),
            None => self.a.iter().sum(),
        }
    }
}

/// Memoized solution counter for one characteristic `p`.
///
/// Tables persist across calls, so grid sweeps that share a counter pay for
/// each `(residual target, residual budget)` state once.
pub struct CohomCounter {
    p: u64,
    memo: HashMap<(u64, u64, BudgetMode), Count>,
}

impl CohomCounter {
    pub fn new(p: u64) -> Result<Self> {
        if !primal_check::miller_rabin(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Self {
            p,
            memo: HashMap::new(),
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Number of solutions with the given target and budget. For odd `p`
    /// this is `N(target, budget)` of the two-equation system above; for
    /// `p = 2` it is the count of the weight-`2^i` system.
    pub fn count(&mut self, target: u64, budget: u64, mode: BudgetMode) -> Result<Count> {
        if target < 1 || budget < 1 {
            return Err(Error::BadSystemQuery { target, budget });
        }
        if self.p == 2 {
            // all weights are even, so odd targets are unreachable
            if !target.is_multiple_of(2) {
                return Ok(Count::zero());
            }
            return Ok(self.count_even_char(target / 2, budget, mode));
        }
        // position 0 carries only b_1; the residual must then be divisible by p
        let mut total = Count::zero();
        for b1 in 0..=1u64 {
            if b1 <= budget && b1 <= target && (target - b1).is_multiple_of(self.p) {
                total += self.count_odd_char((target - b1) / self.p, budget - b1, mode);
            }
        }
        Ok(total)
    }

    /// Positions >= 1 of the odd-p system: each position holds `a in N`
    /// (budget cost 2 per unit) and a bit `b` (cost 1), both of the current
    /// weight; `s` is the residual target divided by the current weight.
    fn count_odd_char(&mut self, s: u64, rb: u64, mode: BudgetMode) -> Count {
        if s == 0 {
            return match mode {
                BudgetMode::Exact if rb != 0 => Count::zero(),
                _ => Count::one(),
            };
        }
        if rb == 0 {
            return Count::zero();
        }
        let key = (s, rb, mode);
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        let mut total = Count::zero();
        for b in 0..=1u64 {
            let mut a = 0u64;
            while 2 * a + b <= rb && a + b <= s {
                if (s - a - b).is_multiple_of(self.p) {
                    total += self.count_odd_char((s - a - b) / self.p, rb - 2 * a - b, mode);
                }
                a += 1;
            }
        }
        self.memo.insert(key, total.clone());
        total
    }

    /// Positions >= 1 of the p=2 system: each position holds `a in N` at
    /// budget cost 1 per unit; `s` is the residual target over the weight.
    fn count_even_char(&mut self, s: u64, rb: u64, mode: BudgetMode) -> Count {
        if s == 0 {
            return match mode {
                BudgetMode::Exact if rb != 0 => Count::zero(),
                _ => Count::one(),
            };
        }
        if rb == 0 {
            return Count::zero();
        }
        let key = (s, rb, mode);
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        let mut total = Count::zero();
        let mut a = s % 2; // parity of the residual fixes the parity of a
        while a <= rb.min(s) {
            total += self.count_even_char((s - a) / 2, rb - a, mode);
            a += 2;
        }
        self.memo.insert(key, total.clone());
        total
    }

    /// `dim H^n(SL2, V(m))`. Odd highest weights have no integral target
    /// `m/2 + 1`, so the counted system has no solutions and the dimension
    /// is 0 under the adopted convention.
    pub fn dim(&mut self, m: u64, n: u64) -> Count {
        if !m.is_multiple_of(2) {
            return Count::zero();
        }
        self.count(m / 2 + 1, n + 1, BudgetMode::Exact)
            .expect("target and budget are positive by construction")
    }

    /// Total dimension up to degree `n`, i.e. `sum_{i=0..=n} dim H^i`.
    ///
    /// Computed two ways — by summing per-degree dimensions and by counting
    /// the budget-inequality system directly — and checked for agreement.
    pub fn total(&mut self, m: u64, n: u64) -> Count {
        if !m.is_multiple_of(2) {
            return Count::zero();
        }
        let by_sum: Count = (0..=n).map(|i| self.dim(m, i)).sum();
        let direct = self
            .count(m / 2 + 1, n + 1, BudgetMode::AtMost)
            .expect("target and budget are positive by construction");
        assert_eq!(
            by_sum, direct,
            "total-dimension routes disagree at p={}, m={m}, n={n}",
            self.p
        );
        direct
    }

    /// Every solution vector behind `dim(m, n)`, or `None` when the count
    /// exceeds `cap`. Solutions are enumerated by backtracking over slots,
    /// independently of the memoized count, and returned in lexicographic
    /// slot order.
    pub fn solutions(&mut self, m: u64, n: u64, cap: u64) -> Option<Vec<SolutionVector>> {
        let count = self.dim(m, n);
        if count > Count::from(cap) {
            return None;
        }
        if !m.is_multiple_of(2) {
            return Some(Vec::new());
        }
        let target = m / 2 + 1;
        let budget = n + 1;
        let slots = slot_count(self.p, target);
        let mut out = Vec::new();
        if self.p == 2 {
            let mut a = vec![0u64; slots];
            enumerate_even_char(target, budget, 1, slots, &mut a, &mut out);
        } else {
            let mut a = vec![0u64; slots];
            let mut b = vec![0u8; slots];
            enumerate_odd_char(self.p, target, budget, 0, slots, &mut a, &mut b, &mut out);
        }
        debug_assert_eq!(Count::from(out.len()), count);
        Some(out)
    }
}

/// Least `r` with `p^r > target`; the number of `a`-slots needed.
fn slot_count(p: u64, target: u64) -> usize {
    let mut r = 0usize;
    let mut power = 1u64;
    while power <= target {
        r += 1;
        match power.checked_mul(p) {
            Some(next) => power = next,
            None => break,
        }
    }
    r
}

fn pow(p: u64, e: usize) -> Option<u64> {
    let mut out = 1u64;
    for _ in 0..e {
        out = out.checked_mul(p)?;
    }
    Some(out)
}

/// Backtracking enumerator for the odd-p system at position `pos`
/// (position 0 holds only b_1; position i >= 1 holds a_i and b_{i+1}).
#[allow(clippy::too_many_arguments)]
fn enumerate_odd_char(
    p: u64,
    rt: u64,
    rb: u64,
    pos: usize,
    slots: usize,
    a: &mut Vec<u64>,
    b: &mut Vec<u8>,
    out: &mut Vec<SolutionVector>,
) {
    if rt == 0 {
        if rb == 0 {
            out.push(SolutionVector {
                a: a.clone(),
                b: Some(b.clone()),
            });
        }
        return;
    }
    if pos > slots || rb == 0 {
        return;
    }
    let Some(weight) = pow(p, pos) else { return };
    if pos == 0 {
        for bit in 0..=1u64 {
            if bit <= rb && bit <= rt {
                b[0] = bit as u8;
                enumerate_odd_char(p, rt - bit, rb - bit, 1, slots, a, b, out);
                b[0] = 0;
            }
        }
        return;
    }
    // position `pos` carries a_pos (weight p^pos) and, when it exists,
    // b_{pos+1} (same weight, cost 1)
    let has_bit = pos < slots;
    for bit in 0..=u64::from(has_bit) {
        let mut mult = 0u64;
        loop {
            let used = mult + bit;
            let cost = 2 * mult + bit;
            if cost > rb || used.checked_mul(weight).is_none_or(|w| w > rt) {
                break;
            }
            a[pos - 1] = mult;
            if has_bit {
                b[pos] = bit as u8;
            }
            enumerate_odd_char(p, rt - used * weight, rb - cost, pos + 1, slots, a, b, out);
            a[pos - 1] = 0;
            if has_bit {
                b[pos] = 0;
            }
            mult += 1;
        }
    }
}

/// Backtracking enumerator for the p=2 system over slots `pos..=slots`.
fn enumerate_even_char(
    rt: u64,
    rb: u64,
    pos: usize,
    slots: usize,
    a: &mut Vec<u64>,
    out: &mut Vec<SolutionVector>,
) {
    if rt == 0 {
        if rb == 0 {
            out.push(SolutionVector {
                a: a.clone(),
                b: None,
            });
        }
        return;
    }
    if pos > slots || rb == 0 {
        return;
    }
    let Some(weight) = pow(2, pos) else { return };
    let mut mult = 0u64;
    while mult <= rb && mult.checked_mul(weight).is_some_and(|w| w <= rt) {
        a[pos - 1] = mult;
        enumerate_even_char(rt - mult * weight, rb - mult, pos + 1, slots, a, out);
        a[pos - 1] = 0;
        mult += 1;
    }
}

/// `N(target, budget)` for an odd prime `p`, with a fresh memo table.
pub fn count_solutions(p: u64, target: u64, budget: u64) -> Result<Count> {
    if p == 2 || !primal_check::miller_rabin(p) {
        return Err(Error::NotOddPrime(p));
    }
    CohomCounter::new(p)?.count(target, budget, BudgetMode::Exact)
}

/// Exhaustive nested enumeration of the odd-p system, sharing no code with
/// the memoized counter. Feasibility caps: `target <= bound` (default 10^4)
/// and `budget <= 24`.
pub fn count_solutions_naive(p: u64, target: u64, budget: u64) -> Result<Count> {
    count_solutions_naive_bounded(p, target, budget, 10_000)
}

pub fn count_solutions_naive_bounded(p: u64, target: u64, budget: u64, bound: u64) -> Result<Count> {
    if p == 2 || !primal_check::miller_rabin(p) {
        return Err(Error::NotOddPrime(p));
    }
    if target < 1 || budget < 1 {
        return Err(Error::BadSystemQuery { target, budget });
    }
    if target > bound || budget > 24 {
        return Err(Error::SystemNaiveBound {
            target,
            budget,
            bound,
        });
    }
    let slots = slot_count(p, target);
    // weights: b_j at p^{j-1} for j=1..=slots, a_i at p^i for i=1..=slots
    let mut count: u64 = 0;
    let mut a = vec![0u64; slots];
    naive_rec(p, target, budget, 0, slots, &mut a, &mut count);
    Ok(Count::from(count))
}

/// Enumerates bit masks for b over all slots, then multiplicities for a.
fn naive_rec(p: u64, target: u64, budget: u64, slot: usize, slots: usize, a: &mut Vec<u64>, count: &mut u64) {
    // phase 1: walk a-multiplicities slot by slot (weight p^{slot+1})
    if slot == slots {
        // phase 2: all a fixed; try every b bitmask
        let a_weight: u64 = a
            .iter()
            .enumerate()
            .filter(|(_, &mult)| mult > 0)
            .map(|(i, &mult)| mult * pow(p, i + 1).expect("nonzero slots stay in range"))
            .sum();
        let a_cost: u64 = 2 * a.iter().sum::<u64>();
        if a_weight > target || a_cost > budget {
            return;
        }
        for mask in 0u64..(1u64 << slots) {
            let b_cost = mask.count_ones() as u64;
            if a_cost + b_cost != budget {
                continue;
            }
            let mut b_weight = 0u64;
            let mut overflow = false;
            for j in 0..slots {
                if mask >> j & 1 == 1 {
                    match pow(p, j) {
                        Some(w) => b_weight += w,
                        None => {
                            overflow = true;
                            break;
                        }
                    }
                }
            }
            if !overflow && a_weight + b_weight == target {
                *count += 1;
            }
        }
        return;
    }
    let weight = match pow(p, slot + 1) {
        Some(w) => w,
        None => {
            naive_rec(p, target, budget, slots, slots, a, count);
            return;
        }
    };
    let mut mult = 0u64;
    while mult.checked_mul(weight).is_some_and(|w| w <= target) && 2 * mult <= budget {
        a[slot] = mult;
        naive_rec(p, target, budget, slot + 1, slots, a, count);
        a[slot] = 0;
        mult += 1;
    }
}

/// Checks `dim <= F(n+1)` and `total <= F(n+2)` (odd `p`), or
/// `dim <= F(2n-1)` and `total <= F(2n)` (`p = 2`), for every grid cell.
/// Violations are data, not errors.
pub fn verify_dim_bounds(
    p: u64,
    m_values: impl IntoIterator<Item = u64>,
    n_values: impl IntoIterator<Item = u64> + Clone,
) -> Result<Vec<BoundVerdict>> {
    let mut counter = CohomCounter::new(p)?;
    let mut rows = Vec::new();
    for m in m_values {
        for n in n_values.clone() {
            rows.push(dim_verdict(&mut counter, m, n));
            rows.push(total_verdict(&mut counter, m, n));
        }
    }
    Ok(rows)
}

pub(crate) fn dim_bound(p: u64, n: u64) -> Count {
    if p == 2 {
        fib(2 * n as i64 - 1)
    } else {
        fib(n as i64 + 1)
    }
}

pub(crate) fn total_bound(p: u64, n: u64) -> Count {
    if p == 2 {
        fib(2 * n as i64)
    } else {
        fib(n as i64 + 2)
    }
}

pub(crate) fn dim_verdict(counter: &mut CohomCounter, m: u64, n: u64) -> BoundVerdict {
    let p = counter.p();
    let value = counter.dim(m, n);
    BoundVerdict::new(RowKind::Dim, p.to_string(), m, n, value, dim_bound(p, n))
}

pub(crate) fn total_verdict(counter: &mut CohomCounter, m: u64, n: u64) -> BoundVerdict {
    let p = counter.p();
    let value = counter.total(m, n);
    BoundVerdict::new(RowKind::Total, p.to_string(), m, n, value, total_bound(p, n))
}

/// Largest `dim H^n(SL2, V(m))` over even `m <= m_max`, with its margin
/// below the `F(n+1)` bound. The margin is reported, not asserted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrictnessReport {
    pub p: u64,
    pub n: u64,
    pub m_max: u64,
    pub max_dim: Count,
    /// Smallest even `m` attaining the maximum.
    pub attained_at: u64,
    pub bound: Count,
    /// `bound - max_dim` when nonnegative; the flag records strictness.
    pub margin: Count,
    pub strictly_below: bool,
}

impl fmt::Display for StrictnessReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "p={} n={} m_max={} max_dim={} at_m={} bound={} margin={} strictly_below={}",
            self.p, self.n, self.m_max, self.max_dim, self.attained_at, self.bound, self.margin, self.strictly_below
        )
    }
}

/// Scans even `m <= m_max` for the maximal degree-`n` dimension at an odd
/// prime `p` and reports how far below `F(n+1)` it stays.
pub fn strictness_scan(p: u64, n: u64, m_max: u64) -> Result<StrictnessReport> {
    if p == 2 || !primal_check::miller_rabin(p) {
        return Err(Error::NotOddPrime(p));
    }
    let mut counter = CohomCounter::new(p)?;
    let mut max_dim = Count::zero();
    let mut attained_at = 0u64;
    for m in (0..=m_max).step_by(2) {
        let dim = counter.dim(m, n);
        if dim > max_dim {
            max_dim = dim;
            attained_at = m;
        }
    }
    let bound = fib(n as i64 + 1);
    let strictly_below = max_dim < bound;
    let margin = if strictly_below {
        &bound - &max_dim
    } else {
        Count::zero()
    };
    Ok(StrictnessReport {
        p,
        n,
        m_max,
        max_dim,
        attained_at,
        bound,
        margin,
        strictly_below,
    })
}
