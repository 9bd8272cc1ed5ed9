//! Exact counting of `P(m, n, A)`: partitions of `m` into at most `n` parts
//! from a part set `A`, identified with solutions of
//! `x_1*a_1 + ... + x_r*a_r = m`, `x_1 + ... + x_r <= n` where `a_1..a_r` are
//! the elements of `A` not exceeding `m`.
//!
//! Two independent routes are provided: a memoized recursion
//! (`p(m, n, i) = p(m, n, i-1) + p(m - a_i, n-1, i)` with `p(0,..) = 1`) and a
//! brute-force backtracking enumerator used as its oracle. They share no code.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fib::fib;
use crate::partset::{check_condition_23, check_condition_star, PartSet};
use crate::Count;

/// Default cap on `m` for the naive enumeration oracle.
pub const NAIVE_DEFAULT_BOUND: u64 = 200;

/// One counting query: partitions of `m` into at most `n` parts from `set`.
#[derive(Clone, Debug)]
pub struct PartitionCountQuery {
    m: u64,
    n: u64,
    set: PartSet,
}

impl PartitionCountQuery {
    /// Requires `m >= 1` and `n >= 1` (the counted problem is stated on
    /// positive integers; the recursion's internal `p(0,..) = 1` base encodes
    /// the empty partition and is not part of the public domain).
    pub fn new(m: u64, n: u64, set: PartSet) -> Result<Self> {
        if m < 1 || n < 1 {
            return Err(Error::BadQuery { m, n });
        }
        Ok(Self { m, n, set })
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn set(&self) -> &PartSet {
        &self.set
    }
}

/// Memoized counter for one part set.
///
/// The memo key is `(residual m, residual n, part index)`; the table persists
/// across queries on the same counter, so sweeps that share a counter reuse
/// all previously computed states. One-shot callers get a fresh table via
/// [`count_at_most`].
pub struct PartitionCounter {
    set: PartSet,
    memo: HashMap<(u64, u64, usize), Count>,
}

impl PartitionCounter {
    pub fn new(set: PartSet) -> Self {
        Self {
            set,
            memo: HashMap::new(),
        }
    }

    pub fn set(&self) -> &PartSet {
        &self.set
    }

    /// `P(m, n, A)` for this counter's set.
    pub fn count(&mut self, m: u64, n: u64) -> Result<Count> {
        if m < 1 || n < 1 {
            return Err(Error::BadQuery { m, n });
        }
        // parts are >= 1, so at most m of them fit; larger budgets are
        // equivalent and would only bloat the memo
        let n = n.min(m);
        let parts = self.set.parts_up_to(m);
        Ok(self.count_rec(m, n, parts.len(), &parts))
    }

    fn count_rec(&mut self, m: u64, n: u64, i: usize, parts: &[u64]) -> Count {
        if m == 0 {
            return Count::one();
        }
        if i == 0 || n == 0 {
            return Count::zero();
        }
        let key = (m, n, i);
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        // skip part i entirely, or use one more copy of it
        let mut total = self.count_rec(m, n, i - 1, parts);
        let a = parts[i - 1];
        if a <= m {
            total += self.count_rec(m - a, n - 1, i, parts);
        }
        self.memo.insert(key, total.clone());
        total
    }
}

/// `P(m, n, A)` via the memoized recursion, with a fresh memo table.
pub fn count_at_most(query: &PartitionCountQuery) -> Result<Count> {
    PartitionCounter::new(query.set.clone()).count(query.m, query.n)
}

/// Enumerates every partition of `m` into at most `n` nondecreasing parts
/// from the set, by direct backtracking. Independent of the memoized route;
/// kept feasible by the `bound` cap on `m`.
pub fn enumerate_naive(query: &PartitionCountQuery, bound: u64) -> Result<Vec<Vec<u64>>> {
    if query.m > bound {
        return Err(Error::NaiveBound { m: query.m, bound });
    }
    let parts = query.set.parts_up_to(query.m);
    let mut found = Vec::new();
    let mut current = Vec::new();
    backtrack(query.m, query.n, 0, &parts, &mut current, &mut found);
    Ok(found)
}

fn backtrack(
    remaining: u64,
    slots: u64,
    from: usize,
    parts: &[u64],
    current: &mut Vec<u64>,
    found: &mut Vec<Vec<u64>>,
) {
    if remaining == 0 {
        found.push(current.clone());
        return;
    }
    if slots == 0 {
        return;
    }
    for idx in from..parts.len() {
        let a = parts[idx];
        if a > remaining {
            break;
        }
        current.push(a);
        backtrack(remaining - a, slots - 1, idx, parts, current, found);
        current.pop();
    }
}

/// Oracle count with the default feasibility bound on `m`.
pub fn count_at_most_naive(query: &PartitionCountQuery) -> Result<Count> {
    count_at_most_naive_bounded(query, NAIVE_DEFAULT_BOUND)
}

/// Oracle count with an explicit feasibility bound.
pub fn count_at_most_naive_bounded(query: &PartitionCountQuery, bound: u64) -> Result<Count> {
    Ok(Count::from(enumerate_naive(query, bound)?.len()))
}

/// Selects the Fibonacci bound granted by the growth conditions, verified on
/// the prefix `s <= s_max`: `F(n)` if the strict condition passes, else
/// `F(2n-1)` if the relaxed condition passes, else `None`.
///
/// The conditions are sufficient only and are verified on a finite prefix, so
/// callers must treat the answer as prefix-conditional.
pub fn fibonacci_bound_for(set: &PartSet, n: u64, s_max: u64) -> Option<Count> {
    let star = check_condition_star(set, s_max.max(2)).ok()?;
    if star.passed() {
        return Some(fib(n as i64));
    }
    let relaxed = check_condition_23(set, s_max.max(2)).ok()?;
    if relaxed.passed() {
        return Some(fib(2 * n as i64 - 1));
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(m: u64, n: u64, desc: &str) -> PartitionCountQuery {
        PartitionCountQuery::new(m, n, PartSet::parse(desc).unwrap()).unwrap()
    }

    fn c(v: u64) -> Count {
        Count::from(v)
    }

    #[test]
    fn binary_counter_examples() {
        assert_eq!(count_at_most(&q(4, 3, "powers:2")).unwrap(), c(3));
        assert_eq!(count_at_most(&q(5, 5, "powers:2")).unwrap(), c(4));
        assert_eq!(count_at_most(&q(7, 1, "powers:2")).unwrap(), c(0));
        assert_eq!(count_at_most(&q(9, 2, "powers:3")).unwrap(), c(1));
    }

    #[test]
    fn naive_examples() {
        assert_eq!(count_at_most_naive(&q(4, 3, "powers:2")).unwrap(), c(3));
        assert_eq!(count_at_most_naive(&q(5, 4, "powers:2")).unwrap(), c(3));
        assert_eq!(count_at_most_naive(&q(1, 1, "list:2,3")).unwrap(), c(0));
    }

    #[test]
    fn naive_lists_the_binary_partitions_of_five() {
        let partitions = enumerate_naive(&q(5, 5, "powers:2"), 200).unwrap();
        let expected: Vec<Vec<u64>> = vec![
            vec![1, 1, 1, 1, 1],
            vec![1, 1, 1, 2],
            vec![1, 2, 2],
            vec![1, 4],
        ];
        assert_eq!(partitions, expected);
    }

    #[test]
    fn naive_bound_is_enforced() {
        let query = q(201, 3, "powers:2");
        assert!(matches!(
            count_at_most_naive(&query),
            Err(Error::NaiveBound { m: 201, bound: 200 })
        ));
        assert!(count_at_most_naive_bounded(&query, 300).is_ok());
    }

    #[test]
    fn rejects_zero_m_or_n() {
        let set = PartSet::powers(2).unwrap();
        assert!(PartitionCountQuery::new(0, 3, set.clone()).is_err());
        assert!(PartitionCountQuery::new(3, 0, set.clone()).is_err());
        let mut counter = PartitionCounter::new(set);
        assert!(counter.count(0, 1).is_err());
    }

    #[test]
    fn counter_agrees_with_oracle_on_a_small_grid() {
        for desc in ["powers:2", "powers:3", "list:1,4,9,16,25"] {
            let set = PartSet::parse(desc).unwrap();
            let mut counter = PartitionCounter::new(set.clone());
            for m in 1..=40 {
                for n in 1..=6 {
                    let query = PartitionCountQuery::new(m, n, set.clone()).unwrap();
                    assert_eq!(
                        counter.count(m, n).unwrap(),
                        count_at_most_naive(&query).unwrap(),
                        "mismatch at ({desc}, m={m}, n={n})"
                    );
                }
            }
        }
    }

    #[test]
    fn single_part_count_is_membership() {
        let set = PartSet::parse("powers:2").unwrap();
        let mut counter = PartitionCounter::new(set.clone());
        for m in 1..=64 {
            let expected = if set.contains(m) { c(1) } else { c(0) };
            assert_eq!(counter.count(m, 1).unwrap(), expected, "m={m}");
        }
    }

    #[test]
    fn bound_selection() {
        let set = PartSet::powers(5).unwrap();
        assert_eq!(fibonacci_bound_for(&set, 6, 15), Some(c(8)));

        let set = PartSet::powers(2).unwrap();
        assert_eq!(fibonacci_bound_for(&set, 3, 15), Some(c(5)));

        let set = PartSet::explicit((1..=20).collect()).unwrap();
        assert_eq!(fibonacci_bound_for(&set, 4, 10), None);
    }
}
