//! Fibonacci numbers on the extended index domain used by every bound in this
//! crate, plus the summation identities the bound proofs rest on.
//!
//! Convention: `F(i) = 0` for all `i <= 0`, `F(1) = F(2) = 1`, and
//! `F(i) = F(i-1) + F(i-2)` for `i > 2`. Negative indices are legal inputs.

use std::sync::{Mutex, OnceLock};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::Count;

// Memo over positive indices; grows on demand, shared by all callers.
static MEMO: OnceLock<Mutex<Vec<Count>>> = OnceLock::new();

/// The `i`-th Fibonacci number. Memoized; repeated calls are O(1).
pub fn fib(i: i64) -> Count {
    if i <= 0 {
        return Count::zero();
    }
    let memo = MEMO.get_or_init(|| Mutex::new(vec![Count::zero(), Count::from(1u8), Count::from(1u8)]));
    let mut table = memo.lock().expect("fib memo poisoned");
    let idx = i as usize;
    while table.len() <= idx {
        let next = &table[table.len() - 1] + &table[table.len() - 2];
        table.push(next);
    }
    table[idx].clone()
}

/// Verdict for the summation identities at one index `n`:
/// the odd-index sum `sum_{i=0}^{n} F(2i+1) = F(2n+2)`, the even-index sum
/// `sum_{i=0}^{n} F(2i) = F(2n+1) - 1`, and the stepped-sum consequence
/// `sum_{i=0}^{floor(n/2)} F(n-2i) <= F(n+1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityVerdict {
    pub n: u64,
    pub odd_sum_holds: bool,
    pub even_sum_holds: bool,
    pub stepped_sum_holds: bool,
}

impl IdentityVerdict {
    pub fn all_hold(&self) -> bool {
        self.odd_sum_holds && self.even_sum_holds && self.stepped_sum_holds
    }
}

/// Checks the three identities exactly for every `1 <= n <= n_max`.
pub fn check_identities(n_max: u64) -> Result<Vec<IdentityVerdict>> {
    if n_max < 1 {
        return Err(Error::BadIdentityRange);
    }
    let mut verdicts = Vec::with_capacity(n_max as usize);
    for n in 1..=n_max {
        let n_i = n as i64;

        let odd_sum: Count = (0..=n_i).map(|i| fib(2 * i + 1)).sum();
        let even_sum: Count = (0..=n_i).map(|i| fib(2 * i)).sum();
        let stepped_sum: Count = (0..=n_i / 2).map(|i| fib(n_i - 2 * i)).sum();

        verdicts.push(IdentityVerdict {
            n,
            odd_sum_holds: odd_sum == fib(2 * n_i + 2),
            even_sum_holds: even_sum + 1u8 == fib(2 * n_i + 1),
            stepped_sum_holds: stepped_sum <= fib(n_i + 1),
        });
    }
    Ok(verdicts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(v: u64) -> Count {
        Count::from(v)
    }

    #[test]
    fn base_cases_and_convention() {
        assert_eq!(fib(1), c(1));
        assert_eq!(fib(2), c(1));
        assert_eq!(fib(0), c(0));
        assert_eq!(fib(-5), c(0));
        assert_eq!(fib(i64::MIN + 1), c(0));
    }

    #[test]
    fn tenth_value() {
        assert_eq!(fib(10), c(55));
    }

    #[test]
    fn recurrence_holds_from_two() {
        for n in 2..=64i64 {
            assert_eq!(fib(n), fib(n - 1) + fib(n - 2), "recurrence at n={n}");
        }
    }

    #[test]
    fn strictly_increasing_from_two() {
        for i in 2..=64i64 {
            assert!(fib(i + 1) > fib(i), "not increasing at i={i}");
        }
    }

    #[test]
    fn identity_example_n2() {
        // 1 + 2 + 5 = 8 = F(6) and 0 + 1 + 3 = 4 = F(5) - 1
        let verdicts = check_identities(2).unwrap();
        assert!(verdicts.iter().all(IdentityVerdict::all_hold));
        assert_eq!(fib(6), c(8));
        assert_eq!(fib(5), c(5));
    }

    #[test]
    fn identities_hold_to_thirty() {
        let verdicts = check_identities(30).unwrap();
        assert_eq!(verdicts.len(), 30);
        for v in &verdicts {
            assert!(v.all_hold(), "identity failed at n={}", v.n);
        }
    }

    #[test]
    fn stepped_sum_is_tight_for_odd_indices() {
        // the two equalities force the stepped sum to F(n+1) exactly for odd
        // n and F(n+1) - 1 for even n
        for n in 1..=30i64 {
            let stepped: Count = (0..=n / 2).map(|i| fib(n - 2 * i)).sum();
            let expected = if n % 2 == 1 {
                fib(n + 1)
            } else {
                fib(n + 1) - 1u8
            };
            assert_eq!(stepped, expected, "n={n}");
        }
    }

    #[test]
    fn concurrent_readers_see_consistent_values() {
        let handles: Vec<_> = (0..8)
            .map(|t| {
                std::thread::spawn(move || {
                    (1..=200i64)
                        .map(|i| fib(i + (t % 3)))
                        .collect::<Vec<Count>>()
                })
            })
            .collect();
        let results: Vec<Vec<Count>> = handles.into_iter().map(|h| h.join().unwrap()).collect();
        for (t, values) in results.iter().enumerate() {
            for (idx, value) in values.iter().enumerate() {
                let i = idx as i64 + 1 + (t as i64 % 3);
                assert_eq!(*value, fib(i));
            }
        }
    }

    #[test]
    fn rejects_zero_range() {
        assert!(check_identities(0).is_err());
    }
}
