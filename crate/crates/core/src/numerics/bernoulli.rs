//! Exact Bernoulli numbers from the defining recurrence, memoized process-wide.

use std::sync::{OnceLock, RwLock};

use rug::{Integer, Rational};

static TABLE: OnceLock<RwLock<Vec<Rational>>> = OnceLock::new();

fn table() -> &'static RwLock<Vec<Rational>> {
    TABLE.get_or_init(|| RwLock::new(vec![Rational::from(1)]))
}

/// Exact `B_k` with the convention `B_1 = -1/2`.
pub fn bernoulli(k: usize) -> Rational {
    if k == 1 {
        return Rational::from((-1, 2));
    }
    if k % 2 == 1 {
        return Rational::new();
    }
    {
        let guard = table().read().unwrap_or_else(|e| e.into_inner());
        if let Some(b) = guard.get(k) {
            return b.clone();
        }
    }
    let mut guard = table().write().unwrap_or_else(|e| e.into_inner());
    extend(&mut guard, k);
    guard[k].clone()
}

/// Grow the table to index `k` using `Σ_{j=0}^{m} C(m+1, j) B_j = 0`.
fn extend(table: &mut Vec<Rational>, k: usize) {
    while table.len() <= k {
        let m = table.len();
        let b = if m == 1 {
            Rational::from((-1, 2))
        } else if m % 2 == 1 {
            Rational::new()
        } else {
            let mut sum = Rational::new();
            let mut binom = Integer::from(1);
            for (j, bj) in table.iter().enumerate().take(m) {
                if *bj != 0 {
                    sum += Rational::from(bj * &binom);
                }
                // C(m+1, j+1) = C(m+1, j)·(m+1-j)/(j+1)
                binom *= (m + 1 - j) as u64;
                binom /= (j + 1) as u64;
            }
            -sum / Rational::from(m as u64 + 1)
        };
        table.push(b);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Akiyama–Tanigawa, an algorithm independent of the recurrence above.
    /// It yields the `B_1 = +1/2` convention.
    fn akiyama_tanigawa(n: usize) -> Rational {
        let mut a: Vec<Rational> = Vec::with_capacity(n + 1);
        for m in 0..=n {
            a.push(Rational::from((1, m as u64 + 1)));
            for j in (1..=m).rev() {
                let d = Rational::from(&a[j - 1] - &a[j]);
                a[j - 1] = d * Rational::from(j as u64);
            }
        }
        a[0].clone()
    }

    #[test]
    fn small_values() {
        assert_eq!(bernoulli(0), 1);
        assert_eq!(bernoulli(1), Rational::from((-1, 2)));
        assert_eq!(bernoulli(2), Rational::from((1, 6)));
        assert_eq!(bernoulli(4), Rational::from((-1, 30)));
        assert_eq!(bernoulli(12), Rational::from((-691, 2730)));
    }

    #[test]
    fn matches_independent_algorithm() {
        for n in (0..=40).step_by(2) {
            assert_eq!(bernoulli(n), akiyama_tanigawa(n), "B_{n}");
        }
    }

    #[test]
    fn odd_indices_vanish() {
        for k in 1..60 {
            assert_eq!(bernoulli(2 * k + 1), 0);
        }
    }

    #[test]
    fn concurrent_access_is_consistent() {
        let handles: Vec<_> = (0..8)
            .map(|t| std::thread::spawn(move || bernoulli(60 + 2 * t)))
            .collect();
        for (t, h) in handles.into_iter().enumerate() {
            assert_eq!(h.join().unwrap(), akiyama_tanigawa(60 + 2 * t));
        }
    }
}
