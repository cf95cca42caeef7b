//! Subsequence counts of the balanced strings `B_{r,k}` (r runs of length k)
//! and `B'_{r,k}` (`B_{r,k}` without its first symbol).
//!
//! `b(r,k,t) = |D_t(B_{r,k})|` is the largest count among `r`-run strings of
//! length `rk`, so `b(r, ceil(n/r), t)` bounds every `r`-run string of length
//! `n` from above.
//!
//! Two independent evaluations are provided: the recursion on `b'`
//!
//! ```text
//! b'(r,t) = 0                                        t < 0 or t >= kr
//!         = 1 + sum_{i=1}^{k-1} b'(r-1, t-i)         k(r-1) <= t < kr
//!         = b'(r-2, t-k) + sum_{i=0}^{k-1} b'(r-1, t-i)   otherwise
//! ```
//!
//! and the closed form obtained by counting the expansion paths of that
//! recursion, which goes through bounded compositions (`p0_count`) and
//! sequences over the step set `{(2,k), (1,0), ..., (1,k-1)}` (`p_count`).
//! In both cases `b(r,t) = b'(r,t) + b'(r-1,t-k)` for `t < rk` and
//! `b(r,rk) = 1`.

use std::collections::HashMap;

use crate::bounds::BinomialTable;
use crate::num::SignedSum;
use crate::{CountNum, Error, Result};

/// Bottom-up table of the `b'` recursion for one `k`.
#[derive(Debug, Clone)]
pub struct BalancedRecursive<C> {
    k: usize,
    /// rows[rho][tau] = b'(rho, tau) for tau < k * rho
    rows: Vec<Vec<C>>,
}

impl<C: CountNum> BalancedRecursive<C> {
    pub fn new(k: usize) -> Self {
        assert!(k >= 1, "run length k must be positive");
        BalancedRecursive { k, rows: vec![Vec::new()] }
    }

    fn at(&self, rho: i64, tau: i64) -> C {
        if rho < 0 || tau < 0 {
            return C::zero();
        }
        self.rows[rho as usize].get(tau as usize).cloned().unwrap_or_else(C::zero)
    }

    fn grow_to(&mut self, r: usize) {
        let k = self.k as i64;
        while self.rows.len() <= r {
            let rho = self.rows.len() as i64;
            let mut row = Vec::with_capacity((k * rho) as usize);
            for tau in 0..k * rho {
                let v = if tau >= k * (rho - 1) {
                    (1..k).fold(C::one(), |acc, i| acc + self.at(rho - 1, tau - i))
                } else {
                    (0..k).fold(self.at(rho - 2, tau - k), |acc, i| acc + self.at(rho - 1, tau - i))
                };
                row.push(v);
            }
            self.rows.push(row);
        }
    }

    /// `b'(r, k, t)`.
    pub fn b_prime(&mut self, r: usize, t: i64) -> C {
        self.grow_to(r);
        self.at(r as i64, t)
    }

    /// `b(r, k, t)`; requires `r >= 1`.
    pub fn b(&mut self, r: usize, t: i64) -> C {
        assert!(r >= 1, "B_{{r,k}} needs at least one run");
        let len = (r * self.k) as i64;
        if t < 0 || t > len {
            return C::zero();
        }
        if t == len {
            return C::one();
        }
        self.b_prime(r, t) + self.b_prime(r - 1, t - self.k as i64)
    }
}

/// Closed-form evaluator for one `k`, memoizing `#P0` and `#P`.
#[derive(Debug, Clone)]
pub struct BalancedClosed<C> {
    k: usize,
    binom: BinomialTable<C>,
    p0_memo: HashMap<(i64, i64), C>,
    p_memo: HashMap<(i64, i64), C>,
}

impl<C: CountNum> BalancedClosed<C> {
    pub fn new(k: usize) -> Self {
        assert!(k >= 1, "run length k must be positive");
        BalancedClosed { k, binom: BinomialTable::new(), p0_memo: HashMap::new(), p_memo: HashMap::new() }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// The binomial table backing this evaluator.
    pub fn binomials(&mut self) -> &mut BinomialTable<C> {
        &mut self.binom
    }

    /// Ordered `dr`-tuples of integers in `[0, k-1]` summing to `dt`.
    pub fn p0(&mut self, dr: i64, dt: i64) -> C {
        if dr < 0 || dt < 0 {
            return C::zero();
        }
        if let Some(v) = self.p0_memo.get(&(dr, dt)) {
            return v.clone();
        }
        let k = self.k as i64;
        let mut sum = SignedSum::new();
        for i in 0..=dt / k {
            let term = self.binom.get(dr, i) * self.binom.multiset(dr, dt - i * k);
            sum.add(term, i % 2 == 1);
        }
        let v = sum.finish();
        self.p0_memo.insert((dr, dt), v.clone());
        v
    }

    /// Ordered sequences over `{(2,k), (1,0), ..., (1,k-1)}` whose component
    /// sums are `(dr, dt)`.
    pub fn p(&mut self, dr: i64, dt: i64) -> C {
        if dr < 0 || dt < 0 {
            return C::zero();
        }
        if let Some(v) = self.p_memo.get(&(dr, dt)) {
            return v.clone();
        }
        let k = self.k as i64;
        let mut v = C::zero();
        for j in 0..=dt / k {
            if dr - 2 * j < 0 {
                break;
            }
            let ways = self.binom.get(dr - j, j);
            if ways.is_zero() {
                continue;
            }
            v = v + ways * self.p0(dr - 2 * j, dt - j * k);
        }
        self.p_memo.insert((dr, dt), v.clone());
        v
    }

    /// `b'(r, k, t) = sum_{i=0}^{t} #P(r - floor(i/k) - 1, t - i)`.
    pub fn b_prime(&mut self, r: usize, t: i64) -> C {
        if t < 0 {
            return C::zero();
        }
        let k = self.k as i64;
        (0..=t).fold(C::zero(), |acc, i| {
            let term = self.p(r as i64 - i / k - 1, t - i);
            acc + term
        })
    }

    /// `b(r, k, t)`; requires `r >= 1`.
    pub fn b(&mut self, r: usize, t: i64) -> C {
        assert!(r >= 1, "B_{{r,k}} needs at least one run");
        let len = (r * self.k) as i64;
        if t < 0 || t > len {
            return C::zero();
        }
        if t == len {
            return C::one();
        }
        self.b_prime(r, t) + self.b_prime(r - 1, t - self.k as i64)
    }
}

/// `|D_t(B'_{r,k})|` by the recursion. Panics if `k == 0`.
pub fn b_prime_recursive<C: CountNum>(r: usize, k: usize, t: i64) -> C {
    BalancedRecursive::new(k).b_prime(r, t)
}

/// `|D_t(B_{r,k})|` through `b(r,t) = b'(r,t) + b'(r-1,t-k)`. Panics if
/// `r == 0` or `k == 0`.
pub fn b_recursive<C: CountNum>(r: usize, k: usize, t: i64) -> C {
    BalancedRecursive::new(k).b(r, t)
}

/// Inclusion-exclusion count of ordered `dr`-tuples in `[0, k-1]` summing to `dt`.
pub fn p0_count<C: CountNum>(dr: usize, dt: usize, k: usize) -> C {
    BalancedClosed::new(k).p0(dr as i64, dt as i64)
}

pub fn p_count<C: CountNum>(dr: usize, dt: usize, k: usize) -> C {
    BalancedClosed::new(k).p(dr as i64, dt as i64)
}

pub fn b_prime_closed<C: CountNum>(r: usize, k: usize, t: i64) -> C {
    BalancedClosed::new(k).b_prime(r, t)
}

pub fn b_closed<C: CountNum>(r: usize, k: usize, t: i64) -> C {
    BalancedClosed::new(k).b(r, t)
}

/// Upper bound on `|D_t(X)|` for every `r`-run string of length `n`:
/// `b(r, ceil(n/r), t)`.
pub fn upper_bound_general<C: CountNum>(n: usize, r: usize, t: usize) -> Result<C> {
    if r == 0 || r > n {
        return Err(Error::InvalidParameters(format!("need 1 <= r <= n (got n={n}, r={r})")));
    }
    Ok(b_closed(r, n.div_ceil(r), t as i64))
}
