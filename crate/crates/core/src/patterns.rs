//! Deletion patterns: per-run deletion counts `(y_1, ..., y_r)` with
//! `0 <= y_i <= x_i` and `sum y_i = t`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;

use crate::bounds::{binom_or_zero, hr_upper, lev_upper, multiset_coeff};
use crate::num::{log2_big, SignedSum};
use crate::{exact, CountNum, RunString};

/// Number of compositions of `t` into `bounds.len()` parts with part `i` in
/// `[0, bounds[i]]`.
pub fn bounded_compositions<C: CountNum>(bounds: &[usize], t: usize) -> C {
    let mut row = vec![C::zero(); t + 1];
    row[0] = C::one();
    for &b in bounds {
        // sliding window sum over the previous row
        let mut next = Vec::with_capacity(t + 1);
        let mut window = C::zero();
        for s in 0..=t {
            window = window + row[s].clone();
            if s > b {
                window = window - row[s - b - 1].clone();
            }
            next.push(window.clone());
        }
        row = next;
    }
    row.swap_remove(t)
}

/// `|P_t(X)|`; zero when `t > |X|`.
pub fn pattern_count<C: CountNum>(x: &RunString, t: usize) -> C {
    bounded_compositions(x.runs(), t)
}

/// `|P_t(X)|` for every `t` in `0..=|X|`: the coefficients of
/// `prod_i (1 + z + ... + z^{x_i})`.
pub fn pattern_count_all_t<C: CountNum>(x: &RunString) -> Vec<C> {
    let mut poly = vec![C::one()];
    for &b in x.runs() {
        let mut next = vec![C::zero(); poly.len() + b];
        let mut window = C::zero();
        for (s, slot) in next.iter_mut().enumerate() {
            if let Some(v) = poly.get(s) {
                window = window + v.clone();
            }
            if s > b {
                window = window - poly[s - b - 1].clone();
            }
            *slot = window.clone();
        }
        poly = next;
    }
    poly
}

/// `|P_t(B_{r,k})|` by inclusion-exclusion over parts exceeding `k`.
pub fn pattern_count_balanced<C: CountNum>(r: usize, k: usize, t: usize) -> C {
    let mut sum = SignedSum::new();
    for i in 0..=t / (k + 1) {
        let rest = (t - i * (k + 1)) as i64;
        sum.add(binom_or_zero::<C>(r as i64, i as i64) * multiset_coeff::<C>(r, rest), i % 2 == 1);
    }
    sum.finish()
}

/// `min(multiset(r, t), (k+1)^r)`.
pub fn balanced_pattern_upper<C: CountNum>(r: usize, k: usize, t: usize) -> C {
    let power = (0..r).fold(C::one(), |acc, _| acc * C::from_count(k + 1));
    multiset_coeff::<C>(r, t as i64).min(power)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternSandwich<C> {
    /// Patterns that leave at least one symbol in every run.
    pub inner: C,
    pub exact: C,
    pub outer: C,
    pub holds: bool,
}

/// Evaluates `|P_t(X')| <= |D_t(X)| <= |P_t(X)|`, where `X'` has run
/// bounds `x_i - 1`.
pub fn pattern_sandwich_check<C: CountNum>(x: &RunString, t: usize) -> PatternSandwich<C> {
    let shrunk: Vec<usize> = x.runs().iter().map(|v| v - 1).collect();
    let inner = bounded_compositions::<C>(&shrunk, t);
    let exact = exact::count_subsequences::<C>(x, t);
    let outer = pattern_count::<C>(x, t);
    let holds = inner <= exact && exact <= outer;
    PatternSandwich { inner, exact, outer, holds }
}

/// Whether `|P_t(X)| == |P_{n-t}(X)|`. False for `t > n`.
pub fn pattern_symmetry_check(x: &RunString, t: usize) -> bool {
    let n = x.len();
    t <= n && pattern_count::<BigUint>(x, t) == pattern_count::<BigUint>(x, n - t)
}

#[derive(Debug, Clone, PartialEq)]
pub struct PatternGapReport<C> {
    pub r: usize,
    pub k: usize,
    pub t: usize,
    pub patterns: C,
    pub hr_upper: C,
    pub lev_upper: C,
    /// `hr_upper / patterns`.
    pub hr_ratio: BigRational,
    /// `lev_upper / patterns`.
    pub lev_ratio: BigRational,
    pub log2_hr_ratio: f64,
    pub log2_lev_ratio: f64,
}

/// Compares `|P_t(B_{r,k})|` with the classical upper bounds at length `rk`.
/// `None` when `t > rk`, where the pattern count is zero.
pub fn pattern_gap_report<C: CountNum>(r: usize, k: usize, t: usize) -> Option<PatternGapReport<C>> {
    if r == 0 || k == 0 || t > r * k {
        return None;
    }
    let patterns = pattern_count_balanced::<C>(r, k, t);
    let hr = hr_upper::<C>(r * k, t);
    let lev = lev_upper::<C>(r, t);
    let ratio = |num: &C| BigRational::new(BigInt::from(num.to_big()), BigInt::from(patterns.to_big()));
    let log2 = |num: &C| log2_big(&num.to_big()) - log2_big(&patterns.to_big());
    Some(PatternGapReport {
        r,
        k,
        t,
        hr_ratio: ratio(&hr),
        lev_ratio: ratio(&lev),
        log2_hr_ratio: log2(&hr),
        log2_lev_ratio: log2(&lev),
        patterns,
        hr_upper: hr,
        lev_upper: lev,
    })
}

impl<C: CountNum> PatternGapReport<C> {
    /// True when the pattern count is strictly below both classical bounds.
    pub fn improves(&self) -> bool {
        let one = BigRational::one();
        self.hr_ratio > one && self.lev_ratio > one && !self.patterns.is_zero()
    }
}
