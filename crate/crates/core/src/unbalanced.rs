//! Subsequence counts of the unbalanced strings `U^{(1)}_{n,r}`: one run of
//! length `n-r+1` followed by `r-1` runs of length one. These are the
//! `r`-run strings of length `n` with the fewest subsequences, so
//! `u(n,r,t) = |D_t(U^{(1)}_{n,r})|` is a lower bound for all of them.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::bounds::{d_cyclic, BinomialTable};
use crate::num::log2_big;
use crate::{CountNum, Error, Result};

fn check_shape(n: usize, r: usize) -> Result<()> {
    if r == 0 || r > n {
        return Err(Error::InvalidParameters(format!("need 1 <= r <= n (got n={n}, r={r})")));
    }
    Ok(())
}

/// Values fixed by the global conventions: `t = 0` and `t = n` give 1,
/// `t > n` gives 0.
fn boundary<C: CountNum>(n: usize, t: usize) -> Option<C> {
    if t > n {
        Some(C::zero())
    } else if t == 0 || t == n {
        Some(C::one())
    } else {
        None
    }
}

/// `u(n, r, t)` by peeling one symbol at a time off the long leading run:
///
/// ```text
/// u(n,r,t) = r                                  r = 1, 2
///          = 2                                  t = n - 1
///          = d(n, t)                            n = r
///          = u(n-1,r,t) + d(r-2, t+r-n-1)       otherwise
/// ```
pub fn u_recursive<C: CountNum>(n: usize, r: usize, t: usize) -> Result<C> {
    check_shape(n, r)?;
    if let Some(v) = boundary(n, t) {
        return Ok(v);
    }
    let (r_i, t_i) = (r as i64, t as i64);
    let mut acc = C::zero();
    let mut m = n;
    loop {
        if r <= 2 {
            return Ok(acc + C::from_count(r));
        }
        if t == m - 1 {
            return Ok(acc + C::from_count(2));
        }
        if m == r {
            return Ok(acc + d_cyclic(r_i, t_i));
        }
        acc = acc + d_cyclic(r_i - 2, t_i + r_i - m as i64 - 1);
        m -= 1;
    }
}

/// Closed form of `u(n, r, t)` for `2 < r <= n` and `1 <= t < n`:
///
/// ```text
/// r > t:   d(r,t) + sum_{i=t+r-n-1}^{t-2} d(r-2, i)
/// r <= t:  2      + sum_{i=t+r-n-1}^{r-3} d(r-2, i)
/// ```
pub fn u_closed<C: CountNum>(n: usize, r: usize, t: usize) -> Result<C> {
    u_closed_with(&mut BinomialTable::new(), n, r, t)
}

/// [`u_closed`] using a caller-provided binomial table.
pub fn u_closed_with<C: CountNum>(table: &mut BinomialTable<C>, n: usize, r: usize, t: usize) -> Result<C> {
    if r <= 2 || r > n || t == 0 || t >= n {
        return Err(Error::InvalidParameters(format!(
            "closed form needs 2 < r <= n and 1 <= t < n (got n={n}, r={r}, t={t})"
        )));
    }
    let (n, r, t) = (n as i64, r as i64, t as i64);
    let lo = t + r - n - 1;
    let (head, hi) = if r > t { (table.cyclic(r, t), t - 2) } else { (C::from_count(2), r - 3) };
    // d(r-2, i) vanishes for negative i
    Ok((lo.max(0)..=hi).fold(head, |acc, i| acc + table.cyclic(r - 2, i)))
}

/// Lower bound on `|D_t(X)|` for every `r`-run string `X` of length `n`.
///
/// Equals `u(n, r, t)`: the closed form for `r > 2`, the base cases for
/// `r <= 2`, and the usual conventions at `t = 0` and `t >= n`.
pub fn lower_bound_general<C: CountNum>(n: usize, r: usize, t: usize) -> Result<C> {
    lower_bound_with(&mut BinomialTable::new(), n, r, t)
}

pub fn lower_bound_with<C: CountNum>(table: &mut BinomialTable<C>, n: usize, r: usize, t: usize) -> Result<C> {
    check_shape(n, r)?;
    if let Some(v) = boundary(n, t) {
        return Ok(v);
    }
    if r <= 2 {
        return Ok(C::from_count(r));
    }
    u_closed_with(table, n, r, t)
}

/// The single-expression form
/// `d(r,t) + sum_{i=t+r-n-1}^{min(t-2, r-3)} d(r-2, i)`.
///
/// Agrees with [`u_closed`] when `r > t`. When `r <= t` its head term is
/// `d(r,t) <= 1` instead of 2, so it is smaller than `u` by `2 - d(r,t)`.
pub fn lower_bound_min_form<C: CountNum>(n: usize, r: usize, t: usize) -> Result<C> {
    if r <= 2 || r > n || t >= n {
        return Err(Error::InvalidParameters(format!("needs 2 < r <= n and t < n (got n={n}, r={r}, t={t})")));
    }
    let (n, r, t) = (n as i64, r as i64, t as i64);
    let lo = (t + r - n - 1).max(0);
    let hi = (t - 2).min(r - 3);
    Ok((lo..=hi).fold(d_cyclic(r, t), |acc, i| acc + d_cyclic::<C>(r - 2, i)))
}

/// Numeric comparison of `u(n,r,t)` with the cyclic lower bound `d(r,t)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LowerGapReport<C> {
    pub n: usize,
    pub r: usize,
    pub t: usize,
    pub u: C,
    pub d: C,
    /// `u / d`; `None` when `d = 0` (`t > r`).
    pub ratio: Option<BigRational>,
    pub ratio_f64: Option<f64>,
    pub log2_ratio: Option<f64>,
    /// `t/r` lies in `[1/3 + 1/r, 1)` and `t <= n - r + 1`.
    pub in_regime: bool,
}

pub fn lower_gap_report<C: CountNum>(n: usize, r: usize, t: usize) -> Result<LowerGapReport<C>> {
    let u: C = lower_bound_general(n, r, t)?;
    let d: C = d_cyclic(r as i64, t as i64);
    let (ratio, ratio_f64, log2_ratio) = if d.is_zero() {
        (None, None, None)
    } else {
        let (ub, db) = (u.to_big(), d.to_big());
        let log2 = log2_big(&ub) - log2_big(&db);
        let q = BigRational::new(BigInt::from(ub), BigInt::from(db));
        let f = q.to_f64();
        (Some(q), f, Some(log2))
    };
    // 1/3 + 1/r <= t/r  <=>  r + 3 <= 3t
    let in_regime = r + 3 <= 3 * t && t < r && t + r <= n + 1;
    Ok(LowerGapReport { n, r, t, u, d, ratio, ratio_f64, log2_ratio, in_regime })
}
