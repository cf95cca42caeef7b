//! Combinatorial primitives and the classical bounds on `|D_t(X)|`.
//!
//! For an `r`-run string `X` of length `n`:
//!
//! ```text
//! C(r-t+1, t)           <= |D_t(X)| <= C(r+t-1, t)            (Levenshtein)
//! sum_{i<=t} C(r-t, i)  <= |D_t(X)| <= sum_{i<=t} C(n-t, i)    (Hirschberg-Regnier)
//! ```
//!
//! Binomials follow the zero convention `C(n, i) = 0` for `i < 0` or `i > n`.

use crate::balanced::BalancedClosed;
use crate::{exact, unbalanced, CountNum, Error, Result, RunString};

/// `C(n, i)`, zero when `i < 0` or `i > n`. Negative `n` is rejected.
pub fn binomial<C: CountNum>(n: i64, i: i64) -> Result<C> {
    if n < 0 {
        return Err(Error::NegativeBinomial(n));
    }
    Ok(binom_or_zero(n, i))
}

/// Binomial with the zero convention extended to negative `n` (every
/// `i >= 0` then exceeds `n`).
pub(crate) fn binom_or_zero<C: CountNum>(n: i64, i: i64) -> C {
    if i < 0 || n < 0 || i > n {
        return C::zero();
    }
    let i = i.min(n - i);
    let mut acc = C::one();
    for j in 0..i {
        acc = acc * C::from_count((n - j) as usize) / C::from_count((j + 1) as usize);
    }
    acc
}

/// Number of `b`-element multisets over `a` types, `C(a+b-1, b)`.
/// Zero for `b < 0`; `multiset_coeff(0, 0) = 1`.
pub fn multiset_coeff<C: CountNum>(a: usize, b: i64) -> C {
    if b < 0 {
        return C::zero();
    }
    if a == 0 {
        return if b == 0 { C::one() } else { C::zero() };
    }
    binom_or_zero(a as i64 + b - 1, b)
}

/// `d(r, t) = |D_t(C_r)| = sum_{i=0}^{t} C(r-t, i)`; 0 for `t < 0`.
pub fn d_cyclic<C: CountNum>(r: i64, t: i64) -> C {
    if t < 0 {
        return C::zero();
    }
    (0..=t).fold(C::zero(), |acc, i| acc + binom_or_zero::<C>(r - t, i))
}

pub fn lev_lower<C: CountNum>(r: usize, t: usize) -> C {
    binom_or_zero(r as i64 - t as i64 + 1, t as i64)
}

pub fn lev_upper<C: CountNum>(r: usize, t: usize) -> C {
    binom_or_zero(r as i64 + t as i64 - 1, t as i64)
}

pub fn hr_lower<C: CountNum>(r: usize, t: usize) -> C {
    d_cyclic(r as i64, t as i64)
}

pub fn hr_upper<C: CountNum>(n: usize, t: usize) -> C {
    if t > n {
        return C::zero();
    }
    d_cyclic(n as i64, t as i64)
}

/// `2^(n-t)`, or 0 for `t > n`.
pub fn naive_upper<C: CountNum>(n: usize, t: usize) -> C {
    if t > n {
        return C::zero();
    }
    num_traits::pow(C::one() + C::one(), n - t)
}

/// Pascal's triangle, extended on demand. Shared by the batch evaluators so
/// that sweeps over `t` do not recompute binomials.
#[derive(Debug, Clone)]
pub struct BinomialTable<C> {
    rows: Vec<Vec<C>>,
}

impl<C: CountNum> Default for BinomialTable<C> {
    fn default() -> Self {
        BinomialTable { rows: vec![vec![C::one()]] }
    }
}

impl<C: CountNum> BinomialTable<C> {
    pub fn new() -> Self {
        Self::default()
    }

    fn grow_to(&mut self, n: usize) {
        while self.rows.len() <= n {
            let prev = self.rows.last().unwrap();
            let mut row = Vec::with_capacity(prev.len() + 1);
            row.push(C::one());
            for w in prev.windows(2) {
                row.push(w[0].clone() + w[1].clone());
            }
            row.push(C::one());
            self.rows.push(row);
        }
    }

    /// `C(n, i)` with the zero convention (negative `n` gives 0).
    pub fn get(&mut self, n: i64, i: i64) -> C {
        if i < 0 || n < 0 || i > n {
            return C::zero();
        }
        self.grow_to(n as usize);
        self.rows[n as usize][i as usize].clone()
    }

    pub fn multiset(&mut self, a: i64, b: i64) -> C {
        if b < 0 || a < 0 {
            return C::zero();
        }
        if a == 0 {
            return if b == 0 { C::one() } else { C::zero() };
        }
        self.get(a + b - 1, b)
    }

    /// `d(r, t)` from the table.
    pub fn cyclic(&mut self, r: i64, t: i64) -> C {
        if t < 0 {
            return C::zero();
        }
        let top = r - t;
        if top < 0 {
            return C::zero();
        }
        // terms with i > top vanish
        let hi = t.min(top);
        self.grow_to(top as usize);
        self.rows[top as usize][..=hi as usize].iter().fold(C::zero(), |acc, v| acc + v.clone())
    }
}

/// Every bound for one `(n, r, t)` configuration, plus the exact count when a
/// concrete string is known.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundsReport<C> {
    pub n: usize,
    pub r: usize,
    pub t: usize,
    /// Run length of the balanced string used for `new_upper`.
    pub k_ceil: usize,
    pub lev_lower: C,
    pub hr_lower: C,
    pub new_lower: C,
    pub lev_upper: C,
    pub hr_upper: C,
    pub new_upper: C,
    pub naive_upper: C,
    pub exact: Option<C>,
}

impl<C: CountNum> BoundsReport<C> {
    /// Names of the orderings that fail. Empty for every valid report.
    pub fn violations(&self) -> Vec<&'static str> {
        let mut v = Vec::new();
        if self.lev_lower > self.hr_lower {
            v.push("lev_lower <= hr_lower");
        }
        if self.hr_lower > self.new_lower {
            v.push("hr_lower <= new_lower");
        }
        if let Some(e) = &self.exact {
            let checks = [
                (&self.new_lower <= e, "new_lower <= exact"),
                (e <= &self.new_upper, "exact <= new_upper"),
                (e <= &self.hr_upper, "exact <= hr_upper"),
                (e <= &self.lev_upper, "exact <= lev_upper"),
                (e <= &self.naive_upper, "exact <= naive_upper"),
            ];
            v.extend(checks.iter().filter(|(ok, _)| !ok).map(|&(_, name)| name));
        } else if self.new_lower > self.new_upper {
            v.push("new_lower <= new_upper");
        }
        v
    }
}

fn check_params(n: usize, r: usize, t: usize) -> Result<()> {
    if r == 0 || r > n {
        return Err(Error::InvalidParameters(format!("need 1 <= r <= n (got n={n}, r={r})")));
    }
    if t > n {
        return Err(Error::InvalidParameters(format!("need 0 <= t <= n (got n={n}, t={t})")));
    }
    Ok(())
}

/// Checks that `witness` is a length-`n`, `r`-run string.
pub fn check_witness(n: usize, r: usize, witness: &RunString) -> Result<()> {
    if witness.len() != n || witness.num_runs() != r {
        return Err(Error::InvalidParameters(format!(
            "witness has length {} and {} runs, expected n={n}, r={r}",
            witness.len(),
            witness.num_runs()
        )));
    }
    Ok(())
}

/// Bounds for `(n, r, t)`.
///
/// `exact` is filled from `witness` when given. Without a witness it is still
/// filled for `r = 1` and `r = n`, where the `r`-run string of length `n` is
/// unique up to complement.
pub fn bounds_report<C: CountNum>(
    n: usize,
    r: usize,
    t: usize,
    witness: Option<&RunString>,
) -> Result<BoundsReport<C>> {
    check_params(n, r, t)?;
    let mut eval = BoundsEvaluator::new(n, r)?;
    let exact = match witness {
        Some(w) => {
            check_witness(n, r, w)?;
            Some(exact::count_subsequences(w, t))
        }
        None => implied_string(n, r).map(|w| exact::count_subsequences(&w, t)),
    };
    eval.report(t, exact)
}

fn implied_string(n: usize, r: usize) -> Option<RunString> {
    if r == 1 {
        RunString::unbalanced(n, 1, 1).ok()
    } else if r == n {
        RunString::cyclic(n).ok()
    } else {
        None
    }
}

/// Evaluates [`BoundsReport`]s for many `t` at fixed `(n, r)`, reusing one
/// binomial table and the balanced-string memo tables.
#[derive(Debug, Clone)]
pub struct BoundsEvaluator<C> {
    n: usize,
    r: usize,
    k: usize,
    upper: BalancedClosed<C>,
}

impl<C: CountNum> BoundsEvaluator<C> {
    /// Uses `k = ceil(n / r)` for the balanced upper bound.
    pub fn new(n: usize, r: usize) -> Result<Self> {
        check_params(n, r, 0)?;
        Self::with_k(n, r, n.div_ceil(r))
    }

    /// Uses an explicit run length `k >= ceil(n / r)` for the balanced upper
    /// bound (any such `k` gives a valid bound).
    pub fn with_k(n: usize, r: usize, k: usize) -> Result<Self> {
        check_params(n, r, 0)?;
        if k < n.div_ceil(r) {
            return Err(Error::InvalidParameters(format!(
                "k={k} is below ceil(n/r)={}; B_{{r,k}} would be shorter than n",
                n.div_ceil(r)
            )));
        }
        Ok(BoundsEvaluator { n, r, k, upper: BalancedClosed::new(k) })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn report(&mut self, t: usize, exact: Option<C>) -> Result<BoundsReport<C>> {
        let (n, r) = (self.n, self.r);
        check_params(n, r, t)?;
        let new_upper = self.upper.b(r, t as i64);
        let table = self.upper.binomials();
        let new_lower = unbalanced::lower_bound_with(table, n, r, t)?;
        let (ni, ri, ti) = (n as i64, r as i64, t as i64);
        Ok(BoundsReport {
            n,
            r,
            t,
            k_ceil: self.k,
            lev_lower: table.get(ri - ti + 1, ti),
            hr_lower: table.cyclic(ri, ti),
            new_lower,
            lev_upper: table.get(ri + ti - 1, ti),
            hr_upper: table.cyclic(ni, ti),
            new_upper,
            naive_upper: naive_upper(n, t),
            exact,
        })
    }
}
