//! Exact number of distinct subsequences left after `t` deletions.
//!
//! The count `|D_t(X)|` is evaluated by splitting on the first run: for
//! `X = s^a e^j Y`,
//!
//! ```text
//! |D_t(X)| = |D_t(s^(a-1) e^j Y)| + |D_(t-a)(e^(j-1) Y)|      (0 < t < |X|)
//! ```
//!
//! with `|D_0| = |D_|X|| = 1` and `|D_t| = 0` for `t > |X|`. Every suffix state
//! `(run index, remaining length of that run)` is a suffix of `X`, so the memo
//! table is indexed by suffix start position and `t`.

use std::collections::BTreeSet;

use crate::{CountNum, Error, Result, RunString};

/// Default cap on the string length accepted by the enumeration oracle.
pub const ORACLE_LEN_CAP: usize = 22;

/// Memo table over suffixes of one string. Row `p` holds `|D_t|` of the
/// suffix starting at position `p` for `t = 0..=min(len, max_t)`.
struct SuffixTable<C> {
    rows: Vec<Vec<C>>,
}

impl<C: CountNum> SuffixTable<C> {
    fn build(x: &RunString, max_t: usize) -> Self {
        let n = x.len();
        // run_end[p]: last position of the run containing p
        let mut run_end = Vec::with_capacity(n);
        let mut start = 0;
        for &len in x.runs() {
            run_end.extend(std::iter::repeat_n(start + len - 1, len));
            start += len;
        }

        let mut rows: Vec<Vec<C>> = vec![Vec::new(); n + 1];
        rows[n] = vec![C::one()];
        for p in (0..n).rev() {
            let len = n - p;
            let width = len.min(max_t);
            let end = run_end[p];
            let a = end - p + 1;
            let q = end + 2;
            let mut row = Vec::with_capacity(width + 1);
            for t in 0..=width {
                if t == 0 || t == len || end == n - 1 {
                    row.push(C::one());
                    continue;
                }
                let mut v = rows[p + 1][t].clone();
                if t >= a {
                    let rest = t - a;
                    if q == n {
                        if rest == 0 {
                            v = v + C::one();
                        }
                    } else if rest <= n - q {
                        v = v + rows[q][rest].clone();
                    }
                }
                row.push(v);
            }
            rows[p] = row;
        }
        SuffixTable { rows }
    }
}

/// `|D_t(x)|`: the number of distinct strings obtained from `x` by deleting
/// exactly `t` symbols. Returns 0 when `t > |x|`.
pub fn count_subsequences<C: CountNum>(x: &RunString, t: usize) -> C {
    let n = x.len();
    if t > n {
        return C::zero();
    }
    if t == 0 || t == n {
        return C::one();
    }
    SuffixTable::build(x, t).rows.swap_remove(0).swap_remove(t)
}

/// `|D_t(x)|` for every `t` in `0..=|x|`, from a single memo table.
pub fn count_all_t<C: CountNum>(x: &RunString) -> Vec<C> {
    SuffixTable::build(x, x.len()).rows.swap_remove(0)
}

/// The literal set `D_t(x)`, built by trying every choice of `t` deleted
/// positions. Refuses strings longer than [`ORACLE_LEN_CAP`].
pub fn enumerate_subsequences(x: &RunString, t: usize) -> Result<BTreeSet<String>> {
    enumerate_subsequences_capped(x, t, ORACLE_LEN_CAP)
}

pub fn enumerate_subsequences_capped(x: &RunString, t: usize, cap: usize) -> Result<BTreeSet<String>> {
    let n = x.len();
    if n > cap || n >= 64 {
        return Err(Error::OracleCap { len: n, cap });
    }
    let mut out = BTreeSet::new();
    if t > n {
        return Ok(out);
    }
    let bits: Vec<char> = x.to_bits().chars().collect();
    let keep = (n - t) as u32;
    for mask in 0u64..(1u64 << n) {
        if mask.count_ones() != keep {
            continue;
        }
        let s: String = (0..n).filter(|&i| (mask >> i) & 1 == 1).map(|i| bits[i]).collect();
        out.insert(s);
    }
    Ok(out)
}

/// Brute-force `|D_t(x)|` for every `t`, by deduplicating the kept-position
/// images of all `2^n` masks. Same cap as [`enumerate_subsequences`].
pub fn brute_force_counts(x: &RunString) -> Result<Vec<u64>> {
    let n = x.len();
    if n > ORACLE_LEN_CAP {
        return Err(Error::OracleCap { len: n, cap: ORACLE_LEN_CAP });
    }
    let packed = x.to_packed().expect("length checked above");
    Ok(brute_force_counts_packed(packed, n))
}

/// Brute-force counts for the `n`-bit string stored in the low bits of
/// `packed` (first symbol most significant).
pub(crate) fn brute_force_counts_packed(packed: u64, n: usize) -> Vec<u64> {
    // seen[m] is a bitset over the 2^m strings of length m
    let mut seen: Vec<Vec<u64>> = (0..=n).map(|m| vec![0u64; (1usize << m).div_ceil(64)]).collect();
    let mut counts = vec![0u64; n + 1];
    for mask in 0u64..(1u64 << n) {
        let mut image = 0u64;
        let mut m = 0usize;
        let mut rest = mask;
        // walk kept positions from most significant to least
        while rest != 0 {
            let hi = 63 - rest.leading_zeros() as u64;
            image = (image << 1) | ((packed >> hi) & 1);
            m += 1;
            rest &= !(1u64 << hi);
        }
        let slot = &mut seen[m][(image / 64) as usize];
        let bit = 1u64 << (image % 64);
        if *slot & bit == 0 {
            *slot |= bit;
            counts[n - m] += 1;
        }
    }
    counts
}
