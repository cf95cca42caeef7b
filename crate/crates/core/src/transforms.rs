//! String operations that move `|D_t|` monotonically, and the step-by-step
//! procedures that turn any `r`-run string into the balanced (maximal) or
//! unbalanced (minimal) `r`-run string.
//!
//! Run indices in this module are 0-based; bit positions are 0-based.

use std::fmt::Write as _;

use crate::{exact, unbalanced, Bit, CountNum, Error, Result, RunString};

/// Inserts `bit` before position `pos` (`pos == len` appends).
pub fn insert_symbol(x: &RunString, pos: usize, bit: Bit) -> Result<RunString> {
    let mut sym = x.symbols();
    if pos > sym.len() {
        return Err(Error::Precondition(format!("insert position {pos} exceeds length {}", sym.len())));
    }
    sym.insert(pos, bit);
    RunString::from_symbols(&sym)
}

/// Complements every bit after position `i`. Bits `i` and `i + 1` must be
/// equal.
pub fn flip_suffix(x: &RunString, i: usize) -> Result<RunString> {
    let mut sym = x.symbols();
    if i + 1 >= sym.len() {
        return Err(Error::Precondition(format!("flip index {i} needs a following bit (length {})", sym.len())));
    }
    if sym[i] != sym[i + 1] {
        return Err(Error::Precondition(format!("bits {i} and {} differ", i + 1)));
    }
    for b in &mut sym[i + 1..] {
        *b = b.flip();
    }
    RunString::from_symbols(&sym)
}

/// Repeatedly flips at the leftmost pair of equal adjacent bits. Returns every
/// intermediate string, starting with `x` and ending at an alternating string.
pub fn flip_to_cyclic(x: &RunString) -> Vec<RunString> {
    let mut out = vec![x.clone()];
    loop {
        let cur = out.last().unwrap();
        let Some(i) = cur.runs().iter().position(|&len| len > 1).map(|run| run_start(cur, run)) else {
            return out;
        };
        let next = flip_suffix(cur, i).expect("leftmost repeated pair satisfies the flip precondition");
        out.push(next);
    }
}

fn run_start(x: &RunString, run: usize) -> usize {
    x.runs()[..run].iter().sum()
}

fn is_palindrome(v: &[usize]) -> bool {
    v.iter().eq(v.iter().rev())
}

fn check_runs(x: &RunString, a: usize, b: usize) -> Result<()> {
    let r = x.num_runs();
    if a >= r || b >= r {
        return Err(Error::Precondition(format!("run index out of range (r = {r})")));
    }
    if a == b {
        return Err(Error::Precondition("run indices must differ".into()));
    }
    let (lo, hi) = (a.min(b), a.max(b));
    if !is_palindrome(&x.runs()[lo + 1..hi]) {
        return Err(Error::Precondition(format!("runs strictly between {lo} and {hi} are not symmetric")));
    }
    Ok(())
}

fn shift_run(x: &RunString, shrink: usize, grow: usize) -> RunString {
    let mut runs = x.runs().to_vec();
    runs[shrink] -= 1;
    runs[grow] += 1;
    RunString::from_runs(x.first_bit(), runs).expect("shrunk run stays positive")
}

/// Shortens run `i` and lengthens run `j` by one, for `i < j`,
/// `x_i - x_j > 1` and a symmetric block of runs between them. Never
/// decreases `|D_t|`.
pub fn balance_step(x: &RunString, i: usize, j: usize) -> Result<RunString> {
    if i >= j {
        return Err(Error::Precondition(format!("need i < j (got i={i}, j={j})")));
    }
    check_runs(x, i, j)?;
    let r = x.runs();
    if r[i] <= r[j] + 1 {
        return Err(Error::Precondition(format!("need x_i - x_j > 1 (x_i={}, x_j={})", r[i], r[j])));
    }
    Ok(shift_run(x, i, j))
}

/// The mirror image of [`balance_step`]: shortens run `j` and lengthens run
/// `i`, for `i < j` and `x_j - x_i > 1`.
pub fn balance_step_mirrored(x: &RunString, i: usize, j: usize) -> Result<RunString> {
    if i >= j {
        return Err(Error::Precondition(format!("need i < j (got i={i}, j={j})")));
    }
    check_runs(x, i, j)?;
    let r = x.runs();
    if r[j] <= r[i] + 1 {
        return Err(Error::Precondition(format!("need x_j - x_i > 1 (x_i={}, x_j={})", r[i], r[j])));
    }
    Ok(shift_run(x, j, i))
}

/// Inverse of a balance step: lengthens run `grow` and shortens run `shrink`,
/// for `x_grow >= x_shrink >= 2` and a symmetric block between them. Never
/// increases `|D_t|`.
pub fn unbalance_step(x: &RunString, grow: usize, shrink: usize) -> Result<RunString> {
    check_runs(x, grow, shrink)?;
    let r = x.runs();
    if r[shrink] < 2 {
        return Err(Error::Precondition(format!("run {shrink} has length 1 and cannot shrink")));
    }
    if r[grow] < r[shrink] {
        return Err(Error::Precondition(format!(
            "need x_grow >= x_shrink (x_grow={}, x_shrink={})",
            r[grow], r[shrink]
        )));
    }
    Ok(shift_run(x, shrink, grow))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Increasing,
    Decreasing,
}

/// Closing comparison of an unbalancing trace: the edge-pivot string whose
/// count `u(n, r, t)` bounds every step from below.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundRecord {
    pub string: RunString,
}

impl BoundRecord {
    pub fn bound<C: CountNum>(&self, t: usize) -> C {
        unbalanced::u_recursive(self.string.len(), self.string.num_runs(), t)
            .expect("record string is a valid r-run string")
    }
}

/// Sequence of strings produced by a monotone procedure. Counts are computed
/// on demand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransformTrace {
    pub t: usize,
    pub direction: Direction,
    pub steps: Vec<RunString>,
    pub final_bound: Option<BoundRecord>,
}

impl TransformTrace {
    pub fn counts<C: CountNum>(&self) -> Vec<C> {
        self.steps.iter().map(|s| exact::count_subsequences(s, self.t)).collect()
    }

    pub fn potentials(&self) -> Vec<u64> {
        self.steps.iter().map(RunString::sum_of_squares).collect()
    }

    pub fn last(&self) -> &RunString {
        self.steps.last().expect("trace is never empty")
    }

    /// Renders the trace as an aligned plain-text table. Balancing traces carry
    /// a `sum_sq` column; an unbalancing trace ends with a rule and the bound
    /// record row.
    pub fn render<C: CountNum>(&self) -> String {
        let with_potential = self.direction == Direction::Increasing;
        let mut header = vec!["i".to_string(), "X_i".into(), "runs".into()];
        if with_potential {
            header.push("sum_sq".into());
        }
        header.push(format!("D_{}", self.t));

        let counts = self.counts::<C>();
        let mut rows = vec![header];
        for (i, (s, c)) in self.steps.iter().zip(&counts).enumerate() {
            let mut row = vec![i.to_string(), s.to_bits(), format_runs(s)];
            if with_potential {
                row.push(s.sum_of_squares().to_string());
            }
            row.push(c.to_string());
            rows.push(row);
        }
        let footer = self.final_bound.as_ref().map(|rec| {
            vec![String::new(), rec.string.to_bits(), format_runs(&rec.string), rec.bound::<C>(self.t).to_string()]
        });

        let cols = rows[0].len();
        let mut widths = vec![0; cols];
        for row in rows.iter().chain(footer.iter()) {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.len());
            }
        }
        let line = |row: &[String]| {
            let mut s = String::new();
            for (c, (cell, w)) in row.iter().zip(&widths).enumerate() {
                if c > 0 {
                    s.push_str("  ");
                }
                let _ = write!(s, "{cell:<w$}");
            }
            s.trim_end().to_string() + "\n"
        };
        let mut out: String = rows.iter().map(|r| line(r)).collect();
        if let Some(f) = footer {
            let total = widths.iter().sum::<usize>() + 2 * (cols - 1);
            out.push_str(&"-".repeat(total));
            out.push('\n');
            out.push_str(&line(&f));
        }
        out
    }
}

fn format_runs(x: &RunString) -> String {
    let parts: Vec<String> = x.runs().iter().map(|v| v.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

/// Balances `x` into `B_{r, n/r}` one run-length unit at a time. Each step
/// moves a unit between the closest pair of runs whose lengths differ by
/// more than one; among equally close pairs the one with the larger
/// difference wins, then the rightmost. Requires `r` to divide `n`.
pub fn balance_trace(x: &RunString, t: usize) -> Result<TransformTrace> {
    let (n, r) = (x.len(), x.num_runs());
    if n % r != 0 {
        return Err(Error::InvalidParameters(format!(
            "length {n} is not divisible by the number of runs {r}; use the ceiling bound instead"
        )));
    }
    let mut steps = vec![x.clone()];
    loop {
        let cur = steps.last().unwrap();
        let Some((p, q)) = pick_balance_pair(cur.runs()) else {
            break;
        };
        let next =
            if cur.runs()[p] > cur.runs()[q] { balance_step(cur, p, q)? } else { balance_step_mirrored(cur, p, q)? };
        steps.push(next);
    }
    Ok(TransformTrace { t, direction: Direction::Increasing, steps, final_bound: None })
}

fn pick_balance_pair(runs: &[usize]) -> Option<(usize, usize)> {
    let r = runs.len();
    for gap in 1..r {
        let best = (0..r - gap)
            .map(|p| (p, p + gap, runs[p].abs_diff(runs[p + gap])))
            .filter(|&(_, _, diff)| diff > 1)
            .max_by_key(|&(p, _, diff)| (diff, p));
        if let Some((p, q, _)) = best {
            return Some((p, q));
        }
    }
    None
}

/// Unbalances `x` into `U^{(j)}_{n,r}`, where `j` is the leftmost maximal run:
/// run `j` repeatedly absorbs a unit from the nearest run `p` that is longer
/// than one and separated from `j` only by runs of length one (ties go to the
/// left). The trace closes with the edge-pivot bound record.
pub fn unbalance_trace(x: &RunString, t: usize) -> TransformTrace {
    let runs = x.runs();
    let max = *runs.iter().max().unwrap();
    let j = runs.iter().position(|&v| v == max).unwrap();
    let mut steps = vec![x.clone()];
    loop {
        let cur = steps.last().unwrap();
        let Some(p) = pick_unbalance_source(cur.runs(), j) else {
            break;
        };
        let next = unbalance_step(cur, j, p).expect("pivot is maximal and the block between is all ones");
        steps.push(next);
    }
    let last = steps.last().unwrap();
    let (n, r) = (last.len(), last.num_runs());
    let mut edge = vec![1; r];
    edge[0] = n - r + 1;
    let string = RunString::from_runs(last.run_symbol(j), edge).expect("runs are positive");
    TransformTrace { t, direction: Direction::Decreasing, steps, final_bound: Some(BoundRecord { string }) }
}

fn pick_unbalance_source(runs: &[usize], j: usize) -> Option<usize> {
    let left = (0..j).rev().find(|&p| runs[p] > 1);
    let right = (j + 1..runs.len()).find(|&p| runs[p] > 1);
    match (left, right) {
        (Some(l), Some(r)) => Some(if j - l <= r - j { l } else { r }),
        (l, r) => l.or(r),
    }
}

/// Outcome of [`verify_monotone`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MonotoneVerdict<C> {
    Pass,
    /// `index` is the position of the offending element (the bound record
    /// counts as position `steps.len()`).
    Violation {
        index: usize,
        before: C,
        after: C,
    },
}

impl<C> MonotoneVerdict<C> {
    pub fn passed(&self) -> bool {
        matches!(self, MonotoneVerdict::Pass)
    }
}

/// Checks that the per-step counts move in the trace's declared direction,
/// and that a closing bound record does not exceed the last count.
pub fn verify_monotone<C: CountNum>(trace: &TransformTrace) -> MonotoneVerdict<C> {
    let mut counts = trace.counts::<C>();
    if let Some(rec) = &trace.final_bound {
        counts.push(rec.bound(trace.t));
    }
    for (i, w) in counts.windows(2).enumerate() {
        let ok = match trace.direction {
            Direction::Increasing => w[0] <= w[1],
            Direction::Decreasing => w[0] >= w[1],
        };
        if !ok {
            return MonotoneVerdict::Violation { index: i + 1, before: w[0].clone(), after: w[1].clone() };
        }
    }
    MonotoneVerdict::Pass
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Count, SmallCount};

    fn rs(runs: &[usize]) -> RunString {
        RunString::from_runs(Bit::Zero, runs.to_vec()).unwrap()
    }

    fn bits(s: &str) -> RunString {
        RunString::from_bits(s).unwrap()
    }

    fn count(x: &RunString, t: usize) -> SmallCount {
        exact::count_subsequences(x, t)
    }

    #[test]
    fn insertion_example() {
        let x = bits("0011");
        let y = insert_symbol(&x, 2, Bit::One).unwrap();
        assert_eq!(y.to_bits(), "00111");
        assert!(count(&x, 1) <= count(&y, 1));
        assert!(insert_symbol(&x, 5, Bit::One).is_err());
        assert!(RunString::from_bits("").is_err());
    }

    #[test]
    fn flip_examples() {
        let x = bits("0011");
        assert_eq!(flip_suffix(&x, 2).unwrap().to_bits(), "0010");
        let y = flip_suffix(&x, 0).unwrap();
        assert_eq!(y.to_bits(), "0100");
        assert_eq!(count(&x, 1), 2);
        assert_eq!(count(&y, 1), 3);
        assert!(flip_suffix(&x, 1).is_err());
        assert!(flip_suffix(&x, 3).is_err());
    }

    #[test]
    fn flips_reach_cyclic() {
        for n in 1..=12usize {
            for v in 0u64..(1 << n) {
                let x = RunString::from_packed(v, n).unwrap();
                let path = flip_to_cyclic(&x);
                let end = path.last().unwrap();
                assert!(end.is_cyclic());
                assert_eq!(end.len(), n);
                assert!(path.len() <= n);
            }
        }
    }

    #[test]
    fn balance_step_examples() {
        let a = rs(&[3, 7, 2, 1, 2]);
        let b = balance_step(&a, 1, 2).unwrap();
        assert_eq!(b, rs(&[3, 6, 3, 1, 2]));
        assert_eq!((count(&a, 6), count(&b, 6)), (43, 56));

        let c = rs(&[3, 5, 4, 1, 2]);
        let d = balance_step(&c, 2, 3).unwrap();
        assert_eq!(d, rs(&[3, 5, 3, 2, 2]));
        assert_eq!((count(&c, 6), count(&d, 6)), (63, 85));

        let e = rs(&[2, 3, 2, 4, 2]);
        let f = unbalance_step(&e, 3, 2).unwrap();
        assert_eq!(f, rs(&[2, 3, 1, 5, 2]));
        assert_eq!((count(&e, 5), count(&f, 5)), (60, 38));
        // the unbalancing step is undone by a mirrored balance step
        assert_eq!(balance_step_mirrored(&f, 2, 3).unwrap(), e);
    }

    #[test]
    fn balance_step_preconditions() {
        let a = rs(&[3, 7, 2, 1, 2]);
        assert!(balance_step(&a, 2, 1).is_err());
        assert!(balance_step(&a, 3, 4).is_err()); // 1 vs 2
        assert!(balance_step(&a, 1, 5).is_err()); // out of range
                                                  // {2,1} between runs 1 and 4 is not symmetric
        let err = balance_step(&rs(&[5, 2, 1, 1]), 0, 3).unwrap_err();
        assert!(err.to_string().contains("symmetric"), "{err}");
        assert!(balance_step(&rs(&[5, 2, 2, 1]), 0, 3).is_ok());
        assert!(unbalance_step(&rs(&[2, 1, 3]), 0, 2).is_err());
        assert!(unbalance_step(&rs(&[3, 1, 1]), 0, 2).is_err());
    }

    #[test]
    fn balance_trace_trivial_cases() {
        let b = RunString::balanced(4, 3).unwrap();
        assert_eq!(balance_trace(&b, 2).unwrap().steps, vec![b.clone()]);
        let tr = balance_trace(&rs(&[1, 3]), 1).unwrap();
        assert_eq!(tr.last(), &rs(&[2, 2]));
        assert!(verify_monotone::<SmallCount>(&tr).passed());
        assert!(balance_trace(&rs(&[1, 2]), 1).is_err());
    }

    #[test]
    fn balance_trace_potential_strictly_decreases() {
        for n in 2..=12usize {
            for v in 0u64..(1 << n) {
                let x = RunString::from_packed(v, n).unwrap();
                if n % x.num_runs() != 0 {
                    continue;
                }
                let tr = balance_trace(&x, 1).unwrap();
                assert!(tr.potentials().windows(2).all(|w| w[0] > w[1]));
                assert_eq!(tr.last().runs(), RunString::balanced(x.num_runs(), n / x.num_runs()).unwrap().runs());
            }
        }
    }

    #[test]
    fn unbalance_trace_trivial_cases() {
        let u = RunString::unbalanced(9, 4, 3).unwrap();
        let tr = unbalance_trace(&u, 3);
        assert_eq!(tr.steps, vec![u.clone()]);
        let single = rs(&[6]);
        let tr = unbalance_trace(&single, 2);
        assert_eq!(tr.steps.len(), 1);
        assert!(verify_monotone::<SmallCount>(&tr).passed());
    }

    #[test]
    fn verify_flags_non_monotone_trace() {
        let tr = TransformTrace {
            t: 6,
            direction: Direction::Increasing,
            steps: vec![rs(&[3, 7, 2, 1, 2]), rs(&[3, 3, 3, 3, 3]), rs(&[3, 6, 3, 1, 2])],
            final_bound: None,
        };
        assert_eq!(verify_monotone::<SmallCount>(&tr), MonotoneVerdict::Violation { index: 2, before: 105, after: 56 });
    }

    #[test]
    fn balancing_trace_example() {
        let tr = balance_trace(&bits("000111111100100"), 6).unwrap();
        let runs: Vec<Vec<usize>> = tr.steps.iter().map(|s| s.runs().to_vec()).collect();
        assert_eq!(
            runs,
            vec![
                vec![3, 7, 2, 1, 2],
                vec![3, 6, 3, 1, 2],
                vec![3, 5, 4, 1, 2],
                vec![3, 5, 3, 2, 2],
                vec![3, 4, 4, 2, 2],
                vec![3, 4, 3, 3, 2],
                vec![3, 3, 3, 3, 3],
            ]
        );
        assert_eq!(tr.potentials(), vec![67, 59, 55, 51, 49, 47, 45]);
        assert_eq!(tr.counts::<SmallCount>(), vec![43, 56, 63, 85, 92, 102, 105]);
        assert_eq!(tr.last().to_bits(), "000111000111000");
        assert!(verify_monotone::<SmallCount>(&tr).passed());
    }

    #[test]
    fn unbalancing_trace_example() {
        let tr = unbalance_trace(&bits("0011100111100"), 5);
        let shown: Vec<String> = tr.steps.iter().map(|s| s.to_bits()).collect();
        assert_eq!(
            shown,
            ["0011100111100", "0011101111100", "0011101111110", "0011011111110", "0010111111110", "0101111111110"]
        );
        assert_eq!(tr.counts::<SmallCount>(), vec![60, 38, 26, 20, 14, 10]);
        let rec = tr.final_bound.as_ref().unwrap();
        assert_eq!(rec.string.to_bits(), "1111111110101");
        assert_eq!(rec.bound::<SmallCount>(5), 8);
        assert_eq!(count(&rec.string, 5), 8);
        assert!(verify_monotone::<SmallCount>(&tr).passed());
    }

    #[test]
    fn unbalance_trace_never_increases() {
        for n in 1..=12usize {
            for v in 0u64..(1 << n) {
                let x = RunString::from_packed(v, n).unwrap();
                for t in [1, n / 2, n.saturating_sub(2)] {
                    let tr = unbalance_trace(&x, t);
                    assert!(verify_monotone::<SmallCount>(&tr).passed(), "{x} t={t}");
                    let last = tr.last().runs();
                    assert_eq!(last.iter().filter(|&&v| v > 1).count(), usize::from(n > x.num_runs()));
                }
            }
        }
    }

    #[test]
    fn render_columns_align() {
        let tr = balance_trace(&rs(&[3, 3]), 1).unwrap();
        assert_eq!(tr.render::<Count>(), "i  X_i     runs   sum_sq  D_1\n0  000111  {3,3}  18      2\n");
    }
}
