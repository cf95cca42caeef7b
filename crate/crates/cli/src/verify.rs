//! Randomized and exhaustive consistency suites. Exhaustive parts walk
//! lengths in increasing order, so the first counterexample reported is a
//! shortest one.

use std::collections::HashMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use runsubseq::balanced::{b_closed, BalancedClosed, BalancedRecursive};
use runsubseq::bounds::{BoundsEvaluator, BoundsReport};
use runsubseq::exact::{brute_force_counts, count_all_t, ORACLE_LEN_CAP};
use runsubseq::patterns::{pattern_count_all_t, pattern_count_balanced, pattern_sandwich_check};
use runsubseq::transforms::{balance_step, balance_step_mirrored, flip_suffix, insert_symbol, unbalance_step};
use runsubseq::unbalanced::{u_closed, u_recursive};
use runsubseq::{Bit, Count, RunString, SmallCount};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    OracleEquivalence,
    Sandwiches,
    MonotoneOps,
    RecursionVsClosed,
    Patterns,
    Extremality,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::OracleEquivalence,
        Suite::Sandwiches,
        Suite::MonotoneOps,
        Suite::RecursionVsClosed,
        Suite::Patterns,
        Suite::Extremality,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::OracleEquivalence => "oracle-equivalence",
            Suite::Sandwiches => "sandwiches",
            Suite::MonotoneOps => "monotone-ops",
            Suite::RecursionVsClosed => "recursion-vs-closed",
            Suite::Patterns => "patterns",
            Suite::Extremality => "extremality",
        }
    }
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    /// Longest string checked exhaustively.
    pub max_n: usize,
    pub seed: u64,
    /// Number of random strings drawn by the sampling suites.
    pub samples: usize,
    /// Longest random string.
    pub sample_max_n: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { max_n: 12, seed: 1, samples: 1000, sample_max_n: 18 }
    }
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: u64,
    pub counterexample: Option<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.counterexample {
            None => write!(f, "{}: pass ({} checks)", self.suite.name(), self.checks),
            Some(c) => write!(f, "{}: FAIL after {} checks\n  counterexample: {c}", self.suite.name(), self.checks),
        }
    }
}

pub fn run(suite: Suite, opts: &VerifyOptions) -> Result<SuiteReport, CliError> {
    let mut ck = Checker::default();
    match suite {
        Suite::OracleEquivalence => oracle_equivalence(&mut ck, opts)?,
        Suite::Sandwiches => sandwiches(&mut ck, opts)?,
        Suite::MonotoneOps => monotone_ops(&mut ck, opts),
        Suite::RecursionVsClosed => recursion_vs_closed(&mut ck, opts)?,
        Suite::Patterns => patterns(&mut ck, opts),
        Suite::Extremality => extremality(&mut ck, opts)?,
    }
    Ok(SuiteReport { suite, checks: ck.checks, counterexample: ck.failure })
}

#[derive(Default)]
struct Checker {
    checks: u64,
    failure: Option<String>,
}

impl Checker {
    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) -> bool {
        self.checks += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(describe());
        }
        self.failure.is_none()
    }
}

fn all_strings(n: usize) -> impl Iterator<Item = RunString> {
    (0u64..1 << n).map(move |v| RunString::from_packed(v, n).expect("n < 64"))
}

fn random_strings(opts: &VerifyOptions) -> Vec<RunString> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    (0..opts.samples)
        .map(|_| {
            let n = rng.gen_range(1..=opts.sample_max_n);
            RunString::from_packed(rng.gen::<u64>() & ((1 << n) - 1), n).expect("n < 64")
        })
        .collect()
}

fn oracle_equivalence(ck: &mut Checker, opts: &VerifyOptions) -> Result<(), CliError> {
    let max_n = opts.max_n.min(ORACLE_LEN_CAP);
    for n in 1..=max_n {
        for x in all_strings(n) {
            let dp = count_all_t::<SmallCount>(&x);
            let oracle = brute_force_counts(&x)?;
            for t in 0..=n {
                if !ck.check(dp[t] == oracle[t], || format!("x={x} t={t}: dp={} oracle={}", dp[t], oracle[t])) {
                    return Ok(());
                }
            }
        }
    }
    Ok(())
}

/// Bound rows for every `(n, r)` with `n <= max_n`, computed once.
struct BoundTable(HashMap<(usize, usize), Vec<BoundsReport<Count>>>);

impl BoundTable {
    fn get(&mut self, n: usize, r: usize) -> Result<&[BoundsReport<Count>], CliError> {
        if let std::collections::hash_map::Entry::Vacant(e) = self.0.entry((n, r)) {
            let mut eval = BoundsEvaluator::new(n, r)?;
            let rows = (0..=n).map(|t| eval.report(t, None)).collect::<Result<Vec<_>, _>>()?;
            e.insert(rows);
        }
        Ok(&self.0[&(n, r)])
    }
}

fn sandwiches(ck: &mut Checker, opts: &VerifyOptions) -> Result<(), CliError> {
    let mut table = BoundTable(HashMap::new());
    let mut one = |ck: &mut Checker, x: &RunString| -> Result<bool, CliError> {
        let rows = table.get(x.len(), x.num_runs())?;
        let counts = count_all_t::<Count>(x);
        for (row, c) in rows.iter().zip(counts) {
            let rep = BoundsReport { exact: Some(c), ..row.clone() };
            let bad = rep.violations();
            if !ck.check(bad.is_empty(), || format!("x={x} t={}: violated {}", rep.t, bad.join(", "))) {
                return Ok(false);
            }
        }
        Ok(true)
    };
    for n in 1..=opts.max_n {
        for x in all_strings(n) {
            if !one(ck, &x)? {
                return Ok(());
            }
        }
    }
    for x in random_strings(opts) {
        if !one(ck, &x)? {
            return Ok(());
        }
    }
    Ok(())
}

fn monotone_one(ck: &mut Checker, x: &RunString) -> bool {
    let n = x.len();
    let base = count_all_t::<SmallCount>(x);
    // `grows`: the count must not decrease from x to y
    let cmp = |ck: &mut Checker, y: RunString, grows: bool, op: &dyn Fn() -> String| {
        let after = count_all_t::<SmallCount>(&y);
        (0..=n).all(|t| {
            let ok = if grows { base[t] <= after[t] } else { base[t] >= after[t] };
            ck.check(ok, || format!("{} on x={x} gives {y}, t={t}: {} -> {}", op(), base[t], after[t]))
        })
    };
    for pos in 0..=n {
        for bit in [Bit::Zero, Bit::One] {
            let y = insert_symbol(x, pos, bit).expect("position in range");
            if !cmp(ck, y, true, &|| format!("insert_symbol(pos={pos}, bit={})", bit.as_char())) {
                return false;
            }
        }
    }
    for i in 0..n.saturating_sub(1) {
        if let Ok(y) = flip_suffix(x, i) {
            if !cmp(ck, y, true, &|| format!("flip_suffix(i={i})")) {
                return false;
            }
        }
    }
    let r = x.num_runs();
    for i in 0..r {
        for j in i + 1..r {
            for y in [balance_step(x, i, j), balance_step_mirrored(x, i, j)].into_iter().flatten() {
                if !cmp(ck, y, true, &|| format!("balance(i={i}, j={j})")) {
                    return false;
                }
            }
            for (g, s) in [(i, j), (j, i)] {
                if let Ok(y) = unbalance_step(x, g, s) {
                    if !cmp(ck, y, false, &|| format!("unbalance_step(grow={g}, shrink={s})")) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

fn monotone_ops(ck: &mut Checker, opts: &VerifyOptions) {
    for n in 1..=opts.max_n {
        for x in all_strings(n) {
            if !monotone_one(ck, &x) {
                return;
            }
        }
    }
    for x in random_strings(opts) {
        if !monotone_one(ck, &x) {
            return;
        }
    }
}

fn recursion_vs_closed(ck: &mut Checker, opts: &VerifyOptions) -> Result<(), CliError> {
    for k in 1..=6 {
        let mut rec = BalancedRecursive::<Count>::new(k);
        let mut closed = BalancedClosed::<Count>::new(k);
        for r in 1..=12 {
            for t in 0..=(r * k) as i64 {
                let (a, b) = (rec.b(r, t), closed.b(r, t));
                if !ck.check(a == b, || format!("b(r={r}, k={k}, t={t}): recursive={a} closed={b}")) {
                    return Ok(());
                }
            }
            if r * k <= opts.max_n.min(ORACLE_LEN_CAP) {
                let oracle = brute_force_counts(&RunString::balanced(r, k)?)?;
                for (t, o) in oracle.iter().enumerate() {
                    let c = closed.b(r, t as i64);
                    if !ck.check(c == Count::from(*o), || format!("b(r={r}, k={k}, t={t}) = {c}, oracle {o}")) {
                        return Ok(());
                    }
                }
            }
        }
    }
    for n in 3..=40 {
        for r in 3..=n {
            for t in 1..n {
                let (a, b) = (u_recursive::<Count>(n, r, t)?, u_closed::<Count>(n, r, t)?);
                if !ck.check(a == b, || format!("u(n={n}, r={r}, t={t}): recursive={a} closed={b}")) {
                    return Ok(());
                }
            }
        }
    }
    for n in 1..=opts.max_n.min(ORACLE_LEN_CAP) {
        for r in 1..=n {
            let oracle = brute_force_counts(&RunString::unbalanced(n, r, 1)?)?;
            for (t, o) in oracle.iter().enumerate() {
                let u = u_recursive::<SmallCount>(n, r, t)?;
                if !ck.check(u == *o, || format!("u(n={n}, r={r}, t={t}) = {u}, oracle {o}")) {
                    return Ok(());
                }
            }
        }
    }
    Ok(())
}

fn patterns(ck: &mut Checker, opts: &VerifyOptions) {
    for n in 1..=opts.max_n {
        for x in all_strings(n) {
            let p = pattern_count_all_t::<SmallCount>(&x);
            for t in 0..=n {
                let s = pattern_sandwich_check::<SmallCount>(&x, t);
                if !ck.check(s.holds, || format!("x={x} t={t}: {} <= {} <= {} fails", s.inner, s.exact, s.outer)) {
                    return;
                }
                if !ck.check(p[t] == p[n - t], || format!("x={x}: |P_{t}|={} but |P_{}|={}", p[t], n - t, p[n - t])) {
                    return;
                }
            }
        }
    }
    for r in 1..=10 {
        for k in 1..=5 {
            let dp = pattern_count_all_t::<Count>(&RunString::balanced(r, k).expect("r, k >= 1"));
            for (t, d) in dp.iter().enumerate() {
                let c = pattern_count_balanced::<Count>(r, k, t);
                if !ck.check(&c == d, || format!("|P_{t}(B_{{{r},{k}}})|: closed={c} dp={d}")) {
                    return;
                }
            }
        }
    }
}

fn extremality_one(
    ck: &mut Checker,
    x: &RunString,
    uppers: &mut HashMap<(usize, usize), Vec<Count>>,
) -> Result<bool, CliError> {
    let (n, r) = (x.len(), x.num_runs());
    let upper = uppers.entry((n, r)).or_insert_with(|| (0..=n).map(|t| b_closed(r, n.div_ceil(r), t as i64)).collect());
    let counts = count_all_t::<Count>(x);
    for (t, c) in counts.iter().enumerate() {
        let lo = u_recursive::<Count>(n, r, t)?;
        let hi = &upper[t];
        if !ck.check(&lo <= c && c <= hi, || format!("x={x} t={t}: need {lo} <= {c} <= {hi}")) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn extremality(ck: &mut Checker, opts: &VerifyOptions) -> Result<(), CliError> {
    let mut uppers = HashMap::new();
    for n in 1..=opts.max_n {
        for x in all_strings(n) {
            if !extremality_one(ck, &x, &mut uppers)? {
                return Ok(());
            }
        }
    }
    for x in random_strings(opts) {
        if !extremality_one(ck, &x, &mut uppers)? {
            return Ok(());
        }
    }
    Ok(())
}
