//! Run-length representation of binary strings.

use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

/// Upper limit on the length of strings built by the family generators.
pub const MAX_GENERATED_LEN: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Bit {
    Zero,
    One,
}

impl Bit {
    pub fn flip(self) -> Bit {
        match self {
            Bit::Zero => Bit::One,
            Bit::One => Bit::Zero,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Bit::Zero => '0',
            Bit::One => '1',
        }
    }

    pub fn from_char(c: char) -> Option<Bit> {
        match c {
            '0' => Some(Bit::Zero),
            '1' => Some(Bit::One),
            _ => None,
        }
    }
}

/// A nonempty binary string stored as its first symbol and the lengths of
/// its maximal runs. Adjacent runs alternate symbols.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RunString {
    first_bit: Bit,
    runs: Vec<usize>,
}

impl RunString {
    /// Builds a string from explicit run lengths. Every length must be positive.
    pub fn from_runs(first_bit: Bit, runs: Vec<usize>) -> Result<RunString> {
        if runs.is_empty() {
            return Err(Error::Empty);
        }
        if let Some(index) = runs.iter().position(|&x| x == 0) {
            return Err(Error::ZeroRun { index });
        }
        Ok(RunString { first_bit, runs })
    }

    pub fn from_bits(bits: &str) -> Result<RunString> {
        let mut chars = bits.chars().enumerate();
        let (_, c0) = chars.next().ok_or(Error::Empty)?;
        let first_bit = Bit::from_char(c0).ok_or(Error::InvalidSymbol { symbol: c0, position: 0 })?;
        let mut runs = vec![1usize];
        let mut cur = first_bit;
        for (position, c) in chars {
            let b = Bit::from_char(c).ok_or(Error::InvalidSymbol { symbol: c, position })?;
            if b == cur {
                *runs.last_mut().unwrap() += 1;
            } else {
                runs.push(1);
                cur = b;
            }
        }
        Ok(RunString { first_bit, runs })
    }

    /// Builds a string from a slice of symbols.
    pub fn from_symbols(bits: &[Bit]) -> Result<RunString> {
        let (&first_bit, rest) = bits.split_first().ok_or(Error::Empty)?;
        let mut runs = vec![1usize];
        let mut cur = first_bit;
        for &b in rest {
            if b == cur {
                *runs.last_mut().unwrap() += 1;
            } else {
                runs.push(1);
                cur = b;
            }
        }
        Ok(RunString { first_bit, runs })
    }

    pub fn to_bits(&self) -> String {
        let mut s = String::with_capacity(self.len());
        for (i, &x) in self.runs.iter().enumerate() {
            let c = self.run_symbol(i).as_char();
            s.extend(std::iter::repeat_n(c, x));
        }
        s
    }

    pub fn symbols(&self) -> Vec<Bit> {
        let mut v = Vec::with_capacity(self.len());
        for (i, &x) in self.runs.iter().enumerate() {
            v.extend(std::iter::repeat_n(self.run_symbol(i), x));
        }
        v
    }

    pub fn first_bit(&self) -> Bit {
        self.first_bit
    }

    pub fn runs(&self) -> &[usize] {
        &self.runs
    }

    pub fn len(&self) -> usize {
        self.runs.iter().sum()
    }

    /// Always false: a `RunString` has at least one run.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn num_runs(&self) -> usize {
        self.runs.len()
    }

    /// Symbol of run `index` (0-based).
    pub fn run_symbol(&self, index: usize) -> Bit {
        if index.is_multiple_of(2) {
            self.first_bit
        } else {
            self.first_bit.flip()
        }
    }

    pub fn last_bit(&self) -> Bit {
        self.run_symbol(self.runs.len() - 1)
    }

    /// Sum of squared run lengths.
    pub fn sum_of_squares(&self) -> u64 {
        self.runs.iter().map(|&x| (x as u64) * (x as u64)).sum()
    }

    pub fn complement(&self) -> RunString {
        RunString { first_bit: self.first_bit.flip(), runs: self.runs.clone() }
    }

    pub fn reverse(&self) -> RunString {
        let mut runs = self.runs.clone();
        runs.reverse();
        RunString { first_bit: self.last_bit(), runs }
    }

    /// True when every run has length one.
    pub fn is_cyclic(&self) -> bool {
        self.runs.iter().all(|&x| x == 1)
    }

    /// Packs the string into the low bits of a `u64`, first symbol in the
    /// most significant used position. `None` when longer than 64.
    pub fn to_packed(&self) -> Option<u64> {
        if self.len() > 64 {
            return None;
        }
        Some(self.symbols().iter().fold(0u64, |acc, &b| (acc << 1) | (b == Bit::One) as u64))
    }

    pub fn from_packed(value: u64, len: usize) -> Result<RunString> {
        if len == 0 {
            return Err(Error::Empty);
        }
        if len > 64 {
            return Err(Error::InvalidParameters(format!("packed length {len} exceeds 64")));
        }
        let bits: Vec<Bit> = (0..len).rev().map(|i| if (value >> i) & 1 == 1 { Bit::One } else { Bit::Zero }).collect();
        RunString::from_symbols(&bits)
    }

    /// `B_{r,k}`: `r` runs of length `k`, starting with `0`.
    pub fn balanced(r: usize, k: usize) -> Result<RunString> {
        if r == 0 || k == 0 {
            return Err(Error::InvalidParameters(format!("balanced string needs r, k >= 1 (got r={r}, k={k})")));
        }
        check_generated_len(r.saturating_mul(k))?;
        Ok(RunString { first_bit: Bit::Zero, runs: vec![k; r] })
    }

    /// `B'_{r,k}`: the balanced string with its first symbol removed.
    pub fn balanced_prime(r: usize, k: usize) -> Result<RunString> {
        if r == 0 || k == 0 || (r == 1 && k == 1) {
            return Err(Error::InvalidParameters(format!("B'_{{r,k}} is empty or undefined for r={r}, k={k}")));
        }
        check_generated_len(r.saturating_mul(k))?;
        if k >= 2 {
            let mut runs = vec![k; r];
            runs[0] = k - 1;
            Ok(RunString { first_bit: Bit::Zero, runs })
        } else {
            // the leading run vanishes
            Ok(RunString { first_bit: Bit::One, runs: vec![1; r - 1] })
        }
    }

    /// `U^{(i)}_{n,r}`: `r` runs of length one except run `i` (1-based),
    /// which has length `n - r + 1`.
    pub fn unbalanced(n: usize, r: usize, i: usize) -> Result<RunString> {
        if r == 0 || r > n {
            return Err(Error::InvalidParameters(format!("unbalanced string needs 1 <= r <= n (got n={n}, r={r})")));
        }
        if i == 0 || i > r {
            return Err(Error::InvalidParameters(format!("pivot run {i} out of range 1..={r}")));
        }
        check_generated_len(n)?;
        let mut runs = vec![1; r];
        runs[i - 1] = n - r + 1;
        Ok(RunString { first_bit: Bit::Zero, runs })
    }

    /// `C_n`: the alternating string `0101...` of length `n`.
    pub fn cyclic(n: usize) -> Result<RunString> {
        if n == 0 {
            return Err(Error::Empty);
        }
        check_generated_len(n)?;
        Ok(RunString { first_bit: Bit::Zero, runs: vec![1; n] })
    }
}

fn check_generated_len(len: usize) -> Result<()> {
    if len > MAX_GENERATED_LEN {
        Err(Error::TooLong { len, limit: MAX_GENERATED_LEN })
    } else {
        Ok(())
    }
}

impl fmt::Display for RunString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_bits())
    }
}

/// Accepts either a literal bit string (`"0011"`) or the run form
/// `FIRSTBIT:len,len,...` (`"0:2,2"`).
impl FromStr for RunString {
    type Err = Error;

    fn from_str(s: &str) -> Result<RunString> {
        let s = s.trim();
        let Some((head, tail)) = s.split_once(':') else {
            return RunString::from_bits(s);
        };
        let syntax = |reason: &str| Error::RunSyntax { input: s.to_string(), reason: reason.to_string() };
        let first_bit = match head.trim() {
            "0" => Bit::Zero,
            "1" => Bit::One,
            _ => return Err(syntax("first bit must be 0 or 1")),
        };
        let runs = tail
            .split(',')
            .map(|p| p.trim().parse::<usize>().map_err(|_| syntax("run lengths must be positive integers")))
            .collect::<Result<Vec<_>>>()?;
        RunString::from_runs(first_bit, runs)
    }
}
