//! Scalar abstraction for counts.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::{BigUint, ToBigUint};
use num_traits::{CheckedSub, FromPrimitive, Num};

/// Nonnegative integer type able to hold subsequence and pattern counts.
///
/// Implemented for every unsigned primitive and for [`BigUint`]. All the
/// counting code in this crate is written against this trait; fixed-width
/// instantiations panic (debug) or wrap (release) on overflow, so they are
/// only meant for inputs whose counts are known to be small.
pub trait CountNum:
    Clone + Debug + Display + Ord + Hash + Num + FromPrimitive + CheckedSub + ToBigUint + Send + Sync
{
    fn from_count(v: usize) -> Self {
        <Self as FromPrimitive>::from_usize(v).expect("count does not fit the scalar type")
    }

    fn to_big(&self) -> BigUint {
        self.to_biguint().expect("counts are nonnegative")
    }
}

impl<T> CountNum for T where
    T: Clone + Debug + Display + Ord + Hash + Num + FromPrimitive + CheckedSub + ToBigUint + Send + Sync
{
}

/// Sum of signed terms kept as separate positive and negative parts, so an
/// unsigned scalar can evaluate inclusion-exclusion formulas.
#[derive(Debug, Clone)]
pub(crate) struct SignedSum<C> {
    pos: C,
    neg: C,
}

impl<C: CountNum> SignedSum<C> {
    pub(crate) fn new() -> Self {
        SignedSum { pos: C::zero(), neg: C::zero() }
    }

    pub(crate) fn add(&mut self, term: C, negative: bool) {
        if negative {
            self.neg = std::mem::replace(&mut self.neg, C::zero()) + term;
        } else {
            self.pos = std::mem::replace(&mut self.pos, C::zero()) + term;
        }
    }

    /// Panics if the total is negative.
    pub(crate) fn finish(self) -> C {
        self.pos.checked_sub(&self.neg).expect("inclusion-exclusion sum went negative")
    }
}

/// Approximate base-2 logarithm of a big integer. Returns `-inf` for zero.
pub fn log2_big(v: &BigUint) -> f64 {
    let bits = v.bits();
    if bits == 0 {
        return f64::NEG_INFINITY;
    }
    if bits <= 64 {
        let x = v.iter_u64_digits().next().unwrap_or(0);
        return (x as f64).log2();
    }
    let shift = bits - 64;
    let top: BigUint = v >> shift;
    let x = top.iter_u64_digits().next().unwrap_or(0);
    (x as f64).log2() + shift as f64
}
