//! Exact subsequence counts of binary strings under deletions, together with
//! the extremal bounds that depend only on length, number of runs and number
//! of deletions.
//!
//! The counting routines are generic over the integer type used for results
//! (see [`CountNum`]). [`Count`] (arbitrary precision) is the default choice;
//! [`SmallCount`] is a fast fixed-width alternative for exhaustive checks on
//! short strings where no value can overflow.
//!
//! ```
//! use runsubseq::{exact, Count, RunString};
//!
//! let x: RunString = "0:3,7,2,1,2".parse().unwrap();
//! let c: Count = exact::count_subsequences(&x, 6);
//! assert_eq!(c, Count::from(43u32));
//! ```

pub mod balanced;
pub mod bounds;
mod error;
pub mod exact;
pub mod num;
pub mod patterns;
pub mod runstring;
pub mod transforms;
pub mod unbalanced;

pub use error::{Error, Result};
pub use num::CountNum;
pub use runstring::{Bit, RunString};

/// Arbitrary-precision nonnegative count.
pub type Count = num_bigint::BigUint;

/// Fixed-width count for small inputs. Overflows past `2^64`.
pub type SmallCount = u64;

/// Exact rational used for ratio reports.
pub type Ratio = num_rational::BigRational;
