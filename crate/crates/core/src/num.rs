//! Integer scalar abstraction.
//!
//! Every value, offset and window bound in the crate is generic over [`Int`],
//! so the same solvers run on `i32`, `i64` or `i128`. The crate root exposes
//! `i64` aliases for the common case.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{NumCast, PrimInt, Signed};

/// Signed primitive integer usable as a domain value.
pub trait Int:
    PrimInt + Signed + Integer + Hash + Debug + Display + FromStr + Default + Send + Sync + 'static
{
    /// Converts a small constant; panics if it does not fit.
    #[inline]
    fn lit(v: i64) -> Self {
        <Self as NumCast>::from(v).expect("constant out of range for scalar type")
    }

    #[inline]
    fn from_usize(v: usize) -> Self {
        <Self as NumCast>::from(v).expect("count out of range for scalar type")
    }

    /// Lossy conversion used for budget arithmetic and sizing.
    #[inline]
    fn as_i128(self) -> i128 {
        self.to_i128().unwrap_or(i128::MAX)
    }

    /// Nonnegative remainder modulo `m` (`m > 0`).
    #[inline]
    fn residue(self, m: Self) -> Self {
        self.mod_floor(&m)
    }
}

impl<T> Int for T where
    T: PrimInt
        + Signed
        + Integer
        + Hash
        + Debug
        + Display
        + FromStr
        + Default
        + Send
        + Sync
        + 'static
{
}

/// Inclusive integer range `lo..=hi` over any [`Int`].
pub(crate) fn span<T: Int>(lo: T, hi: T) -> impl Iterator<Item = T> + Clone {
    let mut next = if lo <= hi { Some(lo) } else { None };
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur < hi { Some(cur + T::one()) } else { None };
        Some(cur)
    })
}
