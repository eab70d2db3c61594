//! Scalar abstraction for exact integer arithmetic.
//!
//! Every routine that only needs `+ - * / %` and comparisons is written
//! against [`Scalar`], so the same code runs on `u64` for fast exhaustive
//! scans and on [`BigInt`](num_bigint::BigInt) when values outgrow machine
//! words (Fibonacci bases beyond `F_90`, Pell coefficients, ...).

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::{Integer, Roots};
use num_traits::{FromPrimitive, ToPrimitive};

/// An exact integer type usable as a digit, a base, or a value.
///
/// Primitive types are only safe while every intermediate stays in range;
/// the sum of squared digits of a three-digit number is below `3·b²`.
pub trait Scalar:
    Integer + Roots + Clone + Hash + Debug + Display + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    fn from_u64_exact(v: u64) -> Self {
        Self::from_u64(v).expect("u64 literal fits in the scalar type")
    }

    fn two() -> Self {
        Self::one() + Self::one()
    }

    fn square(&self) -> Self {
        self.clone() * self.clone()
    }
}

impl<T> Scalar for T where
    T: Integer
        + Roots
        + Clone
        + Hash
        + Debug
        + Display
        + FromPrimitive
        + ToPrimitive
        + Send
        + Sync
        + 'static
{
}

/// Converts between scalar types through the `i128` range, falling back to
/// decimal text for values that do not fit.
pub fn convert<A: Scalar, B: Scalar + std::str::FromStr>(a: &A) -> Option<B> {
    if let Some(v) = a.to_i128() {
        return B::from_i128(v);
    }
    a.to_string().parse().ok()
}
