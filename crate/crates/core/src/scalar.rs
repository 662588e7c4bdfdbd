//! The integer scalar every invariant is computed over.
//!
//! All Chern-number arithmetic in this crate is exact. The library is generic
//! over the integer type so callers can pick machine integers when the inputs
//! are known to be small, or [`BigInt`] when they are not. Rational values
//! (Todd genera of pencils, leading coefficients) are `Ratio<T>`.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// Exact signed integer usable as a coefficient type.
pub trait Scalar:
    Integer
    + Signed
    + Clone
    + Debug
    + Display
    + Hash
    + FromPrimitive
    + ToPrimitive
    + Into<BigInt>
    + Send
    + Sync
    + 'static
{
}

impl Scalar for i64 {}
impl Scalar for i128 {}
impl Scalar for BigInt {}

/// Converts a small constant into the scalar type.
///
/// Every supported scalar can hold an `i64`, so this never fails.
pub fn int<T: Scalar>(v: i64) -> T {
    T::from_i64(v).expect("every scalar type holds an i64")
}

/// Lifts a scalar to an arbitrary-precision integer.
pub fn big<T: Scalar>(v: &T) -> BigInt {
    v.clone().into()
}

/// Parses a decimal literal, accepting a leading `-`.
pub fn parse_int<T: Scalar>(text: &str) -> Option<T> {
    T::from_str_radix(text, 10).ok()
}

/// Returns `num / den` when the division is exact.
pub fn div_exact<T: Scalar>(num: &T, den: &T) -> Option<T> {
    let (q, r) = num.div_rem(den);
    r.is_zero().then_some(q)
}

pub(crate) fn ratio_to_string<T: Scalar>(r: &Ratio<T>) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
