//! Scalar abstractions shared by the exact and floating-point code paths.
//!
//! Dense linear algebra is written once against [`Scalar`] and used with
//! [`Rational`] for exact work and with `f64`/`f32` for numerics.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Float, FromPrimitive, One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational number.
pub type Rational = BigRational;

/// Commutative ring operations needed by determinant expansion and matrix
/// products. Implemented by every field scalar and by rate polynomials.
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
}

impl<T> Ring for T where
    T: Clone
        + PartialEq
        + Debug
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Neg<Output = T>
{
}

/// An ordered field. Elimination pivots on the entry of largest magnitude,
/// which is partial pivoting for floats and harmless for rationals.
pub trait Scalar: Ring + Signed + PartialOrd {}

impl<T> Scalar for T where T: Ring + Signed + PartialOrd {}

/// Floating-point scalars used by the numerics module.
pub trait FloatScalar: Scalar + Float + FromPrimitive + Copy {
    fn from_rational(r: &Rational) -> Self {
        Self::from_f64(r.to_f64().expect("rational out of f64 range"))
            .expect("value out of range for float type")
    }
}

impl FloatScalar for f32 {}
impl FloatScalar for f64 {}

/// Shorthand for `p/q`.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Shorthand for an integer-valued rational.
pub fn int(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

/// Formats a rational as `p` or `p/q`.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p`, `-p` or `p/q` (q nonzero).
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.parse().ok()?;
            let q: BigInt = q.parse().ok()?;
            if q.is_zero() || q.is_negative() {
                return None;
            }
            Some(Rational::new(p, q))
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

/// `base^exp` for an integer exponent, exact.
pub fn pow_int(base: &Rational, exp: &BigInt) -> Rational {
    let e = exp.to_i32().expect("exponent too large");
    if e >= 0 {
        num_traits::pow(base.clone(), e as usize)
    } else {
        num_traits::pow(base.recip(), (-e) as usize)
    }
}

/// Least common multiple of the denominators of `values` (1 for an empty slice).
pub fn denominator_lcm<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_text_round_trip() {
        for (p, q) in [(1, 2), (-3, 2), (5, 1), (0, 1), (-7, 3)] {
            let r = rat(p, q);
            assert_eq!(parse_rational(&format_rational(&r)), Some(r));
        }
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("1/-2"), None);
        assert_eq!(parse_rational("x"), None);
        assert_eq!(format_rational(&rat(6, 4)), "3/2");
    }

    #[test]
    fn integer_powers() {
        assert_eq!(pow_int(&rat(2, 3), &BigInt::from(3)), rat(8, 27));
        assert_eq!(pow_int(&rat(2, 3), &BigInt::from(-2)), rat(9, 4));
        assert_eq!(pow_int(&rat(2, 3), &BigInt::from(0)), int(1));
    }

    #[test]
    fn float_conversion() {
        assert_eq!(f64::from_rational(&rat(1, 4)), 0.25);
        assert_eq!(f32::from_rational(&rat(-3, 2)), -1.5f32);
    }
}
