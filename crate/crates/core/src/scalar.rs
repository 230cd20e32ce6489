//! Scalar traits the generic code is written against.

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, Zero};

/// Coefficient ring of a [`crate::MultiPoly`].
pub trait Scalar: Clone + PartialEq + Debug + Display + Num {
    /// `2^-k`, when the ring has it. Integer rings return `None`.
    fn inv_pow2(k: u32) -> Option<Self>;

    fn from_u64(v: u64) -> Self;

    /// The value as an integer, when it is one.
    fn to_integer(&self) -> Option<BigInt>;
}

/// Ordered field used for exact linear algebra.
pub trait Field: Scalar + Signed {}

impl<T: Scalar + Signed> Field for T {}

impl Scalar for BigRational {
    fn inv_pow2(k: u32) -> Option<Self> {
        Some(BigRational::new(BigInt::one(), BigInt::one() << k))
    }

    fn from_u64(v: u64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.to_integer())
    }
}

impl Scalar for num_rational::Rational64 {
    fn inv_pow2(k: u32) -> Option<Self> {
        (k < 62).then(|| num_rational::Rational64::new(1, 1i64 << k))
    }

    fn from_u64(v: u64) -> Self {
        num_rational::Rational64::from_integer(v as i64)
    }

    fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| BigInt::from(*self.numer()))
    }
}

impl Scalar for BigInt {
    fn inv_pow2(k: u32) -> Option<Self> {
        (k == 0).then(BigInt::one)
    }

    fn from_u64(v: u64) -> Self {
        BigInt::from(v)
    }

    fn to_integer(&self) -> Option<BigInt> {
        Some(self.clone())
    }
}

impl Scalar for i64 {
    fn inv_pow2(k: u32) -> Option<Self> {
        (k == 0).then_some(1)
    }

    fn from_u64(v: u64) -> Self {
        v as i64
    }

    fn to_integer(&self) -> Option<BigInt> {
        Some(BigInt::from(*self))
    }
}

impl Scalar for f64 {
    fn inv_pow2(k: u32) -> Option<Self> {
        Some(0.5f64.powi(k as i32))
    }

    fn from_u64(v: u64) -> Self {
        v as f64
    }

    fn to_integer(&self) -> Option<BigInt> {
        (self.fract() == 0.0 && self.is_finite()).then(|| BigInt::from(*self as i64))
    }
}

/// Parses an exact rational: an integer, `p/q`, or a finite decimal such as
/// `-1.25`. Anything else (`1e3`, `nan`, `sqrt2`) is rejected.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let t = text.trim();
    if let Some((p, q)) = t.split_once('/') {
        let p = BigInt::from_str(p.trim()).ok()?;
        let q = BigInt::from_str(q.trim()).ok()?;
        return (!q.is_zero()).then(|| BigRational::new(p, q));
    }
    if let Some((int, frac)) = t.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let negative = int.starts_with('-');
        let int_part = if int.is_empty() || int == "-" || int == "+" {
            BigInt::zero()
        } else {
            BigInt::from_str(int).ok()?
        };
        let denom = num_traits::pow(BigInt::from(10), frac.len());
        let frac_part = BigInt::from_str(frac).ok()?;
        let mag = int_part.abs() * &denom + frac_part;
        let numer = if negative { -mag } else { mag };
        return Some(BigRational::new(numer, denom));
    }
    BigInt::from_str(t).ok().map(BigRational::from_integer)
}
