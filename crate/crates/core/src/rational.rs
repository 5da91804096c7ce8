//! The scalar field: arbitrary-precision rationals.
//!
//! Values are always reduced with a positive denominator. They serialize as
//! `"p/q"`, with `/q` omitted when `q = 1`.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

pub fn parse(s: &str) -> Result<Rational> {
    let t = s.trim();
    // BigRational::from_str accepts "p" and "p/q"; reject q = 0 ourselves.
    if let Some((_, d)) = t.split_once('/') {
        if BigInt::from_str(d.trim()).map(|d| d.is_zero()).unwrap_or(true) {
            return Err(Error::BadRational(s.to_string()));
        }
    }
    Rational::from_str(t).map_err(|_| Error::BadRational(s.to_string()))
}

pub fn to_string(r: &Rational) -> String {
    r.to_string()
}

/// `(-1)^e` as a rational.
pub fn sign(e: usize) -> Rational {
    if e.is_multiple_of(2) {
        one()
    } else {
        -one()
    }
}

pub fn factorial(n: usize) -> Rational {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    Rational::from_integer(acc)
}

pub fn binomial(n: u32, k: u32) -> Rational {
    if k > n {
        return zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    Rational::from_integer(acc)
}

/// Formats a coefficient in front of a non-trivial factor: `1` is elided,
/// `-1` becomes a bare sign, other values are followed by `·`.
pub fn coefficient_prefix(c: &Rational) -> (bool, String) {
    let neg = c.is_negative();
    let a = c.abs();
    if a.is_one() {
        (neg, String::new())
    } else {
        (neg, format!("{a}·"))
    }
}
