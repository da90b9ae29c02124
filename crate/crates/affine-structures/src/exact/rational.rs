//! Arbitrary-precision rational scalars.
//!
//! Every computation in this crate that feeds a verdict is carried out over
//! the rationals, so results are exact: a zero is a zero, not a small float.
//! The scalar type is [`num::BigRational`], which already maintains the
//! canonical form we rely on (positive denominator, fully reduced, zero
//! stored as 0/1). This module adds the small constructors, parsers, and
//! formatters the rest of the crate shares.

use num::bigint::Sign;
use num::{BigInt, BigRational, One, Zero};
use thiserror::Error;

/// Exact scalar used throughout: arbitrary-precision rational.
pub type Rational = BigRational;

/// Errors produced when reading rationals from text.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseRationalError {
    #[error("empty rational literal")]
    Empty,
    #[error("malformed rational literal `{0}`")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// `n/d` as an exact rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as an exact rational.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p"` or `"p/q"` (optionally signed, surrounding whitespace ignored).
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    let mut parts = s.splitn(2, '/');
    let numer = parts.next().unwrap_or("").trim();
    let numer: BigInt = numer
        .parse()
        .map_err(|_| ParseRationalError::Malformed(s.to_string()))?;
    match parts.next() {
        None => Ok(Rational::from_integer(numer)),
        Some(denom) => {
            let denom: BigInt = denom
                .trim()
                .parse()
                .map_err(|_| ParseRationalError::Malformed(s.to_string()))?;
            if denom.is_zero() {
                return Err(ParseRationalError::ZeroDenominator(s.to_string()));
            }
            Ok(Rational::new(numer, denom))
        }
    }
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise (q > 0).
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Sign of a rational as -1, 0, or +1.
pub fn sign(r: &Rational) -> i32 {
    match r.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

/// Nearest `f64` to the rational (used only at float boundaries, never in verdict logic).
pub fn to_f64(r: &Rational) -> f64 {
    // Convert through high-precision division so huge numerators stay accurate.
    let numer = r.numer();
    let denom = r.denom();
    let scale: BigInt = BigInt::from(1u8) << 128;
    let scaled = numer * &scale / denom;
    let approx = big_to_f64(&scaled);
    approx / 2f64.powi(128)
}

fn big_to_f64(v: &BigInt) -> f64 {
    // BigInt -> f64 with truncation toward zero; adequate for 53-bit reads.
    let (sign, digits) = v.to_u64_digits();
    let mut acc = 0f64;
    for d in digits.iter().rev() {
        acc = acc * 1.8446744073709552e19 + *d as f64;
    }
    match sign {
        Sign::Minus => -acc,
        _ => acc,
    }
}
