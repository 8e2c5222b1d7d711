//! Exact rational scalars and their textual form.
//!
//! `Rat` is an arbitrary-precision fraction, always stored reduced with a
//! positive denominator. The parser accepts `"-3"` and `"-3/7"` style
//! strings and rejects zero denominators outright.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number, the scalar type of the whole crate.
pub type Rat = num_rational::BigRational;

/// Shorthand constructor from machine integers. Panics on zero denominator;
/// intended for literals in code and tests.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Integer as a rational.
pub fn rat_int(num: i64) -> Rat {
    Rat::from_integer(BigInt::from(num))
}

/// Parse `"num"` or `"num/den"` with an optional leading minus sign.
///
/// The denominator must be a positive decimal integer; anything else
/// (whitespace, empty parts, a second slash, `1/0`) is a parse error.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    let (num_text, den_text) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let num = parse_int(num_text, true).ok_or_else(bad)?;
    let den = match den_text {
        Some(d) => parse_int(d, false).ok_or_else(bad)?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rat::new(num, den))
}

fn parse_int(s: &str, allow_sign: bool) -> Option<BigInt> {
    let digits = match s.strip_prefix('-') {
        Some(rest) if allow_sign => rest,
        Some(_) => return None,
        None => s,
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let magnitude: BigInt = digits.parse().ok()?;
    Some(if s.starts_with('-') { -magnitude } else { magnitude })
}

/// Render as `"num"` for integers, `"num/den"` otherwise.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Render as `"num/den"` unconditionally; the canonical form used in
/// fingerprint serialization.
pub fn format_rat_explicit(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}
