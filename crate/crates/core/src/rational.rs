//! Exact rational numbers.
//!
//! [`Rational`] is an arbitrary-precision fraction kept in lowest terms with a
//! positive denominator. Its `Display` form is `p/q`, or `n` for integers,
//! which is also the form accepted by [`parse_rational`].

use alloc::string::ToString;
use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

pub type Rational = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// Parses `"p/q"` or `"n"`. Decimal points and exponents are rejected.
pub fn parse_rational(s: &str) -> Result<Rational, Error> {
    let t = s.trim();
    let bad = || Error::InvalidRational(s.to_string());
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let parse_int = |x: &str| -> Result<BigInt, Error> {
        let digits = x.strip_prefix(['-', '+']).unwrap_or(x);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        BigInt::from_str(x).map_err(|_| bad())
    };
    let n = parse_int(num)?;
    let d = parse_int(den)?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

pub fn is_integer(x: &Rational) -> bool {
    x.denom().is_one()
}

/// Converts an integral rational to `i64`, if it fits.
pub fn to_i64(x: &Rational) -> Option<i64> {
    if !is_integer(x) {
        return None;
    }
    i64::try_from(x.numer()).ok()
}

pub fn abs(x: &Rational) -> Rational {
    x.abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::format;

    #[test]
    fn parses_and_prints_lowest_terms() {
        assert_eq!(parse_rational("6/4").unwrap(), rat(3, 2));
        assert_eq!(format!("{}", parse_rational("6/4").unwrap()), "3/2");
        assert_eq!(format!("{}", parse_rational("-10/5").unwrap()), "-2");
        assert_eq!(format!("{}", parse_rational("7").unwrap()), "7");
        assert_eq!(format!("{}", rat(2, -4)), "-1/2");
    }

    #[test]
    fn rejects_garbage() {
        for s in ["", "1.5", "1/0", "a/2", "1e3", "/3", "3/", "--1"] {
            assert!(parse_rational(s).is_err(), "{s}");
        }
    }

    #[test]
    fn integer_conversion() {
        assert_eq!(to_i64(&rat(8, 2)), Some(4));
        assert_eq!(to_i64(&rat(1, 2)), None);
    }
}
