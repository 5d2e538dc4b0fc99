//! Exact rational scalars.
//!
//! Every coefficient, parameter and energy in the crate is a [`Rational`],
//! an arbitrary-precision fraction kept in lowest terms with a positive
//! denominator.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p"`, `"-p"` or `"p/q"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// Renders `p/q`, or `p` when the denominator is one.
pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        if q.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Greatest integer not exceeding `q`.
pub fn floor_int(q: &Rational) -> BigInt {
    q.numer().div_floor(q.denom())
}

/// Greatest integer strictly less than `q`: `q - 1` for integers, `floor(q)` otherwise.
pub fn greatest_integer_less_than(q: &Rational) -> BigInt {
    if q.is_integer() {
        q.to_integer() - BigInt::one()
    } else {
        floor_int(q)
    }
}

/// Rising factorial `(a)_n = a (a+1) ... (a+n-1)`; `(a)_0 = 1`.
pub fn pochhammer(a: &Rational, n: usize) -> Rational {
    let mut acc = Rational::one();
    let mut term = a.clone();
    for _ in 0..n {
        acc *= &term;
        term += Rational::one();
    }
    acc
}

pub fn factorial(n: usize) -> Rational {
    pochhammer(&Rational::one(), n)
}

/// `base^exp` for a signed integer exponent. Panics on `0^negative`.
pub fn pow_i(base: &Rational, exp: i64) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..exp.unsigned_abs() {
        acc *= base;
    }
    if exp < 0 {
        acc.recip()
    } else {
        acc
    }
}

/// Converts an integral rational to `i64`, or `None` when it is fractional or too large.
pub fn as_i64(q: &Rational) -> Option<i64> {
    if q.is_integer() {
        q.to_integer().to_i64()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn greatest_integer_less_than_cases() {
        assert_eq!(greatest_integer_less_than(&int(2)), BigInt::from(1));
        assert_eq!(greatest_integer_less_than(&rat(7, 3)), BigInt::from(2));
        assert_eq!(greatest_integer_less_than(&rat(5, 2)), BigInt::from(2));
        assert_eq!(greatest_integer_less_than(&rat(-1, 2)), BigInt::from(-1));
        assert_eq!(greatest_integer_less_than(&int(0)), BigInt::from(-1));
    }

    #[test]
    fn floor_of_negative_half_integer() {
        assert_eq!(floor_int(&rat(-3, 2)), BigInt::from(-2));
        assert_eq!(floor_int(&rat(3, 2)), BigInt::from(1));
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("7/3").unwrap(), rat(7, 3));
        assert_eq!(parse_rational("-4").unwrap(), int(-4));
        assert_eq!(parse_rational("6/4").unwrap(), rat(3, 2));
        assert_eq!(format_rational(&rat(-8, 2)), "-4");
        assert_eq!(format_rational(&rat(11, 4)), "11/4");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn pochhammer_values() {
        assert_eq!(pochhammer(&int(1), 4), int(24));
        assert_eq!(pochhammer(&rat(1, 2), 2), rat(3, 4));
        assert_eq!(pochhammer(&int(-2), 3), int(0));
        assert_eq!(pochhammer(&int(5), 0), int(1));
    }

    #[test]
    fn signed_powers() {
        assert_eq!(pow_i(&int(-4), -2), rat(1, 16));
        assert_eq!(pow_i(&int(2), 3), int(8));
        assert_eq!(pow_i(&int(-4), -1), rat(-1, 4));
    }
}
