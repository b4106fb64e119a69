//! Exact rational scalars and the integer-indexed helpers built on them.
//!
//! [`Rational`] is `num_rational::BigRational`, which keeps every value in
//! lowest terms with a positive denominator. Its `Display` already renders
//! `p/q` (or `p` for integers), which is the wire format everywhere.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `num/den` in lowest terms. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn from_usize(n: usize) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"`, `"p"` or a signed variant of either. Whitespace around
/// the value is ignored; a zero denominator is rejected.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let err = || Error::ParseRational(s.to_string());
    match t.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| err())?;
            let q: BigInt = q.trim().parse().map_err(|_| err())?;
            if q.is_zero() {
                return Err(err());
            }
            Ok(Rational::new(p, q))
        }
        None => {
            let p: BigInt = t.parse().map_err(|_| err())?;
            Ok(Rational::from_integer(p))
        }
    }
}

/// Parses a comma-separated list of rationals. The empty string is the
/// empty list.
pub fn parse_rational_list(s: &str) -> Result<Vec<Rational>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(parse_rational).collect()
}

pub fn format_rational_list(v: &[Rational]) -> String {
    v.iter()
        .map(|r| r.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// Serde helper writing a rational as its `p/q` string.
pub fn serialize_rational<S: serde::Serializer>(
    r: &Rational,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(r)
}

pub fn serialize_rational_vec<S: serde::Serializer>(
    v: &[Rational],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|r| r.to_string()))
}

pub fn serialize_rational_rows<S: serde::Serializer>(
    v: &[Vec<Rational>],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(
        v.iter()
            .map(|row| row.iter().map(|r| r.to_string()).collect::<Vec<_>>()),
    )
}

/// `\frac{p}{q}` with the sign pulled out front, or the bare integer.
pub fn latex_rational(r: &Rational) -> String {
    if r.is_integer() {
        return r.to_string();
    }
    let sign = if r.is_negative() { "-" } else { "" };
    format!("{sign}\\frac{{{}}}{{{}}}", r.numer().abs(), r.denom())
}

pub fn factorial(n: usize) -> Rational {
    (1..=n).fold(Rational::one(), |acc, k| acc * from_usize(k))
}

pub fn binomial(n: usize, k: usize) -> Rational {
    if k > n {
        return Rational::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(Rational::one(), |acc, i| {
        acc * from_usize(n - i) / from_usize(i + 1)
    })
}

/// Rising factorial `(a)_k = a (a+1) ... (a+k-1)`.
pub fn pochhammer(a: &Rational, k: usize) -> Rational {
    (0..k).fold(Rational::one(), |acc, i| acc * (a + from_usize(i)))
}

/// Falling factorial `<a>_k = a (a-1) ... (a-k+1)`.
pub fn falling(a: &Rational, k: usize) -> Rational {
    (0..k).fold(Rational::one(), |acc, i| acc * (a - from_usize(i)))
}

/// Generalized binomial coefficient `C(e, k)` for a rational upper index.
pub fn binomial_rational(e: &Rational, k: usize) -> Rational {
    falling(e, k) / factorial(k)
}

/// `n! / (k_1! ... k_m!)` with no constraint that the parts sum to `n`.
pub fn multinomial(n: usize, parts: &[usize]) -> Rational {
    parts
        .iter()
        .fold(factorial(n), |acc, &k| acc / factorial(k))
}

pub fn pow(r: &Rational, k: usize) -> Rational {
    (0..k).fold(Rational::one(), |acc, _| acc * r)
}

/// True when `r` is one of `0, -1, -2, ...`.
pub fn is_nonpositive_integer(r: &Rational) -> bool {
    r.is_integer() && !r.is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rational(" -4 ").unwrap(), int(-4));
        assert_eq!(parse_rational("-2/-4").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("0/5").unwrap().to_string(), "0");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1.5").is_err());
    }

    #[test]
    fn display_is_lowest_terms() {
        assert_eq!(rat(6, -4).to_string(), "-3/2");
        assert_eq!(int(7).to_string(), "7");
        assert_eq!(latex_rational(&rat(-3, 2)), "-\\frac{3}{2}");
    }

    #[test]
    fn combinatorics() {
        assert_eq!(factorial(5), int(120));
        assert_eq!(binomial(6, 2), int(15));
        assert_eq!(binomial(2, 5), int(0));
        assert_eq!(pochhammer(&int(1), 3), int(6));
        assert_eq!(falling(&int(5), 2), int(20));
        assert_eq!(falling(&int(2), 3), int(0));
        assert_eq!(binomial_rational(&rat(1, 2), 2), rat(-1, 8));
        assert_eq!(multinomial(4, &[1, 1, 2]), int(12));
    }

    #[test]
    fn list_roundtrip() {
        let v = parse_rational_list("1/3, -2,0").unwrap();
        assert_eq!(format_rational_list(&v), "1/3,-2,0");
        assert!(parse_rational_list("").unwrap().is_empty());
    }
}
