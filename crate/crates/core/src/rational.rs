//! Exact rationals and their text forms.

use num::{BigInt, BigRational, One, Signed, Zero};
use std::str::FromStr;

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `p`, `p/q` or a finite decimal such as `-1.25`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = || Error::Parse {
        line: 0,
        message: format!("invalid rational `{text}`"),
    };
    let t = text.trim();
    if t.is_empty() {
        return Err(bad());
    }
    if let Some((p, q)) = t.split_once('/') {
        let p = parse_int(p).ok_or_else(bad)?;
        let q = parse_int(q).ok_or_else(bad)?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(p, q));
    }
    if let Some((whole, frac)) = t.split_once('.') {
        let (neg, whole) = match whole.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, whole.strip_prefix('+').unwrap_or(whole)),
        };
        if frac.is_empty() && whole.is_empty()
            || !whole.chars().all(|c| c.is_ascii_digit())
            || !frac.chars().all(|c| c.is_ascii_digit())
            || frac.len() > 64
        {
            return Err(bad());
        }
        let digits = format!("{whole}{frac}");
        let digits = if digits.is_empty() { "0".to_string() } else { digits };
        let num = BigInt::from_str(&digits).map_err(|_| bad())?;
        let den = num::pow(BigInt::from(10), frac.len());
        let r = Rational::new(num, den);
        return Ok(if neg { -r } else { r });
    }
    parse_int(t).map(Rational::from_integer).ok_or_else(bad)
}

fn parse_int(s: &str) -> Option<BigInt> {
    let s = s.trim();
    let body = s.strip_prefix(['-', '+']).unwrap_or(s);
    if body.is_empty() || body.len() > 4096 || !body.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    BigInt::from_str(s.strip_prefix('+').unwrap_or(s)).ok()
}

/// `p/q` in lowest terms, or `p` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Decimal form when the value has a terminating expansion.
pub fn format_decimal(r: &Rational) -> Option<String> {
    let mut den = r.denom().clone();
    let two = BigInt::from(2);
    let five = BigInt::from(5);
    let mut twos = 0usize;
    let mut fives = 0usize;
    while (&den % &two).is_zero() {
        den /= &two;
        twos += 1;
    }
    while (&den % &five).is_zero() {
        den /= &five;
        fives += 1;
    }
    if !den.is_one() {
        return None;
    }
    let digits = twos.max(fives);
    if digits == 0 {
        return Some(r.numer().to_string());
    }
    let scaled = (r * Rational::from_integer(num::pow(BigInt::from(10), digits))).to_integer();
    let neg = scaled.is_negative();
    let mut s = scaled.abs().to_string();
    while s.len() <= digits {
        s.insert(0, '0');
    }
    let point = s.len() - digits;
    s.insert(point, '.');
    Some(if neg { format!("-{s}") } else { s })
}

/// Least common multiple of the denominators.
pub fn denominator_lcm<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| num::integer::lcm(acc, v.denom().clone()))
}
