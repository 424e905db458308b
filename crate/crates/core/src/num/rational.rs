//! Small helpers around `BigRational`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational number used throughout the crate.
pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn floor(x: &Q) -> BigInt {
    x.numer().div_floor(x.denom())
}

pub fn ceil(x: &Q) -> BigInt {
    -((-x.numer()).div_floor(x.denom()))
}

pub fn floor_i64(x: &Q) -> Result<i64> {
    floor(x).to_i64().ok_or(Error::Overflow("floor"))
}

pub fn ceil_i64(x: &Q) -> Result<i64> {
    ceil(x).to_i64().ok_or(Error::Overflow("ceil"))
}

/// Fractional part in `[0, 1)`.
pub fn frac(x: &Q) -> Q {
    x - Q::from_integer(floor(x))
}

pub fn to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Parses `p`, `-p`, `p/q` (surrounding whitespace allowed).
pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Q::new(n, d))
}

/// Canonical `p` or `p/q` text form.
pub fn fmt_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Rounds down to a multiple of `2^-bits`.
pub fn round_down(x: &Q, bits: u32) -> Q {
    if x.denom().bits() <= bits as u64 {
        return x.clone();
    }
    let scale = BigInt::one() << bits;
    Q::new(floor(&(x * Q::from_integer(scale.clone()))), scale)
}

/// Rounds up to a multiple of `2^-bits`.
pub fn round_up(x: &Q, bits: u32) -> Q {
    if x.denom().bits() <= bits as u64 {
        return x.clone();
    }
    let scale = BigInt::one() << bits;
    Q::new(ceil(&(x * Q::from_integer(scale.clone()))), scale)
}

pub fn abs(x: &Q) -> Q {
    x.abs()
}

/// Rational approximation of a finite float (exact binary value).
pub fn from_f64(x: f64) -> Q {
    Q::from_float(x).unwrap_or_else(Q::zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floor_ceil_of_negative_fractions() {
        assert_eq!(floor(&q(-1, 2)), BigInt::from(-1));
        assert_eq!(ceil(&q(-1, 2)), BigInt::from(0));
        assert_eq!(ceil(&q(3, 2)), BigInt::from(2));
        assert_eq!(floor(&q(4, 2)), BigInt::from(2));
        assert_eq!(frac(&q(-1, 4)), q(3, 4));
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_q(" -3/6 ").unwrap(), q(-1, 2));
        assert_eq!(fmt_q(&parse_q("4/2").unwrap()), "2");
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("x").is_err());
    }

    #[test]
    fn dyadic_rounding_brackets() {
        let x = q(1, 3);
        assert!(round_down(&x, 20) <= x && x <= round_up(&x, 20));
        assert!(&round_up(&x, 20) - &round_down(&x, 20) <= q(1, 1 << 19));
    }
}
