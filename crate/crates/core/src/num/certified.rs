//! Certified enclosures of `atan`, `pi` and `arccos` for rational arguments.
//!
//! Series are summed in fixed point with `PREC` fractional bits and an
//! explicit ulp error budget, then returned as rational intervals.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::interval::Interval;
use super::rational::{floor, q, Q};

const PREC: u32 = 192;

fn scale() -> BigInt {
    BigInt::one() << PREC
}

fn from_fixed(x: &BigInt) -> Q {
    Q::new(x.clone(), scale())
}

/// Alternating series for `atan(x)`, `x = X / 2^PREC`, `|x| <= 1/2`.
/// Returns the sum and an error bound, both in ulps.
fn atan_series(x: &BigInt) -> (BigInt, BigInt) {
    let x2 = (x * x) >> PREC;
    let mut term = x.clone();
    let mut sum = BigInt::zero();
    let mut k: u64 = 0;
    loop {
        let t = &term / BigInt::from(2 * k + 1);
        if k.is_multiple_of(2) {
            sum += t;
        } else {
            sum -= t;
        }
        if term.is_zero() {
            break;
        }
        term = (&term * &x2) >> PREC;
        k += 1;
    }
    let err = BigInt::from(4 * (k + 2) + 8);
    (sum, err)
}

/// Enclosure of `atan(t)` for `|t| <= 1/2`.
fn atan_small(t: &Q) -> Interval {
    if t.is_negative() {
        // shifts of negative fixed-point numbers round toward -infinity
        return -atan_small(&-t);
    }
    let scaled = t * Q::from_integer(scale());
    let lo_in = floor(&scaled);
    let hi_in = if Q::from_integer(lo_in.clone()) == scaled { lo_in.clone() } else { &lo_in + 1 };
    let (s_lo, e_lo) = atan_series(&lo_in);
    let (s_hi, e_hi) = atan_series(&hi_in);
    Interval::new(from_fixed(&(s_lo - e_lo)), from_fixed(&(s_hi + e_hi)))
}

/// Enclosure of `pi` (Machin's formula), width below `2^-180`.
pub fn pi() -> &'static Interval {
    static PI: OnceLock<Interval> = OnceLock::new();
    PI.get_or_init(|| {
        let a = atan_small(&q(1, 5));
        let b = atan_small(&q(1, 239));
        (a.scale(&q(16, 1)) - b.scale(&q(4, 1))).simplify()
    })
}

/// Enclosure of `atan(t)` for any rational `t`.
pub fn atan(t: &Q) -> Interval {
    if t.is_negative() {
        return -atan(&-t);
    }
    if t.is_zero() {
        return Interval::point(Q::zero());
    }
    let half = q(1, 2);
    if t > &Q::one() {
        // atan(t) = pi/2 - atan(1/t)
        return (pi().scale(&half) - atan(&t.recip())).simplify();
    }
    if t > &half {
        // atan(t) = pi/4 + atan((t-1)/(t+1)), argument in (-1/3, 0]
        let r = (t - Q::one()) / (t + Q::one());
        return (pi().scale(&q(1, 4)) + atan_small(&r)).simplify();
    }
    atan_small(t)
}

/// `atan` applied to the endpoints of an interval (monotone).
pub fn atan_interval(x: &Interval) -> Interval {
    Interval::new(atan(x.lo()).lo().clone(), atan(x.hi()).hi().clone())
}

/// Divides by pi and rounds outward.
pub fn over_pi(x: &Interval) -> Interval {
    x.div(pi()).expect("pi enclosure excludes zero").simplify()
}

/// Enclosure of `sqrt(s)` for `s >= 0`.
pub fn sqrt(s: &Q) -> Interval {
    assert!(!s.is_negative(), "sqrt of negative rational");
    let scaled = s * Q::from_integer(scale() * scale());
    let n = floor(&scaled);
    let r = n.sqrt();
    let lo = from_fixed(&r);
    let hi = if &r * &r == n && Q::from_integer(n.clone()) == scaled { lo.clone() } else { from_fixed(&(r + 1)) };
    Interval::new(lo, hi)
}

/// Enclosure of `arccos(s) / pi` for `-1 < s < 1`, exact for `s` in
/// `{0, 1/2, -1/2}`.
pub fn arccos_over_pi(s: &Q) -> Interval {
    assert!(s.abs() < Q::one(), "arccos argument outside (-1, 1)");
    if s.is_zero() {
        return Interval::point(q(1, 2));
    }
    if *s == q(1, 2) {
        return Interval::point(q(1, 3));
    }
    if *s == q(-1, 2) {
        return Interval::point(q(2, 3));
    }
    // arccos(s) = pi/2 - atan(s / sqrt(1 - s^2))
    let root = sqrt(&(Q::one() - s * s));
    let w = Interval::point(s.clone()).div(&root).expect("positive root");
    let theta = pi().scale(&q(1, 2)) - atan_interval(&w);
    over_pi(&theta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::rational::to_f64;

    #[test]
    fn pi_enclosure_is_tight() {
        let p = pi();
        assert!(p.width() < q(1, 1 << 60));
        let (lo, hi) = p.to_f64_pair();
        assert!(lo <= std::f64::consts::PI + 1e-15 && hi >= std::f64::consts::PI - 1e-15);
    }

    #[test]
    fn atan_matches_float_reference() {
        for (n, d) in [(1, 3), (2, 3), (7, 2), (-5, 4), (1000, 1), (1, 1)] {
            let t = q(n, d);
            let iv = atan(&t);
            let f = (n as f64 / d as f64).atan();
            assert!((iv.approx() - f).abs() < 1e-14, "atan({n}/{d})");
            assert!(iv.width() < q(1, 1 << 60));
        }
    }

    #[test]
    fn atan_one_is_quarter_pi() {
        let a = atan(&q(1, 1));
        let quarter = pi().scale(&q(1, 4));
        assert!(a.intersects(&quarter));
    }

    #[test]
    fn arccos_special_values() {
        assert_eq!(arccos_over_pi(&q(1, 2)).exact(), Some(&q(1, 3)));
        let v = arccos_over_pi(&q(3, 10));
        assert!((to_f64(&v.midpoint()) - (0.3f64).acos() / std::f64::consts::PI).abs() < 1e-14);
    }

    #[test]
    fn sqrt_of_square_is_exact() {
        assert_eq!(sqrt(&q(9, 4)).exact(), Some(&q(3, 2)));
        let r = sqrt(&q(2, 1));
        assert!(r.contains(&Q::from_float(std::f64::consts::SQRT_2).unwrap()) || r.width() < q(1, 1 << 60));
    }
}
