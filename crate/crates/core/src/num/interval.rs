//! Closed rational intervals used as certified real values.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{Signed, Zero};

use super::rational::{fmt_q, round_down, round_up, to_f64, Q};

/// Endpoint precision kept after operations that would otherwise blow up
/// denominators.
pub const INTERVAL_BITS: u32 = 160;

/// A closed interval `[lo, hi]` of rationals with `lo <= hi`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: Q,
    hi: Q,
}

impl Interval {
    pub fn new(lo: Q, hi: Q) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        Interval { lo, hi }
    }

    pub fn point(x: Q) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    /// `[center - radius, center + radius]`.
    pub fn around(center: &Q, radius: &Q) -> Self {
        Interval::new(center - radius, center + radius)
    }

    pub fn lo(&self) -> &Q {
        &self.lo
    }

    pub fn hi(&self) -> &Q {
        &self.hi
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    /// The exact value when the interval is degenerate.
    pub fn exact(&self) -> Option<&Q> {
        self.is_point().then_some(&self.lo)
    }

    pub fn width(&self) -> Q {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Q {
        (&self.lo + &self.hi) / Q::from_integer(2.into())
    }

    pub fn contains(&self, x: &Q) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn intersects(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = std::cmp::max(&self.lo, &other.lo).clone();
        let hi = std::cmp::min(&self.hi, &other.hi).clone();
        (lo <= hi).then_some(Interval { lo, hi })
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval {
            lo: std::cmp::min(&self.lo, &other.lo).clone(),
            hi: std::cmp::max(&self.hi, &other.hi).clone(),
        }
    }

    pub fn widen(&self, r: &Q) -> Interval {
        Interval::new(&self.lo - r, &self.hi + r)
    }

    pub fn scale(&self, k: &Q) -> Interval {
        let a = &self.lo * k;
        let b = &self.hi * k;
        if k.is_negative() {
            Interval { lo: b, hi: a }
        } else {
            Interval { lo: a, hi: b }
        }
    }

    /// Certainly strictly positive.
    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.hi.is_negative()
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(&Q::zero())
    }

    pub fn abs(&self) -> Interval {
        if !self.lo.is_negative() {
            self.clone()
        } else if !self.hi.is_positive() {
            -self.clone()
        } else {
            let m = std::cmp::max(-&self.lo, self.hi.clone());
            Interval::new(Q::zero(), m)
        }
    }

    /// Reciprocal; `None` when the interval contains zero.
    pub fn recip(&self) -> Option<Interval> {
        if self.contains_zero() {
            return None;
        }
        Some(Interval::new(self.hi.recip(), self.lo.recip()))
    }

    pub fn div(&self, other: &Interval) -> Option<Interval> {
        other.recip().map(|r| self.clone() * r)
    }

    /// Outward rounding to dyadic endpoints.
    pub fn simplify(&self) -> Interval {
        Interval {
            lo: round_down(&self.lo, INTERVAL_BITS),
            hi: round_up(&self.hi, INTERVAL_BITS),
        }
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (to_f64(&self.lo), to_f64(&self.hi))
    }

    pub fn approx(&self) -> f64 {
        to_f64(&self.midpoint())
    }
}

impl From<Q> for Interval {
    fn from(x: Q) -> Self {
        Interval::point(x)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_point() {
            write!(f, "{}", fmt_q(&self.lo))
        } else {
            write!(f, "[{:.12e}, {:.12e}]", to_f64(&self.lo), to_f64(&self.hi))
        }
    }
}

impl Add for Interval {
    type Output = Interval;
    fn add(self, o: Interval) -> Interval {
        Interval { lo: self.lo + o.lo, hi: self.hi + o.hi }
    }
}

impl Sub for Interval {
    type Output = Interval;
    fn sub(self, o: Interval) -> Interval {
        Interval { lo: self.lo - o.hi, hi: self.hi - o.lo }
    }
}

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval { lo: -self.hi, hi: -self.lo }
    }
}

impl Mul for Interval {
    type Output = Interval;
    fn mul(self, o: Interval) -> Interval {
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        Interval { lo, hi }
    }
}

impl<'a> Add<&'a Interval> for &'a Interval {
    type Output = Interval;
    fn add(self, o: &Interval) -> Interval {
        self.clone() + o.clone()
    }
}

impl<'a> Sub<&'a Interval> for &'a Interval {
    type Output = Interval;
    fn sub(self, o: &Interval) -> Interval {
        self.clone() - o.clone()
    }
}

impl<'a> Mul<&'a Interval> for &'a Interval {
    type Output = Interval;
    fn mul(self, o: &Interval) -> Interval {
        self.clone() * o.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::rational::q;

    #[test]
    fn arithmetic_encloses() {
        let a = Interval::new(q(-1, 2), q(1, 3));
        let b = Interval::new(q(2, 1), q(3, 1));
        let p = a.clone() * b.clone();
        assert_eq!(p, Interval::new(q(-3, 2), q(1, 1)));
        let d = a.div(&b).unwrap();
        assert!(d.contains(&q(-1, 4)));
        assert!(b.div(&a).is_none());
        assert_eq!((a.clone() - a).width(), q(5, 3));
    }

    #[test]
    fn abs_covers_sign_change() {
        assert_eq!(Interval::new(q(-2, 1), q(1, 1)).abs(), Interval::new(q(0, 1), q(2, 1)));
        assert_eq!(Interval::new(q(-2, 1), q(-1, 1)).abs(), Interval::new(q(1, 1), q(2, 1)));
    }
}
