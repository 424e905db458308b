//! Rational piecewise-linear lifts of circle homeomorphisms.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::num::rational::{ceil, floor, fmt_q, frac, qi, round_down, round_up, Q};
use crate::num::Interval;

/// Periods tried when looking for a periodic orbit.
pub const PERIOD_CAP: i64 = 32;

/// Iterations of `g^PERIOD_CAP` allowed when refining an irrational
/// translation number.
pub const ORBIT_BUDGET: u64 = 200_000;

const ORBIT_BITS: u32 = 64;

/// A strictly increasing map with `g(x + 1) = g(x) + 1`, linear between the
/// breakpoints.
///
/// Canonical form: breakpoints sorted in `[0, 1)`, `0` always present, no
/// breakpoint other than `0` lies on the line through its neighbours. Two
/// maps are equal iff their canonical forms are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PlMap {
    pts: Vec<(Q, Q)>,
}

impl PlMap {
    pub fn new(mut pts: Vec<(Q, Q)>) -> Result<PlMap> {
        let bad = |m: &str| Err(Error::InvalidElement(format!("piecewise-linear map: {m}")));
        if pts.is_empty() {
            return bad("no breakpoints");
        }
        pts.sort_by(|a, b| a.0.cmp(&b.0));
        for w in pts.windows(2) {
            if w[0].0 == w[1].0 {
                return bad("repeated breakpoint");
            }
            if w[0].1 >= w[1].1 {
                return bad("values not strictly increasing");
            }
        }
        if pts[0].0.is_negative() || pts[pts.len() - 1].0 >= Q::one() {
            return bad("breakpoint outside [0, 1)");
        }
        let (x0, y0) = pts[0].clone();
        let (xl, yl) = pts[pts.len() - 1].clone();
        if yl >= &y0 + Q::one() {
            return bad("values do not fit in one period");
        }
        if !x0.is_zero() {
            // value at 1 on the wrap-around segment, shifted back by one
            let x1 = &x0 + Q::one();
            let y1 = &y0 + Q::one();
            let at1 = &yl + (Q::one() - &xl) * (&y1 - &yl) / (&x1 - &xl);
            pts.insert(0, (Q::zero(), at1 - Q::one()));
        }
        let y0 = pts[0].1.clone();
        let mut out: Vec<(Q, Q)> = vec![pts[0].clone()];
        for i in 1..pts.len() {
            let next = pts.get(i + 1).cloned().unwrap_or((Q::one(), &y0 + Q::one()));
            let prev = out.last().unwrap();
            let cur = &pts[i];
            let s1 = (&cur.1 - &prev.1) / (&cur.0 - &prev.0);
            let s2 = (&next.1 - &cur.1) / (&next.0 - &cur.0);
            if s1 != s2 {
                out.push(cur.clone());
            }
        }
        Ok(PlMap { pts: out })
    }

    pub fn translation(t: Q) -> PlMap {
        PlMap { pts: vec![(Q::zero(), t)] }
    }

    pub fn identity() -> PlMap {
        PlMap::translation(Q::zero())
    }

    pub fn points(&self) -> &[(Q, Q)] {
        &self.pts
    }

    pub fn as_translation(&self) -> Option<&Q> {
        (self.pts.len() == 1).then(|| &self.pts[0].1)
    }

    pub fn is_identity(&self) -> bool {
        self.as_translation().is_some_and(|t| t.is_zero())
    }

    fn segment_end(&self, i: usize) -> (Q, Q) {
        self.pts.get(i + 1).cloned().unwrap_or((Q::one(), &self.pts[0].1 + Q::one()))
    }

    pub fn eval(&self, x: &Q) -> Q {
        let k = floor(x);
        let s = x - Q::from_integer(k.clone());
        let i = self.pts.partition_point(|p| p.0 <= s) - 1;
        let (x0, y0) = &self.pts[i];
        let (x1, y1) = self.segment_end(i);
        y0 + (&s - x0) * (y1 - y0) / (x1 - x0) + Q::from_integer(k)
    }

    pub fn inverse(&self) -> PlMap {
        let pts = self
            .pts
            .iter()
            .map(|(x, y)| {
                let k = Q::from_integer(floor(y));
                (y - &k, x - &k)
            })
            .collect();
        PlMap::new(pts).expect("inverse of a valid map is valid")
    }

    /// `self o h`.
    pub fn compose(&self, h: &PlMap) -> PlMap {
        if let (Some(s), Some(t)) = (self.as_translation(), h.as_translation()) {
            return PlMap::translation(s + t);
        }
        let hinv = h.inverse();
        let h0 = &h.pts[0].1;
        let mut xs: Vec<Q> = h.pts.iter().map(|p| p.0.clone()).collect();
        for (b, _) in &self.pts {
            let n = Q::from_integer(ceil(&(h0 - b)));
            xs.push(frac(&hinv.eval(&(b + n))));
        }
        xs.sort();
        xs.dedup();
        let pts = xs.into_iter().map(|x| {
            let y = self.eval(&h.eval(&x));
            (x, y)
        });
        PlMap::new(pts.collect()).expect("composition of valid maps is valid")
    }

    pub fn power(&self, k: i64) -> PlMap {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut sq = base;
        let mut acc = PlMap::identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.compose(&sq);
            }
        }
        acc
    }

    /// `(min, argmin, max, argmax)` of `g(x) - x`.
    pub fn displacement_range(&self) -> (Q, Q, Q, Q) {
        let mut lo = (&self.pts[0].1 - &self.pts[0].0, self.pts[0].0.clone());
        let mut hi = lo.clone();
        for (x, y) in &self.pts[1..] {
            let d = y - x;
            if d < lo.0 {
                lo = (d.clone(), x.clone());
            }
            if d > hi.0 {
                hi = (d, x.clone());
            }
        }
        (lo.0, lo.1, hi.0, hi.1)
    }

    /// Translation number. Exact whenever a periodic orbit of period at most
    /// [`PERIOD_CAP`] exists; otherwise refined along one orbit until the
    /// width is at most `tol` or [`ORBIT_BUDGET`] is spent.
    pub fn translation_number(&self, tol: &Q) -> Interval {
        if let Some(t) = self.as_translation() {
            return Interval::point(t.clone());
        }
        let mut acc: Option<Interval> = None;
        let mut p = PlMap::identity();
        for n in 1..=PERIOD_CAP {
            p = p.compose(self);
            let (m, _, mx, _) = p.displacement_range();
            let qn = qi(n);
            let c = Q::from_integer(ceil(&m));
            if c <= mx {
                // g^n(x) = x + c somewhere, a periodic orbit
                return Interval::point(c / qn);
            }
            let iv = Interval::new(m / &qn, mx / &qn);
            let a = match acc {
                None => iv,
                Some(a) => a.intersect(&iv).expect("enclosures of the same number"),
            };
            if &a.width() <= tol {
                return a;
            }
            acc = Some(a);
        }
        let mut acc = acc.expect("PERIOD_CAP >= 1");
        let step = p;
        let mut lo = Q::zero();
        let mut hi = Q::zero();
        for j in 1..=ORBIT_BUDGET {
            lo = round_down(&step.eval(&lo), ORBIT_BITS);
            hi = round_up(&step.eval(&hi), ORBIT_BITS);
            if j % 64 == 0 || j == ORBIT_BUDGET {
                let n = qi(j as i64 * PERIOD_CAP);
                let iv = Interval::new((&lo - Q::one()) / &n, (&hi + Q::one()) / &n);
                if let Some(a) = acc.intersect(&iv) {
                    acc = a;
                }
                if &acc.width() <= tol {
                    return acc;
                }
            }
        }
        log::warn!("translation number width {} above tolerance", acc.width());
        acc
    }
}

impl fmt::Display for PlMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "pl: [")?;
        for (i, (x, y)) in self.pts.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({}, {})", fmt_q(x), fmt_q(y))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::rational::q;

    fn bump() -> PlMap {
        PlMap::new(vec![(q(0, 1), q(0, 1)), (q(1, 2), q(1, 4))]).unwrap()
    }

    #[test]
    fn canonical_form_inserts_zero_and_drops_collinear_points() {
        let g = PlMap::new(vec![(q(1, 2), q(3, 4))]).unwrap();
        assert_eq!(g, PlMap::translation(q(1, 4)));
        let g = PlMap::new(vec![(q(1, 4), q(1, 4)), (q(3, 4), q(1, 2))]).unwrap();
        assert_eq!(g.points()[0].0, q(0, 1));
        assert!(PlMap::new(vec![(q(0, 1), q(0, 1)), (q(1, 2), q(0, 1))]).is_err());
        assert!(PlMap::new(vec![(q(0, 1), q(0, 1)), (q(1, 2), q(1, 1))]).is_err());
    }

    #[test]
    fn evaluation_is_periodic() {
        let g = bump();
        assert_eq!(g.eval(&q(1, 4)), q(1, 8));
        assert_eq!(g.eval(&q(-3, 4)), q(1, 8) - qi(1));
        assert_eq!(g.eval(&q(3, 4)), q(5, 8));
    }

    #[test]
    fn inverse_and_composition() {
        let g = bump().compose(&PlMap::translation(q(1, 3)));
        let gi = g.inverse();
        assert!(g.compose(&gi).is_identity());
        assert!(gi.compose(&g).is_identity());
        for x in [q(0, 1), q(1, 7), q(5, 6), q(-2, 3)] {
            assert_eq!(gi.eval(&g.eval(&x)), x);
        }
        assert_eq!(g.power(3), g.compose(&g).compose(&g));
        assert_eq!(g.power(-2), gi.compose(&gi));
    }

    #[test]
    fn translation_numbers() {
        let tol = q(1, 1_000_000);
        assert_eq!(PlMap::translation(q(1, 2)).translation_number(&tol).exact(), Some(&q(1, 2)));
        assert_eq!(bump().translation_number(&tol).exact(), Some(&q(0, 1)));
        let g = bump().compose(&PlMap::translation(q(1, 2)));
        let t = g.translation_number(&tol);
        assert!(t.width() <= tol);
    }
}
