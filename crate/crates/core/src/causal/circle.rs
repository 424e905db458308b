//! The line as a causal cover of the circle: `Z x = x + 1`, `zeta` the
//! identity, `L = 1`, and `D = 1` is sharp since `iota(x, y) = ceil(x - y)`.

use std::fmt;

use rand::Rng;

use super::{CausalCoverInstance, Causal};
use crate::circle::sample::Sampler;
use crate::circle::{pointwise_compare, CircleElement, ComparisonVerdict, Direction, Dominance, Kind, LiftedPoint, Witness};
use crate::error::{Error, Result};
use crate::num::rational::{ceil_i64, fmt_q, q, qi};
use crate::num::{Interval, Q};
use crate::order::CircleGroup;

/// A point of the line in the representation matching the element kind:
/// rationals for piecewise-linear maps, lifted directions for Moebius lifts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CirclePoint {
    Rational(Q),
    Lifted(LiftedPoint),
}

impl fmt::Display for CirclePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CirclePoint::Rational(x) => write!(f, "{}", fmt_q(x)),
            CirclePoint::Lifted(p) => write!(f, "{}", Witness::Lifted(p.clone())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircleCover {
    group: CircleGroup,
    spread: Q,
}

impl CircleCover {
    pub fn new(kind: Kind) -> Self {
        CircleCover { group: CircleGroup { kind }, spread: qi(1) }
    }

    /// An instance declaring another `D`; too small a value is caught by
    /// the window check in `iota`.
    pub fn with_spread(kind: Kind, spread: Q) -> Result<Self> {
        if spread <= qi(0) {
            return Err(Error::Precondition("D must be positive".into()));
        }
        Ok(CircleCover { group: CircleGroup { kind }, spread })
    }

    pub fn kind(&self) -> Kind {
        self.group.kind
    }

    /// `ceil(x - y)`, computed without the order oracle.
    pub fn iota_closed_form(&self, x: &CirclePoint, y: &CirclePoint) -> Result<i64> {
        match (x, y) {
            (CirclePoint::Rational(a), CirclePoint::Rational(b)) => ceil_i64(&(a - b)),
            (CirclePoint::Lifted(a), CirclePoint::Lifted(b)) => a.ceil_diff(b),
            _ => Err(Error::KindMismatch(format!("points {x} and {y}"))),
        }
    }

    /// The rational `x` as a point, when representable for this kind.
    pub fn point(&self, x: &Q) -> Result<CirclePoint> {
        match self.kind() {
            Kind::Pl => Ok(CirclePoint::Rational(x.clone())),
            Kind::Moebius => LiftedPoint::from_rational(x)
                .map(CirclePoint::Lifted)
                .ok_or_else(|| Error::InvalidElement(format!("{} is not an exact Moebius point", fmt_q(x)))),
        }
    }

    /// A random point with integer part in `[-3, 3]`.
    pub fn sample_point(&self, s: &mut Sampler) -> CirclePoint {
        let turn = s.rng().random_range(-3..=3);
        match self.kind() {
            Kind::Pl => {
                let d = s.rng().random_range(1..=12);
                let p = s.rng().random_range(0..d);
                CirclePoint::Rational(qi(turn) + q(p, d))
            }
            Kind::Moebius => {
                let z = s.rational(8, 6);
                let dir = if s.rng().random_bool(0.05) { Direction::horizontal() } else { Direction::from_cot(&z) };
                CirclePoint::Lifted(LiftedPoint::new(turn, dir))
            }
        }
    }

    fn check_kind(&self, g: &CircleElement) -> Result<()> {
        if g.kind() != self.kind() {
            return Err(Error::KindMismatch(format!("{} element on the {} cover", g.kind(), self.kind())));
        }
        Ok(())
    }
}

/// Whether `psi` contains `tau(g)`, with the enclosure that decided it.
/// The enclosure is refined towards `tol` only while it straddles an
/// endpoint of `psi`.
pub fn psi_contains_tau(psi: &Interval, g: &CircleElement, tol: &Q) -> Result<(bool, Interval)> {
    let mut step = q(1, 1000);
    loop {
        let step_tol = if &step > tol { step.clone() } else { tol.clone() };
        let t = g.translation_number(&step_tol)?;
        if psi.contains_interval(&t) {
            return Ok((true, t));
        }
        if !psi.intersects(&t) || &step_tol == tol {
            return Ok((false, t));
        }
        step /= qi(1000);
    }
}

impl CausalCoverInstance for CircleCover {
    type Point = CirclePoint;
    type Group = CircleGroup;

    fn group(&self) -> &CircleGroup {
        &self.group
    }

    fn deck(&self, x: &CirclePoint, n: i64) -> Result<CirclePoint> {
        match x {
            CirclePoint::Rational(a) => Ok(CirclePoint::Rational(a + qi(n))),
            CirclePoint::Lifted(p) => Ok(CirclePoint::Lifted(p.shift(n)?)),
        }
    }

    fn deck_element(&self, n: i64) -> Result<CircleElement> {
        CircleElement::translation(qi(n), self.kind())
    }

    fn height(&self, x: &CirclePoint) -> Result<Interval> {
        Ok(match x {
            CirclePoint::Rational(a) => Interval::point(a.clone()),
            CirclePoint::Lifted(p) => p.value(),
        })
    }

    fn period(&self) -> Q {
        qi(1)
    }

    fn spread(&self) -> Q {
        self.spread.clone()
    }

    fn act(&self, g: &CircleElement, x: &CirclePoint) -> Result<CirclePoint> {
        self.check_kind(g)?;
        match (g, x) {
            (CircleElement::Pl(f), CirclePoint::Rational(a)) => Ok(CirclePoint::Rational(f.eval(a))),
            (CircleElement::Moebius(f), CirclePoint::Lifted(p)) => Ok(CirclePoint::Lifted(f.apply(p)?)),
            _ => Err(Error::KindMismatch(format!("{g} applied to {x}"))),
        }
    }

    fn leq(&self, x: &CirclePoint, y: &CirclePoint) -> Result<Causal> {
        let le = match (x, y) {
            (CirclePoint::Rational(a), CirclePoint::Rational(b)) => a <= b,
            (CirclePoint::Lifted(a), CirclePoint::Lifted(b)) => a <= b,
            _ => return Err(Error::KindMismatch(format!("points {x} and {y}"))),
        };
        Ok(if le { Causal::Leq } else { Causal::NotLeq })
    }

    fn is_exact(&self) -> bool {
        true
    }

    fn describe(&self) -> String {
        format!("circle cover ({}, L = 1, D = {})", self.kind(), fmt_q(&self.spread))
    }

    fn exact_positive(&self, g: &CircleElement) -> Option<Result<Dominance>> {
        let run = || -> Result<Dominance> {
            self.check_kind(g)?;
            let id = CircleElement::identity(self.kind());
            Ok(match pointwise_compare(&id, g, &qi(0), true)? {
                ComparisonVerdict::StrictlyBelow => Dominance::Yes,
                ComparisonVerdict::Incomparable { witness } => Dominance::No(witness),
                ComparisonVerdict::Equal | ComparisonVerdict::StrictlyAbove => {
                    Dominance::No(match self.kind() {
                        Kind::Pl => Witness::Point(qi(0)),
                        Kind::Moebius => Witness::Lifted(LiftedPoint::origin()),
                    })
                }
            })
        };
        Some(run())
    }

    fn witness_point(&self, w: &Witness) -> Option<CirclePoint> {
        match (w, self.kind()) {
            (Witness::Point(x), Kind::Pl) => Some(CirclePoint::Rational(x.clone())),
            (Witness::Lifted(p), Kind::Moebius) => Some(CirclePoint::Lifted(p.clone())),
            (Witness::Point(x), Kind::Moebius) => LiftedPoint::from_rational(x).map(CirclePoint::Lifted),
            (Witness::Lifted(_), Kind::Pl) => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::causal::{causal_dominant_check, iota, psi_estimate, r_x, CausalDominance, Rx};
    use crate::order::Group;
    use crate::quasimorphism::homogenize;

    fn pl(x: Q) -> CirclePoint {
        CirclePoint::Rational(x)
    }

    #[test]
    fn iota_examples() {
        let c = CircleCover::new(Kind::Pl);
        assert_eq!(iota(&c, &pl(q(1, 3)), &pl(q(1, 3))).unwrap(), 0);
        assert_eq!(iota(&c, &pl(q(3, 4)), &pl(q(1, 4))).unwrap(), 1);
        assert_eq!(iota(&c, &pl(q(1, 4)), &pl(q(3, 4))).unwrap(), 0);
        let m = CircleCover::new(Kind::Moebius);
        let (a, b) = (m.point(&q(3, 4)).unwrap(), m.point(&q(1, 4)).unwrap());
        assert_eq!(iota(&m, &a, &b).unwrap(), 1);
        assert_eq!(iota(&m, &b, &a).unwrap(), 0);
    }

    #[test]
    fn r_x_examples() {
        let c = CircleCover::new(Kind::Pl);
        let x = pl(qi(0));
        let t = CircleElement::translation(q(3, 2), Kind::Pl).unwrap();
        assert_eq!(r_x(&c, &t, &x).unwrap(), 2);
        for n in [-3, 0, 1, 5] {
            assert_eq!(r_x(&c, &c.deck_element(n).unwrap(), &pl(q(2, 7))).unwrap(), n);
        }
        assert_eq!(r_x(&c, &c.group().identity(), &pl(q(5, 3))).unwrap(), 0);
    }

    #[test]
    fn psi_examples() {
        let c = CircleCover::new(Kind::Pl);
        let x = pl(qi(0));
        let t = CircleElement::translation(q(3, 2), Kind::Pl).unwrap();
        let p = psi_estimate(&c, &t, 1000, &x).unwrap();
        assert_eq!(p.width(), q(6, 1000));
        assert!(p.contains(&q(3, 2)));
        assert!(psi_estimate(&c, &c.deck_element(1).unwrap(), 17, &x).unwrap().contains(&qi(1)));
        assert!(psi_estimate(&c, &c.group().identity(), 5, &x).unwrap().contains(&qi(0)));
        // homogenize with the declared defect 3D/L as radius
        let f = Rx { inst: &c, x: x.clone() };
        let h = homogenize(c.group(), &f, &t, 100).unwrap();
        assert!(h.contains(&q(3, 2)) && h.width() <= q(6, 100));
    }

    #[test]
    fn dominance_examples() {
        let c = CircleCover::new(Kind::Pl);
        let samples = [pl(qi(0))];
        let t = CircleElement::translation(q(1, 3), Kind::Pl).unwrap();
        assert_eq!(causal_dominant_check(&c, &t, &samples, 100).unwrap(), CausalDominance::PositiveWitnessed);
        let fixed: CircleElement = "pl: [(0, 0), (1/2, 1/4)]".parse().unwrap();
        assert!(matches!(causal_dominant_check(&c, &fixed, &samples, 100).unwrap(), CausalDominance::Violated(_)));
        let m = CircleCover::new(Kind::Moebius);
        let h: CircleElement = "moebius: [[2,0],[0,1/2]] winding 1".parse().unwrap();
        let origin = [CirclePoint::Lifted(LiftedPoint::origin())];
        assert_eq!(causal_dominant_check(&m, &h, &origin, 200).unwrap(), CausalDominance::PositiveWitnessed);
        assert!(psi_estimate(&m, &h, 200, &origin[0]).unwrap().contains(&qi(1)));
    }

    #[test]
    fn small_spread_is_caught() {
        let c = CircleCover::with_spread(Kind::Pl, q(1, 10)).unwrap();
        let r = iota(&c, &pl(q(1, 2)), &pl(qi(0)));
        assert!(matches!(r, Err(Error::InstanceInconsistent(_))));
    }

    #[test]
    fn closed_form_matches_search() {
        let mut s = Sampler::new(11);
        for kind in [Kind::Pl, Kind::Moebius] {
            let c = CircleCover::new(kind);
            for _ in 0..100 {
                let (x, y) = (c.sample_point(&mut s), c.sample_point(&mut s));
                assert_eq!(iota(&c, &x, &y).unwrap(), c.iota_closed_form(&x, &y).unwrap(), "{x} {y}");
            }
        }
    }
}
