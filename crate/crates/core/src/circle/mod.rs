//! Exact elements of the group of lifts of circle homeomorphisms that
//! commute with integer translations.
//!
//! Two subgroups are closed separately: rational piecewise-linear maps and
//! lifts of rational projective maps. Mixing kinds in one operation is an
//! error.

mod compare;
pub mod format;
pub mod moebius;
pub mod pl;
pub mod sample;

use std::cmp::Ordering;
use std::fmt;

use num_traits::{Signed, Zero};

pub use compare::BNB_CELL_CAP;
pub use moebius::{sigma, Direction, Displacement, LiftedPoint, Mat2, MoebiusLift, TraceType};
pub use pl::PlMap;

use crate::error::{Error, Result};
use crate::num::rational::{q, qi, Q};
use crate::num::Interval;

/// Default width target for certified real outputs.
pub fn default_tol() -> Q {
    q(1, 1_000_000_000)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    Pl,
    Moebius,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Pl => "pl",
            Kind::Moebius => "moebius",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CircleElement {
    Pl(PlMap),
    Moebius(MoebiusLift),
}

/// A point exhibiting the failure of a pointwise relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Point(Q),
    Lifted(LiftedPoint),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Point(x) => write!(f, "{}", crate::num::fmt_q(x)),
            Witness::Lifted(p) => match moebius::exact_value(p) {
                Some(x) => write!(f, "{}", crate::num::fmt_q(&x)),
                None => write!(f, "{p}"),
            },
        }
    }
}

/// Outcome of `pointwise_compare(g, h, q, strict)`.
///
/// `StrictlyBelow` means `g(x) + q < h(x)` for all `x` (`<=` when not
/// strict) and `g != h`; `StrictlyAbove` is the mirror image. The witness of
/// `Incomparable` is a point where the `StrictlyBelow` relation fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComparisonVerdict {
    Equal,
    StrictlyBelow,
    StrictlyAbove,
    Incomparable { witness: Witness },
}

impl fmt::Display for ComparisonVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComparisonVerdict::Equal => f.write_str("equal"),
            ComparisonVerdict::StrictlyBelow => f.write_str("strictly-below"),
            ComparisonVerdict::StrictlyAbove => f.write_str("strictly-above"),
            ComparisonVerdict::Incomparable { witness } => write!(f, "incomparable(witness={witness})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Dominance {
    Yes,
    No(Witness),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupOp {
    Compose,
    Invert,
    Power(i64),
}

impl CircleElement {
    pub fn kind(&self) -> Kind {
        match self {
            CircleElement::Pl(_) => Kind::Pl,
            CircleElement::Moebius(_) => Kind::Moebius,
        }
    }

    pub fn identity(kind: Kind) -> Self {
        match kind {
            Kind::Pl => CircleElement::Pl(PlMap::identity()),
            Kind::Moebius => CircleElement::Moebius(MoebiusLift::identity()),
        }
    }

    /// Translation by `t`; Moebius lifts only contain the half-integer ones.
    pub fn translation(t: Q, kind: Kind) -> Result<Self> {
        match kind {
            Kind::Pl => Ok(CircleElement::Pl(PlMap::translation(t))),
            Kind::Moebius => {
                let two = &t * qi(2);
                if !two.is_integer() {
                    return Err(Error::InvalidElement(format!(
                        "translation by {} is not a Moebius lift",
                        crate::num::fmt_q(&t)
                    )));
                }
                let n: i64 = two.to_integer().try_into().map_err(|_| Error::Overflow("translation"))?;
                Ok(CircleElement::Moebius(MoebiusLift::half_translation().power(n)?))
            }
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            CircleElement::Pl(g) => g.is_identity(),
            CircleElement::Moebius(g) => g.is_identity(),
        }
    }

    /// `self o other`.
    pub fn compose(&self, other: &CircleElement) -> Result<CircleElement> {
        match (self, other) {
            (CircleElement::Pl(g), CircleElement::Pl(h)) => Ok(CircleElement::Pl(g.compose(h))),
            (CircleElement::Moebius(g), CircleElement::Moebius(h)) => Ok(CircleElement::Moebius(g.compose(h)?)),
            _ => Err(Error::KindMismatch(format!("compose {} with {}", self.kind(), other.kind()))),
        }
    }

    pub fn inverse(&self) -> Result<CircleElement> {
        match self {
            CircleElement::Pl(g) => Ok(CircleElement::Pl(g.inverse())),
            CircleElement::Moebius(g) => Ok(CircleElement::Moebius(g.inverse()?)),
        }
    }

    pub fn power(&self, k: i64) -> Result<CircleElement> {
        match self {
            CircleElement::Pl(g) => Ok(CircleElement::Pl(g.power(k))),
            CircleElement::Moebius(g) => Ok(CircleElement::Moebius(g.power(k)?)),
        }
    }

    /// `g(x)`: exact for piecewise-linear maps, certified to width `tol`
    /// for Moebius lifts.
    pub fn evaluate(&self, x: &Q, tol: &Q) -> Result<Interval> {
        match self {
            CircleElement::Pl(g) => Ok(Interval::point(g.eval(x))),
            CircleElement::Moebius(g) => g.evaluate(x, tol),
        }
    }

    /// Translation number, certified to width `tol` (best effort for
    /// piecewise-linear maps without short periodic orbits).
    pub fn translation_number(&self, tol: &Q) -> Result<Interval> {
        match self {
            CircleElement::Pl(g) => Ok(g.translation_number(tol)),
            CircleElement::Moebius(g) => g.translation_number(),
        }
    }

    /// Exact sign of the translation number.
    pub fn tau_sign(&self) -> Result<Ordering> {
        let t = self.translation_number(&Q::from_integer(1.into()))?;
        if t.is_positive() {
            return Ok(Ordering::Greater);
        }
        if t.is_negative() {
            return Ok(Ordering::Less);
        }
        if let Some(v) = t.exact() {
            return Ok(v.cmp(&Q::zero()));
        }
        match self {
            // an elliptic lift has tau strictly between its winding and
            // winding + 1
            CircleElement::Moebius(g) if g.mat.trace_type() == TraceType::Elliptic => {
                Ok(if g.winding >= 0 { Ordering::Greater } else { Ordering::Less })
            }
            _ => {
                let (m, _, mx, _) = match self {
                    CircleElement::Pl(g) => g.displacement_range(),
                    _ => unreachable!("non-elliptic Moebius translation numbers are exact"),
                };
                Ok(if m.is_positive() {
                    Ordering::Greater
                } else if mx.is_negative() {
                    Ordering::Less
                } else {
                    Ordering::Equal
                })
            }
        }
    }
}

impl fmt::Display for CircleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CircleElement::Pl(g) => write!(f, "{g}"),
            CircleElement::Moebius(g) => write!(f, "{g}"),
        }
    }
}

/// Exact group operation; `h` is required for `Compose` only.
pub fn group_op(op: GroupOp, g: &CircleElement, h: Option<&CircleElement>) -> Result<CircleElement> {
    match op {
        GroupOp::Compose => {
            let h = h.ok_or_else(|| Error::Precondition("compose needs two elements".into()))?;
            g.compose(h)
        }
        GroupOp::Invert => g.inverse(),
        GroupOp::Power(k) => g.power(k),
    }
}

/// Decides `g(x) + q < h(x)` (or `<=`) for all `x`, and the mirrored
/// relation. Exact for piecewise-linear maps and for Moebius lifts with
/// `2q` an integer; otherwise certified branch and bound, which may fail
/// with [`Error::UnresolvedSign`].
pub fn pointwise_compare(g: &CircleElement, h: &CircleElement, q: &Q, strict: bool) -> Result<ComparisonVerdict> {
    compare::compare(g, h, q, strict)
}

/// `g(x) >= x` for all `x`.
pub fn is_above_identity(g: &CircleElement) -> Result<bool> {
    let id = CircleElement::identity(g.kind());
    Ok(matches!(
        pointwise_compare(&id, g, &Q::zero(), false)?,
        ComparisonVerdict::Equal | ComparisonVerdict::StrictlyBelow
    ))
}

/// Decides `g(x) > x` for all `x` and cross-checks against the sign of the
/// translation number: a yes forces `tau(g) > 0`, and for `g >= id` the two
/// are equivalent.
pub fn is_dominant_pointwise(g: &CircleElement) -> Result<Dominance> {
    let id = CircleElement::identity(g.kind());
    let verdict = pointwise_compare(&id, g, &Q::zero(), true)?;
    let sign = g.tau_sign()?;
    let origin = || match g.kind() {
        Kind::Pl => Witness::Point(Q::zero()),
        Kind::Moebius => Witness::Lifted(LiftedPoint::origin()),
    };
    let answer = match verdict {
        ComparisonVerdict::StrictlyBelow => Dominance::Yes,
        ComparisonVerdict::Incomparable { witness } => Dominance::No(witness),
        ComparisonVerdict::Equal | ComparisonVerdict::StrictlyAbove => Dominance::No(origin()),
    };
    let consistent = match answer {
        Dominance::Yes => sign == Ordering::Greater,
        Dominance::No(_) => sign != Ordering::Greater || !is_above_identity(g)?,
    };
    if !consistent {
        return Err(Error::InconsistentOracles(format!(
            "pointwise dominance {answer:?} against translation number sign {sign:?} for {g}"
        )));
    }
    Ok(answer)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(n: i64, d: i64) -> CircleElement {
        CircleElement::translation(q(n, d), Kind::Pl).unwrap()
    }

    fn hyp(w: i64) -> CircleElement {
        CircleElement::Moebius(MoebiusLift::new(Mat2::new(qi(2), qi(0), qi(0), q(1, 2)).unwrap(), w))
    }

    #[test]
    fn group_op_examples() {
        let c = group_op(GroupOp::Compose, &t(1, 3), Some(&t(1, 2))).unwrap();
        assert_eq!(c, t(5, 6));
        let r = CircleElement::Moebius(MoebiusLift::half_translation());
        assert_eq!(group_op(GroupOp::Power(2), &r, None).unwrap(), CircleElement::Moebius(MoebiusLift::translation(1)));
        assert_eq!(group_op(GroupOp::Invert, &t(1, 3), None).unwrap(), t(-1, 3));
        assert!(matches!(t(1, 3).compose(&r), Err(Error::KindMismatch(_))));
    }

    #[test]
    fn evaluate_examples() {
        let tol = default_tol();
        assert_eq!(t(1, 2).evaluate(&q(1, 4), &tol).unwrap().exact(), Some(&q(3, 4)));
        assert_eq!(hyp(0).evaluate(&q(0, 1), &tol).unwrap().exact(), Some(&q(0, 1)));
        let r = CircleElement::Moebius(MoebiusLift::half_translation());
        assert_eq!(r.evaluate(&q(1, 4), &tol).unwrap().exact(), Some(&q(3, 4)));
    }

    #[test]
    fn compare_examples() {
        let z = Q::zero();
        assert_eq!(pointwise_compare(&t(1, 3), &t(1, 2), &q(1, 8), true).unwrap(), ComparisonVerdict::StrictlyBelow);
        let id = CircleElement::identity(Kind::Moebius);
        assert_eq!(pointwise_compare(&id, &hyp(1), &z, true).unwrap(), ComparisonVerdict::StrictlyBelow);
        match pointwise_compare(&id, &hyp(0), &z, true).unwrap() {
            ComparisonVerdict::Incomparable { witness: Witness::Lifted(p) } => {
                assert_eq!(moebius::exact_value(&p), Some(q(0, 1)))
            }
            v => panic!("unexpected verdict {v}"),
        }
    }

    #[test]
    fn translation_number_examples() {
        let tol = default_tol();
        assert_eq!(t(1, 2).translation_number(&tol).unwrap().exact(), Some(&q(1, 2)));
        let r = CircleElement::Moebius(MoebiusLift::half_translation());
        assert_eq!(r.translation_number(&tol).unwrap().exact(), Some(&q(1, 2)));
        assert_eq!(hyp(0).translation_number(&tol).unwrap().exact(), Some(&q(0, 1)));
    }

    #[test]
    fn dominance_examples() {
        assert_eq!(is_dominant_pointwise(&t(1, 3)).unwrap(), Dominance::Yes);
        let g = CircleElement::Pl(PlMap::new(vec![(q(0, 1), q(0, 1)), (q(1, 2), q(3, 4))]).unwrap());
        assert_eq!(is_dominant_pointwise(&g).unwrap(), Dominance::No(Witness::Point(q(0, 1))));
        assert_eq!(is_dominant_pointwise(&hyp(1)).unwrap(), Dominance::Yes);
    }
}
