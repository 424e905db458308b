//! Exact decision of `g(x) + q < h(x)` for all `x`.

use num_traits::{Signed, Zero};

use super::moebius::{Direction, Displacement, LiftedPoint, MoebiusLift};
use super::pl::PlMap;
use super::{CircleElement, ComparisonVerdict, Witness};
use crate::error::{Error, Result};
use crate::num::rational::{from_f64, qi, Q};
use crate::num::Interval;

/// Cells examined by the branch-and-bound search before giving up.
pub const BNB_CELL_CAP: usize = 50_000;
const BNB_DEPTH_CAP: u32 = 80;

pub(super) fn compare(g: &CircleElement, h: &CircleElement, q: &Q, strict: bool) -> Result<ComparisonVerdict> {
    if q.is_negative() {
        return Err(Error::Precondition("comparison offset q must be nonnegative".into()));
    }
    match (g, h) {
        (CircleElement::Pl(g), CircleElement::Pl(h)) => Ok(compare_pl(g, h, q, strict)),
        (CircleElement::Moebius(g), CircleElement::Moebius(h)) => compare_moebius(g, h, q, strict),
        _ => Err(Error::KindMismatch("cannot compare piecewise-linear and Moebius elements".into())),
    }
}

fn compare_pl(g: &PlMap, h: &PlMap, q: &Q, strict: bool) -> ComparisonVerdict {
    if g == h {
        return ComparisonVerdict::Equal;
    }
    // h - g is linear between consecutive points of the merged breakpoints
    let mut xs: Vec<&Q> = g.points().iter().chain(h.points()).map(|p| &p.0).collect();
    xs.sort();
    xs.dedup();
    let diffs: Vec<(Q, &Q)> = xs.into_iter().map(|x| (h.eval(x) - g.eval(x), x)).collect();
    let (min, argmin) = diffs.iter().min_by(|a, b| a.0.cmp(&b.0)).unwrap();
    let (max, _) = diffs.iter().max_by(|a, b| a.0.cmp(&b.0)).unwrap();
    let nq = -q;
    let below = if strict { min > q } else { min >= q };
    let above = if strict { *max < nq } else { *max <= nq };
    if below {
        ComparisonVerdict::StrictlyBelow
    } else if above {
        ComparisonVerdict::StrictlyAbove
    } else {
        ComparisonVerdict::Incomparable { witness: Witness::Point((*argmin).clone()) }
    }
}

fn compare_moebius(g: &MoebiusLift, h: &MoebiusLift, q: &Q, strict: bool) -> Result<ComparisonVerdict> {
    if g == h {
        return Ok(ComparisonVerdict::Equal);
    }
    let two_q = q * qi(2);
    if two_q.is_integer() {
        return compare_moebius_exact(g, h, &two_q, strict);
    }
    match bnb_above(g, h, q)? {
        Bound::Holds => Ok(ComparisonVerdict::StrictlyBelow),
        Bound::Fails(w) => match bnb_above(h, g, q)? {
            Bound::Holds => Ok(ComparisonVerdict::StrictlyAbove),
            Bound::Fails(_) => Ok(ComparisonVerdict::Incomparable { witness: Witness::Lifted(w) }),
        },
    }
}

/// `q = two_q / 2` is absorbed into the group: `T_{1/2}` is the quarter
/// turn. Then `g(x) + q < h(x)` for all `x` iff `g^-1 T_-q h` moves every
/// point forward.
fn compare_moebius_exact(g: &MoebiusLift, h: &MoebiusLift, two_q: &Q, strict: bool) -> Result<ComparisonVerdict> {
    let n = two_q.to_integer();
    let n: i64 = n.try_into().map_err(|_| Error::Overflow("comparison offset"))?;
    let shift = MoebiusLift::half_translation().power(-n)?;
    let k1 = g.inverse()?.compose(&shift)?.compose(h)?;
    let d1 = k1.displacement()?;
    if holds(&d1, strict) {
        return Ok(ComparisonVerdict::StrictlyBelow);
    }
    let k2 = h.inverse()?.compose(&shift)?.compose(g)?;
    if holds(&k2.displacement()?, strict) {
        return Ok(ComparisonVerdict::StrictlyAbove);
    }
    let witness = failure_point(d1, strict).expect("relation fails");
    Ok(ComparisonVerdict::Incomparable { witness: Witness::Lifted(witness) })
}

fn holds(d: &Displacement, strict: bool) -> bool {
    match d {
        Displacement::Positive => true,
        Displacement::TouchesAbove { .. } | Displacement::Identity => !strict,
        _ => false,
    }
}

/// A point `x` with `k(x) <= x` (strict) or `k(x) < x` (nonstrict).
fn failure_point(d: Displacement, strict: bool) -> Option<LiftedPoint> {
    use Displacement::*;
    match d {
        Positive => None,
        Identity | TouchesAbove { .. } if !strict => None,
        Identity | Negative => Some(LiftedPoint::origin()),
        TouchesAbove { fixed, .. } => Some(fixed),
        TouchesBelow { fixed, moved } => Some(if strict { fixed } else { moved }),
        Crossing { fixed: Some(f), .. } if strict => Some(f),
        Crossing { down, .. } => Some(down),
    }
}

enum Bound {
    Holds,
    Fails(LiftedPoint),
}

/// Certifies `h(x) - g(x) > q` for all `x`, or finds `x` with
/// `h(x) - g(x) < q`. Both maps are increasing, so on a cell `[a, b]` the
/// difference lies in `[h(a) - g(b), h(b) - g(a)]`.
fn bnb_above(g: &MoebiusLift, h: &MoebiusLift, q: &Q) -> Result<Bound> {
    let p0 = LiftedPoint::origin();
    let p1 = LiftedPoint::new(0, Direction::vertical());
    let p2 = LiftedPoint::new(1, Direction::horizontal());
    let mut stack = vec![(p0.clone(), p1.clone(), 0u32), (p1, p2, 0u32)];
    let mut cells = 0usize;
    while let Some((a, b, depth)) = stack.pop() {
        cells += 1;
        if cells > BNB_CELL_CAP || depth > BNB_DEPTH_CAP {
            return Err(Error::UnresolvedSign);
        }
        let ga = g.apply(&a)?.value();
        let ha = h.apply(&a)?.value();
        let at_a = &(&ha - &ga) - &Interval::point(q.clone());
        if at_a.is_negative() {
            return Ok(Bound::Fails(a));
        }
        let gb = g.apply(&b)?.value();
        let at_b = &(&h.apply(&b)?.value() - &gb) - &Interval::point(q.clone());
        if at_b.is_negative() {
            return Ok(Bound::Fails(b));
        }
        let lower = ha.lo() - gb.hi() - q;
        if lower.is_positive() {
            continue;
        }
        let m = split(&a, &b);
        stack.push((m.clone(), b, depth + 1));
        stack.push((a, m, depth + 1));
    }
    Ok(Bound::Holds)
}

/// A point strictly between `a < b`, where `b - a < 1`.
fn split(a: &LiftedPoint, b: &LiftedPoint) -> LiftedPoint {
    let mid = (a.approx() + b.approx()) / 2.0;
    let turn = mid.floor();
    let s = mid - turn;
    if s > 1e-9 && s < 1.0 - 1e-9 {
        let cot = -1.0 / (std::f64::consts::PI * s).tan();
        if cot.is_finite() {
            let c = LiftedPoint::new(turn as i64, Direction::from_cot(&from_f64(cot)));
            if a < &c && &c < b {
                return c;
            }
        }
    }
    // sum of vector representatives at angle pi (1 - (x - a.turn))
    let rep = |p: &LiftedPoint| {
        let flip = p.turn != a.turn;
        let (u, v) = (p.dir.u().clone(), p.dir.v().clone());
        if p.dir.is_horizontal() {
            if flip { (u, v) } else { (-u, v) }
        } else if flip {
            (-u, -v)
        } else {
            (u, v)
        }
    };
    let (ua, va) = rep(a);
    let (ub, vb) = rep(b);
    let u = ua + ub;
    let v = va + vb;
    let upper = v.is_positive() || (v.is_zero() && u.is_negative());
    let turn = if upper { a.turn } else { a.turn + 1 };
    LiftedPoint::new(turn, Direction::from_ints(u, v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circle::moebius::Mat2;
    use crate::num::rational::q;

    fn moeb(a: i64, b: i64, c: i64, d: i64, w: i64) -> CircleElement {
        CircleElement::Moebius(MoebiusLift::new(Mat2::from_ints(a, b, c, d).unwrap(), w))
    }

    #[test]
    fn split_is_strictly_inside() {
        let a = LiftedPoint::origin();
        let b = LiftedPoint::new(1, Direction::horizontal());
        let mut lo = a.clone();
        for _ in 0..70 {
            let m = split(&lo, &b);
            assert!(lo < m && m < b);
            lo = m;
        }
    }

    #[test]
    fn non_half_integer_offsets_use_branch_and_bound() {
        let id = CircleElement::identity(super::super::Kind::Moebius);
        let r = CircleElement::Moebius(MoebiusLift::half_translation());
        assert_eq!(compare(&id, &r, &q(1, 3), true).unwrap(), ComparisonVerdict::StrictlyBelow);
        assert!(matches!(compare(&id, &r, &q(2, 3), true).unwrap(), ComparisonVerdict::Incomparable { .. }));
        // this lift moves points by between about 0.732 and 1.268
        let g = moeb(2, 1, 1, 1, 0);
        assert_eq!(compare(&id, &g, &q(2, 3), true).unwrap(), ComparisonVerdict::StrictlyBelow);
        assert!(matches!(compare(&id, &g, &q(4, 5), true).unwrap(), ComparisonVerdict::Incomparable { .. }));
        let g3 = moeb(2, 1, 1, 1, 2);
        assert_eq!(compare(&id, &g3, &q(4, 3), true).unwrap(), ComparisonVerdict::StrictlyBelow);
    }

    #[test]
    fn half_integer_offset_is_exact_at_equality() {
        let id = CircleElement::identity(super::super::Kind::Moebius);
        let r = CircleElement::Moebius(MoebiusLift::half_translation());
        let h = q(1, 2);
        assert!(matches!(compare(&id, &r, &h, true).unwrap(), ComparisonVerdict::Incomparable { .. }));
        assert_eq!(compare(&id, &r, &h, false).unwrap(), ComparisonVerdict::StrictlyBelow);
    }
}
