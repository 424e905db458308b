//! Lifts of rational projective maps to the line.
//!
//! The point `x` of the line is the line through the origin at angle `pi x`
//! together with the turn `floor(x)`. Angles are measured so that `x`
//! increases with the projective coordinate `z = u / v` of a line through
//! `(u, v)`; this is the boundary orientation of the upper half-plane under
//! `z -> (az + b) / (cz + d)`. Points whose line has rational slope are
//! represented exactly; all other values are enclosed in intervals.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::num::certified;
use crate::num::rational::{floor_i64, frac, from_f64, q, qi, Q};
use crate::num::Interval;

/// A line through the origin, stored as a primitive integer vector `(u, v)`
/// with `v > 0`, or `v = 0` and `u > 0`.
///
/// Ordered by position: the horizontal line (`z = infinity`) is smallest,
/// and otherwise the order is that of `z = u / v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Direction {
    u: BigInt,
    v: BigInt,
}

impl Direction {
    pub(crate) fn from_ints(mut u: BigInt, mut v: BigInt) -> Direction {
        debug_assert!(!(u.is_zero() && v.is_zero()));
        let g = u.gcd(&v);
        u /= &g;
        v /= &g;
        if v.is_negative() || (v.is_zero() && u.is_negative()) {
            u = -u;
            v = -v;
        }
        Direction { u, v }
    }

    /// The line spanned by a nonzero rational vector.
    pub fn new(x: &Q, y: &Q) -> Result<Direction> {
        if x.is_zero() && y.is_zero() {
            return Err(Error::InvalidElement("zero vector has no direction".into()));
        }
        let l = x.denom().lcm(y.denom());
        let u = x.numer() * (&l / x.denom());
        let v = y.numer() * (&l / y.denom());
        Ok(Direction::from_ints(u, v))
    }

    pub fn horizontal() -> Direction {
        Direction { u: BigInt::one(), v: BigInt::zero() }
    }

    pub fn vertical() -> Direction {
        Direction { u: BigInt::zero(), v: BigInt::one() }
    }

    /// The non-horizontal line with projective coordinate `z = u / v`.
    pub fn from_cot(z: &Q) -> Direction {
        Direction::from_ints(z.numer().clone(), z.denom().clone())
    }

    pub fn u(&self) -> &BigInt {
        &self.u
    }

    pub fn v(&self) -> &BigInt {
        &self.v
    }

    pub fn is_horizontal(&self) -> bool {
        self.v.is_zero()
    }

    pub fn cot(&self) -> Option<Q> {
        (!self.is_horizontal()).then(|| Q::new(self.u.clone(), self.v.clone()))
    }

    /// Certified enclosure of the position in `[0, 1)`.
    pub fn angle01(&self) -> Interval {
        if self.is_horizontal() {
            return Interval::point(Q::zero());
        }
        if self.u.is_zero() {
            return Interval::point(q(1, 2));
        }
        // position = 1 - atan(v / u) / pi for u > 0, -atan(v / u) / pi for u < 0
        let t = certified::over_pi(&certified::atan(&Q::new(self.v.clone(), self.u.clone())));
        if self.u.is_positive() {
            Interval::point(Q::one()) - t
        } else {
            -t
        }
    }

    pub fn angle_approx(&self) -> f64 {
        if self.is_horizontal() {
            return 0.0;
        }
        let shift = self.u.bits().max(self.v.bits()).saturating_sub(60);
        let uf = (&self.u >> shift).to_f64().unwrap_or(0.0);
        let vf = (&self.v >> shift).to_f64().unwrap_or(0.0);
        let a = 1.0 - vf.atan2(uf) / std::f64::consts::PI;
        a.clamp(0.0, 1.0 - f64::EPSILON)
    }
}

impl Ord for Direction {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.is_horizontal(), other.is_horizontal()) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Less,
            (false, true) => Ordering::Greater,
            _ => (&self.u * &other.v).cmp(&(&other.u * &self.v)),
        }
    }
}

impl PartialOrd for Direction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// An exact point `turn + angle / pi` of the line.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LiftedPoint {
    pub turn: i64,
    pub dir: Direction,
}

impl LiftedPoint {
    pub fn new(turn: i64, dir: Direction) -> Self {
        LiftedPoint { turn, dir }
    }

    pub fn origin() -> Self {
        LiftedPoint::new(0, Direction::horizontal())
    }

    /// The point `x` when its line has rational slope: `frac(x)` must be
    /// one of `0, 1/4, 1/2, 3/4`.
    pub fn from_rational(x: &Q) -> Option<Self> {
        let turn = floor_i64(x).ok()?;
        let s = frac(x);
        let dir = if s.is_zero() {
            Direction::horizontal()
        } else if s == q(1, 4) {
            Direction::from_cot(&qi(-1))
        } else if s == q(1, 2) {
            Direction::vertical()
        } else if s == q(3, 4) {
            Direction::from_cot(&qi(1))
        } else {
            return None;
        };
        Some(LiftedPoint::new(turn, dir))
    }

    pub fn shift(&self, n: i64) -> Result<Self> {
        let turn = self.turn.checked_add(n).ok_or(Error::Overflow("turn"))?;
        Ok(LiftedPoint::new(turn, self.dir.clone()))
    }

    pub fn value(&self) -> Interval {
        Interval::point(qi(self.turn)) + self.dir.angle01()
    }

    pub fn approx(&self) -> f64 {
        self.turn as f64 + self.dir.angle_approx()
    }

    /// The exact value `ceil(self - other)`.
    pub fn ceil_diff(&self, other: &LiftedPoint) -> Result<i64> {
        let d = self.turn.checked_sub(other.turn).ok_or(Error::Overflow("turn"))?;
        Ok(if self.dir > other.dir { d + 1 } else { d })
    }
}

impl fmt::Display for LiftedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + angle({}, {})/pi", self.turn, self.dir.u, self.dir.v)
    }
}

/// A rational matrix of determinant 1 up to sign, normalized so that the
/// first nonzero entry of the first column is positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat2 {
    a: Q,
    b: Q,
    c: Q,
    d: Q,
}

/// Trace type of a projective map.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TraceType {
    Identity,
    Elliptic,
    Parabolic,
    Hyperbolic,
}

impl Mat2 {
    pub fn new(a: Q, b: Q, c: Q, d: Q) -> Result<Mat2> {
        if &a * &d - &b * &c != Q::one() {
            return Err(Error::InvalidElement(format!(
                "determinant of [[{a},{b}],[{c},{d}]] is not 1"
            )));
        }
        Ok(Mat2 { a, b, c, d }.normalized())
    }

    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> Result<Mat2> {
        Mat2::new(qi(a), qi(b), qi(c), qi(d))
    }

    fn normalized(self) -> Mat2 {
        if self.a.is_negative() || (self.a.is_zero() && self.c.is_negative()) {
            Mat2 { a: -self.a, b: -self.b, c: -self.c, d: -self.d }
        } else {
            self
        }
    }

    pub fn identity() -> Mat2 {
        Mat2 { a: qi(1), b: qi(0), c: qi(0), d: qi(1) }
    }

    /// Rotation of lines by a quarter turn.
    pub fn quarter_turn() -> Mat2 {
        Mat2 { a: qi(0), b: qi(-1), c: qi(1), d: qi(0) }
    }

    pub fn entries(&self) -> [&Q; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        Mat2 {
            a: &self.a * &o.a + &self.b * &o.c,
            b: &self.a * &o.b + &self.b * &o.d,
            c: &self.c * &o.a + &self.d * &o.c,
            d: &self.c * &o.b + &self.d * &o.d,
        }
        .normalized()
    }

    pub fn inverse(&self) -> Mat2 {
        Mat2 { a: self.d.clone(), b: -&self.b, c: -&self.c, d: self.a.clone() }.normalized()
    }

    /// Conjugation by the reflection `diag(1, -1)`, which reverses the
    /// orientation of the projective line.
    pub fn reflected(&self) -> Mat2 {
        Mat2 { a: self.a.clone(), b: -&self.b, c: -&self.c, d: self.d.clone() }.normalized()
    }

    pub fn trace(&self) -> Q {
        &self.a + &self.d
    }

    pub fn is_identity(&self) -> bool {
        *self == Mat2::identity()
    }

    pub fn trace_type(&self) -> TraceType {
        if self.is_identity() {
            return TraceType::Identity;
        }
        let t = self.trace().abs();
        match t.cmp(&qi(2)) {
            Ordering::Less => TraceType::Elliptic,
            Ordering::Equal => TraceType::Parabolic,
            Ordering::Greater => TraceType::Hyperbolic,
        }
    }

    pub fn apply(&self, p: &Direction) -> Direction {
        let x = &self.a * Q::from_integer(p.u.clone()) + &self.b * Q::from_integer(p.v.clone());
        let y = &self.c * Q::from_integer(p.u.clone()) + &self.d * Q::from_integer(p.v.clone());
        Direction::new(&x, &y).expect("invertible matrix maps nonzero vectors to nonzero vectors")
    }

    /// The canonical lift: the one sending 0 into `[0, 1)`.
    pub fn lift(&self, p: &LiftedPoint) -> LiftedPoint {
        let image = self.apply(&p.dir);
        let base = self.apply(&Direction::horizontal());
        let wrap = i64::from(image < base);
        LiftedPoint::new(p.turn + wrap, image)
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use crate::num::rational::fmt_q;
        write!(
            f,
            "[[{},{}],[{},{}]]",
            fmt_q(&self.a),
            fmt_q(&self.b),
            fmt_q(&self.c),
            fmt_q(&self.d)
        )
    }
}

/// The bounded Euler cocycle: `lift_A o lift_B = T^sigma o lift_AB`.
pub fn sigma(a: &Mat2, b: &Mat2) -> i64 {
    a.lift(&b.lift(&LiftedPoint::origin())).turn
}

/// How a lift moves points: `Positive` means `g(x) > x` everywhere.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Displacement {
    Identity,
    Positive,
    Negative,
    /// `g(x) >= x` everywhere, with equality at `fixed` and not at `moved`.
    TouchesAbove { fixed: LiftedPoint, moved: LiftedPoint },
    /// `g(x) <= x` everywhere, with equality at `fixed` and not at `moved`.
    TouchesBelow { fixed: LiftedPoint, moved: LiftedPoint },
    /// `g(up) > up` and `g(down) < down`; `fixed` is a fixed point when one
    /// has rational slope.
    Crossing { up: LiftedPoint, down: LiftedPoint, fixed: Option<LiftedPoint> },
}

/// `T^winding o lift_A`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MoebiusLift {
    pub mat: Mat2,
    pub winding: i64,
}

impl MoebiusLift {
    pub fn new(mat: Mat2, winding: i64) -> Self {
        MoebiusLift { mat, winding }
    }

    pub fn identity() -> Self {
        MoebiusLift::new(Mat2::identity(), 0)
    }

    /// The central translation by `n`.
    pub fn translation(n: i64) -> Self {
        MoebiusLift::new(Mat2::identity(), n)
    }

    /// The translation by `1/2`.
    pub fn half_translation() -> Self {
        MoebiusLift::new(Mat2::quarter_turn(), 0)
    }

    pub fn apply(&self, p: &LiftedPoint) -> Result<LiftedPoint> {
        self.mat.lift(p).shift(self.winding)
    }

    /// `self o other`.
    pub fn compose(&self, other: &MoebiusLift) -> Result<MoebiusLift> {
        let s = sigma(&self.mat, &other.mat);
        let w = self
            .winding
            .checked_add(other.winding)
            .and_then(|w| w.checked_add(s))
            .ok_or(Error::Overflow("winding"))?;
        Ok(MoebiusLift::new(self.mat.mul(&other.mat), w))
    }

    pub fn inverse(&self) -> Result<MoebiusLift> {
        let inv = self.mat.inverse();
        let s = sigma(&self.mat, &inv);
        let w = self
            .winding
            .checked_neg()
            .and_then(|w| w.checked_sub(s))
            .ok_or(Error::Overflow("winding"))?;
        Ok(MoebiusLift::new(inv, w))
    }

    pub fn power(&self, k: i64) -> Result<MoebiusLift> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut sq = base;
        let mut acc = MoebiusLift::identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&sq)?;
            }
            e >>= 1;
            if e > 0 {
                sq = sq.compose(&sq)?;
            }
        }
        Ok(acc)
    }

    pub fn is_identity(&self) -> bool {
        self.winding == 0 && self.mat.is_identity()
    }

    /// Common displacement `g(p) - p` at the fixed points of a non-elliptic,
    /// non-identity map.
    pub fn fixed_point_displacement(&self) -> Option<i64> {
        let tt = self.mat.trace_type();
        if matches!(tt, TraceType::Identity | TraceType::Elliptic) {
            return None;
        }
        let [_, _, c, _] = self.mat.entries();
        if c.is_zero() {
            // the horizontal line is fixed and the canonical lift fixes 0
            return Some(self.winding);
        }
        // the canonical lift wraps at a fixed line iff its coordinate is
        // below a/c, which reduces to a sign comparison of trace and c
        let t = self.mat.trace();
        let wrap = (t.is_positive() && c.is_positive()) || (t.is_negative() && c.is_negative());
        Some(self.winding + i64::from(wrap))
    }

    /// Exact classification of `x -> g(x) - x`.
    pub fn displacement(&self) -> Result<Displacement> {
        use Displacement::*;
        let side = |p: LiftedPoint| -> Result<(Ordering, LiftedPoint)> {
            let img = self.apply(&p)?;
            Ok((img.cmp(&p), p))
        };
        match self.mat.trace_type() {
            TraceType::Identity => Ok(match self.winding.cmp(&0) {
                Ordering::Greater => Positive,
                Ordering::Less => Negative,
                Ordering::Equal => Identity,
            }),
            TraceType::Elliptic => {
                // no fixed points: the sign of g(0) - 0 is global
                let img = self.apply(&LiftedPoint::origin())?;
                Ok(if img.turn >= 0 { Positive } else { Negative })
            }
            tt => {
                let d0 = self.fixed_point_displacement().expect("non-elliptic");
                if d0 >= 1 {
                    return Ok(Positive);
                }
                if d0 <= -1 {
                    return Ok(Negative);
                }
                let [a, b, c, d] = self.mat.entries();
                if tt == TraceType::Parabolic {
                    let (fixed, sample) = if c.is_zero() {
                        (Direction::horizontal(), Direction::vertical())
                    } else {
                        (Direction::from_cot(&((a - d) / (qi(2) * c))), Direction::horizontal())
                    };
                    let fixed = LiftedPoint::new(0, fixed);
                    let (o, moved) = side(LiftedPoint::new(0, sample))?;
                    return match o {
                        Ordering::Greater => Ok(TouchesAbove { fixed, moved }),
                        Ordering::Less => Ok(TouchesBelow { fixed, moved }),
                        Ordering::Equal => Err(Error::InconsistentOracles(
                            "parabolic sample point is fixed".into(),
                        )),
                    };
                }
                // hyperbolic with both fixed points at displacement 0: the
                // two complementary arcs move in opposite directions
                let (p1, p2, fixed) = if c.is_zero() {
                    let r = b / (d - a);
                    (Direction::from_cot(&(&r + qi(1))), Direction::from_cot(&(r - qi(1))), Some(Direction::horizontal()))
                } else {
                    let half = (a - d) / (qi(2) * c);
                    let disc = (self.mat.trace() * self.mat.trace() - qi(4)) / qi(4);
                    let fixed = rational_sqrt(&disc).map(|r| Direction::from_cot(&(&half + r / c)));
                    (Direction::from_cot(&half), Direction::horizontal(), fixed)
                };
                let fixed = fixed.map(|f| LiftedPoint::new(0, f));
                let (o1, w1) = side(LiftedPoint::new(0, p1))?;
                let (o2, w2) = side(LiftedPoint::new(0, p2))?;
                match (o1, o2) {
                    (Ordering::Greater, Ordering::Less) => Ok(Crossing { up: w1, down: w2, fixed }),
                    (Ordering::Less, Ordering::Greater) => Ok(Crossing { up: w2, down: w1, fixed }),
                    _ => Err(Error::InconsistentOracles(
                        "hyperbolic witnesses do not straddle the fixed points".into(),
                    )),
                }
            }
        }
    }

    /// Translation number. Exact unless the map is elliptic with a trace
    /// outside `{0, 1, -1}`.
    pub fn translation_number(&self) -> Result<Interval> {
        match self.mat.trace_type() {
            TraceType::Identity => Ok(Interval::point(qi(self.winding))),
            TraceType::Elliptic => {
                // the representative with c < 0 moves points forward by
                // arccos(trace / 2) / pi and its canonical lift has tau in (0, 1)
                let [_, _, c, _] = self.mat.entries();
                let t = if c.is_negative() { self.mat.trace() } else { -self.mat.trace() };
                let rot = certified::arccos_over_pi(&(t / qi(2)));
                Ok(Interval::point(qi(self.winding)) + rot)
            }
            _ => {
                // |g^4(0) - 4 tau| < 1 with tau an integer
                let mut p = LiftedPoint::origin();
                for _ in 0..4 {
                    p = self.apply(&p)?;
                }
                let t = p.turn;
                let j = if t.rem_euclid(4) == 0 {
                    t / 4
                } else if (t + 1).rem_euclid(4) == 0 {
                    (t + 1) / 4
                } else {
                    return Err(Error::InconsistentOracles(format!(
                        "orbit of a non-elliptic lift reached turn {t}"
                    )));
                };
                Ok(Interval::point(qi(j)))
            }
        }
    }

    /// Certified value of `g(x)` for rational `x`, exact when the line at
    /// angle `pi x` has rational slope.
    pub fn evaluate(&self, x: &Q, tol: &Q) -> Result<Interval> {
        if let Some(p) = LiftedPoint::from_rational(x) {
            let img = self.apply(&p)?;
            return Ok(if let Some(v) = exact_value(&img) { Interval::point(v) } else { img.value() });
        }
        let turn = floor_i64(x)?;
        let s = frac(x);
        let (mut lo, mut hi) = bracket_cot(&s)?;
        for _ in 0..400 {
            let a = self.apply(&LiftedPoint::new(turn, Direction::from_cot(&lo)))?.value();
            let b = self.apply(&LiftedPoint::new(turn, Direction::from_cot(&hi)))?.value();
            let out = Interval::new(a.lo().clone(), b.hi().clone());
            if &out.width() <= tol {
                return Ok(out);
            }
            let mid = (&lo + &hi) / qi(2);
            let m = Direction::from_cot(&mid).angle01();
            if m.hi() <= &s {
                lo = mid;
            } else if m.lo() >= &s {
                hi = mid;
            } else {
                return Ok(out);
            }
        }
        Err(Error::UnresolvedSign)
    }
}

fn rational_sqrt(x: &Q) -> Option<Q> {
    if x.is_negative() {
        return None;
    }
    let (n, d) = (x.numer().sqrt(), x.denom().sqrt());
    (&n * &n == *x.numer() && &d * &d == *x.denom()).then(|| Q::new(n, d))
}

/// Exact value of a lifted point when its angle is a multiple of `pi/4`.
pub fn exact_value(p: &LiftedPoint) -> Option<Q> {
    let s = match p.dir.cot() {
        None => Q::zero(),
        Some(c) if c.is_zero() => q(1, 2),
        Some(c) if c == qi(-1) => q(1, 4),
        Some(c) if c == qi(1) => q(3, 4),
        Some(_) => return None,
    };
    Some(qi(p.turn) + s)
}

/// Rational coordinates `(lo, hi)` whose lines bracket the position `s`,
/// `0 < s < 1`.
fn bracket_cot(s: &Q) -> Result<(Q, Q)> {
    let sf = crate::num::rational::to_f64(s);
    let c = -1.0 / (std::f64::consts::PI * sf).tan();
    let c0 = from_f64(c);
    let mut eps = from_f64(c.abs() * 1e-9 + 1e-9);
    for _ in 0..200 {
        let lo = &c0 - &eps;
        let hi = &c0 + &eps;
        if Direction::from_cot(&lo).angle01().hi() <= s && Direction::from_cot(&hi).angle01().lo() >= s {
            return Ok((lo, hi));
        }
        eps *= qi(2);
    }
    Err(Error::UnresolvedSign)
}

impl fmt::Display for MoebiusLift {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "moebius: {} winding {}", self.mat, self.winding)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hyp() -> Mat2 {
        Mat2::new(qi(2), qi(0), qi(0), q(1, 2)).unwrap()
    }

    #[test]
    fn quarter_turn_squares_to_unit_translation() {
        let r = MoebiusLift::half_translation();
        assert_eq!(sigma(&r.mat, &r.mat), 1);
        assert_eq!(r.power(2).unwrap(), MoebiusLift::translation(1));
        let p = r.apply(&LiftedPoint::from_rational(&q(1, 4)).unwrap()).unwrap();
        assert_eq!(exact_value(&p), Some(q(3, 4)));
    }

    #[test]
    fn sign_normalization() {
        let m = Mat2::from_ints(-1, 0, 0, -1).unwrap();
        assert!(m.is_identity());
        let m = Mat2::from_ints(0, 1, -1, 0).unwrap();
        assert_eq!(m, Mat2::quarter_turn());
        assert!(Mat2::from_ints(1, 1, 1, 1).is_err());
    }

    #[test]
    fn hyperbolic_lifts() {
        let g0 = MoebiusLift::new(hyp(), 0);
        assert_eq!(g0.apply(&LiftedPoint::origin()).unwrap(), LiftedPoint::origin());
        assert!(matches!(g0.displacement().unwrap(), Displacement::Crossing { .. }));
        let g1 = MoebiusLift::new(hyp(), 1);
        assert_eq!(g1.displacement().unwrap(), Displacement::Positive);
        assert_eq!(g1.translation_number().unwrap().exact(), Some(&qi(1)));
    }

    #[test]
    fn inverse_composes_to_identity() {
        let m = Mat2::new(qi(3), qi(2), qi(4), qi(3)).unwrap();
        for w in -2..=2 {
            let g = MoebiusLift::new(m.clone(), w);
            assert!(g.compose(&g.inverse().unwrap()).unwrap().is_identity());
            assert!(g.inverse().unwrap().compose(&g).unwrap().is_identity());
        }
    }

    #[test]
    fn elliptic_translation_numbers() {
        // order-3 rotation of lines
        let m = Mat2::from_ints(0, -1, 1, 1).unwrap();
        let g = MoebiusLift::new(m, 0);
        let t = g.translation_number().unwrap();
        assert!(t.exact().is_some());
        assert_eq!(g.power(3).unwrap().translation_number().unwrap().exact(), Some(&(t.lo() * qi(3))));
    }

    #[test]
    fn evaluate_irrational_point() {
        let g = MoebiusLift::new(hyp(), 0);
        let v = g.evaluate(&q(1, 3), &q(1, 1_000_000_000)).unwrap();
        // z = -cot(pi/3) is scaled by 4, so cot(pi x) = 4 / sqrt 3
        let expect = (3f64.sqrt() / 4.0).atan() / std::f64::consts::PI;
        assert!(v.width() <= q(1, 1_000_000_000));
        assert!((v.approx() - expect).abs() < 1e-8);
    }
}
