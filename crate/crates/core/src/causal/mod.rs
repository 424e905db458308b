//! Quasimorphisms from causal covers.
//!
//! A causal cover carries a deck transformation `Z`, a height `zeta` with
//! `zeta(Z x) = zeta(x) + L`, and an invariant partial order with
//! `Z x >= x`. Comparing a point with the deck orbit of another gives
//! `iota(x, y) = min { n : Z^n y >= x }`, whose defect is controlled by the
//! declared constant `D` through `|L iota(x, y) - (zeta(x) - zeta(y))| <= D`.

mod circle;
#[cfg(feature = "lagrangian")]
pub mod lagrangian;

use std::fmt::{Debug, Display};

use num_traits::Signed;

use crate::circle::Dominance;
use crate::error::{Error, Result};
use crate::num::rational::{ceil_i64, floor_i64, qi};
use crate::num::{Interval, Q};
use crate::order::Group;
use crate::quasimorphism::Quasimorphism;

pub use circle::{psi_contains_tau, CircleCover, CirclePoint};

/// Verdict of a causal order oracle; numeric instances may abstain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Causal {
    Leq,
    NotLeq,
    Undecided,
}

pub trait CausalCoverInstance {
    type Point: Clone + Debug + Display + PartialEq;
    type Group: Group;

    fn group(&self) -> &Self::Group;

    /// `Z^n x`.
    fn deck(&self, x: &Self::Point, n: i64) -> Result<Self::Point>;

    /// The group element acting as `Z^n`.
    fn deck_element(&self, n: i64) -> Result<<Self::Group as Group>::Elem>;

    /// Enclosure of `zeta(x)`; a point interval for exact instances.
    fn height(&self, x: &Self::Point) -> Result<Interval>;

    /// Period `L > 0` of the height.
    fn period(&self) -> Q;

    /// Declared constant `D > 0`.
    fn spread(&self) -> Q;

    fn act(&self, g: &<Self::Group as Group>::Elem, x: &Self::Point) -> Result<Self::Point>;

    fn leq(&self, x: &Self::Point, y: &Self::Point) -> Result<Causal>;

    fn is_exact(&self) -> bool;

    fn describe(&self) -> String;

    /// Decides `g x > x` for every point, when the instance can.
    fn exact_positive(&self, _g: &<Self::Group as Group>::Elem) -> Option<Result<Dominance>> {
        None
    }

    /// Converts a dominance witness into a point, when the instance can.
    fn witness_point(&self, _w: &crate::circle::Witness) -> Option<Self::Point> {
        None
    }
}

fn decided<I: CausalCoverInstance>(inst: &I, x: &I::Point, y: &I::Point) -> Result<bool> {
    match inst.leq(x, y)? {
        Causal::Leq => Ok(true),
        Causal::NotLeq => Ok(false),
        Causal::Undecided => Err(Error::Undecided(format!("{}: order of {x} and {y}", inst.describe()))),
    }
}

/// `min { n : Z^n y >= x }`, searched in the window
/// `[floor((dz - D) / L), ceil((dz + D) / L)]`, `dz = zeta(x) - zeta(y)`.
/// The minimizer must lie in the window and satisfy the declared bound,
/// otherwise the instance constants are wrong.
pub fn iota<I: CausalCoverInstance>(inst: &I, x: &I::Point, y: &I::Point) -> Result<i64> {
    let (l, d) = (inst.period(), inst.spread());
    let dz = inst.height(x)? - inst.height(y)?;
    let lo = floor_i64(&((dz.lo() - &d) / &l))?;
    let hi = ceil_i64(&((dz.hi() + &d) / &l))?;
    let inconsistent = |what: String| Error::InstanceInconsistent(format!("{}: {what}", inst.describe()));
    let in_set = |n: i64| -> Result<bool> { decided(inst, x, &inst.deck(y, n)?) };
    // I(x, y) is up-closed because Z y >= y
    if !in_set(hi)? {
        return Err(inconsistent(format!("iota({x}, {y}) above window end {hi}")));
    }
    let (mut out, mut top) = (lo - 1, hi);
    if in_set(out)? {
        return Err(inconsistent(format!("iota({x}, {y}) below window start {lo}")));
    }
    while top - out > 1 {
        let mid = out + (top - out) / 2;
        if in_set(mid)? {
            top = mid;
        } else {
            out = mid;
        }
    }
    let gap = (Interval::point(&l * qi(top)) - dz).abs();
    if gap.lo() > &d {
        return Err(inconsistent(format!("|L iota - dzeta| >= {} exceeds D = {d} at ({x}, {y})", gap.lo())));
    }
    Ok(top)
}

/// `R_x(g) = iota(g x, x)`.
pub fn r_x<I: CausalCoverInstance>(inst: &I, g: &<I::Group as Group>::Elem, x: &I::Point) -> Result<i64> {
    iota(inst, &inst.act(g, x)?, x)
}

/// `R_x(g^N) / N` widened by `3D / (L N)`, which contains the
/// homogenization `psi(g)`. `g^N x` is computed along the orbit.
pub fn psi_estimate<I: CausalCoverInstance>(inst: &I, g: &<I::Group as Group>::Elem, n: i64, x: &I::Point) -> Result<Interval> {
    if n < 1 {
        return Err(Error::Precondition("psi needs N >= 1".into()));
    }
    let mut y = x.clone();
    for _ in 0..n {
        y = inst.act(g, &y)?;
    }
    let nq = qi(n);
    let r = qi(iota(inst, &y, x)?) / &nq;
    Ok(Interval::point(r).widen(&(qi(3) * inst.spread() / (inst.period() * nq))))
}

/// Outcome of a causal dominance check.
#[derive(Clone, Debug, PartialEq)]
pub enum CausalDominance<P> {
    /// `g x > x` at every point (exact mode) or every sample.
    PositiveWitnessed,
    Violated(P),
}

/// Decides `g x > x`. Exact mode when the instance supports it, otherwise
/// on the samples. The verdict is cross-checked against the sign of the
/// `psi` enclosure: positive elements have `psi > 0`, others `psi <= 0`.
pub fn causal_dominant_check<I: CausalCoverInstance>(
    inst: &I,
    g: &<I::Group as Group>::Elem,
    samples: &[I::Point],
    psi_n: i64,
) -> Result<CausalDominance<I::Point>> {
    if samples.is_empty() {
        return Err(Error::Precondition("causal dominance needs sample points".into()));
    }
    let verdict = match inst.exact_positive(g) {
        Some(v) => match v? {
            Dominance::Yes => CausalDominance::PositiveWitnessed,
            Dominance::No(w) => CausalDominance::Violated(inst.witness_point(&w).unwrap_or_else(|| samples[0].clone())),
        },
        None => {
            let mut out = CausalDominance::PositiveWitnessed;
            for x in samples {
                let gx = inst.act(g, x)?;
                if gx == *x || !decided(inst, x, &gx)? {
                    out = CausalDominance::Violated(x.clone());
                    break;
                }
            }
            out
        }
    };
    if inst.is_exact() {
        let psi = psi_estimate(inst, g, psi_n, &samples[0])?;
        let clash = match &verdict {
            CausalDominance::PositiveWitnessed => psi.hi().is_negative(),
            CausalDominance::Violated(_) => psi.lo().is_positive(),
        };
        if clash {
            return Err(Error::InconsistentOracles(format!("{}: dominance verdict {verdict:?} against psi in {psi}", inst.describe())));
        }
    }
    Ok(verdict)
}

/// `R_x` as a quasimorphism with defect `3D / L`.
pub struct Rx<'a, I: CausalCoverInstance> {
    pub inst: &'a I,
    pub x: I::Point,
}

impl<I: CausalCoverInstance> Quasimorphism for Rx<'_, I> {
    type Elem = <I::Group as Group>::Elem;

    fn eval(&self, g: &Self::Elem) -> Result<Interval> {
        Ok(Interval::point(qi(r_x(self.inst, g, &self.x)?)))
    }

    fn defect(&self) -> Q {
        qi(3) * self.inst.spread() / self.inst.period()
    }

    fn is_homogeneous(&self) -> bool {
        false
    }

    fn describe(&self) -> String {
        format!("R_x at {} on {}", self.x, self.inst.describe())
    }
}

/// Bound checks on one sample `(g, h, x, y)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BoundsReport {
    pub checked: usize,
    pub violations: Vec<String>,
}

impl BoundsReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// One bound sample `(g, h, x, y, n)`.
pub type BoundSample<I> = (
    <<I as CausalCoverInstance>::Group as Group>::Elem,
    <<I as CausalCoverInstance>::Group as Group>::Elem,
    <I as CausalCoverInstance>::Point,
    <I as CausalCoverInstance>::Point,
    i64,
);

/// Checks, with `c = D / L`:
/// (1) `R_x(Z^n) = n`; (2) `0 <= R_x(g) + R_x(g^-1) <= 2c`;
/// (3) `|R_x(gh) - R_x(g) - R_x(h)| <= 3c`; (4) `|R_x(g) - R_y(g)| <= 4c`.
pub fn check_bounds<I: CausalCoverInstance>(
    inst: &I,
    samples: &[BoundSample<I>],
) -> Result<BoundsReport> {
    let c = inst.spread() / inst.period();
    let group = inst.group();
    let mut rep = BoundsReport::default();
    for (g, h, x, y, n) in samples {
        rep.checked += 1;
        let r = |e: &<I::Group as Group>::Elem, at: &I::Point| -> Result<Q> { Ok(qi(r_x(inst, e, at)?)) };
        let rz = r(&inst.deck_element(*n)?, x)?;
        if rz != qi(*n) {
            rep.violations.push(format!("(1) R_x(Z^{n}) = {rz} at x = {x}"));
        }
        let s = r(g, x)? + r(&group.invert(g)?, x)?;
        if s.is_negative() || s > qi(2) * &c {
            rep.violations.push(format!("(2) R_x(g) + R_x(g^-1) = {s} at g = {g}, x = {x}"));
        }
        let d = r(&group.compose(g, h)?, x)? - r(g, x)? - r(h, x)?;
        if d.abs() > qi(3) * &c {
            rep.violations.push(format!("(3) defect {d} at g = {g}, h = {h}, x = {x}"));
        }
        let b = r(g, x)? - r(g, y)?;
        if b.abs() > qi(4) * &c {
            rep.violations.push(format!("(4) R_x(g) - R_y(g) = {b} at g = {g}, x = {x}, y = {y}"));
        }
    }
    Ok(rep)
}

/// Checks that `x <= y` implies `zeta(x) <= zeta(y)` on the pairs; returns
/// how many pairs were comparable and the violations.
pub fn check_monotone_height<I: CausalCoverInstance>(inst: &I, pairs: &[(I::Point, I::Point)]) -> Result<(usize, Vec<String>)> {
    let mut comparable = 0;
    let mut bad = Vec::new();
    for (x, y) in pairs {
        for (a, b) in [(x, y), (y, x)] {
            if inst.leq(a, b)? == Causal::Leq {
                comparable += 1;
                let (ha, hb) = (inst.height(a)?, inst.height(b)?);
                if ha.lo() > hb.hi() {
                    bad.push(format!("{a} <= {b} but zeta {ha} > {hb}"));
                }
            }
        }
    }
    Ok((comparable, bad))
}
