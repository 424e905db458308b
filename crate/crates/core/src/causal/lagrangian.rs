//! Numeric causal cover of the Lagrangian Grassmannian.
//!
//! A point is a symmetric unitary `W` with a lifted determinant angle
//! `theta`, `e^{i theta} = det W`. `Z` adds `2 pi` to `theta`. A causal curve
//! moves along `i V A V^T` with `W = V V^T` and `A` real symmetric positive
//! semidefinite, so the geodesic `V O diag(e^{i lambda}) O^T V^T` with
//! `lambda >= 0` reaches the point with angle `theta + sum lambda`.
//!
//! Heights are measured in turns, `zeta = theta / 2 pi`, so that `L = 1`.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{Causal, CausalCoverInstance};
use crate::error::{Error, Result};
use crate::num::rational::{from_f64, qi, to_f64};
use crate::num::{Interval, Q};
use crate::order::Group;

/// Tolerance on the point invariants.
pub const POINT_TOL: f64 = 1e-9;

/// Generic coefficient mixing real and imaginary parts before the joint
/// diagonalization.
const MIX: f64 = 0.577_215_664_901_532_9;

type CMat = DMatrix<Complex64>;

#[derive(Clone, Debug, PartialEq)]
pub struct LagrangianPoint {
    w: CMat,
    theta: f64,
}

fn frobenius(m: &CMat) -> f64 {
    m.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

fn conj(m: &CMat) -> CMat {
    m.map(|c| c.conj())
}

impl LagrangianPoint {
    pub fn new(w: CMat, theta: f64) -> Result<Self> {
        let n = w.nrows();
        if n == 0 || w.ncols() != n {
            return Err(Error::InvalidElement(format!("{}x{} matrix is not a Lagrangian point", w.nrows(), w.ncols())));
        }
        let asym = frobenius(&(&w - w.transpose()));
        let unit = frobenius(&(w.adjoint() * &w - CMat::identity(n, n)));
        let det = (w.clone().determinant() - Complex64::from_polar(1.0, theta)).norm();
        if asym > POINT_TOL || unit > POINT_TOL || det > POINT_TOL || !theta.is_finite() {
            return Err(Error::InvalidElement(format!(
                "not a lifted symmetric unitary: asymmetry {asym:e}, unitarity {unit:e}, determinant {det:e}"
            )));
        }
        Ok(LagrangianPoint { w, theta })
    }

    /// The rank-one point over the circle coordinate `x`: `theta = 2 pi x`.
    pub fn from_circle(x: f64) -> Self {
        let theta = TAU * x;
        LagrangianPoint { w: CMat::from_element(1, 1, Complex64::from_polar(1.0, theta)), theta }
    }

    pub fn dim(&self) -> usize {
        self.w.nrows()
    }

    pub fn matrix(&self) -> &CMat {
        &self.w
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }
}

impl fmt::Display for LagrangianPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "theta={} w=[", self.theta)?;
        for i in 0..self.dim() {
            if i > 0 {
                write!(f, ";")?;
            }
            for j in 0..self.dim() {
                if j > 0 {
                    write!(f, ",")?;
                }
                let c = self.w[(i, j)];
                write!(f, "({},{})", c.re, c.im)?;
            }
        }
        write!(f, "]")
    }
}

impl FromStr for LagrangianPoint {
    type Err = Error;

    /// Row-major entries: `theta=<t> w=[(re,im),(re,im);(re,im),(re,im)]`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |what: &str| Error::Parse(format!("{what} in Lagrangian point {s:?}"));
        let s = s.trim();
        let rest = s.strip_prefix("theta=").ok_or_else(|| bad("expected theta="))?;
        let (t, m) = rest.split_once(" w=").ok_or_else(|| bad("expected w="))?;
        let theta: f64 = t.trim().parse().map_err(|_| bad("bad theta"))?;
        let body = m.trim().strip_prefix('[').and_then(|b| b.strip_suffix(']')).ok_or_else(|| bad("expected [...]"))?;
        let rows: Vec<Vec<Complex64>> = body
            .split(';')
            .map(|row| {
                row.split("),")
                    .map(|e| {
                        let e = e.trim().trim_start_matches('(').trim_end_matches(')');
                        let (re, im) = e.split_once(',').ok_or_else(|| bad("expected (re,im)"))?;
                        let re: f64 = re.trim().parse().map_err(|_| bad("bad real part"))?;
                        let im: f64 = im.trim().parse().map_err(|_| bad("bad imaginary part"))?;
                        Ok(Complex64::new(re, im))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(bad("matrix is not square"));
        }
        LagrangianPoint::new(CMat::from_fn(n, n, |i, j| rows[i][j]), theta)
    }
}

/// `W = O diag(e^{i phi}) O^T` with `O` real orthogonal: the real and
/// imaginary parts of a symmetric unitary commute.
fn diagonalize(w: &CMat) -> (DMatrix<f64>, Vec<f64>) {
    let mixed = w.map(|c| c.re + MIX * c.im);
    let o = SymmetricEigen::new(mixed).eigenvectors;
    let oc = o.map(|x| Complex64::new(x, 0.0));
    let d = oc.transpose() * w * &oc;
    let phi = (0..w.nrows()).map(|j| d[(j, j)].arg()).collect();
    (o, phi)
}

/// `V` with `W = V V^T`.
fn square_root(w: &CMat) -> CMat {
    let (o, phi) = diagonalize(w);
    let n = w.nrows();
    let half = CMat::from_fn(n, n, |i, j| if i == j { Complex64::from_polar(1.0, phi[i] / 2.0) } else { Complex64::new(0.0, 0.0) });
    o.map(|x| Complex64::new(x, 0.0)) * half
}

/// Principal relative angles in `[0, 2 pi)` of `y` seen from `x`.
pub fn relative_angles(x: &LagrangianPoint, y: &LagrangianPoint) -> Result<Vec<f64>> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch(format!("{} and {}", x.dim(), y.dim())));
    }
    let v = square_root(&x.w);
    let m = v.adjoint() * &y.w * conj(&v);
    let (_, phi) = diagonalize(&m);
    Ok(phi.into_iter().map(|a| a.rem_euclid(TAU)).collect())
}

/// Spectral-lift criterion: `x <= y` iff the relative angles have
/// nonnegative lifts summing to `theta_y - theta_x`. Angles within `tol` of
/// zero or a full turn are snapped to zero; a lift count not near an
/// integer is undecided.
pub fn spectral_leq(x: &LagrangianPoint, y: &LagrangianPoint, tol: f64) -> Result<Causal> {
    let angles = relative_angles(x, y)?;
    let d = y.theta - x.theta;
    let s: f64 = angles.iter().map(|&a| if a < tol || a > TAU - tol { 0.0 } else { a }).sum();
    let k = (d - s) / TAU;
    let r = k.round();
    Ok(if (k - r).abs() > tol * (1.0 + d.abs()) {
        Causal::Undecided
    } else if r >= 0.0 {
        Causal::Leq
    } else {
        Causal::NotLeq
    })
}

/// Discretized search over single causal geodesics from `x` whose angle
/// budget matches `theta_y - theta_x`, for `n <= 2`: a grid over the frame
/// angle and the split of the budget, then pattern-search refinement.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PathSearch {
    pub frame_steps: usize,
    pub budget_steps: usize,
    pub refinements: usize,
    /// Largest endpoint distance, in Frobenius norm, counted as a hit.
    pub tol: f64,
}

impl Default for PathSearch {
    fn default() -> Self {
        PathSearch { frame_steps: 48, budget_steps: 48, refinements: 60, tol: 1e-6 }
    }
}

impl PathSearch {
    fn endpoint(v: &CMat, beta: f64, lambda: &[f64]) -> CMat {
        let n = lambda.len();
        let o = if n == 1 {
            DMatrix::from_element(1, 1, 1.0)
        } else {
            let (c, s) = (beta.cos(), beta.sin());
            DMatrix::from_row_slice(2, 2, &[c, -s, s, c])
        };
        let oc = o.map(|x| Complex64::new(x, 0.0));
        let d = CMat::from_fn(n, n, |i, j| if i == j { Complex64::from_polar(1.0, lambda[i]) } else { Complex64::new(0.0, 0.0) });
        v * &oc * d * oc.transpose() * v.transpose()
    }

    /// Distance from `y` of the closest geodesic endpoint found.
    pub fn closest(&self, x: &LagrangianPoint, y: &LagrangianPoint) -> Result<f64> {
        let n = x.dim();
        if n != y.dim() {
            return Err(Error::DimensionMismatch(format!("{} and {}", n, y.dim())));
        }
        if n > 2 {
            return Err(Error::Precondition("path search supports n <= 2".into()));
        }
        let budget = y.theta - x.theta;
        if budget < -self.tol {
            return Ok(f64::INFINITY);
        }
        let budget = budget.max(0.0);
        let v = square_root(&x.w);
        let dist = |beta: f64, l1: f64| -> f64 {
            let l1 = l1.clamp(0.0, budget);
            let lambda = if n == 1 { vec![budget] } else { vec![l1, budget - l1] };
            frobenius(&(Self::endpoint(&v, beta, &lambda) - &y.w))
        };
        if n == 1 {
            return Ok(dist(0.0, budget));
        }
        let (mut best, mut bb, mut bl) = (f64::INFINITY, 0.0, 0.0);
        for i in 0..self.frame_steps {
            let beta = PI * i as f64 / self.frame_steps as f64;
            for j in 0..=self.budget_steps {
                let l1 = budget * j as f64 / self.budget_steps as f64;
                let d = dist(beta, l1);
                if d < best {
                    (best, bb, bl) = (d, beta, l1);
                }
            }
        }
        let (mut sb, mut sl) = (PI / self.frame_steps as f64, budget / self.budget_steps as f64);
        for _ in 0..self.refinements {
            let mut moved = false;
            for (db, dl) in [(sb, 0.0), (-sb, 0.0), (0.0, sl), (0.0, -sl)] {
                let d = dist(bb + db, bl + dl);
                if d < best {
                    (best, bb, bl) = (d, bb + db, (bl + dl).clamp(0.0, budget));
                    moved = true;
                }
            }
            if !moved {
                sb /= 2.0;
                sl /= 2.0;
            }
        }
        Ok(best)
    }

    pub fn leq(&self, x: &LagrangianPoint, y: &LagrangianPoint) -> Result<Causal> {
        Ok(if self.closest(x, y)? <= self.tol { Causal::Leq } else { Causal::NotLeq })
    }
}

/// A unitary `g` with a lift `shift` of `arg det(g)^2`, acting by
/// `W -> g W g^T`, `theta -> theta + shift`.
#[derive(Clone, Debug, PartialEq)]
pub struct LagrangianElement {
    pub g: CMat,
    pub shift: f64,
}

impl fmt::Display for LagrangianElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unitary shift={} g={}", self.shift, self.g)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LagrangianGroup {
    pub n: usize,
}

impl Group for LagrangianGroup {
    type Elem = LagrangianElement;

    fn identity(&self) -> LagrangianElement {
        LagrangianElement { g: CMat::identity(self.n, self.n), shift: 0.0 }
    }

    fn compose(&self, a: &LagrangianElement, b: &LagrangianElement) -> Result<LagrangianElement> {
        Ok(LagrangianElement { g: &a.g * &b.g, shift: a.shift + b.shift })
    }

    fn invert(&self, a: &LagrangianElement) -> Result<LagrangianElement> {
        Ok(LagrangianElement { g: a.g.adjoint(), shift: -a.shift })
    }

    fn is_identity(&self, a: &LagrangianElement) -> bool {
        a.shift.abs() <= POINT_TOL && frobenius(&(&a.g - CMat::identity(self.n, self.n))) <= POINT_TOL
    }
}

/// The numeric instance. `D` is declared in turns; the relative angles sum
/// to less than `n` turns, so `D = n + 1` leaves a margin of one turn.
#[derive(Clone, Debug, PartialEq)]
pub struct LagrangianCover {
    group: LagrangianGroup,
    spread: Q,
    pub tol: f64,
    /// Cross-validation for `n <= 2`; a disagreement is undecided.
    pub path: Option<PathSearch>,
}

impl LagrangianCover {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Precondition("dimension must be positive".into()));
        }
        Ok(LagrangianCover { group: LagrangianGroup { n }, spread: qi(n as i64 + 1), tol: POINT_TOL, path: None })
    }

    pub fn with_path_search(mut self, p: PathSearch) -> Self {
        self.path = Some(p);
        self
    }

    pub fn dim(&self) -> usize {
        self.group.n
    }

    /// `U diag(e^{i phi}) U^T` for a random unitary `U`, with a random lift.
    pub fn sample_point(&self, rng: &mut ChaCha8Rng) -> LagrangianPoint {
        let n = self.dim();
        let u = random_unitary(n, rng);
        let phi: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..TAU)).collect();
        let d = CMat::from_fn(n, n, |i, j| if i == j { Complex64::from_polar(1.0, phi[i]) } else { Complex64::new(0.0, 0.0) });
        let w = &u * d * u.transpose();
        let w = (&w + w.transpose()).scale(0.5);
        let base = w.clone().determinant().arg();
        let theta = base + TAU * rng.random_range(-2..=2) as f64;
        LagrangianPoint { w, theta }
    }

    pub fn sample_element(&self, rng: &mut ChaCha8Rng) -> LagrangianElement {
        let g = random_unitary(self.dim(), rng);
        let det = g.clone().determinant();
        let shift = 2.0 * det.arg() + TAU * rng.random_range(-1..=1) as f64;
        LagrangianElement { g, shift }
    }
}

/// Gram-Schmidt on a matrix with uniform entries in the unit square.
fn random_unitary(n: usize, rng: &mut ChaCha8Rng) -> CMat {
    let m = CMat::from_fn(n, n, |_, _| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
    m.qr().q()
}

impl CausalCoverInstance for LagrangianCover {
    type Point = LagrangianPoint;
    type Group = LagrangianGroup;

    fn group(&self) -> &LagrangianGroup {
        &self.group
    }

    fn deck(&self, x: &LagrangianPoint, n: i64) -> Result<LagrangianPoint> {
        Ok(LagrangianPoint { w: x.w.clone(), theta: x.theta + TAU * n as f64 })
    }

    fn deck_element(&self, n: i64) -> Result<LagrangianElement> {
        Ok(LagrangianElement { g: CMat::identity(self.dim(), self.dim()), shift: TAU * n as f64 })
    }

    fn height(&self, x: &LagrangianPoint) -> Result<Interval> {
        Ok(Interval::point(from_f64(x.theta / TAU)).widen(&from_f64(self.tol)))
    }

    fn period(&self) -> Q {
        qi(1)
    }

    fn spread(&self) -> Q {
        self.spread.clone()
    }

    fn act(&self, g: &LagrangianElement, x: &LagrangianPoint) -> Result<LagrangianPoint> {
        if g.g.nrows() != x.dim() {
            return Err(Error::DimensionMismatch(format!("{} acting on {}", g.g.nrows(), x.dim())));
        }
        Ok(LagrangianPoint { w: &g.g * &x.w * g.g.transpose(), theta: x.theta + g.shift })
    }

    fn leq(&self, x: &LagrangianPoint, y: &LagrangianPoint) -> Result<Causal> {
        let spectral = spectral_leq(x, y, self.tol)?;
        if let (Some(p), true) = (self.path, self.dim() <= 2) {
            let path = p.leq(x, y)?;
            if spectral != Causal::Undecided && path != spectral {
                log::warn!("lagrangian order: spectral {spectral:?} and path search {path:?} disagree at {x} vs {y}");
                return Ok(Causal::Undecided);
            }
        }
        Ok(spectral)
    }

    fn is_exact(&self) -> bool {
        false
    }

    fn describe(&self) -> String {
        format!("lagrangian cover (n = {}, L = 1 turn, D = {} turns)", self.dim(), to_f64(&self.spread))
    }
}

/// Agreement counts between two order oracles on the same pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AgreementReport {
    pub total: usize,
    pub agree: usize,
    pub undecided: usize,
    pub discrepancies: Vec<String>,
}

impl AgreementReport {
    pub fn rate(&self) -> f64 {
        if self.total == 0 {
            1.0
        } else {
            self.agree as f64 / self.total as f64
        }
    }
}

/// `n = 1` against the exact order of the rational circle coordinates.
pub fn rank_one_agreement(pairs: &[(Q, Q)], tol: f64) -> Result<AgreementReport> {
    let mut r = AgreementReport::default();
    for (a, b) in pairs {
        r.total += 1;
        let (x, y) = (LagrangianPoint::from_circle(to_f64(a)), LagrangianPoint::from_circle(to_f64(b)));
        let exact = if a <= b { Causal::Leq } else { Causal::NotLeq };
        match spectral_leq(&x, &y, tol)? {
            Causal::Undecided => r.undecided += 1,
            v if v == exact => r.agree += 1,
            v => r.discrepancies.push(format!("{a} vs {b}: spectral {v:?}, exact {exact:?}")),
        }
    }
    Ok(r)
}

/// Spectral criterion against path search on sampled pairs; diagnostic.
pub fn spectral_vs_path(cover: &LagrangianCover, search: &PathSearch, rng: &mut ChaCha8Rng, count: usize) -> Result<AgreementReport> {
    let mut r = AgreementReport::default();
    for _ in 0..count {
        let x = cover.sample_point(rng);
        // half the targets are reached along a random causal geodesic
        let y = if rng.random_bool(0.5) {
            let n = cover.dim();
            let lambda: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..PI)).collect();
            let beta = rng.random_range(0.0..PI);
            let w = PathSearch::endpoint(&square_root(&x.w), beta, &lambda);
            LagrangianPoint { w, theta: x.theta + lambda.iter().sum::<f64>() }
        } else {
            cover.sample_point(rng)
        };
        r.total += 1;
        let s = spectral_leq(&x, &y, cover.tol)?;
        let p = search.leq(&x, &y)?;
        if s == Causal::Undecided {
            r.undecided += 1;
        } else if s == p {
            r.agree += 1;
        } else {
            let msg = format!("spectral {s:?}, path {p:?} at {x} vs {y}");
            log::info!("lagrangian discrepancy: {msg}");
            r.discrepancies.push(msg);
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::rational::q;
    use rand::SeedableRng;

    #[test]
    fn leq_examples() {
        let cover = LagrangianCover::new(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let x = cover.sample_point(&mut rng);
            assert_eq!(cover.leq(&x, &x).unwrap(), Causal::Leq);
            assert_eq!(cover.leq(&x, &cover.deck(&x, 1).unwrap()).unwrap(), Causal::Leq);
            assert_eq!(cover.leq(&cover.deck(&x, 1).unwrap(), &x).unwrap(), Causal::NotLeq);
        }
        let one = LagrangianCover::new(1).unwrap();
        assert!(matches!(one.leq(&cover.sample_point(&mut rng), &one.sample_point(&mut rng)), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn points_round_trip_and_validate() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let x = LagrangianCover::new(2).unwrap().sample_point(&mut rng);
        let y: LagrangianPoint = x.to_string().parse().unwrap();
        assert!(frobenius(&(x.matrix() - y.matrix())) < 1e-12 && (x.theta() - y.theta()).abs() < 1e-12);
        assert!("theta=0.5 w=[(1,0)]".parse::<LagrangianPoint>().is_err());
        assert!("theta=0 w=[(1,0),(0,1);(0,0),(1,0)]".parse::<LagrangianPoint>().is_err());
    }

    #[test]
    fn rank_one_matches_circle() {
        let pairs: Vec<(Q, Q)> = (0..40).map(|k| (q(k, 7), q(40 - 2 * k, 9))).collect();
        let r = rank_one_agreement(&pairs, POINT_TOL).unwrap();
        assert_eq!((r.agree, r.undecided), (r.total, 0));
    }

    #[test]
    fn geodesic_endpoints_are_later() {
        let cover = LagrangianCover::new(2).unwrap().with_path_search(PathSearch::default());
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let r = spectral_vs_path(&cover, &PathSearch::default(), &mut rng, 20).unwrap();
        assert!(r.agree + r.undecided + r.discrepancies.len() == 20);
        let x = cover.sample_point(&mut rng);
        let w = PathSearch::endpoint(&square_root(&x.w), 0.3, &[0.4, 1.1]);
        let y = LagrangianPoint::new(w, x.theta + 1.5).unwrap();
        assert_eq!(spectral_leq(&x, &y, POINT_TOL).unwrap(), Causal::Leq);
        assert_eq!(spectral_leq(&y, &x, POINT_TOL).unwrap(), Causal::NotLeq);
        assert!(PathSearch::default().closest(&x, &y).unwrap() < 1e-6);
    }
}
