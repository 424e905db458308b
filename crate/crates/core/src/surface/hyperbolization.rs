//! Shipped hyperbolizations with exactly checkable certificates of
//! discreteness.
//!
//! The once-punctured torus uses the modular torus, certified by its trace
//! triple. Every other surface uses a Schottky group: generator `i` maps
//! the complement of an interval `I_i^-` into a disjoint interval
//! `I_i^+`. The cyclic order of the intervals on the projective line fixes
//! the topology of the quotient: a handle contributes the pattern
//! `a b a' b'`, each further boundary component a pattern `c c'`.

use num_traits::Signed;

use super::{FreeWord, SurfaceData, SurfaceRep};
use crate::circle::{Direction, Mat2, MoebiusLift};
use crate::error::{Error, Result};
use crate::num::rational::{fmt_q, qi};
use crate::num::Q;

/// Largest expansion factor tried for Schottky generators.
const LAMBDA_CAP: i64 = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// Hyperbolic `a`, `b`, `ab` whose traces `(x, y, z)` satisfy
    /// `x^2 + y^2 + z^2 = xyz`, equivalently `tr [a, b] = -2`.
    Markov { traces: [Q; 3] },
    /// Closed intervals `[lo, hi]` of finite projective coordinates, in
    /// increasing order; `pairs[i] = (minus, plus)` are the slots of
    /// generator `i`.
    PingPong { intervals: Vec<(Q, Q)>, pairs: Vec<(usize, usize)> },
}

impl Certificate {
    /// Exact check of the certificate against the generator matrices.
    pub fn verify(&self, gens: &[Mat2]) -> bool {
        match self {
            Certificate::Markov { traces } => {
                if gens.len() != 2 {
                    return false;
                }
                // traces of the matrices as stored; the Fricke value
                // `x^2 + y^2 + z^2 - xyz - 2` is the trace of the commutator
                // and does not depend on the signs of the lifts to SL2
                let (a, b) = (&gens[0], &gens[1]);
                let actual = [a.trace(), b.trace(), raw_product_trace(a, b)];
                let [x, y, z] = &actual;
                let two = qi(2);
                let hyperbolic = actual.iter().all(|t| t.abs() > two);
                *traces == actual && hyperbolic && x * x + y * y + z * z - x * y * z - &two == -two
            }
            Certificate::PingPong { intervals, pairs } => {
                if pairs.len() != gens.len() || intervals.len() != 2 * gens.len() {
                    return false;
                }
                let disjoint = intervals.iter().all(|(lo, hi)| lo < hi) && intervals.windows(2).all(|w| w[0].1 < w[1].0);
                let mut used = vec![false; intervals.len()];
                for &(m, p) in pairs {
                    for s in [m, p] {
                        if s >= used.len() || std::mem::replace(&mut used[s], true) {
                            return false;
                        }
                    }
                }
                disjoint
                    && gens
                        .iter()
                        .zip(pairs)
                        .all(|(g, &(m, p))| maps_outside_into(g, &intervals[m], &intervals[p]))
            }
        }
    }
}

fn raw_product_trace(a: &Mat2, b: &Mat2) -> Q {
    let [a11, a12, a21, a22] = a.entries();
    let [b11, b12, b21, b22] = b.entries();
    a11 * b11 + a12 * b21 + a21 * b12 + a22 * b22
}

fn dir(z: &Q) -> Direction {
    Direction::from_cot(z)
}

/// `g` maps the closed complement of the open interval `minus` into the
/// open interval `plus`. Neither interval contains the horizontal line.
fn maps_outside_into(g: &Mat2, minus: &(Q, Q), plus: &(Q, Q)) -> bool {
    let (lo, hi) = (dir(&plus.0), dir(&plus.1));
    let inside = |d: &Direction| &lo < d && d < &hi;
    let e1 = g.apply(&dir(&minus.0));
    let e2 = g.apply(&dir(&minus.1));
    // the image of the complement is the arc between the images of the
    // endpoints through the image of the horizontal line
    let far = g.apply(&Direction::horizontal());
    let (first, last) = if e1 < e2 { (e1, e2) } else { (e2, e1) };
    inside(&first) && inside(&last) && first < far && far < last
}

/// One interval slot: generator index and whether it is the `+` side.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Slot {
    pub generator: usize,
    pub plus: bool,
}

/// Slots in cyclic order: `a_i b_i a_i' b_i'` per handle, then `c_j c_j'`.
fn layout(s: &SurfaceData) -> Vec<Slot> {
    let mut out = Vec::new();
    let minus = |generator| Slot { generator, plus: false };
    let plus = |generator| Slot { generator, plus: true };
    for h in 0..s.genus() as usize {
        let (a, b) = (2 * h, 2 * h + 1);
        out.extend([minus(a), minus(b), plus(a), plus(b)]);
    }
    for c in 2 * s.genus() as usize..s.rank() {
        out.extend([minus(c), plus(c)]);
    }
    out
}

/// Boundary components of the ribbon graph with one vertex whose half
/// edges are the slots: the gap after slot `k` continues in the gap after
/// the partner of slot `k + 1`.
pub fn boundary_cycles(slots: &[Slot]) -> usize {
    let n = slots.len();
    let partner = |k: usize| {
        let s = slots[k];
        (0..n)
            .find(|&j| slots[j].generator == s.generator && slots[j].plus != s.plus)
            .expect("every generator has two slots")
    };
    let next: Vec<usize> = (0..n).map(|k| partner((k + 1) % n)).collect();
    let mut seen = vec![false; n];
    let mut cycles = 0;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        cycles += 1;
        let mut k = start;
        while !seen[k] {
            seen[k] = true;
            k = next[k];
        }
    }
    cycles
}

/// The hyperbolic matrix with attracting fixed point `zp`, repelling fixed
/// point `zm` and multiplier `lambda^2`.
fn hyperbolic(zp: &Q, zm: &Q, lambda: &Q) -> Result<Mat2> {
    let det = zp - zm;
    let li = lambda.recip();
    let a = (lambda * zp - zm * &li) / &det;
    let b = zp * zm * (&li - lambda) / &det;
    let c = (lambda - &li) / &det;
    let d = (zp * &li - lambda * zm) / &det;
    Mat2::new(a, b, c, d)
}

/// `(ab)^2 a^-2 b^-2`; nonzero under every shipped hyperbolization, unlike
/// `[a, b]`, which vanishes on planar surfaces.
pub fn orientation_word() -> FreeWord {
    let (a, b) = (FreeWord::generator(1), FreeWord::generator(2));
    a.mul(&b).power(2).mul(&a.power(-2)).mul(&b.power(-2))
}

/// A Schottky representation for the surface, oriented so that
/// [`orientation_word`] has positive translation number.
pub fn schottky(s: &SurfaceData) -> Result<SurfaceRep> {
    let slots = layout(s);
    let cycles = boundary_cycles(&slots);
    if cycles != s.boundary() as usize {
        return Err(Error::InconsistentOracles(format!("layout for {s} has {cycles} boundary cycles")));
    }
    let intervals: Vec<(Q, Q)> = (0..slots.len() as i64).map(|k| (qi(4 * k), qi(4 * k + 2))).collect();
    let mut pairs = vec![(0, 0); s.rank()];
    for (k, slot) in slots.iter().enumerate() {
        if slot.plus {
            pairs[slot.generator].1 = k;
        } else {
            pairs[slot.generator].0 = k;
        }
    }
    let centre = |k: usize| qi(4 * k as i64 + 1);
    let mut gens = Vec::new();
    for &(m, p) in &pairs {
        let mut lambda = 2;
        let g = loop {
            let g = hyperbolic(&centre(p), &centre(m), &qi(lambda))?;
            if maps_outside_into(&g, &intervals[m], &intervals[p]) {
                break g;
            }
            lambda *= 2;
            if lambda > LAMBDA_CAP {
                return Err(Error::UnsupportedSurface(format!("no ping-pong generator for {s}")));
            }
        };
        gens.push(g);
    }
    let mut rep = SurfaceRep::new(*s, gens.iter().map(|g| MoebiusLift::new(g.clone(), 0)).collect())?;
    let t = rep.evaluate_word(&orientation_word())?.translation_number()?;
    let (intervals, pairs) = if t.is_negative() {
        // z -> -z reverses the cyclic order of the slots
        rep = rep.reflected()?;
        let n = intervals.len();
        let flipped = intervals.iter().rev().map(|(lo, hi)| (-hi, -lo)).collect();
        (flipped, pairs.iter().map(|&(m, p)| (n - 1 - m, n - 1 - p)).collect())
    } else {
        (intervals, pairs)
    };
    let cert = Certificate::PingPong { intervals, pairs };
    if !cert.verify(&rep.matrices()) {
        return Err(Error::InconsistentOracles(format!("ping-pong certificate for {s} does not verify")));
    }
    rep.certificate = Some(cert);
    Ok(rep.as_reference())
}

/// The shipped hyperbolization: the modular torus for the once-punctured
/// torus, a Schottky group otherwise.
pub fn example_hyperbolization(s: &SurfaceData) -> Result<SurfaceRep> {
    if (s.genus(), s.boundary()) == (1, 1) {
        let mut rep = SurfaceRep::modular_torus();
        let m = rep.matrices();
        let traces = [m[0].trace(), m[1].trace(), raw_product_trace(&m[0], &m[1])];
        let cert = Certificate::Markov { traces };
        if !cert.verify(&m) {
            return Err(Error::InconsistentOracles("modular torus trace certificate".into()));
        }
        rep.certificate = Some(cert);
        return Ok(rep.as_reference());
    }
    schottky(s)
}

impl std::fmt::Display for Certificate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Certificate::Markov { traces } => {
                let t: Vec<String> = traces.iter().map(fmt_q).collect();
                write!(f, "markov traces ({})", t.join(", "))
            }
            Certificate::PingPong { intervals, pairs } => {
                write!(f, "ping-pong")?;
                for (i, &(m, p)) in pairs.iter().enumerate() {
                    let show = |k: usize| format!("[{}, {}]", fmt_q(&intervals[k].0), fmt_q(&intervals[k].1));
                    write!(f, " {}: {} -> {}", (b'a' + i as u8) as char, show(m), show(p))?;
                }
                Ok(())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{f_sigma, lift_evaluate};

    #[test]
    fn boundary_counts_of_layouts() {
        for (g, b) in [(1, 1), (0, 3), (1, 2), (2, 1), (0, 4), (2, 3)] {
            let s = SurfaceData::new(g, b).unwrap();
            assert_eq!(boundary_cycles(&layout(&s)), b as usize, "genus {g} boundary {b}");
        }
    }

    #[test]
    fn modular_torus_certificate() {
        let s = SurfaceData::new(1, 1).unwrap();
        let rep = example_hyperbolization(&s).unwrap();
        let cert = rep.certificate.clone().unwrap();
        assert!(cert.verify(&rep.matrices()));
        let bent = [rep.matrices()[0].clone(), Mat2::from_ints(2, 1, 1, 1).unwrap()];
        assert!(!cert.verify(&bent));
    }

    #[test]
    fn schottky_groups_verify() {
        let tol = qi(1) / qi(1_000_000);
        for (g, b) in [(1, 1), (0, 3), (1, 2), (0, 4), (2, 1)] {
            let s = SurfaceData::new(g, b).unwrap();
            let rep = schottky(&s).unwrap();
            assert!(rep.certificate.as_ref().unwrap().verify(&rep.matrices()));
            let t = f_sigma(&rep, &orientation_word(), &tol).unwrap();
            let v = t.exact().expect("hyperbolic images have integral tau");
            assert!(v.is_integer() && *v > qi(0), "genus {g} boundary {b}: {v}");
            let comm = FreeWord::commutator(&FreeWord::generator(1), &FreeWord::generator(2));
            assert!(!lift_evaluate(&rep, &comm).unwrap().is_identity());
        }
        let torus = example_hyperbolization(&SurfaceData::new(1, 1).unwrap()).unwrap();
        assert!(f_sigma(&torus, &orientation_word(), &tol).unwrap().exact().unwrap() > &qi(0));
    }
}
