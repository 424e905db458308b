//! Surfaces with boundary, representations of their free fundamental
//! groups by lifts of projective maps, and the orders they induce on the
//! commutator subgroup.
//!
//! A word `x1 x2 ... xk` is evaluated as the composition
//! `rho(x1) o rho(x2) o ... o rho(xk)`.

mod format;
pub use format::{parse_rep, rep_to_text};
mod hyperbolization;
pub mod sample;
mod word;

use std::fmt;

use crate::circle::{pointwise_compare, CircleElement, ComparisonVerdict, Dominance, LiftedPoint, Mat2, MoebiusLift, Witness};
use crate::error::{Error, Result};
use crate::num::rational::qi;
use crate::num::{Interval, Q};
use crate::order::{Homomorphism, OrderOracle};
use crate::quasimorphism::Quasimorphism;

pub use hyperbolization::{boundary_cycles, example_hyperbolization, orientation_word, schottky, Certificate, Slot};
pub use word::{FreeGroup, FreeWord, MAX_RANK};

/// A compact oriented surface with `boundary >= 1` components and negative
/// Euler characteristic; its fundamental group is free of rank
/// `2 genus + boundary - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SurfaceData {
    genus: u32,
    boundary: u32,
}

impl SurfaceData {
    pub fn new(genus: u32, boundary: u32) -> Result<Self> {
        if boundary == 0 {
            return Err(Error::UnsupportedSurface(format!("genus {genus} without boundary")));
        }
        let s = SurfaceData { genus, boundary };
        if s.euler_characteristic() >= 0 {
            return Err(Error::UnsupportedSurface(format!(
                "genus {genus} with {boundary} boundary components has Euler characteristic {}",
                s.euler_characteristic()
            )));
        }
        if s.rank() > MAX_RANK {
            return Err(Error::UnsupportedSurface(format!("free rank {} above {MAX_RANK}", s.rank())));
        }
        Ok(s)
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn boundary(&self) -> u32 {
        self.boundary
    }

    pub fn euler_characteristic(&self) -> i64 {
        2 - 2 * self.genus as i64 - self.boundary as i64
    }

    pub fn rank(&self) -> usize {
        (2 * self.genus + self.boundary - 1) as usize
    }

    pub fn free_group(&self) -> FreeGroup {
        FreeGroup { rank: self.rank() }
    }
}

impl fmt::Display for SurfaceData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "surface genus={} boundary={}", self.genus, self.boundary)
    }
}

/// Generators sent to lifts of projective maps. The matrices define `rho`;
/// the windings choose a lift of `rho` on the whole free group, which on
/// the commutator subgroup does not depend on them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceRep {
    pub surface: SurfaceData,
    gens: Vec<MoebiusLift>,
    inverses: Vec<MoebiusLift>,
    /// Set for representations used to define the reference order.
    pub reference: bool,
    pub certificate: Option<Certificate>,
}

impl SurfaceRep {
    pub fn new(surface: SurfaceData, gens: Vec<MoebiusLift>) -> Result<Self> {
        if gens.len() != surface.rank() {
            return Err(Error::InvalidElement(format!("{} generators for free rank {}", gens.len(), surface.rank())));
        }
        let inverses = gens.iter().map(MoebiusLift::inverse).collect::<Result<_>>()?;
        Ok(SurfaceRep { surface, gens, inverses, reference: false, certificate: None })
    }

    /// `a -> [[1,1],[1,2]]`, `b -> [[1,-1],[-1,2]]` on the once-punctured torus.
    pub fn modular_torus() -> Self {
        let a = Mat2::from_ints(1, 1, 1, 2).expect("unimodular");
        let b = Mat2::from_ints(1, -1, -1, 2).expect("unimodular");
        let s = SurfaceData::new(1, 1).expect("once-punctured torus");
        SurfaceRep::new(s, vec![MoebiusLift::new(a, 0), MoebiusLift::new(b, 0)]).expect("rank two")
    }

    pub fn gens(&self) -> &[MoebiusLift] {
        &self.gens
    }

    pub fn matrices(&self) -> Vec<Mat2> {
        self.gens.iter().map(|g| g.mat.clone()).collect()
    }

    pub fn as_reference(mut self) -> Self {
        self.reference = true;
        self
    }

    pub fn with_windings(&self, windings: &[i64]) -> Result<Self> {
        let gens = self.gens.iter().zip(windings).map(|(g, &w)| MoebiusLift::new(g.mat.clone(), w)).collect();
        let mut r = SurfaceRep::new(self.surface, gens)?;
        r.reference = self.reference;
        r.certificate = self.certificate.clone();
        Ok(r)
    }

    /// Conjugate by the reflection of the projective line; reverses the
    /// orientation.
    pub fn reflected(&self) -> Result<Self> {
        let gens = self.gens.iter().map(|g| MoebiusLift::new(g.mat.reflected(), 0)).collect();
        SurfaceRep::new(self.surface, gens)
    }

    /// The lift of `rho(w)` determined by the generator windings.
    pub fn evaluate_word(&self, w: &FreeWord) -> Result<MoebiusLift> {
        if w.max_generator() > self.gens.len() {
            return Err(Error::InvalidElement(format!("word {w} uses generators beyond rank {}", self.gens.len())));
        }
        let mut acc = MoebiusLift::identity();
        for &l in w.letters() {
            let k = l.unsigned_abs() as usize - 1;
            let x = if l > 0 { &self.gens[k] } else { &self.inverses[k] };
            acc = acc.compose(x)?;
        }
        Ok(acc)
    }
}

/// True iff every exponent sum of `w` vanishes.
pub fn in_commutator_subgroup(w: &FreeWord) -> bool {
    w.in_commutator_subgroup()
}

/// The canonical lift of `rho(w)` for `w` in the commutator subgroup.
pub fn lift_evaluate(rep: &SurfaceRep, w: &FreeWord) -> Result<MoebiusLift> {
    if !w.in_commutator_subgroup() {
        return Err(Error::NotInCommutator(w.to_string()));
    }
    rep.evaluate_word(w)
}

/// `f_Sigma(w)`: the translation number of the reference lift of `w`.
/// Exact for non-elliptic images; elliptic enclosures are far narrower
/// than any `tol` above `1e-40`.
pub fn f_sigma(rep_ref: &SurfaceRep, w: &FreeWord, _tol: &Q) -> Result<Interval> {
    if !rep_ref.reference {
        return Err(Error::Precondition("f_Sigma needs a reference hyperbolization".into()));
    }
    lift_evaluate(rep_ref, w)?.translation_number()
}

/// Decides `w >_{q,Sigma} e`, i.e. `x + q < rho_ref(w)(x)` for all `x`.
pub fn positive_in_sigma_order(rep_ref: &SurfaceRep, w: &FreeWord, q: i64) -> Result<Dominance> {
    if q < 0 {
        return Err(Error::Precondition("q must be nonnegative".into()));
    }
    let g = CircleElement::Moebius(lift_evaluate(rep_ref, w)?);
    let id = CircleElement::Moebius(MoebiusLift::identity());
    Ok(match pointwise_compare(&id, &g, &qi(q), true)? {
        ComparisonVerdict::StrictlyBelow => Dominance::Yes,
        ComparisonVerdict::Incomparable { witness } => Dominance::No(witness),
        ComparisonVerdict::Equal | ComparisonVerdict::StrictlyAbove => Dominance::No(Witness::Lifted(LiftedPoint::origin())),
    })
}

/// `f_Sigma` as a quasimorphism on the commutator subgroup.
#[derive(Clone, Debug)]
pub struct FSigma<'a> {
    pub rep: &'a SurfaceRep,
    pub tol: Q,
}

impl Quasimorphism for FSigma<'_> {
    type Elem = FreeWord;

    fn eval(&self, w: &FreeWord) -> Result<Interval> {
        f_sigma(self.rep, w, &self.tol)
    }

    fn defect(&self) -> Q {
        qi(1)
    }

    fn is_homogeneous(&self) -> bool {
        true
    }

    fn describe(&self) -> String {
        "f_Sigma".into()
    }
}

/// The homomorphism from the free group given by a representation and its
/// generator windings.
#[derive(Clone, Debug)]
pub struct RepHomomorphism<'a> {
    rep: &'a SurfaceRep,
    group: FreeGroup,
}

impl<'a> RepHomomorphism<'a> {
    pub fn new(rep: &'a SurfaceRep) -> Self {
        RepHomomorphism { rep, group: rep.surface.free_group() }
    }
}

impl Homomorphism for RepHomomorphism<'_> {
    type Source = FreeGroup;
    type TargetElem = CircleElement;

    fn source(&self) -> &FreeGroup {
        &self.group
    }

    fn apply(&self, w: &FreeWord) -> Result<CircleElement> {
        Ok(CircleElement::Moebius(self.rep.evaluate_word(w)?))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LambdaFit {
    /// `tau(rho(w)) = lambda f_Sigma(w)` on all words, with Toledo value
    /// `lambda |chi|`.
    Proportional { lambda: Interval, toledo: Interval, words: usize },
    NonProportional { first: FreeWord, second: FreeWord },
}

/// Fits `tau o rho = lambda f_Sigma` on the words.
pub fn lambda_fit(rho: &SurfaceRep, rep_ref: &SurfaceRep, words: &[FreeWord], tol: &Q) -> Result<LambdaFit> {
    let mut lambda: Option<(Interval, FreeWord)> = None;
    let mut zeros = Vec::new();
    for w in words {
        let fs = f_sigma(rep_ref, w, tol)?;
        let fv = lift_evaluate(rho, w)?.translation_number()?.widen(tol);
        if fs.exact().is_some_and(|x| *x == qi(0)) {
            zeros.push((w, fv));
            continue;
        }
        let ratio = fv.div(&fs).ok_or_else(|| Error::Undecided(format!("sign of f_Sigma({w}) = {fs}")))?.widen(tol);
        lambda = match lambda {
            None => Some((ratio, w.clone())),
            Some((l, first)) => match l.intersect(&ratio) {
                Some(l) => Some((l, first)),
                None => return Ok(LambdaFit::NonProportional { first, second: w.clone() }),
            },
        };
    }
    let (lambda, first) = lambda.ok_or(Error::DegenerateSample)?;
    if let Some((w, _)) = zeros.iter().find(|(_, fv)| !fv.contains(&qi(0))) {
        return Ok(LambdaFit::NonProportional { first, second: (*w).clone() });
    }
    let chi = qi(rep_ref.surface.euler_characteristic().abs());
    let toledo = lambda.scale(&chi);
    Ok(LambdaFit::Proportional { lambda, toledo, words: words.len() })
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PreservationReport {
    pub checked: usize,
    pub positive_words: usize,
    /// Positive words whose image is not positive in the target order.
    pub violations: Vec<String>,
    /// Positive words sent to the identity.
    pub strictness: Vec<String>,
}

impl PreservationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.strictness.is_empty()
    }
}

/// Checks that every word with `w >_{q,Sigma} e` has a positive,
/// nonidentity image under `rho`.
pub fn check_order_preserving<O>(
    rho: &SurfaceRep,
    rep_ref: &SurfaceRep,
    q: i64,
    target: &O,
    words: &[FreeWord],
) -> Result<PreservationReport>
where
    O: OrderOracle<Elem = CircleElement>,
{
    let mut r = PreservationReport { checked: words.len(), ..Default::default() };
    for w in words {
        if positive_in_sigma_order(rep_ref, w, q)? != Dominance::Yes {
            continue;
        }
        r.positive_words += 1;
        let image = CircleElement::Moebius(lift_evaluate(rho, w)?);
        if target.is_identity(&image) {
            r.strictness.push(format!("{w} is positive but maps to the identity"));
        } else if !target.is_positive(&image)? {
            r.violations.push(format!("{w} is positive but maps to {image}"));
        }
    }
    Ok(r)
}
