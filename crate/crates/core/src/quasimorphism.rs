//! Quasimorphisms with certified evaluation, homogenization and audits of
//! the orders they sandwich.

use std::cmp::Ordering;

use num_traits::Zero;

use crate::circle::CircleElement;
use crate::error::{Error, Result};
use crate::num::rational::{fmt_q, qi};
use crate::num::{Interval, Q};
use crate::order::{growth_en, DominantSet, Group, OrderOracle, Positivity};

/// A map `f` with `|f(gh) - f(g) - f(h)| <= defect()` for all `g, h`.
pub trait Quasimorphism {
    type Elem;

    /// Certified enclosure of `f(g)`.
    fn eval(&self, g: &Self::Elem) -> Result<Interval>;

    fn defect(&self) -> Q;

    fn is_homogeneous(&self) -> bool;

    fn describe(&self) -> String;

    /// Exact sign of `f(g)`. The default only succeeds when the enclosure
    /// decides it.
    fn sign(&self, g: &Self::Elem) -> Result<Ordering> {
        let v = self.eval(g)?;
        if v.is_positive() {
            Ok(Ordering::Greater)
        } else if v.is_negative() {
            Ok(Ordering::Less)
        } else if v.exact().is_some_and(|x| x.is_zero()) {
            Ok(Ordering::Equal)
        } else {
            Err(Error::Undecided(format!("sign of {} at an element, enclosure {v}", self.describe())))
        }
    }
}

/// The translation number on one kind of circle element; homogeneous with
/// the classical defect `1`.
#[derive(Clone, Debug)]
pub struct TranslationNumber {
    pub tol: Q,
}

impl Default for TranslationNumber {
    fn default() -> Self {
        TranslationNumber { tol: crate::circle::default_tol() }
    }
}

impl Quasimorphism for TranslationNumber {
    type Elem = CircleElement;

    fn eval(&self, g: &CircleElement) -> Result<Interval> {
        g.translation_number(&self.tol)
    }

    fn defect(&self) -> Q {
        qi(1)
    }

    fn is_homogeneous(&self) -> bool {
        true
    }

    fn describe(&self) -> String {
        "tau".into()
    }

    fn sign(&self, g: &CircleElement) -> Result<Ordering> {
        g.tau_sign()
    }
}

/// `f(n) = n` on the integers.
#[derive(Clone, Copy, Debug, Default)]
pub struct IntegerIdentity;

impl Quasimorphism for IntegerIdentity {
    type Elem = i64;

    fn eval(&self, g: &i64) -> Result<Interval> {
        Ok(Interval::point(qi(*g)))
    }

    fn defect(&self) -> Q {
        qi(0)
    }

    fn is_homogeneous(&self) -> bool {
        true
    }

    fn describe(&self) -> String {
        "identity".into()
    }
}

/// `f(g^n) / n` widened by `defect / n`; the homogenization of `f` lies in
/// the result. For homogeneous `f` this is just `f(g)` widened.
pub fn homogenize<G, F>(group: &G, f: &F, g: &G::Elem, n: i64) -> Result<Interval>
where
    G: Group,
    F: Quasimorphism<Elem = G::Elem>,
{
    if n < 1 {
        return Err(Error::Precondition("homogenization needs N >= 1".into()));
    }
    let nq = qi(n);
    let v = f.eval(&group.power(g, n)?)?;
    Ok(v.scale(&nq.recip()).widen(&(f.defect() / nq)))
}

/// Largest certified lower bound of `|f(gh) - f(g) - f(h)|` over the pairs,
/// and the pairs where that bound exceeds the declared defect.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DefectReport {
    pub pairs: usize,
    pub max_lower: Q,
    pub violations: Vec<String>,
}

pub fn defect_audit<G, F>(group: &G, f: &F, pairs: &[(G::Elem, G::Elem)]) -> Result<DefectReport>
where
    G: Group,
    F: Quasimorphism<Elem = G::Elem>,
{
    let mut r = DefectReport { pairs: pairs.len(), ..Default::default() };
    let d = f.defect();
    for (g, h) in pairs {
        let gh = group.compose(g, h)?;
        let df = (f.eval(&gh)? - f.eval(g)? - f.eval(h)?).abs();
        if df.lo() > &r.max_lower {
            r.max_lower = df.lo().clone();
        }
        if df.lo() > &d {
            r.violations.push(format!("{g}, {h}: |df| >= {}", fmt_q(df.lo())));
        }
    }
    Ok(r)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SandwichReport {
    pub checked: usize,
    /// Samples with `f(g) >= C` certified and `g` not positive.
    pub violations: Vec<String>,
    /// Samples whose enclosure straddles `C` and which are not positive.
    pub undecided: Vec<String>,
}

impl SandwichReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `{f >= C}` against the positives on the samples.
pub fn sandwich_audit<O, F>(f: &F, c: &Q, order: &O, samples: &[O::Elem]) -> Result<SandwichReport>
where
    O: OrderOracle,
    F: Quasimorphism<Elem = O::Elem>,
{
    let mut r = SandwichReport { checked: samples.len(), ..Default::default() };
    for g in samples {
        let v = f.eval(g)?;
        if v.hi() < c || order.is_positive(g)? {
            continue;
        }
        if v.lo() >= c {
            r.violations.push(format!("{g}: {} = {v} >= {} but not positive", f.describe(), fmt_q(c)));
        } else {
            r.undecided.push(format!("{g}: {} = {v}", f.describe()));
        }
    }
    Ok(r)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DominantReport {
    pub checked: usize,
    pub dominant: usize,
    pub disagreements: Vec<String>,
}

impl DominantReport {
    pub fn passed(&self) -> bool {
        self.disagreements.is_empty()
    }
}

/// Compares membership in `G++` with "positive and `f > 0`".
pub fn dominant_audit<O, D, F>(f: &F, order: &O, dom: &D, samples: &[O::Elem]) -> Result<DominantReport>
where
    O: OrderOracle,
    D: DominantSet<Elem = O::Elem>,
    F: Quasimorphism<Elem = O::Elem>,
{
    let mut r = DominantReport { checked: samples.len(), ..Default::default() };
    for g in samples {
        let positive = order.positivity(g)? != Positivity::NotPositive;
        let predicted = positive && f.sign(g)? == Ordering::Greater;
        let actual = dom.is_dominant(g)?;
        if actual {
            r.dominant += 1;
        }
        if predicted != actual {
            r.disagreements.push(format!("{g}: dominant {actual}, positive with {} > 0 {predicted}", f.describe()));
        }
    }
    Ok(r)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatioRow {
    pub n: i64,
    pub e_n: i64,
    pub lower_ok: bool,
    pub upper_ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatioReport {
    pub ratio: Interval,
    pub rows: Vec<RatioRow>,
}

impl RatioReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.lower_ok && r.upper_ok)
    }
}

/// For `n = 1..=big_n`, certifies
/// `-D / (n f(g)) <= e_n / n - f(h) / f(g) <= (D + C + f(g)) / (n f(g))`.
pub fn reconstruct_ratio_check<O, F>(
    order: &O,
    f: &F,
    c: &Q,
    g: &O::Elem,
    h: &O::Elem,
    big_n: i64,
    power_cap: i64,
) -> Result<RatioReport>
where
    O: OrderOracle,
    F: Quasimorphism<Elem = O::Elem>,
{
    let fg = f.eval(g)?;
    if !fg.is_positive() {
        return Err(Error::Precondition(format!("{}(g) = {fg} is not positive", f.describe())));
    }
    let fh = f.eval(h)?;
    let ratio = fh.div(&fg).expect("positive divisor");
    let d = f.defect();
    let mut rows = Vec::new();
    for n in 1..=big_n {
        let rec = growth_en(order, g, h, n, power_cap)?;
        let nq = qi(n);
        let est = qi(rec.e_n) / &nq;
        // each bound is monotone in f(g); take the least favourable end
        let lower_bound = -(&d / (&nq * fg.hi()));
        let upper_bound = (&d + c) / (&nq * fg.hi()) + nq.recip();
        let lower_ok = &est - ratio.hi() >= lower_bound;
        let upper_ok = &est - ratio.lo() <= upper_bound;
        rows.push(RatioRow { n, e_n: rec.e_n, lower_ok, upper_ok });
    }
    Ok(RatioReport { ratio, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circle::sample::Sampler;
    use crate::circle::{CircleElement as E, Kind};
    use crate::num::rational::q;
    use crate::order::{CircleDominants, CircleGroup, CircleOrder, IntegerGroup, IntegerOrder, DEFAULT_POWER_CAP};

    fn t(n: i64, d: i64) -> E {
        E::translation(q(n, d), Kind::Pl).unwrap()
    }

    #[test]
    fn homogenize_examples() {
        let tau = TranslationNumber::default();
        let g = CircleGroup { kind: Kind::Pl };
        assert!(homogenize(&g, &tau, &t(1, 2), 1).unwrap().contains(&q(1, 2)));
        assert!(homogenize(&g, &tau, &E::identity(Kind::Pl), 7).unwrap().contains(&q(0, 1)));
        let w10 = homogenize(&g, &tau, &t(1, 3), 10).unwrap().width();
        let w100 = homogenize(&g, &tau, &t(1, 3), 100).unwrap().width();
        assert_eq!(w10, w100 * qi(10));
        assert!(homogenize(&IntegerGroup, &IntegerIdentity, &3, 5).unwrap().contains(&qi(3)));
    }

    #[test]
    fn sandwich_audit_examples() {
        let tau = TranslationNumber::default();
        let order = CircleOrder::pointwise(Kind::Pl);
        let r = sandwich_audit(&tau, &qi(1), &order, &[t(3, 2), t(2, 1), t(5, 1)]).unwrap();
        assert!(r.passed() && r.undecided.is_empty());
        // displacement changes sign and tau = 0
        let bump: E = "pl: [(0, 0), (1/2, 1/4)]".parse().unwrap();
        let r = sandwich_audit(&tau, &qi(0), &order, &[bump]).unwrap();
        assert_eq!(r.violations.len(), 1);
        let r = sandwich_audit(&tau, &qi(0), &order, &[E::identity(Kind::Pl)]).unwrap();
        assert!(r.passed());
    }

    #[test]
    fn dominant_audit_on_samples() {
        let tau = TranslationNumber::default();
        let order = CircleOrder::pointwise(Kind::Pl);
        let dom = CircleDominants::new(order.clone());
        let mut s = Sampler::new(1);
        let samples: Vec<E> = (0..100).map(|i| if i % 2 == 0 { s.element(Kind::Pl) } else { s.above_identity(Kind::Pl) }).collect();
        let r = dominant_audit(&tau, &order, &dom, &samples).unwrap();
        assert!(r.passed(), "{:?}", r.disagreements);
        let fixed: E = "pl: [(0, 0), (1/2, 3/4)]".parse().unwrap();
        let r = dominant_audit(&tau, &order, &dom, &[E::identity(Kind::Pl), fixed]).unwrap();
        assert!(r.passed() && r.dominant == 0);
    }

    #[test]
    fn ratio_checks() {
        let r = reconstruct_ratio_check(&IntegerOrder, &IntegerIdentity, &qi(1), &2, &3, 10, DEFAULT_POWER_CAP).unwrap();
        assert!(r.passed());
        assert_eq!(r.rows[9].e_n, 15);
        let tau = TranslationNumber::default();
        let order = CircleOrder::pointwise(Kind::Pl);
        let r = reconstruct_ratio_check(&order, &tau, &qi(1), &t(1, 1), &t(5, 2), 8, DEFAULT_POWER_CAP).unwrap();
        assert!(r.passed());
        let g = t(2, 3);
        let r = reconstruct_ratio_check(&order, &tau, &qi(1), &g, &g, 5, DEFAULT_POWER_CAP).unwrap();
        assert!(r.passed());
        assert_eq!(r.ratio.exact(), Some(&qi(1)));
    }
}
