//! Bi-invariant partial orders, represented by their order semigroups.
//!
//! An order is known through a positivity test for `G+`; `a >= b` iff
//! `b^-1 a` is positive. Dominant sets `G++` are kept separate because,
//! unlike order semigroups, they pull back along homomorphisms.

mod axioms;
pub mod circle;
pub mod growth;
pub mod integer;

use std::fmt;

pub use axioms::{check_dominant_axioms, check_order_axioms, AxiomReport};
pub use circle::{perturb_circle, CircleDominants, CircleGroup, CircleOrder, Strictness};
pub use growth::{growth_en, growth_limit, GrowthLimit, GrowthRecord, PowerCache, Sandwich, DEFAULT_POWER_CAP};
pub use integer::{IntegerDominants, IntegerGroup, IntegerOrder};

use crate::error::{Error, Result};
use crate::num::Q;

/// A group with exact equality.
pub trait Group {
    type Elem: Clone + PartialEq + fmt::Debug + fmt::Display;

    fn identity(&self) -> Self::Elem;

    /// `a b`, acting as `a o b`.
    fn compose(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;

    fn invert(&self, a: &Self::Elem) -> Result<Self::Elem>;

    fn power(&self, a: &Self::Elem, k: i64) -> Result<Self::Elem> {
        let base = if k < 0 { self.invert(a)? } else { a.clone() };
        let mut e = k.unsigned_abs();
        let mut sq = base;
        let mut acc = self.identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.compose(&acc, &sq)?;
            }
            e >>= 1;
            if e > 0 {
                sq = self.compose(&sq, &sq)?;
            }
        }
        Ok(acc)
    }

    fn is_identity(&self, a: &Self::Elem) -> bool {
        *a == self.identity()
    }

    /// `h g h^-1`.
    fn conjugate(&self, g: &Self::Elem, h: &Self::Elem) -> Result<Self::Elem> {
        self.compose(&self.compose(h, g)?, &self.invert(h)?)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Positivity {
    PositiveNonIdentity,
    Identity,
    NotPositive,
}

/// Decision procedure for an order semigroup `G+`.
pub trait OrderOracle: Group {
    fn positivity(&self, g: &Self::Elem) -> Result<Positivity>;

    /// A constant `C` such that `f(g) >= C` implies `g` positive, for the
    /// quasimorphism this order is sandwiched by.
    fn sandwich_constant(&self) -> Option<Q> {
        None
    }

    fn describe(&self) -> String;

    fn is_positive(&self, g: &Self::Elem) -> Result<bool> {
        Ok(self.positivity(g)? != Positivity::NotPositive)
    }

    /// `a >= b`.
    fn succeq(&self, a: &Self::Elem, b: &Self::Elem) -> Result<bool> {
        self.is_positive(&self.compose(&self.invert(b)?, a)?)
    }
}

/// Membership test for a dominant semigroup `G++`.
pub trait DominantSet: Group {
    fn is_dominant(&self, g: &Self::Elem) -> Result<bool>;

    /// Positivity in the order this set was derived from. Defaults to the
    /// smallest order with these dominants, `{e} u G++`.
    fn parent_positivity(&self, g: &Self::Elem) -> Result<Positivity> {
        Ok(if self.is_identity(g) {
            Positivity::Identity
        } else if self.is_dominant(g)? {
            Positivity::PositiveNonIdentity
        } else {
            Positivity::NotPositive
        })
    }

    fn sandwich_constant(&self) -> Option<Q> {
        None
    }

    fn describe(&self) -> String;
}

/// The order with positives `{e} u G++`.
#[derive(Clone, Debug)]
pub struct ArchimedeanOrder<D> {
    dom: D,
}

pub fn archimedean_order<D: DominantSet>(dom: D) -> ArchimedeanOrder<D> {
    ArchimedeanOrder { dom }
}

impl<D: DominantSet> ArchimedeanOrder<D> {
    pub fn dominants(&self) -> &D {
        &self.dom
    }
}

impl<D: DominantSet> Group for ArchimedeanOrder<D> {
    type Elem = D::Elem;

    fn identity(&self) -> Self::Elem {
        self.dom.identity()
    }

    fn compose(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        self.dom.compose(a, b)
    }

    fn invert(&self, a: &Self::Elem) -> Result<Self::Elem> {
        self.dom.invert(a)
    }

    fn is_identity(&self, a: &Self::Elem) -> bool {
        self.dom.is_identity(a)
    }
}

impl<D: DominantSet> OrderOracle for ArchimedeanOrder<D> {
    fn positivity(&self, g: &Self::Elem) -> Result<Positivity> {
        if self.dom.is_identity(g) {
            Ok(Positivity::Identity)
        } else if self.dom.is_dominant(g)? {
            Ok(Positivity::PositiveNonIdentity)
        } else {
            Ok(Positivity::NotPositive)
        }
    }

    // {f >= C} lies in G+ and, for C > 0, consists of elements with f > 0,
    // which are dominant
    fn sandwich_constant(&self) -> Option<Q> {
        self.dom.sandwich_constant().filter(|c| *c > Q::from_integer(0.into()))
    }

    fn describe(&self) -> String {
        format!("archimedean({})", self.dom.describe())
    }
}

/// A group homomorphism `rho: Source -> Target`.
pub trait Homomorphism {
    type Source: Group;
    type TargetElem;

    fn source(&self) -> &Self::Source;

    fn apply(&self, g: &<Self::Source as Group>::Elem) -> Result<Self::TargetElem>;
}

/// `rho^-1(H++)`, again a dominant semigroup.
#[derive(Clone, Debug)]
pub struct PullbackDominants<H, D> {
    hom: H,
    target: D,
}

pub fn pullback_dominants<H, D>(hom: H, target: D) -> PullbackDominants<H, D>
where
    H: Homomorphism,
    D: DominantSet<Elem = H::TargetElem>,
{
    PullbackDominants { hom, target }
}

impl<H: Homomorphism, D> PullbackDominants<H, D> {
    pub fn hom(&self) -> &H {
        &self.hom
    }

    pub fn target(&self) -> &D {
        &self.target
    }
}

impl<H, D> Group for PullbackDominants<H, D>
where
    H: Homomorphism,
{
    type Elem = <H::Source as Group>::Elem;

    fn identity(&self) -> Self::Elem {
        self.hom.source().identity()
    }

    fn compose(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        self.hom.source().compose(a, b)
    }

    fn invert(&self, a: &Self::Elem) -> Result<Self::Elem> {
        self.hom.source().invert(a)
    }

    fn is_identity(&self, a: &Self::Elem) -> bool {
        self.hom.source().is_identity(a)
    }
}

impl<H, D> DominantSet for PullbackDominants<H, D>
where
    H: Homomorphism,
    D: DominantSet<Elem = H::TargetElem>,
{
    fn is_dominant(&self, g: &Self::Elem) -> Result<bool> {
        self.target.is_dominant(&self.hom.apply(g)?)
    }

    fn sandwich_constant(&self) -> Option<Q> {
        self.target.sandwich_constant()
    }

    fn describe(&self) -> String {
        format!("pullback({})", self.target.describe())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProbeOutcome<E> {
    /// Every probe is dominated by a power of `g`; `max_power` is the
    /// largest exponent needed.
    Certified { max_power: i64 },
    /// `g` is the identity and does not dominate this probe.
    Refuted(E),
    /// No power up to the budget dominates this probe.
    BudgetExhausted(E),
}

/// Looks for `n <= n_max` with `g^n >= h` for each probe `h`.
pub fn is_dominant_probe<O: OrderOracle>(
    order: &O,
    g: &O::Elem,
    probes: &[O::Elem],
    n_max: i64,
) -> Result<ProbeOutcome<O::Elem>> {
    if n_max < 1 {
        return Err(Error::Precondition("probe budget must be at least 1".into()));
    }
    match order.positivity(g)? {
        Positivity::NotPositive => return Err(Error::NotPositive),
        Positivity::Identity => {
            let e = order.identity();
            for h in probes {
                if !order.succeq(&e, h)? {
                    return Ok(ProbeOutcome::Refuted(h.clone()));
                }
            }
            return Ok(ProbeOutcome::Certified { max_power: 1 });
        }
        Positivity::PositiveNonIdentity => {}
    }
    let mut max_power = 1;
    let mut powers = vec![g.clone()];
    for h in probes {
        let mut found = None;
        for n in 1..=n_max {
            let idx = (n - 1) as usize;
            if idx == powers.len() {
                let next = order.compose(&powers[idx - 1], g)?;
                powers.push(next);
            }
            if order.succeq(&powers[idx], h)? {
                found = Some(n);
                break;
            }
        }
        match found {
            Some(n) => max_power = max_power.max(n),
            None => return Ok(ProbeOutcome::BudgetExhausted(h.clone())),
        }
    }
    Ok(ProbeOutcome::Certified { max_power })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circle::{CircleElement, Kind};
    use crate::num::rational::q;

    struct Doubling;

    impl Homomorphism for Doubling {
        type Source = IntegerGroup;
        type TargetElem = i64;

        fn source(&self) -> &IntegerGroup {
            &IntegerGroup
        }

        fn apply(&self, g: &i64) -> Result<i64> {
            g.checked_mul(2).ok_or(Error::Overflow("doubling"))
        }
    }

    struct Trivial;

    impl Homomorphism for Trivial {
        type Source = IntegerGroup;
        type TargetElem = i64;

        fn source(&self) -> &IntegerGroup {
            &IntegerGroup
        }

        fn apply(&self, _: &i64) -> Result<i64> {
            Ok(0)
        }
    }

    #[test]
    fn probes_on_integers() {
        let z = IntegerOrder;
        assert_eq!(is_dominant_probe(&z, &1, &[5, 100], 200).unwrap(), ProbeOutcome::Certified { max_power: 100 });
        assert_eq!(is_dominant_probe(&z, &0, &[1], 10).unwrap(), ProbeOutcome::Refuted(1));
        assert_eq!(is_dominant_probe(&z, &1, &[5, 100], 50).unwrap(), ProbeOutcome::BudgetExhausted(100));
        assert_eq!(is_dominant_probe(&z, &-1, &[1], 10), Err(Error::NotPositive));
    }

    #[test]
    fn probes_on_circle() {
        let order = CircleOrder::pointwise(Kind::Pl);
        let g = CircleElement::translation(q(1, 2), Kind::Pl).unwrap();
        let h = CircleElement::translation(q(10, 1), Kind::Pl).unwrap();
        assert_eq!(is_dominant_probe(&order, &g, &[h], 30).unwrap(), ProbeOutcome::Certified { max_power: 20 });
    }

    #[test]
    fn archimedean_closure_of_integers_is_unchanged() {
        let a = archimedean_order(IntegerDominants);
        for g in -5..=5 {
            assert_eq!(a.positivity(&g).unwrap(), IntegerOrder.positivity(&g).unwrap());
        }
    }

    #[test]
    fn archimedean_closure_of_pointwise_order() {
        let a = archimedean_order(CircleDominants::new(CircleOrder::pointwise(Kind::Moebius)));
        let hyp = |w| "moebius: [[2,0],[0,1/2]] winding ".to_string() + w;
        let fixed: CircleElement = hyp("0").parse().unwrap();
        let shifted: CircleElement = hyp("1").parse().unwrap();
        assert!(!a.is_positive(&fixed).unwrap());
        assert!(a.is_positive(&shifted).unwrap());
        let t = CircleElement::translation(q(1, 3), Kind::Pl).unwrap();
        let b = archimedean_order(CircleDominants::new(CircleOrder::pointwise(Kind::Pl)));
        assert!(b.is_positive(&t).unwrap());
    }

    #[test]
    fn pullbacks_along_integer_maps() {
        let p = pullback_dominants(Doubling, IntegerDominants);
        let t = pullback_dominants(Trivial, IntegerDominants);
        for g in -5..=5 {
            assert_eq!(p.is_dominant(&g).unwrap(), g > 0);
            assert!(!t.is_dominant(&g).unwrap());
        }
    }
}
