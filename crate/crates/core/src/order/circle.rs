//! Orders on lifts of circle homeomorphisms: the pointwise order and its
//! perturbations by a translation.

use std::cmp::Ordering;

use num_traits::Signed;

use super::{DominantSet, Group, OrderOracle, Positivity};
use crate::circle::{is_dominant_pointwise, pointwise_compare, CircleElement, ComparisonVerdict, Dominance, Kind};
use crate::error::{Error, Result};
use crate::num::rational::{fmt_q, qi};
use crate::num::Q;

/// One representation kind of `Homeo+_Z(R)`. Kinds are never mixed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CircleGroup {
    pub kind: Kind,
}

impl Group for CircleGroup {
    type Elem = CircleElement;

    fn identity(&self) -> CircleElement {
        CircleElement::identity(self.kind)
    }

    fn compose(&self, a: &CircleElement, b: &CircleElement) -> Result<CircleElement> {
        a.compose(b)
    }

    fn invert(&self, a: &CircleElement) -> Result<CircleElement> {
        a.inverse()
    }

    fn power(&self, a: &CircleElement, k: i64) -> Result<CircleElement> {
        a.power(k)
    }

    fn is_identity(&self, a: &CircleElement) -> bool {
        a.is_identity()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strictness {
    Strict,
    Nonstrict,
}

/// Positives `{e} u {k : k(x) > x + q for all x}` (strict) or
/// `{e} u {k : k(x) >= x + q for all x}` (nonstrict).
///
/// Nonstrict with `q = 0` is the pointwise order; strict with integer `q`
/// is the order `<=_q`. For `q` not an integer the positive set is in
/// general not conjugation invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircleOrder {
    pub kind: Kind,
    pub q: Q,
    pub strict: bool,
}

impl CircleOrder {
    pub fn pointwise(kind: Kind) -> Self {
        CircleOrder { kind, q: qi(0), strict: false }
    }

    /// The strict order `<=_q`.
    pub fn q_order(kind: Kind, q: i64) -> Self {
        CircleOrder { kind, q: qi(q), strict: true }
    }

    pub fn group(&self) -> CircleGroup {
        CircleGroup { kind: self.kind }
    }

    pub fn is_pointwise(&self) -> bool {
        !self.strict && self.q == qi(0)
    }
}

pub fn perturb_circle(kind: Kind, strictness: Strictness, q: Q) -> Result<CircleOrder> {
    if q.is_negative() {
        return Err(Error::Precondition(format!("perturbation offset {} is negative", fmt_q(&q))));
    }
    Ok(CircleOrder { kind, q, strict: strictness == Strictness::Strict })
}

impl Group for CircleOrder {
    type Elem = CircleElement;

    fn identity(&self) -> CircleElement {
        self.group().identity()
    }

    fn compose(&self, a: &CircleElement, b: &CircleElement) -> Result<CircleElement> {
        a.compose(b)
    }

    fn invert(&self, a: &CircleElement) -> Result<CircleElement> {
        a.inverse()
    }

    fn power(&self, a: &CircleElement, k: i64) -> Result<CircleElement> {
        a.power(k)
    }

    fn is_identity(&self, a: &CircleElement) -> bool {
        a.is_identity()
    }
}

impl OrderOracle for CircleOrder {
    fn positivity(&self, g: &CircleElement) -> Result<Positivity> {
        if g.kind() != self.kind {
            return Err(Error::KindMismatch(format!("{} element in a {} order", g.kind(), self.kind)));
        }
        if g.is_identity() {
            return Ok(Positivity::Identity);
        }
        let id = CircleElement::identity(self.kind);
        Ok(match pointwise_compare(&id, g, &self.q, self.strict)? {
            ComparisonVerdict::StrictlyBelow => Positivity::PositiveNonIdentity,
            _ => Positivity::NotPositive,
        })
    }

    // tau(g) >= q + 1 forces g(x) - x > tau(g) - 1 >= q everywhere
    fn sandwich_constant(&self) -> Option<Q> {
        Some(&self.q + qi(1))
    }

    fn describe(&self) -> String {
        let rel = if self.strict { ">" } else { ">=" };
        format!("{} k(x) {rel} x + {}", self.kind, fmt_q(&self.q))
    }
}

/// Dominants of a circle order: positive elements with positive
/// translation number. For the pointwise order this is also decided
/// directly as `g(x) > x` for all `x`, and the two answers must agree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircleDominants {
    order: CircleOrder,
}

impl CircleDominants {
    pub fn new(order: CircleOrder) -> Self {
        CircleDominants { order }
    }

    pub fn order(&self) -> &CircleOrder {
        &self.order
    }
}

impl Group for CircleDominants {
    type Elem = CircleElement;

    fn identity(&self) -> CircleElement {
        self.order.identity()
    }

    fn compose(&self, a: &CircleElement, b: &CircleElement) -> Result<CircleElement> {
        a.compose(b)
    }

    fn invert(&self, a: &CircleElement) -> Result<CircleElement> {
        a.inverse()
    }

    fn power(&self, a: &CircleElement, k: i64) -> Result<CircleElement> {
        a.power(k)
    }

    fn is_identity(&self, a: &CircleElement) -> bool {
        a.is_identity()
    }
}

impl DominantSet for CircleDominants {
    fn is_dominant(&self, g: &CircleElement) -> Result<bool> {
        let by_tau = self.order.positivity(g)? == Positivity::PositiveNonIdentity && g.tau_sign()? == Ordering::Greater;
        if self.order.is_pointwise() {
            let direct = matches!(is_dominant_pointwise(g)?, Dominance::Yes);
            if direct != by_tau {
                return Err(Error::InconsistentOracles(format!(
                    "dominance of {g}: pointwise {direct}, positive with tau > 0 {by_tau}"
                )));
            }
        }
        Ok(by_tau)
    }

    fn parent_positivity(&self, g: &CircleElement) -> Result<Positivity> {
        self.order.positivity(g)
    }

    fn sandwich_constant(&self) -> Option<Q> {
        self.order.sandwich_constant()
    }

    fn describe(&self) -> String {
        format!("dominants of {}", self.order.describe())
    }
}
