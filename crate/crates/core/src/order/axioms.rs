//! Sample-based checks of the order-semigroup and dominant-set axioms.

use super::{DominantSet, OrderOracle, Positivity};
use crate::error::Result;

/// Violations found while checking axioms on samples; each entry names
/// the offending elements.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub checked: usize,
    pub positives: usize,
    pub pointed: Vec<String>,
    pub conjugation: Vec<String>,
    pub closure: Vec<String>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.pointed.is_empty() && self.conjugation.is_empty() && self.closure.is_empty()
    }

    pub fn violations(&self) -> usize {
        self.pointed.len() + self.conjugation.len() + self.closure.len()
    }
}

/// Pointedness on every element, conjugation of the `i`-th positive
/// element by `conjugators[i % len]`, and closure on cyclically adjacent
/// positive pairs.
pub fn check_order_axioms<O: OrderOracle>(
    order: &O,
    elements: &[O::Elem],
    conjugators: &[O::Elem],
) -> Result<AxiomReport> {
    let mut r = AxiomReport { checked: elements.len(), ..Default::default() };
    let mut pos = Vec::new();
    for g in elements {
        let p = order.positivity(g)?;
        if p == Positivity::PositiveNonIdentity {
            if order.is_positive(&order.invert(g)?)? {
                r.pointed.push(format!("{g} and its inverse are both positive"));
            }
            pos.push(g);
        }
    }
    r.positives = pos.len();
    if !conjugators.is_empty() {
        for (i, g) in pos.iter().enumerate() {
            let h = &conjugators[i % conjugators.len()];
            if !order.is_positive(&order.conjugate(g, h)?)? {
                r.conjugation.push(format!("{g} conjugated by {h}"));
            }
        }
    }
    for i in 0..pos.len() {
        let (a, b) = (pos[i], pos[(i + 1) % pos.len()]);
        if !order.is_positive(&order.compose(a, b)?)? {
            r.closure.push(format!("{a} times {b}"));
        }
    }
    Ok(r)
}

/// Ideal property against parent positives, strict pointedness and
/// conjugation invariance of `G++`.
pub fn check_dominant_axioms<D: DominantSet>(
    dom: &D,
    elements: &[D::Elem],
    conjugators: &[D::Elem],
) -> Result<AxiomReport> {
    let mut r = AxiomReport { checked: elements.len(), ..Default::default() };
    let mut dominant = Vec::new();
    let mut positive = Vec::new();
    for g in elements {
        if dom.is_dominant(g)? {
            if dom.is_dominant(&dom.invert(g)?)? {
                r.pointed.push(format!("{g} and its inverse are both dominant"));
            }
            dominant.push(g);
        }
        if dom.parent_positivity(g)? != Positivity::NotPositive {
            positive.push(g);
        }
    }
    r.positives = dominant.len();
    for (i, g) in dominant.iter().enumerate() {
        if !conjugators.is_empty() {
            let h = &conjugators[i % conjugators.len()];
            if !dom.is_dominant(&dom.conjugate(g, h)?)? {
                r.conjugation.push(format!("{g} conjugated by {h}"));
            }
        }
        if !positive.is_empty() {
            let h = positive[i % positive.len()];
            if !dom.is_dominant(&dom.compose(g, h)?)? || !dom.is_dominant(&dom.compose(h, g)?)? {
                r.closure.push(format!("{g} with positive {h}"));
            }
        }
    }
    Ok(r)
}
