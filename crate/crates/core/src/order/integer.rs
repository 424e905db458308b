//! The integers with their usual order, a baseline instance.

use super::{DominantSet, Group, OrderOracle, Positivity};
use crate::error::{Error, Result};
use crate::num::rational::qi;
use crate::num::Q;

/// `(Z, +)` with overflow reported as an error.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct IntegerGroup;

impl Group for IntegerGroup {
    type Elem = i64;

    fn identity(&self) -> i64 {
        0
    }

    fn compose(&self, a: &i64, b: &i64) -> Result<i64> {
        a.checked_add(*b).ok_or(Error::Overflow("integer group"))
    }

    fn invert(&self, a: &i64) -> Result<i64> {
        a.checked_neg().ok_or(Error::Overflow("integer group"))
    }

    fn power(&self, a: &i64, k: i64) -> Result<i64> {
        a.checked_mul(k).ok_or(Error::Overflow("integer group"))
    }
}

/// Positives `{n >= 0}`; sandwiched by the identity quasimorphism with `C = 1`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct IntegerOrder;

impl Group for IntegerOrder {
    type Elem = i64;

    fn identity(&self) -> i64 {
        0
    }

    fn compose(&self, a: &i64, b: &i64) -> Result<i64> {
        IntegerGroup.compose(a, b)
    }

    fn invert(&self, a: &i64) -> Result<i64> {
        IntegerGroup.invert(a)
    }

    fn power(&self, a: &i64, k: i64) -> Result<i64> {
        IntegerGroup.power(a, k)
    }
}

impl OrderOracle for IntegerOrder {
    fn positivity(&self, g: &i64) -> Result<Positivity> {
        Ok(match g.signum() {
            1 => Positivity::PositiveNonIdentity,
            0 => Positivity::Identity,
            _ => Positivity::NotPositive,
        })
    }

    fn sandwich_constant(&self) -> Option<Q> {
        Some(qi(1))
    }

    fn describe(&self) -> String {
        "integers".into()
    }
}

/// Every positive integer dominates.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct IntegerDominants;

impl Group for IntegerDominants {
    type Elem = i64;

    fn identity(&self) -> i64 {
        0
    }

    fn compose(&self, a: &i64, b: &i64) -> Result<i64> {
        IntegerGroup.compose(a, b)
    }

    fn invert(&self, a: &i64) -> Result<i64> {
        IntegerGroup.invert(a)
    }
}

impl DominantSet for IntegerDominants {
    fn is_dominant(&self, g: &i64) -> Result<bool> {
        Ok(*g > 0)
    }

    fn parent_positivity(&self, g: &i64) -> Result<Positivity> {
        IntegerOrder.positivity(g)
    }

    fn sandwich_constant(&self) -> Option<Q> {
        Some(qi(1))
    }

    fn describe(&self) -> String {
        "integer dominants".into()
    }
}
