//! Exact bi-invariant orders on groups of circle-map lifts, the
//! quasimorphisms that sandwich them, surface-group representations and
//! causal covers.

pub mod causal;
pub mod circle;
pub mod error;
pub mod num;
pub mod order;
pub mod quasimorphism;
pub mod suite;
pub mod surface;

pub use error::{Error, Result};
