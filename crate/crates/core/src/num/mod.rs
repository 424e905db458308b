//! Exact and certified arithmetic.

pub mod certified;
pub mod interval;
pub mod rational;

pub use interval::Interval;
pub use rational::{fmt_q, parse_q, q, qi, Q};
