//! Exact coefficient arithmetic.

pub mod elem;
pub mod interval;
pub mod quad;
pub mod rational;
pub mod tower;

pub use elem::{sqrt_in, BaseField, RingElem};
pub use interval::{format_decimal, ComplexInterval, Dyadic, Interval};
pub use quad::QuadElem;
pub use rational::{rat, ratio, Rational};
pub use tower::TowerElem;
