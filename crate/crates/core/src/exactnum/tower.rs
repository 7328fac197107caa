//! One quadratic extension `K(sqrt(delta))` of a quadratic field `K = Q(sqrt(d))`.

use super::quad::QuadElem;
use crate::error::{Error, Result};

/// `c0 + c1*sqrt(delta)` with `c0, c1, delta` in the same quadratic field and
/// `delta` not a square there.
///
/// `sqrt(delta)` is the positive root when `delta > 0` in a real field, `i*sqrt(|delta|)`
/// when `delta < 0` in a real field, and the principal complex root over an imaginary field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TowerElem {
    pub c0: QuadElem,
    pub c1: QuadElem,
    pub delta: QuadElem,
}

impl TowerElem {
    pub fn is_zero(&self) -> bool {
        self.c0.is_zero() && self.c1.is_zero()
    }

    fn with(&self, c0: QuadElem, c1: QuadElem) -> Self {
        TowerElem { c0, c1, delta: self.delta.clone() }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.with(self.c0.add(&o.c0), self.c1.add(&o.c1))
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.with(self.c0.sub(&o.c0), self.c1.sub(&o.c1))
    }

    pub fn neg(&self) -> Self {
        self.with(self.c0.neg(), self.c1.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let c0 = self.c0.mul(&o.c0).add(&self.c1.mul(&o.c1).mul(&self.delta));
        let c1 = self.c0.mul(&o.c1).add(&self.c1.mul(&o.c0));
        self.with(c0, c1)
    }

    /// Conjugate over the base field: `c0 - c1*sqrt(delta)`.
    pub fn conj(&self) -> Self {
        self.with(self.c0.clone(), self.c1.neg())
    }

    /// Relative norm `c0^2 - c1^2*delta`, an element of the base field.
    pub fn norm(&self) -> QuadElem {
        self.c0.mul(&self.c0).sub(&self.c1.mul(&self.c1).mul(&self.delta))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm().inv()?;
        Ok(self.with(self.c0.mul(&n), self.c1.neg().mul(&n)))
    }
}
