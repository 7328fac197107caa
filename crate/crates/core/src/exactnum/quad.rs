//! Elements `a + b*sqrt(d)` of a quadratic field.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::{exact_sqrt, is_integer, is_squarefree, radd, rmul, rsub, Rational};
use crate::error::{Error, Result};

/// `a + b*sqrt(d)` with `d` squarefree and different from 0 and 1.
///
/// `sqrt(d)` is the positive real root for `d > 0` and `i*sqrt(|d|)` for `d < 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadElem {
    pub a: Rational,
    pub b: Rational,
    pub d: BigInt,
}

pub fn check_radicand(d: &BigInt) -> Result<()> {
    if d.is_zero() || d.is_one() || !is_squarefree(d) {
        return Err(Error::InvalidRadicand(d.to_string()));
    }
    Ok(())
}

impl QuadElem {
    pub fn new(a: Rational, b: Rational, d: BigInt) -> Result<Self> {
        check_radicand(&d)?;
        Ok(QuadElem { a, b, d })
    }

    /// A rational viewed inside `Q(sqrt(d))`.
    pub fn rational(a: Rational, d: &BigInt) -> Self {
        QuadElem { a, b: Rational::zero(), d: d.clone() }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn is_real_field(&self) -> bool {
        self.d.is_positive()
    }

    fn same_field(&self, o: &Self) {
        debug_assert_eq!(self.d, o.d, "quadratic operands with different radicands");
    }

    pub fn add(&self, o: &Self) -> Self {
        self.same_field(o);
        QuadElem { a: radd(&self.a, &o.a), b: radd(&self.b, &o.b), d: self.d.clone() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.same_field(o);
        QuadElem { a: rsub(&self.a, &o.a), b: rsub(&self.b, &o.b), d: self.d.clone() }
    }

    pub fn neg(&self) -> Self {
        QuadElem { a: -&self.a, b: -&self.b, d: self.d.clone() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.same_field(o);
        if self.b.is_zero() {
            return o.scale(&self.a);
        }
        if o.b.is_zero() {
            return self.scale(&o.a);
        }
        let d = Rational::from_integer(self.d.clone());
        QuadElem {
            a: radd(&rmul(&self.a, &o.a), &rmul(&rmul(&self.b, &o.b), &d)),
            b: radd(&rmul(&self.a, &o.b), &rmul(&self.b, &o.a)),
            d: self.d.clone(),
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        QuadElem { a: rmul(&self.a, r), b: rmul(&self.b, r), d: self.d.clone() }
    }

    pub fn conj(&self) -> Self {
        QuadElem { a: self.a.clone(), b: -&self.b, d: self.d.clone() }
    }

    /// Field norm `a^2 - d*b^2`; equals `|x|^2` when `d < 0`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.b * &self.b * Rational::from_integer(self.d.clone())
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm();
        Ok(QuadElem { a: &self.a / &n, b: -&self.b / &n, d: self.d.clone() })
    }

    /// Exact sign under the real embedding; `d` must be positive or `b` zero.
    pub fn sign(&self) -> Result<Ordering> {
        if self.b.is_zero() {
            return Ok(self.a.cmp(&Rational::zero()));
        }
        if self.d.is_negative() {
            return Err(Error::NotReal);
        }
        let sa = self.a.cmp(&Rational::zero());
        let sb = self.b.cmp(&Rational::zero());
        if sa == Ordering::Equal || sa == sb {
            return Ok(sb);
        }
        // Opposite signs: whichever of a^2 and d*b^2 is larger wins.
        let lhs = &self.a * &self.a;
        let rhs = &self.b * &self.b * Rational::from_integer(self.d.clone());
        Ok(match lhs.cmp(&rhs) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => Ordering::Equal,
        })
    }

    /// The principal square root inside this field, if there is one.
    ///
    /// Principal means positive for real fields and positive real part
    /// (or positive imaginary part on the negative axis) for imaginary ones.
    pub fn sqrt(&self) -> Option<QuadElem> {
        let d = Rational::from_integer(self.d.clone());
        if self.b.is_zero() {
            if self.a.is_zero() {
                return Some(self.clone());
            }
            if let Some(r) = exact_sqrt(&self.a) {
                return Some(QuadElem::rational(r, &self.d));
            }
            let q = exact_sqrt(&(&self.a / &d))?;
            return Some(QuadElem { a: Rational::zero(), b: q, d: self.d.clone() });
        }
        let n = exact_sqrt(&self.norm())?;
        let two = Rational::from_integer(BigInt::from(2));
        for cand in [(&self.a + &n) / &two, (&self.a - &n) / &two] {
            if let Some(u) = exact_sqrt(&cand) {
                if u.is_zero() {
                    continue;
                }
                let v = &self.b / (&two * &u);
                let r = QuadElem { a: u, b: v, d: self.d.clone() };
                if r.mul(&r) != *self {
                    continue;
                }
                let flip = if self.d.is_positive() {
                    r.sign().ok()? == Ordering::Less
                } else {
                    r.a.is_negative()
                };
                return Some(if flip { r.neg() } else { r });
            }
        }
        None
    }

    /// Ring-of-integers membership: both coordinates integral, or both half-odd when `d = 1 mod 4`.
    pub fn is_integral(&self) -> bool {
        if is_integer(&self.a) && is_integer(&self.b) {
            return true;
        }
        if self.d.mod_floor(&BigInt::from(4)) != BigInt::one() {
            return false;
        }
        let two = Rational::from_integer(BigInt::from(2));
        let a2 = &self.a * &two;
        let b2 = &self.b * &two;
        is_integer(&a2) && is_integer(&b2) && a2.numer().is_odd() && b2.numer().is_odd()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::{rat, ratio};

    fn q(a: i64, b: i64, d: i64) -> QuadElem {
        QuadElem::new(rat(a), rat(b), BigInt::from(d)).unwrap()
    }

    #[test]
    fn unit_norm() {
        let x = q(1, 1, 2);
        assert_eq!(x.mul(&x.conj()), QuadElem::rational(rat(-1), &BigInt::from(2)));
    }

    #[test]
    fn big_product() {
        // 442^2 - 2*312^2 computed with plain integers.
        let expect = 442i64 * 442 - 2 * 312 * 312;
        assert_eq!(expect, 676);
        let x = q(442, 312, 2);
        assert_eq!(x.mul(&x.conj()).a, rat(expect));
    }

    #[test]
    fn signs() {
        assert_eq!(q(1, -1, 2).sign().unwrap(), Ordering::Less);
        // 298532^2 - 2*211094^2 = 1352 > 0, so the rational part dominates.
        let gap = 298532i128 * 298532 - 2 * 211094i128 * 211094;
        assert_eq!(gap, 1352);
        assert_eq!(q(-298532, 211094, 2).sign().unwrap(), Ordering::Less);
        assert!(q(0, 1, -1).sign().is_err());
    }

    #[test]
    fn square_roots() {
        // (1+sqrt2)^2 = 3+2sqrt2
        assert_eq!(q(3, 2, 2).sqrt(), Some(q(1, 1, 2)));
        assert_eq!(q(2, 0, 2).sqrt(), Some(q(0, 1, 2)));
        assert_eq!(q(2, 1, 2).sqrt(), None);
        // (1+i)^2 = 2i, principal root has positive real part
        assert_eq!(q(0, 2, -1).sqrt(), Some(q(1, 1, -1)));
        // -1 in Q(i)
        assert_eq!(q(-1, 0, -1).sqrt(), Some(q(0, 1, -1)));
        // -2i has root 1-i
        assert_eq!(q(0, -2, -1).sqrt(), Some(q(1, -1, -1)));
    }

    #[test]
    fn integrality() {
        let half = QuadElem::new(ratio(1, 2), ratio(1, 2), BigInt::from(-7)).unwrap();
        assert!(half.is_integral());
        let bad = QuadElem::new(ratio(1, 2), ratio(1, 2), BigInt::from(-1)).unwrap();
        assert!(!bad.is_integral());
        assert!(q(1, 1, -2).is_integral());
    }

    #[test]
    fn radicand_checks() {
        assert!(QuadElem::new(rat(0), rat(1), BigInt::from(4)).is_err());
        assert!(QuadElem::new(rat(0), rat(1), BigInt::from(1)).is_err());
        assert!(QuadElem::new(rat(0), rat(1), BigInt::from(-3)).is_ok());
    }
}
