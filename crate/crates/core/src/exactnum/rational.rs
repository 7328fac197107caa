//! Helpers over arbitrary-precision rationals.

use num_bigint::{BigInt, Sign};
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

// Trial division stops here; larger cofactors are only checked for being a perfect square.
const TRIAL_LIMIT: u64 = 1 << 17;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

// Integer fast paths: num-rational normalises with a gcd on every operation.

pub fn rmul(a: &Rational, b: &Rational) -> Rational {
    if a.is_integer() && b.is_integer() {
        Rational::from_integer(a.numer() * b.numer())
    } else {
        a * b
    }
}

pub fn radd(a: &Rational, b: &Rational) -> Rational {
    if a.is_integer() && b.is_integer() {
        Rational::from_integer(a.numer() + b.numer())
    } else {
        a + b
    }
}

pub fn rsub(a: &Rational, b: &Rational) -> Rational {
    if a.is_integer() && b.is_integer() {
        Rational::from_integer(a.numer() - b.numer())
    } else {
        a - b
    }
}

pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

/// Floor square root when `n` is a perfect square.
pub fn exact_isqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let s = n.sqrt();
    if &s * &s == *n {
        Some(s)
    } else {
        None
    }
}

/// Nonnegative square root of a rational square.
pub fn exact_sqrt(r: &Rational) -> Option<Rational> {
    let n = exact_isqrt(r.numer())?;
    let d = exact_isqrt(r.denom())?;
    Some(Rational::new(n, d))
}

/// Writes `n = f^2 * s` with `s` squarefree (carrying the sign) and `f > 0`.
///
/// Exact whenever the part of |n| free of primes below the trial bound is
/// below the cube of that bound.
pub fn squarefree_decompose(n: &BigInt) -> (BigInt, BigInt) {
    assert!(!n.is_zero(), "squarefree part of zero");
    let sign = n.sign();
    let mut m = n.abs();
    let mut f = BigInt::one();
    let mut s = BigInt::one();
    if let Some(small) = m.to_u128() {
        let (ff, ss) = squarefree_u128(small);
        f = BigInt::from(ff);
        s = BigInt::from(ss);
    } else {
        let mut p: u64 = 2;
        while p <= TRIAL_LIMIT {
            let bp = BigInt::from(p);
            if (&bp * &bp * &bp) > m {
                break;
            }
            let p2 = &bp * &bp;
            while (&m % &p2).is_zero() {
                m /= &p2;
                f *= &bp;
            }
            if (&m % &bp).is_zero() {
                m /= &bp;
                s *= &bp;
            }
            p += if p == 2 { 1 } else { 2 };
        }
        if let Some(r) = exact_isqrt(&m) {
            f *= r;
        } else {
            s *= m;
        }
    }
    if sign == Sign::Minus {
        s = -s;
    }
    (f, s)
}

fn squarefree_u128(mut m: u128) -> (u128, u128) {
    let mut f: u128 = 1;
    let mut s: u128 = 1;
    let mut p: u128 = 2;
    while p <= TRIAL_LIMIT as u128 && p * p * p <= m {
        let p2 = p * p;
        while m % p2 == 0 {
            m /= p2;
            f *= p;
        }
        if m % p == 0 {
            m /= p;
            s *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let r = m.sqrt();
    if r * r == m {
        f *= r;
    } else {
        s *= m;
    }
    (f, s)
}

/// Writes a nonzero rational as `f^2 * s` with `f > 0` rational and `s` a squarefree integer.
pub fn rational_squarefree(r: &Rational) -> (Rational, BigInt) {
    let (f, s) = squarefree_decompose(&(r.numer() * r.denom()));
    (Rational::new(f, r.denom().clone()), s)
}

pub fn is_squarefree(n: &BigInt) -> bool {
    if n.is_zero() {
        return false;
    }
    squarefree_decompose(n).0.is_one()
}

/// Rounds toward negative infinity.
pub fn floor(r: &Rational) -> BigInt {
    r.numer().div_floor(r.denom())
}
