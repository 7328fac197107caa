//! 2x2 matrices over the tower, the homomorphism `M`, Quad polynomials and power limits.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Mul;

use crate::cfcore::{Fcf, FcfClass};
use crate::error::{Error, Result};
use crate::exactnum::{sqrt_in, BaseField, RingElem};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat2 {
    pub m11: RingElem,
    pub m12: RingElem,
    pub m21: RingElem,
    pub m22: RingElem,
}

impl Mat2 {
    pub fn new(m11: RingElem, m12: RingElem, m21: RingElem, m22: RingElem) -> Self {
        Mat2 { m11, m12, m21, m22 }
    }

    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> Self {
        Mat2::new(a.into(), b.into(), c.into(), d.into())
    }

    pub fn identity() -> Self {
        Mat2::from_ints(1, 0, 0, 1)
    }

    pub fn scalar(c: RingElem) -> Self {
        Mat2::new(c.clone(), RingElem::zero(), RingElem::zero(), c)
    }

    /// `D(x) = [[x,1],[1,0]]`.
    pub fn d(x: &RingElem) -> Self {
        Mat2::new(x.clone(), RingElem::one(), RingElem::one(), RingElem::zero())
    }

    pub fn entries(&self) -> [&RingElem; 4] {
        [&self.m11, &self.m12, &self.m21, &self.m22]
    }

    pub fn base_field(&self) -> Result<BaseField> {
        let mut f = BaseField::Rational;
        for e in self.entries() {
            f = f.join(&e.base_field())?;
        }
        Ok(f)
    }

    pub fn checked_mul(&self, o: &Mat2) -> Result<Mat2> {
        let dot = |a: &RingElem, b: &RingElem, c: &RingElem, d: &RingElem| -> Result<RingElem> {
            a.checked_mul(b)?.checked_add(&c.checked_mul(d)?)
        };
        Ok(Mat2 {
            m11: dot(&self.m11, &o.m11, &self.m12, &o.m21)?,
            m12: dot(&self.m11, &o.m12, &self.m12, &o.m22)?,
            m21: dot(&self.m21, &o.m11, &self.m22, &o.m21)?,
            m22: dot(&self.m21, &o.m12, &self.m22, &o.m22)?,
        })
    }

    pub fn checked_add(&self, o: &Mat2) -> Result<Mat2> {
        Ok(Mat2 {
            m11: self.m11.checked_add(&o.m11)?,
            m12: self.m12.checked_add(&o.m12)?,
            m21: self.m21.checked_add(&o.m21)?,
            m22: self.m22.checked_add(&o.m22)?,
        })
    }

    pub fn scale(&self, c: &RingElem) -> Result<Mat2> {
        Ok(Mat2 {
            m11: c.checked_mul(&self.m11)?,
            m12: c.checked_mul(&self.m12)?,
            m21: c.checked_mul(&self.m21)?,
            m22: c.checked_mul(&self.m22)?,
        })
    }

    pub fn det(&self) -> RingElem {
        &(&self.m11 * &self.m22) - &(&self.m12 * &self.m21)
    }

    pub fn trace(&self) -> RingElem {
        &self.m11 + &self.m22
    }

    pub fn inverse(&self) -> Result<Mat2> {
        let det = self.det();
        if det.is_zero() {
            return Err(Error::Singular);
        }
        let adj = Mat2::new(self.m22.clone(), self.m12.neg(), self.m21.neg(), self.m11.clone());
        adj.scale(&det.inv()?)
    }

    pub fn pow(&self, n: u64) -> Result<Mat2> {
        let mut acc = Mat2::identity();
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.checked_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.checked_mul(&base)?;
            }
        }
        Ok(acc)
    }

    pub fn is_scalar(&self) -> bool {
        self.m12.is_zero() && self.m21.is_zero() && self.m11 == self.m22
    }

    /// Equality up to sign, the natural notion in `PGL_2`.
    pub fn eq_up_to_sign(&self, o: &Mat2) -> bool {
        self == o || *self == o.scale(&RingElem::int(-1)).unwrap_or_else(|_| o.clone())
    }
}

impl Mul for &Mat2 {
    type Output = Mat2;
    fn mul(self, o: &Mat2) -> Mat2 {
        self.checked_mul(o).expect("matrices over incompatible fields")
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.m11, self.m12, self.m21, self.m22)
    }
}

/// `M(word) = D(c1)...D(cn)`.
pub fn mat_of_word(word: &[RingElem]) -> Mat2 {
    // Right multiplication by D(c) maps columns (u, v) to (c*u + v, u).
    let mut m = Mat2::identity();
    for c in word {
        m = Mat2 {
            m11: &(c * &m.m11) + &m.m12,
            m12: m.m11,
            m21: &(c * &m.m21) + &m.m22,
            m22: m.m21,
        };
    }
    m
}

pub fn mat_of_fcf(f: &Fcf) -> Mat2 {
    mat_of_word(f.quotients())
}

pub fn mat_of_class(f: &FcfClass) -> Mat2 {
    mat_of_fcf(f.reduced())
}

/// A point of the projective line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProjPoint {
    Finite(RingElem),
    Infinity,
}

impl ProjPoint {
    pub fn from_pair(p: &RingElem, q: &RingElem) -> Result<ProjPoint> {
        if q.is_zero() {
            if p.is_zero() {
                return Err(Error::DivisionByZero);
            }
            return Ok(ProjPoint::Infinity);
        }
        Ok(ProjPoint::Finite(p.checked_div(q)?))
    }

    pub fn int(n: i64) -> ProjPoint {
        ProjPoint::Finite(RingElem::int(n))
    }

    pub fn finite(&self) -> Option<&RingElem> {
        match self {
            ProjPoint::Finite(x) => Some(x),
            ProjPoint::Infinity => None,
        }
    }

    pub fn canonical_cmp(&self, o: &ProjPoint) -> Ordering {
        match (self, o) {
            (ProjPoint::Finite(a), ProjPoint::Finite(b)) => a.canonical_cmp(b),
            (ProjPoint::Finite(_), ProjPoint::Infinity) => Ordering::Less,
            (ProjPoint::Infinity, ProjPoint::Finite(_)) => Ordering::Greater,
            (ProjPoint::Infinity, ProjPoint::Infinity) => Ordering::Equal,
        }
    }

    /// Approximate value as `(re, im)`; infinity maps to `None`.
    pub fn to_complex_f64(&self) -> Option<(f64, f64)> {
        self.finite().map(|x| {
            let z = x.complex_eval(64);
            (z.re.to_f64(), z.im.to_f64())
        })
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjPoint::Finite(x) => write!(f, "{x}"),
            ProjPoint::Infinity => write!(f, "inf"),
        }
    }
}

/// Linear fractional action of `m` on `beta`.
pub fn mobius(m: &Mat2, beta: &ProjPoint) -> Result<ProjPoint> {
    if m.det().is_zero() {
        return Err(Error::Singular);
    }
    match beta {
        ProjPoint::Infinity => ProjPoint::from_pair(&m.m11, &m.m21),
        ProjPoint::Finite(b) => {
            let p = m.m11.checked_mul(b)?.checked_add(&m.m12)?;
            let q = m.m21.checked_mul(b)?.checked_add(&m.m22)?;
            ProjPoint::from_pair(&p, &q)
        }
    }
}

/// `A X^2 + B X + C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadPoly {
    pub a: RingElem,
    pub b: RingElem,
    pub c: RingElem,
}

impl QuadPoly {
    pub fn new(a: RingElem, b: RingElem, c: RingElem) -> Self {
        QuadPoly { a, b, c }
    }

    pub fn from_ints(a: i64, b: i64, c: i64) -> Self {
        QuadPoly::new(a.into(), b.into(), c.into())
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero()
    }

    pub fn coeffs(&self) -> [&RingElem; 3] {
        [&self.a, &self.b, &self.c]
    }

    pub fn discriminant(&self) -> RingElem {
        &self.b.square() - &(&RingElem::int(4) * &(&self.a * &self.c))
    }

    pub fn scale(&self, k: &RingElem) -> Result<QuadPoly> {
        Ok(QuadPoly {
            a: k.checked_mul(&self.a)?,
            b: k.checked_mul(&self.b)?,
            c: k.checked_mul(&self.c)?,
        })
    }

    pub fn base_field(&self) -> Result<BaseField> {
        let mut f = BaseField::Rational;
        for e in self.coeffs() {
            f = f.join(&e.base_field())?;
        }
        Ok(f)
    }

    /// Whether `beta` is a root, with the convention that infinity is a root when `A = 0`.
    pub fn has_root(&self, beta: &ProjPoint) -> Result<bool> {
        match beta {
            ProjPoint::Infinity => Ok(self.a.is_zero()),
            ProjPoint::Finite(x) => {
                let v = self.a.checked_mul(x)?.checked_add(&self.b)?.checked_mul(x)?.checked_add(&self.c)?;
                Ok(v.is_zero())
            }
        }
    }
}

impl fmt::Display for QuadPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})*X^2+({})*X+({})", self.a, self.b, self.c)
    }
}

/// `m21 X^2 + (m22 - m11) X - m12`, whose roots are the fixed points of `m`.
pub fn quad(m: &Mat2) -> QuadPoly {
    QuadPoly::new(m.m21.clone(), &m.m22 - &m.m11, m.m12.neg())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootKind {
    DoubleRoot,
    ZeroPoly,
    TwoRoots,
}

/// Roots as a multiset; a double root is listed twice and the zero polynomial has none.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootPair {
    pub kind: RootKind,
    pub roots: Vec<ProjPoint>,
}

pub fn roots(q: &QuadPoly) -> Result<RootPair> {
    roots_in(q, &q.base_field()?)
}

/// Roots of `q`, adjoining the square root of the discriminant over `base` if needed.
pub fn roots_in(q: &QuadPoly, base: &BaseField) -> Result<RootPair> {
    if q.is_zero() {
        return Ok(RootPair { kind: RootKind::ZeroPoly, roots: vec![] });
    }
    if q.a.is_zero() {
        if q.b.is_zero() {
            return Ok(RootPair { kind: RootKind::DoubleRoot, roots: vec![ProjPoint::Infinity; 2] });
        }
        let r = q.c.neg().checked_div(&q.b)?;
        return Ok(RootPair { kind: RootKind::TwoRoots, roots: vec![ProjPoint::Finite(r), ProjPoint::Infinity] });
    }
    let two_a = &RingElem::int(2) * &q.a;
    let centre = q.b.neg().checked_div(&two_a)?;
    let disc = q.discriminant();
    if disc.is_zero() {
        return Ok(RootPair { kind: RootKind::DoubleRoot, roots: vec![ProjPoint::Finite(centre); 2] });
    }
    let half = sqrt_in(&disc.checked_div(&two_a.square())?, base)?;
    Ok(RootPair {
        kind: RootKind::TwoRoots,
        roots: vec![
            ProjPoint::Finite(centre.checked_add(&half)?),
            ProjPoint::Finite(centre.checked_sub(&half)?),
        ],
    })
}

/// Eigenvalue `m21*beta + m22` of `m` on `v(beta)`; `m11` at infinity.
pub fn eigen_at(m: &Mat2, beta: &ProjPoint) -> Result<RingElem> {
    if !quad(m).has_root(beta)? {
        return Err(Error::NotFixedPoint);
    }
    eigen_unchecked(m, beta)
}

fn eigen_unchecked(m: &Mat2, beta: &ProjPoint) -> Result<RingElem> {
    match beta {
        ProjPoint::Infinity => Ok(m.m11.clone()),
        ProjPoint::Finite(b) => m.m21.checked_mul(b)?.checked_add(&m.m22),
    }
}

fn proportional_factor(u: &[&RingElem; 3], v: &[&RingElem; 3]) -> Result<Option<RingElem>> {
    // Returns lambda with u = lambda * v, for nonzero v.
    let Some(i) = v.iter().position(|x| !x.is_zero()) else {
        return Ok(None);
    };
    let lambda = u[i].checked_div(v[i])?;
    for k in 0..3 {
        if *u[k] != lambda.checked_mul(v[k])? {
            return Ok(None);
        }
    }
    Ok(Some(lambda))
}

/// Finds `(kappa, lambda, mu)` with `kappa*quad(b) = lambda*quad(a)` and
/// `kappa*b = lambda*a + mu*I`, normalised so that the first nonzero of `(kappa, lambda)` is 1.
pub fn quad_linear_relation(a: &Mat2, b: &Mat2) -> Result<Option<(RingElem, RingElem, RingElem)>> {
    let qa = quad(a);
    let qb = quad(b);
    let (kappa, lambda) = if qb.is_zero() {
        (RingElem::one(), if qa.is_zero() { RingElem::one() } else { RingElem::zero() })
    } else if qa.is_zero() {
        (RingElem::zero(), RingElem::one())
    } else {
        match proportional_factor(&qb.coeffs(), &qa.coeffs())? {
            Some(l) => (RingElem::one(), l),
            None => return Ok(None),
        }
    };
    let mu = kappa.checked_mul(&b.m11)?.checked_sub(&lambda.checked_mul(&a.m11)?)?;
    Ok(Some((kappa, lambda, mu)))
}

pub fn is_scalar(m: &Mat2) -> bool {
    m.is_scalar()
}

/// Membership in `T(beta)`: `m` fixes `beta`.
pub fn stabilizer_membership(m: &Mat2, beta: &ProjPoint) -> Result<bool> {
    if m.det().is_zero() {
        return Ok(false);
    }
    Ok(mobius(m, beta)? == *beta)
}

/// Membership in `G(Q)`: `quad(m)` is a multiple of `q`.
pub fn group_of_quad_membership(m: &Mat2, q: &QuadPoly) -> Result<bool> {
    if m.det().is_zero() {
        return Ok(false);
    }
    let qm = quad(m);
    if qm.is_zero() {
        return Ok(true);
    }
    if q.is_zero() {
        return Ok(false);
    }
    Ok(proportional_factor(&qm.coeffs(), &q.coeffs())?.is_some())
}

/// Which of the four dynamical regimes of `beta -> m^n beta` applies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Dynamics {
    /// `quad(m) = 0`; every point is fixed.
    Scalar,
    DoubleRoot(ProjPoint),
    /// `|lambda_plus| > |lambda_minus|`.
    Gap {
        plus: ProjPoint,
        minus: ProjPoint,
        lambda_plus: RingElem,
        lambda_minus: RingElem,
    },
    /// Distinct roots with eigenvalues of equal magnitude, listed in canonical order.
    EqualMagnitude { roots: [ProjPoint; 2], lambdas: [RingElem; 2] },
}

/// Whether the two eigenvalues of an invertible, non-scalar `m` with distinct roots have
/// equal magnitude. Decided exactly: this holds iff `trace^2/det` is real and in `[0, 4)`.
pub fn equal_magnitude(m: &Mat2) -> Result<bool> {
    let det = m.det();
    if det.is_zero() {
        return Err(Error::Singular);
    }
    let r = m.trace().square().checked_div(&det)?;
    if !r.is_real() {
        return Ok(false);
    }
    let r = real_part(&r);
    Ok(r.sign()? != Ordering::Less && (&r - &RingElem::int(4)).sign()? == Ordering::Less)
}

/// Drops a zero imaginary coordinate so the sign can be taken exactly.
fn real_part(x: &RingElem) -> RingElem {
    match x {
        RingElem::Quad(q) if !x.base_field().is_real() => RingElem::rational(q.a.clone()),
        _ => x.clone(),
    }
}

pub fn dynamics(m: &Mat2) -> Result<Dynamics> {
    dynamics_in(m, &m.base_field()?)
}

pub fn dynamics_in(m: &Mat2, base: &BaseField) -> Result<Dynamics> {
    if m.det().is_zero() {
        return Err(Error::Singular);
    }
    let q = quad(m);
    let rp = roots_in(&q, base)?;
    match rp.kind {
        RootKind::ZeroPoly => Ok(Dynamics::Scalar),
        RootKind::DoubleRoot => Ok(Dynamics::DoubleRoot(rp.roots[0].clone())),
        RootKind::TwoRoots => {
            let (r0, r1) = (rp.roots[0].clone(), rp.roots[1].clone());
            let l0 = eigen_unchecked(m, &r0)?;
            let l1 = eigen_unchecked(m, &r1)?;
            if equal_magnitude(m)? {
                let (roots, lambdas) = if r0.canonical_cmp(&r1) == Ordering::Greater {
                    ([r1, r0], [l1, l0])
                } else {
                    ([r0, r1], [l0, l1])
                };
                return Ok(Dynamics::EqualMagnitude { roots, lambdas });
            }
            Ok(match l0.abs_cmp(&l1)? {
                Ordering::Less => Dynamics::Gap { plus: r1, minus: r0, lambda_plus: l1, lambda_minus: l0 },
                _ => Dynamics::Gap { plus: r0, minus: r1, lambda_plus: l0, lambda_minus: l1 },
            })
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PowerLimit {
    Limit(ProjPoint),
    Divergent,
}

impl PowerLimit {
    pub fn point(&self) -> Option<&ProjPoint> {
        match self {
            PowerLimit::Limit(p) => Some(p),
            PowerLimit::Divergent => None,
        }
    }
}

/// `lim m^n beta`, decided by the four-case analysis.
pub fn power_limit(m: &Mat2, beta: &ProjPoint) -> Result<PowerLimit> {
    power_limit_in(m, beta, &m.base_field()?)
}

pub fn power_limit_in(m: &Mat2, beta: &ProjPoint, base: &BaseField) -> Result<PowerLimit> {
    Ok(limit_under(&dynamics_in(m, base)?, beta))
}

/// `lim m^n beta` given the already computed dynamics of `m`.
pub fn limit_under(d: &Dynamics, beta: &ProjPoint) -> PowerLimit {
    match d {
        Dynamics::Scalar => PowerLimit::Limit(beta.clone()),
        Dynamics::DoubleRoot(r) => PowerLimit::Limit(r.clone()),
        Dynamics::Gap { plus, minus, .. } => {
            if beta == minus {
                PowerLimit::Limit(minus.clone())
            } else {
                PowerLimit::Limit(plus.clone())
            }
        }
        Dynamics::EqualMagnitude { roots, .. } => {
            if roots.contains(beta) {
                PowerLimit::Limit(beta.clone())
            } else {
                PowerLimit::Divergent
            }
        }
    }
}
