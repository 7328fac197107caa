//! `RingElem`: a rational, a quadratic irrational, or an element of a quadratic tower.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::interval::{ComplexInterval, Interval};
use super::quad::{check_radicand, QuadElem};
use super::rational::{exact_sqrt, is_integer, radd, rational_squarefree, rmul, rsub, squarefree_decompose, Rational};
use super::tower::TowerElem;
use crate::error::{Error, Result};

/// An exact number. Values are kept collapsed: a tower element with zero
/// `sqrt(delta)` part is stored as its base value, and a quadratic element
/// with zero irrational part is stored as a rational.
#[derive(Clone, Debug)]
pub enum RingElem {
    Rat(Rational),
    Quad(QuadElem),
    Tower(TowerElem),
}

/// The field a value's coordinates live in, below any tower level.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BaseField {
    Rational,
    Quadratic(BigInt),
}

impl BaseField {
    pub fn join(&self, o: &BaseField) -> Result<BaseField> {
        match (self, o) {
            (BaseField::Rational, x) | (x, BaseField::Rational) => Ok(x.clone()),
            (BaseField::Quadratic(a), BaseField::Quadratic(b)) if a == b => Ok(self.clone()),
            (BaseField::Quadratic(a), BaseField::Quadratic(b)) => {
                Err(Error::TowerMismatch(format!("sqrt({a}) and sqrt({b})")))
            }
        }
    }

    /// Whether the field has a real embedding (the rationals or `d > 0`).
    pub fn is_real(&self) -> bool {
        match self {
            BaseField::Rational => true,
            BaseField::Quadratic(d) => d.is_positive(),
        }
    }
}

impl fmt::Display for BaseField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseField::Rational => write!(f, "Q"),
            BaseField::Quadratic(d) => write!(f, "Q(sqrt({d}))"),
        }
    }
}

fn collapse_quad(q: QuadElem) -> RingElem {
    if q.b.is_zero() {
        RingElem::Rat(q.a)
    } else {
        RingElem::Quad(q)
    }
}

fn collapse_tower(t: TowerElem) -> RingElem {
    if t.c1.is_zero() {
        collapse_quad(t.c0)
    } else {
        RingElem::Tower(t)
    }
}

fn quad_eval(q: &QuadElem, prec: u32) -> ComplexInterval {
    let a = ComplexInterval::from_rational(&q.a, prec);
    if q.b.is_zero() {
        return a;
    }
    let root = Interval::point(super::interval::Dyadic::from_int(q.d.abs()), prec).sqrt();
    let r = if q.d.is_positive() {
        ComplexInterval::real(root)
    } else {
        ComplexInterval { re: Interval::zero(prec), im: root }
    };
    a.add(&ComplexInterval::from_rational(&q.b, prec).mul(&r))
}

/// Embeds `q` (with radicand other than `d`) into `Q(sqrt(d))(sqrt(delta))` when `delta`
/// is rational, so that the tower is biquadratic and contains `sqrt(q.d)`.
fn embed_biquadratic(q: &QuadElem, d: &BigInt, delta: &QuadElem) -> Option<(QuadElem, QuadElem)> {
    if !delta.is_rational() {
        return None;
    }
    let (f, s) = rational_squarefree(&delta.a);
    if q.d == s {
        return Some((QuadElem::rational(q.a.clone(), d), QuadElem::rational(&q.b / &f, d)));
    }
    let (g, t) = squarefree_decompose(&(d * &s));
    if q.d == t {
        // sqrt(d)*sqrt(s) = -sqrt(d*s) exactly when both are negative.
        let eps = if d.is_negative() && s.is_negative() { -1 } else { 1 };
        let coef = &q.b * Rational::from_integer(BigInt::from(eps)) / (&f * Rational::from_integer(g));
        return Some((
            QuadElem::rational(q.a.clone(), d),
            QuadElem { a: Rational::zero(), b: coef, d: d.clone() },
        ));
    }
    None
}

/// The factor `r` in the base field with `sqrt(from) = r * sqrt(to)`, when it exists.
fn rebase_factor(from: &QuadElem, to: &QuadElem) -> Result<QuadElem> {
    let mismatch = || Error::TowerMismatch(format!("sqrt({}) and sqrt({})", fmt_quad(from), fmt_quad(to)));
    let s = from.mul(&to.inv()?).sqrt().ok_or_else(mismatch)?;
    if from.d.is_positive() {
        return Ok(s);
    }
    // Over an imaginary field the sign is fixed by the principal branches numerically.
    let mut prec = 64;
    while prec <= 1 << 14 {
        let lhs = quad_eval(from, prec).sqrt();
        let rhs = quad_eval(&s, prec).mul(&quad_eval(to, prec).sqrt());
        let plus = lhs.sub(&rhs).contains_zero();
        let minus = lhs.add(&rhs).contains_zero();
        if plus && !minus {
            return Ok(s);
        }
        if minus && !plus {
            return Ok(s.neg());
        }
        prec *= 2;
    }
    Err(Error::Unsupported("could not separate square root branches".into()))
}

enum Lifted {
    Rat(Rational, Rational),
    Quad(QuadElem, QuadElem),
    Tower(TowerElem, TowerElem),
}

fn as_quad(x: &RingElem, d: &BigInt) -> Result<QuadElem> {
    match x {
        RingElem::Rat(r) => Ok(QuadElem::rational(r.clone(), d)),
        RingElem::Quad(q) if &q.d == d => Ok(q.clone()),
        RingElem::Quad(q) => Err(Error::TowerMismatch(format!("sqrt({}) and sqrt({})", q.d, d))),
        RingElem::Tower(_) => Err(Error::TowerMismatch("tower element in base field".into())),
    }
}

fn into_tower(x: &RingElem, d: &BigInt, delta: &QuadElem) -> Result<TowerElem> {
    let make = |c0, c1| TowerElem { c0, c1, delta: delta.clone() };
    match x {
        RingElem::Rat(r) => Ok(make(QuadElem::rational(r.clone(), d), QuadElem::rational(Rational::zero(), d))),
        RingElem::Quad(q) if &q.d == d => Ok(make(q.clone(), QuadElem::rational(Rational::zero(), d))),
        RingElem::Quad(q) => embed_biquadratic(q, d, delta)
            .map(|(c0, c1)| make(c0, c1))
            .ok_or_else(|| Error::TowerMismatch(format!("sqrt({}) outside tower over sqrt({d})", q.d))),
        RingElem::Tower(t) => {
            if &t.delta.d != d {
                return Err(Error::TowerMismatch(format!("towers over sqrt({}) and sqrt({d})", t.delta.d)));
            }
            if &t.delta == delta {
                return Ok(t.clone());
            }
            let r = rebase_factor(&t.delta, delta)?;
            Ok(make(t.c0.clone(), t.c1.mul(&r)))
        }
    }
}

fn lift(x: &RingElem, y: &RingElem) -> Result<Lifted> {
    use RingElem::*;
    match (x, y) {
        (Rat(a), Rat(b)) => Ok(Lifted::Rat(a.clone(), b.clone())),
        (Tower(t), _) => Ok(Lifted::Tower(t.clone(), into_tower(y, &t.delta.d, &t.delta)?)),
        (_, Tower(t)) => Ok(Lifted::Tower(into_tower(x, &t.delta.d, &t.delta)?, t.clone())),
        (Quad(q), _) => Ok(Lifted::Quad(q.clone(), as_quad(y, &q.d)?)),
        (_, Quad(q)) => Ok(Lifted::Quad(as_quad(x, &q.d)?, q.clone())),
    }
}

impl RingElem {
    pub fn zero() -> Self {
        RingElem::Rat(Rational::zero())
    }

    pub fn one() -> Self {
        RingElem::Rat(Rational::one())
    }

    pub fn int(n: i64) -> Self {
        RingElem::Rat(Rational::from_integer(BigInt::from(n)))
    }

    pub fn frac(n: i64, d: i64) -> Self {
        RingElem::Rat(Rational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn rational(r: Rational) -> Self {
        RingElem::Rat(r)
    }

    /// `a + b*sqrt(d)`; `d` must be squarefree and not 0 or 1.
    pub fn quad(a: Rational, b: Rational, d: i64) -> Result<Self> {
        Ok(collapse_quad(QuadElem::new(a, b, BigInt::from(d))?))
    }

    /// Integer-coefficient shorthand for `a + b*sqrt(d)`.
    pub fn quad_int(a: i64, b: i64, d: i64) -> Result<Self> {
        RingElem::quad(Rational::from_integer(a.into()), Rational::from_integer(b.into()), d)
    }

    pub fn from_quad(q: QuadElem) -> Self {
        collapse_quad(q)
    }

    /// `c0 + c1*sqrt(delta)`; `delta` must not be a square in the base field.
    pub fn from_tower(t: TowerElem) -> Result<Self> {
        check_radicand(&t.delta.d)?;
        if t.c0.d != t.delta.d || t.c1.d != t.delta.d {
            return Err(Error::TowerMismatch("tower coordinates over different fields".into()));
        }
        if t.delta.is_zero() || t.delta.sqrt().is_some() {
            return Err(Error::InvalidRadicand(format!("{} is a square in the base field", fmt_quad(&t.delta))));
        }
        Ok(collapse_tower(t))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            RingElem::Rat(r) => r.is_zero(),
            RingElem::Quad(q) => q.is_zero(),
            RingElem::Tower(t) => t.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(self, RingElem::Rat(r) if r.is_one())
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            RingElem::Rat(r) => Some(r),
            _ => None,
        }
    }

    pub fn is_tower(&self) -> bool {
        matches!(self, RingElem::Tower(_))
    }

    /// The coordinate field; for tower elements, the field below the tower.
    pub fn base_field(&self) -> BaseField {
        match self {
            RingElem::Rat(_) => BaseField::Rational,
            RingElem::Quad(q) => BaseField::Quadratic(q.d.clone()),
            RingElem::Tower(t) => BaseField::Quadratic(t.delta.d.clone()),
        }
    }

    pub fn checked_add(&self, o: &RingElem) -> Result<RingElem> {
        if let (RingElem::Rat(a), RingElem::Rat(b)) = (self, o) {
            return Ok(RingElem::Rat(radd(a, b)));
        }
        Ok(match lift(self, o)? {
            Lifted::Rat(a, b) => RingElem::Rat(radd(&a, &b)),
            Lifted::Quad(a, b) => collapse_quad(a.add(&b)),
            Lifted::Tower(a, b) => collapse_tower(a.add(&b)),
        })
    }

    pub fn checked_sub(&self, o: &RingElem) -> Result<RingElem> {
        if let (RingElem::Rat(a), RingElem::Rat(b)) = (self, o) {
            return Ok(RingElem::Rat(rsub(a, b)));
        }
        Ok(match lift(self, o)? {
            Lifted::Rat(a, b) => RingElem::Rat(rsub(&a, &b)),
            Lifted::Quad(a, b) => collapse_quad(a.sub(&b)),
            Lifted::Tower(a, b) => collapse_tower(a.sub(&b)),
        })
    }

    pub fn checked_mul(&self, o: &RingElem) -> Result<RingElem> {
        if let (RingElem::Rat(a), RingElem::Rat(b)) = (self, o) {
            return Ok(RingElem::Rat(rmul(a, b)));
        }
        Ok(match lift(self, o)? {
            Lifted::Rat(a, b) => RingElem::Rat(rmul(&a, &b)),
            Lifted::Quad(a, b) => collapse_quad(a.mul(&b)),
            Lifted::Tower(a, b) => collapse_tower(a.mul(&b)),
        })
    }

    pub fn checked_div(&self, o: &RingElem) -> Result<RingElem> {
        if o.is_zero() {
            return Err(Error::DivisionByZero);
        }
        self.checked_mul(&o.inv()?)
    }

    pub fn inv(&self) -> Result<RingElem> {
        match self {
            RingElem::Rat(r) if r.is_zero() => Err(Error::DivisionByZero),
            RingElem::Rat(r) => Ok(RingElem::Rat(r.recip())),
            RingElem::Quad(q) => Ok(collapse_quad(q.inv()?)),
            RingElem::Tower(t) => Ok(collapse_tower(t.inv()?)),
        }
    }

    pub fn neg(&self) -> RingElem {
        match self {
            RingElem::Rat(r) => RingElem::Rat(-r),
            RingElem::Quad(q) => RingElem::Quad(q.neg()),
            RingElem::Tower(t) => RingElem::Tower(t.neg()),
        }
    }

    pub fn square(&self) -> RingElem {
        self * self
    }

    pub fn pow(&self, n: i64) -> Result<RingElem> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = RingElem::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.checked_mul(&sq)?;
            }
            e >>= 1;
            if e > 0 {
                sq = sq.checked_mul(&sq)?;
            }
        }
        Ok(acc)
    }

    /// Whether the value is real under the fixed embedding.
    pub fn is_real(&self) -> bool {
        match self {
            RingElem::Rat(_) => true,
            RingElem::Quad(q) => q.d.is_positive(),
            RingElem::Tower(t) => {
                t.delta.d.is_positive() && t.delta.sign().map(|s| s == Ordering::Greater).unwrap_or(false)
            }
        }
    }

    /// Exact sign under the real embedding.
    pub fn sign(&self) -> Result<Ordering> {
        match self {
            RingElem::Rat(r) => Ok(r.cmp(&Rational::zero())),
            RingElem::Quad(q) => q.sign(),
            RingElem::Tower(t) => {
                if !t.delta.d.is_positive() || t.delta.sign()? != Ordering::Greater {
                    return Err(Error::NotReal);
                }
                let s0 = t.c0.sign()?;
                let s1 = t.c1.sign()?;
                if s0 == Ordering::Equal || s0 == s1 {
                    return Ok(s1);
                }
                // Opposite signs: compare c0^2 with c1^2*delta inside the base field.
                let diff = t.c0.mul(&t.c0).sub(&t.c1.mul(&t.c1).mul(&t.delta));
                Ok(match diff.sign()? {
                    Ordering::Greater => s0,
                    Ordering::Less => s1,
                    Ordering::Equal => Ordering::Equal,
                })
            }
        }
    }

    /// `|x|^2` as an exact real number, when that is computable without leaving the tower.
    fn abs_sq_exact(&self) -> Option<RingElem> {
        match self {
            RingElem::Rat(_) => Some(self.square()),
            RingElem::Quad(q) if q.d.is_positive() => Some(self.square()),
            RingElem::Quad(q) => Some(RingElem::Rat(q.norm())),
            RingElem::Tower(t) if !t.delta.d.is_positive() => None,
            RingElem::Tower(_) if self.is_real() => Some(self.square()),
            // Real base and negative delta: c0 and c1 are real, sqrt(delta) is imaginary.
            RingElem::Tower(t) => Some(collapse_quad(t.norm())),
        }
    }

    /// Exact comparison of `|x|` with 1.
    pub fn abs_cmp_one(&self) -> Result<Ordering> {
        let a = self
            .abs_sq_exact()
            .ok_or_else(|| Error::Unsupported("magnitude of a tower element over an imaginary field".into()))?;
        (&a - &RingElem::one()).sign()
    }

    /// Comparison of `|x|` with `|y|`. Exact except for tower elements over an imaginary
    /// field, where enclosures are refined until they separate.
    pub fn abs_cmp(&self, o: &RingElem) -> Result<Ordering> {
        if let (Some(a), Some(b)) = (self.abs_sq_exact(), o.abs_sq_exact()) {
            if let Ok(diff) = a.checked_sub(&b) {
                if let Ok(s) = diff.sign() {
                    return Ok(s);
                }
            }
        }
        if self == o || *self == o.neg() {
            return Ok(Ordering::Equal);
        }
        let mut prec = 64;
        while prec <= 1 << 14 {
            let a = self.complex_eval(prec).abs_sq();
            let b = o.complex_eval(prec).abs_sq();
            if a.hi < b.lo {
                return Ok(Ordering::Less);
            }
            if b.hi < a.lo {
                return Ok(Ordering::Greater);
            }
            prec *= 2;
        }
        Err(Error::Unsupported("magnitudes did not separate numerically".into()))
    }

    /// Rigorous enclosure of the embedded value.
    pub fn complex_eval(&self, prec: u32) -> ComplexInterval {
        let w = prec.max(8) + 16;
        match self {
            RingElem::Rat(r) => ComplexInterval::from_rational(r, w),
            RingElem::Quad(q) => quad_eval(q, w),
            RingElem::Tower(t) => {
                let root = quad_eval(&t.delta, w).sqrt();
                quad_eval(&t.c0, w).add(&quad_eval(&t.c1, w).mul(&root))
            }
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.complex_eval(64).re.to_f64()
    }

    /// A fixed total order used for deterministic tie-breaking.
    pub fn canonical_cmp(&self, o: &RingElem) -> Ordering {
        fn rank(x: &RingElem) -> u8 {
            match x {
                RingElem::Rat(_) => 0,
                RingElem::Quad(_) => 1,
                RingElem::Tower(_) => 2,
            }
        }
        fn qcmp(x: &QuadElem, y: &QuadElem) -> Ordering {
            x.d.cmp(&y.d).then_with(|| x.a.cmp(&y.a)).then_with(|| x.b.cmp(&y.b))
        }
        match (self, o) {
            (RingElem::Rat(a), RingElem::Rat(b)) => a.cmp(b),
            (RingElem::Quad(a), RingElem::Quad(b)) => qcmp(a, b),
            (RingElem::Tower(a), RingElem::Tower(b)) => qcmp(&a.delta, &b.delta)
                .then_with(|| qcmp(&a.c0, &b.c0))
                .then_with(|| qcmp(&a.c1, &b.c1)),
            _ => rank(self).cmp(&rank(o)),
        }
    }

    /// Membership in the ring of integers of the coordinate field.
    pub fn is_integral(&self) -> bool {
        match self {
            RingElem::Rat(r) => is_integer(r),
            RingElem::Quad(q) => q.is_integral(),
            RingElem::Tower(_) => false,
        }
    }

    /// Field norm down to the rationals for base-field elements.
    pub fn norm(&self) -> Option<Rational> {
        match self {
            RingElem::Rat(r) => Some(r.clone()),
            RingElem::Quad(q) => Some(q.norm()),
            RingElem::Tower(_) => None,
        }
    }
}

/// Principal square root of `x`, adjoining a radical over `base` when needed.
///
/// Over the rationals a non-square gives a quadratic irrational; over `Q(sqrt(d))` a
/// non-square gives a tower element whose radicand has rational square factors removed.
pub fn sqrt_in(x: &RingElem, base: &BaseField) -> Result<RingElem> {
    let field = base.join(&x.base_field())?;
    if x.is_tower() {
        return Err(Error::Unsupported("square roots of tower elements".into()));
    }
    if x.is_zero() {
        return Ok(RingElem::zero());
    }
    match field {
        BaseField::Rational => {
            let r = x.as_rational().expect("rational field");
            if let Some(s) = exact_sqrt(r) {
                return Ok(RingElem::Rat(s));
            }
            let (f, s) = rational_squarefree(r);
            Ok(collapse_quad(QuadElem { a: Rational::zero(), b: f, d: s }))
        }
        BaseField::Quadratic(d) => {
            let q = as_quad(x, &d)?;
            if let Some(s) = q.sqrt() {
                return Ok(collapse_quad(s));
            }
            let (scale, delta) = strip_rational_square(&q);
            Ok(RingElem::Tower(TowerElem {
                c0: QuadElem::rational(Rational::zero(), &d),
                c1: QuadElem::rational(scale, &d),
                delta,
            }))
        }
    }
}

/// Writes `q = f^2 * q'` with `f > 0` rational and `q'` having coprime integer coordinates
/// free of square factors in their content.
fn strip_rational_square(q: &QuadElem) -> (Rational, QuadElem) {
    use num_integer::Integer;
    if q.b.is_zero() {
        let (f, s) = rational_squarefree(&q.a);
        return (f, QuadElem::rational(Rational::from_integer(s), &q.d));
    }
    let den = q.a.denom().lcm(q.b.denom());
    let dr = Rational::from_integer(den.clone());
    let big_a = (&q.a * &dr * &dr).to_integer();
    let big_b = (&q.b * &dr * &dr).to_integer();
    let g = big_a.gcd(&big_b);
    let (f, _) = squarefree_decompose(&g);
    let f2 = Rational::from_integer(&f * &f);
    let reduced = QuadElem {
        a: Rational::from_integer(big_a) / &f2,
        b: Rational::from_integer(big_b) / &f2,
        d: q.d.clone(),
    };
    (Rational::new(f, den), reduced)
}

impl PartialEq for RingElem {
    fn eq(&self, o: &RingElem) -> bool {
        match (self, o) {
            (RingElem::Rat(a), RingElem::Rat(b)) => a == b,
            (RingElem::Quad(a), RingElem::Quad(b)) => a == b,
            (RingElem::Tower(a), RingElem::Tower(b)) if a.delta == b.delta => a == b,
            (RingElem::Tower(_), _) | (_, RingElem::Tower(_)) => {
                self.checked_sub(o).map(|z| z.is_zero()).unwrap_or(false)
            }
            _ => false,
        }
    }
}

impl Eq for RingElem {}

pub(crate) fn fmt_quad(q: &QuadElem) -> String {
    fmt_parts(&q.a, &q.b, &q.d)
}

fn fmt_parts(a: &Rational, b: &Rational, d: &BigInt) -> String {
    if b.is_zero() {
        return a.to_string();
    }
    let rad = format!("sqrt({d})");
    let term = if b.is_one() {
        rad
    } else if (-b).is_one() {
        format!("-{rad}")
    } else {
        format!("{b}*{rad}")
    };
    if a.is_zero() {
        term
    } else if term.starts_with('-') {
        format!("{a}{term}")
    } else {
        format!("{a}+{term}")
    }
}

fn fmt_tower(t: &TowerElem) -> String {
    let delta = if t.delta.is_rational() {
        format!("{}+0*sqrt({})", t.delta.a, t.delta.d)
    } else {
        fmt_quad(&t.delta)
    };
    let rad = format!("sqrt({delta})");
    let c1 = &t.c1;
    let term = if c1.is_rational() {
        if c1.a.is_one() {
            rad
        } else if (-&c1.a).is_one() {
            format!("-{rad}")
        } else {
            format!("{}*{rad}", c1.a)
        }
    } else if c1.a.is_zero() {
        format!("{}*{rad}", fmt_quad(c1))
    } else {
        format!("({})*{rad}", fmt_quad(c1))
    };
    if t.c0.is_zero() {
        term
    } else if term.starts_with('-') {
        format!("{}{term}", fmt_quad(&t.c0))
    } else {
        format!("{}+{term}", fmt_quad(&t.c0))
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingElem::Rat(r) => write!(f, "{r}"),
            RingElem::Quad(q) => write!(f, "{}", fmt_quad(q)),
            RingElem::Tower(t) => write!(f, "{}", fmt_tower(t)),
        }
    }
}

impl From<i64> for RingElem {
    fn from(n: i64) -> Self {
        RingElem::int(n)
    }
}

impl From<Rational> for RingElem {
    fn from(r: Rational) -> Self {
        RingElem::Rat(r)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&RingElem> for &RingElem {
            type Output = RingElem;
            fn $method(self, o: &RingElem) -> RingElem {
                self.$checked(o).unwrap_or_else(|e| panic!("{}", e))
            }
        }
        impl $tr<RingElem> for RingElem {
            type Output = RingElem;
            fn $method(self, o: RingElem) -> RingElem {
                (&self).$method(&o)
            }
        }
        impl $tr<&RingElem> for RingElem {
            type Output = RingElem;
            fn $method(self, o: &RingElem) -> RingElem {
                (&self).$method(o)
            }
        }
        impl $tr<RingElem> for &RingElem {
            type Output = RingElem;
            fn $method(self, o: RingElem) -> RingElem {
                self.$method(&o)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);

impl Neg for RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        RingElem::neg(&self)
    }
}

impl Neg for &RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        RingElem::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64, d: i64) -> RingElem {
        RingElem::quad_int(a, b, d).unwrap()
    }

    #[test]
    fn unit_times_conjugate() {
        assert_eq!(&q(1, 1, 2) * &q(1, -1, 2), RingElem::int(-1));
        assert_eq!(&RingElem::frac(1, 2) + &RingElem::frac(1, 3), RingElem::frac(5, 6));
    }

    #[test]
    fn mixed_radicands_are_rejected() {
        assert!(matches!(q(0, 1, 2).checked_add(&q(0, 1, 3)), Err(Error::TowerMismatch(_))));
        assert_eq!(RingElem::int(1).checked_div(&RingElem::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn collapse_to_rational() {
        let x = &q(1, 1, 2) + &q(1, -1, 2);
        assert!(matches!(x, RingElem::Rat(_)));
        assert_eq!(x, RingElem::int(2));
    }

    #[test]
    fn abs_against_one() {
        assert_eq!(q(7, 5, 2).abs_cmp_one().unwrap(), Ordering::Greater);
        assert_eq!(q(1, -1, 2).abs_cmp_one().unwrap(), Ordering::Less);
        assert_eq!(q(0, 1, -1).abs_cmp_one().unwrap(), Ordering::Equal);
        assert_eq!(RingElem::int(-1).abs_cmp_one().unwrap(), Ordering::Equal);
    }

    #[test]
    fn nested_root_value() {
        let base = BaseField::Quadratic(BigInt::from(2));
        let beta = sqrt_in(&q(2, 1, 2), &base).unwrap();
        assert!(beta.is_tower());
        assert_eq!(beta.to_string(), "sqrt(2+sqrt(2))");
        assert_eq!(beta.square(), q(2, 1, 2));
        assert_eq!(beta.sign().unwrap(), Ordering::Greater);
        let v = beta.complex_eval(64);
        assert!((v.re.to_f64() - 1.847_759_065_022_573_5).abs() < 1e-15);
        assert!(v.im.is_point_zero());
    }

    #[test]
    fn roots_over_the_rationals() {
        assert_eq!(sqrt_in(&RingElem::int(8), &BaseField::Rational).unwrap(), q(0, 2, 2));
        assert_eq!(sqrt_in(&RingElem::int(-4), &BaseField::Rational).unwrap(), q(0, 2, -1));
        assert_eq!(sqrt_in(&RingElem::frac(9, 4), &BaseField::Rational).unwrap(), RingElem::frac(3, 2));
    }

    #[test]
    fn biquadratic_embedding() {
        // sqrt(5) over Q(sqrt(2)) becomes a tower; it must agree with the plain quadratic sqrt(5).
        let base = BaseField::Quadratic(BigInt::from(2));
        let s5 = sqrt_in(&RingElem::int(5), &base).unwrap();
        assert!(s5.is_tower());
        assert_eq!(s5, q(0, 1, 5));
        // sqrt(10) = sqrt(2)*sqrt(5)
        assert_eq!(&q(0, 1, 2) * &s5, q(0, 1, 10));
        // Over Q(i): sqrt(-1)*sqrt(-3) = -sqrt(3)
        let bi = BaseField::Quadratic(BigInt::from(-1));
        let sm3 = sqrt_in(&RingElem::int(-3), &bi).unwrap();
        assert_eq!(&q(0, 1, -1) * &sm3, q(0, -1, 3));
    }

    #[test]
    fn rebased_towers_compare_equal() {
        // sqrt(4*(2+sqrt2)) and 2*sqrt(2+sqrt2); and a delta differing by the square (1+sqrt2)^2.
        let base = BaseField::Quadratic(BigInt::from(2));
        let beta = sqrt_in(&q(2, 1, 2), &base).unwrap();
        let u = q(1, 1, 2);
        let other = sqrt_in(&(&q(2, 1, 2) * &u.square()), &base).unwrap();
        assert_eq!(other, &u * &beta);
        let diff = &other - &(&u * &beta);
        assert!(diff.is_zero());
    }

    #[test]
    fn tower_over_imaginary_base() {
        let base = BaseField::Quadratic(BigInt::from(-1));
        let t = sqrt_in(&q(1, 2, -1), &base).unwrap();
        assert!(t.is_tower());
        assert_eq!(t.square(), q(1, 2, -1));
        assert!(t.abs_cmp_one().is_err());
        assert_eq!(t.abs_cmp(&RingElem::int(1)).unwrap(), Ordering::Greater);
        let inv = t.inv().unwrap();
        assert_eq!(&t * &inv, RingElem::one());
    }

    #[test]
    fn tower_signs() {
        let base = BaseField::Quadratic(BigInt::from(2));
        let beta = sqrt_in(&q(2, 1, 2), &base).unwrap();
        let lam = &q(-228487, 161564, 2) + &(&q(-298532, 211094, 2) * &beta);
        let lam_star = &q(-228487, 161564, 2) - &(&q(-298532, 211094, 2) * &beta);
        assert_eq!(&lam * &lam_star, RingElem::one());
        let fl = lam.to_f64();
        assert_eq!(lam.sign().unwrap(), if fl > 0.0 { Ordering::Greater } else { Ordering::Less });
    }

    #[test]
    fn rendering() {
        assert_eq!(q(3, 5, 2).to_string(), "3+5*sqrt(2)");
        let x = RingElem::quad(Rational::new(1.into(), 2.into()), Rational::new((-3).into(), 4.into()), -1).unwrap();
        assert_eq!(x.to_string(), "1/2-3/4*sqrt(-1)");
        assert_eq!(q(0, -1, 2).to_string(), "-sqrt(2)");
        assert_eq!(RingElem::frac(-7, 5).to_string(), "-7/5");
    }
}
