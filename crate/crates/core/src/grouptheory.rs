//! Elements of the kernel of `M`: the `c(a)` classes, generators of `K(O)`, six-term
//! kernel words, and the amalgam presentation of `SL_2(Z)`.

use serde_json::{json, Value};

use crate::cfcore::{reduce, Fcf, FcfClass};
use crate::error::{Error, Result};
use crate::exactnum::{ratio, RingElem};
use crate::matrix2::{mat_of_class, mat_of_fcf, Mat2};

/// `c(a) = |[a, -1/a, a]|`, mapping to `diag(a, -1/a)`.
pub fn c_element(a: &RingElem) -> Result<FcfClass> {
    if a.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let q = vec![a.clone(), a.inv()?.neg(), a.clone()];
    Ok(reduce(&Fcf::new(q)?))
}

fn letter(x: &RingElem) -> FcfClass {
    reduce(&Fcf::new(vec![x.clone()]).expect("single quotient"))
}

fn product(parts: &[FcfClass]) -> Result<FcfClass> {
    parts.iter().try_fold(FcfClass::identity(), |acc, p| acc.star(p))
}

/// The three generator families of `K(O)` evaluated at `a, b, x`.
pub fn k_generators(a: &RingElem, b: &RingElem, x: &RingElem) -> Result<[FcfClass; 3]> {
    let c1 = c_element(&RingElem::one())?;
    let ab_inv = a.checked_mul(b)?.inv()?;
    let zero = letter(&RingElem::zero());
    Ok([
        c1.star(&c1)?,
        product(&[c_element(a)?, c_element(b)?, c_element(&ab_inv)?, c1])?,
        product(&[
            letter(x),
            c_element(a)?,
            zero.clone(),
            letter(&a.square().checked_mul(x)?),
            zero,
            c_element(&a.neg())?,
        ])?,
    ])
}

/// Whether all three generator families map to the identity matrix.
pub fn verify_k_generators(a: &RingElem, b: &RingElem, x: &RingElem) -> Result<bool> {
    Ok(k_generators(a, b, x)?.iter().all(|g| mat_of_class(g) == Mat2::identity()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Variant {
    Inverse,
    Four,
    Three,
    Alpha(RingElem),
}

impl Variant {
    pub fn name(&self) -> &'static str {
        match self {
            Variant::Inverse => "inverse",
            Variant::Four => "four",
            Variant::Three => "three",
            Variant::Alpha(_) => "alpha",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Identity,
    NegativeIdentity,
    Nontrivial,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Identity => "identity",
            Verdict::NegativeIdentity => "negative_identity",
            Verdict::Nontrivial => "nontrivial",
        }
    }

    pub fn of(m: &Mat2) -> Verdict {
        if *m == Mat2::identity() {
            Verdict::Identity
        } else if *m == Mat2::from_ints(-1, 0, 0, -1) {
            Verdict::NegativeIdentity
        } else {
            Verdict::Nontrivial
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelCertificate {
    pub word: Fcf,
    pub image: Mat2,
    pub verdict: Verdict,
    /// Whether the word's class is the identity of the free product.
    pub class_trivial: bool,
}

impl KernelCertificate {
    pub fn for_word(word: Fcf) -> KernelCertificate {
        let image = mat_of_fcf(&word);
        let verdict = Verdict::of(&image);
        let class_trivial = reduce(&word).is_identity();
        KernelCertificate { word, image, verdict, class_trivial }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "word": self.word.to_string(),
            "image": self.image.to_string(),
            "verdict": self.verdict.as_str(),
            "class_trivial": self.class_trivial,
        })
    }
}

/// `[x, y, z, xy/w, w, yz/w]` with `w = -x - z - xyz`.
pub fn six_term_word(x: &RingElem, y: &RingElem, z: &RingElem) -> Result<Fcf> {
    let w = x.neg().checked_sub(z)?.checked_sub(&x.checked_mul(y)?.checked_mul(z)?)?;
    let a = x.checked_mul(y)?.checked_div(&w)?;
    let b = y.checked_mul(z)?.checked_div(&w)?;
    Fcf::new(vec![x.clone(), y.clone(), z.clone(), a, w, b])
}

/// Six-term kernel word for the chosen family, with its certificate.
pub fn six_term_kernel(x: &RingElem, variant: &Variant) -> Result<KernelCertificate> {
    let xi = x.inv()?;
    let k = |n: i64| RingElem::int(n).checked_mul(&xi);
    let (y, z) = match variant {
        Variant::Inverse => (xi.neg(), x.clone()),
        Variant::Four => (k(-4)?, x.clone()),
        Variant::Three => (k(-3)?, x.clone()),
        Variant::Alpha(alpha) => (alpha.clone(), alpha.inv()?.neg()),
    };
    Ok(KernelCertificate::for_word(six_term_word(x, &y, &z)?))
}

/// An element of small norm witnessing that an imaginary quadratic ring is not
/// discretely normed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExceptionEntry {
    pub label: &'static str,
    pub x: RingElem,
    pub norm: i64,
    pub variant: Variant,
}

pub fn exception_table() -> Vec<ExceptionEntry> {
    let q = |a: (i64, i64), b: (i64, i64), d: i64| {
        RingElem::quad(ratio(a.0, a.1), ratio(b.0, b.1), d).expect("valid radicand")
    };
    let e = |label, x, norm, variant| ExceptionEntry { label, x, norm, variant };
    vec![
        e("1+i", q((1, 1), (1, 1), -1), 2, Variant::Four),
        e("(1+sqrt(-7))/2", q((1, 2), (1, 2), -7), 2, Variant::Four),
        e("sqrt(-2)", q((0, 1), (1, 1), -2), 2, Variant::Four),
        e("(3+sqrt(-3))/2", q((3, 2), (1, 2), -3), 3, Variant::Three),
        e("1+sqrt(-2)", q((1, 1), (1, 1), -2), 3, Variant::Three),
        e("(1+sqrt(-11))/2", q((1, 2), (1, 2), -11), 3, Variant::Three),
        e("sqrt(-3)", q((0, 1), (1, 1), -3), 3, Variant::Three),
    ]
}

/// Named checks of the amalgam presentation `SL_2(Z) = Z/6 *_{Z/2} Z/4`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmalgamReport {
    pub checks: Vec<(String, bool)>,
}

impl AmalgamReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.1)
    }

    pub fn to_json(&self) -> Value {
        let checks: Vec<Value> = self.checks.iter().map(|(n, ok)| json!({"name": n, "pass": ok})).collect();
        json!({"all_pass": self.all_pass(), "checks": checks})
    }
}

fn cls(xs: &[i64]) -> FcfClass {
    reduce(&Fcf::from_ints(xs).expect("nonempty"))
}

/// Verifies the relations used to identify `FCF+(Z)/K(Z)` with the amalgam, over the
/// sample `xs` for the one-parameter identities.
pub fn amalgam_relations_for(xs: &[i64]) -> Result<AmalgamReport> {
    let alpha = cls(&[1, -1]);
    let beta = cls(&[1, -1, 1, 0]);
    let c1 = c_element(&RingElem::int(1))?;
    let cm1 = c_element(&RingElem::int(-1))?;
    let id = Mat2::identity();
    let a3 = alpha.pow(3)?;
    let b2 = beta.pow(2)?;
    let mut checks = vec![
        ("alpha^3 = c(1)c(-1)".to_string(), a3 == c1.star(&cm1)?),
        ("beta^2 = c(1)c(-1)^-1".to_string(), b2 == c1.star(&cm1.inverse())?),
        ("c(-1)^-1 = [0,1,-1,1,0]".to_string(), cm1.inverse() == cls(&[0, 1, -1, 1, 0])),
        ("beta = c(1)[0]".to_string(), beta == c1.star(&cls(&[0]))?),
        ("M(alpha) = [[0,1],[-1,1]]".to_string(), mat_of_class(&alpha) == Mat2::from_ints(0, 1, -1, 1)),
        ("M(beta) = [[0,1],[-1,0]]".to_string(), mat_of_class(&beta) == Mat2::from_ints(0, 1, -1, 0)),
        ("M(c(1)c(-1)) = -I".to_string(), mat_of_class(&c1.star(&cm1)?) == Mat2::from_ints(-1, 0, 0, -1)),
        ("M(alpha^6) = I".to_string(), mat_of_class(&alpha.pow(6)?) == id),
        ("M(alpha^3 beta^2) = I".to_string(), mat_of_class(&a3.star(&b2)?) == id),
        ("M(beta^4) = I".to_string(), mat_of_class(&beta.pow(4)?) == id),
        ("U(-1) = beta^-1 alpha = [-1,0]".to_string(), beta.pow(-1)?.star(&alpha)? == cls(&[-1, 0])),
        ("L(-1) = beta^-1 alpha^2 = [0,-1]".to_string(), beta.pow(-1)?.star(&alpha.pow(2)?)? == cls(&[0, -1])),
        (
            "c(1)c(-1)c(1)c(-1) = alpha^6".to_string(),
            product(&[c1.clone(), cm1.clone(), c1.clone(), cm1.clone()])? == alpha.pow(6)?,
        ),
        ("c(-1)^2 = beta^-2 alpha^3".to_string(), cm1.pow(2)? == beta.pow(-2)?.star(&a3)?),
        ("c(1)^2 = beta alpha^-3 beta".to_string(), c1.pow(2)? == product(&[beta.clone(), alpha.pow(-3)?, beta.clone()])?),
    ];
    for &x in xs {
        let xc = cls(&[x]);
        let conj = |w: &[i64]| product(&[xc.inverse(), cls(w), xc.clone()]);
        let lhs = c1.pow(2)?.star(&conj(&[x - 1, 1, -1, x - 1, 1, -1])?)?;
        let rhs = conj(&[x, 1, -1, x, 1, -1])?;
        checks.push((format!("c(1)^2 step at x={x}"), lhs == rhs));
        let lhs = cm1.pow(2)?.star(&conj(&[x + 1, -1, 1, x + 1, -1, 1])?)?;
        let rhs = conj(&[x, -1, 1, x, -1, 1])?;
        checks.push((format!("c(-1)^2 step at x={x}"), lhs == rhs));
    }
    Ok(AmalgamReport { checks })
}

pub fn amalgam_relations() -> Result<AmalgamReport> {
    amalgam_relations_for(&(-5..=5).collect::<Vec<_>>())
}
