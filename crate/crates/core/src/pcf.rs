//! Periodic continued fractions of explicit type `(N, k)`.

use std::fmt;

use num_integer::Integer;

use crate::cfcore::{common_field, reduce_word, Fcf};
use crate::error::{Error, Result};
use crate::exactnum::{BaseField, RingElem};
use crate::matrix2::{
    eigen_at, group_of_quad_membership, mat_of_word, mobius, quad, roots_in, stabilizer_membership, Mat2,
    ProjPoint, QuadPoly, RootKind,
};

/// `[b1, ..., bN; a1, ..., ak]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pcf {
    initial: Vec<RingElem>,
    repeating: Vec<RingElem>,
}

impl Pcf {
    pub fn new(initial: Vec<RingElem>, repeating: Vec<RingElem>) -> Result<Self> {
        if repeating.is_empty() {
            return Err(Error::EmptyPeriod);
        }
        common_field(&initial)?.join(&common_field(&repeating)?)?;
        Ok(Pcf { initial, repeating })
    }

    pub fn from_ints(initial: &[i64], repeating: &[i64]) -> Result<Self> {
        let f = |xs: &[i64]| xs.iter().map(|&x| RingElem::int(x)).collect();
        Pcf::new(f(initial), f(repeating))
    }

    pub fn initial(&self) -> &[RingElem] {
        &self.initial
    }

    pub fn repeating(&self) -> &[RingElem] {
        &self.repeating
    }

    /// `(N, k)`.
    pub fn pcf_type(&self) -> (usize, usize) {
        (self.initial.len(), self.repeating.len())
    }

    pub fn base_field(&self) -> BaseField {
        let all: Vec<RingElem> = self.initial.iter().chain(&self.repeating).cloned().collect();
        common_field(&all).expect("checked at construction")
    }

    /// The `i`-th partial quotient, counting from 0.
    pub fn term(&self, i: usize) -> &RingElem {
        let n = self.initial.len();
        if i < n {
            &self.initial[i]
        } else {
            &self.repeating[(i - n) % self.repeating.len()]
        }
    }

    /// `M_n(P) = D(c_1)...D(c_n)` over the first `n` partial quotients.
    pub fn prefix_matrix(&self, n: usize) -> Mat2 {
        let word: Vec<RingElem> = (0..n).map(|i| self.term(i).clone()).collect();
        mat_of_word(&word)
    }

    /// The convergent `C_n = M_n * infinity`.
    pub fn convergent(&self, n: usize) -> Result<ProjPoint> {
        mobius(&self.prefix_matrix(n), &ProjPoint::Infinity)
    }

    /// `S_F`: `[b, a, 0, -b reversed, 0]`, or just the period when `N = 0`.
    pub fn unfold(&self) -> Fcf {
        let mut w: Vec<RingElem> = self.initial.iter().chain(&self.repeating).cloned().collect();
        if !self.initial.is_empty() {
            w.push(RingElem::zero());
            w.extend(self.initial.iter().rev().map(|b| b.neg()));
            w.push(RingElem::zero());
        }
        Fcf::new(w).expect("period is nonempty")
    }

    /// `S_R`: the purely periodic PCF with period `f`.
    pub fn fold(f: &Fcf) -> Pcf {
        Pcf { initial: vec![], repeating: f.quotients().to_vec() }
    }

    pub fn normal_form(&self) -> PcfClass {
        PcfClass::from_word(self.unfold().quotients())
    }

    /// `P* = [b, 0; -a reversed]`, whose class is the inverse class.
    pub fn galois_dual(&self) -> Pcf {
        let mut initial = self.initial.clone();
        initial.push(RingElem::zero());
        let repeating = self.repeating.iter().rev().map(|a| a.neg()).collect();
        Pcf { initial, repeating }
    }

    /// `E(P) = M(S_F(P))`.
    pub fn e_matrix(&self) -> Mat2 {
        mat_of_word(self.unfold().quotients())
    }

    pub fn quad(&self) -> QuadPoly {
        quad(&self.e_matrix())
    }

    /// Retyped copy `[b, a1..aj; a_{j+1}..a_k, a_1..a_j]`, k-equal to `self`.
    pub fn shifted(&self, j: usize) -> Pcf {
        let k = self.repeating.len();
        let mut initial = self.initial.clone();
        initial.extend((0..j).map(|i| self.repeating[i % k].clone()));
        let repeating = (0..k).map(|i| self.repeating[(i + j) % k].clone()).collect();
        Pcf { initial, repeating }
    }

    /// Retyped copy with period repeated `m` times, CF-equal to `self`.
    pub fn period_multiple(&self, m: usize) -> Pcf {
        let repeating = (0..m.max(1)).flat_map(|_| self.repeating.iter().cloned()).collect();
        Pcf { initial: self.initial.clone(), repeating }
    }

    /// Same infinite sequence of partial quotients.
    pub fn cf_equal(&self, o: &Pcf) -> bool {
        let (n, k) = self.pcf_type();
        let (n2, k2) = o.pcf_type();
        let span = n.max(n2) + k.lcm(&k2);
        (0..span).all(|i| self.term(i) == o.term(i))
    }

    pub fn k_equal(&self, o: &Pcf) -> bool {
        self.repeating.len() == o.repeating.len() && self.cf_equal(o)
    }

    pub fn equal(&self, o: &Pcf) -> bool {
        self == o
    }

    /// Equivalence: equal normal forms.
    pub fn equivalent(&self, o: &Pcf) -> bool {
        self.normal_form() == o.normal_form()
    }
}

impl fmt::Display for Pcf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |xs: &[RingElem]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        if self.initial.is_empty() {
            write!(f, "[; {}]", join(&self.repeating))
        } else {
            write!(f, "[{}; {}]", join(&self.initial), join(&self.repeating))
        }
    }
}

/// `[b1; a1..a_{k-1}, a_k + b1' - b1, a1'..a'_{k'-1}, a'_{k'} - b1' + b1]`.
pub fn type1_star(p: &Pcf, q: &Pcf) -> Result<Pcf> {
    if p.initial.len() != 1 || q.initial.len() != 1 {
        return Err(Error::WrongType("type1_star needs two PCFs with N = 1".into()));
    }
    let (b, b2) = (&p.initial[0], &q.initial[0]);
    let shift = b2.checked_sub(b)?;
    let mut rep = p.repeating.clone();
    let last = rep.len() - 1;
    rep[last] = rep[last].checked_add(&shift)?;
    let mut tail = q.repeating.clone();
    let last = tail.len() - 1;
    tail[last] = tail[last].checked_sub(&shift)?;
    rep.extend(tail);
    Pcf::new(vec![b.clone()], rep)
}

/// A class of PCFs, held by its reduced purely periodic representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PcfClass {
    reduced_rcf: Pcf,
}

impl PcfClass {
    fn from_word(w: &[RingElem]) -> PcfClass {
        PcfClass { reduced_rcf: Pcf { initial: vec![], repeating: reduce_word(w) } }
    }

    pub fn identity() -> PcfClass {
        PcfClass::from_word(&[RingElem::zero(), RingElem::zero()])
    }

    pub fn reduced(&self) -> &Pcf {
        &self.reduced_rcf
    }

    pub fn is_identity(&self) -> bool {
        *self == PcfClass::identity()
    }

    pub fn star(&self, o: &PcfClass) -> Result<PcfClass> {
        let joined = self.reduced_rcf.unfold().concat(&o.reduced_rcf.unfold())?;
        Ok(PcfClass::from_word(joined.quotients()))
    }

    pub fn inverse(&self) -> PcfClass {
        self.reduced_rcf.galois_dual().normal_form()
    }

    pub fn e_matrix(&self) -> Mat2 {
        self.reduced_rcf.e_matrix()
    }
}

impl fmt::Display for PcfClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.reduced_rcf)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    pub root: ProjPoint,
    pub value: RingElem,
    pub is_unit_norm: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Characters {
    /// `E(P)` is scalar; every point is a root and the character is this scalar.
    Scalar(RingElem),
    /// One entry per root, with multiplicity.
    Roots(Vec<Character>),
}

/// Eigenvalue characters of `E(P)` at each root of `Quad(P)`.
pub fn characters(p: &Pcf) -> Result<Characters> {
    let e = p.e_matrix();
    let q = quad(&e);
    let rp = roots_in(&q, &p.base_field())?;
    if rp.kind == RootKind::ZeroPoly {
        return Ok(Characters::Scalar(e.m11.clone()));
    }
    let values = rp.roots.iter().map(|r| eigen_at(&e, r)).collect::<Result<Vec<_>>>()?;
    let det = e.det();
    let product = values[0].checked_mul(&values[1])?;
    let unit = product == det && (det.is_one() || det.neg().is_one());
    Ok(Characters::Roots(
        rp.roots
            .into_iter()
            .zip(values)
            .map(|(root, value)| Character { root, value, is_unit_norm: unit })
            .collect(),
    ))
}

#[derive(Clone, Debug)]
pub enum SubgroupTarget {
    Root(ProjPoint),
    Quad(QuadPoly),
    Matrix(Mat2),
    Pcf(Pcf),
}

/// Whether `E(P)` lies in `T(beta)` or `G(Q)` for the given target.
pub fn pcf_subgroup_membership(p: &Pcf, target: &SubgroupTarget) -> Result<bool> {
    let e = p.e_matrix();
    match target {
        SubgroupTarget::Root(beta) => stabilizer_membership(&e, beta),
        SubgroupTarget::Quad(q) => group_of_quad_membership(&e, q),
        SubgroupTarget::Matrix(a) => group_of_quad_membership(&e, &quad(a)),
        SubgroupTarget::Pcf(p0) => group_of_quad_membership(&e, &p0.quad()),
    }
}
