//! Finite continued fraction words, their reduced normal forms and the group of classes.

use std::fmt;

use crate::error::{Error, Result};
use crate::exactnum::{BaseField, RingElem};

/// A finite continued fraction `[c1, ..., cn]`, read as the formal word `D(c1)...D(cn)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fcf {
    quotients: Vec<RingElem>,
}

impl Fcf {
    /// Builds a word; rejects the empty word, tower-valued entries and mixed fields.
    pub fn new(quotients: Vec<RingElem>) -> Result<Self> {
        if quotients.is_empty() {
            return Err(Error::EmptyWord);
        }
        common_field(&quotients)?;
        Ok(Fcf { quotients })
    }

    pub fn from_ints(xs: &[i64]) -> Result<Self> {
        Fcf::new(xs.iter().map(|&x| RingElem::int(x)).collect())
    }

    pub fn quotients(&self) -> &[RingElem] {
        &self.quotients
    }

    pub fn len(&self) -> usize {
        self.quotients.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn base_field(&self) -> BaseField {
        common_field(&self.quotients).expect("checked at construction")
    }

    /// No interior zeros: `c_i != 0` for `2 <= i <= n-1`.
    pub fn is_reduced(&self) -> bool {
        let n = self.quotients.len();
        n < 3 || self.quotients[1..n - 1].iter().all(|c| !c.is_zero())
    }

    pub fn concat(&self, o: &Fcf) -> Result<Fcf> {
        let mut q = self.quotients.clone();
        q.extend(o.quotients.iter().cloned());
        Fcf::new(q)
    }

    /// `F* = [0, -cn, ..., -c1, 0]`, a word for the inverse class.
    pub fn star(&self) -> Fcf {
        let mut q = Vec::with_capacity(self.len() + 2);
        q.push(RingElem::zero());
        q.extend(self.quotients.iter().rev().map(|c| c.neg()));
        q.push(RingElem::zero());
        Fcf { quotients: q }
    }

    /// Pairs `(p_k, q_k)`: the first column of `D(c1)...D(ck)` for `k = 1..n`.
    pub fn convergents(&self) -> Vec<(RingElem, RingElem)> {
        let (mut p1, mut q1) = (RingElem::one(), RingElem::zero());
        let (mut p0, mut q0) = (RingElem::zero(), RingElem::one());
        let mut out = Vec::with_capacity(self.len());
        for c in &self.quotients {
            let p = &(c * &p1) + &p0;
            let q = &(c * &q1) + &q0;
            p0 = std::mem::replace(&mut p1, p);
            q0 = std::mem::replace(&mut q1, q);
            out.push((p1.clone(), q1.clone()));
        }
        out
    }

    pub fn to_free_word(&self) -> FreeWord {
        FreeWord::from_fcf(self)
    }
}

impl fmt::Display for Fcf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.quotients.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

pub(crate) fn common_field(xs: &[RingElem]) -> Result<BaseField> {
    let mut field = BaseField::Rational;
    for x in xs {
        if x.is_tower() {
            return Err(Error::TowerMismatch("tower elements cannot be partial quotients".into()));
        }
        field = field.join(&x.base_field())?;
    }
    Ok(field)
}

/// Rewrites every interior `(x, 0, y)` as `(x + y)` until none remain.
///
/// One left-to-right pass with a stack: the stack always holds a reduced word, so only
/// a zero on top can become interior when the next quotient arrives.
pub fn reduce_word(word: &[RingElem]) -> Vec<RingElem> {
    let mut stack: Vec<RingElem> = Vec::with_capacity(word.len());
    for c in word {
        if stack.len() >= 2 && stack.last().is_some_and(|t| t.is_zero()) {
            stack.pop();
            let x = stack.pop().expect("length checked");
            stack.push(&x + c);
        } else {
            stack.push(c.clone());
        }
    }
    stack
}

/// An equivalence class of finite continued fractions, held by its reduced representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FcfClass {
    reduced: Fcf,
}

impl FcfClass {
    pub fn identity() -> Self {
        FcfClass { reduced: Fcf { quotients: vec![RingElem::zero(), RingElem::zero()] } }
    }

    pub fn reduced(&self) -> &Fcf {
        &self.reduced
    }

    pub fn is_identity(&self) -> bool {
        *self == FcfClass::identity()
    }

    /// `reduce(concat(f, g))`.
    pub fn star(&self, o: &FcfClass) -> Result<FcfClass> {
        Ok(reduce(&self.reduced.concat(&o.reduced)?))
    }

    pub fn inverse(&self) -> FcfClass {
        reduce(&self.reduced.star())
    }

    pub fn pow(&self, n: i64) -> Result<FcfClass> {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut acc = FcfClass::identity();
        for _ in 0..n.unsigned_abs() {
            acc = acc.star(&base)?;
        }
        Ok(acc)
    }

    /// Length of the reduced word mod 2.
    pub fn parity(&self) -> u8 {
        (self.reduced.len() % 2) as u8
    }

    /// `(-1)^parity`, which equals the determinant of the matrix image.
    pub fn det_char(&self) -> i8 {
        if self.parity() == 0 {
            1
        } else {
            -1
        }
    }
}

impl fmt::Display for FcfClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.reduced)
    }
}

pub fn reduce(f: &Fcf) -> FcfClass {
    FcfClass { reduced: Fcf { quotients: reduce_word(&f.quotients) } }
}

/// A letter of the free product `Z/2Z * O`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Letter {
    J,
    Elem(RingElem),
}

/// An alternating word in `j` and nonzero ring letters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeWord {
    letters: Vec<Letter>,
}

impl FreeWord {
    pub fn identity() -> Self {
        FreeWord { letters: Vec::new() }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    fn push(&mut self, l: Letter) {
        match (self.letters.last(), l) {
            (Some(Letter::J), Letter::J) => {
                self.letters.pop();
            }
            (_, Letter::Elem(x)) if x.is_zero() => {}
            (Some(Letter::Elem(_)), Letter::Elem(x)) => {
                let Some(Letter::Elem(y)) = self.letters.pop() else { unreachable!() };
                let s = &y + &x;
                if !s.is_zero() {
                    self.letters.push(Letter::Elem(s));
                }
            }
            (_, l) => self.letters.push(l),
        }
    }

    /// Image of `D(c1)...D(cn)` under `D(x) -> x j`.
    pub fn from_fcf(f: &Fcf) -> FreeWord {
        let mut w = FreeWord::identity();
        for c in f.quotients() {
            w.push(Letter::Elem(c.clone()));
            w.push(Letter::J);
        }
        w
    }

    pub fn concat(&self, o: &FreeWord) -> FreeWord {
        let mut w = self.clone();
        for l in &o.letters {
            w.push(l.clone());
        }
        w
    }

    pub fn j_count(&self) -> usize {
        self.letters.iter().filter(|l| matches!(l, Letter::J)).count()
    }

    /// Factors an even word into `U(x) = |[x,0]|` and `L(y) = |[0,y]|` generators,
    /// using `U(x) -> x` and `L(y) -> j y j`.
    pub fn factor_even(&self) -> Option<Vec<Generator>> {
        let mut out = Vec::new();
        let mut i = 0;
        let ls = &self.letters;
        while i < ls.len() {
            match &ls[i] {
                Letter::Elem(x) => {
                    out.push(Generator::U(x.clone()));
                    i += 1;
                }
                Letter::J => match (ls.get(i + 1), ls.get(i + 2)) {
                    (Some(Letter::Elem(y)), Some(Letter::J)) => {
                        out.push(Generator::L(y.clone()));
                        i += 3;
                    }
                    _ => return None,
                },
            }
        }
        Some(out)
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|l| match l {
                Letter::J => "j".to_string(),
                Letter::Elem(x) => format!("({x})"),
            })
            .collect();
        write!(f, "{}", parts.join(""))
    }
}

/// Generators of the even subgroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Generator {
    U(RingElem),
    L(RingElem),
}

impl Generator {
    pub fn class(&self) -> FcfClass {
        let q = match self {
            Generator::U(x) => vec![x.clone(), RingElem::zero()],
            Generator::L(y) => vec![RingElem::zero(), y.clone()],
        };
        reduce(&Fcf { quotients: q })
    }
}
