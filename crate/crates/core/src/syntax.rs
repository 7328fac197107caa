//! Text syntax for elements, continued fractions, matrices and polynomials.
//!
//! Elements: `3+5*sqrt(2)`, `1/2-3/4*sqrt(-1)`, `(1+sqrt(-7))/2`, `i`, `1.25`.
//! FCF: `[c1, ..., cn]`. PCF: `[b1, ..., bN; a1, ..., ak]`, with `[; a1, ...]` for `N = 0`.
//! Matrix: `[[m11, m12], [m21, m22]]`. Polynomial: `poly(A, B, C)` for `A X^2 + B X + C`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::cfcore::Fcf;
use crate::error::{Error, ParseError, Result};
use crate::exactnum::{sqrt_in, BaseField, Rational, RingElem};
use crate::matrix2::{Mat2, QuadPoly};
use crate::pcf::Pcf;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Literal {
    Elem(RingElem),
    Fcf(Fcf),
    Pcf(Pcf),
    Matrix(Mat2),
    Poly(QuadPoly),
}

/// A parsed value with the base radicand it was written over, if any.
#[derive(Clone, Debug)]
struct Tagged {
    value: RingElem,
    base: Option<BigInt>,
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

fn perr(offset: usize, msg: impl Into<String>) -> Error {
    Error::Parse(ParseError::new(offset, msg.into()))
}

fn join_tags(a: &Option<BigInt>, b: &Option<BigInt>, at: usize) -> Result<Option<BigInt>> {
    match (a, b) {
        (Some(x), Some(y)) if x != y => Err(perr(at, format!("mixed radicands sqrt({x}) and sqrt({y})"))),
        (Some(x), _) | (_, Some(x)) => Ok(Some(x.clone())),
        _ => Ok(None),
    }
}

fn tag_of(x: &RingElem) -> Option<BigInt> {
    match x.base_field() {
        BaseField::Quadratic(d) => Some(d),
        BaseField::Rational => None,
    }
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let t = self.rest();
        self.pos += t.len() - t.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("expected '{c}'")))
        }
    }

    fn unexpected(&mut self, what: &str) -> Error {
        let at = self.pos;
        match self.peek() {
            Some(c) => perr(self.pos, format!("{what}, found '{c}'")),
            None => perr(at.max(self.src.len()), format!("{what}, found end of input")),
        }
    }

    fn finish(&mut self) -> Result<()> {
        if self.peek().is_some() {
            return Err(self.unexpected("expected end of input"));
        }
        Ok(())
    }

    fn arith(&self, at: usize, r: Result<RingElem>) -> Result<RingElem> {
        r.map_err(|e| match e {
            Error::TowerMismatch(m) => perr(at, format!("incompatible radicands: {m}")),
            Error::DivisionByZero => perr(at, "division by zero"),
            other => perr(at, other.to_string()),
        })
    }

    fn expr(&mut self) -> Result<Tagged> {
        let mut acc = self.term()?;
        loop {
            let at = self.pos;
            let op = match self.peek() {
                Some(c @ ('+' | '-')) => c,
                _ => return Ok(acc),
            };
            self.pos += 1;
            let rhs = self.term()?;
            let base = join_tags(&acc.base, &rhs.base, at)?;
            let v = if op == '+' { acc.value.checked_add(&rhs.value) } else { acc.value.checked_sub(&rhs.value) };
            acc = Tagged { value: self.arith(at, v)?, base };
        }
    }

    fn term(&mut self) -> Result<Tagged> {
        let mut acc = self.unary()?;
        loop {
            let at = self.pos;
            let op = match self.peek() {
                Some(c @ ('*' | '/')) => c,
                _ => return Ok(acc),
            };
            self.pos += 1;
            let rhs = self.unary()?;
            let base = join_tags(&acc.base, &rhs.base, at)?;
            let v = if op == '*' { acc.value.checked_mul(&rhs.value) } else { acc.value.checked_div(&rhs.value) };
            acc = Tagged { value: self.arith(at, v)?, base };
        }
    }

    fn unary(&mut self) -> Result<Tagged> {
        if self.eat('-') {
            let t = self.unary()?;
            return Ok(Tagged { value: t.value.neg(), base: t.base });
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Tagged> {
        let base = self.primary()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let at = self.pos;
        let neg = self.eat('-');
        let n = self.integer()?;
        let n: i64 = n.try_into().map_err(|_| perr(at, "exponent too large"))?;
        let v = base.value.pow(if neg { -n } else { n });
        Ok(Tagged { value: self.arith(at, v)?, base: base.base })
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let digits: String = self.rest().chars().take_while(|c| c.is_ascii_digit()).collect();
        if digits.is_empty() {
            return Err(self.unexpected("expected a number"));
        }
        self.pos += digits.len();
        Ok(digits.parse().expect("ascii digits"))
    }

    fn primary(&mut self) -> Result<Tagged> {
        let start = {
            self.skip_ws();
            self.pos
        };
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let t = self.expr()?;
                self.expect(')')?;
                Ok(t)
            }
            Some(c) if c.is_ascii_digit() => {
                let int = self.integer()?;
                let mut value = Rational::from_integer(int);
                if self.rest().starts_with('.') {
                    self.pos += 1;
                    let frac: String = self.rest().chars().take_while(|c| c.is_ascii_digit()).collect();
                    if frac.is_empty() {
                        return Err(perr(self.pos, "expected digits after '.'"));
                    }
                    self.pos += frac.len();
                    let den = num_traits::pow(BigInt::from(10), frac.len());
                    value += Rational::new(frac.parse().expect("ascii digits"), den);
                }
                Ok(Tagged { value: RingElem::rational(value), base: None })
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let word: String = self.rest().chars().take_while(|c| c.is_ascii_alphanumeric()).collect();
                self.pos += word.len();
                match word.as_str() {
                    "i" => {
                        let v = RingElem::quad(Rational::zero(), Rational::one(), -1).expect("valid radicand");
                        Ok(Tagged { value: v, base: Some(BigInt::from(-1)) })
                    }
                    "sqrt" => {
                        self.expect('(')?;
                        let arg = self.expr()?;
                        self.expect(')')?;
                        self.sqrt(arg, start)
                    }
                    _ => Err(perr(start, format!("unknown identifier '{word}'"))),
                }
            }
            _ => Err(self.unexpected("expected a number, '(' or sqrt")),
        }
    }

    fn sqrt(&self, arg: Tagged, at: usize) -> Result<Tagged> {
        let field = match &arg.base {
            Some(d) => BaseField::Quadratic(d.clone()),
            None => BaseField::Rational,
        };
        let v = self.arith(at, sqrt_in(&arg.value, &field))?;
        let base = match arg.base {
            Some(d) => Some(d),
            None => tag_of(&v),
        };
        Ok(Tagged { value: v, base })
    }

    fn element(&mut self) -> Result<Tagged> {
        self.expr()
    }

    /// Comma-separated elements up to (not including) one of `stops`.
    fn list(&mut self, stops: &[char], tag: &mut Option<BigInt>) -> Result<Vec<RingElem>> {
        let mut out = Vec::new();
        if self.peek().is_some_and(|c| stops.contains(&c)) {
            return Ok(out);
        }
        loop {
            self.skip_ws();
            let at = self.pos;
            let t = self.element()?;
            if t.value.is_tower() {
                return Err(perr(at, "partial quotients must lie in a quadratic field"));
            }
            *tag = join_tags(tag, &t.base, at)?;
            out.push(t.value);
            if !self.eat(',') {
                return Ok(out);
            }
        }
    }

    fn cf(&mut self) -> Result<Literal> {
        self.skip_ws();
        let open = self.pos;
        self.expect('[')?;
        let mut tag = None;
        let first = self.list(&[';', ']'], &mut tag)?;
        if self.eat(';') {
            let rep_at = self.pos;
            let rep = self.list(&[']'], &mut tag)?;
            self.expect(']')?;
            if rep.is_empty() {
                return Err(perr(rep_at, "empty repeating part"));
            }
            return Ok(Literal::Pcf(Pcf::new(first, rep).map_err(|e| perr(open, e.to_string()))?));
        }
        self.expect(']')?;
        if first.is_empty() {
            return Err(perr(open, "empty continued fraction"));
        }
        Ok(Literal::Fcf(Fcf::new(first).map_err(|e| perr(open, e.to_string()))?))
    }

    fn matrix(&mut self) -> Result<Mat2> {
        let mut tag = None;
        self.expect('[')?;
        let mut rows = Vec::new();
        for r in 0..2 {
            if r > 0 {
                self.expect(',')?;
            }
            let at = self.pos;
            self.expect('[')?;
            let row = self.list(&[']'], &mut tag)?;
            self.expect(']')?;
            if row.len() != 2 {
                return Err(perr(at, "matrix rows need exactly two entries"));
            }
            rows.push(row);
        }
        self.expect(']')?;
        let [a, b] = <[RingElem; 2]>::try_from(rows.remove(0)).expect("length checked");
        let [c, d] = <[RingElem; 2]>::try_from(rows.remove(0)).expect("length checked");
        Ok(Mat2::new(a, b, c, d))
    }

    fn poly(&mut self) -> Result<QuadPoly> {
        let at = self.pos;
        let word: String = self.rest().chars().take_while(|c| c.is_ascii_alphabetic()).collect();
        if word != "poly" {
            return Err(perr(at, "expected poly(A, B, C)"));
        }
        self.pos += 4;
        self.expect('(')?;
        let mut tag = None;
        let cs = self.list(&[')'], &mut tag)?;
        self.expect(')')?;
        if cs.len() != 3 {
            return Err(perr(at, "poly needs exactly three coefficients"));
        }
        let mut it = cs.into_iter();
        let (a, b, c) = (it.next().unwrap(), it.next().unwrap(), it.next().unwrap());
        Ok(QuadPoly::new(a, b, c))
    }
}

pub fn parse_element(s: &str) -> Result<RingElem> {
    let mut p = Parser::new(s);
    let t = p.element()?;
    p.finish()?;
    Ok(t.value)
}

/// An FCF or PCF literal.
pub fn parse_cf(s: &str) -> Result<Literal> {
    let mut p = Parser::new(s);
    let lit = p.cf()?;
    p.finish()?;
    Ok(lit)
}

pub fn parse_fcf(s: &str) -> Result<Fcf> {
    match parse_cf(s)? {
        Literal::Fcf(f) => Ok(f),
        _ => Err(perr(0, "expected a finite continued fraction [c1, ..., cn]")),
    }
}

pub fn parse_pcf(s: &str) -> Result<Pcf> {
    match parse_cf(s)? {
        Literal::Pcf(p) => Ok(p),
        _ => Err(perr(0, "expected a periodic continued fraction [b...; a...]")),
    }
}

pub fn parse_matrix(s: &str) -> Result<Mat2> {
    let mut p = Parser::new(s);
    let m = p.matrix()?;
    p.finish()?;
    Ok(m)
}

pub fn parse_poly(s: &str) -> Result<QuadPoly> {
    let mut p = Parser::new(s);
    p.skip_ws();
    let q = p.poly()?;
    p.finish()?;
    Ok(q)
}

/// Any literal, chosen by its leading characters.
pub fn parse_literal(s: &str) -> Result<Literal> {
    let t = s.trim_start();
    if t.starts_with("poly") {
        return parse_poly(s).map(Literal::Poly);
    }
    if let Some(rest) = t.strip_prefix('[') {
        if rest.trim_start().starts_with('[') {
            return parse_matrix(s).map(Literal::Matrix);
        }
        return parse_cf(s);
    }
    parse_element(s).map(Literal::Elem)
}

impl std::fmt::Display for Literal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Literal::Elem(x) => write!(f, "{x}"),
            Literal::Fcf(x) => write!(f, "{x}"),
            Literal::Pcf(x) => write!(f, "{x}"),
            Literal::Matrix(x) => write!(f, "{x}"),
            Literal::Poly(q) => write!(f, "poly({},{},{})", q.a, q.b, q.c),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q2(a: i64, b: i64) -> RingElem {
        RingElem::quad_int(a, b, 2).unwrap()
    }

    #[test]
    fn elements() {
        assert_eq!(parse_element("3+5*sqrt(2)").unwrap(), q2(3, 5));
        assert_eq!(parse_element(" -sqrt(8) ").unwrap(), q2(0, -2));
        assert_eq!(parse_element("(1+sqrt(-7))/2").unwrap().to_string(), "1/2+1/2*sqrt(-7)");
        assert_eq!(parse_element("1+i").unwrap(), RingElem::quad_int(1, 1, -1).unwrap());
        assert_eq!(parse_element("1.25").unwrap(), RingElem::frac(5, 4));
        assert_eq!(parse_element("(1+sqrt(2))^3").unwrap(), q2(7, 5));
        assert_eq!(parse_element("sqrt(4)").unwrap(), RingElem::int(2));
        let beta = parse_element("sqrt(2+sqrt(2))").unwrap();
        assert!(beta.is_tower());
        assert_eq!(beta.square(), q2(2, 1));
    }

    #[test]
    fn errors_carry_offsets() {
        let Err(Error::Parse(e)) = parse_element("sqrt(2)+sqrt(3)") else { panic!() };
        assert_eq!(e.offset, 7);
        let Err(Error::Parse(e)) = parse_element("1+*2") else { panic!() };
        assert_eq!(e.offset, 2);
        let Err(Error::Parse(e)) = parse_cf("[1; ]") else { panic!() };
        assert!(e.message.contains("empty repeating"));
        let Err(Error::Parse(e)) = parse_cf("[1, 2") else { panic!() };
        assert_eq!(e.offset, 5);
        let Err(Error::Parse(e)) = parse_cf("[sqrt(2), sqrt(3)]") else { panic!() };
        assert_eq!(e.offset, 10);
        assert!(parse_element("1/0").is_err());
        assert!(parse_element("foo").is_err());
    }

    #[test]
    fn continued_fractions() {
        assert_eq!(parse_cf("[1; 2]").unwrap(), Literal::Pcf(Pcf::from_ints(&[1], &[2]).unwrap()));
        assert_eq!(parse_cf("[; 0,0]").unwrap(), Literal::Pcf(Pcf::from_ints(&[], &[0, 0]).unwrap()));
        assert_eq!(parse_cf("[0,-2,0,2]").unwrap(), Literal::Fcf(Fcf::from_ints(&[0, -2, 0, 2]).unwrap()));
        let p5 = parse_pcf("[442+312*sqrt(2); -298532+211094*sqrt(2), 884+624*sqrt(2)]").unwrap();
        assert_eq!(p5.pcf_type(), (1, 2));
        assert_eq!(p5.repeating()[1], q2(884, 624));
    }

    #[test]
    fn matrices_and_polys() {
        assert_eq!(parse_matrix("[[1,2],[1,1]]").unwrap(), Mat2::from_ints(1, 2, 1, 1));
        assert_eq!(parse_poly("poly(1, 0, -2)").unwrap(), QuadPoly::from_ints(1, 0, -2));
        assert!(matches!(parse_literal("[[1,2],[3,4]]").unwrap(), Literal::Matrix(_)));
        assert!(parse_matrix("[[1,2,3],[1,1]]").is_err());
    }

    #[test]
    fn round_trips() {
        let samples = [
            "[1; 2]",
            "[; 1/2,0,-2]",
            "[3,0,-3,4; 0,1,0,-5]",
            "[442+312*sqrt(2); -298532+211094*sqrt(2),884+624*sqrt(2)]",
            "[1/2+1/2*sqrt(-7),-sqrt(-7)]",
            "[[1,2],[1,1]]",
        ];
        for s in samples {
            let v = parse_literal(s).unwrap();
            assert_eq!(parse_literal(&v.to_string()).unwrap(), v, "{s}");
        }
        for s in ["sqrt(2+sqrt(2))", "sqrt(5+0*sqrt(2))", "3+(1+sqrt(-1))*sqrt(2+sqrt(-1))"] {
            let v = parse_element(s).unwrap();
            assert_eq!(parse_element(&v.to_string()).unwrap(), v, "{s}");
        }
    }
}
