//! Rigorous real and complex interval arithmetic over dyadic endpoints.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rational::Rational;

/// The number `mant * 2^exp`.
#[derive(Clone, Debug)]
pub struct Dyadic {
    pub mant: BigInt,
    pub exp: i64,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Round {
    Down,
    Up,
}

fn shr_round(m: &BigInt, s: u64, dir: Round) -> BigInt {
    match dir {
        Round::Down => m >> s,
        Round::Up => -((-m) >> s),
    }
}

impl Dyadic {
    pub fn zero() -> Self {
        Dyadic { mant: BigInt::zero(), exp: 0 }
    }

    pub fn from_int(n: BigInt) -> Self {
        Dyadic { mant: n, exp: 0 }.normalized()
    }

    fn normalized(mut self) -> Self {
        if self.mant.is_zero() {
            self.exp = 0;
            return self;
        }
        let tz = self.mant.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            self.mant >>= tz;
            self.exp += tz as i64;
        }
        self
    }

    fn round(self, prec: u32, dir: Round) -> Self {
        let bits = self.mant.bits();
        if bits <= prec as u64 {
            return self;
        }
        let s = bits - prec as u64;
        Dyadic { mant: shr_round(&self.mant, s, dir), exp: self.exp + s as i64 }.normalized()
    }

    fn from_rational(r: &Rational, prec: u32, dir: Round) -> Self {
        if r.denom().is_one() {
            return Dyadic::from_int(r.numer().clone()).round(prec, dir);
        }
        let shift = prec as i64 + r.denom().bits() as i64 - r.numer().bits() as i64 + 2;
        let (num, den) = if shift >= 0 {
            (r.numer() << shift as u64, r.denom().clone())
        } else {
            (r.numer().clone(), r.denom() << (-shift) as u64)
        };
        let q = match dir {
            Round::Down => num.div_floor(&den),
            Round::Up => -((-num).div_floor(&den)),
        };
        Dyadic { mant: q, exp: -shift }.normalized().round(prec, dir)
    }

    pub fn to_rational(&self) -> Rational {
        if self.exp >= 0 {
            Rational::from_integer(&self.mant << self.exp as u64)
        } else {
            Rational::new(self.mant.clone(), BigInt::one() << (-self.exp) as u64)
        }
    }

    pub fn to_f64(&self) -> f64 {
        let bits = self.mant.bits() as i64;
        let keep = 60i64;
        let (m, e) = if bits > keep {
            (&self.mant >> (bits - keep) as u64, self.exp + bits - keep)
        } else {
            (self.mant.clone(), self.exp)
        };
        let mf = m.to_f64().unwrap_or(0.0);
        mf * 2f64.powi(e.clamp(-2000, 2000) as i32)
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn sign(&self) -> Sign {
        self.mant.sign()
    }

    fn add_exact(&self, o: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(o.exp);
        let a = &self.mant << (self.exp - e) as u64;
        let b = &o.mant << (o.exp - e) as u64;
        Dyadic { mant: a + b, exp: e }.normalized()
    }

    fn neg(&self) -> Dyadic {
        Dyadic { mant: -&self.mant, exp: self.exp }
    }

    fn mul_exact(&self, o: &Dyadic) -> Dyadic {
        Dyadic { mant: &self.mant * &o.mant, exp: self.exp + o.exp }.normalized()
    }

    fn div_round(&self, o: &Dyadic, prec: u32, dir: Round) -> Dyadic {
        let shift = (prec as i64 + o.mant.bits() as i64 - self.mant.bits() as i64 + 2).max(0);
        let num = &self.mant << shift as u64;
        let q = match dir {
            Round::Down => num.div_floor(&o.mant),
            Round::Up => -((-num).div_floor(&o.mant)),
        };
        Dyadic { mant: q, exp: self.exp - o.exp - shift }.normalized().round(prec, dir)
    }

    fn sqrt_round(&self, prec: u32, dir: Round) -> Dyadic {
        if self.mant.sign() != Sign::Plus {
            return Dyadic::zero();
        }
        let mut k = (2 * prec as i64 + 4 - self.mant.bits() as i64).max(0);
        if (self.exp - k).rem_euclid(2) != 0 {
            k += 1;
        }
        let m = &self.mant << k as u64;
        let mut r = m.sqrt();
        if dir == Round::Up && &r * &r != m {
            r += 1;
        }
        Dyadic { mant: r, exp: (self.exp - k) / 2 }.normalized().round(prec, dir)
    }
}

impl PartialEq for Dyadic {
    fn eq(&self, o: &Self) -> bool {
        self.cmp(o) == Ordering::Equal
    }
}
impl Eq for Dyadic {}
impl PartialOrd for Dyadic {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Dyadic {
    fn cmp(&self, o: &Self) -> Ordering {
        self.add_exact(&o.neg()).mant.sign().cmp(&Sign::NoSign)
    }
}

/// A closed real interval `[lo, hi]` whose endpoints are rounded outward to `prec` bits.
#[derive(Clone, Debug)]
pub struct Interval {
    pub lo: Dyadic,
    pub hi: Dyadic,
    pub prec: u32,
}

impl Interval {
    pub fn point(d: Dyadic, prec: u32) -> Self {
        Interval { lo: d.clone().round(prec, Round::Down), hi: d.round(prec, Round::Up), prec }
    }

    pub fn zero(prec: u32) -> Self {
        Interval { lo: Dyadic::zero(), hi: Dyadic::zero(), prec }
    }

    pub fn from_int(n: i64, prec: u32) -> Self {
        Interval::point(Dyadic::from_int(BigInt::from(n)), prec)
    }

    pub fn from_rational(r: &Rational, prec: u32) -> Self {
        Interval {
            lo: Dyadic::from_rational(r, prec, Round::Down),
            hi: Dyadic::from_rational(r, prec, Round::Up),
            prec,
        }
    }

    pub fn hull(a: &Interval, b: &Interval) -> Self {
        Interval {
            lo: a.lo.clone().min(b.lo.clone()),
            hi: a.hi.clone().max(b.hi.clone()),
            prec: a.prec.max(b.prec),
        }
    }

    pub fn is_point_zero(&self) -> bool {
        self.lo.is_zero() && self.hi.is_zero()
    }

    pub fn contains_zero(&self) -> bool {
        self.lo.sign() != Sign::Plus && self.hi.sign() != Sign::Minus
    }

    /// `Some(sign)` when the interval excludes zero, or is exactly zero.
    pub fn sign(&self) -> Option<Ordering> {
        if self.is_point_zero() {
            Some(Ordering::Equal)
        } else if self.lo.sign() == Sign::Plus {
            Some(Ordering::Greater)
        } else if self.hi.sign() == Sign::Minus {
            Some(Ordering::Less)
        } else {
            None
        }
    }

    pub fn contains(&self, r: &Rational) -> bool {
        self.lo.to_rational() <= *r && *r <= self.hi.to_rational()
    }

    pub fn width(&self) -> Rational {
        self.hi.to_rational() - self.lo.to_rational()
    }

    pub fn mid(&self) -> Rational {
        (self.lo.to_rational() + self.hi.to_rational()) / Rational::from_integer(BigInt::from(2))
    }

    /// Upper bound on `|x|` over the interval.
    pub fn mag(&self) -> Rational {
        let a = self.lo.to_rational().abs();
        let b = self.hi.to_rational().abs();
        a.max(b)
    }

    pub fn to_f64(&self) -> f64 {
        (self.lo.to_f64() + self.hi.to_f64()) / 2.0
    }

    pub fn add(&self, o: &Interval) -> Interval {
        let prec = self.prec.max(o.prec);
        Interval {
            lo: self.lo.add_exact(&o.lo).round(prec, Round::Down),
            hi: self.hi.add_exact(&o.hi).round(prec, Round::Up),
            prec,
        }
    }

    pub fn neg(&self) -> Interval {
        Interval { lo: self.hi.neg(), hi: self.lo.neg(), prec: self.prec }
    }

    pub fn sub(&self, o: &Interval) -> Interval {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Interval) -> Interval {
        let prec = self.prec.max(o.prec);
        if self.is_point_zero() || o.is_point_zero() {
            return Interval::zero(prec);
        }
        let ps = [
            self.lo.mul_exact(&o.lo),
            self.lo.mul_exact(&o.hi),
            self.hi.mul_exact(&o.lo),
            self.hi.mul_exact(&o.hi),
        ];
        let lo = ps.iter().min().unwrap().clone();
        let hi = ps.iter().max().unwrap().clone();
        Interval { lo: lo.round(prec, Round::Down), hi: hi.round(prec, Round::Up), prec }
    }

    pub fn sqr(&self) -> Interval {
        let m = self.mul(self);
        if self.contains_zero() {
            Interval { lo: Dyadic::zero(), hi: m.hi, prec: m.prec }
        } else {
            m
        }
    }

    /// `None` when the divisor contains zero.
    pub fn div(&self, o: &Interval) -> Option<Interval> {
        if o.contains_zero() {
            return None;
        }
        let prec = self.prec.max(o.prec);
        let mut lo: Option<Dyadic> = None;
        let mut hi: Option<Dyadic> = None;
        for a in [&self.lo, &self.hi] {
            for b in [&o.lo, &o.hi] {
                let d = a.div_round(b, prec, Round::Down);
                let u = a.div_round(b, prec, Round::Up);
                lo = Some(match lo {
                    Some(x) if x <= d => x,
                    _ => d,
                });
                hi = Some(match hi {
                    Some(x) if x >= u => x,
                    _ => u,
                });
            }
        }
        Some(Interval { lo: lo.unwrap(), hi: hi.unwrap(), prec })
    }

    /// Square root of the nonnegative part of the interval.
    pub fn sqrt(&self) -> Interval {
        Interval {
            lo: self.lo.sqrt_round(self.prec, Round::Down),
            hi: self.hi.sqrt_round(self.prec, Round::Up),
            prec: self.prec,
        }
    }

    pub fn to_decimal(&self, digits: usize) -> String {
        format_decimal(&self.mid(), digits)
    }
}

/// A rectangular complex enclosure.
#[derive(Clone, Debug)]
pub struct ComplexInterval {
    pub re: Interval,
    pub im: Interval,
}

impl ComplexInterval {
    pub fn real(re: Interval) -> Self {
        let prec = re.prec;
        ComplexInterval { re, im: Interval::zero(prec) }
    }

    pub fn from_rational(r: &Rational, prec: u32) -> Self {
        ComplexInterval::real(Interval::from_rational(r, prec))
    }

    pub fn prec(&self) -> u32 {
        self.re.prec.max(self.im.prec)
    }

    pub fn is_real_exact(&self) -> bool {
        self.im.is_point_zero()
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        ComplexInterval { re: self.re.add(&o.re), im: self.im.add(&o.im) }
    }

    pub fn sub(&self, o: &Self) -> Self {
        ComplexInterval { re: self.re.sub(&o.re), im: self.im.sub(&o.im) }
    }

    pub fn neg(&self) -> Self {
        ComplexInterval { re: self.re.neg(), im: self.im.neg() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_real_exact() && o.is_real_exact() {
            return ComplexInterval::real(self.re.mul(&o.re));
        }
        ComplexInterval {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }

    pub fn abs_sq(&self) -> Interval {
        self.re.sqr().add(&self.im.sqr())
    }

    pub fn div(&self, o: &Self) -> Option<Self> {
        if o.is_real_exact() {
            return Some(ComplexInterval { re: self.re.div(&o.re)?, im: self.im.div(&o.re)? });
        }
        let n = o.abs_sq();
        let conj = ComplexInterval { re: o.re.clone(), im: o.im.neg() };
        let p = self.mul(&conj);
        Some(ComplexInterval { re: p.re.div(&n)?, im: p.im.div(&n)? })
    }

    /// Principal square root: nonnegative real part, and nonnegative imaginary part on the
    /// negative real axis.
    pub fn sqrt(&self) -> Self {
        if self.is_real_exact() {
            return match self.re.sign() {
                Some(Ordering::Less) => ComplexInterval {
                    re: Interval::zero(self.re.prec),
                    im: self.re.neg().sqrt(),
                },
                Some(_) => ComplexInterval::real(self.re.sqrt()),
                None => ComplexInterval { re: self.re.sqrt(), im: self.re.neg().sqrt() },
            };
        }
        let two = Interval::from_int(2, self.prec());
        let r = self.abs_sq().sqrt();
        let u = r.add(&self.re).div(&two).unwrap().sqrt();
        let v = r.sub(&self.re).div(&two).unwrap().sqrt();
        let v = match self.im.sign() {
            Some(Ordering::Less) => v.neg(),
            Some(_) => v,
            None => Interval::hull(&v, &v.neg()),
        };
        ComplexInterval { re: u, im: v }
    }

    /// Upper bound on the distance between any two points of the enclosure.
    pub fn diameter_bound(&self) -> Rational {
        self.re.width() + self.im.width()
    }

    /// Whether every point of the enclosure lies within `eps` (in each coordinate) of `o`'s.
    pub fn within(&self, o: &ComplexInterval, eps: &Rational) -> bool {
        let dre = self.re.sub(&o.re).mag();
        let dim = self.im.sub(&o.im).mag();
        &dre <= eps && &dim <= eps
    }

    pub fn to_decimal(&self, digits: usize) -> String {
        let re = self.re.to_decimal(digits);
        if self.im.is_point_zero() {
            return re;
        }
        let im = self.im.mid();
        let sign = if im.is_negative() { "-" } else { "+" };
        format!("{re}{sign}{}i", format_decimal(&im.abs(), digits))
    }
}

impl fmt::Display for ComplexInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal(20))
    }
}

/// Decimal rendering of a rational to `digits` significant digits, rounded half away from zero.
pub fn format_decimal(r: &Rational, digits: usize) -> String {
    if r.is_zero() {
        return "0".to_string();
    }
    let digits = digits.max(1);
    let neg = r.is_negative();
    let a = r.abs();
    let ten = BigInt::from(10);
    // Find e with 10^(digits-1) <= a*10^e < 10^digits.
    let est = (a.numer().bits() as f64 - a.denom().bits() as f64) * std::f64::consts::LOG10_2;
    let mut e = digits as i64 - 1 - est.floor() as i64;
    let lower = num_traits::pow(ten.clone(), digits - 1);
    let upper = &lower * &ten;
    let scaled = |e: i64| -> BigInt {
        let v = if e >= 0 {
            &a * Rational::from_integer(num_traits::pow(ten.clone(), e as usize))
        } else {
            &a / Rational::from_integer(num_traits::pow(ten.clone(), (-e) as usize))
        };
        let twice = v * Rational::from_integer(BigInt::from(2));
        (super::rational::floor(&twice) + 1) / 2
    };
    let mut n = scaled(e);
    for _ in 0..8 {
        if n >= upper {
            e -= 1;
        } else if n < lower {
            e += 1;
        } else {
            break;
        }
        n = scaled(e);
    }
    if n >= upper {
        // Rounding carried into a new digit.
        n /= &ten;
        e -= 1;
    }
    let s = n.to_string();
    // value = n * 10^-e, with s having `digits` characters.
    let point = s.len() as i64 - e;
    let body = if (-6..=40).contains(&point) {
        if point <= 0 {
            format!("0.{}{}", "0".repeat((-point) as usize), s)
        } else if point as usize >= s.len() {
            format!("{}{}", s, "0".repeat(point as usize - s.len()))
        } else {
            format!("{}.{}", &s[..point as usize], &s[point as usize..])
        }
    } else {
        let exp = point - 1;
        if s.len() > 1 {
            format!("{}.{}e{}", &s[..1], &s[1..], exp)
        } else {
            format!("{}e{}", s, exp)
        }
    };
    let body = trim_trailing_zeros(body);
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

fn trim_trailing_zeros(s: String) -> String {
    let (mant, exp) = match s.find('e') {
        Some(i) => (s[..i].to_string(), s[i..].to_string()),
        None => (s.clone(), String::new()),
    };
    if !mant.contains('.') {
        return s;
    }
    let t = mant.trim_end_matches('0').trim_end_matches('.');
    format!("{t}{exp}")
}
