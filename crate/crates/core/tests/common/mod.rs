//! Generators and independent oracles shared by the integration tests.
#![allow(dead_code)]

pub mod props;

use std::collections::BTreeSet;

use pcf_core::cfcore::Fcf;
use pcf_core::exactnum::{ratio, RingElem};
use pcf_core::matrix2::Mat2;
use pcf_core::pcf::Pcf;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

pub fn int(n: i64) -> RingElem {
    RingElem::int(n)
}

pub fn q2(a: i64, b: i64) -> RingElem {
    RingElem::quad_int(a, b, 2).unwrap()
}

pub fn frac(n: i64, d: i64) -> RingElem {
    RingElem::rational(ratio(n, d))
}

/// Small integers with zeros overrepresented, so rewrites are common.
pub fn zeroish() -> impl Strategy<Value = RingElem> {
    prop_oneof![2 => Just(int(0)), 3 => (-3i64..=3).prop_map(int)]
}

pub fn small_int() -> impl Strategy<Value = RingElem> {
    (-6i64..=6).prop_map(int)
}

pub fn small_rational() -> impl Strategy<Value = RingElem> {
    prop_oneof![
        3 => (-6i64..=6).prop_map(int),
        1 => ((-7i64..=7), (1i64..=4)).prop_map(|(n, d)| frac(n, d)),
    ]
}

pub fn small_q2() -> impl Strategy<Value = RingElem> {
    ((-4i64..=4), (-3i64..=3)).prop_map(|(a, b)| q2(a, b))
}

/// Integers, rationals or elements of Z[sqrt 2], one field per word.
pub fn word_of(len: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Vec<RingElem>> {
    prop_oneof![
        proptest::collection::vec(zeroish(), len.clone()),
        proptest::collection::vec(small_rational(), len.clone()),
        proptest::collection::vec(small_q2(), len),
    ]
}

pub fn fcf(len: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Fcf> {
    word_of(len).prop_map(|w| Fcf::new(w).unwrap())
}

pub fn int_fcf(len: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Fcf> {
    proptest::collection::vec(zeroish(), len).prop_map(|w| Fcf::new(w).unwrap())
}

fn pcf_from(elem: BoxedStrategy<RingElem>) -> BoxedStrategy<Pcf> {
    (proptest::collection::vec(elem.clone(), 0..=3), proptest::collection::vec(elem, 1..=4))
        .prop_map(|(b, a)| Pcf::new(b, a).unwrap())
        .boxed()
}

/// Height-bounded integer PCFs.
pub fn int_pcf() -> BoxedStrategy<Pcf> {
    pcf_from(small_int().boxed())
}

/// PCFs over Z, Q or Z[sqrt 2], with engineered zeros and `a, 0, -1/a` blocks so heavy
/// residues and all four cases occur.
pub fn pcf() -> BoxedStrategy<Pcf> {
    let block = (prop_oneof![Just(2i64), Just(3), Just(-2), Just(-3), Just(1)], any::<bool>())
        .prop_map(|(n, inv)| if inv { vec![frac(1, n), int(0), int(-n)] } else { vec![int(n), int(0), frac(-1, n)] });
    let engineered = (
        proptest::collection::vec(small_int(), 0..=2),
        proptest::collection::vec(prop_oneof![block.boxed(), proptest::collection::vec(zeroish(), 1..=2).boxed()], 1..=3),
    )
        .prop_map(|(b, parts)| Pcf::new(b, parts.concat()).unwrap());
    prop_oneof![
        3 => pcf_from(zeroish().boxed()),
        2 => pcf_from(small_rational().boxed()),
        1 => pcf_from(small_q2().boxed()),
        2 => engineered.boxed(),
    ]
    .boxed()
}

/// Replaces one quotient `c` with `x, 0, c - x`: an inverse rewrite.
pub fn expand(word: &[RingElem], pos: usize, x: &RingElem) -> Vec<RingElem> {
    let i = pos % word.len();
    let mut out = word[..i].to_vec();
    out.push(x.clone());
    out.push(int(0));
    out.push(&word[i] - x);
    out.extend_from_slice(&word[i + 1..]);
    out
}

/// Every irreducible word reachable by rewriting `(x, 0, y) -> (x + y)` at interior
/// positions, over all rewrite orders.
pub fn all_normal_forms(word: &[RingElem]) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    let mut any = false;
    for i in 1..word.len().saturating_sub(1) {
        if word[i].is_zero() {
            any = true;
            let mut w = word[..i - 1].to_vec();
            w.push(&word[i - 1] + &word[i + 1]);
            w.extend_from_slice(&word[i + 2..]);
            out.extend(all_normal_forms(&w));
        }
    }
    if !any {
        out.insert(render(word));
    }
    out
}

/// One maximal rewrite sequence, choosing the redex with `pick`.
pub fn random_normal_form(word: &[RingElem], mut pick: impl FnMut(usize) -> usize) -> Vec<RingElem> {
    let mut w = word.to_vec();
    loop {
        let redexes: Vec<usize> = (1..w.len().saturating_sub(1)).filter(|&i| w[i].is_zero()).collect();
        if redexes.is_empty() {
            return w;
        }
        let i = redexes[pick(redexes.len())];
        let s = &w[i - 1] + &w[i + 1];
        w.splice(i - 1..i + 2, [s]);
    }
}

pub fn render(word: &[RingElem]) -> String {
    word.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
}

/// Left-fold product of `[[c,1],[1,0]]` written out directly.
pub fn fold_matrix(word: &[RingElem]) -> Mat2 {
    word.iter().fold(Mat2::identity(), |m, c| {
        let d = Mat2::new(c.clone(), int(1), int(1), int(0));
        m.checked_mul(&d).unwrap()
    })
}

/// Real iteration of a Möbius map in projective coordinates, returning the last point
/// as a unit vector.
pub fn f64_orbit(m: [[f64; 2]; 2], start: (f64, f64), steps: usize) -> (f64, f64) {
    let (mut p, mut q) = start;
    for _ in 0..steps {
        let np = m[0][0] * p + m[0][1] * q;
        let nq = m[1][0] * p + m[1][1] * q;
        let n = np.hypot(nq);
        p = np / n;
        q = nq / n;
    }
    (p, q)
}

/// Chordal distance between projective points given by vectors.
pub fn chordal(a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 * b.1 - a.1 * b.0).abs() / (a.0.hypot(a.1) * b.0.hypot(b.1))
}

pub fn runner(cases: u32, seed: u8) -> TestRunner {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &[seed; 32]))
}
