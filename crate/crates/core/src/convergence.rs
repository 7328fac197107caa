//! Decimation limits of periodic continued fractions and the exact convergence trichotomy.

use std::cmp::Ordering;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactnum::{ComplexInterval, Rational, RingElem};
use crate::matrix2::{dynamics_in, limit_under, mat_of_word, mobius, power_limit_in, Dynamics, Mat2, PowerLimit, ProjPoint};
use crate::pcf::Pcf;

/// Data for one residue class `j` of convergent indices `N + j + nk`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueData {
    /// 1-based, `1..=k`.
    pub j: usize,
    pub r: RingElem,
    pub s: RingElem,
    pub t: RingElem,
    pub u: RingElem,
    /// `t = 0` and `|u| > 1`.
    pub heavy: bool,
    /// `None` until limits are computed.
    pub limit: Option<PowerLimit>,
}

impl ResidueData {
    pub fn matrix(&self) -> Mat2 {
        Mat2::new(self.r.clone(), self.s.clone(), self.t.clone(), self.u.clone())
    }

    pub fn limit_point(&self) -> Option<&ProjPoint> {
        self.limit.as_ref().and_then(|l| l.point())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CaseTag {
    DoubleRoot,
    ZeroQuad,
    GapConvergent,
    GapStrictlyQuasiconvergent,
    EqualMagnitudeDivergent,
}

impl CaseTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            CaseTag::DoubleRoot => "double_root",
            CaseTag::ZeroQuad => "zero_quad",
            CaseTag::GapConvergent => "gap_convergent",
            CaseTag::GapStrictlyQuasiconvergent => "gap_strictly_quasiconvergent",
            CaseTag::EqualMagnitudeDivergent => "equal_magnitude_divergent",
        }
    }

    pub fn behavior(&self) -> Behavior {
        match self {
            CaseTag::DoubleRoot | CaseTag::GapConvergent => Behavior::Convergent,
            CaseTag::GapStrictlyQuasiconvergent => Behavior::StrictlyQuasiconvergent,
            CaseTag::ZeroQuad | CaseTag::EqualMagnitudeDivergent => Behavior::StrictlyDivergent,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Behavior {
    Convergent,
    StrictlyQuasiconvergent,
    StrictlyDivergent,
}

impl Behavior {
    pub fn as_str(&self) -> &'static str {
        match self {
            Behavior::Convergent => "convergent",
            Behavior::StrictlyQuasiconvergent => "strictly_quasiconvergent",
            Behavior::StrictlyDivergent => "strictly_divergent",
        }
    }

    pub fn is_quasiconvergent(&self) -> bool {
        !matches!(self, Behavior::StrictlyDivergent)
    }
}

/// Counts of agreeing residue limits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Majority {
    pub total: usize,
    pub agree_count: usize,
    /// Modal limit; the canonically smallest one on ties. `None` if no limit exists.
    pub witness: Option<ProjPoint>,
    pub all_exist: bool,
}

impl Majority {
    /// A strict majority, but not all, of the limits agree.
    pub fn is_strict_partial(&self) -> bool {
        self.all_exist && 2 * self.agree_count > self.total && self.agree_count < self.total
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvergenceReport {
    pub case_tag: CaseTag,
    pub behavior: Behavior,
    pub limit: Option<ProjPoint>,
    pub beta_plus: Option<ProjPoint>,
    pub beta_minus: Option<ProjPoint>,
    pub residues: Vec<ResidueData>,
    pub majority: Majority,
}

/// `R_j = M([a_{j+1}, ..., a_k, a_1, ..., a_j])` for `j = 1..k`, with heavy flags.
pub fn residue_matrices(p: &Pcf) -> Result<Vec<ResidueData>> {
    let a = p.repeating();
    // R_j = D(a_j)^-1 R_{j-1} D(a_j), starting from R_0 = M(a_1..a_k).
    let mut m = mat_of_word(a);
    a.iter()
        .enumerate()
        .map(|(i, c)| {
            let left = Mat2 {
                m11: m.m21.clone(),
                m12: m.m22.clone(),
                m21: &m.m11 - &(c * &m.m21),
                m22: &m.m12 - &(c * &m.m22),
            };
            m = left.checked_mul(&Mat2::d(c))?;
            let heavy = m.m21.is_zero() && m.m22.abs_cmp_one()? == Ordering::Greater;
            Ok(ResidueData {
                j: i + 1,
                r: m.m11.clone(),
                s: m.m12.clone(),
                t: m.m21.clone(),
                u: m.m22.clone(),
                heavy,
                limit: None,
            })
        })
        .collect()
}

/// Residue data with `P̂_j = lim_n C_{N+j+nk}` filled in.
///
/// Since `M_{N+j} R_j = E M_{N+j}`, the limit is `lim_n E^n C_{N+j}`, so every limit is
/// expressed over the single extension generated by the roots of `Quad(P)`.
pub fn decimation_limits(p: &Pcf) -> Result<Vec<ResidueData>> {
    let dynamics = dynamics_in(&p.e_matrix(), &p.base_field())?;
    limits_with(p, &dynamics)
}

fn limits_with(p: &Pcf, dynamics: &Dynamics) -> Result<Vec<ResidueData>> {
    let mut out = residue_matrices(p)?;
    let mut prefix = p.prefix_matrix(p.initial().len());
    for (rd, c) in out.iter_mut().zip(p.repeating()) {
        prefix = prefix.checked_mul(&Mat2::d(c))?;
        let conv = ProjPoint::from_pair(&prefix.m11, &prefix.m21)?;
        rd.limit = Some(limit_under(dynamics, &conv));
    }
    Ok(out)
}

/// The same limits computed literally as `M_{N+j} * lim_n R_j^n infinity`.
pub fn decimation_limits_via_residues(p: &Pcf) -> Result<Vec<PowerLimit>> {
    let base = p.base_field();
    let n = p.initial().len();
    residue_matrices(p)?
        .iter()
        .map(|rd| {
            Ok(match power_limit_in(&rd.matrix(), &ProjPoint::Infinity, &base)? {
                PowerLimit::Limit(x) => PowerLimit::Limit(mobius(&p.prefix_matrix(n + rd.j), &x)?),
                PowerLimit::Divergent => PowerLimit::Divergent,
            })
        })
        .collect()
}

fn majority_of(residues: &[ResidueData]) -> Majority {
    let total = residues.len();
    let limits: Vec<&ProjPoint> = residues.iter().filter_map(|r| r.limit_point()).collect();
    let mut best: Option<(&ProjPoint, usize)> = None;
    for &x in &limits {
        let count = limits.iter().filter(|&&y| y == x).count();
        best = match best {
            Some((w, c)) if c > count || (c == count && w.canonical_cmp(x) != Ordering::Greater) => Some((w, c)),
            _ => Some((x, count)),
        };
    }
    Majority {
        total,
        agree_count: best.map_or(0, |b| b.1),
        witness: best.map(|b| b.0.clone()),
        all_exist: limits.len() == total,
    }
}

/// Decides which case of the convergence trichotomy holds, exactly.
pub fn classify(p: &Pcf) -> Result<ConvergenceReport> {
    let dynamics = dynamics_in(&p.e_matrix(), &p.base_field())?;
    let residues = limits_with(p, &dynamics)?;
    let majority = majority_of(&residues);
    let (case_tag, limit, beta_plus, beta_minus) = match dynamics {
        Dynamics::Scalar => (CaseTag::ZeroQuad, None, None, None),
        Dynamics::DoubleRoot(r) => (CaseTag::DoubleRoot, Some(r.clone()), Some(r.clone()), Some(r)),
        Dynamics::Gap { plus, minus, .. } => {
            if residues.iter().any(|r| r.heavy) {
                (CaseTag::GapStrictlyQuasiconvergent, None, Some(plus), Some(minus))
            } else {
                (CaseTag::GapConvergent, Some(plus.clone()), Some(plus), Some(minus))
            }
        }
        Dynamics::EqualMagnitude { roots, .. } => {
            let [r0, r1] = roots;
            (CaseTag::EqualMagnitudeDivergent, None, Some(r0), Some(r1))
        }
    };
    Ok(ConvergenceReport {
        case_tag,
        behavior: case_tag.behavior(),
        limit,
        beta_plus,
        beta_minus,
        residues,
        majority,
    })
}

/// `(k, agree_count, witness)`; requires every residue limit to exist.
pub fn majority_analysis(report: &ConvergenceReport) -> Result<(usize, usize, ProjPoint)> {
    let m = &report.majority;
    if !m.all_exist {
        return Err(Error::MissingLimit);
    }
    let w = m.witness.clone().ok_or(Error::MissingLimit)?;
    if report.behavior == Behavior::StrictlyQuasiconvergent {
        assert!(m.is_strict_partial(), "strictly quasiconvergent without a strict partial majority");
    }
    Ok((m.total, m.agree_count, w))
}

/// Structural facts every report must satisfy. Returns the first violation found.
pub fn check_report(p: &Pcf, report: &ConvergenceReport) -> std::result::Result<(), String> {
    let k = report.residues.len();
    let a = p.repeating();
    for i in 0..k {
        let next = &report.residues[(i + 1) % k];
        if k > 1 && report.residues[i].heavy && next.heavy {
            return Err(format!("R_{} and R_{} are both heavy", i + 1, next.j));
        }
        let after = &report.residues[(i + 2) % k];
        // R_j and R_{j+2} heavy force a_{j+2} = 0.
        if k > 2 && report.residues[i].heavy && after.heavy && !a[(i + 2) % k].is_zero() {
            return Err(format!("R_{} and R_{} heavy with nonzero quotient between", i + 1, after.j));
        }
    }
    let any_heavy = report.residues.iter().any(|r| r.heavy);
    if report.case_tag == CaseTag::GapStrictlyQuasiconvergent && !any_heavy {
        return Err("quasiconvergent case without a heavy residue".into());
    }
    let strict = report.majority.is_strict_partial();
    if (report.behavior == Behavior::StrictlyQuasiconvergent) != strict {
        return Err("strict quasiconvergence disagrees with the majority criterion".into());
    }
    if report.case_tag == CaseTag::EqualMagnitudeDivergent && report.majority.all_exist {
        return Err("equal-magnitude case with every limit existing".into());
    }
    if report.behavior == Behavior::Convergent {
        let lim = report.limit.as_ref().ok_or("convergent without a limit")?;
        if report.residues.iter().any(|r| r.limit_point() != Some(lim)) {
            return Err("convergent report with a disagreeing residue limit".into());
        }
    }
    Ok(())
}

/// Numerical estimate of one residue limit.
#[derive(Clone, Debug)]
pub struct ResidueEstimate {
    pub j: usize,
    /// Enclosure of the last sampled convergent, `None` if the denominator's enclosure
    /// contains zero (the convergent is infinite or numerically unresolved).
    pub value: Option<ComplexInterval>,
    /// Upper bound on the distance between the last two samples.
    pub step: Option<f64>,
}

impl ResidueEstimate {
    pub fn settled(&self, tol: f64) -> bool {
        self.step.is_some_and(|s| s <= tol)
    }
}

/// Interval enclosure of a 2x2 matrix, row-major.
#[derive(Clone)]
struct IMat([ComplexInterval; 4]);

impl IMat {
    fn d(c: &ComplexInterval, one: &ComplexInterval, zero: &ComplexInterval) -> IMat {
        IMat([c.clone(), one.clone(), one.clone(), zero.clone()])
    }

    fn mul(&self, o: &IMat) -> IMat {
        let (a, b) = (&self.0, &o.0);
        IMat([
            a[0].mul(&b[0]).add(&a[1].mul(&b[2])),
            a[0].mul(&b[1]).add(&a[1].mul(&b[3])),
            a[2].mul(&b[0]).add(&a[3].mul(&b[2])),
            a[2].mul(&b[1]).add(&a[3].mul(&b[3])),
        ])
    }

    fn pow(&self, mut e: usize, id: &IMat) -> IMat {
        let (mut acc, mut base) = (id.clone(), self.clone());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    fn ratio(&self) -> Option<ComplexInterval> {
        if self.0[2].contains_zero() {
            None
        } else {
            self.0[0].div(&self.0[2])
        }
    }
}

/// Encloses the convergents `C_{N+j+mk}` for `m = n_periods - 1` and `m = n_periods`,
/// in interval arithmetic from the partial quotients alone.
///
/// The period matrix is raised to the `m`-th power by squaring: stepping the three-term
/// recurrence one quotient at a time lets interval widths compound with every step.
pub fn float_oracle(p: &Pcf, n_periods: usize, precision_bits: u32) -> Vec<ResidueEstimate> {
    let (n, k) = p.pcf_type();
    let prec = precision_bits.max(16);
    let one = ComplexInterval::from_rational(&Rational::from_integer(1.into()), prec);
    let zero = ComplexInterval::from_rational(&Rational::from_integer(0.into()), prec);
    let id = IMat([one.clone(), zero.clone(), zero.clone(), one.clone()]);
    let ds: Vec<IMat> = (0..n + k).map(|i| IMat::d(&p.term(i).complex_eval(prec), &one, &zero)).collect();
    let prefix = ds[..n].iter().fold(id.clone(), |m, d| m.mul(d));
    let period = ds[n..].iter().fold(id.clone(), |m, d| m.mul(d));
    let m = n_periods.max(1);
    let earlier = prefix.mul(&period.pow(m - 1, &id));
    let later = earlier.mul(&period);
    let mut partial = id;
    (1..=k)
        .map(|j| {
            partial = partial.mul(&ds[n + j - 1]);
            let last = later.mul(&partial).ratio();
            let prev = earlier.mul(&partial).ratio();
            let step = match (&last, &prev) {
                (Some(a), Some(b)) => {
                    let d = a.sub(b);
                    Some(d.re.mag().to_f64_lossy() + d.im.mag().to_f64_lossy())
                }
                _ => None,
            };
            ResidueEstimate { j, value: last, step }
        })
        .collect()
}

trait LossyF64 {
    fn to_f64_lossy(&self) -> f64;
}

impl LossyF64 for Rational {
    fn to_f64_lossy(&self) -> f64 {
        num_traits::ToPrimitive::to_f64(self).unwrap_or(f64::INFINITY)
    }
}

fn point_json(x: &ProjPoint, digits: usize) -> Value {
    match x {
        ProjPoint::Infinity => json!({"exact": "inf", "decimal": "inf"}),
        ProjPoint::Finite(v) => json!({
            "exact": v.to_string(),
            "decimal": v.complex_eval((digits as u32) * 4 + 32).to_decimal(digits),
        }),
    }
}

fn opt_point_json(x: Option<&ProjPoint>, digits: usize) -> Value {
    x.map_or(Value::Null, |p| point_json(p, digits))
}

/// Stable JSON rendering of a report.
pub fn to_json(report: &ConvergenceReport, digits: usize) -> Value {
    let residues: Vec<Value> = report
        .residues
        .iter()
        .map(|r| {
            json!({
                "j": r.j,
                "r": r.r.to_string(),
                "s": r.s.to_string(),
                "t": r.t.to_string(),
                "u": r.u.to_string(),
                "heavy": r.heavy,
                "limit": match &r.limit {
                    Some(PowerLimit::Limit(x)) => point_json(x, digits),
                    Some(PowerLimit::Divergent) => json!("divergent"),
                    None => Value::Null,
                },
            })
        })
        .collect();
    json!({
        "case": report.case_tag.as_str(),
        "behavior": report.behavior.as_str(),
        "limit": opt_point_json(report.limit.as_ref(), digits),
        "beta_plus": opt_point_json(report.beta_plus.as_ref(), digits),
        "beta_minus": opt_point_json(report.beta_minus.as_ref(), digits),
        "residues": residues,
        "majority": {
            "total": report.majority.total,
            "agree_count": report.majority.agree_count,
            "witness": opt_point_json(report.majority.witness.as_ref(), digits),
            "all_exist": report.majority.all_exist,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::ratio;

    fn q2(a: i64, b: i64) -> RingElem {
        RingElem::quad_int(a, b, 2).unwrap()
    }

    fn r(n: i64, d: i64) -> RingElem {
        RingElem::rational(ratio(n, d))
    }

    fn lim(x: RingElem) -> Option<PowerLimit> {
        Some(PowerLimit::Limit(ProjPoint::Finite(x)))
    }

    #[test]
    fn p1_converges_to_sqrt2() {
        let p = Pcf::from_ints(&[1], &[2]).unwrap();
        let rep = classify(&p).unwrap();
        assert_eq!(rep.case_tag, CaseTag::GapConvergent);
        assert_eq!(rep.limit, Some(ProjPoint::Finite(q2(0, 1))));
        assert_eq!(rep.residues[0].matrix(), Mat2::from_ints(2, 1, 1, 0));
        assert!(!rep.residues[0].heavy);
        check_report(&p, &rep).unwrap();
    }

    #[test]
    fn zero_quad_family() {
        let p = Pcf::new(vec![r(3, 1), r(2, 1)], vec![r(0, 1), r(0, 1)]).unwrap();
        let rep = classify(&p).unwrap();
        assert_eq!(rep.case_tag, CaseTag::ZeroQuad);
        assert!(rep.residues.iter().all(|x| x.matrix() == Mat2::identity() && !x.heavy));
        assert_eq!(rep.residues[0].limit, lim(r(3, 1)));
        assert_eq!(rep.residues[1].limit, lim(r(7, 2)));
        assert_eq!(rep.majority.agree_count, 1);
        check_report(&p, &rep).unwrap();
    }

    #[test]
    fn rotation_example() {
        let a = r(1, 2);
        let p = Pcf::new(vec![], vec![a.clone(), RingElem::zero(), a.inv().unwrap().neg()]).unwrap();
        let rep = classify(&p).unwrap();
        assert_eq!(rep.behavior, Behavior::StrictlyQuasiconvergent);
        assert_eq!(rep.residues.iter().filter(|x| x.heavy).count(), 1);
        let want = [lim(a.clone()), lim(r(-2, 1)), lim(r(-2, 1))];
        for (rd, w) in rep.residues.iter().zip(want) {
            assert_eq!(rd.limit, w);
        }
        let (k, agree, w) = majority_analysis(&rep).unwrap();
        assert_eq!((k, agree, w), (3, 2, ProjPoint::Finite(r(-2, 1))));
        check_report(&p, &rep).unwrap();

        let q = Pcf::new(vec![], vec![r(-3, 2)]).unwrap();
        let rq = classify(&q).unwrap();
        assert_eq!(rq.behavior, Behavior::Convergent);
        assert_eq!(rq.limit, Some(ProjPoint::Finite(r(-2, 1))));
    }

    #[test]
    fn residue_route_agrees() {
        let a = r(1, 3);
        let p = Pcf::new(vec![r(2, 1)], vec![a.clone(), RingElem::zero(), a.inv().unwrap().neg()]).unwrap();
        let via_e: Vec<_> = decimation_limits(&p).unwrap().into_iter().map(|r| r.limit.unwrap()).collect();
        assert_eq!(via_e, decimation_limits_via_residues(&p).unwrap());
        let p5 = Pcf::new(vec![q2(442, 312)], vec![q2(-298532, 211094), q2(884, 624)]).unwrap();
        let via_e: Vec<_> = decimation_limits(&p5).unwrap().into_iter().map(|r| r.limit.unwrap()).collect();
        assert_eq!(via_e, decimation_limits_via_residues(&p5).unwrap());
    }

    #[test]
    fn p5_limit() {
        let p5 = Pcf::new(vec![q2(442, 312)], vec![q2(-298532, 211094), q2(884, 624)]).unwrap();
        let rep = classify(&p5).unwrap();
        assert_eq!(rep.behavior, Behavior::Convergent);
        let beta = rep.limit.unwrap();
        let b = beta.finite().unwrap();
        assert_eq!(b.square(), q2(2, 1));
        assert_eq!(b.sign().unwrap(), Ordering::Greater);
        let json = to_json(&classify(&p5).unwrap(), 12);
        assert_eq!(json["limit"]["decimal"], "1.84775906502");
    }

    #[test]
    fn oracle_matches_p1() {
        let p = Pcf::from_ints(&[1], &[2]).unwrap();
        let est = float_oracle(&p, 60, 128);
        let v = est[0].value.as_ref().unwrap();
        assert!((v.re.to_f64() - std::f64::consts::SQRT_2).abs() < 1e-12);
        assert!(est[0].settled(1e-20));
        let two = float_oracle(&Pcf::from_ints(&[1, 1], &[0, 0]).unwrap(), 5, 64);
        assert_eq!(two[0].value.as_ref().unwrap().re.to_f64(), 1.0);
        assert_eq!(two[1].value.as_ref().unwrap().re.to_f64(), 2.0);
    }
}
