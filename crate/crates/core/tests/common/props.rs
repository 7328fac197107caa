//! Property checks as plain functions so the acceptance runner can reuse them at scale.

use pcf_core::cfcore::{reduce, Fcf};
use pcf_core::convergence::{check_report, classify, Behavior};
use pcf_core::matrix2::{mat_of_class, mat_of_fcf};
use pcf_core::pcf::Pcf;
use pcf_core::RingElem;
use proptest::prelude::*;

use super::{all_normal_forms, expand, fold_matrix, int, render};

/// Every rewrite order of a short word ends at the stack-reduced word.
pub fn confluence(f: &Fcf) -> Result<(), TestCaseError> {
    let forms = all_normal_forms(f.quotients());
    prop_assert_eq!(forms.len(), 1, "several normal forms for {}", f);
    let red = reduce(f);
    prop_assert_eq!(forms.into_iter().next().unwrap(), render(red.reduced().quotients()));
    prop_assert!(red.reduced().is_reduced());
    Ok(())
}

/// `M` is multiplicative on classes and `det M = (-1)^length`.
pub fn homomorphism(f: &Fcf, g: &Fcf) -> Result<(), TestCaseError> {
    let (cf, cg) = (reduce(f), reduce(g));
    let prod = cf.star(&cg).unwrap();
    prop_assert_eq!(mat_of_class(&prod), fold_matrix(f.quotients()).checked_mul(&fold_matrix(g.quotients())).unwrap());
    prop_assert_eq!(mat_of_fcf(f), mat_of_class(&cf));
    let sign = if f.len() % 2 == 0 { 1 } else { -1 };
    prop_assert_eq!(mat_of_fcf(f).det(), RingElem::int(sign));
    prop_assert_eq!(i64::from(cf.det_char()), sign);
    Ok(())
}

/// Heavy residues are never adjacent, two heavy residues two apart force a zero between,
/// and the strict-majority characterization holds.
pub fn report_structure(p: &Pcf) -> Result<(), TestCaseError> {
    let rep = classify(p).unwrap();
    if let Err(e) = check_report(p, &rep) {
        return Err(TestCaseError::fail(format!("{p}: {e}")));
    }
    Ok(())
}

/// Equivalent PCFs are quasiconvergent together and share limits when both converge.
pub fn equivalence_respects_quasiconvergence(p: &Pcf, pos: usize, x: &RingElem) -> Result<(), TestCaseError> {
    let w = p.unfold();
    let x = if x.base_field().join(&p.base_field()).is_ok() { x.clone() } else { int(1) };
    let q = Pcf::fold(&Fcf::new(expand(w.quotients(), pos, &x)).unwrap());
    prop_assert!(p.equivalent(&q));
    let (rp, rq) = (classify(p).unwrap(), classify(&q).unwrap());
    prop_assert_eq!(rp.behavior.is_quasiconvergent(), rq.behavior.is_quasiconvergent(), "{} vs {}", p, q);
    if rp.behavior == Behavior::Convergent && rq.behavior == Behavior::Convergent {
        prop_assert_eq!(rp.limit, rq.limit);
    }
    Ok(())
}
