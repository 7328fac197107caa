mod common;

use std::cmp::Ordering;

use common::props;
use common::*;
use pcf_core::cfcore::Fcf;
use pcf_core::matrix2::*;
use pcf_core::RingElem;
use proptest::prelude::*;

fn mat() -> impl Strategy<Value = Mat2> {
    proptest::collection::vec(prop_oneof![small_rational(), small_q2()], 4)
        .prop_filter("single field", |v| v.iter().all(|x| x.base_field() == v[0].base_field() || x.as_rational().is_some()))
        .prop_map(|v| Mat2::new(v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone()))
}

fn to_f64(m: &Mat2) -> [[f64; 2]; 2] {
    [[m.m11.to_f64(), m.m12.to_f64()], [m.m21.to_f64(), m.m22.to_f64()]]
}

fn vec_of(p: &ProjPoint) -> (f64, f64) {
    match p {
        ProjPoint::Infinity => (1.0, 0.0),
        ProjPoint::Finite(x) => (x.to_f64(), 1.0),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn homomorphism_and_det(f in fcf(1..=8), g in fcf(1..=8)) {
        prop_assume!(f.base_field().join(&g.base_field()).is_ok());
        props::homomorphism(&f, &g)?;
    }

    #[test]
    fn roots_are_fixed_eigenvectors(m in mat()) {
        prop_assume!(!m.det().is_zero());
        let rp = roots_in(&quad(&m), &m.base_field().unwrap()).unwrap();
        for beta in &rp.roots {
            prop_assert_eq!(mobius(&m, beta).unwrap(), beta.clone());
            let lambda = eigen_at(&m, beta).unwrap();
            let (v1, v2) = match beta {
                ProjPoint::Finite(b) => (b.clone(), RingElem::one()),
                ProjPoint::Infinity => (RingElem::one(), RingElem::zero()),
            };
            prop_assert_eq!(&(&m.m11 * &v1) + &(&m.m12 * &v2), &lambda * &v1);
            prop_assert_eq!(&(&m.m21 * &v1) + &(&m.m22 * &v2), &lambda * &v2);
        }
    }

    #[test]
    fn quad_is_linear(a in mat(), b in mat(), x in small_rational(), y in small_rational()) {
        prop_assume!(a.base_field().and_then(|f| f.join(&b.base_field()?)).is_ok());
        let comb = a.scale(&x).unwrap().checked_add(&b.scale(&y).unwrap()).unwrap();
        let (qa, qb, qc) = (quad(&a), quad(&b), quad(&comb));
        prop_assert_eq!(qc.a, &(&x * &qa.a) + &(&y * &qb.a));
        prop_assert_eq!(qc.b, &(&x * &qa.b) + &(&y * &qb.b));
        prop_assert_eq!(qc.c, &(&x * &qa.c) + &(&y * &qb.c));
    }

    /// Unimodular matrices over Z: hyperbolic ones have eigenvalue ratio at least
    /// the square of the golden ratio, so 200 steps always settle.
    #[test]
    fn power_limit_matches_iteration(f in proptest::collection::vec(small_int(), 1..=6), start in -20i64..=20) {
        let m = mat_of_fcf(&Fcf::new(f).unwrap());
        let beta = ProjPoint::int(start);
        let limit = power_limit(&m, &beta).unwrap();
        if let (Dynamics::Gap { .. }, PowerLimit::Limit(l)) = (dynamics(&m).unwrap(), &limit) {
            let orbit = f64_orbit(to_f64(&m), vec_of(&beta), 200);
            prop_assert!(chordal(orbit, vec_of(l)) < 1e-9, "{} from {} to {}", m, start, l);
        }
        if let Dynamics::Scalar = dynamics(&m).unwrap() {
            prop_assert_eq!(limit, PowerLimit::Limit(beta));
        }
    }

    #[test]
    fn gap_orders_eigenvalues(f in proptest::collection::vec(prop_oneof![small_rational(), small_q2()], 1..=5)) {
        let Ok(f) = Fcf::new(f) else { return Ok(()) };
        let m = mat_of_fcf(&f);
        match dynamics(&m).unwrap() {
            Dynamics::Gap { lambda_plus, lambda_minus, .. } => {
                prop_assert_eq!(lambda_plus.abs_cmp(&lambda_minus).unwrap(), Ordering::Greater);
                let lp = lambda_plus.complex_eval(64).abs_sq().to_f64();
                let lm = lambda_minus.complex_eval(64).abs_sq().to_f64();
                prop_assert!(lp >= lm);
            }
            Dynamics::EqualMagnitude { lambdas, .. } => {
                let a = lambdas[0].complex_eval(64).abs_sq().to_f64();
                let b = lambdas[1].complex_eval(64).abs_sq().to_f64();
                prop_assert!((a - b).abs() <= 1e-9 * a.max(1.0));
            }
            _ => {}
        }
    }
}

#[test]
fn equal_magnitude_orbits_are_periodic() {
    // [[1,-1],[1,0]] has order 6 in PGL_2, so the orbit of 5 cycles.
    let m = Mat2::from_ints(1, -1, 1, 0);
    assert_eq!(power_limit(&m, &ProjPoint::int(5)).unwrap(), PowerLimit::Divergent);
    let six = m.pow(6).unwrap();
    assert!(six.is_scalar());
}
