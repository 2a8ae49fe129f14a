mod common;

use common::{float_potential, rational, rational_potential, surd_potential};
use periodic_fsm::{
    monodromy, monodromy_via_determinants, trace_polynomial, transfer_matrix, Mat2, Potential,
    Scalar,
};
use proptest::prelude::*;

fn check_shift_invariance(p: &Potential, e: &Scalar) -> Result<(), TestCaseError> {
    let m0 = monodromy(p, e, 0, false).unwrap();
    prop_assert_eq!(m0.det(), Scalar::one());
    let tr = m0.trace();
    for j in 0..p.period() as i64 {
        for rev in [false, true] {
            let m = monodromy(p, e, j, rev).unwrap();
            prop_assert_eq!(m.det(), Scalar::one());
            prop_assert_eq!(m.trace(), tr.clone());
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn determinant_one_and_trace_invariance(p in rational_potential(8), e in rational()) {
        check_shift_invariance(&p, &Scalar::rational(e))?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn two_paths_agree_rational(p in rational_potential(7), e in rational()) {
        prop_assume!(p.period() >= 2);
        let e = Scalar::rational(e);
        prop_assert_eq!(monodromy_via_determinants(&p, &e).unwrap(), monodromy(&p, &e, 0, false).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn two_paths_agree_surd(p in surd_potential(7), e in rational()) {
        prop_assume!(p.period() >= 2);
        let e = Scalar::rational(e);
        prop_assert_eq!(monodromy_via_determinants(&p, &e).unwrap(), monodromy(&p, &e, 0, false).unwrap());
    }

    #[test]
    fn surd_potentials_keep_invariants(p in surd_potential(5), e in rational()) {
        check_shift_invariance(&p, &Scalar::rational(e))?;
    }

    #[test]
    fn trace_polynomial_evaluates_to_trace(p in rational_potential(8), e in rational()) {
        let e = Scalar::rational(e);
        prop_assert_eq!(trace_polynomial(&p).eval(&e), monodromy(&p, &e, 0, false).unwrap().trace());
    }

    #[test]
    fn transfer_matrices_are_symplectic(v in rational(), e in rational()) {
        let t = transfer_matrix(&Scalar::rational(v), &Scalar::rational(e)).unwrap();
        let j = Mat2::from_ints(0, -1, 1, 0);
        prop_assert_eq!(t.transpose().mul(&j).mul(&t), j);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn float_determinant_close_to_one(p in float_potential(8), e in -3.0f64..3.0) {
        for j in 0..p.period() as i64 {
            let m = monodromy(&p, &Scalar::Float(e), j, j % 2 == 1).unwrap();
            prop_assert!((m.det().to_f64() - 1.0).abs() <= 1e-10 * (1.0 + m.m11.to_f64().abs()).powi(2));
        }
    }
}

#[test]
fn mixed_modes_are_rejected() {
    let p = Potential::from_ints(&[1, 2]);
    assert!(monodromy(&p, &Scalar::Float(0.5), 0, false).is_err());
    assert!(transfer_matrix(&Scalar::int(1), &Scalar::Float(0.0)).is_err());
}
