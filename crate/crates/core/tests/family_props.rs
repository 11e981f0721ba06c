mod common;

use common::*;
use hermitia_core::family::{
    adapted_j8, basis, build_g8, factorized_jv, hopf_lift, hopf_projection, magnin_jv, psi_for_theta,
    semikaehler_solution, signed_sphere_vector, so3_from_quaternion, tilde_alpha_closed_form,
    w4_obstruction_report, EtaSign, G8Parameters, MagninParams,
};
use hermitia_core::{
    classify, nabla_omega, nijenhuis, psi_tensor, q, tilde_alpha, LieAlgebra, Matrix, Rational,
    SpherePoint, Tolerance,
};
use num_traits::{One, Zero};
use proptest::prelude::*;

const EXACT: Tolerance = Tolerance(0.0);

fn det3(m: &Matrix<Rational>) -> Rational {
    let e = |i, j| m[(i, j)].clone();
    e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1)) - e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0))
        + e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0))
}

fn magnin() -> impl Strategy<Value = MagninParams<Rational>> {
    (rational(), nonzero_rational(), sphere(), sphere())
        .prop_map(|(xi, eta, s1, s2)| MagninParams::new(xi, eta, s1, s2, EXACT).unwrap())
}

#[test]
fn trace_covector_first_component_matches_the_hand_formula() {
    // t1 = -1/2 (-rho c12 + b11 c21 - b21 c11 - 4 l1)
    let p = G8Parameters::<Rational>::from_array(core::array::from_fn(|i| q(i as i64 + 1, 3)));
    let s1 = hermitia_core::rational_sphere_point(q(1, 2), q(1, 3));
    let s2 = hermitia_core::rational_sphere_point(q(-2, 1), q(1, 1));
    let t = tilde_alpha(&nabla_omega(&build_g8(&p), &adapted_j8(&s1, &s2, EtaSign::Plus), EXACT).unwrap());
    let expected = -q(1, 2)
        * (-&p.rho * &p.c12 + &p.b11 * &p.c21 - &p.b21 * &p.c11 - q(4, 1) * &s1.lambda);
    assert_eq!(t[0], expected);
    assert!(t[6].is_zero() && t[7].is_zero());
}

#[test]
fn terminal_value_at_the_x_axis() {
    let x = SpherePoint::new(q(1, 1), q(0, 1), q(0, 1), EXACT).unwrap();
    let r = w4_obstruction_report(&x, &x, EXACT);
    assert_eq!(r.terminal.index, (basis::B, basis::C, basis::R));
    assert_eq!(r.terminal.computed, q(1, 2));
}

#[test]
fn magnin_block_at_poles_has_unit_entries() {
    let pole = SpherePoint::<Rational>::pole();
    let m = MagninParams::new(q(0, 1), q(1, 1), pole.clone(), pole, EXACT).unwrap();
    let jv = magnin_jv(&m);
    assert!(jv.entries().iter().all(|v| v.is_zero() || *v == q(1, 1) || *v == q(-1, 1)));
}

#[test]
fn semikaehler_members_at_the_poles() {
    let pole = SpherePoint::<Rational>::pole();
    let south = SpherePoint::new(q(0, 1), q(0, 1), q(-1, 1), EXACT).unwrap();
    for (s1, s2) in [(pole.clone(), pole.clone()), (pole, south)] {
        let p = semikaehler_solution(q(3, 1), q(1, 2), q(-2, 1), &s1, &s2, EXACT).unwrap();
        let r = classify(&build_g8(&p), &adapted_j8(&s1, &s2, EtaSign::Plus), EXACT).unwrap();
        assert!(r.integrable && r.semi_kaehler && r.lck == Some(false));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn semikaehler_members_are_strictly_w3(
        rho in nonzero_rational(),
        r1 in rational(),
        r2 in rational(),
        s1 in sphere(),
        s2 in sphere(),
    ) {
        let p = semikaehler_solution(rho, r1, r2, &s1, &s2, EXACT).unwrap();
        let l = build_g8(&p);
        let j = adapted_j8(&s1, &s2, EtaSign::Plus);
        prop_assert!(nijenhuis(&l, &j).unwrap().is_zero(EXACT));
        let alpha = nabla_omega(&l, &j, EXACT).unwrap();
        prop_assert!(tilde_alpha(&alpha).iter().all(Zero::is_zero));
        prop_assert!(!alpha.is_zero(EXACT));
        prop_assert!(!psi_tensor(&alpha, &j).unwrap().is_zero(EXACT));
        prop_assert!(p.theta().iter().any(|t| !t.is_zero()));
        let r = classify(&l, &j, EXACT).unwrap();
        prop_assert!(r.semi_kaehler && r.w3 && r.w4 == Some(false) && !r.kaehler);
    }

    #[test]
    fn trace_covector_closed_form(p in g8_params(), s1 in sphere(), s2 in sphere()) {
        let j = adapted_j8(&s1, &s2, EtaSign::Plus);
        let t = tilde_alpha(&nabla_omega(&build_g8(&p), &j, EXACT).unwrap());
        prop_assert_eq!(t, tilde_alpha_closed_form(&p, &s1, &s2).to_vec());
    }

    #[test]
    fn psi_closed_forms(p in g8_params(), s1 in sphere(), s2 in sphere()) {
        use basis::*;
        let j = adapted_j8(&s1, &s2, EtaSign::Plus);
        let psi = psi_tensor(&nabla_omega(&build_g8(&p), &j, EXACT).unwrap(), &j).unwrap();
        let theta = p.theta();
        let v = signed_sphere_vector(&s1, &s2);
        for k in 0..6 {
            prop_assert_eq!(psi.get(Y, Y, k), &(q(1, 3) * (theta[k].clone() + v[k].clone())));
        }
        prop_assert!(psi.get(Y, Y, X).is_zero() && psi.get(Y, Y, Y).is_zero());

        // with theta forced to -v
        let forced: [Rational; 6] = core::array::from_fn(|i| -v[i].clone());
        let at = psi_for_theta(&s1, &s2, &forced);
        let one = Rational::one();
        let h = q(1, 2);
        prop_assert_eq!(at.get(A, A, R), &(&h * &s2.lambda * (&one - &s1.lambda * &s1.lambda)));
        prop_assert_eq!(at.get(A, A, S), &(&h * &s2.mu * (&s1.lambda * &s1.lambda - &one)));
    }

    #[test]
    fn obstruction_components_depend_on_theta_only(p in g8_params(), s1 in sphere(), s2 in sphere()) {
        let j = adapted_j8(&s1, &s2, EtaSign::Plus);
        let full = psi_tensor(&nabla_omega(&build_g8(&p), &j, EXACT).unwrap(), &j).unwrap();
        let reduced = psi_for_theta(&s1, &s2, &p.theta());
        for a in 0..8 {
            for b in 0..8 {
                if a >= 6 && b < 6 {
                    continue;
                }
                for c in 0..8 {
                    prop_assert_eq!(full.get(a, b, c), reduced.get(a, b, c), "psi({},{},{})", a + 1, b + 1, c + 1);
                }
            }
        }
    }

    #[test]
    fn obstruction_holds_at_every_sphere_pair(s1 in sphere(), s2 in sphere()) {
        let r = w4_obstruction_report(&s1, &s2, EXACT);
        prop_assert!(r.w4_empty);
        prop_assert!(r.second_stage.iter().all(|c| c.matches(EXACT)));
        prop_assert_eq!(r.forced_theta.unwrap(), r.forced_theta_expected);
    }

    #[test]
    fn adapted_structures_are_orthogonal_complex(s1 in sphere(), s2 in sphere(), plus in any::<bool>()) {
        let eta = if plus { EtaSign::Plus } else { EtaSign::Minus };
        let j = adapted_j8(&s1, &s2, eta);
        let m = j.matrix();
        prop_assert!((m * m).add(&Matrix::identity(8)).is_zero(EXACT));
        prop_assert!((&m.transpose() * m).is_identity(EXACT));
        prop_assert_eq!(j.apply(&hermitia_core::lie::unit(8, basis::X)), hermitia_core::lie::unit(8, basis::Y));
    }

    #[test]
    fn magnin_structures_are_integrable(m in magnin()) {
        let jv = magnin_jv(&m);
        prop_assert!((&jv * &jv).add(&Matrix::identity(6)).is_zero(EXACT));
        let acs = hermitia_core::AlmostComplexStructure::new(jv.clone(), EXACT).unwrap();
        prop_assert!(nijenhuis(&LieAlgebra::su2_sum(), &acs).unwrap().is_zero(EXACT));
        prop_assert_eq!(factorized_jv(&m, EXACT), jv);
    }

    #[test]
    fn hopf_lift_and_rotation(s in sphere()) {
        let quat = hopf_lift(&s, EXACT);
        prop_assert_eq!(quat.norm_sq(), Rational::one());
        prop_assert_eq!(hopf_projection(&quat), s);
        let m = so3_from_quaternion(&quat);
        prop_assert!((&m.transpose() * &m).is_identity(EXACT));
        prop_assert_eq!(det3(&m), Rational::one());
    }
}
