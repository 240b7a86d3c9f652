//! Property-based checks: analytic derivatives against finite differences,
//! the quartic algebraic identity, vacuum-finding postconditions, and
//! overlap range/symmetry over randomized inputs.

use proptest::prelude::*;

use tiltwell::potentials::PotentialSpec;
use tiltwell::wavefunctional::{make_functional, Stiffness};
use tiltwell::Grid;

fn quartic_strategy() -> impl Strategy<Value = PotentialSpec> {
    (0.5..5.0_f64, 0.5..3.0_f64, 0.0..1.0_f64).prop_map(|(lambda, a, t)| {
        // Stay under the fold tilt, above which one minimum disappears:
        // the local extremum of lambda phi (phi^2 - a^2) is ~0.385 lambda a^3.
        PotentialSpec::QuarticDoubleWell {
            lambda,
            a,
            tilt: t * 0.3 * lambda * a.powi(3),
        }
    })
}

fn sine_gordon_strategy() -> impl Strategy<Value = PotentialSpec> {
    (
        0.5..2.0_f64,
        0.0..0.02_f64,
        0.0..std::f64::consts::TAU,
        0.001..0.08_f64,
    )
        .prop_map(|(c_a, c_b, phi_c, tilt)| PotentialSpec::DrivenSineGordon {
            c_a,
            c_b,
            phi_c,
            tilt,
        })
}

fn taylor_strategy() -> impl Strategy<Value = PotentialSpec> {
    (-3.0..3.0_f64, 0.0..2.0_f64, -1.0..1.0_f64)
        .prop_map(|(phi0, c0, c1)| PotentialSpec::TaylorQuartic { phi0, c0, c1 })
}

fn any_spec() -> impl Strategy<Value = PotentialSpec> {
    prop_oneof![quartic_strategy(), sine_gordon_strategy(), taylor_strategy()]
}

proptest! {
    #[test]
    fn first_derivative_matches_central_difference(
        spec in any_spec(),
        phi in -10.0..10.0_f64,
    ) {
        let h = 1e-5;
        let numeric = (spec.eval(phi + h) - spec.eval(phi - h)) / (2.0 * h);
        let analytic = spec.deriv(phi, 1).unwrap();
        let tol = 1e-6 * analytic.abs().max(1.0);
        prop_assert!(
            (numeric - analytic).abs() <= tol,
            "analytic {analytic}, numeric {numeric}"
        );
    }

    #[test]
    fn second_derivative_matches_central_difference(
        spec in any_spec(),
        phi in -10.0..10.0_f64,
    ) {
        let h = 1e-4;
        let numeric =
            (spec.eval(phi + h) - 2.0 * spec.eval(phi) + spec.eval(phi - h)) / (h * h);
        let analytic = spec.deriv(phi, 2).unwrap();
        let tol = 1e-4 * analytic.abs().max(1.0);
        prop_assert!(
            (numeric - analytic).abs() <= tol,
            "analytic {analytic}, numeric {numeric}"
        );
    }

    #[test]
    fn quartic_expansion_identity_holds_pointwise(
        phi in -5.0..5.0_f64,
        phi0 in -5.0..5.0_f64,
    ) {
        let d = phi - phi0;
        let lhs = d.powi(4);
        let sq = phi * phi - phi0 * phi0;
        let rhs = sq * sq - 4.0 * phi * phi0 * (d * d);
        let scale = lhs.abs().max(sq * sq).max((4.0 * phi * phi0 * d * d).abs()).max(1.0);
        prop_assert!((lhs - rhs).abs() <= 1e-12 * scale, "lhs {lhs}, rhs {rhs}");
    }

    #[test]
    fn located_minima_are_genuine_and_ordered(
        spec in prop_oneof![quartic_strategy(), sine_gordon_strategy()],
    ) {
        let (lo, hi) = spec.default_bracket();
        // Extreme corners of the parameter box can legitimately push a well
        // out of the bracket; postconditions apply when a pair is found.
        if let Ok(vacua) = spec.find_minima(lo, hi) {
            for phi in [vacua.phi_false, vacua.phi_true] {
                prop_assert!(spec.deriv(phi, 1).unwrap().abs() <= 1e-10);
                prop_assert!(spec.deriv(phi, 2).unwrap() > 0.0);
            }
            prop_assert!(vacua.gap >= 0.0);
            prop_assert!(vacua.v_false >= vacua.v_true);
            prop_assert!(vacua.phi_false != vacua.phi_true);
            prop_assert!((vacua.v_false - vacua.v_true - vacua.gap).abs() <= 1e-12 * vacua.v_false.abs().max(1.0));
        }
    }

    #[test]
    fn overlap_stays_in_unit_interval_and_is_symmetric(
        n in 3..24_usize,
        alpha_a in 0.1..5.0_f64,
        alpha_b in 0.1..5.0_f64,
        center_a in -2.0..2.0_f64,
        center_b in -2.0..2.0_f64,
    ) {
        let grid = Grid::new(0.0, 3.0, n).unwrap();
        let a = make_functional(
            grid.sample(|_| center_a).unwrap(),
            Stiffness::Uniform(alpha_a),
        )
        .unwrap();
        let b = make_functional(
            grid.sample(|x| center_b + 0.1 * x.sin()).unwrap(),
            Stiffness::Uniform(alpha_b),
        )
        .unwrap();
        let ab = a.overlap(&b).unwrap();
        prop_assert!((0.0..=1.0).contains(&ab), "overlap {ab}");
        prop_assert_eq!(ab, b.overlap(&a).unwrap());
        let self_overlap = a.overlap(&a).unwrap();
        prop_assert!((1.0 - self_overlap).abs() <= 1e-12);
    }
}
