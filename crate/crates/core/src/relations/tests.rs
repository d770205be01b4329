use super::*;
use crate::kernel::{matching_distance, unit_root};
use crate::map::MapParams;
use crate::oracle::Oracle;
use ::approx::assert_abs_diff_eq;
use proptest::prelude::{prop_assert, prop_assume, proptest};
use proptest::strategy::Strategy as _;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn r(x: f64) -> Complex64 {
    c(x, 0.0)
}

fn values(branches: &[BranchedParameter]) -> Vec<Complex64> {
    branches.iter().map(|b| b.value).collect()
}

#[test]
fn xi_from_c_examples() {
    assert_eq!(xi_from_c(1, r(1.0), r(0.0)).unwrap(), vec![r(-1.0)]);
    assert_eq!(xi_from_c(2, r(0.0), r(0.0)).unwrap(), vec![r(0.5), r(0.0)]);
    let cubic = xi_from_c(3, r(0.0), r(0.0)).unwrap();
    let h = 0.5f64.sqrt();
    assert!(matching_distance(&cubic, &[r(0.0), r(h), r(-h)]) < 1e-15);
}

#[test]
fn xi_from_c_errors() {
    assert!(matches!(xi_from_c(1, r(1.0), r(1.0)), Err(Error::Pole(_))));
    assert!(matches!(
        xi_from_c(5, r(1.0), r(0.0)),
        Err(Error::Unsupported { n: 5, .. })
    ));
    assert!(xi_from_c(2, c(f64::NAN, 0.0), r(0.0)).is_err());
}

#[test]
fn xi_from_a_examples() {
    let roots = xi_from_a(1, r(1.0), r(0.0)).unwrap();
    assert_eq!(roots, vec![r(1.0), r(-1.0)]);

    let sixth = xi_from_a(3, r(1.0), r(0.0)).unwrap();
    assert_eq!(sixth.len(), 6);
    let unity: Vec<Complex64> = (0..6).map(|k| unit_root(k, 6)).collect();
    assert!(matching_distance(&sixth, &unity) < 1e-14);
    // sign pairs come adjacent
    for pair in sixth.chunks(2) {
        assert_eq!(pair[0], -pair[1]);
    }
}

#[test]
fn xi_from_a_errors() {
    assert!(matches!(
        xi_from_a(2, r(0.0), r(0.5)),
        Err(Error::ZeroParameter("a"))
    ));
    assert!(matches!(
        xi_from_a(4, r(1.0), r(0.5)),
        Err(Error::Unsupported { n: 4, .. })
    ));
    assert!(matches!(xi_from_a(1, r(1.0), r(1.0)), Err(Error::Pole(_))));
}

#[test]
fn xi_from_a_degree_one_solves_the_actual_equation() {
    // n = 1: xi^{2n} - lambda xi^{n+1} - a = (1 - lambda) xi^2 - a
    let (a, lambda) = (c(0.3, -0.7), c(0.2, 0.4));
    for xi in xi_from_a(1, a, lambda).unwrap() {
        assert!(a_side(1, xi, a, lambda).norm() < 1e-15);
    }
}

#[test]
fn a_from_c_degree_one() {
    let b = a_from_c(1, r(1.0), r(0.0)).unwrap();
    assert_eq!(values(&b), vec![r(1.0)]);
    let b = a_from_c(1, r(2.0), r(0.5)).unwrap();
    assert_eq!(values(&b), vec![r(8.0)]);
    // closed form agrees with the xi pipeline
    let (cc, lambda) = (c(0.4, -1.1), c(-0.3, 0.6));
    let b = a_from_c(1, cc, lambda).unwrap();
    assert!((b[0].value - a_of_xi(1, b[0].xi, lambda)).norm() < 1e-14);
}

#[test]
fn a_from_c_rejects_zero_c() {
    assert!(matches!(
        a_from_c(2, r(0.0), r(0.5)),
        Err(Error::ZeroParameter("c"))
    ));
}

#[test]
fn c_from_a_examples() {
    assert_eq!(
        values(&c_from_a(1, r(1.0), r(0.0)).unwrap()),
        vec![r(1.0), r(-1.0)]
    );
    let b = c_from_a(1, r(1.0), r(-3.0)).unwrap();
    assert_eq!(values(&b), vec![r(2.0), r(-2.0)]);
    // fixed point z = xi = -c / 4 with multiplier 1 - a/z^2 = -3
    assert_abs_diff_eq!((b[0].xi - r(-0.5)).norm(), 0.0, epsilon = 1e-15);
    let map = MapParams::new(1, r(1.0), b[0].value).unwrap();
    assert!((map.derivative(b[0].xi).unwrap() - r(-3.0)).norm() < 1e-14);

    let six = c_from_a(3, r(1.0), r(0.0)).unwrap();
    assert_eq!(six.len(), 6);
    for b in &six {
        assert!((b.value - (b.xi - 2.0 * b.xi.powu(3))).norm() < 1e-15);
        assert!(b.residual_c < 1e-12);
    }

    assert!(matches!(
        c_from_a(4, r(1.0), r(0.0)),
        Err(Error::Unsupported { n: 4, .. })
    ));
    assert!(matches!(
        c_from_a(2, r(0.0), r(0.0)),
        Err(Error::ZeroParameter("a"))
    ));
}

#[test]
fn special_a_zero_examples() {
    let v = |lambda| values(&special_a_zero(2, lambda).unwrap());
    assert_eq!(v(r(1.0)), vec![r(0.25)]);
    assert_eq!(v(r(-1.0)), vec![r(-0.75)]);
    assert_eq!(v(r(0.0)), vec![r(0.0)]);
    assert!(matches!(
        special_a_zero(1, r(0.5)),
        Err(Error::Unsupported { n: 1, .. })
    ));
    assert_eq!(special_a_zero(5, c(0.3, 0.2)).unwrap().len(), 4);
}

#[test]
fn special_c_zero_examples() {
    let v = |n, lambda| values(&special_c_zero(n, lambda).unwrap());
    assert_eq!(v(2, r(0.0)), vec![r(1.0 / 16.0)]);
    assert_eq!(v(2, r(1.0)), vec![r(27.0 / 256.0)]);
    let cubic = v(3, r(0.0));
    assert_eq!(cubic.len(), 2);
    assert_abs_diff_eq!((cubic[0] - r(0.125)).norm(), 0.0, epsilon = 1e-16);
    assert!(matches!(
        special_c_zero(1, r(0.5)),
        Err(Error::Unsupported { n: 1, .. })
    ));
}

#[test]
fn cardioid_identity() {
    for j in 0..4096 {
        let lambda = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * f64::from(j) / 4096.0);
        let got = special_a_zero(2, lambda).unwrap()[0].value;
        let want = lambda / 2.0 - lambda * lambda / 4.0;
        assert!((got - want).norm() < 1e-14);
    }
}

#[test]
fn approx_a_large_examples() {
    let gate = ValidityGate::default();
    let b = approx_a_from_c_large(5, r(16.0), r(0.0), &gate).unwrap();
    assert_eq!(b.len(), 5);
    let scale = 8f64.powf(0.2);
    for br in &b {
        assert!((br.xi.powu(5) - r(-8.0)).norm() < 1e-13);
        assert!((br.value - r(64.0)).norm() < 1e-12);
        assert_abs_diff_eq!(br.residual_c, scale, epsilon = 1e-12);
        assert_abs_diff_eq!(br.residual_c / 16.0, 0.0947, epsilon = 1e-3);
    }
    for j in 0..256 {
        let lambda = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * f64::from(j) / 256.0);
        for br in approx_a_from_c_large(5, r(16.0), lambda, &gate).unwrap() {
            assert!(br.residual_c / 16.0 < 0.15);
        }
    }
    match approx_a_from_c_large(5, r(0.01), r(0.0), &gate) {
        Err(Error::ValidityGate { ratio, .. }) => assert!(ratio < 10.0),
        other => panic!("expected refusal, got {other:?}"),
    }
    assert!(matches!(
        approx_a_from_c_large(4, r(16.0), r(0.0), &gate),
        Err(Error::Unsupported { .. })
    ));
}

#[test]
fn approx_a_small_examples() {
    let gate = ValidityGate::default();
    let b = approx_a_from_c_small(5, r(1.0 / 16.0), r(0.0), &gate).unwrap();
    assert_eq!(b.xi, r(1.0 / 16.0));
    assert!((b.value.re - (1.0f64 / 16.0).powi(10)).abs() < 1e-25);
    assert_abs_diff_eq!(b.value.re, 2f64.powi(-40), epsilon = 1e-27);

    let b = approx_a_from_c_small(5, r(1.0 / 16.0), r(1.0), &gate).unwrap();
    assert_abs_diff_eq!((b.xi - r(5.0 / 96.0)).norm(), 0.0, epsilon = 1e-16);

    assert!(matches!(
        approx_a_from_c_small(5, r(16.0), r(0.0), &gate),
        Err(Error::ValidityGate { .. })
    ));
    assert!(matches!(
        approx_a_from_c_small(5, r(0.01), r(-5.0), &gate),
        Err(Error::Pole(_))
    ));
}

#[test]
fn approx_c_large_examples() {
    let gate = ValidityGate::default();
    let b = approx_c_from_a_large(4, r(16.0), r(0.0), &gate).unwrap();
    assert_eq!(b.len(), 8);
    let s2 = 2f64.sqrt();
    // last branch: xi = sqrt(2), xi^4 = 4
    assert!((b[7].xi - r(s2)).norm() < 1e-14);
    assert!((b[7].value - r(s2 - 8.0)).norm() < 1e-13);
    // second branch: xi = sqrt(2) i, xi^4 = 4 as well
    assert!((b[1].xi - c(0.0, s2)).norm() < 1e-14);
    assert!((b[1].value - c(-8.0, s2)).norm() < 1e-13);
    // first branch: xi = 1 + i, xi^4 = -4
    assert!((b[0].xi - c(1.0, 1.0)).norm() < 1e-14);
    assert!((b[0].value - c(9.0, 1.0)).norm() < 1e-13);
    for br in &b {
        assert!(br.residual_a < 1e-12);
    }

    assert!(matches!(
        approx_c_from_a_large(4, r(1e-8), r(1.0), &gate),
        Err(Error::ValidityGate { .. })
    ));
}

#[test]
fn approx_c_small_examples() {
    let gate = ValidityGate::default();
    let a = r(1e-10);
    let b = approx_c_from_a_small(4, a, r(1.0), &gate).unwrap();
    let expected_xi = crate::kernel::principal_root(r(-4e-10), 5).unwrap();
    assert_eq!(b.xi, expected_xi);
    assert_abs_diff_eq!(b.value.norm(), 1.25 * expected_xi.norm(), epsilon = 1e-6);
    assert!(b.value.norm() > 1.6e-2 && b.value.norm() < 1.7e-2);
    assert!(b.residual_a < a.norm() * 0.2);

    assert!(matches!(
        approx_c_from_a_small(4, r(0.0), r(1.0), &gate),
        Err(Error::ZeroParameter("a"))
    ));
    assert!(matches!(
        approx_c_from_a_small(4, a, r(0.0), &gate),
        Err(Error::Pole(_))
    ));
}

#[test]
fn appendix_identity_examples() {
    assert_eq!(appendix_identity_check(2, r(0.5), r(0.0), r(0.0)), 0.0);
    // off-shell: xi = 1 does not solve 2 xi^2 - xi + 0.3 = 0
    assert!(appendix_identity_check(2, r(1.0), r(0.3), r(0.0)) > 1e-3);
}

#[test]
fn dispatch_routes() {
    let solver = RelationSolver::default();
    let ev = solver.evaluate(2, Mode::AFromC, r(0.0), r(0.0)).unwrap();
    assert_eq!(ev.route, Route::Special);
    assert_eq!(values(&ev.branches), vec![r(1.0 / 16.0)]);

    let ev = solver
        .evaluate(4, Mode::CFromA, r(1.0), c(0.3, 0.1))
        .unwrap();
    assert_eq!(ev.route, Route::Numeric);
    assert_eq!(ev.branches.len(), 8);

    assert!(matches!(
        solver.evaluate(5, Mode::AFromC, r(16.0), r(0.0)),
        Err(Error::Unsupported { n: 5, .. })
    ));

    let approx = RelationSolver::with_strategy(super::Strategy::Approximate);
    assert_eq!(
        approx
            .evaluate(5, Mode::AFromC, r(16.0), r(0.0))
            .unwrap()
            .route,
        Route::ApproxLarge
    );
    assert_eq!(
        approx
            .evaluate(5, Mode::AFromC, r(0.0625), r(0.0))
            .unwrap()
            .route,
        Route::ApproxSmall
    );
    assert!(matches!(
        approx.evaluate(5, Mode::AFromC, r(1.0), r(0.0)),
        Err(Error::ValidityGate { .. })
    ));
    assert_eq!(
        approx
            .evaluate(2, Mode::AFromC, r(1.0), r(0.0))
            .unwrap()
            .route,
        Route::Exact
    );

    assert_eq!("c-zero".parse::<Mode>().unwrap(), Mode::CZero);
    assert!("sideways".parse::<Mode>().is_err());
}

#[test]
fn numeric_and_exact_routes_agree() {
    let finder = RootFinder::default();
    let (cc, lambda) = (c(-0.5, 0.8), c(0.3, -0.4));
    for n in 1..=4 {
        let exact = values(&a_from_c(n, cc, lambda).unwrap());
        let numeric = values(&a_from_c_numeric(n, cc, lambda, &finder).unwrap());
        assert!(matching_distance(&exact, &numeric) < 1e-10, "n = {n}");
    }
    for n in 1..=3 {
        let exact = values(&c_from_a(n, cc, lambda).unwrap());
        let numeric = values(&c_from_a_numeric(n, cc, lambda, &finder).unwrap());
        assert!(matching_distance(&exact, &numeric) < 1e-10, "n = {n}");
    }
}

/// Some fixed point of the map has multiplier `lambda`, per the oracle.
fn oracle_confirms(
    n: u32,
    mode: Mode,
    fixed: Complex64,
    value: Complex64,
    lambda: Complex64,
) -> bool {
    let params = mode.params(n, fixed, value).unwrap();
    let (_, gap) = Oracle::default()
        .closest_multiplier(&params, lambda)
        .unwrap()
        .expect("map has fixed points");
    gap < 1e-6 * (1.0 + lambda.norm())
}

fn complex_in_box(limit: f64) -> impl proptest::strategy::Strategy<Value = Complex64> {
    (-limit..limit, -limit..limit).prop_map(|(re, im)| Complex64::new(re, im))
}

fn lambda_in_disk(radius: f64) -> impl proptest::strategy::Strategy<Value = Complex64> {
    (0.0..radius, 0.0..std::f64::consts::TAU).prop_map(|(m, t)| Complex64::from_polar(m, t))
}

proptest! {
    #[test]
    fn a_from_c_round_trip(n in 1u32..=4, cc in complex_in_box(2.0), lambda in lambda_in_disk(0.95)) {
        prop_assume!(cc.norm() > 1e-6);
        for b in a_from_c(n, cc, lambda).unwrap() {
            prop_assert!(b.residual_c < 1e-9 * (1.0 + cc.norm()));
            prop_assert!(b.residual_a < 1e-9 * (1.0 + b.value.norm()));
            prop_assert!(oracle_confirms(n, Mode::AFromC, cc, b.value, lambda), "branch {:?}", b);
        }
    }

    #[test]
    fn c_from_a_round_trip(n in 1u32..=3, a in complex_in_box(2.0), lambda in lambda_in_disk(0.95)) {
        prop_assume!(a.norm() > 1e-6);
        for b in c_from_a(n, a, lambda).unwrap() {
            prop_assert!(b.residual_c < 1e-9 * (1.0 + b.value.norm()));
            prop_assert!(b.residual_a < 1e-9 * (1.0 + a.norm()));
            prop_assert!(oracle_confirms(n, Mode::CFromA, a, b.value, lambda), "branch {:?}", b);
            let alt = c_of_xi_via_a(n, b.xi, a, lambda);
            prop_assert!((alt - b.value).norm() < 1e-10 * (1.0 + b.value.norm()));
        }
    }

    #[test]
    fn xi_from_a_quartic_residuals(a in complex_in_box(1.0), lambda in complex_in_box(1.0)) {
        prop_assume!(a.norm() > 1e-6);
        for xi in xi_from_a(2, a, lambda).unwrap() {
            prop_assert!(a_side(2, xi, a, lambda).norm() < 1e-9);
        }
    }

    #[test]
    fn appendix_identity_on_shell(n in 1u32..=4, cc in complex_in_box(2.0), lambda in lambda_in_disk(1.0)) {
        prop_assume!((1.0 - lambda).norm() > 1e-3);
        for xi in xi_from_c(n, cc, lambda).unwrap() {
            prop_assert!(appendix_identity_check(n, xi, cc, lambda) < 1e-10);
        }
    }

    #[test]
    fn special_cases_round_trip(n in 2u32..=5, lambda in lambda_in_disk(0.95)) {
        prop_assume!(lambda.norm() > 1e-3);
        for b in special_a_zero(n, lambda).unwrap() {
            prop_assert!(b.residual_c < 1e-12 && b.residual_a < 1e-12);
            prop_assert!(oracle_confirms(n, Mode::AZero, r(0.0), b.value, lambda));
        }
        for b in special_c_zero(n, lambda).unwrap() {
            prop_assert!(b.residual_c < 1e-12 && b.residual_a < 1e-12);
            prop_assert!(oracle_confirms(n, Mode::CZero, r(0.0), b.value, lambda));
        }
    }

    #[test]
    fn large_a_approximation_is_exact_at_zero_multiplier(n in 4u32..=7, a in complex_in_box(3.0)) {
        prop_assume!(a.norm() > 1e-6);
        for b in approx_c_from_a_large(n, a, r(0.0), &ValidityGate::default()).unwrap() {
            prop_assert!(b.residual_a < 1e-12 * (1.0 + a.norm()));
        }
    }
}
