//! Seeded self-consistency suites. Every closed form is checked against
//! something computed independently: relation branches against the oracle's
//! fixed-point multipliers, closed-form roots against the iterative root
//! finder, the cardioid against its polynomial.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use ratmap::atlas::lambda_on_circle;
use ratmap::kernel::{find_all_roots, hausdorff_distance, Polynomial};
use ratmap::oracle::Oracle;
use ratmap::relations::{
    a_from_c, appendix_identity_check, approx_a_from_c_large, approx_a_from_c_small, c_from_a,
    special_a_zero, xi_from_c, BranchedParameter, Mode, ValidityGate,
};
use ratmap::solvers::{solve_cubic, solve_quadratic, solve_quartic};

pub const ROUND_TRIP_TOL: f64 = 1e-6;
pub const APPENDIX_TOL: f64 = 1e-10;
pub const SOLVER_TOL: f64 = 1e-8;
pub const CARDIOID_TOL: f64 = 1e-12;
pub const APPROX_LARGE_LIMIT: f64 = 0.15;
pub const APPROX_SMALL_LIMIT: f64 = 0.01;

const LAMBDA_RADIUS: f64 = 0.95;
const PARAM_HALF_WIDTH: f64 = 2.0;
const COEFF_RADIUS: f64 = 10.0;

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub checks: usize,
    pub failures: usize,
    /// Largest error seen, in the suite's own measure.
    pub worst: f64,
    pub limit: f64,
    pub measure: &'static str,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.checks > 0
    }

    fn from_errors(name: String, measure: &'static str, limit: f64, errors: &[f64]) -> Self {
        // NaN counts as a failure and poisons `worst`
        let failures = errors.iter().filter(|e| e.is_nan() || **e >= limit).count();
        let worst = errors.iter().copied().fold(
            0.0,
            |m: f64, e| if e.is_nan() { f64::NAN } else { m.max(e) },
        );
        Self {
            name,
            checks: errors.len(),
            failures,
            worst,
            limit,
            measure,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub trials: usize,
    pub seed: u64,
    pub match_tol: f64,
}

fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

fn random_lambda(r: &mut ChaCha8Rng) -> Complex64 {
    // uniform on the disk of radius LAMBDA_RADIUS
    let radius = LAMBDA_RADIUS * r.gen::<f64>().sqrt();
    Complex64::from_polar(radius, r.gen_range(0.0..TAU))
}

fn random_param(r: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(
        r.gen_range(-PARAM_HALF_WIDTH..PARAM_HALF_WIDTH),
        r.gen_range(-PARAM_HALF_WIDTH..PARAM_HALF_WIDTH),
    )
}

fn random_coeff(r: &mut ChaCha8Rng) -> Complex64 {
    Complex64::from_polar(COEFF_RADIUS * r.gen::<f64>().sqrt(), r.gen_range(0.0..TAU))
}

/// Relative gap between `lambda` and the nearest oracle multiplier of the
/// map a branch describes; infinite when the oracle has nothing to offer.
pub fn multiplier_gap(
    oracle: &Oracle,
    n: u32,
    mode: Mode,
    fixed: Complex64,
    lambda: Complex64,
    branch: &BranchedParameter,
) -> f64 {
    let Ok(params) = mode.params(n, fixed, branch.value) else {
        return f64::INFINITY;
    };
    match oracle.closest_multiplier(&params, lambda) {
        Ok(Some((_, gap))) => gap / lambda.norm().max(1.0),
        _ => f64::INFINITY,
    }
}

pub fn round_trip(n: u32, opts: &VerifyOptions, oracle: &Oracle) -> SuiteReport {
    let mut r = rng(opts.seed, u64::from(n));
    let inputs: Vec<(Complex64, Complex64)> = (0..opts.trials)
        .map(|_| (random_param(&mut r), random_lambda(&mut r)))
        .collect();
    let errors: Vec<f64> = inputs
        .par_iter()
        .flat_map_iter(|&(fixed, lambda)| {
            let mut errs = Vec::new();
            let mut check =
                |mode: Mode, branches: ratmap::Result<Vec<BranchedParameter>>| match branches {
                    Ok(bs) => errs.extend(
                        bs.iter()
                            .map(|b| multiplier_gap(oracle, n, mode, fixed, lambda, b)),
                    ),
                    Err(_) => errs.push(f64::INFINITY),
                };
            check(Mode::AFromC, a_from_c(n, fixed, lambda));
            if n <= 3 {
                check(Mode::CFromA, c_from_a(n, fixed, lambda));
            }
            errs
        })
        .collect();
    let limit = opts.match_tol;
    SuiteReport::from_errors(
        format!("round-trip n={n}"),
        "relative multiplier gap",
        limit,
        &errors,
    )
}

pub fn appendix(n: u32, opts: &VerifyOptions) -> SuiteReport {
    let mut r = rng(opts.seed, 100 + u64::from(n));
    let inputs: Vec<(Complex64, Complex64)> = (0..opts.trials)
        .map(|_| (random_param(&mut r), random_lambda(&mut r)))
        .collect();
    let errors: Vec<f64> = inputs
        .par_iter()
        .flat_map_iter(|&(c, lambda)| match xi_from_c(n, c, lambda) {
            Ok(xis) => xis
                .into_iter()
                .map(|xi| appendix_identity_check(n, xi, c, lambda))
                .collect(),
            Err(_) => vec![f64::INFINITY],
        })
        .collect();
    SuiteReport::from_errors(
        format!("appendix identity n={n}"),
        "|a_product - a_power|",
        APPENDIX_TOL,
        &errors,
    )
}

pub fn solver_equivalence(degree: usize, trials: usize, seed: u64) -> SuiteReport {
    let mut r = rng(seed, 200 + degree as u64);
    let inputs: Vec<Vec<Complex64>> = (0..trials)
        .map(|_| (0..degree).map(|_| random_coeff(&mut r)).collect())
        .collect();
    let errors: Vec<f64> = inputs
        .par_iter()
        .map(|lower| {
            let closed = match degree {
                2 => solve_quadratic(lower[1], lower[0]),
                3 => solve_cubic(lower[2], lower[1], lower[0]),
                _ => solve_quartic(lower[3], lower[2], lower[1], lower[0]),
            };
            let oracle = Polynomial::monic(lower).and_then(|p| find_all_roots(&p, 1e-14));
            match (closed, oracle) {
                (Ok(c), Ok(o)) => hausdorff_distance(&c.roots, &o.roots),
                _ => f64::INFINITY,
            }
        })
        .collect();
    let name = ["quadratic", "cubic", "quartic"][degree - 2];
    SuiteReport::from_errors(
        format!("solver {name}"),
        "root-set Hausdorff distance",
        SOLVER_TOL,
        &errors,
    )
}

pub fn cardioid(samples: usize) -> SuiteReport {
    let mut errors: Vec<f64> = (0..samples)
        .into_par_iter()
        .map(|j| {
            let lambda = lambda_on_circle(j, samples, 1.0);
            match special_a_zero(2, lambda) {
                Ok(b) => (b[0].value - (lambda / 2.0 - lambda * lambda / 4.0)).norm(),
                Err(_) => f64::INFINITY,
            }
        })
        .collect();
    for (lambda, c) in [(1.0, 0.25), (-1.0, -0.75)] {
        let exact = special_a_zero(2, Complex64::new(lambda, 0.0))
            .map(|b| (b[0].value - Complex64::new(c, 0.0)).norm())
            .unwrap_or(f64::INFINITY);
        errors.push(exact);
    }
    SuiteReport::from_errors(
        "cardioid n=2".into(),
        "|c - (lambda/2 - lambda^2/4)|",
        CARDIOID_TOL,
        &errors,
    )
}

/// Truncation error of the n = 5 approximations at c = 16 (every branch,
/// relative to |c|) and c = 1/16 (the single branch, relative to |xi|).
pub fn approximations() -> [SuiteReport; 2] {
    let gate = ValidityGate::default();
    let samples = 256;
    let c_large = Complex64::new(16.0, 0.0);
    let c_small = Complex64::new(1.0 / 16.0, 0.0);
    let mut large = Vec::new();
    let mut small = Vec::new();
    for j in 0..samples {
        let lambda = lambda_on_circle(j, samples, 1.0);
        match approx_a_from_c_large(5, c_large, lambda, &gate) {
            Ok(bs) => large.extend(bs.iter().map(|b| b.residual_c / c_large.norm())),
            Err(_) => large.push(f64::INFINITY),
        }
        match approx_a_from_c_small(5, c_small, lambda, &gate) {
            Ok(b) => small.push(b.residual_c / b.xi.norm()),
            Err(_) => small.push(f64::INFINITY),
        }
    }
    [
        SuiteReport::from_errors(
            "approx n=5 c=16".into(),
            "residual_c / |c|",
            APPROX_LARGE_LIMIT,
            &large,
        ),
        SuiteReport::from_errors(
            "approx n=5 c=1/16".into(),
            "residual_c / |xi|",
            APPROX_SMALL_LIMIT,
            &small,
        ),
    ]
}

/// Every suite for the requested degrees.
pub fn run(ns: &[u32], opts: &VerifyOptions, oracle: &Oracle) -> Vec<SuiteReport> {
    let mut reports = Vec::new();
    for &n in ns {
        reports.push(round_trip(n, opts, oracle));
        reports.push(appendix(n, opts));
    }
    for degree in 2..=4 {
        reports.push(solver_equivalence(degree, opts.trials, opts.seed));
    }
    if ns.contains(&2) {
        reports.push(cardioid(opts.trials.max(4)));
    }
    reports.extend(approximations());
    reports
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts(trials: usize) -> VerifyOptions {
        VerifyOptions {
            trials,
            seed: 3,
            match_tol: ROUND_TRIP_TOL,
        }
    }

    #[test]
    fn small_run_passes_and_is_reproducible() {
        let oracle = Oracle::default();
        let first = run(&[1, 2, 3, 4], &opts(20), &oracle);
        let second = run(&[1, 2, 3, 4], &opts(20), &oracle);
        for (a, b) in first.iter().zip(&second) {
            assert!(a.passed(), "{a:?}");
            assert_eq!(a.worst.to_bits(), b.worst.to_bits());
        }
    }

    #[test]
    fn failures_are_counted() {
        let r = SuiteReport::from_errors("x".into(), "m", 1.0, &[0.5, 2.0, f64::NAN]);
        assert_eq!(r.failures, 2);
        assert!(r.worst.is_nan());
        assert!(!r.passed());
        assert!(!SuiteReport::from_errors("x".into(), "m", 1.0, &[]).passed());
    }
}
