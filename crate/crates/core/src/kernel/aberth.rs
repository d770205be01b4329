//! Aberth–Ehrlich simultaneous iteration.

use num_complex::Complex64;
use serde::Serialize;

use super::poly::Polynomial;
use crate::error::{Error, Result};

pub const DEFAULT_MAX_ITER: usize = 500;

/// Angular offset of the initial guesses. Irrational with respect to the
/// circle so that `z^m - w` style polynomials do not stall on symmetry.
const START_ANGLE: f64 = 0.4;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RootSet {
    pub roots: Vec<Complex64>,
    /// `max |p(r)|` over the returned roots, on the caller's polynomial.
    pub max_residual: f64,
    pub iterations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootFinder {
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for RootFinder {
    fn default() -> Self {
        Self {
            tol: 1e-14,
            max_iter: DEFAULT_MAX_ITER,
        }
    }
}

impl RootFinder {
    pub fn solve(&self, p: &Polynomial) -> Result<RootSet> {
        find_all_roots_with(p, self.tol, self.max_iter)
    }
}

/// All roots of `p` with the default iteration bound.
pub fn find_all_roots(p: &Polynomial, tol: f64) -> Result<RootSet> {
    find_all_roots_with(p, tol, DEFAULT_MAX_ITER)
}

/// All roots of `p` by Aberth–Ehrlich iteration.
///
/// A root stops moving once its correction is below `tol` (relative to
/// `max(1, |z|)`) or once `|p(z)|` is within the rounding noise of a Horner
/// evaluation at `z`. The second test is what lets multiple roots terminate:
/// their corrections never drop below the noise floor.
pub fn find_all_roots_with(p: &Polynomial, tol: f64, max_iter: usize) -> Result<RootSet> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidArgument(
            "root tolerance must be positive".into(),
        ));
    }
    let degree = p.degree();
    let lead = p.leading();
    let monic = Polynomial::new(p.coeffs().iter().map(|c| c / lead).collect())?;

    if degree == 1 {
        let root = -monic.coeffs()[0];
        return finish(p, vec![root], 0);
    }

    let radius = 1.0
        + monic.coeffs()[..degree]
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max);
    let mut roots: Vec<Complex64> = (0..degree)
        .map(|k| {
            let angle = 2.0 * std::f64::consts::PI * k as f64 / degree as f64 + START_ANGLE;
            Complex64::from_polar(radius, angle)
        })
        .collect();
    let mut done = vec![false; degree];

    for iteration in 1..=max_iter {
        for i in 0..degree {
            if done[i] {
                continue;
            }
            let z = roots[i];
            let (value, slope) = monic.horner_with_derivative(z);
            if value.norm() <= 4.0 * f64::EPSILON * monic.magnitude_bound(z) {
                done[i] = true;
                continue;
            }
            let repulsion: Complex64 = roots
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &other)| (z - other).inv())
                .sum();
            let denom = slope - value * repulsion;
            let step = if denom.norm() == 0.0 || !denom.is_finite() {
                // flat spot: kick the iterate off it
                Complex64::from_polar(tol.sqrt() * (1.0 + z.norm()), START_ANGLE * (i + 1) as f64)
            } else {
                value / denom
            };
            roots[i] = z - step;
            if step.norm() <= tol * z.norm().max(1.0) {
                done[i] = true;
            }
        }
        if done.iter().all(|&d| d) {
            return finish(p, roots, iteration);
        }
        if roots.iter().any(|r| !r.is_finite()) {
            break;
        }
    }

    let max_residual = residual(p, &roots);
    Err(Error::NoConvergence {
        iterations: max_iter,
        roots,
        max_residual,
    })
}

fn residual(p: &Polynomial, roots: &[Complex64]) -> f64 {
    roots
        .iter()
        .map(|&r| p.horner(r).norm())
        .fold(0.0, f64::max)
}

fn finish(p: &Polynomial, roots: Vec<Complex64>, iterations: usize) -> Result<RootSet> {
    let max_residual = residual(p, &roots);
    if !max_residual.is_finite() {
        return Err(Error::NonFinite("root residual"));
    }
    Ok(RootSet {
        roots,
        max_residual,
        iterations,
    })
}
