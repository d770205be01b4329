//! Relations between the parameters `a`, `c` and the multiplier `lambda` of a
//! fixed point.
//!
//! Everything here goes through the auxiliary unknown `xi`, which is the fixed
//! point itself. Adding and subtracting the fixed-point equation
//! `z = z^n + a/z^n + c` and the multiplier equation
//! `(lambda/n) z = z^n - a/z^n` gives the two master equations
//!
//! ```text
//! c side:  2 xi^n - (1 + lambda/n) xi + c = 0
//! a side:  xi^{2n} - (lambda/n) xi^{n+1} - a = 0
//! ```
//!
//! so solving one of them for `xi` and substituting into the other expresses
//! `a` through `c` (or `c` through `a`). Each root `xi_k` is one branch.

mod approx;
mod dispatch;
mod special;

pub use approx::{
    a_validity_ratio, approx_a_from_c_large, approx_a_from_c_small, approx_c_from_a_large,
    approx_c_from_a_small, c_validity_ratio, ValidityGate,
};
pub use dispatch::{ApproxRegime, Evaluation, Mode, RelationSolver, Route, Strategy};
pub use special::{special_a_zero, special_c_zero};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::kernel::{Polynomial, RootFinder};
use crate::map::is_zero;
use crate::solvers::{solve_cubic, solve_quadratic, solve_quartic};

/// One solution branch of a parameter relation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BranchedParameter {
    pub k: usize,
    pub xi: Complex64,
    /// The computed `a_k` or `c_k`.
    pub value: Complex64,
    /// `|2 xi^n - (1 + lambda/n) xi + c|`.
    pub residual_c: f64,
    /// `|xi^{2n} - (lambda/n) xi^{n+1} - a|`.
    pub residual_a: f64,
}

/// Left-hand side of the c-side master equation.
pub fn c_side(n: u32, xi: Complex64, c: Complex64, lambda: Complex64) -> Complex64 {
    2.0 * xi.powu(n) - (1.0 + lambda / f64::from(n)) * xi + c
}

/// Left-hand side of the a-side master equation.
pub fn a_side(n: u32, xi: Complex64, a: Complex64, lambda: Complex64) -> Complex64 {
    xi.powu(2 * n) - lambda / f64::from(n) * xi.powu(n + 1) - a
}

/// `a = xi^{2n} - (lambda/n) xi^{n+1}`.
pub fn a_of_xi(n: u32, xi: Complex64, lambda: Complex64) -> Complex64 {
    a_side(n, xi, Complex64::new(0.0, 0.0), lambda)
}

/// `c = (1 + lambda/n) xi - 2 xi^n`.
pub fn c_of_xi(n: u32, xi: Complex64, lambda: Complex64) -> Complex64 {
    (1.0 + lambda / f64::from(n)) * xi - 2.0 * xi.powu(n)
}

/// `c = (1 - lambda/n) xi - 2a / xi^n`, the same quantity eliminated the
/// other way. Equal to [`c_of_xi`] whenever `xi` solves the a-side equation.
pub fn c_of_xi_via_a(n: u32, xi: Complex64, a: Complex64, lambda: Complex64) -> Complex64 {
    (1.0 - lambda / f64::from(n)) * xi - 2.0 * a / xi.powu(n)
}

pub(crate) fn branch(
    k: usize,
    n: u32,
    xi: Complex64,
    a: Complex64,
    c: Complex64,
    lambda: Complex64,
    value: Complex64,
) -> Result<BranchedParameter> {
    if !(value.is_finite() && xi.is_finite()) {
        return Err(Error::NonFinite("branch value"));
    }
    Ok(BranchedParameter {
        k,
        xi,
        value,
        residual_c: c_side(n, xi, c, lambda).norm(),
        residual_a: a_side(n, xi, a, lambda).norm(),
    })
}

fn check_inputs(values: &[Complex64]) -> Result<()> {
    for &v in values {
        crate::error::finite(v, "relation input")?;
    }
    Ok(())
}

/// All `n` roots `xi` of the c-side equation, `1 <= n <= 4`.
pub fn xi_from_c(n: u32, c: Complex64, lambda: Complex64) -> Result<Vec<Complex64>> {
    check_inputs(&[c, lambda])?;
    let nf = f64::from(n);
    let slope = 1.0 + lambda / nf;
    let half_c = c / 2.0;
    let zero = Complex64::new(0.0, 0.0);
    let roots = match n {
        1 => {
            let denom = 1.0 - lambda;
            if denom.norm() <= f64::EPSILON {
                return Err(Error::Pole("lambda = 1 with n = 1"));
            }
            vec![-c / denom]
        }
        2 => solve_quadratic(-slope / 2.0, half_c)?.roots,
        3 => solve_cubic(zero, -slope / 2.0, half_c)?.roots,
        4 => solve_quartic(zero, zero, -slope / 2.0, half_c)?.roots,
        _ => {
            return Err(Error::Unsupported {
                operation: "exact xi from c",
                n,
            })
        }
    };
    Ok(roots)
}

/// All roots `xi` of the a-side equation, `1 <= n <= 3`, `a != 0`.
///
/// For `n = 3` the equation is a cubic in `w = xi^2`; the six branches are
/// `+sqrt(w_j), -sqrt(w_j)` for `j = 0, 1, 2`.
pub fn xi_from_a(n: u32, a: Complex64, lambda: Complex64) -> Result<Vec<Complex64>> {
    check_inputs(&[a, lambda])?;
    if is_zero(a) {
        return Err(Error::ZeroParameter("a"));
    }
    let zero = Complex64::new(0.0, 0.0);
    let roots = match n {
        // xi^2 - lambda xi^2 - a = 0
        1 => {
            let denom = 1.0 - lambda;
            if denom.norm() <= f64::EPSILON {
                return Err(Error::Pole("lambda = 1 with n = 1"));
            }
            solve_quadratic(zero, -a / denom)?.roots
        }
        2 => solve_quartic(-lambda / 2.0, zero, zero, -a)?.roots,
        3 => {
            let squares = solve_cubic(-lambda / 3.0, zero, -a)?.roots;
            let mut roots = Vec::with_capacity(6);
            for w in squares {
                let s = crate::kernel::principal_root(w, 2)?;
                roots.push(s);
                roots.push(-s);
            }
            roots
        }
        _ => {
            return Err(Error::Unsupported {
                operation: "exact xi from a",
                n,
            })
        }
    };
    Ok(roots)
}

/// Branches `a_k` for fixed `c != 0` and multiplier `lambda`, `1 <= n <= 4`.
pub fn a_from_c(n: u32, c: Complex64, lambda: Complex64) -> Result<Vec<BranchedParameter>> {
    if is_zero(c) {
        return Err(Error::ZeroParameter("c"));
    }
    let xis = xi_from_c(n, c, lambda)?;
    xis.into_iter()
        .enumerate()
        .map(|(k, xi)| {
            let value = if n == 1 {
                c * c / (1.0 - lambda)
            } else {
                a_of_xi(n, xi, lambda)
            };
            branch(k, n, xi, value, c, lambda, value)
        })
        .collect()
}

/// Branches `c_k` for fixed `a != 0` and multiplier `lambda`, `1 <= n <= 3`.
pub fn c_from_a(n: u32, a: Complex64, lambda: Complex64) -> Result<Vec<BranchedParameter>> {
    check_inputs(&[a, lambda])?;
    if is_zero(a) {
        return Err(Error::ZeroParameter("a"));
    }
    if n == 1 {
        let denom = 1.0 - lambda;
        if denom.norm() <= f64::EPSILON {
            return Err(Error::Pole("lambda = 1 with n = 1"));
        }
        let root = crate::kernel::principal_root(a * denom, 2)?;
        return [root, -root]
            .into_iter()
            .enumerate()
            .map(|(k, value)| branch(k, n, -value / denom, a, value, lambda, value))
            .collect();
    }
    if n > 3 {
        return Err(Error::Unsupported {
            operation: "exact c from a",
            n,
        });
    }
    let xis = xi_from_a(n, a, lambda)?;
    xis.into_iter()
        .enumerate()
        .map(|(k, xi)| {
            let value = c_of_xi(n, xi, lambda);
            branch(k, n, xi, a, value, lambda, value)
        })
        .collect()
}

/// Branches `a_k` by root-finding the c-side equation, for any `n`.
/// Branch order follows the root finder and carries no continuity promise.
pub fn a_from_c_numeric(
    n: u32,
    c: Complex64,
    lambda: Complex64,
    finder: &RootFinder,
) -> Result<Vec<BranchedParameter>> {
    check_inputs(&[c, lambda])?;
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let mut coeffs = vec![Complex64::new(0.0, 0.0); n as usize + 1];
    coeffs[n as usize] += 2.0;
    coeffs[1] -= 1.0 + lambda / f64::from(n);
    coeffs[0] += c;
    let poly = Polynomial::new(coeffs).map_err(|_| Error::Pole("c-side equation degenerates"))?;
    finder
        .solve(&poly)?
        .roots
        .into_iter()
        .enumerate()
        .map(|(k, xi)| {
            let value = a_of_xi(n, xi, lambda);
            branch(k, n, xi, value, c, lambda, value)
        })
        .collect()
}

/// Branches `c_k` by root-finding the a-side equation, for any `n`.
pub fn c_from_a_numeric(
    n: u32,
    a: Complex64,
    lambda: Complex64,
    finder: &RootFinder,
) -> Result<Vec<BranchedParameter>> {
    check_inputs(&[a, lambda])?;
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    if is_zero(a) {
        return Err(Error::ZeroParameter("a"));
    }
    let n_us = n as usize;
    let mut coeffs = vec![Complex64::new(0.0, 0.0); 2 * n_us + 1];
    coeffs[2 * n_us] += 1.0;
    coeffs[n_us + 1] -= lambda / f64::from(n);
    coeffs[0] -= a;
    let poly = Polynomial::new(coeffs).map_err(|_| Error::Pole("a-side equation degenerates"))?;
    finder
        .solve(&poly)?
        .roots
        .into_iter()
        .enumerate()
        .map(|(k, xi)| {
            let value = c_of_xi(n, xi, lambda);
            branch(k, n, xi, a, value, lambda, value)
        })
        .collect()
}

/// `|a_1 - a_2|` for the two ways of writing `a` through an on-shell `xi`:
/// `a_1 = 1/4 [xi(1 + lambda/n) - c][xi(1 - lambda/n) - c]` and
/// `a_2 = 1/2 xi^n [(1 - lambda/n) xi - c]`. They coincide exactly when `xi`
/// solves the c-side equation.
pub fn appendix_identity_check(n: u32, xi: Complex64, c: Complex64, lambda: Complex64) -> f64 {
    let ratio = lambda / f64::from(n);
    let product = 0.25 * (xi * (1.0 + ratio) - c) * (xi * (1.0 - ratio) - c);
    let half_power = 0.5 * xi.powu(n) * ((1.0 - ratio) * xi - c);
    (product - half_power).norm()
}

#[cfg(test)]
mod tests;
