//! Dominant-balance approximations for degrees without a closed form.
//!
//! Each formula keeps two of the three terms of a master equation and is only
//! trusted when a magnitude ratio says the dropped term is negligible. The
//! ratios are asymptotic (`>>`, `<<`), so the cut-offs are configurable.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::{a_of_xi, branch, c_of_xi, BranchedParameter};
use crate::error::{finite, Error, Regime, Result};
use crate::kernel::principal_root;
use crate::map::is_zero;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidityGate {
    /// Minimum ratio for the dominant-parameter formulas.
    pub high: f64,
    /// Maximum ratio for the small-parameter formulas.
    pub low: f64,
}

impl Default for ValidityGate {
    fn default() -> Self {
        Self {
            high: 10.0,
            low: 0.1,
        }
    }
}

impl ValidityGate {
    fn require_dominant(&self, ratio: f64) -> Result<()> {
        if ratio >= self.high {
            Ok(())
        } else {
            Err(Error::ValidityGate {
                ratio,
                threshold: self.high,
                regime: Regime::Dominant,
            })
        }
    }

    fn require_negligible(&self, ratio: f64) -> Result<()> {
        if ratio <= self.low {
            Ok(())
        } else {
            Err(Error::ValidityGate {
                ratio,
                threshold: self.low,
                regime: Regime::Negligible,
            })
        }
    }
}

/// `|c| / (2^{1/(1-n)} |1 + lambda/n|^{n/(n-1)})`, the size of `c` against
/// the scale at which `2 xi^n` and `(1 + lambda/n) xi` balance.
pub fn a_validity_ratio(n: u32, c: Complex64, lambda: Complex64) -> f64 {
    let nf = f64::from(n);
    let scale = 2f64.powf(1.0 / (1.0 - nf)) * (1.0 + lambda / nf).norm().powf(nf / (nf - 1.0));
    c.norm() / scale
}

/// `|a| / |lambda/n|^{2n/(2n-1)}`; infinite for `lambda = 0`.
pub fn c_validity_ratio(n: u32, a: Complex64, lambda: Complex64) -> f64 {
    let nf = f64::from(n);
    let scale = (lambda / nf).norm().powf(2.0 * nf / (2.0 * nf - 1.0));
    a.norm() / scale
}

fn require_degree(n: u32, min: u32, operation: &'static str) -> Result<()> {
    if n < min {
        Err(Error::Unsupported { operation, n })
    } else {
        Ok(())
    }
}

/// Large `|c|`: `2 xi^n ~ -c`, so `xi_k = (c/2)^{1/n} e^{i(2k+1)pi/n}` for
/// `k = 0..n`, and `a_k = xi_k^{2n} - (lambda/n) xi_k^{n+1}`.
///
/// `residual_c` is the size of the dropped linear term, not rounding noise.
pub fn approx_a_from_c_large(
    n: u32,
    c: Complex64,
    lambda: Complex64,
    gate: &ValidityGate,
) -> Result<Vec<BranchedParameter>> {
    require_degree(n, 5, "approximate a from large c")?;
    finite(c, "c")?;
    finite(lambda, "lambda")?;
    gate.require_dominant(a_validity_ratio(n, c, lambda))?;
    let base = principal_root(c / 2.0, n)?;
    let nf = f64::from(n);
    (0..n)
        .map(|k| {
            let xi = base * Complex64::from_polar(1.0, f64::from(2 * k + 1) * PI / nf);
            let value = a_of_xi(n, xi, lambda);
            branch(k as usize, n, xi, value, c, lambda, value)
        })
        .collect()
}

/// Small `|c|`: `xi ~ c / (1 + lambda/n)`, one branch.
pub fn approx_a_from_c_small(
    n: u32,
    c: Complex64,
    lambda: Complex64,
    gate: &ValidityGate,
) -> Result<BranchedParameter> {
    require_degree(n, 5, "approximate a from small c")?;
    finite(c, "c")?;
    finite(lambda, "lambda")?;
    if is_zero(c) {
        return Err(Error::ZeroParameter("c"));
    }
    let slope = 1.0 + lambda / f64::from(n);
    if slope.norm() <= f64::EPSILON {
        return Err(Error::Pole("lambda = -n"));
    }
    gate.require_negligible(a_validity_ratio(n, c, lambda))?;
    let xi = c / slope;
    let value = a_of_xi(n, xi, lambda);
    branch(0, n, xi, value, c, lambda, value)
}

/// Large `|a|` (or `lambda = 0`, where it is exact): `xi^{2n} ~ a`, so
/// `xi_k = a^{1/(2n)} e^{i(k+1)pi/n}` for `k = 0..2n`, and
/// `c_k = (1 + lambda/n) xi_k - 2 xi_k^n`.
pub fn approx_c_from_a_large(
    n: u32,
    a: Complex64,
    lambda: Complex64,
    gate: &ValidityGate,
) -> Result<Vec<BranchedParameter>> {
    require_degree(n, 4, "approximate c from large a")?;
    finite(a, "a")?;
    finite(lambda, "lambda")?;
    if is_zero(a) {
        return Err(Error::ZeroParameter("a"));
    }
    if !is_zero(lambda) {
        gate.require_dominant(c_validity_ratio(n, a, lambda))?;
    }
    let base = principal_root(a, 2 * n)?;
    let nf = f64::from(n);
    (0..2 * n)
        .map(|k| {
            let xi = base * Complex64::from_polar(1.0, f64::from(k + 1) * PI / nf);
            let value = c_of_xi(n, xi, lambda);
            branch(k as usize, n, xi, a, value, lambda, value)
        })
        .collect()
}

/// Small `|a|`: `xi ~ (-n a / lambda)^{1/(n+1)}` (principal root), one branch.
pub fn approx_c_from_a_small(
    n: u32,
    a: Complex64,
    lambda: Complex64,
    gate: &ValidityGate,
) -> Result<BranchedParameter> {
    require_degree(n, 4, "approximate c from small a")?;
    finite(a, "a")?;
    finite(lambda, "lambda")?;
    if is_zero(a) {
        return Err(Error::ZeroParameter("a"));
    }
    if is_zero(lambda) {
        return Err(Error::Pole("lambda = 0"));
    }
    gate.require_negligible(c_validity_ratio(n, a, lambda))?;
    let xi = principal_root(-f64::from(n) * a / lambda, n + 1)?;
    let value = c_of_xi(n, xi, lambda);
    branch(0, n, xi, a, value, lambda, value)
}
