//! Ground truth that never touches a closed form: every fixed point of a
//! concrete map, found from the cleared fixed-point polynomial, together with
//! its multiplier, its class, and plain orbit iteration.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::kernel::{dedup_roots, Polynomial, RootFinder, DEDUP_RADIUS};
use crate::map::{is_zero, MapParams};

/// Default band around `|lambda| = 0` and `|lambda| = 1`.
pub const CLASSIFY_TOL: f64 = 1e-9;

/// Roots of the cleared polynomial closer to the origin than this are
/// treated as artifacts of multiplying through by `z^n`.
pub const SPURIOUS_CUTOFF: f64 = 1e-9;

/// Rationally and irrationally neutral points are not told apart.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Classification {
    Superattracting,
    Attracting,
    Neutral,
    Repelling,
}

impl Classification {
    /// Superattracting or attracting.
    pub fn is_stable(self) -> bool {
        matches!(
            self,
            Classification::Superattracting | Classification::Attracting
        )
    }
}

impl std::fmt::Display for Classification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            Classification::Superattracting => "superattracting",
            Classification::Attracting => "attracting",
            Classification::Neutral => "neutral",
            Classification::Repelling => "repelling",
        };
        f.write_str(name)
    }
}

pub fn classify(lambda: Complex64) -> Classification {
    classify_with(lambda, CLASSIFY_TOL)
}

pub fn classify_with(lambda: Complex64, tol: f64) -> Classification {
    let modulus = lambda.norm();
    if modulus < tol {
        Classification::Superattracting
    } else if modulus < 1.0 - tol {
        Classification::Attracting
    } else if (modulus - 1.0).abs() <= tol {
        Classification::Neutral
    } else {
        Classification::Repelling
    }
}

/// A multiplier together with its class.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MultiplierSample {
    pub lambda: Complex64,
    pub classification: Classification,
}

impl MultiplierSample {
    pub fn new(lambda: Complex64) -> Self {
        Self {
            lambda,
            classification: classify(lambda),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FixedPointRecord {
    pub z: Complex64,
    pub lambda: Complex64,
    pub classification: Classification,
    /// `|R(z) - z|`.
    pub residual_fixed: f64,
    /// `|R'(z) - lambda|`; zero by construction, kept for audit output.
    pub residual_multiplier: f64,
    /// Number of polynomial roots merged into this record.
    pub multiplicity: usize,
}

/// Multiplier `R'(z)` of the map at `z`.
pub fn multiplier(z: Complex64, params: &MapParams) -> Result<Complex64> {
    params.derivative(z)
}

/// `(n / z)(z^n - a / z^n)`, the multiplier rewritten with the fixed-point
/// equation. Agrees with [`multiplier`] only at fixed points.
pub fn multiplier_at_fixed_point(z: Complex64, params: &MapParams) -> Result<Complex64> {
    if is_zero(z) {
        return Err(Error::OutsideDomain);
    }
    let zn = z.powu(params.n);
    Ok(f64::from(params.n) / z * (zn - params.a / zn))
}

/// Fixed-point polynomial. With a pole this is `z^n (R(z) - z)`, i.e.
/// `z^{2n} - z^{n+1} + c z^n + a`; without one it is `z^n - z + c`.
/// `None` when the equation has no solutions at all (constant polynomial).
pub fn fixed_point_polynomial(params: &MapParams) -> Result<Option<Polynomial>> {
    let n = params.n as usize;
    let one = Complex64::new(1.0, 0.0);
    let coeffs = if params.has_pole() {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); 2 * n + 1];
        coeffs[2 * n] += one;
        coeffs[n + 1] -= one;
        coeffs[n] += params.c;
        coeffs[0] += params.a;
        coeffs
    } else {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
        coeffs[n] += one;
        coeffs[1] -= one;
        coeffs[0] += params.c;
        coeffs
    };
    if coeffs[1..].iter().all(|c| is_zero(*c)) {
        return Ok(None);
    }
    Polynomial::new(coeffs).map(Some)
}

/// Fixed-point enumeration and membership tests with a tolerance policy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Oracle {
    pub finder: RootFinder,
    pub classify_tol: f64,
    pub spurious_cutoff: f64,
    pub dedup_radius: f64,
}

impl Default for Oracle {
    fn default() -> Self {
        Self {
            finder: RootFinder::default(),
            classify_tol: CLASSIFY_TOL,
            spurious_cutoff: SPURIOUS_CUTOFF,
            dedup_radius: DEDUP_RADIUS,
        }
    }
}

impl Oracle {
    /// Every fixed point of the map, merged by multiplicity, in root-finder
    /// order.
    pub fn fixed_points(&self, params: &MapParams) -> Result<Vec<FixedPointRecord>> {
        let Some(poly) = fixed_point_polynomial(params)? else {
            return Ok(Vec::new());
        };
        let found = self.finder.solve(&poly)?;
        let roots: Vec<Complex64> = if params.has_pole() {
            found
                .roots
                .into_iter()
                .filter(|z| z.norm() >= self.spurious_cutoff)
                .collect()
        } else {
            found.roots
        };
        if params.has_pole() && roots.is_empty() {
            return Err(Error::InvalidArgument(
                "every fixed-point candidate collapsed onto the pole at z = 0".into(),
            ));
        }
        dedup_roots(&roots, self.dedup_radius)
            .into_iter()
            .map(|cluster| {
                let z = cluster.center;
                let lambda = multiplier(z, params)?;
                Ok(FixedPointRecord {
                    z,
                    lambda,
                    classification: classify_with(lambda, self.classify_tol),
                    residual_fixed: (params.eval(z)? - z).norm(),
                    residual_multiplier: (params.derivative(z)? - lambda).norm(),
                    multiplicity: cluster.multiplicity,
                })
            })
            .collect()
    }

    /// The stable fixed point with the smallest `|lambda|`, if there is one.
    pub fn attracting_fixed_point(&self, params: &MapParams) -> Result<Option<FixedPointRecord>> {
        let records = self.fixed_points(params)?;
        Ok(records
            .into_iter()
            .filter(|r| r.lambda.norm() < 1.0 - self.classify_tol)
            .min_by(|x, y| x.lambda.norm().total_cmp(&y.lambda.norm())))
    }

    pub fn has_attracting_fixed_point(&self, params: &MapParams) -> Result<bool> {
        Ok(self.attracting_fixed_point(params)?.is_some())
    }

    /// The fixed point whose multiplier is closest to `lambda`, with the
    /// distance `|lambda_record - lambda|`.
    pub fn closest_multiplier(
        &self,
        params: &MapParams,
        lambda: Complex64,
    ) -> Result<Option<(FixedPointRecord, f64)>> {
        let records = self.fixed_points(params)?;
        Ok(records
            .into_iter()
            .map(|r| {
                let gap = (r.lambda - lambda).norm();
                (r, gap)
            })
            .min_by(|x, y| x.1.total_cmp(&y.1)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OrbitVerdict {
    ConvergedToFixedPoint,
    Diverged,
    EscapedToPole,
    Undecided,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrbitTrace {
    /// `z0, R(z0), R(R(z0)), ...`
    pub points: Vec<Complex64>,
    pub verdict: OrbitVerdict,
    pub limit: Option<Complex64>,
    /// Set when divergence was detected through a non-finite iterate.
    pub non_finite: bool,
}

pub const ESCAPE_RADIUS: f64 = 1e8;
pub const POLE_RADIUS: f64 = 1e-12;

/// Iterates `R` from `z0` for at most `max_steps` applications.
pub fn iterate_orbit(
    z0: Complex64,
    params: &MapParams,
    max_steps: usize,
    tol: f64,
) -> Result<OrbitTrace> {
    if max_steps == 0 {
        return Err(Error::InvalidArgument(
            "max_steps must be at least 1".into(),
        ));
    }
    if params.has_pole() && is_zero(z0) {
        return Err(Error::OutsideDomain);
    }
    let mut points = vec![z0];
    let mut z = z0;
    for _ in 0..max_steps {
        if params.has_pole() && z.norm() < POLE_RADIUS {
            return Ok(trace(points, OrbitVerdict::EscapedToPole, None, false));
        }
        let next = match params.eval(z) {
            Ok(next) => next,
            Err(Error::NonFinite(_)) => {
                return Ok(trace(points, OrbitVerdict::Diverged, None, true))
            }
            Err(e) => return Err(e),
        };
        points.push(next);
        if next.norm() > ESCAPE_RADIUS {
            return Ok(trace(points, OrbitVerdict::Diverged, None, false));
        }
        if (next - z).norm() < tol {
            let settled = params
                .eval(next)
                .map(|image| (image - next).norm() < 10.0 * tol)
                .unwrap_or(false);
            if settled {
                return Ok(trace(
                    points,
                    OrbitVerdict::ConvergedToFixedPoint,
                    Some(next),
                    false,
                ));
            }
        }
        z = next;
    }
    Ok(trace(points, OrbitVerdict::Undecided, None, false))
}

fn trace(
    points: Vec<Complex64>,
    verdict: OrbitVerdict,
    limit: Option<Complex64>,
    non_finite: bool,
) -> OrbitTrace {
    OrbitTrace {
        points,
        verdict,
        limit,
        non_finite,
    }
}
