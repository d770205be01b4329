use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::lambda_on_circle;
use crate::error::{Error, Result};
use crate::relations::{Mode, RelationSolver};

/// Rings stop this far short of the unit circle so every pushed point is
/// strictly attracting.
pub const DISK_MARGIN: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PushforwardPoint {
    pub lambda: Complex64,
    pub branch_k: usize,
    pub value: Complex64,
}

/// Branch values over `rings` concentric circles `|lambda| = (i/rings)(1 - DISK_MARGIN)`,
/// `i = 1..=rings`, each sampled at `samples` angles. Samples where the
/// relation fails are skipped. Output is ring-major, then angle, then branch.
pub fn pushforward_disk(
    solver: &RelationSolver,
    n: u32,
    mode: Mode,
    fixed: Complex64,
    rings: usize,
    samples: usize,
) -> Result<Vec<PushforwardPoint>> {
    if rings == 0 || samples == 0 {
        return Err(Error::InvalidArgument(
            "pushforward needs at least one ring and one sample".into(),
        ));
    }
    // surface unsupported degrees and modes up front rather than as an empty set
    solver
        .evaluate(n, mode, fixed, Complex64::new(0.0, 0.0))
        .map(drop)
        .or_else(|e| match e {
            Error::Unsupported { .. } | Error::InvalidArgument(_) | Error::NonFinite(_) => Err(e),
            _ => Ok(()),
        })?;
    let points = (0..rings * samples)
        .into_par_iter()
        .flat_map_iter(|idx| {
            let (ring, j) = (idx / samples + 1, idx % samples);
            let radius = ring as f64 / rings as f64 * (1.0 - DISK_MARGIN);
            let lambda = lambda_on_circle(j, samples, radius);
            let branches = solver
                .evaluate(n, mode, fixed, lambda)
                .map(|ev| ev.branches)
                .unwrap_or_default();
            branches.into_iter().map(move |b| PushforwardPoint {
                lambda,
                branch_k: b.k,
                value: b.value,
            })
        })
        .collect();
    Ok(points)
}
