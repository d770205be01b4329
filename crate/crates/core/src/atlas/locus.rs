use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::Window;
use crate::error::{Error, Result};
use crate::relations::{Mode, RelationSolver, Route};

pub const MIN_SAMPLES: usize = 4;

/// Jumps larger than this multiple of the median step trigger re-stitching.
const STITCH_FACTOR: f64 = 10.0;

/// `lambda_j = radius * e^{i 2 pi j / samples}`.
pub fn lambda_on_circle(j: usize, samples: usize, radius: f64) -> Complex64 {
    // exact quarter turns keep lambda = 1, i, -1, -i free of rounding
    if (4 * j).is_multiple_of(samples) {
        let quarter = [
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(-1.0, 0.0),
            Complex64::new(0.0, -1.0),
        ][(4 * j / samples) % 4];
        return quarter * radius;
    }
    Complex64::from_polar(radius, TAU * j as f64 / samples as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LocusSample {
    /// Index `j` of `lambda` on the sampling circle.
    pub index: usize,
    pub lambda: Complex64,
    pub value: Complex64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LocusCurve {
    pub branch_k: usize,
    /// Ordered by increasing `arg(lambda)` over `[0, 2 pi)`.
    pub samples: Vec<LocusSample>,
    /// Continuing the curve past `lambda = e^{i 2 pi}` lands on its own start.
    pub closed: bool,
}

impl LocusCurve {
    pub fn values(&self) -> impl Iterator<Item = Complex64> + '_ {
        self.samples.iter().map(|s| s.value)
    }

    /// Some sample lies outside `window` (unbounded ranges get clipped).
    pub fn exits(&self, window: &Window) -> bool {
        self.values().any(|v| !window.contains(v))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Locus {
    pub n: u32,
    pub mode: Mode,
    pub fixed: Complex64,
    pub samples: usize,
    /// Route of the first successful sample.
    pub route: Route,
    pub curves: Vec<LocusCurve>,
    /// Sample indices dropped because the relation failed there (poles,
    /// validity gates) or produced a different branch count.
    pub gaps: Vec<usize>,
    /// Number of samples at which branch identities were reassigned.
    pub stitches: usize,
}

/// Image of the unit `lambda` circle under every branch of `mode`, one curve
/// per branch.
///
/// Closed-form root order is not continuous in `lambda`: crossing a square-
/// or cube-root cut swaps branches. Curves are therefore followed by nearest
/// neighbour whenever a step exceeds ten times the median step.
pub fn boundary_locus(
    solver: &RelationSolver,
    n: u32,
    mode: Mode,
    fixed: Complex64,
    samples: usize,
) -> Result<Locus> {
    if samples < MIN_SAMPLES {
        return Err(Error::InvalidArgument(format!(
            "at least {MIN_SAMPLES} boundary samples are required"
        )));
    }
    let raw: Vec<Option<(Route, Vec<Complex64>)>> = (0..samples)
        .into_par_iter()
        .map(|j| {
            let lambda = lambda_on_circle(j, samples, 1.0);
            solver.evaluate(n, mode, fixed, lambda).ok().map(|ev| {
                let values = ev.branches.iter().map(|b| b.value).collect();
                (ev.route, values)
            })
        })
        .collect();

    let Some((route, branch_count)) = raw.iter().flatten().next().map(|(r, v)| (*r, v.len()))
    else {
        // surface the actual reason from the first sample
        solver.evaluate(n, mode, fixed, lambda_on_circle(0, samples, 1.0))?;
        return Err(Error::AllSamplesFailed(samples));
    };

    let mut gaps = Vec::new();
    let mut rows: Vec<(usize, &[Complex64])> = Vec::new();
    for (j, entry) in raw.iter().enumerate() {
        match entry {
            Some((_, values)) if values.len() == branch_count => rows.push((j, values)),
            _ => gaps.push(j),
        }
    }

    let threshold = STITCH_FACTOR * median_step(&rows);
    let mut order: Vec<usize> = (0..branch_count).collect();
    let mut curves: Vec<LocusCurve> = (0..branch_count)
        .map(|k| LocusCurve {
            branch_k: k,
            samples: Vec::with_capacity(rows.len()),
            closed: false,
        })
        .collect();
    let mut stitches = 0;
    let mut previous: Option<Vec<Complex64>> = None;
    for &(j, values) in &rows {
        if let Some(prev) = &previous {
            if jumps(prev, values, &order, threshold) {
                let next = nearest_assignment(prev, values);
                if next != order {
                    stitches += 1;
                    order = next;
                }
            }
        }
        let lambda = lambda_on_circle(j, samples, 1.0);
        let current: Vec<Complex64> = order.iter().map(|&idx| values[idx]).collect();
        for (curve, &value) in curves.iter_mut().zip(&current) {
            curve.samples.push(LocusSample {
                index: j,
                lambda,
                value,
            });
        }
        previous = Some(current);
    }

    // continue once more onto the first row to see where each curve lands
    if let (Some(last), Some(&(_, first))) = (&previous, rows.first()) {
        let wrap = if jumps(last, first, &order, threshold) {
            nearest_assignment(last, first)
        } else {
            order.clone()
        };
        let scale = first.iter().map(|v| v.norm()).fold(1.0, f64::max);
        for (k, curve) in curves.iter_mut().enumerate() {
            let start = curve.samples[0].value;
            curve.closed = (first[wrap[k]] - start).norm() <= 1e-6 * scale;
        }
    }

    Ok(Locus {
        n,
        mode,
        fixed,
        samples,
        route,
        curves,
        gaps,
        stitches,
    })
}

fn median_step(rows: &[(usize, &[Complex64])]) -> f64 {
    let mut steps: Vec<f64> = rows
        .windows(2)
        .flat_map(|pair| pair[0].1.iter().zip(pair[1].1).map(|(a, b)| (a - b).norm()))
        .filter(|s| s.is_finite())
        .collect();
    if steps.is_empty() {
        return f64::INFINITY;
    }
    let mid = steps.len() / 2;
    let (_, median, _) = steps.select_nth_unstable_by(mid, f64::total_cmp);
    // constant curves: fall back to a scale-relative floor
    median.max(1e-12)
}

fn jumps(prev: &[Complex64], values: &[Complex64], order: &[usize], threshold: f64) -> bool {
    prev.iter()
        .zip(order)
        .any(|(p, &idx)| (values[idx] - p).norm() > threshold)
}

/// Greedy closest-pair matching of previous curve ends to new raw values:
/// `result[k]` is the raw index continuing curve `k`.
fn nearest_assignment(prev: &[Complex64], values: &[Complex64]) -> Vec<usize> {
    let mut pairs: Vec<(f64, usize, usize)> = Vec::with_capacity(prev.len() * values.len());
    for (k, p) in prev.iter().enumerate() {
        for (idx, v) in values.iter().enumerate() {
            pairs.push(((v - p).norm(), k, idx));
        }
    }
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)).then(x.2.cmp(&y.2)));
    let mut result = vec![usize::MAX; prev.len()];
    let mut taken = vec![false; values.len()];
    for (_, k, idx) in pairs {
        if result[k] == usize::MAX && !taken[idx] {
            result[k] = idx;
            taken[idx] = true;
        }
    }
    result
}
