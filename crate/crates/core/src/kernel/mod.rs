//! Complex roots with a fixed branch convention, polynomial evaluation, and a
//! simultaneous-iteration root finder used as the independent reference for
//! every closed-form path in the crate.

mod aberth;
mod poly;

pub use aberth::{find_all_roots, find_all_roots_with, RootFinder, RootSet, DEFAULT_MAX_ITER};
pub use poly::{poly_eval, Polynomial};

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{finite, Error, Result};

/// Distance under which two roots are considered the same root.
pub const DEDUP_RADIUS: f64 = 1e-7;

/// Principal argument in `(-pi, pi]`. A negative zero imaginary part is read
/// as zero so that the negative real axis always maps to `+pi`.
pub fn principal_arg(w: Complex64) -> f64 {
    let arg = w.im.atan2(w.re);
    if arg <= -PI {
        PI
    } else {
        arg
    }
}

/// Principal `m`-th root: modulus `|w|^(1/m)`, argument `Arg(w)/m`.
pub fn principal_root(w: Complex64, m: u32) -> Result<Complex64> {
    finite(w, "principal_root input")?;
    if m == 0 {
        return Err(Error::InvalidArgument(
            "root order must be at least 1".into(),
        ));
    }
    if w.re == 0.0 && w.im == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let root = match m {
        1 => w,
        2 => principal_sqrt(w),
        _ => {
            let modulus = w.norm().powf(1.0 / f64::from(m));
            Complex64::from_polar(modulus, principal_arg(w) / f64::from(m))
        }
    };
    finite(root, "principal_root output")
}

// Cancellation-free square root on the (-pi, pi] cut.
fn principal_sqrt(w: Complex64) -> Complex64 {
    let t = ((w.re.abs() + w.norm()) / 2.0).sqrt();
    if w.re >= 0.0 {
        Complex64::new(t, w.im / (2.0 * t))
    } else {
        // -0.0 imaginary part sits on the +pi side
        let im = if w.im < 0.0 { -t } else { t };
        Complex64::new(w.im.abs() / (2.0 * t), im)
    }
}

/// Unit root `e^{i 2 pi k / m}`, exact at the quarter turns.
pub fn unit_root(k: u32, m: u32) -> Complex64 {
    let k = k % m;
    if (4 * k).is_multiple_of(m) {
        match 4 * k / m {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        }
    } else {
        Complex64::from_polar(1.0, 2.0 * PI * f64::from(k) / f64::from(m))
    }
}

/// All `m` roots of `w`, `principal_root(w, m) * e^{i 2 pi k / m}` for
/// `k = 0..m` in ascending order.
pub fn all_roots(w: Complex64, m: u32) -> Result<Vec<Complex64>> {
    let base = principal_root(w, m)?;
    Ok((0..m).map(|k| base * unit_root(k, m)).collect())
}

/// A group of numerically coincident roots.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootCluster {
    pub center: Complex64,
    pub multiplicity: usize,
}

/// Clusters roots closer than `radius` (single linkage, input order), keeping
/// the centroid of each cluster.
pub fn dedup_roots(roots: &[Complex64], radius: f64) -> Vec<RootCluster> {
    let mut label: Vec<Option<usize>> = vec![None; roots.len()];
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    for start in 0..roots.len() {
        if label[start].is_some() {
            continue;
        }
        let id = clusters.len();
        label[start] = Some(id);
        let mut members = vec![start];
        let mut cursor = 0;
        while cursor < members.len() {
            let current = roots[members[cursor]];
            for other in 0..roots.len() {
                if label[other].is_none() && (roots[other] - current).norm() < radius {
                    label[other] = Some(id);
                    members.push(other);
                }
            }
            cursor += 1;
        }
        clusters.push(members);
    }
    clusters
        .into_iter()
        .map(|members| {
            let sum: Complex64 = members.iter().map(|&i| roots[i]).sum();
            RootCluster {
                center: sum / members.len() as f64,
                multiplicity: members.len(),
            }
        })
        .collect()
}

/// Symmetric Hausdorff distance between two finite point sets. Empty against
/// empty is zero; empty against non-empty is infinite.
pub fn hausdorff_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    if a.is_empty() && b.is_empty() {
        return 0.0;
    }
    if a.is_empty() || b.is_empty() {
        return f64::INFINITY;
    }
    let directed = |from: &[Complex64], to: &[Complex64]| {
        from.iter()
            .map(|p| {
                to.iter()
                    .map(|q| (p - q).norm())
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0, f64::max)
    };
    directed(a, b).max(directed(b, a))
}

/// Bottleneck distance between two equally sized multisets: the smallest
/// achievable worst-pair distance over all one-to-one matchings. Exhaustive,
/// so only meant for the handful of roots a closed-form solver returns.
pub fn matching_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    assert_eq!(a.len(), b.len(), "multisets must have equal size");
    assert!(a.len() <= 8, "exhaustive matching is limited to 8 points");
    fn search(
        a: &[Complex64],
        b: &[Complex64],
        used: &mut [bool],
        depth: usize,
        worst: f64,
        best: &mut f64,
    ) {
        if worst >= *best {
            return;
        }
        if depth == a.len() {
            *best = worst;
            return;
        }
        for j in 0..b.len() {
            if !used[j] {
                used[j] = true;
                let d = (a[depth] - b[j]).norm();
                search(a, b, used, depth + 1, worst.max(d), best);
                used[j] = false;
            }
        }
    }
    let mut best = f64::INFINITY;
    let mut used = vec![false; b.len()];
    search(a, b, &mut used, 0, 0.0, &mut best);
    if a.is_empty() {
        0.0
    } else {
        best
    }
}
