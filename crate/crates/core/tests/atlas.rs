use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ratmap::atlas::{
    boundary_locus, figures, locus_csv, pushforward_disk, region_json, region_scan, Cell,
    FreeParameter, RegionRun, ScanTemplate, Window, DEFAULT_BUDGET,
};
use ratmap::oracle::Oracle;
use ratmap::relations::{Mode, RelationSolver};
use ratmap::Complex64;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn disk_images_are_stable_parameters() {
    let solver = RelationSolver::default();
    let oracle = Oracle::default();
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..40 {
        let n = rng.gen_range(1..=4u32);
        let mode = if rng.gen_bool(0.5) {
            Mode::AFromC
        } else {
            Mode::CFromA
        };
        let fixed = Complex64::from_polar(rng.gen_range(0.2..2.0), rng.gen_range(0.0..TAU));
        for p in pushforward_disk(&solver, n, mode, fixed, 3, 8).unwrap() {
            let params = mode.params(n, fixed, p.value).unwrap();
            let witness = oracle.attracting_fixed_point(&params).unwrap();
            assert!(
                witness.is_some(),
                "n = {n} {mode} fixed {fixed} value {}",
                p.value
            );
        }
    }
}

#[test]
fn boundary_values_have_neutral_fixed_points() {
    let solver = RelationSolver::default();
    let oracle = Oracle::default();
    let h = std::f64::consts::FRAC_1_SQRT_2;
    for (n, mode, fixed) in [
        (2, Mode::AFromC, c(-0.5, 3f64.sqrt() / 2.0)),
        (3, Mode::CFromA, c(-0.5, 3f64.sqrt() / 2.0)),
        (4, Mode::AFromC, c(h, h)),
        (4, Mode::CFromA, c(0.3, -0.2)),
    ] {
        let locus = boundary_locus(&solver, n, mode, fixed, 64).unwrap();
        for curve in &locus.curves {
            for s in &curve.samples {
                let params = mode.params(n, fixed, s.value).unwrap();
                let (record, gap) = oracle
                    .closest_multiplier(&params, s.lambda)
                    .unwrap()
                    .unwrap();
                // a double fixed point at lambda = 1 only resolves to sqrt(eps)
                let tol = if (s.lambda - 1.0).norm() < 1e-12 {
                    1e-6
                } else {
                    1e-8
                };
                assert!(gap < tol, "n = {n} {mode} lambda {} gap {gap}", s.lambda);
                assert!((record.lambda.norm() - 1.0).abs() < tol);
            }
        }
    }
}

// Near branch points the curves legitimately speed up, so a large step is
// only a swap if it fails to shrink when the sampling is refined.
#[test]
fn every_figure_curve_is_continuous() {
    for figure in figures::catalogue() {
        for panel in figure.panels {
            let solver = RelationSolver::with_strategy(panel.strategy);
            let coarse = boundary_locus(&solver, panel.n, panel.mode, panel.fixed, 1024).unwrap();
            let fine = boundary_locus(&solver, panel.n, panel.mode, panel.fixed, 2048).unwrap();
            assert_eq!(coarse.curves.len(), panel.branches, "{}", panel.name);
            for (cc, cf) in coarse.curves.iter().zip(&fine.curves) {
                let fine_at = |index: usize| {
                    cf.samples
                        .iter()
                        .find(|s| s.index == index)
                        .map(|s| s.value)
                };
                let mut steps: Vec<f64> = cc
                    .samples
                    .windows(2)
                    .map(|w| (w[1].value - w[0].value).norm())
                    .collect();
                steps.sort_by(f64::total_cmp);
                let median = steps[steps.len() / 2].max(1e-12);
                for w in cc
                    .samples
                    .windows(2)
                    .filter(|w| w[1].index == w[0].index + 1)
                {
                    let step = (w[1].value - w[0].value).norm();
                    if step <= 10.0 * median {
                        continue;
                    }
                    let (Some(a), Some(mid), Some(b)) = (
                        fine_at(2 * w[0].index),
                        fine_at(2 * w[0].index + 1),
                        fine_at(2 * w[1].index),
                    ) else {
                        continue;
                    };
                    let half = (mid - a).norm().max((b - mid).norm());
                    assert!(
                        half < 0.9 * step,
                        "{} branch {} jumps at sample {}",
                        panel.name,
                        cc.branch_k,
                        w[0].index
                    );
                }
            }
        }
    }
}

#[test]
fn scan_agrees_with_pushforward_of_third_degree_family() {
    let solver = RelationSolver::default();
    let oracle = Oracle::default();
    let fixed = c(-0.5, 0.8);
    let points = pushforward_disk(&solver, 3, Mode::AFromC, fixed, 10, 64).unwrap();
    let window = Window::fit(points.iter().map(|p| p.value), 0.1).unwrap();
    let template = ScanTemplate {
        n: 3,
        free: FreeParameter::A,
        fixed,
    };
    let raster = region_scan(&oracle, &template, &window, 128, 128, DEFAULT_BUDGET).unwrap();
    let inner: Vec<_> = points.iter().filter(|p| p.lambda.norm() < 0.9).collect();
    let members = inner
        .iter()
        .filter(|p| {
            let (x, y) = raster.locate(p.value).unwrap();
            raster.cell(x, y).is_member()
        })
        .count();
    // pixels cannot resolve the thin parts of the region
    assert!(
        members as f64 >= 0.97 * inner.len() as f64,
        "{members} of {}",
        inner.len()
    );
}

#[test]
fn outputs_do_not_depend_on_thread_count() {
    let solver = RelationSolver::default();
    let oracle = Oracle::default();
    let template = ScanTemplate {
        n: 2,
        free: FreeParameter::C,
        fixed: c(0.0, 0.0),
    };
    let window = Window::new(-2.0, 1.0, -1.5, 1.5).unwrap();
    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap();
        pool.install(|| {
            let raster = region_scan(&oracle, &template, &window, 64, 48, DEFAULT_BUDGET).unwrap();
            let json = region_json(
                &raster,
                &RegionRun::new(2, FreeParameter::C, template.fixed, &oracle),
            );
            let locus = boundary_locus(&solver, 3, Mode::CFromA, c(-0.5, 0.8), 512).unwrap();
            (json, locus_csv(&locus))
        })
    };
    assert_eq!(run(1), run(4));
}

#[test]
fn scan_counts_are_consistent() {
    let window = Window::new(-0.3, 0.3, -0.3, 0.3).unwrap();
    let template = ScanTemplate {
        n: 2,
        free: FreeParameter::A,
        fixed: c(0.0, 0.0),
    };
    let raster = region_scan(
        &Oracle::default(),
        &template,
        &window,
        30,
        20,
        DEFAULT_BUDGET,
    )
    .unwrap();
    let total: usize = [Cell::Inside, Cell::Boundary, Cell::Outside, Cell::Excluded]
        .iter()
        .map(|&k| raster.count(k))
        .sum();
    assert_eq!(total, 600);
    // a = 1/16 is superattracting
    let (x, y) = raster.locate(c(0.0625, 0.0)).unwrap();
    assert!(raster.cell(x, y).is_member());
}
