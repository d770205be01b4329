use std::path::Path;

use num_complex::Complex64;
use serde::Serialize;

use ratmap::atlas::{
    atomic_write, boundary_locus, figures, locus_csv, pushforward_disk, region_json, region_scan,
    Canvas, Cell, RegionRun, ScanTemplate, Window, DEFAULT_BUDGET, MIN_SAMPLES, PALETTE,
};
use ratmap::kernel::RootFinder;
use ratmap::oracle::{Classification, Oracle};
use ratmap::relations::{
    a_validity_ratio, c_validity_ratio, Mode, RelationSolver, Route, Strategy, ValidityGate,
};

use crate::args::{FiguresArgs, LocusArgs, RelationArgs, RouteFlags, ScanArgs, VerifyArgs};
use crate::config::Config;
use crate::exit::{CliError, ExitCode};
use crate::verify::{self, VerifyOptions, ROUND_TRIP_TOL};

pub struct Context {
    pub config: Config,
}

impl Context {
    fn finder(&self) -> RootFinder {
        RootFinder {
            tol: self.config.root_tol.unwrap_or(RootFinder::default().tol),
            ..RootFinder::default()
        }
    }

    fn oracle(&self) -> Oracle {
        let base = Oracle::default();
        Oracle {
            finder: self.finder(),
            classify_tol: self.config.classify_tol.unwrap_or(base.classify_tol),
            ..base
        }
    }

    fn solver(&self, flags: &RouteFlags) -> RelationSolver {
        let strategy = if flags.approx {
            Strategy::Approximate
        } else if flags.numeric {
            Strategy::Numeric
        } else {
            Strategy::Exact
        };
        let base = ValidityGate::default();
        RelationSolver {
            strategy,
            regime: flags.regime,
            gate: ValidityGate {
                high: self.config.gate_high.unwrap_or(base.high),
                low: self.config.gate_low.unwrap_or(base.low),
            },
            finder: self.finder(),
        }
    }

    fn match_tol(&self) -> f64 {
        self.config.match_tol.unwrap_or(ROUND_TRIP_TOL)
    }
}

fn number(v: f64) -> String {
    if v == 0.0 || (1e-4..1e7).contains(&v.abs()) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

/// `re+imi` with exponents only for very large or small parts.
fn complex(z: Complex64) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{}{sign}{}i", number(z.re), number(z.im.abs()))
}

fn print_json<T: Serialize>(value: &T) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("report serialises")
    );
}

/// Refuse to start work whose output could not be written anyway.
fn check_parent(path: &Path) -> Result<(), CliError> {
    let parent = path
        .parent()
        .filter(|p| !p.as_os_str().is_empty())
        .unwrap_or(Path::new("."));
    if parent.is_dir() {
        Ok(())
    } else {
        Err(CliError::new(
            ExitCode::Io,
            format!("directory {} does not exist", parent.display()),
        ))
    }
}

#[derive(Debug, Serialize)]
struct OracleStatus {
    verified: bool,
    /// Fixed point whose multiplier is closest to the requested one.
    witness_z: Option<Complex64>,
    witness_lambda: Option<Complex64>,
    classification: Option<Classification>,
    /// Relative multiplier gap.
    gap: f64,
}

#[derive(Debug, Serialize)]
struct BranchRow {
    k: usize,
    xi: Complex64,
    value: Complex64,
    residual_c: f64,
    residual_a: f64,
    oracle: OracleStatus,
}

#[derive(Debug, Serialize)]
struct RelationReport {
    n: u32,
    mode: Mode,
    free: char,
    fixed: Complex64,
    lambda: Complex64,
    route: Route,
    validity_ratio: Option<f64>,
    branches: Vec<BranchRow>,
    verified: bool,
}

pub fn relation(args: &RelationArgs, ctx: &Context) -> Result<(), CliError> {
    let solver = ctx.solver(&args.route);
    let oracle = ctx.oracle();
    let evaluation = solver.evaluate(args.n, args.mode, args.fixed, args.lambda)?;
    let tol = ctx.match_tol();
    let rows: Vec<BranchRow> = evaluation
        .branches
        .iter()
        .map(|b| {
            let closest = args
                .mode
                .params(args.n, args.fixed, b.value)
                .ok()
                .and_then(|p| oracle.closest_multiplier(&p, args.lambda).ok().flatten());
            let gap = closest
                .as_ref()
                .map_or(f64::INFINITY, |(_, g)| g / args.lambda.norm().max(1.0));
            BranchRow {
                k: b.k,
                xi: b.xi,
                value: b.value,
                residual_c: b.residual_c,
                residual_a: b.residual_a,
                oracle: OracleStatus {
                    verified: gap <= tol,
                    witness_z: closest.as_ref().map(|(r, _)| r.z),
                    witness_lambda: closest.as_ref().map(|(r, _)| r.lambda),
                    classification: closest.as_ref().map(|(r, _)| r.classification),
                    gap,
                },
            }
        })
        .collect();
    let validity_ratio = evaluation.route.is_approximate().then(|| match args.mode {
        Mode::AFromC => a_validity_ratio(args.n, args.fixed, args.lambda),
        _ => c_validity_ratio(args.n, args.fixed, args.lambda),
    });
    let verified = rows.iter().all(|r| r.oracle.verified);
    let report = RelationReport {
        n: args.n,
        mode: args.mode,
        free: args.mode.free_parameter(),
        fixed: args.fixed,
        lambda: args.lambda,
        route: evaluation.route,
        validity_ratio,
        branches: rows,
        verified,
    };

    if args.json {
        print_json(&report);
    } else {
        println!(
            "n = {}  mode = {}  fixed = {}  lambda = {}  route = {}",
            report.n,
            report.mode,
            complex(report.fixed),
            complex(report.lambda),
            report.route.as_str()
        );
        if let Some(ratio) = report.validity_ratio {
            println!(
                "validity ratio {ratio:.6e} (gate: >= {} or <= {})",
                solver.gate.high, solver.gate.low
            );
        }
        for row in &report.branches {
            let status = match (&row.oracle.witness_z, &row.oracle.witness_lambda) {
                (Some(z), Some(l)) if row.oracle.verified => {
                    format!("verified: z = {}, lambda = {}", complex(*z), complex(*l))
                }
                (Some(_), Some(_)) if report.route.is_approximate() => {
                    format!(
                        "approximate: nearest multiplier off by {:.3e}",
                        row.oracle.gap
                    )
                }
                (Some(_), Some(_)) => {
                    format!("MISMATCH: nearest multiplier off by {:.3e}", row.oracle.gap)
                }
                _ => "MISMATCH: oracle found no fixed point".to_string(),
            };
            println!(
                "k = {}  {} = {}  xi = {}  residual_c = {:.3e}  residual_a = {:.3e}  {}",
                row.k,
                report.free,
                complex(row.value),
                complex(row.xi),
                row.residual_c,
                row.residual_a,
                status
            );
        }
    }
    // approximations are expected to miss; only exact answers must match
    if !verified && !report.route.is_approximate() {
        return Err(CliError::new(
            ExitCode::OracleMismatch,
            "oracle mismatch beyond tolerance",
        ));
    }
    Ok(())
}

#[derive(Debug, Serialize)]
struct CurveSummary {
    branch: usize,
    points: usize,
    closed: bool,
    exits_window: bool,
}

#[derive(Debug, Serialize)]
struct LocusReport {
    n: u32,
    mode: Mode,
    fixed: Complex64,
    route: Route,
    samples: usize,
    branches: usize,
    gaps: usize,
    stitches: usize,
    disk_points: Option<usize>,
    window: Window,
    curves: Vec<CurveSummary>,
}

pub fn locus(args: &LocusArgs, ctx: &Context) -> Result<(), CliError> {
    let samples = args.samples.or(ctx.config.samples).unwrap_or(1024);
    if samples < MIN_SAMPLES {
        return Err(CliError::usage(format!(
            "--samples must be at least {MIN_SAMPLES}"
        )));
    }
    let rings = args.disk_rings.or(ctx.config.disk_rings);
    let ring_samples = args.disk_samples.or(ctx.config.disk_samples).unwrap_or(256);
    let pixels = args.pixels.or(ctx.config.pixels).unwrap_or(512);
    if rings == Some(0) || ring_samples == 0 || pixels == 0 {
        return Err(CliError::usage(
            "--disk-rings, --disk-samples and --pixels must be positive",
        ));
    }
    for path in args.out.iter().chain(&args.png_like) {
        check_parent(path)?;
    }

    let solver = ctx.solver(&args.route);
    let locus = boundary_locus(&solver, args.n, args.mode, args.fixed, samples)?;
    let disk = match rings {
        Some(r) => Some(pushforward_disk(
            &solver,
            args.n,
            args.mode,
            args.fixed,
            r,
            ring_samples,
        )?),
        None => None,
    };
    let window = match args.window {
        Some(w) => w,
        None => Window::fit(
            locus
                .curves
                .iter()
                .flat_map(|c| c.values())
                .chain(disk.iter().flatten().map(|p| p.value)),
            0.08,
        )?,
    };

    let csv = args.out.as_ref().map(|_| locus_csv(&locus));
    let image = match &args.png_like {
        Some(_) => {
            let mut canvas = Canvas::new(window, pixels, pixels)?;
            for p in disk.iter().flatten() {
                canvas.plot(
                    p.value,
                    PALETTE[p.branch_k % PALETTE.len()].map(|v| v / 2 + 128),
                );
            }
            for curve in &locus.curves {
                canvas.curve(curve, PALETTE[curve.branch_k % PALETTE.len()]);
            }
            Some(canvas.to_ppm())
        }
        None => None,
    };
    if let (Some(path), Some(text)) = (&args.out, &csv) {
        atomic_write(path, text.as_bytes())?;
    }
    if let (Some(path), Some(bytes)) = (&args.png_like, &image) {
        atomic_write(path, bytes)?;
    }

    let report = LocusReport {
        n: args.n,
        mode: args.mode,
        fixed: args.fixed,
        route: locus.route,
        samples,
        branches: locus.curves.len(),
        gaps: locus.gaps.len(),
        stitches: locus.stitches,
        disk_points: disk.as_ref().map(Vec::len),
        window,
        curves: locus
            .curves
            .iter()
            .map(|c| CurveSummary {
                branch: c.branch_k,
                points: c.samples.len(),
                closed: c.closed,
                exits_window: c.exits(&window),
            })
            .collect(),
    };
    if args.json {
        print_json(&report);
    } else {
        print!(
            "branches {}  samples {}  gaps {}  stitches {}  route {}",
            report.branches,
            report.samples,
            report.gaps,
            report.stitches,
            report.route.as_str()
        );
        if let Some(points) = report.disk_points {
            print!("  disk points {points}");
        }
        println!();
        for c in &report.curves {
            println!(
                "branch {}  points {}  {}{}",
                c.branch,
                c.points,
                if c.closed { "closed" } else { "open" },
                if c.exits_window {
                    "  (clipped by window)"
                } else {
                    ""
                }
            );
        }
    }
    Ok(())
}

#[derive(Debug, Serialize)]
struct ScanReport {
    width: usize,
    height: usize,
    inside: usize,
    boundary: usize,
    outside: usize,
    excluded: usize,
}

pub fn scan(args: &ScanArgs, ctx: &Context) -> Result<(), CliError> {
    let (width, height) = args.res;
    let budget = args
        .max_cells
        .or(ctx.config.max_cells)
        .unwrap_or(DEFAULT_BUDGET);
    for path in args.out.iter().chain(&args.png_like) {
        check_parent(path)?;
    }
    let oracle = ctx.oracle();
    let template = ScanTemplate {
        n: args.n,
        free: args.free,
        fixed: args.fixed,
    };
    let raster = region_scan(&oracle, &template, &args.window, width, height, budget)?;
    let json = args.out.as_ref().map(|_| {
        region_json(
            &raster,
            &RegionRun::new(args.n, args.free, args.fixed, &oracle),
        )
    });
    let image = match &args.png_like {
        Some(_) => {
            let mut canvas = Canvas::new(raster.window, width, height)?;
            canvas.fill_region(&raster);
            Some(canvas.to_ppm())
        }
        None => None,
    };
    if let (Some(path), Some(text)) = (&args.out, &json) {
        atomic_write(path, text.as_bytes())?;
    }
    if let (Some(path), Some(bytes)) = (&args.png_like, &image) {
        atomic_write(path, bytes)?;
    }

    let boundary = raster.count(Cell::Boundary);
    let report = ScanReport {
        width,
        height,
        inside: raster.count(Cell::Inside) + boundary,
        boundary,
        outside: raster.count(Cell::Outside),
        excluded: raster.count(Cell::Excluded),
    };
    if args.json {
        print_json(&report);
    } else {
        println!(
            "inside {} (boundary {})  outside {}  excluded {}  of {}x{}",
            report.inside, report.boundary, report.outside, report.excluded, width, height
        );
    }
    Ok(())
}

pub fn verify(args: &VerifyArgs, ctx: &Context) -> Result<(), CliError> {
    let trials = args.trials.or(ctx.config.trials).unwrap_or(1000);
    if trials == 0 {
        return Err(CliError::usage("--trials must be positive"));
    }
    let mut ns = args.n.clone().unwrap_or_else(|| vec![1, 2, 3, 4]);
    ns.sort_unstable();
    ns.dedup();
    let opts = VerifyOptions {
        trials,
        seed: args.seed.or(ctx.config.seed).unwrap_or(0),
        match_tol: ctx.match_tol(),
    };
    let reports = verify::run(&ns, &opts, &ctx.oracle());
    let all_passed = reports.iter().all(|r| r.passed());
    if args.json {
        #[derive(Serialize)]
        struct Out<'a> {
            seed: u64,
            trials: usize,
            passed: bool,
            suites: &'a [verify::SuiteReport],
        }
        print_json(&Out {
            seed: opts.seed,
            trials,
            passed: all_passed,
            suites: &reports,
        });
    } else {
        for r in &reports {
            println!(
                "{}  {:<22} checks {:>6}  failures {:>3}  worst {} {:.3e} (limit {})",
                if r.passed() { "PASS" } else { "FAIL" },
                r.name,
                r.checks,
                r.failures,
                r.measure,
                r.worst,
                number(r.limit)
            );
        }
    }
    if all_passed {
        Ok(())
    } else {
        Err(CliError::new(ExitCode::VerifyFailed, "verification failed"))
    }
}

pub fn figures(args: &FiguresArgs, ctx: &Context) -> Result<(), CliError> {
    let defaults = figures::FigureSettings::default();
    let settings = figures::FigureSettings {
        boundary_samples: args
            .samples
            .or(ctx.config.samples)
            .unwrap_or(defaults.boundary_samples),
        rings: args
            .disk_rings
            .or(ctx.config.disk_rings)
            .unwrap_or(defaults.rings),
        ring_samples: args
            .disk_samples
            .or(ctx.config.disk_samples)
            .unwrap_or(defaults.ring_samples),
        pixels: args.pixels.or(ctx.config.pixels).unwrap_or(defaults.pixels),
    };
    if settings.boundary_samples < MIN_SAMPLES
        || settings.rings == 0
        || settings.ring_samples == 0
        || settings.pixels == 0
    {
        return Err(CliError::usage(
            "figure sampling and size settings must be positive",
        ));
    }
    let reports = figures::write_all(&args.out_dir, &settings)?;
    if args.json {
        print_json(&reports);
    } else {
        for r in &reports {
            println!(
                "{:<6} n = {}  {:<9} branches {}  gaps {}  route {}  -> {}",
                r.panel.name,
                r.panel.n,
                r.panel.mode.as_str(),
                r.branches,
                r.gaps,
                r.route.as_str(),
                r.files[0].display()
            );
        }
    }
    Ok(())
}
