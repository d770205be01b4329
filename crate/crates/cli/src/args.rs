use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use ratmap::atlas::{FreeParameter, Window};
use ratmap::relations::{ApproxRegime, Mode};

/// Fixed-point multiplier relations and stability regions of
/// R(z) = z^n + a/z^n + c.
///
/// Complex numbers are written `re,im` (for example `-0.5,0.866`).
#[derive(Debug, Parser)]
#[command(name = "ratmap", version, propagate_version = true)]
pub struct Cli {
    /// Worker threads for scans, loci and verification [default: all cores]
    #[arg(long, global = true, env = "RATMAP_THREADS")]
    pub threads: Option<usize>,

    /// TOML file of `key = value` defaults; command-line flags win
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Branches of one parameter relation at a single multiplier
    Relation(RelationArgs),
    /// Image of the unit multiplier circle (and optionally disk)
    Locus(LocusArgs),
    /// Classify a window of parameter space pixel by pixel
    Scan(ScanArgs),
    /// Run the seeded self-consistency suites
    Verify(VerifyArgs),
    /// Regenerate the standard figure set
    Figures(FiguresArgs),
}

#[derive(Debug, Args)]
pub struct RouteFlags {
    /// Use the large/small-parameter approximations where no closed form exists
    #[arg(long, conflicts_with = "numeric")]
    pub approx: bool,

    /// Root-find the master equation instead of using closed forms
    #[arg(long)]
    pub numeric: bool,

    /// Approximation to use with --approx: dominant parameter (large), small
    /// parameter (small), or whichever the validity ratio allows (auto)
    #[arg(long, requires = "approx", value_parser = parse_regime, default_value = "large")]
    pub regime: ApproxRegime,
}

#[derive(Debug, Args)]
pub struct RelationArgs {
    /// Degree n of the map
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub n: u32,

    /// a-from-c, c-from-a, a-zero or c-zero
    #[arg(long, value_parser = parse_mode)]
    pub mode: Mode,

    /// Fixed parameter (ignored by a-zero and c-zero)
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, default_value = "0,0")]
    pub fixed: Complex64,

    /// Fixed-point multiplier
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, default_value = "0,0")]
    pub lambda: Complex64,

    #[command(flatten)]
    pub route: RouteFlags,

    /// Machine-readable output
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct LocusArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub n: u32,

    /// a-from-c, c-from-a, a-zero or c-zero
    #[arg(long, value_parser = parse_mode)]
    pub mode: Mode,

    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, default_value = "0,0")]
    pub fixed: Complex64,

    /// Points on the unit circle [default: 1024]
    #[arg(long)]
    pub samples: Option<usize>,

    /// Also push this many concentric circles of the disk forward
    #[arg(long, value_name = "R")]
    pub disk_rings: Option<usize>,

    /// Points per disk ring [default: 256]
    #[arg(long)]
    pub disk_samples: Option<usize>,

    /// CSV of the boundary curves
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,

    /// Binary PPM (P6) picture of the curves and disk image
    #[arg(long, value_name = "PATH")]
    pub png_like: Option<PathBuf>,

    /// Picture window `re0,re1,im0,im1` [default: fitted to the data]
    #[arg(long, value_parser = parse_window, allow_hyphen_values = true)]
    pub window: Option<Window>,

    /// Picture side in pixels [default: 512]
    #[arg(long)]
    pub pixels: Option<usize>,

    #[command(flatten)]
    pub route: RouteFlags,

    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub n: u32,

    /// Parameter swept over the window
    #[arg(long, value_parser = parse_free)]
    pub free: FreeParameter,

    /// Value of the other parameter
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, default_value = "0,0")]
    pub fixed: Complex64,

    /// `re0,re1,im0,im1`
    #[arg(long, value_parser = parse_window, allow_hyphen_values = true)]
    pub window: Window,

    /// Raster size `WxH`
    #[arg(long, value_parser = parse_resolution)]
    pub res: (usize, usize),

    /// Region JSON
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,

    /// Binary PPM (P6) picture of the region
    #[arg(long, value_name = "PATH")]
    pub png_like: Option<PathBuf>,

    /// Refuse rasters with more cells than this [default: 16777216]
    #[arg(long)]
    pub max_cells: Option<usize>,

    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Degrees to check, comma separated
    #[arg(long, value_delimiter = ',', value_parser = clap::value_parser!(u32).range(1..=4))]
    pub n: Option<Vec<u32>>,

    /// Random trials per suite and degree [default: 1000]
    #[arg(long)]
    pub trials: Option<usize>,

    /// RNG seed [default: 0]
    #[arg(long)]
    pub seed: Option<u64>,

    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct FiguresArgs {
    #[arg(long, value_name = "DIR")]
    pub out_dir: PathBuf,

    /// Points on each boundary curve [default: 2048]
    #[arg(long)]
    pub samples: Option<usize>,

    /// Disk rings [default: 24]
    #[arg(long)]
    pub disk_rings: Option<usize>,

    /// Points per disk ring [default: 256]
    #[arg(long)]
    pub disk_samples: Option<usize>,

    /// Picture side in pixels [default: 512]
    #[arg(long)]
    pub pixels: Option<usize>,

    #[arg(long)]
    pub json: bool,
}

fn parse_number(s: &str) -> Result<f64, String> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|_| format!("`{s}` is not a number"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("`{s}` is not finite"))
    }
}

fn parse_numbers(s: &str, count: usize) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != count {
        return Err(format!(
            "expected {count} comma-separated numbers, got `{s}`"
        ));
    }
    parts.into_iter().map(parse_number).collect()
}

pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let v = parse_numbers(s, 2)?;
    Ok(Complex64::new(v[0], v[1]))
}

pub fn parse_window(s: &str) -> Result<Window, String> {
    let v = parse_numbers(s, 4)?;
    Window::new(v[0], v[1], v[2], v[3]).map_err(|e| e.to_string())
}

pub fn parse_resolution(s: &str) -> Result<(usize, usize), String> {
    let (w, h) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected `WxH`, got `{s}`"))?;
    let parse = |t: &str| match t.trim().parse::<usize>() {
        Ok(v) if v > 0 => Ok(v),
        _ => Err(format!("`{t}` is not a positive integer")),
    };
    Ok((parse(w)?, parse(h)?))
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    s.parse().map_err(|e: ratmap::Error| e.to_string())
}

fn parse_regime(s: &str) -> Result<ApproxRegime, String> {
    s.parse().map_err(|e: ratmap::Error| e.to_string())
}

fn parse_free(s: &str) -> Result<FreeParameter, String> {
    s.parse().map_err(|e: ratmap::Error| e.to_string())
}
