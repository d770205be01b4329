use std::fs;
use std::io::{self, Write};
use std::path::Path;

use num_complex::Complex64;
use serde::Serialize;

use super::{FreeParameter, Locus, RegionRaster, Window};
use crate::error::{Error, Result};
use crate::oracle::Oracle;

/// Write `bytes` to a sibling temporary file and rename it over `path`, so a
/// failure never leaves a truncated file behind.
pub fn atomic_write(path: &Path, bytes: &[u8]) -> Result<()> {
    let name = path.file_name().ok_or_else(|| {
        Error::InvalidArgument(format!("`{}` is not a file path", path.display()))
    })?;
    let mut tmp_name = std::ffi::OsString::from(".");
    tmp_name.push(name);
    tmp_name.push(format!(".{}.tmp", std::process::id()));
    let tmp = path.with_file_name(tmp_name);
    let result = (|| -> io::Result<()> {
        let mut file = fs::File::create(&tmp)?;
        file.write_all(bytes)?;
        file.sync_all()?;
        fs::rename(&tmp, path)
    })();
    if result.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    Ok(result?)
}

/// CSV with header `branch,lambda_re,lambda_im,value_re,value_im`, rows in
/// branch-major then sample order, 17 significant digits.
pub fn write_locus_csv<W: Write>(locus: &Locus, mut out: W) -> io::Result<()> {
    writeln!(out, "branch,lambda_re,lambda_im,value_re,value_im")?;
    for curve in &locus.curves {
        for s in &curve.samples {
            writeln!(
                out,
                "{},{:.16e},{:.16e},{:.16e},{:.16e}",
                curve.branch_k, s.lambda.re, s.lambda.im, s.value.re, s.value.im
            )?;
        }
    }
    Ok(())
}

pub fn locus_csv(locus: &Locus) -> String {
    let mut buf = Vec::new();
    write_locus_csv(locus, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("csv is ascii")
}

/// Parameters and tolerances recorded next to a raster.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RegionRun {
    pub n: u32,
    pub free: FreeParameter,
    pub fixed: Complex64,
    pub classify_tol: f64,
    pub spurious_cutoff: f64,
    pub dedup_radius: f64,
    pub root_tol: f64,
}

impl RegionRun {
    pub fn new(n: u32, free: FreeParameter, fixed: Complex64, oracle: &Oracle) -> Self {
        Self {
            n,
            free,
            fixed,
            classify_tol: oracle.classify_tol,
            spurious_cutoff: oracle.spurious_cutoff,
            dedup_radius: oracle.dedup_radius,
            root_tol: oracle.finder.tol,
        }
    }
}

#[derive(Serialize)]
struct RegionDocument<'a> {
    bounds: &'a Window,
    width: usize,
    height: usize,
    run: &'a RegionRun,
    /// 0 outside, 1 inside, 2 boundary, 3 excluded; row 0 is `im_max`.
    cells: Vec<u8>,
}

pub fn region_json(raster: &RegionRaster, run: &RegionRun) -> String {
    let doc = RegionDocument {
        bounds: &raster.window,
        width: raster.width,
        height: raster.height,
        run,
        cells: raster.cells.iter().map(|c| c.code()).collect(),
    };
    serde_json::to_string(&doc).expect("region document serialises")
}
