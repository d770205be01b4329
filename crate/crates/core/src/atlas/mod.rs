//! Stability regions in parameter space: the unit `lambda` circle and disk
//! pushed through the branch relations, the same regions recovered pixel by
//! pixel from the oracle, and the files and pictures made from both.

mod export;
pub mod figures;
mod locus;
mod pushforward;
mod render;
mod scan;

pub use export::{atomic_write, locus_csv, region_json, write_locus_csv, RegionRun};
pub use locus::{boundary_locus, lambda_on_circle, Locus, LocusCurve, LocusSample, MIN_SAMPLES};
pub use pushforward::{pushforward_disk, PushforwardPoint, DISK_MARGIN};
pub use render::{Canvas, Rgb, PALETTE};
pub use scan::{region_scan, Cell, FreeParameter, RegionRaster, ScanTemplate, DEFAULT_BUDGET};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Axis-aligned rectangle of the complex plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Window {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
}

impl Window {
    pub fn new(re_min: f64, re_max: f64, im_min: f64, im_max: f64) -> Result<Self> {
        let all_finite = [re_min, re_max, im_min, im_max]
            .iter()
            .all(|v| v.is_finite());
        if !all_finite || re_min >= re_max || im_min >= im_max {
            return Err(Error::InvalidArgument(format!(
                "degenerate window [{re_min}, {re_max}] x [{im_min}, {im_max}]"
            )));
        }
        Ok(Self {
            re_min,
            re_max,
            im_min,
            im_max,
        })
    }

    pub fn contains(&self, z: Complex64) -> bool {
        (self.re_min..=self.re_max).contains(&z.re) && (self.im_min..=self.im_max).contains(&z.im)
    }

    /// Smallest window holding every finite point, padded by `margin` times
    /// the larger side and made square so the picture is not distorted.
    pub fn fit<I>(points: I, margin: f64) -> Result<Self>
    where
        I: IntoIterator<Item = Complex64>,
    {
        let mut lo = Complex64::new(f64::INFINITY, f64::INFINITY);
        let mut hi = Complex64::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for z in points.into_iter().filter(|z| z.is_finite()) {
            lo = Complex64::new(lo.re.min(z.re), lo.im.min(z.im));
            hi = Complex64::new(hi.re.max(z.re), hi.im.max(z.im));
        }
        if !lo.re.is_finite() {
            return Err(Error::InvalidArgument("no finite points to fit".into()));
        }
        let center = (lo + hi) / 2.0;
        let side = (hi.re - lo.re).max(hi.im - lo.im).max(1e-9) * (1.0 + 2.0 * margin);
        Self::new(
            center.re - side / 2.0,
            center.re + side / 2.0,
            center.im - side / 2.0,
            center.im + side / 2.0,
        )
    }
}
