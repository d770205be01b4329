use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::Window;
use crate::error::{Error, Result};
use crate::map::MapParams;
use crate::oracle::Oracle;

/// Largest raster `region_scan` accepts unless told otherwise (4096 x 4096).
pub const DEFAULT_BUDGET: usize = 1 << 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FreeParameter {
    A,
    C,
}

impl fmt::Display for FreeParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FreeParameter::A => "a",
            FreeParameter::C => "c",
        })
    }
}

impl FromStr for FreeParameter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "a" => Ok(FreeParameter::A),
            "c" => Ok(FreeParameter::C),
            _ => Err(Error::InvalidArgument(format!(
                "free parameter must be `a` or `c`, got `{s}`"
            ))),
        }
    }
}

/// A family of maps with one parameter swept over the plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScanTemplate {
    pub n: u32,
    pub free: FreeParameter,
    /// Value of the parameter that is not swept.
    pub fixed: Complex64,
}

impl ScanTemplate {
    pub fn params(&self, value: Complex64) -> Result<MapParams> {
        match self.free {
            FreeParameter::A => MapParams::new(self.n, value, self.fixed),
            FreeParameter::C => MapParams::new(self.n, self.fixed, value),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[repr(u8)]
pub enum Cell {
    Outside = 0,
    Inside = 1,
    /// Inside, with an outside 4-neighbour.
    Boundary = 2,
    /// The oracle could not decide (degenerate map or root-finder failure).
    Excluded = 3,
}

impl Cell {
    pub fn code(self) -> u8 {
        self as u8
    }

    /// Has an attracting fixed point.
    pub fn is_member(self) -> bool {
        matches!(self, Cell::Inside | Cell::Boundary)
    }
}

/// Row-major membership raster. Row 0 is the top edge (`im_max`).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegionRaster {
    pub window: Window,
    pub width: usize,
    pub height: usize,
    pub cells: Vec<Cell>,
}

impl RegionRaster {
    /// Parameter value at the centre of pixel `(x, y)`.
    pub fn center(&self, x: usize, y: usize) -> Complex64 {
        pixel_center(&self.window, self.width, self.height, x, y)
    }

    pub fn cell(&self, x: usize, y: usize) -> Cell {
        self.cells[y * self.width + x]
    }

    /// Pixel holding `z`, if `z` is inside the window.
    pub fn locate(&self, z: Complex64) -> Option<(usize, usize)> {
        if !self.window.contains(z) {
            return None;
        }
        let w = &self.window;
        let fx = (z.re - w.re_min) / (w.re_max - w.re_min) * self.width as f64;
        let fy = (w.im_max - z.im) / (w.im_max - w.im_min) * self.height as f64;
        Some((
            (fx as usize).min(self.width - 1),
            (fy as usize).min(self.height - 1),
        ))
    }

    pub fn count(&self, cell: Cell) -> usize {
        self.cells.iter().filter(|&&c| c == cell).count()
    }
}

fn pixel_center(window: &Window, width: usize, height: usize, x: usize, y: usize) -> Complex64 {
    let re = window.re_min + (x as f64 + 0.5) * (window.re_max - window.re_min) / width as f64;
    let im = window.im_max - (y as f64 + 0.5) * (window.im_max - window.im_min) / height as f64;
    Complex64::new(re, im)
}

/// Classify every pixel centre of `window` by whether the map has an
/// attracting fixed point there. Rows are processed in parallel; the result
/// does not depend on the thread count.
pub fn region_scan(
    oracle: &Oracle,
    template: &ScanTemplate,
    window: &Window,
    width: usize,
    height: usize,
    budget: usize,
) -> Result<RegionRaster> {
    let window = Window::new(window.re_min, window.re_max, window.im_min, window.im_max)?;
    if width == 0 || height == 0 {
        return Err(Error::InvalidArgument(
            "raster must be at least 1 x 1".into(),
        ));
    }
    let cells = width.saturating_mul(height);
    if cells > budget {
        return Err(Error::BudgetExceeded { cells, budget });
    }
    if template.n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    crate::error::finite(template.fixed, "fixed parameter")?;

    let mut raw: Vec<Cell> = (0..cells)
        .into_par_iter()
        .with_min_len(width)
        .map(|idx| {
            let z = pixel_center(&window, width, height, idx % width, idx / width);
            let verdict = template
                .params(z)
                .and_then(|params| oracle.has_attracting_fixed_point(&params));
            match verdict {
                Ok(true) => Cell::Inside,
                Ok(false) => Cell::Outside,
                Err(_) => Cell::Excluded,
            }
        })
        .collect();

    let snapshot = raw.clone();
    let outside = |x: usize, y: usize| snapshot[y * width + x] == Cell::Outside;
    for y in 0..height {
        for x in 0..width {
            if snapshot[y * width + x] != Cell::Inside {
                continue;
            }
            let touches = (x > 0 && outside(x - 1, y))
                || (x + 1 < width && outside(x + 1, y))
                || (y > 0 && outside(x, y - 1))
                || (y + 1 < height && outside(x, y + 1));
            if touches {
                raw[y * width + x] = Cell::Boundary;
            }
        }
    }

    Ok(RegionRaster {
        window,
        width,
        height,
        cells: raw,
    })
}
