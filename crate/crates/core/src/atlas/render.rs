use std::path::Path;

use num_complex::Complex64;

use super::{atomic_write, Cell, LocusCurve, RegionRaster, Window};
use crate::error::{Error, Result};

pub type Rgb = [u8; 3];

pub const PALETTE: [Rgb; 8] = [
    [200, 30, 45],
    [25, 90, 200],
    [20, 150, 70],
    [230, 140, 0],
    [140, 50, 170],
    [0, 160, 170],
    [190, 60, 130],
    [100, 100, 30],
];

const BACKGROUND: Rgb = [255, 255, 255];
const REGION_FILL: Rgb = [205, 220, 240];
const REGION_EDGE: Rgb = [70, 95, 140];
const EXCLUDED: Rgb = [170, 170, 170];

/// Raster image over a window of the complex plane, written as binary PPM.
#[derive(Debug, Clone, PartialEq)]
pub struct Canvas {
    pub window: Window,
    pub width: usize,
    pub height: usize,
    pixels: Vec<Rgb>,
}

impl Canvas {
    pub fn new(window: Window, width: usize, height: usize) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidArgument(
                "image must be at least 1 x 1".into(),
            ));
        }
        Ok(Self {
            window,
            width,
            height,
            pixels: vec![BACKGROUND; width * height],
        })
    }

    pub fn pixel(&self, x: usize, y: usize) -> Rgb {
        self.pixels[y * self.width + x]
    }

    // continuous pixel coordinates, y growing downwards
    fn to_pixel(&self, z: Complex64) -> (f64, f64) {
        let w = &self.window;
        (
            (z.re - w.re_min) / (w.re_max - w.re_min) * self.width as f64,
            (w.im_max - z.im) / (w.im_max - w.im_min) * self.height as f64,
        )
    }

    fn put(&mut self, x: i64, y: i64, color: Rgb) {
        if (0..self.width as i64).contains(&x) && (0..self.height as i64).contains(&y) {
            self.pixels[y as usize * self.width + x as usize] = color;
        }
    }

    pub fn plot(&mut self, z: Complex64, color: Rgb) {
        if z.is_finite() {
            let (x, y) = self.to_pixel(z);
            self.put(x.floor() as i64, y.floor() as i64, color);
        }
    }

    /// Shade member cells, with boundary cells darker.
    pub fn fill_region(&mut self, raster: &RegionRaster) {
        for y in 0..self.height {
            for x in 0..self.width {
                let re = self.window.re_min
                    + (x as f64 + 0.5) * (self.window.re_max - self.window.re_min)
                        / self.width as f64;
                let im = self.window.im_max
                    - (y as f64 + 0.5) * (self.window.im_max - self.window.im_min)
                        / self.height as f64;
                let Some((u, v)) = raster.locate(Complex64::new(re, im)) else {
                    continue;
                };
                let color = match raster.cell(u, v) {
                    Cell::Outside => continue,
                    Cell::Inside => REGION_FILL,
                    Cell::Boundary => REGION_EDGE,
                    Cell::Excluded => EXCLUDED,
                };
                self.pixels[y * self.width + x] = color;
            }
        }
    }

    /// One-pixel segment, clipped to the canvas.
    pub fn line(&mut self, from: Complex64, to: Complex64, color: Rgb) {
        if !(from.is_finite() && to.is_finite()) {
            return;
        }
        let (x0, y0) = self.to_pixel(from);
        let (x1, y1) = self.to_pixel(to);
        let Some((x0, y0, x1, y1)) = clip(x0, y0, x1, y1, self.width as f64, self.height as f64)
        else {
            return;
        };
        let (mut x, mut y) = (x0.floor() as i64, y0.floor() as i64);
        let (xe, ye) = (x1.floor() as i64, y1.floor() as i64);
        let dx = (xe - x).abs();
        let dy = -(ye - y).abs();
        let sx = if x < xe { 1 } else { -1 };
        let sy = if y < ye { 1 } else { -1 };
        let mut err = dx + dy;
        loop {
            self.put(x, y, color);
            if x == xe && y == ye {
                break;
            }
            let e2 = 2 * err;
            if e2 >= dy {
                err += dy;
                x += sx;
            }
            if e2 <= dx {
                err += dx;
                y += sy;
            }
        }
    }

    /// Polyline through the curve samples, broken wherever samples were
    /// dropped.
    pub fn curve(&mut self, curve: &LocusCurve, color: Rgb) {
        for pair in curve.samples.windows(2) {
            if pair[1].index == pair[0].index + 1 {
                self.line(pair[0].value, pair[1].value, color);
            }
        }
        if curve.closed {
            if let (Some(last), Some(first)) = (curve.samples.last(), curve.samples.first()) {
                self.line(last.value, first.value, color);
            }
        }
    }

    pub fn to_ppm(&self) -> Vec<u8> {
        let mut out = format!("P6\n{} {}\n255\n", self.width, self.height).into_bytes();
        out.reserve(self.pixels.len() * 3);
        for px in &self.pixels {
            out.extend_from_slice(px);
        }
        out
    }

    pub fn write_ppm(&self, path: &Path) -> Result<()> {
        atomic_write(path, &self.to_ppm())
    }
}

// Liang-Barsky against [0, w) x [0, h).
fn clip(x0: f64, y0: f64, x1: f64, y1: f64, w: f64, h: f64) -> Option<(f64, f64, f64, f64)> {
    let (dx, dy) = (x1 - x0, y1 - y0);
    let hi_x = w - 1e-9;
    let hi_y = h - 1e-9;
    let mut t0: f64 = 0.0;
    let mut t1: f64 = 1.0;
    for (p, q) in [(-dx, x0), (dx, hi_x - x0), (-dy, y0), (dy, hi_y - y0)] {
        if p == 0.0 {
            if q < 0.0 {
                return None;
            }
        } else {
            let t = q / p;
            if p < 0.0 {
                t0 = t0.max(t);
            } else {
                t1 = t1.min(t);
            }
        }
    }
    (t0 <= t1).then_some((x0 + t0 * dx, y0 + t0 * dy, x0 + t1 * dx, y0 + t1 * dy))
}
