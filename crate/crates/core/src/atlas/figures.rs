//! The standard atlas: stability regions for `n = 1..5` at a handful of
//! fixed parameters, drawn as boundary curves over a filled disk image.

use std::f64::consts::FRAC_1_SQRT_2;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::Serialize;

use super::{
    atomic_write, boundary_locus, locus_csv, pushforward_disk, Canvas, Locus, PushforwardPoint,
    Rgb, Window, PALETTE,
};
use crate::error::{Error, Result};
use crate::relations::{Mode, RelationSolver, Route, Strategy};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Panel {
    /// File stem, e.g. `fig3b`.
    pub name: &'static str,
    pub n: u32,
    pub mode: Mode,
    pub fixed: Complex64,
    pub strategy: Strategy,
    pub branches: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Figure {
    pub number: u32,
    pub caption: &'static str,
    pub panels: Vec<Panel>,
}

fn panel(name: &'static str, n: u32, mode: Mode, fixed: Complex64, branches: usize) -> Panel {
    Panel {
        name,
        n,
        mode,
        fixed,
        strategy: Strategy::Exact,
        branches,
    }
}

pub fn catalogue() -> Vec<Figure> {
    let c = Complex64::new;
    let zero = c(0.0, 0.0);
    let h = FRAC_1_SQRT_2;
    let r3 = 3f64.sqrt() / 2.0;
    let approx = |name, fixed, branches| Panel {
        strategy: Strategy::Approximate,
        ..panel(name, 5, Mode::AFromC, fixed, branches)
    };
    vec![
        Figure {
            number: 1,
            caption: "n = 2: a-region for c = 0 and c-region for a = 0",
            panels: vec![
                panel("fig1a", 2, Mode::CZero, zero, 1),
                panel("fig1b", 2, Mode::AZero, zero, 1),
            ],
        },
        Figure {
            number: 2,
            caption: "n = 1: c-region for a = (1 + i)/sqrt 2",
            panels: vec![panel("fig2", 1, Mode::CFromA, c(h, h), 2)],
        },
        Figure {
            number: 3,
            caption: "n = 2: a-region for c = e^{2 pi i/3}, c-region for a = e^{3 pi i/4}",
            panels: vec![
                panel("fig3a", 2, Mode::AFromC, c(-0.5, r3), 2),
                panel("fig3b", 2, Mode::CFromA, c(-h, h), 4),
            ],
        },
        Figure {
            number: 4,
            caption: "n = 3: a-region for c = e^{3 pi i/4}, c-region for a = e^{2 pi i/3}",
            panels: vec![
                panel("fig4a", 3, Mode::AFromC, c(-h, h), 3),
                panel("fig4b", 3, Mode::CFromA, c(-0.5, r3), 6),
            ],
        },
        Figure {
            number: 5,
            caption: "n = 4: a-region for c = e^{pi i/4}",
            panels: vec![panel("fig5", 4, Mode::AFromC, c(h, h), 4)],
        },
        Figure {
            number: 6,
            caption: "n = 5, approximate: a-region for c = 16 and for c = 1/16",
            panels: vec![
                approx("fig6a", c(16.0, 0.0), 5),
                approx("fig6b", c(0.0625, 0.0), 1),
            ],
        },
    ]
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FigureSettings {
    pub boundary_samples: usize,
    pub rings: usize,
    pub ring_samples: usize,
    pub pixels: usize,
}

impl Default for FigureSettings {
    fn default() -> Self {
        Self {
            boundary_samples: 2048,
            rings: 24,
            ring_samples: 256,
            pixels: 512,
        }
    }
}

#[derive(Debug, Clone)]
pub struct RenderedPanel {
    pub panel: Panel,
    pub locus: Locus,
    pub disk: Vec<PushforwardPoint>,
    pub canvas: Canvas,
}

fn faded(color: Rgb) -> Rgb {
    color.map(|v| (255 - (255 - u16::from(v)) * 2 / 5) as u8)
}

pub fn render_panel(panel: &Panel, settings: &FigureSettings) -> Result<RenderedPanel> {
    let solver = RelationSolver::with_strategy(panel.strategy);
    let locus = boundary_locus(
        &solver,
        panel.n,
        panel.mode,
        panel.fixed,
        settings.boundary_samples,
    )?;
    if locus.curves.len() != panel.branches {
        return Err(Error::InvalidArgument(format!(
            "{} produced {} branches, expected {}",
            panel.name,
            locus.curves.len(),
            panel.branches
        )));
    }
    let disk = pushforward_disk(
        &solver,
        panel.n,
        panel.mode,
        panel.fixed,
        settings.rings,
        settings.ring_samples,
    )?;
    let everything = locus
        .curves
        .iter()
        .flat_map(|c| c.values())
        .chain(disk.iter().map(|p| p.value));
    let window = Window::fit(everything, 0.08)?;
    let mut canvas = Canvas::new(window, settings.pixels, settings.pixels)?;
    for p in &disk {
        canvas.plot(p.value, faded(PALETTE[p.branch_k % PALETTE.len()]));
    }
    for curve in &locus.curves {
        canvas.curve(curve, PALETTE[curve.branch_k % PALETTE.len()]);
    }
    Ok(RenderedPanel {
        panel: *panel,
        locus,
        disk,
        canvas,
    })
}

/// What was drawn for one panel and where it went.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PanelReport {
    pub panel: Panel,
    pub route: Route,
    pub branches: usize,
    pub gaps: usize,
    pub disk_points: usize,
    pub window: Window,
    pub files: Vec<PathBuf>,
}

/// Render every panel, then write `<name>.ppm` and `<name>.csv` into `dir`.
/// Nothing is written unless every panel renders.
pub fn write_all(dir: &Path, settings: &FigureSettings) -> Result<Vec<PanelReport>> {
    let panels: Vec<Panel> = catalogue().into_iter().flat_map(|f| f.panels).collect();
    let rendered = panels
        .iter()
        .map(|p| render_panel(p, settings))
        .collect::<Result<Vec<_>>>()?;
    std::fs::create_dir_all(dir)?;
    let mut reports = Vec::with_capacity(rendered.len());
    for r in &rendered {
        let ppm = dir.join(format!("{}.ppm", r.panel.name));
        r.canvas.write_ppm(&ppm)?;
        let csv = dir.join(format!("{}.csv", r.panel.name));
        atomic_write(&csv, locus_csv(&r.locus).as_bytes())?;
        reports.push(PanelReport {
            panel: r.panel,
            route: r.locus.route,
            branches: r.locus.curves.len(),
            gaps: r.locus.gaps.len(),
            disk_points: r.disk.len(),
            window: r.canvas.window,
            files: vec![ppm, csv],
        });
    }
    Ok(reports)
}
