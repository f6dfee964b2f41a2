//! Figure presets, grid CSV and SVG polylines.

use std::collections::HashMap;
use std::fmt::{self, Write as _};
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::modcoeffs::{load_or_generate, CoefficientSequence, SequenceName};
use crate::series::{eval_grid_chirp, eval_grid_fft, Flavor, SampleGrid, SeriesSpec};

/// Samples per figure window.
pub const DEFAULT_SAMPLES: usize = 1 << 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FigureId {
    Fig1,
    Fig2,
    Fig3,
    Fig4,
    Fig5,
    Fig6,
}

impl FigureId {
    pub const ALL: [FigureId; 6] = [FigureId::Fig1, FigureId::Fig2, FigureId::Fig3, FigureId::Fig4, FigureId::Fig5, FigureId::Fig6];

    pub fn name(self) -> &'static str {
        match self {
            FigureId::Fig1 => "fig1",
            FigureId::Fig2 => "fig2",
            FigureId::Fig3 => "fig3",
            FigureId::Fig4 => "fig4",
            FigureId::Fig5 => "fig5",
            FigureId::Fig6 => "fig6",
        }
    }
}

impl fmt::Display for FigureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FigureId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FigureId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::Input(format!("unknown preset `{s}` (fig1..fig6)")))
    }
}

/// A series recipe over a window.
#[derive(Debug, Clone, PartialEq)]
pub struct PlotSpec {
    pub series: SequenceName,
    pub alpha: f64,
    pub flavor: Flavor,
    pub range: (f64, f64),
    pub samples: usize,
    pub terms: usize,
    pub caption: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FigurePreset {
    pub id: FigureId,
    pub plot: PlotSpec,
}

impl FigurePreset {
    pub fn get(id: FigureId) -> Self {
        let (series, alpha, flavor, range, caption) = match id {
            FigureId::Fig1 => (
                SequenceName::Elliptic14,
                1.75,
                Flavor::Sine,
                (0.0, 0.5),
                "sum a_n n^-7/4 sin(2 pi n x), elliptic curve 14a1, 0 <= x <= 1/2",
            ),
            FigureId::Fig2 => (SequenceName::Elliptic14, 1.75, Flavor::Sine, (0.4042, 0.4242), "zoom [0.4042, 0.4242] near sqrt2 - 1"),
            FigureId::Fig3 => (SequenceName::Elliptic14, 1.75, Flavor::Sine, (-0.05, 0.05), "zoom [-0.05, 0.05] around 0"),
            FigureId::Fig4 => (
                SequenceName::Theta12,
                1.0,
                Flavor::Cosine,
                (0.0, 0.02),
                "theta cusp form sum c_n n^-2 cos(2 pi n^2 x), [0, 0.02]",
            ),
            FigureId::Fig5 => (
                SequenceName::Jacobi,
                1.0,
                Flavor::Sine,
                (0.0, 0.02),
                "Riemann's example, 2 sum n^-2 sin(2 pi n^2 x), detail window [0, 0.02] chosen to match fig4",
            ),
            FigureId::Fig6 => (
                SequenceName::Harmonic,
                3.25,
                Flavor::Cosine,
                (-0.5, 0.5),
                "sum P(n,m) (n^2+m^2)^-13/4 cos(2 pi (n^2+m^2) x), P = x^4 + y^4 - 6x^2y^2, |x| <= 1/2",
            ),
        };
        FigurePreset {
            id,
            plot: PlotSpec {
                series,
                alpha,
                flavor,
                range,
                samples: DEFAULT_SAMPLES,
                terms: 1 << 17,
                caption: format!("{}: {caption}", id.name()),
            },
        }
    }
}

/// `samples + 1` points from `lo` to `hi` inclusive.
pub fn render_grid(plot: &PlotSpec, cache_dir: Option<&Path>) -> Result<SampleGrid> {
    let (lo, hi) = plot.range;
    if !(hi > lo) || plot.samples == 0 {
        return Err(Error::Input(format!("empty plot window [{lo}, {hi}] or no samples")));
    }
    let seq = Arc::new(load_or_generate(plot.series, plot.terms, cache_dir)?);
    render_grid_with(plot, seq)
}

/// As [`render_grid`], with the coefficients supplied.
pub fn render_grid_with(plot: &PlotSpec, seq: Arc<CoefficientSequence>) -> Result<SampleGrid> {
    let (lo, hi) = plot.range;
    if !(hi > lo) || plot.samples == 0 {
        return Err(Error::Input(format!("empty plot window [{lo}, {hi}] or no samples")));
    }
    let spec = SeriesSpec::new(seq, plot.alpha, plot.flavor)?;
    let step = (hi - lo) / plot.samples as f64;
    // windows aligned with a fine enough DFT grid are read off one transform
    let m = (2 * plot.terms + 2).next_power_of_two().max(plot.samples.next_power_of_two());
    let (stride, offset) = (step * m as f64, lo * m as f64);
    if stride >= 1.0 && stride.fract() == 0.0 && offset.fract() == 0.0 {
        let full = eval_grid_fft(&spec, m, plot.terms)?;
        let values = (0..=plot.samples)
            .map(|j| full.values[(offset as i64 + j as i64 * stride as i64).rem_euclid(m as i64) as usize])
            .collect();
        return Ok(SampleGrid { x_start: lo, step, count: plot.samples + 1, values, ..full });
    }
    eval_grid_chirp(&spec, lo, step, plot.samples + 1, plot.terms)
}

pub fn grid_csv(grid: &SampleGrid) -> String {
    let mut out = String::from("x,re,im\n");
    for (j, v) in grid.values.iter().enumerate() {
        let _ = writeln!(out, "{:.16e},{:.16e},{:.16e}", grid.x(j), v.re, v.im);
    }
    out
}

const WIDTH: f64 = 900.0;
const HEIGHT: f64 = 600.0;
const MARGIN: f64 = 60.0;

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace("--", "- -")
}

/// A 900×600 polyline of the real parts, with axes, caption and the
/// parameters that regenerate the CSV in a leading comment.
pub fn render_svg(plot: &PlotSpec, grid: &SampleGrid) -> String {
    let (lo, hi) = plot.range;
    let ys: Vec<f64> = grid.values.iter().map(|v| v.re).collect();
    let (mut ymin, mut ymax) = ys.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &y| (a.min(y), b.max(y)));
    if !(ymax > ymin) {
        ymin -= 1.0;
        ymax += 1.0;
    }
    let pad = 0.05 * (ymax - ymin);
    let (ymin, ymax) = (ymin - pad, ymax + pad);
    let px = |x: f64| MARGIN + (x - lo) / (hi - lo) * (WIDTH - 2.0 * MARGIN);
    let py = |y: f64| HEIGHT - MARGIN - (y - ymin) / (ymax - ymin) * (HEIGHT - 2.0 * MARGIN);

    let mut svg = String::new();
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        svg,
        "<!-- fracmod series={} alpha={} flavor={} terms={} range={}:{} samples={} -->",
        plot.series, plot.alpha, plot.flavor, plot.terms, lo, hi, plot.samples
    );
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="900" height="600" viewBox="0 0 900 600">"#
    );
    let _ = writeln!(svg, r#"<rect width="900" height="600" fill="white"/>"#);
    let (x0, x1, y0, y1) = (MARGIN, WIDTH - MARGIN, MARGIN, HEIGHT - MARGIN);
    let _ = writeln!(svg, r#"<path d="M{x0} {y1} H{x1} M{x0} {y1} V{y0}" stroke="black" fill="none"/>"#);
    if ymin < 0.0 && ymax > 0.0 {
        let z = py(0.0);
        let _ = writeln!(svg, r#"<path d="M{x0} {z:.2} H{x1}" stroke="gray" stroke-dasharray="4 4" fill="none"/>"#);
    }
    let ticks = [(lo, "start"), (hi, "end")];
    for (x, anchor) in ticks {
        let _ = writeln!(svg, r#"<text x="{:.2}" y="{}" font-size="14" text-anchor="{anchor}">{x}</text>"#, px(x), y1 + 20.0);
    }
    let _ = writeln!(svg, r#"<text x="{}" y="{:.2}" font-size="14" text-anchor="end">{:.4}</text>"#, x0 - 6.0, py(ymax - pad), ymax - pad);
    let _ = writeln!(svg, r#"<text x="{}" y="{:.2}" font-size="14" text-anchor="end">{:.4}</text>"#, x0 - 6.0, py(ymin + pad), ymin + pad);
    let mut points = String::new();
    for (j, y) in ys.iter().enumerate() {
        if j > 0 {
            points.push(' ');
        }
        let _ = write!(points, "{:.2},{:.2}", px(grid.x(j)), py(*y));
    }
    let _ = writeln!(svg, r#"<polyline points="{points}" stroke="navy" stroke-width="1" fill="none"/>"#);
    let _ = writeln!(svg, r#"<text x="450" y="30" font-size="16" text-anchor="middle">{}</text>"#, escape(&plot.caption));
    svg.push_str("</svg>\n");
    svg
}

/// Writes `<stem>.svg` and `<stem>.csv`.
pub fn write_plot(plot: &PlotSpec, stem: &Path, cache_dir: Option<&Path>) -> Result<(PathBuf, PathBuf)> {
    let seq = Arc::new(load_or_generate(plot.series, plot.terms, cache_dir)?);
    write_plot_with(plot, seq, stem)
}

fn write_plot_with(plot: &PlotSpec, seq: Arc<CoefficientSequence>, stem: &Path) -> Result<(PathBuf, PathBuf)> {
    let grid = render_grid_with(plot, seq)?;
    let svg_path = stem.with_extension("svg");
    let csv_path = stem.with_extension("csv");
    super::write_atomic(&svg_path, render_svg(plot, &grid).as_bytes())?;
    super::write_atomic(&csv_path, grid_csv(&grid).as_bytes())?;
    Ok((svg_path, csv_path))
}

/// All six presets into `dir` as `figN.svg` / `figN.csv`.
pub fn write_all_figures(dir: &Path, cache_dir: Option<&Path>) -> Result<Vec<(PathBuf, PathBuf)>> {
    std::fs::create_dir_all(dir)?;
    let mut sequences: HashMap<(SequenceName, usize), Arc<CoefficientSequence>> = HashMap::new();
    let mut written = Vec::new();
    for id in FigureId::ALL {
        let plot = FigurePreset::get(id).plot;
        let seq = match sequences.get(&(plot.series, plot.terms)) {
            Some(s) => Arc::clone(s),
            None => {
                let s = Arc::new(load_or_generate(plot.series, plot.terms, cache_dir)?);
                sequences.insert((plot.series, plot.terms), Arc::clone(&s));
                s
            }
        };
        written.push(write_plot_with(&plot, seq, &dir.join(id.name()))?);
    }
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preset_ranges() {
        let ranges: Vec<(f64, f64)> = FigureId::ALL.iter().map(|&id| FigurePreset::get(id).plot.range).collect();
        assert_eq!(
            ranges,
            [(0.0, 0.5), (0.4042, 0.4242), (-0.05, 0.05), (0.0, 0.02), (0.0, 0.02), (-0.5, 0.5)]
        );
        assert_eq!("fig4".parse::<FigureId>().unwrap(), FigureId::Fig4);
        assert!("fig7".parse::<FigureId>().is_err());
    }

    #[test]
    fn small_plot_is_deterministic() {
        let plot = PlotSpec { samples: 64, terms: 512, ..FigurePreset::get(FigureId::Fig2).plot };
        let a = render_grid(&plot, None).unwrap();
        let b = render_grid(&plot, None).unwrap();
        assert_eq!(grid_csv(&a), grid_csv(&b));
        assert_eq!(a.count, 65);
        assert!((a.x(64) - 0.4242).abs() < 1e-15);
        let svg = render_svg(&plot, &a);
        assert!(svg.contains(r#"width="900" height="600""#));
        assert!(svg.contains("series=elliptic14 alpha=1.75 flavor="));
    }

    #[test]
    fn zoom_matches_direct_evaluation() {
        let plot = PlotSpec { samples: 64, terms: 512, ..FigurePreset::get(FigureId::Fig3).plot };
        let zoom = render_grid(&plot, None).unwrap();
        let seq = Arc::new(load_or_generate(plot.series, plot.terms, None).unwrap());
        let spec = SeriesSpec::new(seq, plot.alpha, plot.flavor).unwrap();
        let direct = crate::series::eval_grid_direct(&spec, -0.05, 0.1 / 64.0, 65, 512).unwrap();
        for (a, b) in zoom.values.iter().zip(&direct.values) {
            assert!((a - b).norm() < 1e-12, "{a} {b}");
        }
    }

    #[test]
    fn aligned_window_matches_direct_evaluation() {
        let plot = PlotSpec { samples: 64, terms: 512, ..FigurePreset::get(FigureId::Fig6).plot };
        let fft = render_grid(&plot, None).unwrap();
        let seq = Arc::new(load_or_generate(plot.series, plot.terms, None).unwrap());
        let spec = SeriesSpec::new(seq, plot.alpha, plot.flavor).unwrap();
        let direct = crate::series::eval_grid_direct(&spec, -0.5, 1.0 / 64.0, 65, 512).unwrap();
        for (a, b) in fft.values.iter().zip(&direct.values) {
            assert!((a - b).norm() < 1e-12, "{a} {b}");
        }
    }
}
