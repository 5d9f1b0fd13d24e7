//! Minimal, dependency-free SVG rendering for line plots and heatmaps.
//!
//! Output is a pure function of the input, so identical data always renders
//! to identical bytes. Every document starts with a comment naming the
//! library version.

use std::fmt::Write;

use crate::Matrix;

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 440.0;
const LEFT: f64 = 78.0;
const RIGHT: f64 = 24.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 56.0;
const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"];
/// Heatmaps are drawn with at most this many columns.
pub const MAX_HEATMAP_COLUMNS: usize = 512;
const COLOR_LEVELS: usize = 64;

#[derive(Debug, Clone, PartialEq)]
pub struct Curve {
    pub label: String,
    pub xs: Vec<f64>,
    pub ys: Vec<f64>,
    /// Draw a dot at every point instead of a polyline.
    pub markers: bool,
}

impl Curve {
    pub fn line(label: impl Into<String>, xs: Vec<f64>, ys: Vec<f64>) -> Self {
        Self { label: label.into(), xs, ys, markers: false }
    }

    pub fn points(label: impl Into<String>, xs: Vec<f64>, ys: Vec<f64>) -> Self {
        Self { label: label.into(), xs, ys, markers: true }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinePlot {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub log_x: bool,
    pub log_y: bool,
    pub curves: Vec<Curve>,
}

impl LinePlot {
    pub fn new(title: impl Into<String>, x_label: impl Into<String>, y_label: impl Into<String>) -> Self {
        Self {
            title: title.into(),
            x_label: x_label.into(),
            y_label: y_label.into(),
            log_x: false,
            log_y: false,
            curves: Vec::new(),
        }
    }

    pub fn log_x(mut self) -> Self {
        self.log_x = true;
        self
    }

    pub fn log_y(mut self) -> Self {
        self.log_y = true;
        self
    }

    pub fn with_curve(mut self, curve: Curve) -> Self {
        self.curves.push(curve);
        self
    }

    pub fn to_svg(&self) -> String {
        let tx = |v: f64| if self.log_x { v.log10() } else { v };
        let ty = |v: f64| if self.log_y { v.log10() } else { v };
        let pts: Vec<Vec<(f64, f64)>> = self
            .curves
            .iter()
            .map(|c| {
                c.xs.iter()
                    .zip(&c.ys)
                    .map(|(&x, &y)| (tx(x), ty(y)))
                    .filter(|(x, y)| x.is_finite() && y.is_finite())
                    .collect()
            })
            .collect();
        let xr = range(pts.iter().flatten().map(|p| p.0));
        let yr = range(pts.iter().flatten().map(|p| p.1));
        let frame = Frame::new(xr, yr);

        let mut svg = header(&self.title);
        frame.axes(&mut svg, &self.x_label, &self.y_label, self.log_x, self.log_y);
        for (i, (curve, pts)) in self.curves.iter().zip(&pts).enumerate() {
            let color = PALETTE[i % PALETTE.len()];
            if curve.markers {
                for &(x, y) in pts {
                    let _ = writeln!(
                        svg,
                        r#"<circle cx="{}" cy="{}" r="2.5" fill="{color}"/>"#,
                        f(frame.px(x)),
                        f(frame.py(y))
                    );
                }
            } else if !pts.is_empty() {
                let path: Vec<String> = pts
                    .iter()
                    .map(|&(x, y)| format!("{},{}", f(frame.px(x)), f(frame.py(y))))
                    .collect();
                let _ = writeln!(
                    svg,
                    r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#,
                    path.join(" ")
                );
            }
            if !curve.label.is_empty() {
                let ly = TOP + 14.0 + 16.0 * i as f64;
                let lx = WIDTH - RIGHT - 150.0;
                let _ = writeln!(
                    svg,
                    r#"<rect x="{}" y="{}" width="12" height="4" fill="{color}"/><text x="{}" y="{}" font-size="12">{}</text>"#,
                    f(lx),
                    f(ly - 6.0),
                    f(lx + 18.0),
                    f(ly),
                    escape(&curve.label)
                );
            }
        }
        svg.push_str("</svg>\n");
        svg
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Heatmap {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    /// Rows follow `y`, columns follow `x`.
    pub values: Matrix<f64>,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub log_y: bool,
    /// Per column, the largest trusted `y`; drawn as a dashed boundary.
    pub coi: Option<Vec<f64>>,
    /// Polylines of `(x, y)` drawn on top, e.g. maxima lines.
    pub overlays: Vec<Vec<(f64, f64)>>,
}

impl Heatmap {
    pub fn new(title: impl Into<String>, values: Matrix<f64>, x: Vec<f64>, y: Vec<f64>) -> Self {
        Self {
            title: title.into(),
            x_label: "time".into(),
            y_label: "scale".into(),
            values,
            x,
            y,
            log_y: false,
            coi: None,
            overlays: Vec::new(),
        }
    }

    pub fn to_svg(&self) -> String {
        let ty = |v: f64| if self.log_y { v.log10() } else { v };
        let (rows, cols) = (self.values.rows(), self.values.cols());
        let xr = range(self.x.iter().copied());
        let yr = range(self.y.iter().map(|&v| ty(v)));
        let frame = Frame::new(xr, yr);
        let mut svg = header(&self.title);

        let finite: Vec<f64> = self.values.as_slice().iter().copied().filter(|v| v.is_finite()).collect();
        let (lo, hi) = range(finite.iter().copied());
        let bins = cols.clamp(1, MAX_HEATMAP_COLUMNS);
        let width = (WIDTH - LEFT - RIGHT) / bins as f64;
        let height = (HEIGHT - TOP - BOTTOM) / rows.max(1) as f64;
        for r in 0..rows {
            let row = self.values.row(r);
            let levels: Vec<Option<usize>> = (0..bins)
                .map(|b| {
                    let (a, z) = (b * cols / bins, ((b + 1) * cols / bins).max(b * cols / bins + 1));
                    let m = row[a..z].iter().copied().filter(|v| v.is_finite()).fold(f64::NAN, f64::max);
                    m.is_finite().then(|| {
                        let t = if hi > lo { (m - lo) / (hi - lo) } else { 0.5 };
                        ((t * (COLOR_LEVELS - 1) as f64).round() as usize).min(COLOR_LEVELS - 1)
                    })
                })
                .collect();
            // Image rows are drawn top = largest y.
            let y0 = TOP + (rows - 1 - r) as f64 * height;
            let mut b = 0;
            while b < bins {
                let level = levels[b];
                let start = b;
                while b < bins && levels[b] == level {
                    b += 1;
                }
                if let Some(level) = level {
                    let _ = writeln!(
                        svg,
                        r#"<rect x="{}" y="{}" width="{}" height="{}" fill="{}"/>"#,
                        f(LEFT + start as f64 * width),
                        f(y0),
                        f((b - start) as f64 * width + 0.3),
                        f(height + 0.3),
                        color(level as f64 / (COLOR_LEVELS - 1) as f64)
                    );
                }
            }
        }
        // The image is drawn on a row grid; overlays use the same row mapping.
        let row_of = |v: f64| -> f64 {
            let tv = ty(v);
            let ys: Vec<f64> = self.y.iter().map(|&y| ty(y)).collect();
            let idx = match ys.iter().position(|&y| y >= tv) {
                Some(0) => 0.0,
                Some(i) => (i - 1) as f64 + (tv - ys[i - 1]) / (ys[i] - ys[i - 1]),
                None => (rows.max(1) - 1) as f64,
            };
            TOP + (rows as f64 - 0.5 - idx) * height
        };
        let col_of = |v: f64| LEFT + (frame.px(v) - LEFT) * (1.0 - 1.0 / bins as f64) + width / 2.0;
        if let Some(coi) = &self.coi {
            let ymax = self.y.last().copied().unwrap_or(0.0);
            let pts: Vec<String> = self
                .x
                .iter()
                .zip(coi)
                .step_by((cols / MAX_HEATMAP_COLUMNS).max(1))
                .map(|(&x, &c)| format!("{},{}", f(col_of(x)), f(row_of(c.min(ymax)))))
                .collect();
            let _ = writeln!(
                svg,
                r##"<polyline fill="none" stroke="#ffffff" stroke-width="1.5" stroke-dasharray="5,4" points="{}"/>"##,
                pts.join(" ")
            );
        }
        for line in &self.overlays {
            let pts: Vec<String> = line
                .iter()
                .map(|&(x, y)| format!("{},{}", f(col_of(x)), f(row_of(y))))
                .collect();
            let _ = writeln!(
                svg,
                r##"<polyline fill="none" stroke="#ff2020" stroke-width="1" points="{}"/>"##,
                pts.join(" ")
            );
        }
        frame.axes(&mut svg, &self.x_label, &self.y_label, false, self.log_y);
        svg.push_str("</svg>\n");
        svg
    }
}

struct Frame {
    x: (f64, f64),
    y: (f64, f64),
}

impl Frame {
    fn new(x: (f64, f64), y: (f64, f64)) -> Self {
        Self { x, y }
    }

    fn px(&self, v: f64) -> f64 {
        LEFT + (v - self.x.0) / (self.x.1 - self.x.0) * (WIDTH - LEFT - RIGHT)
    }

    fn py(&self, v: f64) -> f64 {
        HEIGHT - BOTTOM - (v - self.y.0) / (self.y.1 - self.y.0) * (HEIGHT - TOP - BOTTOM)
    }

    fn axes(&self, svg: &mut String, x_label: &str, y_label: &str, log_x: bool, log_y: bool) {
        let (x0, x1, y0, y1) = (LEFT, WIDTH - RIGHT, TOP, HEIGHT - BOTTOM);
        let _ = writeln!(
            svg,
            r##"<rect x="{}" y="{}" width="{}" height="{}" fill="none" stroke="#333333"/>"##,
            f(x0),
            f(y0),
            f(x1 - x0),
            f(y1 - y0)
        );
        for i in 0..=4 {
            let v = self.x.0 + (self.x.1 - self.x.0) * i as f64 / 4.0;
            let px = self.px(v);
            let label = tick_label(if log_x { 10f64.powf(v) } else { v });
            let _ = writeln!(
                svg,
                r##"<line x1="{0}" y1="{1}" x2="{0}" y2="{2}" stroke="#333333"/><text x="{0}" y="{3}" font-size="11" text-anchor="middle">{4}</text>"##,
                f(px),
                f(y1),
                f(y1 + 5.0),
                f(y1 + 18.0),
                label
            );
            let v = self.y.0 + (self.y.1 - self.y.0) * i as f64 / 4.0;
            let py = self.py(v);
            let label = tick_label(if log_y { 10f64.powf(v) } else { v });
            let _ = writeln!(
                svg,
                r##"<line x1="{0}" y1="{1}" x2="{2}" y2="{1}" stroke="#333333"/><text x="{3}" y="{4}" font-size="11" text-anchor="end">{5}</text>"##,
                f(x0 - 5.0),
                f(py),
                f(x0),
                f(x0 - 8.0),
                f(py + 4.0),
                label
            );
        }
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{}" font-size="13" text-anchor="middle">{}</text>"#,
            f((x0 + x1) / 2.0),
            f(HEIGHT - 14.0),
            escape(x_label)
        );
        let _ = writeln!(
            svg,
            r#"<text x="16" y="{0}" font-size="13" text-anchor="middle" transform="rotate(-90 16 {0})">{1}</text>"#,
            f((y0 + y1) / 2.0),
            escape(y_label)
        );
    }
}

fn header(title: &str) -> String {
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif">"#
    );
    let _ = writeln!(svg, "<!-- streamlens {} -->", env!("CARGO_PKG_VERSION"));
    let _ = writeln!(svg, r##"<rect width="100%" height="100%" fill="#ffffff"/>"##);
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="24" font-size="15" text-anchor="middle">{}</text>"#,
        f(WIDTH / 2.0),
        escape(title)
    );
    svg
}

/// Finite range, widened when empty or degenerate.
fn range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values
        .filter(|v| v.is_finite())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(v), b.max(v)));
    if !lo.is_finite() {
        (0.0, 1.0)
    } else if hi - lo <= 1e-12 * lo.abs().max(1.0) {
        (lo - 0.5, hi + 0.5)
    } else {
        (lo, hi)
    }
}

/// Coordinates with two decimals are plenty at this resolution.
fn f(v: f64) -> String {
    format!("{v:.2}")
}

fn tick_label(v: f64) -> String {
    let a = v.abs();
    if a != 0.0 && !(1e-3..1e5).contains(&a) {
        format!("{v:.1e}")
    } else {
        let s = format!("{v:.3}");
        let s = s.trim_end_matches('0').trim_end_matches('.');
        if s == "-0" { "0".into() } else { s.to_string() }
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Perceptually ordered dark-blue → teal → yellow ramp.
fn color(t: f64) -> String {
    const STOPS: [(f64, [f64; 3]); 5] = [
        (0.0, [68.0, 1.0, 84.0]),
        (0.25, [59.0, 82.0, 139.0]),
        (0.5, [33.0, 145.0, 140.0]),
        (0.75, [94.0, 201.0, 98.0]),
        (1.0, [253.0, 231.0, 37.0]),
    ];
    let t = t.clamp(0.0, 1.0);
    let i = STOPS.iter().position(|s| s.0 >= t).unwrap_or(4).max(1);
    let (t0, c0) = STOPS[i - 1];
    let (t1, c1) = STOPS[i];
    let u = (t - t0) / (t1 - t0);
    let c: Vec<u8> = (0..3).map(|k| (c0[k] + u * (c1[k] - c0[k])).round() as u8).collect();
    format!("#{:02x}{:02x}{:02x}", c[0], c[1], c[2])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_plot_is_deterministic_and_well_formed() {
        let xs: Vec<f64> = (1..50).map(|v| v as f64).collect();
        let ys: Vec<f64> = xs.iter().map(|x| x.sqrt()).collect();
        let plot = LinePlot::new("R/S <curve>", "n", "R/S")
            .log_x()
            .log_y()
            .with_curve(Curve::points("data", xs.clone(), ys.clone()))
            .with_curve(Curve::line("fit", xs, ys));
        let a = plot.to_svg();
        assert_eq!(a, plot.to_svg());
        assert!(a.starts_with("<svg"));
        assert!(a.contains(concat!("<!-- streamlens ", env!("CARGO_PKG_VERSION"), " -->")));
        assert!(a.contains("R/S &lt;curve&gt;"));
        assert!(a.trim_end().ends_with("</svg>"));
        assert_eq!(a.matches("<circle").count(), 49);
    }

    #[test]
    fn non_finite_points_are_skipped() {
        let plot = LinePlot::new("t", "x", "y").with_curve(Curve::line(
            "",
            vec![1.0, 2.0, 3.0],
            vec![1.0, f64::NAN, 2.0],
        ));
        let svg = plot.to_svg();
        assert!(!svg.contains("NaN"));
        let empty = LinePlot::new("t", "x", "y").to_svg();
        assert!(empty.contains("</svg>"));
    }

    #[test]
    fn heatmap_merges_runs_and_caps_columns() {
        let values = Matrix::from_rows(vec![vec![1.0; 2000], (0..2000).map(|v| v as f64).collect()]);
        let mut h = Heatmap::new("field", values, (0..2000).map(|v| v as f64).collect(), vec![2.0, 4.0]);
        h.log_y = true;
        h.coi = Some(vec![3.0; 2000]);
        h.overlays.push(vec![(10.0, 4.0), (12.0, 2.0)]);
        let svg = h.to_svg();
        // The flat row collapses into one rectangle; the ramp has one per colour level.
        let rects = svg.matches("<rect x=").count();
        assert!(rects <= 2 + COLOR_LEVELS + 1, "{rects}");
        assert!(svg.contains("stroke-dasharray"));
        assert!(svg.contains("#ff2020"));
    }

    #[test]
    fn palette_endpoints() {
        assert_eq!(color(0.0), "#440154");
        assert_eq!(color(1.0), "#fde725");
        assert_eq!(tick_label(0.5), "0.5");
        assert_eq!(tick_label(1e-6), "1.0e-6");
        assert_eq!(tick_label(-0.0), "0");
    }
}
