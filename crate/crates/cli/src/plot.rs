//! Minimal SVG plots. Output depends only on the series: points keep their
//! order, coordinates are printed to fixed precision, nothing else varies.

use std::fmt::Write as _;
use std::path::Path;

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Style {
    /// Markers joined in series order.
    Line,
    Scatter,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Plot {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub style: Style,
    pub points: Vec<(f64, f64)>,
    /// A horizontal reference line, e.g. a limit value.
    pub level: Option<f64>,
}

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 420.0;
const MARGIN: f64 = 56.0;

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Expands a degenerate range so single points land mid-frame.
fn range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(v), b.max(v)));
    if hi - lo < 1e-12 {
        (lo - 1.0, hi + 1.0)
    } else {
        let pad = (hi - lo) * 0.05;
        (lo - pad, hi + pad)
    }
}

pub fn render_svg(plot: &Plot) -> Result<String, CliError> {
    if plot.points.is_empty() {
        return Err(CliError::Input(format!("plot {:?} has an empty series", plot.title)));
    }
    if plot.points.iter().any(|(x, y)| !x.is_finite() || !y.is_finite()) {
        return Err(CliError::Input(format!("plot {:?} has a non-finite point", plot.title)));
    }
    let (x0, x1) = range(plot.points.iter().map(|p| p.0));
    let (y0, y1) = range(plot.points.iter().map(|p| p.1).chain(plot.level));
    let sx = |x: f64| MARGIN + (x - x0) / (x1 - x0) * (WIDTH - 2.0 * MARGIN);
    let sy = |y: f64| HEIGHT - MARGIN - (y - y0) / (y1 - y0) * (HEIGHT - 2.0 * MARGIN);
    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#);
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(s, r#"<text x="{}" y="24" text-anchor="middle" font-size="15">{}</text>"#, WIDTH / 2.0, escape(&plot.title));
    let (left, right, top, bottom) = (MARGIN, WIDTH - MARGIN, MARGIN, HEIGHT - MARGIN);
    let _ = writeln!(s, r#"<path d="M{left} {top} L{left} {bottom} L{right} {bottom}" stroke="black" fill="none"/>"#);
    for (v, x, y, anchor) in [(x0, left, bottom + 16.0, "start"), (x1, right, bottom + 16.0, "end")] {
        let _ = writeln!(s, r#"<text x="{x}" y="{y}" text-anchor="{anchor}" font-size="11">{v:.4}</text>"#);
    }
    for (v, y) in [(y0, bottom), (y1, top)] {
        let _ = writeln!(s, r#"<text x="{}" y="{y:.2}" text-anchor="end" font-size="11">{v:.4}</text>"#, left - 4.0);
    }
    let _ = writeln!(s, r#"<text x="{}" y="{}" text-anchor="middle" font-size="12">{}</text>"#, WIDTH / 2.0, HEIGHT - 12.0, escape(&plot.x_label));
    let _ = writeln!(
        s,
        r#"<text x="16" y="{}" text-anchor="middle" font-size="12" transform="rotate(-90 16 {})">{}</text>"#,
        HEIGHT / 2.0,
        HEIGHT / 2.0,
        escape(&plot.y_label)
    );
    if let Some(level) = plot.level {
        let y = sy(level);
        let _ = writeln!(s, r#"<line x1="{left}" y1="{y:.2}" x2="{right}" y2="{y:.2}" stroke="gray" stroke-dasharray="4 3"/>"#);
    }
    if plot.style == Style::Line && plot.points.len() > 1 {
        let pts: Vec<String> = plot.points.iter().map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y))).collect();
        let _ = writeln!(s, r#"<polyline points="{}" stroke="steelblue" fill="none"/>"#, pts.join(" "));
    }
    for &(x, y) in &plot.points {
        let _ = writeln!(s, r#"<circle cx="{:.2}" cy="{:.2}" r="3" fill="steelblue"/>"#, sx(x), sy(y));
    }
    s.push_str("</svg>\n");
    Ok(s)
}

pub fn emit_plot(plot: &Plot, path: &Path) -> Result<(), CliError> {
    let svg = render_svg(plot)?;
    std::fs::write(path, svg).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plot(points: Vec<(f64, f64)>) -> Plot {
        Plot { title: "e_n/n".into(), x_label: "n".into(), y_label: "e_n/n".into(), style: Style::Line, points, level: Some(1.5) }
    }

    #[test]
    fn single_point_has_one_marker() {
        let svg = render_svg(&plot(vec![(1.0, 2.0)])).unwrap();
        assert!(svg.starts_with("<svg") && svg.ends_with("</svg>\n"));
        assert_eq!(svg.matches("<circle").count(), 1);
        assert!(!svg.contains("<polyline"));
    }

    #[test]
    fn empty_series_rejected() {
        assert!(render_svg(&plot(Vec::new())).is_err());
        assert!(render_svg(&plot(vec![(f64::NAN, 1.0)])).is_err());
    }

    #[test]
    fn deterministic() {
        let p = plot((1..=10).map(|n| (n as f64, 1.5 + 0.5 / n as f64)).collect());
        assert_eq!(render_svg(&p).unwrap(), render_svg(&p.clone()).unwrap());
        assert_eq!(render_svg(&p).unwrap().matches("<circle").count(), 10);
    }
}
