//! Normalised MMD curves as a self-contained SVG line chart.
//!
//! Every coordinate and label is printed with a fixed number of decimals and
//! series are ordered by their label, so equal input gives equal bytes.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::error::CliError;
use crate::table::{Row, HEADER};

const WIDTH: f64 = 760.0;
const HEIGHT: f64 = 460.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 180.0;
const TOP: f64 = 50.0;
const BOTTOM: f64 = 60.0;
const COLORS: [&str; 8] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2"];

/// One kernel's `(n, MMD(F_n) · n^{3/2})` points.
#[derive(Debug, PartialEq)]
pub struct Series {
    pub label: String,
    pub points: Vec<(u32, f64)>,
}

fn label(kernel: &str, lambda: &str) -> String {
    if lambda.is_empty() {
        kernel.to_owned()
    } else {
        format!("{kernel}:{lambda}")
    }
}

fn collect(entries: impl IntoIterator<Item = (String, u32, f64)>) -> Vec<Series> {
    let mut map: BTreeMap<String, Vec<(u32, f64)>> = BTreeMap::new();
    for (label, n, value) in entries {
        map.entry(label).or_default().push((n, value));
    }
    map.into_iter()
        .map(|(label, mut points)| {
            points.sort_by_key(|p| p.0);
            Series { label, points }
        })
        .collect()
}

pub fn series_from_rows(rows: &[Row]) -> Vec<Series> {
    collect(rows.iter().map(|r| {
        let cells = r.cells();
        (label(&cells[2], &cells[3]), r.n, r.normalized)
    }))
}

/// Parses table CSV as written by the `table` command.
pub fn series_from_csv(text: &str) -> Result<Vec<Series>, CliError> {
    let bad = |msg: String| CliError::Input(format!("malformed table CSV: {msg}"));
    let mut reader = csv::ReaderBuilder::new().has_headers(false).from_reader(text.as_bytes());
    let mut records = reader.records();
    let header = records.next().ok_or_else(|| bad("input is empty".into()))?.map_err(|e| bad(e.to_string()))?;
    if header.iter().collect::<Vec<_>>().join(",") != HEADER {
        return Err(bad(format!("expected header {HEADER:?}")));
    }
    let mut entries = Vec::new();
    for record in records {
        let record = record.map_err(|e| bad(e.to_string()))?;
        let line = record.position().map_or(0, |p| p.line());
        let n: u32 = record[0].parse().map_err(|_| bad(format!("line {line}: n = {:?}", &record[0])))?;
        let value: f64 = record[5].parse().map_err(|_| bad(format!("line {line}: mmd_normalized = {:?}", &record[5])))?;
        if !value.is_finite() {
            return Err(bad(format!("line {line}: mmd_normalized is not finite")));
        }
        if record[2].is_empty() {
            return Err(bad(format!("line {line}: empty kernel")));
        }
        entries.push((label(&record[2], &record[3]), n, value));
    }
    if entries.is_empty() {
        return Err(bad("no data rows".into()));
    }
    Ok(collect(entries))
}

/// A step of 1, 2 or 5 times a power of ten giving about five intervals.
fn tick_step(span: f64) -> f64 {
    let raw = span / 5.0;
    let mag = 10f64.powf(raw.log10().floor());
    let unit = [1.0, 2.0, 5.0, 10.0].into_iter().find(|u| u * mag >= raw).unwrap_or(10.0);
    unit * mag
}

fn decimals(step: f64) -> usize {
    (-step.log10().floor()).max(0.0) as usize
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

pub fn render(series: &[Series]) -> String {
    let all = series.iter().flat_map(|s| s.points.iter());
    let (mut x_lo, mut x_hi, mut y_hi) = (u32::MAX, 0u32, 0f64);
    for &(n, v) in all {
        x_lo = x_lo.min(n);
        x_hi = x_hi.max(n);
        y_hi = y_hi.max(v);
    }
    let (x_lo, x_hi) = if x_lo >= x_hi { (f64::from(x_lo) - 1.0, f64::from(x_lo) + 1.0) } else { (f64::from(x_lo), f64::from(x_hi)) };
    let y_step = tick_step(if y_hi > 0.0 { y_hi * 1.1 } else { 1.0 });
    let y_top = ((if y_hi > 0.0 { y_hi * 1.1 } else { 1.0 }) / y_step).ceil() * y_step;
    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let sx = |n: f64| LEFT + (n - x_lo) / (x_hi - x_lo) * plot_w;
    let sy = |v: f64| TOP + plot_h - v / y_top * plot_h;

    let mut svg = String::new();
    let w = &mut svg;
    let _ = writeln!(w, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#);
    let _ = writeln!(w, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(w, r#"<text x="{:.2}" y="28" text-anchor="middle" font-size="15">Normalised MMD of Farey sequences</text>"#, LEFT + plot_w / 2.0);

    // axes
    let _ = writeln!(
        w,
        r#"<path d="M{LEFT:.2},{TOP:.2} V{:.2} H{:.2}" fill="none" stroke="black"/>"#,
        TOP + plot_h,
        LEFT + plot_w
    );
    let x_step = tick_step(x_hi - x_lo).max(1.0);
    let mut t = (x_lo / x_step).ceil() * x_step;
    while t <= x_hi + 1e-9 {
        let x = sx(t);
        let _ = writeln!(w, r#"<line x1="{x:.2}" y1="{:.2}" x2="{x:.2}" y2="{:.2}" stroke="black"/>"#, TOP + plot_h, TOP + plot_h + 5.0);
        let _ = writeln!(w, r#"<text x="{x:.2}" y="{:.2}" text-anchor="middle">{t:.0}</text>"#, TOP + plot_h + 20.0);
        t += x_step;
    }
    let digits = decimals(y_step);
    let ticks = (y_top / y_step).round() as u32;
    for i in 0..=ticks {
        let v = f64::from(i) * y_step;
        let y = sy(v);
        let _ = writeln!(w, r#"<line x1="{:.2}" y1="{y:.2}" x2="{LEFT:.2}" y2="{y:.2}" stroke="black"/>"#, LEFT - 5.0);
        let _ = writeln!(w, r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{v:.digits$}</text>"#, LEFT - 8.0, y + 4.0);
    }
    let _ = writeln!(w, r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">n</text>"#, LEFT + plot_w / 2.0, HEIGHT - 15.0);
    let _ = writeln!(
        w,
        r#"<text x="20" y="{:.2}" text-anchor="middle" transform="rotate(-90 20 {:.2})">MMD(F_n) · n^(3/2)</text>"#,
        TOP + plot_h / 2.0,
        TOP + plot_h / 2.0
    );

    for (i, s) in series.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let pts: Vec<String> = s.points.iter().map(|&(n, v)| format!("{:.2},{:.2}", sx(f64::from(n)), sy(v))).collect();
        let _ = writeln!(w, r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#, pts.join(" "));
        let ly = TOP + 10.0 + 20.0 * i as f64;
        let lx = LEFT + plot_w + 15.0;
        let _ = writeln!(w, r#"<line x1="{lx:.2}" y1="{ly:.2}" x2="{:.2}" y2="{ly:.2}" stroke="{color}" stroke-width="2"/>"#, lx + 20.0);
        let _ = writeln!(w, r#"<text x="{:.2}" y="{:.2}">{}</text>"#, lx + 26.0, ly + 4.0, escape(&short_label(&s.label)));
    }
    svg.push_str("</svg>\n");
    svg
}

/// `matern32:1.7320508075688772` as `matern32 (λ = 1.732)`.
fn short_label(label: &str) -> String {
    match label.split_once(':') {
        Some((id, lambda)) => match lambda.parse::<f64>() {
            Ok(l) => format!("{id} (λ = {l:.4})"),
            Err(_) => label.to_owned(),
        },
        None => label.to_owned(),
    }
}
