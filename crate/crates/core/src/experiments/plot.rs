use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use super::sweep::SurfaceTable;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PlotKind {
    Heatmap(PathBuf),
    Line(PathBuf),
    /// Single-point grid: a plain-text summary instead of a figure.
    Text(PathBuf),
}

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 480.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 110.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 60.0;

// Viridis control points.
const STOPS: [(f64, [f64; 3]); 5] = [
    (0.00, [68.0, 1.0, 84.0]),
    (0.25, [59.0, 82.0, 139.0]),
    (0.50, [33.0, 145.0, 140.0]),
    (0.75, [94.0, 201.0, 98.0]),
    (1.00, [253.0, 231.0, 37.0]),
];

fn color(t: f64) -> String {
    let t = t.clamp(0.0, 1.0);
    let k = STOPS.windows(2).position(|w| t <= w[1].0).unwrap_or(STOPS.len() - 2);
    let (t0, c0) = STOPS[k];
    let (t1, c1) = STOPS[k + 1];
    let u = (t - t0) / (t1 - t0);
    let ch = |i: usize| (c0[i] + (c1[i] - c0[i]) * u).round() as u8;
    format!("#{:02x}{:02x}{:02x}", ch(0), ch(1), ch(2))
}

fn header(out: &mut String, title: &str) {
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    )
    .unwrap();
    writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
    writeln!(out, r#"<text x="{}" y="22" text-anchor="middle" font-size="14">{title}</text>"#, WIDTH / 2.0).unwrap();
}

fn axis_ticks(out: &mut String, values: &[f64], horizontal: bool, x0: f64, y0: f64, span: f64) {
    let (lo, hi) = (values[0], values[values.len() - 1]);
    for k in 0..5 {
        let v = lo + (hi - lo) * k as f64 / 4.0;
        let frac = k as f64 / 4.0;
        if horizontal {
            let x = x0 + frac * span;
            writeln!(out, r#"<line x1="{x:.1}" y1="{y0:.1}" x2="{x:.1}" y2="{:.1}" stroke="black"/>"#, y0 + 5.0).unwrap();
            writeln!(out, r#"<text x="{x:.1}" y="{:.1}" text-anchor="middle">{}</text>"#, y0 + 18.0, fmt_tick(v)).unwrap();
        } else {
            let y = y0 - frac * span;
            writeln!(out, r#"<line x1="{:.1}" y1="{y:.1}" x2="{x0:.1}" y2="{y:.1}" stroke="black"/>"#, x0 - 5.0).unwrap();
            writeln!(out, r#"<text x="{:.1}" y="{:.1}" text-anchor="end">{}</text>"#, x0 - 8.0, y + 4.0, fmt_tick(v)).unwrap();
        }
    }
}

fn fmt_tick(v: f64) -> String {
    let s = format!("{v:.4}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" { "0".into() } else { s.into() }
}

fn title(table: &SurfaceTable) -> String {
    format!("Fidelity, {} gate", table.metadata.gate.gate)
}

fn heatmap(table: &SurfaceTable) -> String {
    let alphas = table.alphas();
    let gammas = table.gammas_hz();
    let (fmin, fmax) = table
        .rows
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), r| (a.min(r.fidelity), b.max(r.fidelity)));
    let range = if fmax > fmin { fmax - fmin } else { 1.0 };
    let pw = WIDTH - LEFT - RIGHT;
    let ph = HEIGHT - TOP - BOTTOM;
    let cw = pw / alphas.len() as f64;
    let chh = ph / gammas.len() as f64;

    let mut out = String::new();
    header(&mut out, &title(table));
    for (i, _) in alphas.iter().enumerate() {
        for (j, _) in gammas.iter().enumerate() {
            let f = table.at(i, j).fidelity;
            let x = LEFT + i as f64 * cw;
            let y = TOP + ph - (j + 1) as f64 * chh;
            writeln!(
                out,
                r#"<rect x="{x:.2}" y="{y:.2}" width="{:.2}" height="{:.2}" fill="{}"/>"#,
                cw + 0.3,
                chh + 0.3,
                color((f - fmin) / range)
            )
            .unwrap();
        }
    }
    writeln!(out, r#"<rect x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}" fill="none" stroke="black"/>"#).unwrap();
    axis_ticks(&mut out, &alphas, true, LEFT + cw / 2.0, TOP + ph, pw - cw);
    axis_ticks(&mut out, &gammas, false, LEFT, TOP + ph - chh / 2.0, ph - chh);
    writeln!(out, r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">α</text>"#, LEFT + pw / 2.0, HEIGHT - 15.0).unwrap();
    writeln!(
        out,
        r#"<text x="20" y="{:.1}" text-anchor="middle" transform="rotate(-90 20 {:.1})">γ (Hz)</text>"#,
        TOP + ph / 2.0,
        TOP + ph / 2.0
    )
    .unwrap();

    // colour bar
    let bx = WIDTH - RIGHT + 25.0;
    let n = 64;
    for k in 0..n {
        let t = k as f64 / (n - 1) as f64;
        let y = TOP + ph - (k + 1) as f64 * ph / n as f64;
        writeln!(
            out,
            r#"<rect x="{bx:.1}" y="{y:.2}" width="18" height="{:.2}" fill="{}"/>"#,
            ph / n as f64 + 0.3,
            color(t)
        )
        .unwrap();
    }
    writeln!(out, r#"<rect x="{bx:.1}" y="{TOP}" width="18" height="{ph}" fill="none" stroke="black"/>"#).unwrap();
    for (t, v) in [(0.0, fmin), (0.5, fmin + 0.5 * (fmax - fmin)), (1.0, fmax)] {
        writeln!(
            out,
            r#"<text x="{:.1}" y="{:.1}">{v:.5}</text>"#,
            bx + 24.0,
            TOP + ph - t * ph + 4.0
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    out
}

fn line_plot(table: &SurfaceTable) -> String {
    let along_gamma = table.metadata.alpha_count == 1;
    let xs: Vec<f64> = if along_gamma { table.gammas_hz() } else { table.alphas() };
    let ys: Vec<f64> = table.rows.iter().map(|r| r.fidelity).collect();
    let (ymin, ymax) = ys
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &y| (a.min(y), b.max(y)));
    let pad = ((ymax - ymin) * 0.05).max(1e-9);
    let (ymin, ymax) = (ymin - pad, ymax + pad);
    let pw = WIDTH - LEFT - 40.0;
    let ph = HEIGHT - TOP - BOTTOM;
    let px = |x: f64| LEFT + (x - xs[0]) / (xs[xs.len() - 1] - xs[0]) * pw;
    let py = |y: f64| TOP + ph - (y - ymin) / (ymax - ymin) * ph;

    let mut out = String::new();
    header(&mut out, &title(table));
    writeln!(out, r#"<rect x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}" fill="none" stroke="black"/>"#).unwrap();
    let path: Vec<String> = xs.iter().zip(&ys).map(|(&x, &y)| format!("{:.2},{:.2}", px(x), py(y))).collect();
    writeln!(out, r##"<polyline points="{}" fill="none" stroke="#3b528b" stroke-width="2"/>"##, path.join(" ")).unwrap();
    axis_ticks(&mut out, &xs, true, LEFT, TOP + ph, pw);
    axis_ticks(&mut out, &[ymin, ymax], false, LEFT, TOP + ph, ph);
    let label = if along_gamma {
        format!("γ (Hz) at α = {}", fmt_tick(table.rows[0].alpha))
    } else {
        format!("α at γ = {} Hz", fmt_tick(table.rows[0].gamma_hz))
    };
    writeln!(out, r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{label}</text>"#, LEFT + pw / 2.0, HEIGHT - 15.0).unwrap();
    out.push_str("</svg>\n");
    out
}

/// Renders the table as an SVG heat map, or as a line plot when one axis has
/// a single value. A single grid point is written as text next to `path`.
pub fn emit_plot(table: &SurfaceTable, path: &Path) -> Result<PlotKind> {
    if table.rows.is_empty() {
        return Err(Error::InvalidParameter("cannot plot an empty table".into()));
    }
    let (na, ng) = (table.metadata.alpha_count, table.metadata.gamma_count);
    let (body, kind) = if na == 1 && ng == 1 {
        let r = &table.rows[0];
        let target = path.with_extension("txt");
        let mut text = format!(
            "{} gate\nalpha = {}\ngamma_hz = {}\nfidelity = {:.12}\n",
            table.metadata.gate.gate, r.alpha, r.gamma_hz, r.fidelity
        );
        for (k, f) in r.per_state.iter().enumerate() {
            writeln!(text, "state {} = {f:.12}", k + 1).unwrap();
        }
        (text, PlotKind::Text(target))
    } else if na == 1 || ng == 1 {
        (line_plot(table), PlotKind::Line(path.to_path_buf()))
    } else {
        (heatmap(table), PlotKind::Heatmap(path.to_path_buf()))
    };
    let target = match &kind {
        PlotKind::Heatmap(p) | PlotKind::Line(p) | PlotKind::Text(p) => p,
    };
    fs::write(target, body).map_err(|e| Error::io(target, e))?;
    Ok(kind)
}
