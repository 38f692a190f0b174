// Copyright 2026 the cheeger authors
// SPDX-License-Identifier: Apache-2.0

//! Markdown summary and self-contained SVG charts for a [`Report`].

use std::fmt::Write;

use super::{CheckKind, Report};

const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

fn fmt_q(q: Option<f64>) -> String {
    q.map_or_else(|| "-".to_string(), |q| format!("{q}"))
}

pub(super) fn markdown(report: &Report) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# Inequality suite\n");
    let _ = writeln!(
        s,
        "seed {} | {} checks | {} passed | {} failed\n",
        report.seed, report.summary.total, report.summary.passed, report.summary.failed
    );
    let _ = writeln!(s, "Corpus:\n");
    for c in &report.corpus {
        let _ = writeln!(s, "- {c}");
    }
    let qs: Vec<String> = report.qs.iter().map(|q| q.to_string()).collect();
    let _ = writeln!(s, "\nq values: {}\n", qs.join(", "));
    let _ = writeln!(s, "| check | shape | q | lhs | rhs | margin | kind | result |");
    let _ = writeln!(s, "|---|---|---|---|---|---|---|---|");
    for r in &report.results {
        let kind = match r.kind {
            CheckKind::OneSided => "lhs <= rhs",
            CheckKind::Identity => "lhs = rhs",
        };
        let _ = writeln!(
            s,
            "| {} | {} | {} | {:.9e} | {:.9e} | {:.0e} | {} | {} |",
            r.check_id,
            r.shape.replace('|', "/"),
            fmt_q(r.q),
            r.lhs,
            r.rhs,
            r.margin,
            kind,
            if r.passed { "pass" } else { "**FAIL**" }
        );
    }
    let _ = writeln!(s, "\n## Checks\n");
    let mut seen: Vec<&str> = Vec::new();
    for r in &report.results {
        if !seen.contains(&r.check_id.as_str()) {
            seen.push(&r.check_id);
            let _ = writeln!(s, "- `{}`: {}", r.check_id, r.anchor);
        }
    }
    s
}

struct Series {
    label: String,
    points: Vec<(f64, f64)>,
    joined: bool,
}

/// Log-log chart with optional `y = x` reference line.
fn loglog_chart(title: &str, xlabel: &str, ylabel: &str, series: &[Series], diagonal: bool) -> String {
    const W: f64 = 640.0;
    const H: f64 = 480.0;
    const LEFT: f64 = 70.0;
    const RIGHT: f64 = 170.0;
    const TOP: f64 = 40.0;
    const BOTTOM: f64 = 50.0;
    let pts = series.iter().flat_map(|s| s.points.iter()).filter(|(x, y)| *x > 0.0 && *y > 0.0);
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in pts {
        x0 = x0.min(x.log10());
        x1 = x1.max(x.log10());
        y0 = y0.min(y.log10());
        y1 = y1.max(y.log10());
    }
    if !x0.is_finite() {
        (x0, x1, y0, y1) = (0.0, 1.0, 0.0, 1.0);
    }
    if diagonal {
        (x0, x1) = (x0.min(y0), x1.max(y1));
        (y0, y1) = (x0, x1);
    }
    let pad = |a: f64, b: f64| if b - a < 1e-9 { (a - 0.5, b + 0.5) } else { (a - 0.05 * (b - a), b + 0.05 * (b - a)) };
    let (x0, x1) = pad(x0, x1);
    let (y0, y1) = pad(y0, y1);
    let px = |x: f64| LEFT + (x.log10() - x0) / (x1 - x0) * (W - LEFT - RIGHT);
    let py = |y: f64| H - BOTTOM - (y.log10() - y0) / (y1 - y0) * (H - TOP - BOTTOM);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
    let _ = writeln!(s, r#"<text x="{}" y="22" text-anchor="middle" font-size="15">{}</text>"#, W / 2.0, escape(title));
    let _ = writeln!(
        s,
        r#"<rect x="{LEFT}" y="{TOP}" width="{}" height="{}" fill="none" stroke="black"/>"#,
        W - LEFT - RIGHT,
        H - TOP - BOTTOM
    );
    for d in (x0.ceil() as i32)..=(x1.floor() as i32) {
        let x = px(10f64.powi(d));
        let _ = writeln!(s, r##"<line x1="{x:.1}" y1="{TOP}" x2="{x:.1}" y2="{}" stroke="#ddd"/>"##, H - BOTTOM);
        let _ = writeln!(s, r#"<text x="{x:.1}" y="{}" text-anchor="middle">1e{d}</text>"#, H - BOTTOM + 16.0);
    }
    for d in (y0.ceil() as i32)..=(y1.floor() as i32) {
        let y = py(10f64.powi(d));
        let _ = writeln!(s, r##"<line x1="{LEFT}" y1="{y:.1}" x2="{}" y2="{y:.1}" stroke="#ddd"/>"##, W - RIGHT);
        let _ = writeln!(s, r#"<text x="{}" y="{:.1}" text-anchor="end">1e{d}</text>"#, LEFT - 6.0, y + 4.0);
    }
    let _ = writeln!(s, r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#, (LEFT + W - RIGHT) / 2.0, H - 12.0, escape(xlabel));
    let _ = writeln!(
        s,
        r#"<text x="18" y="{y}" text-anchor="middle" transform="rotate(-90 18 {y})">{}</text>"#,
        escape(ylabel),
        y = (TOP + H - BOTTOM) / 2.0
    );
    if diagonal {
        let (a, b) = (10f64.powf(x0), 10f64.powf(x1));
        let _ = writeln!(
            s,
            r##"<line x1="{:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}" stroke="#888" stroke-dasharray="5,4"/>"##,
            px(a),
            py(a),
            px(b),
            py(b)
        );
    }
    for (k, ser) in series.iter().enumerate() {
        let color = PALETTE[k % PALETTE.len()];
        let visible: Vec<(f64, f64)> = ser.points.iter().copied().filter(|(x, y)| *x > 0.0 && *y > 0.0).collect();
        if ser.joined && visible.len() > 1 {
            let path: Vec<String> = visible.iter().map(|&(x, y)| format!("{:.1},{:.1}", px(x), py(y))).collect();
            let _ = writeln!(s, r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="1.5"/>"#, path.join(" "));
        }
        for &(x, y) in &visible {
            let _ = writeln!(s, r#"<circle cx="{:.1}" cy="{:.1}" r="3.5" fill="{color}"/>"#, px(x), py(y));
        }
        let ly = TOP + 14.0 + 18.0 * k as f64;
        let lx = W - RIGHT + 12.0;
        let _ = writeln!(s, r#"<circle cx="{lx}" cy="{}" r="4" fill="{color}"/>"#, ly - 4.0);
        let _ = writeln!(s, r#"<text x="{}" y="{ly}">{}</text>"#, lx + 10.0, escape(&ser.label));
    }
    s.push_str("</svg>\n");
    s
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// `h_q` against `C h_1^(2/q - 1)`, one series per `q`; points on or above
/// the dashed diagonal satisfy the lower comparison.
pub fn sandwich_svg(report: &Report) -> String {
    let mut qs: Vec<f64> = report.sandwich.iter().map(|p| p.q).collect();
    qs.sort_by(f64::total_cmp);
    qs.dedup();
    let series: Vec<Series> = qs
        .iter()
        .map(|&q| Series {
            label: format!("q = {q}"),
            points: report.sandwich.iter().filter(|p| p.q == q).map(|p| (p.comparison, p.hq)).collect(),
            joined: false,
        })
        .collect();
    loglog_chart("Comparison with h_1", "C h_1^(2/q-1)", "h_q estimate", &series, true)
}

/// Ratio against size for each elongation sweep.
pub fn elongation_svg(report: &Report) -> String {
    let series: Vec<Series> = report
        .elongation
        .iter()
        .map(|r| Series {
            label: format!("{:?} q={}", r.family, r.q).to_lowercase(),
            points: r.rows.iter().map(|row| (row.size, row.ratio)).collect(),
            joined: true,
        })
        .collect();
    loglog_chart("Elongated sets", "size", "P / A^(1/q)", &series, false)
}
