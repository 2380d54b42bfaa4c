//! Circle-matrix SVG of mean transfer intensities.
//!
//! Row = receiving task, column = contributing task. Off-diagonal circles
//! are orange with area proportional to the mean event count. A diagonal
//! circle's area is proportional to intra-task plus summed inter-task
//! events, drawn as a gray (intra) and orange (inter) pie.

use std::fmt::Write as _;

use super::HarnessError;
use crate::analysis::TransferSummary;

const CELL: f64 = 40.0;
const MARGIN: f64 = 110.0;
const ORANGE: &str = "#f28e2b";
const GRAY: &str = "#9d9d9d";

fn circle(out: &mut String, cx: f64, cy: f64, r: f64, fill: &str) {
    let _ = writeln!(out, r#"<circle cx="{cx:.2}" cy="{cy:.2}" r="{r:.2}" fill="{fill}"/>"#);
}

fn wedge(out: &mut String, cx: f64, cy: f64, r: f64, from: f64, to: f64, fill: &str) {
    let point = |a: f64| (cx + r * a.cos(), cy + r * a.sin());
    let (x0, y0) = point(from);
    let (x1, y1) = point(to);
    let large = if to - from > std::f64::consts::PI { 1 } else { 0 };
    let _ = writeln!(
        out,
        r#"<path d="M {cx:.2} {cy:.2} L {x0:.2} {y0:.2} A {r:.2} {r:.2} 0 {large} 1 {x1:.2} {y1:.2} Z" fill="{fill}"/>"#
    );
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

pub fn render_svg(names: &[String], summary: &TransferSummary) -> Result<String, HarnessError> {
    let k = names.len();
    if summary.crossover.len() != k || summary.crossover.iter().any(|r| r.len() != k) {
        let cols = summary.crossover.first().map_or(0, Vec::len);
        return Err(HarnessError::NonSquare(summary.crossover.len(), cols));
    }
    let value = |t: usize, s: usize| {
        if t == s {
            summary.intra(t) + summary.inter_into(t)
        } else {
            summary.crossover[t][s]
        }
    };
    let vmax = (0..k)
        .flat_map(|t| (0..k).map(move |s| (t, s)))
        .map(|(t, s)| value(t, s))
        .fold(0.0f64, f64::max);
    let rmax = CELL / 2.0 - 2.0;
    let radius = |v: f64| if vmax > 0.0 { rmax * (v / vmax).sqrt() } else { 0.0 };

    let size = MARGIN + CELL * k as f64 + 10.0;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size:.0}" height="{size:.0}" viewBox="0 0 {size:.0} {size:.0}" font-family="sans-serif" font-size="10">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    for (i, name) in names.iter().enumerate() {
        let c = MARGIN + CELL * (i as f64 + 0.5);
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{c:.2}" text-anchor="end" dominant-baseline="middle">{}</text>"#,
            MARGIN - 6.0,
            escape(name)
        );
        let _ = writeln!(
            out,
            r#"<text x="{c:.2}" y="{:.2}" text-anchor="start" transform="rotate(-60 {c:.2} {:.2})">{}</text>"#,
            MARGIN - 6.0,
            MARGIN - 6.0,
            escape(name)
        );
    }
    for t in 0..k {
        for s in 0..k {
            let x = MARGIN + CELL * s as f64;
            let y = MARGIN + CELL * t as f64;
            let _ = writeln!(
                out,
                r##"<rect x="{x:.2}" y="{y:.2}" width="{CELL:.2}" height="{CELL:.2}" fill="none" stroke="#dddddd"/>"##
            );
            let (cx, cy) = (x + CELL / 2.0, y + CELL / 2.0);
            let v = value(t, s);
            if v <= 0.0 {
                continue;
            }
            let r = radius(v);
            if t != s {
                circle(&mut out, cx, cy, r, ORANGE);
                continue;
            }
            let intra = summary.intra(t);
            let inter = summary.inter_into(t);
            if inter <= 0.0 {
                circle(&mut out, cx, cy, r, GRAY);
            } else if intra <= 0.0 {
                circle(&mut out, cx, cy, r, ORANGE);
            } else {
                let start = -std::f64::consts::FRAC_PI_2;
                let split = start + std::f64::consts::TAU * intra / v;
                wedge(&mut out, cx, cy, r, start, split, GRAY);
                wedge(&mut out, cx, cy, r, split, start + std::f64::consts::TAU, ORANGE);
            }
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}
