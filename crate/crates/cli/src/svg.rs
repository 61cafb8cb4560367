//! Deterministic SVG in the style of the marked-fan figures: axes, rays to
//! the marked points, the outline through the marked points in cyclic order,
//! point labels, and the polygon `Σ_h` dashed when it is nonempty.
//!
//! One lattice unit is 20 user units (0.4pt x 50). All coordinates go
//! through [`num`] so identical input gives identical bytes.

use std::fmt::Write;

use forge_core::fanpoly::{AugmentedFan, Polygon};
use forge_core::lattice::IVec2;
use forge_core::{Rational, Scalar};

pub const UNIT: f64 = 20.0;

/// Fixed two-decimal formatting with trailing zeros trimmed.
fn num(x: f64) -> String {
    let s = format!("{:.2}", x);
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.to_string()
    }
}

/// `(−5,−2)` with typographic minus signs.
pub fn label(p: &IVec2) -> String {
    format!("({},{})", p.x, p.y).replace('-', "\u{2212}")
}

fn screen(p: [f64; 2]) -> (String, String) {
    (num(p[0] * UNIT), num(-p[1] * UNIT))
}

fn points_attr(points: &[[f64; 2]]) -> String {
    points
        .iter()
        .map(|&p| {
            let (x, y) = screen(p);
            format!("{x},{y}")
        })
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn render(fan: &AugmentedFan, sigma: &Polygon<Rational>) -> String {
    let marked: Vec<[f64; 2]> = fan.ccw_rays().iter().map(IVec2::to_f64).collect();
    let poly: Vec<[f64; 2]> =
        sigma.vertices().iter().map(|v| [v[0].to_f64_lossy(), v[1].to_f64_lossy()]).collect();
    let extent = marked.iter().chain(&poly).fold(1.0f64, |m, p| m.max(p[0].abs()).max(p[1].abs()));
    let half = ((extent + 1.0) * UNIT).ceil();
    let size = num(2.0 * half);
    let (lo, hi) = (num(-half), num(half));

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{size}\" height=\"{size}\" viewBox=\"{lo} {lo} {size} {size}\">"
    );
    let _ = writeln!(out, "  <g id=\"axes\" stroke=\"#808080\" stroke-width=\"0.8\">");
    let _ = writeln!(out, "    <line x1=\"{lo}\" y1=\"0\" x2=\"{hi}\" y2=\"0\"/>");
    let _ = writeln!(out, "    <line x1=\"0\" y1=\"{lo}\" x2=\"0\" y2=\"{hi}\"/>");
    out.push_str("  </g>\n");

    out.push_str("  <g id=\"rays\" stroke=\"#000000\" stroke-width=\"1\">\n");
    for &p in &marked {
        let (x, y) = screen(p);
        let _ = writeln!(out, "    <line x1=\"0\" y1=\"0\" x2=\"{x}\" y2=\"{y}\"/>");
    }
    out.push_str("  </g>\n");
    let _ = writeln!(
        out,
        "  <polygon id=\"marked\" points=\"{}\" fill=\"none\" stroke=\"#000000\" stroke-width=\"1.2\"/>",
        points_attr(&marked)
    );
    if !poly.is_empty() {
        let _ = writeln!(
            out,
            "  <polygon id=\"sigma\" points=\"{}\" fill=\"none\" stroke=\"#b03030\" stroke-width=\"1\" stroke-dasharray=\"4 3\"/>",
            points_attr(&poly)
        );
    }

    out.push_str("  <g id=\"labels\" font-family=\"serif\" font-size=\"11\">\n");
    for (ray, &p) in fan.ccw_rays().iter().zip(&marked) {
        let anchor = match p[0].partial_cmp(&0.0) {
            Some(std::cmp::Ordering::Greater) => "start",
            Some(std::cmp::Ordering::Less) => "end",
            _ => "middle",
        };
        let dx = if p[0] > 0.0 { 4.0 } else if p[0] < 0.0 { -4.0 } else { 0.0 };
        let dy = if p[1] >= 0.0 { -4.0 } else { 12.0 };
        let _ = writeln!(
            out,
            "    <text x=\"{}\" y=\"{}\" text-anchor=\"{anchor}\">{}</text>",
            num(p[0] * UNIT + dx),
            num(-p[1] * UNIT + dy),
            label(ray)
        );
    }
    out.push_str("  </g>\n</svg>\n");
    out
}
