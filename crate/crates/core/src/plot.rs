//! SVG scatter of the generations of a pair, in shifted coordinates `(k, l−1/2)`.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::geometry::{generation, GENERATION_CAP};
use crate::pairs::{apply_operator, ExponentPair, Letter};

const SCALE: f64 = 1000.0;
const MARGIN: f64 = 40.0;
const COLORS: [&str; 6] = ["#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02"];

fn px(k: f64, l: f64) -> (f64, f64) {
    (MARGIN + k * SCALE, MARGIN + (0.5 - (l - 0.5)) * SCALE)
}

/// Points of generations `1..=depth` (or just `initial` when `depth` is 0),
/// tagged with their generation.
pub fn generation_points(initial: &ExponentPair, depth: usize) -> Result<Vec<(usize, ExponentPair)>> {
    if depth > GENERATION_CAP {
        return Err(Error::DepthCap { depth, cap: GENERATION_CAP });
    }
    if depth == 0 {
        return Ok(vec![(0, generation(initial, 0)?.entries.remove(0).1)]);
    }
    let mut out = Vec::new();
    let mut cur = vec![initial.clone()];
    for n in 1..=depth {
        let mut next = Vec::with_capacity(cur.len() * 2);
        for op in [Letter::A, Letter::BA] {
            next.extend(cur.iter().map(|p| apply_operator(op, p)));
        }
        out.extend(next.iter().cloned().map(|p| (n, p)));
        cur = next;
    }
    Ok(out)
}

pub fn generations_svg(initial: &ExponentPair, depth: usize) -> Result<String> {
    let pts = generation_points(initial, depth)?;
    let size = 2.0 * MARGIN + 0.5 * SCALE;
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size:.0}" height="{size:.0}" viewBox="0 0 {size:.0} {size:.0}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);

    let (x0, y0) = px(0.0, 0.5);
    let (x1, _) = px(0.5, 0.5);
    let (_, y1) = px(0.0, 1.0);
    let _ = writeln!(s, r#"<g stroke="black" stroke-width="1">"#);
    let _ = writeln!(s, r#"<line x1="{x0:.3}" y1="{y0:.3}" x2="{x1:.3}" y2="{y0:.3}"/>"#);
    let _ = writeln!(s, r#"<line x1="{x0:.3}" y1="{y0:.3}" x2="{x0:.3}" y2="{y1:.3}"/>"#);
    for i in 0..=5 {
        let t = f64::from(i) / 10.0;
        let (tx, _) = px(t, 0.5);
        let (_, ty) = px(0.0, 0.5 + t);
        let _ = writeln!(s, r#"<line x1="{tx:.3}" y1="{y0:.3}" x2="{tx:.3}" y2="{:.3}"/>"#, y0 + 5.0);
        let _ = writeln!(s, r#"<line x1="{x0:.3}" y1="{ty:.3}" x2="{:.3}" y2="{ty:.3}"/>"#, x0 - 5.0);
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, r#"<g font-family="sans-serif" font-size="12">"#);
    for i in 0..=5 {
        let t = f64::from(i) / 10.0;
        let (tx, _) = px(t, 0.5);
        let (_, ty) = px(0.0, 0.5 + t);
        let _ = writeln!(s, r#"<text x="{tx:.3}" y="{:.3}" text-anchor="middle">{t:.1}</text>"#, y0 + 20.0);
        let _ = writeln!(s, r#"<text x="{:.3}" y="{:.3}" text-anchor="end">{t:.1}</text>"#, x0 - 8.0, ty + 4.0);
    }
    let _ = writeln!(s, r#"<text x="{:.3}" y="{:.3}">k</text>"#, x1 + 6.0, y0 + 4.0);
    let _ = writeln!(s, r#"<text x="{:.3}" y="{:.3}">l-1/2</text>"#, x0 - 16.0, y1 - 10.0);
    let _ = writeln!(s, "</g>");

    // P' = (0,1/6)x(2/3,1), P'' = (1/6,1/2)x(1/2,2/3)
    let _ = writeln!(s, r#"<g fill="none" stroke="gray" stroke-dasharray="4 3">"#);
    for (ka, kb, la, lb) in [(0.0, 1.0 / 6.0, 2.0 / 3.0, 1.0), (1.0 / 6.0, 0.5, 0.5, 2.0 / 3.0)] {
        let (xa, ya) = px(ka, lb);
        let (xb, yb) = px(kb, la);
        let _ = writeln!(
            s,
            r#"<rect x="{xa:.3}" y="{ya:.3}" width="{:.3}" height="{:.3}"/>"#,
            xb - xa,
            yb - ya
        );
    }
    let _ = writeln!(s, "</g>");

    let _ = writeln!(s, r#"<g stroke="none">"#);
    for (n, p) in &pts {
        let (k, l) = p.to_f64();
        let (x, y) = px(k, l);
        let color = COLORS[n % COLORS.len()];
        let _ = writeln!(s, r#"<circle class="g{n}" cx="{x:.3}" cy="{y:.3}" r="2.5" fill="{color}"/>"#);
    }
    let _ = writeln!(s, "</g>");
    s.push_str("</svg>\n");
    Ok(s)
}

pub fn plot_generations(initial: &ExponentPair, depth: usize, path: &Path) -> Result<usize> {
    let svg = generations_svg(initial, depth)?;
    std::fs::write(path, &svg).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    Ok(svg.matches("<circle").count())
}
