//! SVG pictures of rank 1 and rank 2 weight systems. Coordinates are drawn
//! as given; the Gram form only enters through the computed data.

use std::fmt::Write;

use kirwan_core::{EpsilonWindow, RationalVector, StratumIndex, WeightSystem, Q};

const SIZE: f64 = 480.0;
const MARGIN: f64 = 40.0;

struct Frame {
    lo: [f64; 2],
    scale: f64,
}

impl Frame {
    fn fit(points: &[[f64; 2]]) -> Self {
        let mut lo = [0.0f64, 0.0];
        let mut hi = [0.0f64, 0.0];
        for p in points {
            for k in 0..2 {
                lo[k] = lo[k].min(p[k]);
                hi[k] = hi[k].max(p[k]);
            }
        }
        let span = (hi[0] - lo[0]).max(hi[1] - lo[1]).max(1.0);
        let scale = (SIZE - 2.0 * MARGIN) / span;
        // Center the shorter side.
        let pad = [
            (span - (hi[0] - lo[0])) / 2.0,
            (span - (hi[1] - lo[1])) / 2.0,
        ];
        Frame {
            lo: [lo[0] - pad[0], lo[1] - pad[1]],
            scale,
        }
    }

    fn px(&self, p: [f64; 2]) -> (f64, f64) {
        (
            MARGIN + (p[0] - self.lo[0]) * self.scale,
            SIZE - MARGIN - (p[1] - self.lo[1]) * self.scale,
        )
    }
}

fn xy(v: &RationalVector) -> [f64; 2] {
    let c = v.to_f64();
    [c[0], c.get(1).copied().unwrap_or(0.0)]
}

fn cross(o: &RationalVector, a: &RationalVector, b: &RationalVector) -> Q {
    (&a[0] - &o[0]) * (&b[1] - &o[1]) - (&a[1] - &o[1]) * (&b[0] - &o[0])
}

/// Exact convex hull of planar points in counterclockwise order (monotone chain).
fn hull_2d(points: &[RationalVector]) -> Vec<RationalVector> {
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a.lex_cmp(b));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let zero = Q::from_integer(0.into());
    let mut lower: Vec<RationalVector> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p) <= zero {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<RationalVector> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p) <= zero {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

fn polygon(svg: &mut String, frame: &Frame, pts: &[RationalVector], style: &str) {
    let coords: Vec<String> = pts
        .iter()
        .map(|p| {
            let (x, y) = frame.px(xy(p));
            format!("{x:.2},{y:.2}")
        })
        .collect();
    let tag = if pts.len() > 2 { "polygon" } else { "polyline" };
    let _ = writeln!(svg, r#"<{tag} points="{}" {style}/>"#, coords.join(" "));
}

fn label(ws: &WeightSystem, i: usize) -> String {
    let raw = ws
        .labels()
        .map(|l| l[i].clone())
        .unwrap_or_else(|| format!("x{i}"));
    raw.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Renders the weights, their hull, the hulls of each `Z_β`, the points of B and,
/// for a chosen β, its ray with the wall levels marked.
pub fn render(
    ws: &WeightSystem,
    b: &[StratumIndex],
    chosen: Option<(&StratumIndex, Option<&EpsilonWindow>)>,
) -> String {
    let mut extent: Vec<[f64; 2]> = ws.weights().iter().map(xy).collect();
    extent.extend(b.iter().map(|si| xy(&si.beta)));
    let ray_end = chosen.and_then(|(si, w)| {
        let w = w?;
        let top = w.walls.last().cloned().unwrap_or_else(|| Q::from_integer(1.into()));
        Some(si.beta.scale(&(top + Q::from_integer(1.into()) / Q::from_integer(4.into()))))
    });
    if let Some(end) = &ray_end {
        extent.push(xy(end));
    }
    let frame = Frame::fit(&extent);

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(svg, r##"<rect width="100%" height="100%" fill="#ffffff"/>"##);

    // Axes through the origin.
    let (ox, oy) = frame.px([0.0, 0.0]);
    let _ = writeln!(
        svg,
        r##"<line x1="{m:.2}" y1="{oy:.2}" x2="{e:.2}" y2="{oy:.2}" stroke="#bbbbbb"/>"##,
        m = MARGIN / 2.0,
        e = SIZE - MARGIN / 2.0
    );
    if ws.rank() == 2 {
        let _ = writeln!(
            svg,
            r##"<line x1="{ox:.2}" y1="{m:.2}" x2="{ox:.2}" y2="{e:.2}" stroke="#bbbbbb"/>"##,
            m = MARGIN / 2.0,
            e = SIZE - MARGIN / 2.0
        );
    }

    let hull_of = |pts: &[RationalVector]| -> Vec<RationalVector> {
        if ws.rank() == 2 {
            hull_2d(pts)
        } else {
            let lo = pts.iter().min_by(|a, b| a.lex_cmp(b)).cloned();
            let hi = pts.iter().max_by(|a, b| a.lex_cmp(b)).cloned();
            lo.into_iter().chain(hi).collect()
        }
    };
    polygon(
        &mut svg,
        &frame,
        &hull_of(ws.weights()),
        r##"fill="#dde8f5" fill-opacity="0.6" stroke="#4a6fa5" stroke-width="2""##,
    );
    for si in b.iter().filter(|si| !si.is_zero()) {
        polygon(
            &mut svg,
            &frame,
            &hull_of(&ws.support_weights(&si.z_support)),
            r##"fill="none" stroke="#a55a4a" stroke-dasharray="4 3""##,
        );
    }

    if let (Some((si, Some(w))), Some(end)) = (chosen, &ray_end) {
        let (x2, y2) = frame.px(xy(end));
        let _ = writeln!(
            svg,
            r##"<line x1="{ox:.2}" y1="{oy:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="#2a8a4a" stroke-width="1.5"/>"##
        );
        for wall in &w.walls {
            let (x, y) = frame.px(xy(&si.beta.scale(wall)));
            let _ = writeln!(
                svg,
                r##"<circle cx="{x:.2}" cy="{y:.2}" r="3" fill="none" stroke="#2a8a4a"/>"##
            );
        }
    }

    for (i, w) in ws.weights().iter().enumerate() {
        let (x, y) = frame.px(xy(w));
        let _ = writeln!(svg, r##"<circle cx="{x:.2}" cy="{y:.2}" r="4" fill="#1f3b63"/>"##);
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{:.2}" font-size="11" font-family="monospace">{}</text>"#,
            x + 6.0,
            y - 6.0,
            label(ws, i)
        );
    }
    for si in b {
        let (x, y) = frame.px(xy(&si.beta));
        let _ = writeln!(
            svg,
            r##"<path d="M{:.2},{:.2} l5,5 l-5,5 l-5,-5 z" fill="#c0392b"/>"##,
            x,
            y - 5.0
        );
        let _ = writeln!(
            svg,
            r##"<text x="{:.2}" y="{:.2}" font-size="10" font-family="monospace" fill="#c0392b">{}</text>"##,
            x + 6.0,
            y + 14.0,
            si.beta
        );
    }
    svg.push_str("</svg>\n");
    svg
}
