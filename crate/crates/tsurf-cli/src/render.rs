//! SVG pictures of flat presentations.
//!
//! Polygons are laid out left to right in input order with their own
//! shapes, then the picture is scaled so its longer side is 800 units,
//! plus a margin.
//! Cylinder pieces are shaded by cylinder index from a fixed palette;
//! cone points (angle above 2π) are filled dots, regular points hollow.

use std::fmt::Write;
use tsurf::flow::Decomposition;
use tsurf::surface::TranslationSurface;

pub const SIZE: f64 = 800.0;
const MARGIN: f64 = 20.0;

const PALETTE: [&str; 8] = ["#a6cee3", "#b2df8a", "#fb9a99", "#fdbf6f", "#cab2d6", "#ffff99", "#8dd3c7", "#bebada"];
const CLASS_COLORS: [&str; 6] = ["#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

type Pt = (f64, f64);

// keep the half-plane a·p ≥ c
fn clip(poly: &[Pt], a: Pt, c: f64) -> Vec<Pt> {
    let f = |p: &Pt| a.0 * p.0 + a.1 * p.1 - c;
    let mut out = Vec::new();
    for i in 0..poly.len() {
        let (p, q) = (poly[i], poly[(i + 1) % poly.len()]);
        let (fp, fq) = (f(&p), f(&q));
        if fp >= 0.0 {
            out.push(p);
        }
        if (fp >= 0.0) != (fq >= 0.0) {
            let t = fp / (fp - fq);
            out.push((p.0 + t * (q.0 - p.0), p.1 + t * (q.1 - p.1)));
        }
    }
    out
}

fn fmt(x: f64) -> String {
    // avoid "-0.000"
    let s = format!("{x:.3}");
    if s == "-0.000" {
        "0.000".into()
    } else {
        s
    }
}

fn path(pts: &[Pt]) -> String {
    pts.iter().map(|p| format!("{},{}", fmt(p.0), fmt(p.1))).collect::<Vec<_>>().join(" ")
}

/// The picture. `flow` is the decomposition with its flow vector `(x, y)`.
pub fn svg(s: &TranslationSurface, flow: Option<(&Decomposition, Pt)>) -> String {
    let raw: Vec<Vec<Pt>> = s
        .polygons()
        .iter()
        .map(|p| {
            p.vertices
                .iter()
                .map(|z| {
                    let c = z.approx();
                    (c.re, c.im)
                })
                .collect()
        })
        .collect();
    let bbox = |pts: &[Pt]| {
        let (mut x0, mut y0, mut x1, mut y1) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
        for p in pts {
            x0 = x0.min(p.0);
            y0 = y0.min(p.1);
            x1 = x1.max(p.0);
            y1 = y1.max(p.1);
        }
        (x0, y0, x1, y1)
    };
    let boxes: Vec<_> = raw.iter().map(|p| bbox(p)).collect();
    let gap = 0.1 * boxes.iter().map(|b| (b.2 - b.0).max(b.3 - b.1)).fold(0.0, f64::max);
    // per-polygon translation into the row
    let mut shifts = Vec::new();
    let mut x = 0.0;
    let top = boxes.iter().map(|b| b.3).fold(f64::MIN, f64::max);
    for b in &boxes {
        shifts.push((x - b.0, top - b.3));
        x += b.2 - b.0 + gap;
    }
    let width = x - gap;
    let height = boxes.iter().map(|b| b.3 - b.1).fold(0.0, f64::max);
    let scale = SIZE / width.max(height);
    let (w, h) = (width * scale + 2.0 * MARGIN, height * scale + 2.0 * MARGIN);
    let place = |p: usize, q: Pt| (MARGIN + (q.0 + shifts[p].0) * scale, MARGIN + (top - (q.1 + shifts[p].1)) * scale);

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        fmt(w),
        fmt(h),
        fmt(w),
        fmt(h)
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    if let Some((dec, v)) = flow {
        for (ci, cyl) in dec.cylinders.iter().enumerate() {
            let color = PALETTE[ci % PALETTE.len()];
            for piece in &cyl.pieces {
                // height Im(v̄ z) = v.x z.y - v.y z.x
                let a = (-v.1, v.0);
                let lo = piece.lo.to_f64();
                let hi = piece.hi.to_f64();
                let strip = clip(&clip(&raw[piece.polygon], a, lo), (-a.0, -a.1), -hi);
                if strip.len() < 3 {
                    continue;
                }
                let pts: Vec<Pt> = strip.iter().map(|&q| place(piece.polygon, q)).collect();
                let _ =
                    writeln!(out, r#"<polygon class="cyl{ci}" points="{}" fill="{color}" stroke="none"/>"#, path(&pts));
            }
        }
    }
    for (p, poly) in raw.iter().enumerate() {
        let pts: Vec<Pt> = poly.iter().map(|&q| place(p, q)).collect();
        let _ = writeln!(out, r#"<polygon points="{}" fill="none" stroke="black" stroke-width="1.5"/>"#, path(&pts));
    }
    // edge labels: one number per glued pair
    for (i, (e, f)) in s.edge_pairs().iter().enumerate() {
        for side in [e, f] {
            let poly = &raw[side.polygon];
            let (a, b) = (poly[side.edge], poly[(side.edge + 1) % poly.len()]);
            let m = place(side.polygon, ((a.0 + b.0) / 2.0, (a.1 + b.1) / 2.0));
            let _ = writeln!(
                out,
                r#"<text x="{}" y="{}" font-size="11" text-anchor="middle" fill="gray">{}</text>"#,
                fmt(m.0),
                fmt(m.1),
                i + 1
            );
        }
    }
    for (p, poly) in raw.iter().enumerate() {
        for (j, &q) in poly.iter().enumerate() {
            let class = s.vertex_class(p, j);
            let cone = s.classes()[class].multiplicity > 1;
            let c = place(p, q);
            let color = CLASS_COLORS[class % CLASS_COLORS.len()];
            let fill = if cone { color } else { "white" };
            let _ = writeln!(
                out,
                r#"<circle cx="{}" cy="{}" r="4" fill="{fill}" stroke="{color}" stroke-width="1.5"/>"#,
                fmt(c.0),
                fmt(c.1)
            );
        }
    }
    out.push_str("</svg>\n");
    out
}
