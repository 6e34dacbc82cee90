//! Static SVG drawing of a configuration in the affine chart z = 1.
//!
//! Output depends only on the input: fixed canvas, fixed number formatting.
//! Points with z = 0 sit on a band around the frame in their direction.
//! Over a prime field the chart shows residues and lines are omitted, since
//! they are not straight in that picture.

use std::fmt::Write as _;

use fatpoints_core::algebra::{Field, ProjectivePoint, Scalar};
use fatpoints_core::geometry::Line;

const SIZE: f64 = 480.0;
/// Width of the band for points at infinity.
const BAND: f64 = 36.0;
const RADIUS: f64 = 4.5;

fn to_f64(s: &Scalar) -> f64 {
    let text = s.to_string();
    match text.split_once('/') {
        Some((n, d)) => n.parse::<f64>().unwrap_or(f64::NAN) / d.parse::<f64>().unwrap_or(f64::NAN),
        None => text.parse().unwrap_or(f64::NAN),
    }
}

/// Affine window `[x0, x1] x [y0, y1]`, square, with a margin.
#[derive(Clone, Copy, Debug)]
struct Window {
    x0: f64,
    y0: f64,
    span: f64,
}

impl Window {
    fn around(pts: &[(f64, f64)]) -> Window {
        if pts.is_empty() {
            return Window { x0: -1.0, y0: -1.0, span: 2.0 };
        }
        let (mut lx, mut hx, mut ly, mut hy) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
        for &(x, y) in pts {
            lx = lx.min(x);
            hx = hx.max(x);
            ly = ly.min(y);
            hy = hy.max(y);
        }
        let span = (hx - lx).max(hy - ly).max(1.0) * 1.3;
        Window {
            x0: (lx + hx - span) / 2.0,
            y0: (ly + hy - span) / 2.0,
            span,
        }
    }

    /// Canvas coordinates; y grows downwards on the canvas.
    fn map(&self, x: f64, y: f64) -> (f64, f64) {
        let inner = SIZE - 2.0 * BAND;
        (
            BAND + (x - self.x0) / self.span * inner,
            BAND + (1.0 - (y - self.y0) / self.span) * inner,
        )
    }

    /// Segment of `a x + b y + c = 0` inside the window.
    fn clip(&self, a: f64, b: f64, c: f64) -> Option<((f64, f64), (f64, f64))> {
        let (x1, y1) = (self.x0 + self.span, self.y0 + self.span);
        let mut hits: Vec<(f64, f64)> = Vec::new();
        let eps = 1e-9 * self.span;
        if b.abs() > 0.0 {
            for x in [self.x0, x1] {
                let y = -(a * x + c) / b;
                if y >= self.y0 - eps && y <= y1 + eps {
                    hits.push((x, y));
                }
            }
        }
        if a.abs() > 0.0 {
            for y in [self.y0, y1] {
                let x = -(b * y + c) / a;
                if x >= self.x0 - eps && x <= x1 + eps {
                    hits.push((x, y));
                }
            }
        }
        hits.sort_by(|p, q| p.partial_cmp(q).expect("finite"));
        hits.dedup_by(|p, q| (p.0 - q.0).abs() <= eps && (p.1 - q.1).abs() <= eps);
        match hits.as_slice() {
            [p, .., q] => Some((*p, *q)),
            _ => None,
        }
    }
}

fn coords(p: &ProjectivePoint) -> [f64; 3] {
    p.coords().clone().map(|c| match p.field() {
        Field::Prime(_) => c.residue().map_or(f64::NAN, |r| r as f64),
        Field::Rational => to_f64(&c),
    })
}

/// Canvas position of a point at infinity with direction `(x, y)`.
fn on_band(x: f64, y: f64) -> (f64, f64) {
    let c = SIZE / 2.0;
    let reach = c - BAND / 2.0;
    let scale = reach / x.abs().max(y.abs());
    (c + x * scale, c - y * scale)
}

pub fn svg(field: Field, points: &[ProjectivePoint], lines: &[Line]) -> String {
    let raw: Vec<[f64; 3]> = points.iter().map(coords).collect();
    let affine: Vec<(f64, f64)> = raw
        .iter()
        .filter(|c| c[2] != 0.0)
        .map(|c| (c[0] / c[2], c[1] / c[2]))
        .collect();
    let win = Window::around(&affine);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(s, "<!-- field {field}, {} points, {} lines -->", points.len(), lines.len());
    let _ = writeln!(s, r##"<rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="#ffffff"/>"##);
    let inner = SIZE - 2.0 * BAND;
    let _ = writeln!(
        s,
        r##"<rect x="{BAND}" y="{BAND}" width="{inner}" height="{inner}" fill="none" stroke="#bbbbbb" stroke-dasharray="4 3"/>"##
    );

    if field == Field::Rational {
        let _ = writeln!(s, r##"<g stroke="#1f5f99" stroke-width="1.5">"##);
        for line in lines {
            let [a, b, c] = line.coeffs().clone().map(|v| to_f64(&v));
            if let Some((p, q)) = win.clip(a, b, c) {
                let (x1, y1) = win.map(p.0, p.1);
                let (x2, y2) = win.map(q.0, q.1);
                let _ = writeln!(
                    s,
                    r#"<line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}"><title>{}</title></line>"#,
                    line
                );
            }
        }
        let _ = writeln!(s, "</g>");
    }

    let _ = writeln!(s, r##"<g fill="#b22222" font-family="monospace" font-size="11">"##);
    for (i, (p, c)) in points.iter().zip(&raw).enumerate() {
        let (x, y) = if c[2] != 0.0 {
            win.map(c[0] / c[2], c[1] / c[2])
        } else {
            on_band(c[0], c[1])
        };
        let _ = writeln!(
            s,
            r#"<circle cx="{x:.2}" cy="{y:.2}" r="{RADIUS}"><title>{p}</title></circle>"#
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}">P{}</text>"#,
            x + RADIUS + 2.0,
            y - RADIUS - 2.0,
            i + 1
        );
    }
    let _ = writeln!(s, "</g>");
    s.push_str("</svg>\n");
    s
}
