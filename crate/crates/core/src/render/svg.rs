//! Static SVG output.

use std::f64::consts::FRAC_PI_2;
use std::fmt::Write;

use super::Layout;
use crate::geometry::{clock_point, Piece, Point};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SvgOptions {
    pub labels: bool,
    pub show_tree_edges: bool,
    /// Pixels per model unit.
    pub scale: f64,
}

impl SvgOptions {
    /// Labels on unless some bag has more than 30 vertices.
    pub fn for_layout(layout: &Layout) -> Self {
        SvgOptions { labels: layout.max_bag_size() <= 30, show_tree_edges: true, scale: 80.0 }
    }
}

const MARGIN: f64 = 0.25;

fn num(x: f64) -> String {
    let s = format!("{x:.2}");
    if s == "-0.00" {
        "0.00".to_string()
    } else {
        s
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

struct Canvas {
    origin: Point,
    scale: f64,
}

impl Canvas {
    fn at(&self, p: Point) -> String {
        format!("{} {}", num((p.x - self.origin.x) * self.scale), num((p.y - self.origin.y) * self.scale))
    }

    fn path(&self, pieces: &[Piece]) -> String {
        let mut d = String::new();
        for (i, p) in pieces.iter().enumerate() {
            if i == 0 {
                let _ = write!(d, "M {}", self.at(p.start()));
            }
            match *p {
                Piece::Segment { b, .. } => {
                    let _ = write!(d, " L {}", self.at(b));
                }
                Piece::Arc { center, radius, start, sweep } => {
                    // quarter turns at most, so the large-arc flag is always 0
                    let n = (sweep.abs() / FRAC_PI_2).ceil().max(1.0) as usize;
                    let r = num(radius * self.scale);
                    // counterclockwise on screen is SVG's negative direction
                    let flag = if sweep >= 0.0 { 0 } else { 1 };
                    for k in 1..=n {
                        let e = clock_point(center, radius, start + sweep * k as f64 / n as f64);
                        let _ = write!(d, " A {r} {r} 0 0 {flag} {}", self.at(e));
                    }
                }
            }
        }
        d
    }
}

/// Renders `layout`; identical input gives identical bytes.
pub fn to_svg(layout: &Layout, opts: &SvgOptions) -> Vec<u8> {
    let (lo, hi) = layout.bounds();
    let pad = MARGIN * layout.disks.first().map_or(1.0, |d| d.radius);
    let cv = Canvas { origin: Point::new(lo.x - pad, lo.y - pad), scale: opts.scale };
    let w = num((hi.x - lo.x + 2.0 * pad) * opts.scale);
    let h = num((hi.y - lo.y + 2.0 * pad) * opts.scale);
    let mut s = String::new();
    s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(s, "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">");
    let group = |s: &mut String, head: &str, body: Vec<String>| {
        if body.is_empty() {
            return;
        }
        let _ = writeln!(s, "<g {head}>");
        for line in body {
            let _ = writeln!(s, "  {line}");
        }
        s.push_str("</g>\n");
    };
    let stroke = num(0.02 * opts.scale);

    if opts.show_tree_edges {
        let lines = layout
            .tree_edges
            .iter()
            .map(|&(p, c)| {
                let (a, b) = (&layout.disks[p], &layout.disks[c]);
                let len = a.center.dist(b.center).max(f64::MIN_POSITIVE);
                let dir = b.center.sub(a.center).scale(1.0 / len);
                let (x1, y1) = split(cv.at(a.center.add(dir.scale(a.radius))));
                let (x2, y2) = split(cv.at(b.center.sub(dir.scale(b.radius))));
                format!("<line x1=\"{x1}\" y1=\"{y1}\" x2=\"{x2}\" y2=\"{y2}\"/>")
            })
            .collect();
        group(&mut s, &format!("id=\"tree-edges\" stroke=\"#d9d9d9\" stroke-width=\"{}\"", num(0.06 * opts.scale)), lines);
    }

    let disks = layout
        .disks
        .iter()
        .map(|d| {
            let (x, y) = split(cv.at(d.center));
            format!("<circle cx=\"{x}\" cy=\"{y}\" r=\"{}\"/>", num(d.radius * opts.scale))
        })
        .collect();
    group(&mut s, &format!("id=\"disks\" fill=\"none\" stroke=\"#9e9e9e\" stroke-width=\"{stroke}\""), disks);

    let tracks = layout
        .track_curves
        .iter()
        .map(|t| format!("<path stroke=\"{}\" d=\"{}\"/>", layout.palette[t.vertex], cv.path(&t.pieces)))
        .collect();
    group(&mut s, &format!("id=\"tracks\" fill=\"none\" stroke-width=\"{}\"", num(0.03 * opts.scale)), tracks);

    let edges = layout.edge_curves.iter().map(|e| format!("<path d=\"{}\"/>", cv.path(&e.pieces))).collect();
    group(&mut s, &format!("id=\"edges\" fill=\"none\" stroke=\"#000000\" stroke-width=\"{stroke}\""), edges);

    let dots = layout
        .vertex_points
        .iter()
        .map(|p| {
            let (x, y) = split(cv.at(p.point));
            format!("<circle cx=\"{x}\" cy=\"{y}\" r=\"{}\" fill=\"{}\"/>", num(0.05 * opts.scale), layout.palette[p.vertex])
        })
        .collect();
    group(&mut s, "id=\"vertices\" stroke=\"#000000\" stroke-width=\"0.5\"", dots);

    if opts.labels {
        let linear = layout.style.variant.is_linear();
        let texts = layout
            .vertex_points
            .iter()
            .map(|p| {
                let d = &layout.disks[p.bag];
                let at = if linear {
                    // beside the dot, on the spine
                    p.point.add(Point::new(0.08 * d.radius, 0.0))
                } else {
                    let out = p.point.sub(d.center);
                    let len = out.dist(Point::new(0.0, 0.0)).max(f64::MIN_POSITIVE);
                    p.point.add(out.scale(0.1 * d.radius / len))
                };
                let (x, y) = split(cv.at(at));
                let anchor = if linear { "start" } else { "middle" };
                format!("<text x=\"{x}\" y=\"{y}\" text-anchor=\"{anchor}\" dominant-baseline=\"middle\">{}</text>", escape(&layout.labels[p.vertex]))
            })
            .collect();
        group(&mut s, &format!("id=\"labels\" font-family=\"sans-serif\" font-size=\"{}\"", num(0.12 * opts.scale)), texts);
    }
    s.push_str("</svg>\n");
    s.into_bytes()
}

fn split(xy: String) -> (String, String) {
    let (x, y) = xy.split_once(' ').expect("two coordinates");
    (x.to_string(), y.to_string())
}
