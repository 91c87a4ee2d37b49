//! Planar primitives: points, straight pieces and circular arcs, and their
//! pairwise intersections.
//!
//! Angles are "clock angles": measured from twelve o'clock, increasing
//! counterclockwise on screen. The canvas has y growing downward, so twelve
//! o'clock is the minimum-y point of a circle.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

pub const TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn dist(self, o: Point) -> f64 {
        (self.x - o.x).hypot(self.y - o.y)
    }

    pub fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }

    pub fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }

    pub fn scale(self, s: f64) -> Point {
        Point::new(self.x * s, self.y * s)
    }

    pub fn close(self, o: Point, tol: f64) -> bool {
        (self.x - o.x).abs() <= tol && (self.y - o.y).abs() <= tol
    }
}

fn cross(a: Point, b: Point) -> f64 {
    a.x * b.y - a.y * b.x
}

fn dot(a: Point, b: Point) -> f64 {
    a.x * b.x + a.y * b.y
}

/// Point at clock angle `theta` on the circle of radius `r` around `c`.
pub fn clock_point(c: Point, r: f64, theta: f64) -> Point {
    Point::new(c.x - r * theta.sin(), c.y - r * theta.cos())
}

/// Clock angle of `p` as seen from `c`, in `[0, 2π)`.
pub fn clock_angle(c: Point, p: Point) -> f64 {
    norm_angle((c.x - p.x).atan2(c.y - p.y))
}

pub fn norm_angle(a: f64) -> f64 {
    let r = a.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Counterclockwise angular distance from `a` to `b`, in `[0, 2π)`.
pub fn ccw_delta(a: f64, b: f64) -> f64 {
    norm_angle(b - a)
}

/// A closed angular interval starting at `start` spanning `len` counterclockwise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngularSpan {
    pub start: f64,
    pub len: f64,
}

impl AngularSpan {
    /// Span swept from `from` to `to`; `ccw` picks the direction.
    pub fn swept(from: f64, to: f64, ccw: bool) -> Self {
        if ccw {
            AngularSpan { start: norm_angle(from), len: ccw_delta(from, to) }
        } else {
            AngularSpan { start: norm_angle(to), len: ccw_delta(to, from) }
        }
    }

    pub fn contains(&self, a: f64, tol: f64) -> bool {
        let d = ccw_delta(self.start, a);
        d <= self.len + tol || d >= TAU - tol
    }

    pub fn intersects(&self, o: &AngularSpan, tol: f64) -> bool {
        self.contains(o.start, tol) || o.contains(self.start, tol)
    }
}

/// One piece of a curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Piece {
    Segment { a: Point, b: Point },
    /// Arc of the circle `(center, radius)` starting at clock angle `start`;
    /// positive `sweep` runs counterclockwise.
    Arc { center: Point, radius: f64, start: f64, sweep: f64 },
}

impl Piece {
    pub fn start(&self) -> Point {
        match *self {
            Piece::Segment { a, .. } => a,
            Piece::Arc { center, radius, start, .. } => clock_point(center, radius, start),
        }
    }

    pub fn end(&self) -> Point {
        match *self {
            Piece::Segment { b, .. } => b,
            Piece::Arc { center, radius, start, sweep } => clock_point(center, radius, start + sweep),
        }
    }

    pub fn reversed(&self) -> Piece {
        match *self {
            Piece::Segment { a, b } => Piece::Segment { a: b, b: a },
            Piece::Arc { center, radius, start, sweep } => Piece::Arc { center, radius, start: start + sweep, sweep: -sweep },
        }
    }

    pub fn translated(&self, d: Point) -> Piece {
        match *self {
            Piece::Segment { a, b } => Piece::Segment { a: a.add(d), b: b.add(d) },
            Piece::Arc { center, radius, start, sweep } => Piece::Arc { center: center.add(d), radius, start, sweep },
        }
    }

    /// Axis-aligned bounding box `(min, max)`.
    pub fn bbox(&self) -> (Point, Point) {
        match *self {
            Piece::Segment { a, b } => (Point::new(a.x.min(b.x), a.y.min(b.y)), Point::new(a.x.max(b.x), a.y.max(b.y))),
            Piece::Arc { center, radius, start, sweep } => {
                let s = self.start();
                let e = self.end();
                let mut lo = Point::new(s.x.min(e.x), s.y.min(e.y));
                let mut hi = Point::new(s.x.max(e.x), s.y.max(e.y));
                let span = self.span().unwrap_or(AngularSpan { start, len: sweep.abs() });
                for k in 0..4 {
                    let a = k as f64 * PI / 2.0;
                    if span.contains(a, 0.0) {
                        let p = clock_point(center, radius, a);
                        lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
                        hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
                    }
                }
                (lo, hi)
            }
        }
    }

    fn span(&self) -> Option<AngularSpan> {
        match *self {
            Piece::Segment { .. } => None,
            Piece::Arc { start, sweep, .. } => {
                if sweep >= 0.0 {
                    Some(AngularSpan { start: norm_angle(start), len: sweep })
                } else {
                    Some(AngularSpan { start: norm_angle(start + sweep), len: -sweep })
                }
            }
        }
    }

    /// Flattens into a polyline with angular steps of at most `max_step` radians.
    pub fn flatten(&self, max_step: f64) -> Vec<Point> {
        match *self {
            Piece::Segment { a, b } => vec![a, b],
            Piece::Arc { center, radius, start, sweep } => {
                // interior samples sit on a fixed angular grid, so arcs sharing a
                // stretch of circle flatten to the same polyline there
                let (lo, hi) = if sweep >= 0.0 { (start, start + sweep) } else { (start + sweep, start) };
                let margin = max_step * 1e-3;
                let first = ((lo + margin) / max_step).ceil() as i64;
                let last = ((hi - margin) / max_step).floor() as i64;
                let mut angles = vec![lo];
                angles.extend((first..=last).map(|k| k as f64 * max_step));
                angles.push(hi);
                if sweep < 0.0 {
                    angles.reverse();
                }
                angles.into_iter().map(|t| clock_point(center, radius, t)).collect()
            }
        }
    }
}

/// Intersection of two pieces.
#[derive(Debug, Clone, PartialEq)]
pub enum Hit {
    Points(Vec<Point>),
    /// The pieces share a stretch of positive length.
    Overlap,
}

fn boxes_meet(a: (Point, Point), b: (Point, Point), tol: f64) -> bool {
    a.0.x <= b.1.x + tol && b.0.x <= a.1.x + tol && a.0.y <= b.1.y + tol && b.0.y <= a.1.y + tol
}

pub fn intersect(p: &Piece, q: &Piece) -> Hit {
    if !boxes_meet(p.bbox(), q.bbox(), 1e-7) {
        return Hit::Points(Vec::new());
    }
    match (*p, *q) {
        (Piece::Segment { a, b }, Piece::Segment { a: c, b: d }) => seg_seg(a, b, c, d),
        (Piece::Segment { a, b }, Piece::Arc { .. }) => seg_arc(a, b, q),
        (Piece::Arc { .. }, Piece::Segment { a, b }) => seg_arc(a, b, p),
        (Piece::Arc { .. }, Piece::Arc { .. }) => arc_arc(p, q),
    }
}

fn seg_seg(a: Point, b: Point, c: Point, d: Point) -> Hit {
    let r = b.sub(a);
    let s = d.sub(c);
    let denom = cross(r, s);
    let qp = c.sub(a);
    let scale = norm(r).max(norm(s)).max(1.0);
    if denom.abs() <= TOL * scale {
        // parallel
        if cross(qp, r).abs() > TOL * scale {
            return Hit::Points(Vec::new());
        }
        let rr = dot(r, r);
        if rr == 0.0 {
            return Hit::Points(Vec::new());
        }
        let t0 = dot(qp, r) / rr;
        let t1 = t0 + dot(s, r) / rr;
        let (lo, hi) = (t0.min(t1), t0.max(t1));
        let lo = lo.max(0.0);
        let hi = hi.min(1.0);
        let len = rr.sqrt();
        if (hi - lo) * len > TOL {
            return Hit::Overlap;
        }
        if (hi - lo) * len >= -TOL {
            return Hit::Points(vec![a.add(r.scale((lo + hi) / 2.0))]);
        }
        return Hit::Points(Vec::new());
    }
    let t = cross(qp, s) / denom;
    let u = cross(qp, r) / denom;
    let lt = TOL / norm(r).max(TOL);
    let lu = TOL / norm(s).max(TOL);
    if t >= -lt && t <= 1.0 + lt && u >= -lu && u <= 1.0 + lu {
        Hit::Points(vec![a.add(r.scale(t))])
    } else {
        Hit::Points(Vec::new())
    }
}

fn norm(a: Point) -> f64 {
    dot(a, a).sqrt()
}

fn on_arc(arc: &Piece, pt: Point) -> bool {
    let Piece::Arc { center, radius, .. } = *arc else { return false };
    let span = arc.span().expect("arc");
    span.contains(clock_angle(center, pt), TOL / radius.max(TOL))
}

fn seg_arc(a: Point, b: Point, arc: &Piece) -> Hit {
    let Piece::Arc { center, radius, .. } = *arc else { unreachable!() };
    let d = b.sub(a);
    let f = a.sub(center);
    let aa = dot(d, d);
    if aa == 0.0 {
        return Hit::Points(Vec::new());
    }
    let bb = 2.0 * dot(f, d);
    let cc = dot(f, f) - radius * radius;
    let disc = bb * bb - 4.0 * aa * cc;
    let len = aa.sqrt();
    // distance of the line from the center
    let h = cross(f, d).abs() / len;
    let mut ts = Vec::new();
    if (h - radius).abs() <= TOL {
        ts.push(-bb / (2.0 * aa));
    } else if disc > 0.0 {
        let sq = disc.sqrt();
        ts.push((-bb - sq) / (2.0 * aa));
        ts.push((-bb + sq) / (2.0 * aa));
    }
    let lt = TOL / len;
    let pts = ts
        .into_iter()
        .filter(|&t| t >= -lt && t <= 1.0 + lt)
        .map(|t| a.add(d.scale(t)))
        .filter(|&p| on_arc(arc, p))
        .collect();
    Hit::Points(pts)
}

fn arc_arc(p: &Piece, q: &Piece) -> Hit {
    let (Piece::Arc { center: c1, radius: r1, .. }, Piece::Arc { center: c2, radius: r2, .. }) = (*p, *q) else {
        unreachable!()
    };
    let d = c1.dist(c2);
    if d <= TOL {
        if (r1 - r2).abs() > TOL {
            return Hit::Points(Vec::new());
        }
        // same circle: compare spans
        let s1 = p.span().unwrap();
        let s2 = q.span().unwrap();
        if !s1.intersects(&s2, TOL / r1) {
            return Hit::Points(Vec::new());
        }
        // touching at a single endpoint only
        for (x, y) in [(p.start(), q.end()), (p.end(), q.start()), (p.start(), q.start()), (p.end(), q.end())] {
            if x.close(y, TOL) {
                let inner = AngularSpan { start: s1.start + 1e-7, len: (s1.len - 2e-7).max(0.0) };
                let inner2 = AngularSpan { start: s2.start + 1e-7, len: (s2.len - 2e-7).max(0.0) };
                if !inner.intersects(&inner2, 0.0) {
                    return Hit::Points(vec![x]);
                }
            }
        }
        return Hit::Overlap;
    }
    if d > r1 + r2 + TOL || d < (r1 - r2).abs() - TOL {
        return Hit::Points(Vec::new());
    }
    let a = (r1 * r1 - r2 * r2 + d * d) / (2.0 * d);
    let h2 = r1 * r1 - a * a;
    let dir = c2.sub(c1).scale(1.0 / d);
    let mid = c1.add(dir.scale(a));
    let mut cand = Vec::new();
    if h2 <= TOL * TOL.max(r1) {
        cand.push(mid);
    } else {
        let h = h2.sqrt();
        let perp = Point::new(-dir.y, dir.x);
        cand.push(mid.add(perp.scale(h)));
        cand.push(mid.sub(perp.scale(h)));
    }
    Hit::Points(cand.into_iter().filter(|&x| on_arc(p, x) && on_arc(q, x)).collect())
}

/// Minimum distance from `p` to the segment `ab`.
pub fn point_segment_distance(p: Point, a: Point, b: Point) -> f64 {
    let ab = b.sub(a);
    let l2 = dot(ab, ab);
    if l2 == 0.0 {
        return p.dist(a);
    }
    let t = (dot(p.sub(a), ab) / l2).clamp(0.0, 1.0);
    p.dist(a.add(ab.scale(t)))
}
