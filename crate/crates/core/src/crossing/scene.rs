//! Concrete curves of a drawing and exact counting of their crossings.

use std::collections::HashMap;
use std::f64::consts::PI;

use crate::decomposition::BagId;
use crate::error::{Error, Result};
use crate::geometry::{ccw_delta, clock_point, intersect, Hit, Piece, Point};
use crate::graph::Vertex;
use crate::layout::vertex_positions;
use crate::style::{port_angle, BagContext, BagDrawing, CrossingTally, Direction, GeometryConfig, Page, Role, Variant, STUB_REACH};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Owner {
    Edge { bag: BagId, u: Vertex, v: Vertex },
    /// Track of `vertex` along the tree edge from `parent` to `child`.
    Track { vertex: Vertex, parent: BagId, child: BagId },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Curve {
    pub owner: Owner,
    pub pieces: Vec<Piece>,
    /// Free tag used to restrict which pairs are counted.
    pub group: u32,
}

impl Curve {
    pub fn start(&self) -> Point {
        self.pieces[0].start()
    }

    pub fn end(&self) -> Point {
        self.pieces[self.pieces.len() - 1].end()
    }

    fn bbox(&self) -> (Point, Point) {
        let mut lo = Point::new(f64::INFINITY, f64::INFINITY);
        let mut hi = Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in &self.pieces {
            let (a, b) = p.bbox();
            lo = Point::new(lo.x.min(a.x), lo.y.min(a.y));
            hi = Point::new(hi.x.max(b.x), hi.y.max(b.y));
        }
        (lo, hi)
    }

    pub fn with_group(mut self, group: u32) -> Self {
        self.group = group;
        self
    }
}

/// Builds curves for one style.
#[derive(Debug, Clone, Copy)]
pub struct Realizer<'a> {
    pub variant: Variant,
    pub cfg: &'a GeometryConfig,
    pub w_plus: usize,
}

/// A bag drawing placed at a center.
#[derive(Debug, Clone, Copy)]
pub struct Placed<'a> {
    pub ctx: &'a BagContext,
    pub drawing: &'a BagDrawing,
    pub center: Point,
}

impl<'a> Realizer<'a> {
    pub fn new(variant: Variant, cfg: &'a GeometryConfig, w_plus: usize) -> Self {
        Realizer { variant, cfg, w_plus }
    }

    pub fn point(&self, p: &Placed, v: Vertex) -> Point {
        let j = p.drawing.order.iter().position(|&x| x == v).expect("vertex in bag");
        vertex_positions(p.drawing, self.variant, self.cfg, p.center, self.w_plus)[j].1
    }

    /// One curve per edge of the bag: semicircles for linear styles, chords otherwise.
    pub fn edge_curves(&self, p: &Placed) -> Vec<Curve> {
        let pos = vertex_positions(p.drawing, self.variant, self.cfg, p.center, self.w_plus);
        let at = |v: Vertex| pos.iter().find(|x| x.0 == v).unwrap().1;
        p.ctx
            .graph
            .edges
            .iter()
            .enumerate()
            .map(|(i, &(u, v))| {
                let (a, b) = (at(u), at(v));
                let piece = if self.variant.is_linear() {
                    let (top, bot) = if a.y < b.y { (a, b) } else { (b, a) };
                    let center = Point::new(top.x, (top.y + bot.y) / 2.0);
                    let sweep = if p.drawing.page(i) == Page::Right { -PI } else { PI };
                    Piece::Arc { center, radius: (bot.y - top.y) / 2.0, start: 0.0, sweep }
                } else {
                    Piece::Segment { a, b }
                };
                Curve { owner: Owner::Edge { bag: p.ctx.bag, u, v }, pieces: vec![piece], group: 0 }
            })
            .collect()
    }

    /// Part of the track of `v` toward `role` that lies inside the disk, from
    /// the vertex outward. Empty for the circular style.
    pub fn disk_part(&self, p: &Placed, v: Vertex, role: Role) -> Vec<Piece> {
        let r = self.cfg.disk_radius;
        let vp = self.point(p, v);
        match self.variant {
            Variant::L1 | Variant::L2 => {
                let dx = if role == Role::Parent { -STUB_REACH * r } else { STUB_REACH * r };
                vec![Piece::Segment { a: vp, b: Point::new(p.center.x + dx, vp.y) }]
            }
            Variant::C => Vec::new(),
            Variant::O => {
                let tv = p.ctx.tracked_vertices();
                let k = tv.binary_search(&v).expect("tracked vertex");
                let orbit = p.drawing.orbits.as_ref().expect("orbits")[k];
                let t = p.ctx.tracks().iter().position(|&x| x == (v, role)).expect("track");
                let dir = p.drawing.directions.as_ref().expect("directions")[t];
                let j = p.drawing.order.iter().position(|&x| x == v).unwrap();
                let theta = self.cfg.slot_angle(j, p.drawing.order.len(), self.w_plus);
                let port = port_angle(role, p.ctx.n_children(), p.drawing.flipped, orbit, self.w_plus);
                let ro = self.cfg.orbit_radius(orbit, self.w_plus);
                let sweep = match dir {
                    Direction::Ccw => ccw_delta(theta, port),
                    Direction::Cw => -ccw_delta(port, theta),
                };
                vec![
                    Piece::Segment { a: vp, b: clock_point(p.center, ro, theta) },
                    Piece::Arc { center: p.center, radius: ro, start: theta, sweep },
                    Piece::Segment { a: clock_point(p.center, ro, port), b: clock_point(p.center, r, port) },
                ]
            }
        }
    }

    fn exit_point(&self, p: &Placed, v: Vertex, part: &[Piece]) -> Point {
        part.last().map_or_else(|| self.point(p, v), |x| x.end())
    }

    /// Curves for the tracks between a parent and its `child_index`-th child.
    pub fn track_curves(&self, parent: &Placed, child_index: usize, child: &Placed) -> Vec<Curve> {
        parent
            .ctx
            .shared(Role::Child(child_index))
            .iter()
            .map(|&v| {
                let a = self.disk_part(parent, v, Role::Child(child_index));
                let b = self.disk_part(child, v, Role::Parent);
                let mut pieces = a.clone();
                pieces.push(Piece::Segment { a: self.exit_point(parent, v, &a), b: self.exit_point(child, v, &b) });
                pieces.extend(b.iter().rev().map(Piece::reversed));
                Curve { owner: Owner::Track { vertex: v, parent: parent.ctx.bag, child: child.ctx.bag }, pieces, group: 0 }
            })
            .collect()
    }

    /// Only the straight part of each track between the two disks.
    pub fn track_links(&self, parent: &Placed, child_index: usize, child: &Placed) -> Vec<Curve> {
        let mut out = self.track_curves(parent, child_index, child);
        let skip_a = if self.variant == Variant::C { 0 } else if self.variant.is_linear() { 1 } else { 3 };
        for c in &mut out {
            let seg = c.pieces[skip_a];
            c.pieces = vec![seg];
        }
        out
    }

    /// In-disk parts of all tracks of a bag, one curve per track. Parent and
    /// child ids in the owners are placeholders except for the vertex.
    pub fn disk_parts(&self, p: &Placed) -> Vec<Curve> {
        p.ctx
            .tracks()
            .into_iter()
            .filter_map(|(v, role)| {
                let pieces = self.disk_part(p, v, role);
                let tag = match role {
                    Role::Parent => usize::MAX,
                    Role::Child(i) => i,
                };
                (!pieces.is_empty()).then(|| Curve {
                    owner: Owner::Track { vertex: v, parent: p.ctx.bag, child: tag },
                    pieces,
                    group: 0,
                })
            })
            .collect()
    }
}

fn boxes_meet(a: (Point, Point), b: (Point, Point), tol: f64) -> bool {
    a.0.x <= b.1.x + tol && b.0.x <= a.1.x + tol && a.0.y <= b.1.y + tol && b.0.y <= a.1.y + tol
}

fn push_unique(v: &mut Vec<Point>, p: Point, tol: f64) -> bool {
    if v.iter().any(|q| q.close(p, tol)) {
        false
    } else {
        v.push(p);
        true
    }
}

/// Counts crossings among `curves`, restricted to pairs accepted by `keep`.
///
/// Touching at a common endpoint is not a crossing, and neither is any meeting
/// of two edges sharing a vertex or of two tracks of the same vertex.
/// Track-track crossings are counted once per point and vertex pair, so
/// overlapping tracks of one vertex cross another track only once.
pub fn count_crossings(curves: &[Curve], scale: f64, keep: impl Fn(&Curve, &Curve) -> bool) -> Result<CrossingTally> {
    let tol = 1e-6 * scale;
    let boxes: Vec<_> = curves.iter().map(Curve::bbox).collect();
    let mut tally = CrossingTally::default();
    let mut tt_points: HashMap<(Vertex, Vertex), Vec<Point>> = HashMap::new();
    for i in 0..curves.len() {
        for j in i + 1..curves.len() {
            let (a, b) = (&curves[i], &curves[j]);
            match (a.owner, b.owner) {
                (Owner::Track { vertex: x, .. }, Owner::Track { vertex: y, .. }) if x == y => continue,
                (Owner::Edge { u, v, .. }, Owner::Edge { u: s, v: t, .. }) if u == s || u == t || v == s || v == t => {
                    continue
                }
                _ => {}
            }
            if !boxes_meet(boxes[i], boxes[j], tol) || !keep(a, b) {
                continue;
            }
            let mut pts = Vec::new();
            for p in &a.pieces {
                for q in &b.pieces {
                    match intersect(p, q) {
                        Hit::Overlap => {
                            return Err(Error::DegenerateGeometry(format!("{:?} and {:?} overlap", a.owner, b.owner)))
                        }
                        Hit::Points(h) => {
                            for x in h {
                                push_unique(&mut pts, x, tol);
                            }
                        }
                    }
                }
            }
            let ends_a = [a.start(), a.end()];
            let ends_b = [b.start(), b.end()];
            for x in pts {
                let on_a = ends_a.iter().any(|e| e.close(x, tol));
                let on_b = ends_b.iter().any(|e| e.close(x, tol));
                match (on_a, on_b) {
                    (true, true) => continue,
                    (false, false) => {}
                    _ => {
                        return Err(Error::DegenerateGeometry(format!(
                            "{:?} and {:?} meet at an endpoint of only one of them",
                            a.owner, b.owner
                        )))
                    }
                }
                match (a.owner, b.owner) {
                    (Owner::Edge { .. }, Owner::Edge { .. }) => tally.ee += 1,
                    (Owner::Track { vertex: x1, .. }, Owner::Track { vertex: y1, .. }) => {
                        let key = (x1.min(y1), x1.max(y1));
                        if push_unique(tt_points.entry(key).or_default(), x, tol) {
                            tally.tt += 1;
                        }
                    }
                    _ => tally.te += 1,
                }
            }
        }
    }
    tally.total = tally.tt + tally.te + tally.ee;
    Ok(tally)
}

/// Replaces every arc by a polyline with angular steps of at most `step`.
pub fn flatten(curves: &[Curve], step: f64) -> Vec<Curve> {
    curves
        .iter()
        .map(|c| {
            let mut pieces = Vec::new();
            for p in &c.pieces {
                let pts = p.flatten(step);
                for w in pts.windows(2) {
                    pieces.push(Piece::Segment { a: w[0], b: w[1] });
                }
            }
            Curve { pieces, ..c.clone() }
        })
        .collect()
}
