//! Concrete geometry of a witness drawing, and its SVG and JSON forms.

mod json;
mod palette;
mod svg;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub use json::{parse_layout_json, to_layout_json, Coord, LayoutDocument, SCHEMA_VERSION};
pub use palette::{palette, Color};
pub use svg::{to_svg, SvgOptions};

use crate::crossing::{count_crossings, realize_curves, Curve, Owner};
use crate::decomposition::{BagId, Decomposition};
use crate::error::Result;
use crate::geometry::{Piece, Point};
use crate::graph::{Graph, Vertex};
use crate::instance::Instance;
use crate::layout::{vertex_circle_radius, vertex_positions};
use crate::style::{GeometryConfig, Style, WitnessDrawing};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Disk {
    pub bag: BagId,
    pub center: Point,
    pub radius: f64,
    /// Radius of the circle carrying the vertices; zero for linear styles.
    pub vertex_radius: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VertexPoint {
    pub bag: BagId,
    pub vertex: Vertex,
    pub point: Point,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeCurve {
    pub bag: BagId,
    pub u: Vertex,
    pub v: Vertex,
    pub pieces: Vec<Piece>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrackCurve {
    pub vertex: Vertex,
    pub parent: BagId,
    pub child: BagId,
    pub pieces: Vec<Piece>,
}

/// SHA-256 of the canonical text forms of the inputs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputHashes {
    pub graph: String,
    pub decomposition: String,
}

impl InputHashes {
    pub fn of(g: &Graph, t: &Decomposition) -> Self {
        let h = |s: String| hex::encode(Sha256::digest(s.as_bytes()));
        InputHashes { graph: h(g.to_gr()), decomposition: h(t.to_td(g.vertex_count())) }
    }
}

/// Resolved geometry of a drawing, in model units (disk radius from the
/// geometry config), y growing downward.
#[derive(Debug, Clone, PartialEq)]
pub struct Layout {
    pub style: Style,
    pub inputs: InputHashes,
    pub disks: Vec<Disk>,
    /// Pairs of bags joined in the decomposition, parent first.
    pub tree_edges: Vec<(BagId, BagId)>,
    pub vertex_points: Vec<VertexPoint>,
    pub edge_curves: Vec<EdgeCurve>,
    pub track_curves: Vec<TrackCurve>,
    /// Display label per vertex.
    pub labels: Vec<String>,
    /// Color per vertex.
    pub palette: Vec<Color>,
}

/// Places every bag, vertex, edge and track of `drawing`.
pub fn realize(drawing: &WitnessDrawing, g: &Graph, t: &Decomposition, cfg: &GeometryConfig) -> Result<Layout> {
    let inst = Instance::validated(g, t)?;
    let (centers, curves) = realize_curves(&inst, drawing, cfg)?;
    count_crossings(&curves, cfg.disk_radius, |_, _| true)?;
    let variant = drawing.style.variant;
    let disks = centers
        .iter()
        .enumerate()
        .map(|(bag, &center)| Disk { bag, center, radius: cfg.disk_radius, vertex_radius: vertex_circle_radius(variant, cfg) })
        .collect();
    let mut vertex_points = Vec::new();
    for (bag, d) in drawing.per_bag.iter().enumerate() {
        for (vertex, point) in vertex_positions(d, variant, cfg, centers[bag], inst.w_plus) {
            vertex_points.push(VertexPoint { bag, vertex, point });
        }
    }
    let mut edge_curves = Vec::new();
    let mut track_curves = Vec::new();
    for c in curves {
        match c.owner {
            Owner::Edge { bag, u, v } => edge_curves.push(EdgeCurve { bag, u, v, pieces: c.pieces }),
            Owner::Track { vertex, parent, child } => track_curves.push(TrackCurve { vertex, parent, child, pieces: c.pieces }),
        }
    }
    let tree_edges = (0..inst.bag_count()).filter_map(|c| inst.parent(c).map(|p| (p, c))).collect();
    Ok(Layout {
        style: drawing.style,
        inputs: InputHashes::of(g, t),
        disks,
        tree_edges,
        vertex_points,
        edge_curves,
        track_curves,
        labels: (0..g.vertex_count()).map(|v| g.label(v)).collect(),
        palette: palette(g.vertex_count(), t),
    })
}

impl Layout {
    /// The edge and track curves, ready for counting.
    pub fn curves(&self) -> Vec<Curve> {
        let edges = self.edge_curves.iter().map(|e| Curve {
            owner: Owner::Edge { bag: e.bag, u: e.u, v: e.v },
            pieces: e.pieces.clone(),
            group: 0,
        });
        let tracks = self.track_curves.iter().map(|t| Curve {
            owner: Owner::Track { vertex: t.vertex, parent: t.parent, child: t.child },
            pieces: t.pieces.clone(),
            group: 0,
        });
        edges.chain(tracks).collect()
    }

    /// Largest number of vertices in one bag.
    pub fn max_bag_size(&self) -> usize {
        let mut n = vec![0usize; self.disks.len()];
        for p in &self.vertex_points {
            n[p.bag] += 1;
        }
        n.into_iter().max().unwrap_or(0)
    }

    /// `(min, max)` corners of everything drawn, disks included.
    pub fn bounds(&self) -> (Point, Point) {
        let mut lo = Point::new(f64::INFINITY, f64::INFINITY);
        let mut hi = Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        let mut grow = |a: Point, b: Point| {
            lo = Point::new(lo.x.min(a.x), lo.y.min(a.y));
            hi = Point::new(hi.x.max(b.x), hi.y.max(b.y));
        };
        for d in &self.disks {
            grow(d.center.sub(Point::new(d.radius, d.radius)), d.center.add(Point::new(d.radius, d.radius)));
        }
        for p in self.edge_curves.iter().flat_map(|e| &e.pieces).chain(self.track_curves.iter().flat_map(|t| &t.pieces)) {
            let (a, b) = p.bbox();
            grow(a, b);
        }
        if lo.x > hi.x {
            (Point::new(0.0, 0.0), Point::new(0.0, 0.0))
        } else {
            (lo, hi)
        }
    }
}
