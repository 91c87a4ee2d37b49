//! The layout document: drawing, tally and resolved coordinates in one JSON file.

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::value::RawValue;

use super::{Color, Disk, EdgeCurve, InputHashes, Layout, TrackCurve, VertexPoint};
use crate::crossing::tally;
use crate::decomposition::{BagId, Decomposition, ValidationReport};
use crate::error::{Error, Result};
use crate::geometry::{Piece, Point};
use crate::graph::{Graph, Vertex};
use crate::style::{CrossingTally, GeometryConfig, Style, WitnessDrawing};

pub const SCHEMA_VERSION: &str = "1";

/// A coordinate written with exactly six decimals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Coord(pub f64);

impl Coord {
    pub fn text(self) -> String {
        let s = format!("{:.6}", self.0);
        if s == "-0.000000" {
            "0.000000".to_string()
        } else {
            s
        }
    }
}

impl Serialize for Coord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawValue::from_string(self.text()).map_err(serde::ser::Error::custom)?.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Coord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        f64::deserialize(d).map(Coord)
    }
}

type XY = [Coord; 2];

fn xy(p: Point) -> XY {
    [Coord(p.x), Coord(p.y)]
}

fn pt(c: XY) -> Point {
    Point::new(c[0].0, c[1].0)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum DocPiece {
    Segment { a: XY, b: XY },
    Arc { center: XY, radius: Coord, start: Coord, sweep: Coord },
}

impl From<&Piece> for DocPiece {
    fn from(p: &Piece) -> Self {
        match *p {
            Piece::Segment { a, b } => DocPiece::Segment { a: xy(a), b: xy(b) },
            Piece::Arc { center, radius, start, sweep } => {
                DocPiece::Arc { center: xy(center), radius: Coord(radius), start: Coord(start), sweep: Coord(sweep) }
            }
        }
    }
}

impl From<&DocPiece> for Piece {
    fn from(p: &DocPiece) -> Self {
        match *p {
            DocPiece::Segment { a, b } => Piece::Segment { a: pt(a), b: pt(b) },
            DocPiece::Arc { center, radius, start, sweep } => Piece::Arc { center: pt(center), radius: radius.0, start: start.0, sweep: sweep.0 },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DocDisk {
    pub bag: BagId,
    pub center: XY,
    pub radius: Coord,
    pub vertex_radius: Coord,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DocVertex {
    pub vertex: Vertex,
    pub label: String,
    pub palette_index: usize,
    pub color: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DocPoint {
    pub bag: BagId,
    pub vertex: Vertex,
    pub point: XY,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DocEdge {
    pub bag: BagId,
    pub u: Vertex,
    pub v: Vertex,
    pub pieces: Vec<DocPiece>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DocTrack {
    pub vertex: Vertex,
    pub parent: BagId,
    pub child: BagId,
    pub pieces: Vec<DocPiece>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DocGeometry {
    pub disks: Vec<DocDisk>,
    pub tree_edges: Vec<(BagId, BagId)>,
    pub vertices: Vec<DocVertex>,
    pub vertex_points: Vec<DocPoint>,
    pub edge_curves: Vec<DocEdge>,
    pub track_curves: Vec<DocTrack>,
}

/// Everything about one solved instance. Vertex and bag identifiers are
/// 0-based (one less than in the input files).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LayoutDocument {
    pub schema_version: String,
    pub inputs: InputHashes,
    pub style: Style,
    pub validation: ValidationReport,
    pub crossings: CrossingTally,
    pub optimal: bool,
    pub drawing: WitnessDrawing,
    pub geometry: DocGeometry,
}

impl LayoutDocument {
    pub fn new(layout: &Layout, drawing: &WitnessDrawing, report: &ValidationReport, tally: CrossingTally) -> Self {
        let geometry = DocGeometry {
            disks: layout
                .disks
                .iter()
                .map(|d| DocDisk { bag: d.bag, center: xy(d.center), radius: Coord(d.radius), vertex_radius: Coord(d.vertex_radius) })
                .collect(),
            tree_edges: layout.tree_edges.clone(),
            vertices: layout
                .labels
                .iter()
                .zip(&layout.palette)
                .enumerate()
                .map(|(vertex, (label, c))| DocVertex { vertex, label: label.clone(), palette_index: c.0, color: c.to_string() })
                .collect(),
            vertex_points: layout.vertex_points.iter().map(|p| DocPoint { bag: p.bag, vertex: p.vertex, point: xy(p.point) }).collect(),
            edge_curves: layout
                .edge_curves
                .iter()
                .map(|e| DocEdge { bag: e.bag, u: e.u, v: e.v, pieces: e.pieces.iter().map(Into::into).collect() })
                .collect(),
            track_curves: layout
                .track_curves
                .iter()
                .map(|t| DocTrack { vertex: t.vertex, parent: t.parent, child: t.child, pieces: t.pieces.iter().map(Into::into).collect() })
                .collect(),
        };
        LayoutDocument {
            schema_version: SCHEMA_VERSION.to_string(),
            inputs: layout.inputs.clone(),
            style: layout.style,
            validation: report.clone(),
            crossings: tally,
            optimal: drawing.optimal,
            drawing: drawing.clone(),
            geometry,
        }
    }

    /// Pretty-printed, newline-terminated.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = serde_json::to_vec_pretty(self).expect("document serializes");
        out.push(b'\n');
        out
    }

    /// The geometry as a [`Layout`], at six-decimal precision.
    pub fn layout(&self) -> Layout {
        let g = &self.geometry;
        Layout {
            style: self.style,
            inputs: self.inputs.clone(),
            disks: g
                .disks
                .iter()
                .map(|d| Disk { bag: d.bag, center: pt(d.center), radius: d.radius.0, vertex_radius: d.vertex_radius.0 })
                .collect(),
            tree_edges: g.tree_edges.clone(),
            vertex_points: g.vertex_points.iter().map(|p| VertexPoint { bag: p.bag, vertex: p.vertex, point: pt(p.point) }).collect(),
            edge_curves: g
                .edge_curves
                .iter()
                .map(|e| EdgeCurve { bag: e.bag, u: e.u, v: e.v, pieces: e.pieces.iter().map(Into::into).collect() })
                .collect(),
            track_curves: g
                .track_curves
                .iter()
                .map(|t| TrackCurve { vertex: t.vertex, parent: t.parent, child: t.child, pieces: t.pieces.iter().map(Into::into).collect() })
                .collect(),
            labels: g.vertices.iter().map(|v| v.label.clone()).collect(),
            palette: g.vertices.iter().map(|v| Color(v.palette_index)).collect(),
        }
    }

    /// Checks the document against the inputs: matching hashes, and a
    /// stored tally equal to a fresh count of the embedded drawing.
    pub fn verify(&self, g: &Graph, t: &Decomposition, cfg: &GeometryConfig) -> Result<()> {
        if self.inputs != InputHashes::of(g, t) {
            return Err(Error::InvalidDecomposition("document was made from different inputs".into()));
        }
        let fresh = tally(&self.drawing, t, g, cfg)?;
        if fresh != self.crossings || fresh != self.drawing.crossings {
            return Err(Error::StyleMismatch(format!("stored tally {:?} but the drawing has {:?}", self.crossings, fresh)));
        }
        Ok(())
    }
}

pub fn to_layout_json(layout: &Layout, drawing: &WitnessDrawing, report: &ValidationReport, tally: CrossingTally) -> Vec<u8> {
    LayoutDocument::new(layout, drawing, report, tally).to_bytes()
}

pub fn parse_layout_json(bytes: &[u8]) -> Result<LayoutDocument> {
    let doc: LayoutDocument = serde_json::from_slice(bytes)?;
    if doc.schema_version != SCHEMA_VERSION {
        return Err(Error::Unsupported(format!("layout schema version {}", doc.schema_version)));
    }
    Ok(doc)
}
