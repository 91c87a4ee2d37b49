//! Disk placement for the decomposition tree and vertex placement inside a disk.
//!
//! Every bag sits in the middle of a horizontal band tall enough for its
//! subtree; children bands are stacked in embedding order. A child's offset
//! from its parent therefore depends only on subtree heights and on which
//! slot the child occupies, never on embeddings further down.

use crate::decomposition::{BagId, RootedTree};
use crate::geometry::{clock_point, point_segment_distance, Point};
use crate::graph::Vertex;
use crate::style::{BagDrawing, GeometryConfig, Variant, CIRCLE_RATIO, SPINE_HALF};

/// Where each vertex of a bag drawing sits.
pub fn vertex_positions(bd: &BagDrawing, variant: Variant, cfg: &GeometryConfig, center: Point, w_plus: usize) -> Vec<(Vertex, Point)> {
    let m = bd.order.len();
    let r = cfg.disk_radius;
    bd.order
        .iter()
        .enumerate()
        .map(|(j, &v)| {
            let p = match variant {
                Variant::L1 | Variant::L2 => {
                    if m == 1 {
                        center
                    } else {
                        let h = SPINE_HALF * r;
                        Point::new(center.x, center.y - h + 2.0 * h * j as f64 / (m - 1) as f64)
                    }
                }
                Variant::C => clock_point(center, CIRCLE_RATIO * r, cfg.slot_angle(j, m, w_plus)),
                Variant::O => clock_point(center, cfg.vertex_radius(), cfg.slot_angle(j, m, w_plus)),
            };
            (v, p)
        })
        .collect()
}

/// Radius of the circle the vertices sit on (zero for linear styles).
pub fn vertex_circle_radius(variant: Variant, cfg: &GeometryConfig) -> f64 {
    match variant {
        Variant::L1 | Variant::L2 => 0.0,
        Variant::C => CIRCLE_RATIO * cfg.disk_radius,
        Variant::O => cfg.vertex_radius(),
    }
}

/// Embedding-independent measurements of the tree drawing.
#[derive(Debug, Clone, PartialEq)]
pub struct TreeGeometry {
    /// Band height of each bag's subtree.
    pub heights: Vec<f64>,
    /// x-coordinate of each depth's column.
    pub columns: Vec<f64>,
    sibling_gap: f64,
}

impl TreeGeometry {
    pub fn new(rt: &RootedTree, cfg: &GeometryConfig) -> Self {
        let k = rt.len();
        let r = cfg.disk_radius;
        let g = cfg.sibling_gap;
        let mut heights = vec![2.0 * r; k];
        for &b in &rt.order {
            let ch = &rt.children[b];
            if !ch.is_empty() {
                let sum: f64 = ch.iter().map(|&c| heights[c]).sum::<f64>() + g * (ch.len() - 1) as f64;
                heights[b] = heights[b].max(sum);
            }
        }
        let depth = rt.depth.iter().copied().max().map_or(0, |d| d + 1);
        let mut gaps = vec![cfg.disk_spacing; depth.saturating_sub(1)];
        let mut tg = TreeGeometry { heights, columns: Vec::new(), sibling_gap: g };
        for b in 0..k {
            if rt.children[b].len() == 2 {
                let d = rt.depth[b];
                gaps[d] = gaps[d].max(tg.needed_gap(rt, b, cfg));
            }
            for (i, _) in rt.children[b].iter().enumerate() {
                // keep parent-child directions within 45 degrees of horizontal
                for flipped in [false, true] {
                    let dy = tg.child_dy(rt, b, i, flipped).abs();
                    let d = rt.depth[b];
                    gaps[d] = gaps[d].max(dy);
                }
            }
        }
        let mut columns = vec![0.0; depth];
        for d in 1..depth {
            columns[d] = columns[d - 1] + gaps[d - 1];
        }
        tg.columns = columns;
        tg
    }

    /// Vertical offset of the `i`-th child (input order) from its parent.
    pub fn child_dy(&self, rt: &RootedTree, parent: BagId, i: usize, flipped: bool) -> f64 {
        let ch = &rt.children[parent];
        if ch.len() < 2 {
            return 0.0;
        }
        let (upper, lower) = if flipped { (ch[1], ch[0]) } else { (ch[0], ch[1]) };
        let total = self.heights[upper] + self.sibling_gap + self.heights[lower];
        if ch[i] == upper {
            -total / 2.0 + self.heights[upper] / 2.0
        } else {
            total / 2.0 - self.heights[lower] / 2.0
        }
    }

    /// Offset of the `i`-th child's center from its parent's center.
    pub fn child_offset(&self, rt: &RootedTree, parent: BagId, i: usize, flipped: bool) -> Point {
        let d = rt.depth[parent];
        Point::new(self.columns[d + 1] - self.columns[d], self.child_dy(rt, parent, i, flipped))
    }

    /// Smallest column gap keeping each sibling's disk out of the corridor
    /// between the parent and the other child.
    fn needed_gap(&self, rt: &RootedTree, b: BagId, cfg: &GeometryConfig) -> f64 {
        let r = cfg.disk_radius;
        let ok = |dx: f64| {
            [false, true].iter().all(|&fl| {
                let c0 = Point::new(dx, self.child_dy(rt, b, 0, fl));
                let c1 = Point::new(dx, self.child_dy(rt, b, 1, fl));
                let o = Point::new(0.0, 0.0);
                point_segment_distance(c1, o, c0) >= 2.0 * r + 1e-6 && point_segment_distance(c0, o, c1) >= 2.0 * r + 1e-6
            })
        };
        let mut dx = cfg.disk_spacing;
        while !ok(dx) {
            dx *= 1.05;
        }
        dx
    }

    /// Disk centers for the given embeddings; the root sits at the origin.
    pub fn centers(&self, rt: &RootedTree, flipped: &[bool]) -> Vec<Point> {
        let mut out = vec![Point::new(0.0, 0.0); rt.len()];
        for b in rt.top_down() {
            for (i, &c) in rt.children[b].iter().enumerate() {
                out[c] = out[b].add(self.child_offset(rt, b, i, flipped[b]));
            }
        }
        out
    }
}

/// Disk centers of every bag.
pub fn tree_layout(rt: &RootedTree, cfg: &GeometryConfig, flipped: &[bool]) -> Vec<Point> {
    TreeGeometry::new(rt, cfg).centers(rt, flipped)
}
