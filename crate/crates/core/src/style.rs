//! Drawing styles and the combinatorial description of a single bag's drawing.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::ops::{Add, AddAssign};
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::decomposition::{BagId, Decomposition, RootedTree};
use crate::error::{Error, Result};
use crate::geometry::AngularSpan;
use crate::graph::{BagGraph, Graph, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Variant {
    L1,
    L2,
    C,
    O,
}

impl Variant {
    pub fn is_linear(self) -> bool {
        matches!(self, Variant::L1 | Variant::L2)
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::L1 => "l1",
            Variant::L2 => "l2",
            Variant::C => "c",
            Variant::O => "o",
        })
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "l1" => Ok(Variant::L1),
            "l2" => Ok(Variant::L2),
            "c" => Ok(Variant::C),
            "o" => Ok(Variant::O),
            _ => Err(Error::Unsupported(format!("unknown style {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Style {
    pub variant: Variant,
    /// Forbid all track-track crossings (two-page linear style only).
    pub forbid_tt: bool,
}

impl Style {
    pub const L1: Style = Style { variant: Variant::L1, forbid_tt: false };
    pub const L2: Style = Style { variant: Variant::L2, forbid_tt: false };
    pub const C: Style = Style { variant: Variant::C, forbid_tt: false };
    pub const O: Style = Style { variant: Variant::O, forbid_tt: false };

    pub fn new(variant: Variant, forbid_tt: bool) -> Result<Self> {
        if forbid_tt && variant != Variant::L2 {
            return Err(Error::Unsupported("forbidding track-track crossings is only defined for l2".into()));
        }
        Ok(Style { variant, forbid_tt })
    }
}

impl fmt::Display for Style {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.variant)?;
        if self.forbid_tt {
            f.write_str("-tt-free")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Page {
    Left,
    Right,
}

impl Page {
    pub fn flip(self) -> Page {
        match self {
            Page::Left => Page::Right,
            Page::Right => Page::Left,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Cw,
    Ccw,
}

/// Which neighbor of a bag a track leads to. Children are numbered in input order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Role {
    Parent,
    Child(usize),
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Role::Parent => f.write_str("parent"),
            Role::Child(0) => f.write_str("child_x"),
            Role::Child(_) => f.write_str("child_y"),
        }
    }
}

/// Combinatorial drawing of one bag. Field order is the canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BagDrawing {
    pub bag: BagId,
    /// Spine order (top to bottom) or counterclockwise circle order.
    pub order: Vec<Vertex>,
    /// L1: the side all arcs of this bag use; absent when the bag has no edges.
    pub side: Option<Page>,
    /// L2: page of each bag edge, aligned with the sorted edge list.
    pub pages: Option<Vec<Page>>,
    /// O: orbit (1-based) of each vertex that has a track, aligned with
    /// [`BagContext::tracked_vertices`].
    pub orbits: Option<Vec<u8>>,
    /// O: direction of each track, aligned with [`BagContext::tracks`].
    pub directions: Option<Vec<Direction>>,
    /// Children drawn in reverse input order (second child on top).
    pub flipped: bool,
}

impl BagDrawing {
    /// Page of the `i`-th edge in the bag's sorted edge list.
    pub fn page(&self, i: usize) -> Page {
        match (&self.pages, self.side) {
            (Some(p), _) => p[i],
            (None, Some(s)) => s,
            (None, None) => Page::Left,
        }
    }

    /// Position of each vertex in `order`, indexed by vertex id.
    pub fn positions(&self, n: usize) -> Vec<usize> {
        let mut pos = vec![usize::MAX; n];
        for (i, &v) in self.order.iter().enumerate() {
            pos[v] = i;
        }
        pos
    }

    /// The two children's input indices from top to bottom.
    pub fn child_order(&self, n_children: usize) -> Vec<usize> {
        match n_children {
            2 if self.flipped => vec![1, 0],
            n => (0..n).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CrossingTally {
    pub tt: u64,
    pub te: u64,
    pub ee: u64,
    pub total: u64,
}

impl CrossingTally {
    pub fn new(tt: u64, te: u64, ee: u64) -> Self {
        CrossingTally { tt, te, ee, total: tt + te + ee }
    }
}

impl Add for CrossingTally {
    type Output = CrossingTally;

    fn add(self, o: CrossingTally) -> CrossingTally {
        CrossingTally::new(self.tt + o.tt, self.te + o.te, self.ee + o.ee)
    }
}

impl AddAssign for CrossingTally {
    fn add_assign(&mut self, o: CrossingTally) {
        *self = *self + o;
    }
}

impl fmt::Display for CrossingTally {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "tt={} te={} ee={} total={}", self.tt, self.te, self.ee, self.total)
    }
}

/// A drawing of every bag of a (rooted) decomposition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessDrawing {
    pub style: Style,
    pub per_bag: Vec<BagDrawing>,
    /// Cached; recompute with `crossing::tally`.
    pub crossings: CrossingTally,
    pub optimal: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeometryConfig {
    pub disk_radius: f64,
    /// Minimum horizontal distance between the centers of consecutive columns.
    pub disk_spacing: f64,
    /// Vertical gap between the bands of sibling subtrees.
    pub sibling_gap: f64,
    /// Clock angle of the first vertex on a circle; `None` picks `π / (2 w⁺)`.
    pub alpha: Option<f64>,
    pub vertex_circle_ratio: f64,
    /// Radial distance between orbits; `None` spreads `w⁺` orbits evenly
    /// between the vertex circle and the disk boundary.
    pub orbit_gap: Option<f64>,
}

impl Default for GeometryConfig {
    fn default() -> Self {
        GeometryConfig {
            disk_radius: 1.0,
            disk_spacing: 3.0,
            sibling_gap: 1.0,
            alpha: None,
            vertex_circle_ratio: 0.45,
            orbit_gap: None,
        }
    }
}

/// Half the spine length of linear styles, relative to the disk radius.
pub const SPINE_HALF: f64 = 0.6;
/// Where track stubs of linear styles end, relative to the disk radius.
pub const STUB_REACH: f64 = 0.7;
/// Vertex circle of the circular style, relative to the disk radius.
pub const CIRCLE_RATIO: f64 = 0.8;
/// Angular spread of the ports at one gate (radians, divided by `w⁺`).
const PORT_SPREAD: f64 = 0.0517;

impl GeometryConfig {
    pub fn alpha_for(&self, w_plus: usize) -> f64 {
        self.alpha.unwrap_or(PI / (2.0 * w_plus.max(1) as f64))
    }

    pub fn check(&self, w_plus: usize) -> Result<()> {
        let r = self.disk_radius;
        if !(r > 0.0) || !(self.disk_spacing >= 2.0 * r) || !(self.sibling_gap > 0.0) {
            return Err(Error::Unsupported("disk radius must be positive, spacing at least a diameter, gap positive".into()));
        }
        if !(self.vertex_circle_ratio > 0.0 && self.vertex_circle_ratio < 1.0) {
            return Err(Error::Unsupported("vertex_circle_ratio must lie in (0, 1)".into()));
        }
        let a = self.alpha_for(w_plus);
        if !(0.0..TAU / w_plus.max(1) as f64).contains(&a) {
            return Err(Error::Unsupported(format!("alpha must lie in [0, 2π/{})", w_plus.max(1))));
        }
        if let Some(g) = self.orbit_gap {
            if !(g > 0.0) || self.vertex_radius() + w_plus as f64 * g >= r {
                return Err(Error::Unsupported("orbits must fit inside the disk".into()));
            }
        }
        Ok(())
    }

    /// Radius of the O-style vertex circle.
    pub fn vertex_radius(&self) -> f64 {
        self.vertex_circle_ratio * self.disk_radius
    }

    pub fn orbit_radius(&self, orbit: u8, w_plus: usize) -> f64 {
        let gap = self
            .orbit_gap
            .unwrap_or((self.disk_radius - self.vertex_radius()) / (w_plus as f64 + 1.0));
        self.vertex_radius() + orbit as f64 * gap
    }

    /// Clock angle of the `j`-th of `m` vertices on a circle.
    pub fn slot_angle(&self, j: usize, m: usize, w_plus: usize) -> f64 {
        self.alpha_for(w_plus) + TAU * j as f64 / m.max(1) as f64
    }
}

/// Clock angle of the gate through which an O-style track leaves toward `role`.
pub fn gate_angle(role: Role, n_children: usize, flipped: bool) -> f64 {
    match role {
        Role::Parent => PI / 2.0,
        Role::Child(i) => {
            if n_children < 2 {
                1.5 * PI
            } else if (i == 0) != flipped {
                5.0 * PI / 3.0
            } else {
                4.0 * PI / 3.0
            }
        }
    }
}

/// Clock angle of the port on `orbit` at the gate toward `role`. Higher
/// orbits get higher ports on both sides.
pub fn port_angle(role: Role, n_children: usize, flipped: bool, orbit: u8, w_plus: usize) -> f64 {
    let s = if role == Role::Parent { -1.0 } else { 1.0 };
    let eps = PORT_SPREAD / w_plus.max(1) as f64;
    gate_angle(role, n_children, flipped) + s * eps * (orbit as f64 - 0.5)
}

/// What a bag's drawing needs to know about its position in the tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BagContext {
    pub bag: BagId,
    pub graph: BagGraph,
    pub parent_shared: Option<Vec<Vertex>>,
    /// Shared vertices with each child, in input order.
    pub child_shared: Vec<Vec<Vertex>>,
}

impl BagContext {
    /// A bag without tree neighbors.
    pub fn isolated(bag: BagId, graph: BagGraph) -> Self {
        BagContext { bag, graph, parent_shared: None, child_shared: Vec::new() }
    }

    pub fn from_tree(g: &Graph, t: &Decomposition, rt: &RootedTree, bag: BagId) -> Self {
        BagContext {
            bag,
            graph: BagGraph::induced(g, t.bag(bag)),
            parent_shared: rt.parent[bag].map(|p| t.shared(bag, p)),
            child_shared: rt.children[bag].iter().map(|&c| t.shared(bag, c)).collect(),
        }
    }

    pub fn all(g: &Graph, t: &Decomposition, rt: &RootedTree) -> Vec<BagContext> {
        (0..t.bag_count()).map(|b| BagContext::from_tree(g, t, rt, b)).collect()
    }

    pub fn n_children(&self) -> usize {
        self.child_shared.len()
    }

    pub fn shared(&self, role: Role) -> &[Vertex] {
        match role {
            Role::Parent => self.parent_shared.as_deref().unwrap_or(&[]),
            Role::Child(i) => &self.child_shared[i],
        }
    }

    /// Every `(vertex, role)` pair that has a track, sorted.
    pub fn tracks(&self) -> Vec<(Vertex, Role)> {
        let mut out = Vec::new();
        for &v in &self.graph.vertices {
            if self.parent_shared.as_ref().is_some_and(|s| s.contains(&v)) {
                out.push((v, Role::Parent));
            }
            for (i, s) in self.child_shared.iter().enumerate() {
                if s.contains(&v) {
                    out.push((v, Role::Child(i)));
                }
            }
        }
        out
    }

    /// Vertices with at least one track, sorted.
    pub fn tracked_vertices(&self) -> Vec<Vertex> {
        self.tracks().into_iter().map(|(v, _)| v).dedup().collect()
    }

    fn embeddings(&self) -> &'static [bool] {
        if self.n_children() == 2 {
            &[false, true]
        } else {
            &[false]
        }
    }
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

/// Number of drawings `enumerate_bag_drawings` would consider before the
/// orbit-sharing filter. Used by memory guards.
pub fn search_space_size(style: Style, ctx: &BagContext, w_plus: usize) -> f64 {
    let m = ctx.graph.len();
    let e = ctx.graph.edges.len() as i32;
    let emb = ctx.embeddings().len() as f64;
    let base = factorial(m) * emb;
    match style.variant {
        Variant::L1 => base * if e > 0 { 2.0 } else { 1.0 },
        Variant::L2 => base * 2f64.powi(e),
        Variant::C => base,
        Variant::O => {
            base * (w_plus as f64).powi(ctx.tracked_vertices().len() as i32) * 2f64.powi(ctx.tracks().len() as i32)
        }
    }
}

/// Every combinatorial drawing of a bag, in canonical order. O-style
/// drawings are restricted to those where vertices sharing an orbit have
/// disjoint track arcs.
pub fn enumerate_bag_drawings(style: Style, ctx: &BagContext, w_plus: usize, geo: &GeometryConfig) -> Vec<BagDrawing> {
    let verts = &ctx.graph.vertices;
    let e = ctx.graph.edges.len();
    let mut out = Vec::new();
    for order in verts.iter().copied().permutations(verts.len()) {
        let base = BagDrawing {
            bag: ctx.bag,
            order,
            side: None,
            pages: None,
            orbits: None,
            directions: None,
            flipped: false,
        };
        match style.variant {
            Variant::L1 => {
                let sides: &[Option<Page>] = if e > 0 { &[Some(Page::Left), Some(Page::Right)] } else { &[None] };
                for &side in sides {
                    push_embeddings(&mut out, ctx, BagDrawing { side, ..base.clone() });
                }
            }
            Variant::L2 => {
                for bits in 0..1u64 << e {
                    let pages = (0..e)
                        .map(|i| if bits >> (e - 1 - i) & 1 == 1 { Page::Right } else { Page::Left })
                        .collect();
                    push_embeddings(&mut out, ctx, BagDrawing { pages: Some(pages), ..base.clone() });
                }
            }
            Variant::C => push_embeddings(&mut out, ctx, base),
            Variant::O => enumerate_orbital(&mut out, ctx, base, w_plus, geo),
        }
    }
    debug_assert!(out.windows(2).all(|w| w[0] < w[1]));
    out
}

fn push_embeddings(out: &mut Vec<BagDrawing>, ctx: &BagContext, d: BagDrawing) {
    for &flipped in ctx.embeddings() {
        out.push(BagDrawing { flipped, ..d.clone() });
    }
}

/// Angular span of the in-disk arc of a track.
pub fn track_span(
    ctx: &BagContext,
    d: &BagDrawing,
    v: Vertex,
    role: Role,
    orbit: u8,
    dir: Direction,
    w_plus: usize,
    geo: &GeometryConfig,
) -> AngularSpan {
    let j = d.order.iter().position(|&x| x == v).expect("vertex in order");
    let theta = geo.slot_angle(j, d.order.len(), w_plus);
    let port = port_angle(role, ctx.n_children(), d.flipped, orbit, w_plus);
    AngularSpan::swept(theta, port, dir == Direction::Ccw)
}

/// Checks that vertices sharing an orbit have pairwise disjoint arcs.
pub fn orbits_valid(ctx: &BagContext, d: &BagDrawing, w_plus: usize, geo: &GeometryConfig) -> bool {
    let (Some(orbits), Some(dirs)) = (&d.orbits, &d.directions) else { return true };
    let tv = ctx.tracked_vertices();
    let tracks = ctx.tracks();
    let spans: Vec<(usize, u8, AngularSpan)> = tracks
        .iter()
        .zip(dirs)
        .map(|(&(v, role), &dir)| {
            let k = tv.binary_search(&v).unwrap();
            (k, orbits[k], track_span(ctx, d, v, role, orbits[k], dir, w_plus, geo))
        })
        .collect();
    for (i, a) in spans.iter().enumerate() {
        for b in &spans[i + 1..] {
            if a.0 != b.0 && a.1 == b.1 && a.2.intersects(&b.2, 1e-9) {
                return false;
            }
        }
    }
    true
}

fn enumerate_orbital(out: &mut Vec<BagDrawing>, ctx: &BagContext, base: BagDrawing, w_plus: usize, geo: &GeometryConfig) {
    let tv = ctx.tracked_vertices();
    let tracks = ctx.tracks();
    let w = w_plus.max(1) as u8;
    let n_orbit = (w as usize).pow(tv.len() as u32);
    for code in 0..n_orbit {
        // first tracked vertex is the most significant digit
        let mut orbits = vec![1u8; tv.len()];
        let mut c = code;
        for slot in orbits.iter_mut().rev() {
            *slot = (c % w as usize) as u8 + 1;
            c /= w as usize;
        }
        for bits in 0..1u64 << tracks.len() {
            let t = tracks.len();
            let dirs: Vec<Direction> = (0..t)
                .map(|i| if bits >> (t - 1 - i) & 1 == 1 { Direction::Ccw } else { Direction::Cw })
                .collect();
            for &flipped in ctx.embeddings() {
                let d = BagDrawing {
                    orbits: Some(orbits.clone()),
                    directions: Some(dirs.clone()),
                    flipped,
                    ..base.clone()
                };
                if orbits_valid(ctx, &d, w_plus, geo) {
                    out.push(d);
                }
            }
        }
    }
}
