//! Cost terms of the dynamic programs.
//!
//! The crossings of a drawing split into terms over small groups of
//! neighboring bags: a bag alone, a parent with one child (seen from either
//! side), a bag with both children, and (circular style only) a bag with its
//! parent and one child. Child states enter through keys: the projection of
//! the child's drawing onto the vertices it shares with its parent.

use std::cell::RefCell;
use rustc_hash::FxHashMap as HashMap;

use itertools::Itertools;

use crate::crossing::{count_crossings, cr_ee, criss_cross, inversions, te_child_side, te_parent_side, Curve, Owner, Placed, Realizer};
use crate::decomposition::BagId;
use crate::geometry::{clock_point, Piece, Point};
use crate::graph::Vertex;
use crate::instance::Instance;
use crate::layout::TreeGeometry;
use crate::style::{enumerate_bag_drawings, BagDrawing, CrossingTally, GeometryConfig, Role, Style, Variant, CIRCLE_RATIO};

/// Added to the cost of anything infeasible: forbidden track-track crossings
/// or degenerate geometry.
pub const BIG: u64 = 1 << 40;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Memo {
    Pair(BagId, usize, usize),
    Own(BagId, usize, usize),
    Star(BagId, Vec<u32>, usize, usize),
    Links(BagId, Vec<u32>, usize),
}

/// Identifies a pair of straight circular-style curves: which term they
/// come from, the bag it belongs to, and the flags and slots fixing both.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct PairKey(u8, BagId, [u32; 7]);

type Straight = (Curve, u32, u32);

const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

/// Interned projections of a bag's states.
#[derive(Debug, Clone, Default)]
pub struct Keys {
    /// Key index of each state.
    pub of: Vec<usize>,
    /// First state with each key.
    pub rep: Vec<usize>,
}

impl Keys {
    fn build(projections: impl Iterator<Item = Vec<u32>>) -> Self {
        let mut ids: HashMap<Vec<u32>, usize> = HashMap::default();
        let mut k = Keys::default();
        for (s, p) in projections.enumerate() {
            let n = ids.len();
            let id = *ids.entry(p).or_insert(n);
            if id == n {
                k.rep.push(s);
            }
            k.of.push(id);
        }
        k
    }

    pub fn len(&self) -> usize {
        self.rep.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rep.is_empty()
    }
}

pub struct Model<'a> {
    pub inst: &'a Instance<'a>,
    pub style: Style,
    pub cfg: &'a GeometryConfig,
    pub states: Vec<Vec<BagDrawing>>,
    /// Per bag: keys of its states toward its parent.
    pub child_keys: Vec<Keys>,
    /// Per bag: what its subtree cost depends on in the parent's state,
    /// indexed by parent state. Trivial except for the circular style.
    pub cond: Vec<Keys>,
    geom: TreeGeometry,
    memo: RefCell<HashMap<Memo, u64>>,
    pairs: RefCell<HashMap<PairKey, u64>>,
}

fn slot(d: &BagDrawing, v: Vertex) -> u32 {
    d.order.iter().position(|&x| x == v).expect("vertex in bag") as u32
}

fn slots(d: &BagDrawing, vs: &[Vertex]) -> Vec<u32> {
    vs.iter().map(|&v| slot(d, v)).collect()
}

impl<'a> Model<'a> {
    pub fn new(inst: &'a Instance<'a>, style: Style, cfg: &'a GeometryConfig) -> Self {
        let states: Vec<Vec<BagDrawing>> =
            inst.ctxs.iter().map(|ctx| enumerate_bag_drawings(style, ctx, inst.w_plus, cfg)).collect();
        let mut m = Model {
            inst,
            style,
            cfg,
            states,
            child_keys: Vec::new(),
            cond: Vec::new(),
            geom: TreeGeometry::new(&inst.rt, cfg),
            memo: RefCell::new(HashMap::default()),
            pairs: RefCell::new(HashMap::default()),
        };
        let k = inst.bag_count();
        m.child_keys = (0..k).map(|c| Keys::build(m.states[c].iter().map(|d| m.child_proj(c, d)))).collect();
        m.cond = (0..k)
            .map(|c| match inst.parent(c) {
                Some(p) if style.variant == Variant::C => Keys::build(m.states[p].iter().map(|d| m.cond_proj(c, d))),
                Some(p) => Keys { of: vec![0; m.states[p].len()], rep: vec![0] },
                None => Keys { of: Vec::new(), rep: vec![0] },
            })
            .collect();
        m
    }

    pub fn cost(&self, t: CrossingTally) -> u64 {
        t.total + if self.style.forbid_tt && t.tt > 0 { BIG } else { 0 }
    }

    fn count(&self, curves: &[Curve], keep: impl Fn(&Curve, &Curve) -> bool) -> u64 {
        match count_crossings(curves, self.cfg.disk_radius, keep) {
            Ok(t) => self.cost(t),
            Err(_) => BIG,
        }
    }

    fn shared(&self, b: BagId, role: Role) -> &[Vertex] {
        self.inst.ctxs[b].shared(role)
    }

    fn orbits_of(&self, b: BagId, d: &BagDrawing, vs: &[Vertex]) -> Vec<u32> {
        let tv = self.inst.ctxs[b].tracked_vertices();
        let o = d.orbits.as_ref().expect("orbital drawing");
        vs.iter().map(|v| o[tv.binary_search(v).unwrap()] as u32).collect()
    }

    /// What the terms involving `c` and its parent need from `c`'s drawing.
    fn child_proj(&self, c: BagId, d: &BagDrawing) -> Vec<u32> {
        let s = self.shared(c, Role::Parent);
        match self.style.variant {
            Variant::L1 | Variant::L2 => d.order.iter().filter(|v| s.contains(v)).map(|&v| v as u32).collect(),
            Variant::C => slots(d, s),
            Variant::O => self.orbits_of(c, d, s),
        }
    }

    /// What the subtree of `c` needs from its parent's drawing `d`: where
    /// the shared tracks start and on which side `c` sits.
    fn cond_proj(&self, c: BagId, d: &BagDrawing) -> Vec<u32> {
        let p = self.inst.parent(c).unwrap();
        let mut v = slots(d, self.shared(c, Role::Parent));
        if self.inst.children(p).len() == 2 {
            v.push(d.flipped as u32);
        }
        v
    }

    fn rz(&self) -> Realizer<'_> {
        Realizer::new(self.style.variant, self.cfg, self.inst.w_plus)
    }

    fn offset(&self, p: BagId, i: usize, flipped: bool) -> Point {
        self.geom.child_offset(&self.inst.rt, p, i, flipped)
    }

    fn placed(&self, b: BagId, s: usize, center: Point) -> Placed<'_> {
        Placed { ctx: &self.inst.ctxs[b], drawing: &self.states[b][s], center }
    }

    /// Crossings that involve only bag `b`, or `b` and tracks whose other
    /// end does not matter.
    pub fn local(&self, b: BagId, s: usize) -> u64 {
        let d = &self.states[b][s];
        let ctx = &self.inst.ctxs[b];
        let mut t = CrossingTally::default();
        match self.style.variant {
            Variant::L1 | Variant::L2 => {
                t.ee = cr_ee(d, &ctx.graph, Variant::L2);
                for i in 0..ctx.n_children() {
                    t.te += te_parent_side(d, &ctx.graph, ctx.shared(Role::Child(i)));
                }
                t.te += te_child_side(d, &ctx.graph, ctx.shared(Role::Parent));
                if ctx.n_children() == 2 {
                    let top = d.child_order(2);
                    t.tt = criss_cross(&d.order, ctx.shared(Role::Child(top[0])), ctx.shared(Role::Child(top[1])));
                }
            }
            Variant::C => t.ee = cr_ee(d, &ctx.graph, Variant::C),
            Variant::O => {
                t.ee = cr_ee(d, &ctx.graph, Variant::O);
                let parts = self.rz().disk_parts(&self.placed(b, s, Point::new(0.0, 0.0)));
                return match count_crossings(&parts, self.cfg.disk_radius, |_, _| true) {
                    Ok(x) => self.cost(x + t),
                    Err(_) => BIG,
                };
            }
        }
        t.total = t.tt + t.te + t.ee;
        self.cost(t)
    }

    /// Circular style: tracks from the parent (drawn as `cond` key `pk`)
    /// against the chords of `c` in state `s`.
    pub fn own(&self, c: BagId, pk: usize, s: usize) -> u64 {
        if self.style.variant != Variant::C {
            return 0;
        }
        let Some(p) = self.inst.parent(c) else { return 0 };
        let key = Memo::Own(c, pk, s);
        if let Some(&v) = self.memo.borrow().get(&key) {
            return v;
        }
        let dp = &self.states[p][self.cond[c].rep[pk]];
        let dc = &self.states[c][s];
        let mut v = 0;
        for &x in self.shared(c, Role::Parent) {
            let t = self.track(p, dp, ORIGIN, c, dc, x);
            for &(a, b) in &self.inst.ctxs[c].graph.edges {
                let e = self.chord(c, dc, a, b, self.child_center(p, dp, ORIGIN, c));
                v += self.pair_cost(PairKey(0, c, [dp.flipped as u32, t.1, t.2, e.1, e.2, 0, 0]), || (t.0.clone(), e.0.clone()));
            }
        }
        self.memo.borrow_mut().insert(key, v);
        v
    }

    /// Crossings between tracks of the edge from the parent of `c` (in state
    /// `sp`) to `c` (with key `k`), and the parent-side terms they cause.
    pub fn pair(&self, c: BagId, sp: usize, k: usize) -> u64 {
        let p = self.inst.parent(c).expect("child bag");
        let dp = &self.states[p][sp];
        let sc = self.child_keys[c].rep[k];
        let dc = &self.states[c][sc];
        let shared = self.shared(c, Role::Parent);
        match self.style.variant {
            Variant::L1 | Variant::L2 => self.cost(CrossingTally::new(inversions(&dp.order, &dc.order, shared), 0, 0)),
            Variant::O => {
                let i = self.inst.child_index(c);
                let mut proj = self.orbits_of(p, dp, shared);
                proj.push(dp.flipped as u32);
                let key = Memo::Links(c, proj, k);
                if let Some(&v) = self.memo.borrow().get(&key) {
                    return v;
                }
                let pp = self.placed(p, sp, Point::new(0.0, 0.0));
                let pc = self.placed(c, sc, self.offset(p, i, dp.flipped));
                let v = self.count(&self.rz().track_links(&pp, i, &pc), |_, _| true);
                self.memo.borrow_mut().insert(key, v);
                v
            }
            Variant::C => {
                let key = Memo::Pair(c, sp, k);
                if let Some(&v) = self.memo.borrow().get(&key) {
                    return v;
                }
                let f = dp.flipped as u32;
                let tracks: Vec<_> = shared.iter().map(|&x| self.track(p, dp, ORIGIN, c, dc, x)).collect();
                let mut v = 0;
                for (j, t) in tracks.iter().enumerate() {
                    for &(a, b) in &self.inst.ctxs[p].graph.edges {
                        let e = self.chord(p, dp, a, b, ORIGIN);
                        v += self.pair_cost(PairKey(1, c, [f, t.1, t.2, e.1, e.2, 0, 0]), || (t.0.clone(), e.0.clone()));
                    }
                    for u in &tracks[j + 1..] {
                        v += self.pair_cost(PairKey(2, c, [f, t.1, t.2, u.1, u.2, 0, 0]), || (t.0.clone(), u.0.clone()));
                    }
                }
                self.memo.borrow_mut().insert(key, v);
                v
            }
        }
    }

    /// Tracks to the two children of `b` crossing each other. Linear styles
    /// count these in [`Model::local`].
    pub fn star(&self, b: BagId, s: usize, kx: usize, ky: usize) -> u64 {
        let ch = self.inst.children(b);
        if ch.len() < 2 || self.style.variant.is_linear() {
            return 0;
        }
        let d = &self.states[b][s];
        let both: Vec<Vertex> = itertools::merge(self.shared(b, Role::Child(0)), self.shared(b, Role::Child(1)))
            .copied()
            .dedup()
            .collect();
        let mut proj = match self.style.variant {
            Variant::O => self.orbits_of(b, d, &both),
            _ => slots(d, &both),
        };
        proj.push(d.flipped as u32);
        let key = Memo::Star(b, proj, kx, ky);
        if let Some(&v) = self.memo.borrow().get(&key) {
            return v;
        }
        let v = if self.style.variant == Variant::O {
            let pb = self.placed(b, s, ORIGIN);
            let rz = self.rz();
            let mut curves = Vec::new();
            for (i, k) in [(0, kx), (1, ky)] {
                let c = ch[i];
                let pc = self.placed(c, self.child_keys[c].rep[k], self.offset(b, i, d.flipped));
                curves.extend(rz.track_links(&pb, i, &pc).into_iter().map(|x| x.with_group(i as u32)));
            }
            self.count(&curves, |a, b| a.group != b.group)
        } else {
            let dx = &self.states[ch[0]][self.child_keys[ch[0]].rep[kx]];
            let dy = &self.states[ch[1]][self.child_keys[ch[1]].rep[ky]];
            let f = d.flipped as u32;
            let mut v = 0;
            for &x in self.shared(b, Role::Child(0)) {
                let t = self.track(b, d, ORIGIN, ch[0], dx, x);
                for &y in self.shared(b, Role::Child(1)) {
                    if x != y {
                        let u = self.track(b, d, ORIGIN, ch[1], dy, y);
                        v += self.pair_cost(PairKey(3, b, [f, t.1, t.2, u.1, u.2, 0, 0]), || (t.0.clone(), u.0.clone()));
                    }
                }
            }
            v
        };
        self.memo.borrow_mut().insert(key, v);
        v
    }

    /// Circular style: tracks entering `b` from its parent (drawn as `cond`
    /// key `pk`) against tracks leaving `b` toward child `i`, for every key
    /// of that child.
    pub fn chain_row(&self, b: BagId, pk: usize, s: usize, i: usize) -> Vec<u64> {
        let c = self.inst.children(b)[i];
        let keys = &self.child_keys[c];
        let q = match self.inst.parent(b) {
            Some(q) if self.style.variant == Variant::C => q,
            _ => return vec![0; keys.len()],
        };
        let dq = &self.states[q][self.cond[b].rep[pk]];
        let d = &self.states[b][s];
        let mc = self.states[c][0].order.len();
        let at = ORIGIN.sub(self.child_center(q, dq, ORIGIN, b));
        let ys = self.shared(b, Role::Child(i));
        // by[j][t]: crossings with the track of ys[j] when it ends in slot t of c
        let mut by = vec![vec![0u64; mc]; ys.len()];
        for (j, &y) in ys.iter().enumerate() {
            for (t, cell) in by[j].iter_mut().enumerate() {
                for &x in self.shared(b, Role::Parent) {
                    if x == y {
                        continue;
                    }
                    let key = PairKey(4, b, [i as u32, dq.flipped as u32, slot(dq, x), slot(d, x), slot(d, y), d.flipped as u32, t as u32]);
                    *cell += self.pair_cost(key, || {
                        let end = self.slot_point(self.child_center(b, d, ORIGIN, c), t as u32, mc);
                        let owner = Owner::Track { vertex: y, parent: b, child: c };
                        let u = Curve { owner, pieces: vec![Piece::Segment { a: self.c_point(d, y, ORIGIN).0, b: end }], group: 0 };
                        (self.track(q, dq, at, b, d, x).0, u)
                    });
                }
            }
        }
        keys.rep
            .iter()
            .map(|&sc| ys.iter().enumerate().map(|(j, &y)| by[j][slot(&self.states[c][sc], y) as usize]).sum())
            .collect()
    }

    fn child_center(&self, p: BagId, dp: &BagDrawing, at: Point, c: BagId) -> Point {
        at.add(self.offset(p, self.inst.child_index(c), dp.flipped))
    }

    fn slot_point(&self, center: Point, j: u32, m: usize) -> Point {
        clock_point(center, CIRCLE_RATIO * self.cfg.disk_radius, self.cfg.slot_angle(j as usize, m, self.inst.w_plus))
    }

    fn c_point(&self, d: &BagDrawing, v: Vertex, center: Point) -> (Point, u32) {
        let j = slot(d, v);
        (self.slot_point(center, j, d.order.len()), j)
    }

    /// Circular style: the straight track of `v` from `p` (centered at `at`)
    /// into `c`, with the slots of its ends.
    fn track(&self, p: BagId, dp: &BagDrawing, at: Point, c: BagId, dc: &BagDrawing, v: Vertex) -> Straight {
        let (a, i) = self.c_point(dp, v, at);
        let (b, j) = self.c_point(dc, v, self.child_center(p, dp, at, c));
        let owner = Owner::Track { vertex: v, parent: p, child: c };
        (Curve { owner, pieces: vec![Piece::Segment { a, b }], group: 0 }, i, j)
    }

    fn chord(&self, bag: BagId, d: &BagDrawing, u: Vertex, v: Vertex, center: Point) -> Straight {
        let (a, i) = self.c_point(d, u, center);
        let (b, j) = self.c_point(d, v, center);
        (Curve { owner: Owner::Edge { bag, u, v }, pieces: vec![Piece::Segment { a, b }], group: 0 }, i, j)
    }

    /// Crossings of two circular-style curves. The key must determine
    /// their geometry.
    fn pair_cost(&self, key: PairKey, curves: impl FnOnce() -> (Curve, Curve)) -> u64 {
        if let Some(&v) = self.pairs.borrow().get(&key) {
            return v;
        }
        let (a, b) = curves();
        let v = self.count(&[a, b], |_, _| true);
        self.pairs.borrow_mut().insert(key, v);
        v
    }
}
