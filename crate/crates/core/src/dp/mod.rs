//! Exact dynamic programs over path and tree decompositions.

pub mod model;

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

pub use model::{Keys, Model, BIG};

use crate::crossing::{count_crossings, tally_instance, Placed, Realizer};
use crate::decomposition::{BagId, Decomposition, DecompositionKind};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::instance::Instance;
use crate::layout::TreeGeometry;
use crate::style::{enumerate_bag_drawings, search_space_size, BagDrawing, CrossingTally, GeometryConfig, Style, Variant, WitnessDrawing};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolveConfig {
    pub style: Style,
    pub geometry: GeometryConfig,
    pub time_limit: Option<Duration>,
    /// Overrides the decomposition's root.
    pub root: Option<BagId>,
    /// Largest projected table size the solver accepts.
    pub state_limit: f64,
}

impl SolveConfig {
    pub fn new(style: Style) -> Self {
        SolveConfig { style, geometry: GeometryConfig::default(), time_limit: None, root: None, state_limit: 5e7 }
    }

    pub fn with_alpha(mut self, alpha: f64) -> Self {
        self.geometry.alpha = Some(alpha);
        self
    }
}

/// Projected work of the DP: every state once, plus every state pair across
/// a tree edge for the circular style.
pub fn projected_size(inst: &Instance, style: Style) -> f64 {
    let sizes: Vec<f64> = inst.ctxs.iter().map(|c| search_space_size(style, c, inst.w_plus)).collect();
    let mut total: f64 = sizes.iter().sum();
    if style.variant == Variant::C {
        for c in 0..inst.bag_count() {
            if let Some(p) = inst.parent(c) {
                total += sizes[p] * sizes[c];
            }
        }
    }
    total
}

fn rooted(t: &Decomposition, root: Option<BagId>) -> Result<Decomposition> {
    match root {
        Some(r) => t.clone().with_root(r),
        None => Ok(t.clone()),
    }
}

/// Optimal drawing of a path decomposition.
pub fn solve_path(g: &Graph, t: &Decomposition, cfg: &SolveConfig) -> Result<WitnessDrawing> {
    if t.kind() != DecompositionKind::Path {
        return Err(Error::InvalidDecomposition("not a path decomposition".into()));
    }
    solve_tree(g, t, cfg)
}

/// Optimal drawing of a tree decomposition whose bags have at most two
/// children once rooted.
pub fn solve_tree(g: &Graph, t: &Decomposition, cfg: &SolveConfig) -> Result<WitnessDrawing> {
    let t = rooted(t, cfg.root)?;
    let inst = Instance::validated(g, &t)?;
    cfg.geometry.check(inst.w_plus)?;
    let size = projected_size(&inst, cfg.style);
    if size > cfg.state_limit {
        return Err(Error::SearchSpaceTooLarge { size, limit: cfg.state_limit });
    }
    let model = Model::new(&inst, cfg.style, &cfg.geometry);
    let deadline = cfg.time_limit.map(|d| Instant::now() + d);
    let mut dp = Dp::new(&model);
    let mut complete = true;
    for &b in &inst.rt.order {
        dp.fill(b);
        if deadline.is_some_and(|d| Instant::now() >= d) && b != inst.rt.root {
            complete = false;
            break;
        }
    }
    let chosen = dp.backtrack();
    if chosen.is_empty() && inst.bag_count() > 0 {
        return Err(Error::Infeasible { bag: dp.first_infeasible().unwrap_or(inst.rt.root) + 1 });
    }
    let per_bag: Vec<BagDrawing> = chosen.iter().enumerate().map(|(b, &s)| model.states[b][s].clone()).collect();
    let mut out = WitnessDrawing { style: cfg.style, per_bag, crossings: Default::default(), optimal: complete };
    out.crossings = tally_instance(&inst, &out, &cfg.geometry)?;
    Ok(out)
}

/// Dispatches on the decomposition kind.
pub fn solve(g: &Graph, t: &Decomposition, cfg: &SolveConfig) -> Result<WitnessDrawing> {
    match t.kind() {
        DecompositionKind::Path => solve_path(g, t, cfg),
        DecompositionKind::Tree => solve_tree(g, t, cfg),
    }
}

/// Best child state per key, for one conditioning of the child.
#[derive(Debug, Clone)]
struct Best {
    cost: Vec<u64>,
    arg: Vec<usize>,
}

struct Dp<'m, 'a> {
    m: &'m Model<'a>,
    /// `table[b][pk][s]`: optimum of the subtree of `b` with `b` in state `s`.
    table: Vec<Option<Vec<Vec<u64>>>>,
    /// Chosen child keys for each entry of `table`.
    picks: Vec<Vec<Vec<[usize; 2]>>>,
    best: Vec<Vec<Best>>,
}

impl<'m, 'a> Dp<'m, 'a> {
    fn new(m: &'m Model<'a>) -> Self {
        let k = m.inst.bag_count();
        Dp { m, table: vec![None; k], picks: vec![Vec::new(); k], best: vec![Vec::new(); k] }
    }

    /// `pk` of child `c` when its parent is in state `sp`.
    fn cond_of(&self, c: BagId, sp: usize) -> usize {
        self.m.cond[c].of[sp]
    }

    /// Cost of child `c` with key `k` under parent state `sp`.
    fn via(&self, c: BagId, sp: usize, k: usize) -> u64 {
        let b = &self.best[c][self.cond_of(c, sp)];
        b.cost[k].saturating_add(self.m.pair(c, sp, k))
    }

    fn fill(&mut self, b: BagId) {
        let m = self.m;
        let ch = m.inst.children(b).to_vec();
        let n = m.states[b].len();
        let npk = m.cond[b].len();
        let mut table = vec![vec![0u64; n]; npk];
        let mut picks = vec![vec![[0usize; 2]; n]; npk];
        let separable = ch.len() == 2 && m.style.variant.is_linear();
        for s in 0..n {
            let local = m.local(b, s);
            // child terms that do not depend on the conditioning
            let base: Vec<Vec<u64>> =
                ch.iter().map(|&c| (0..m.child_keys[c].len()).map(|k| self.via(c, s, k)).collect()).collect();
            for pk in 0..npk {
                let mut v = local + m.own(b, pk, s);
                let mut pick = [0, 0];
                match ch.len() {
                    0 => {}
                    1 => {
                        let (k, c) = argmin(base[0].iter().zip(m.chain_row(b, pk, s, 0)).map(|(&x, y)| x + y));
                        pick[0] = k;
                        v += c;
                    }
                    _ if separable => {
                        let (kx, cx) = argmin(base[0].iter().copied());
                        let (ky, cy) = argmin(base[1].iter().copied());
                        pick = [kx, ky];
                        v += cx + cy;
                    }
                    _ => {
                        let ax: Vec<u64> = base[0].iter().zip(m.chain_row(b, pk, s, 0)).map(|(&x, y)| x + y).collect();
                        let ay: Vec<u64> = base[1].iter().zip(m.chain_row(b, pk, s, 1)).map(|(&x, y)| x + y).collect();
                        let mut bestc = u64::MAX;
                        for (kx, &x) in ax.iter().enumerate() {
                            if x >= bestc {
                                continue;
                            }
                            for (ky, &y) in ay.iter().enumerate() {
                                let c = x + y + m.star(b, s, kx, ky);
                                if c < bestc {
                                    bestc = c;
                                    pick = [kx, ky];
                                }
                            }
                        }
                        v += bestc;
                    }
                }
                table[pk][s] = v;
                picks[pk][s] = pick;
            }
        }
        if m.inst.parent(b).is_some() {
            let keys = &m.child_keys[b];
            self.best[b] = table
                .iter()
                .map(|row| {
                    let mut best = Best { cost: vec![u64::MAX; keys.len()], arg: vec![0; keys.len()] };
                    for (s, &c) in row.iter().enumerate() {
                        let k = keys.of[s];
                        if c < best.cost[k] {
                            best.cost[k] = c;
                            best.arg[k] = s;
                        }
                    }
                    best
                })
                .collect();
        }
        self.table[b] = Some(table);
        self.picks[b] = picks;
    }

    /// Greedy choice for a bag whose table was not filled.
    fn greedy(&self, b: BagId, parent: Option<(BagId, usize)>) -> usize {
        let m = self.m;
        let k = &m.child_keys[b];
        argmin((0..m.states[b].len()).map(|s| {
            let mut c = m.local(b, s);
            if let Some((_, sp)) = parent {
                c += m.own(b, self.cond_of(b, sp), s) + m.pair(b, sp, k.of[s]);
            }
            c
        }))
        .0
    }

    /// Drawing choice per bag: backtracking where tables exist, greedy above.
    /// Empty if the optimum is infeasible.
    fn backtrack(&self) -> Vec<usize> {
        let m = self.m;
        let inst = m.inst;
        let k = inst.bag_count();
        if k == 0 {
            return Vec::new();
        }
        let mut chosen: Vec<Option<usize>> = vec![None; k];
        for b in inst.rt.top_down() {
            if chosen[b].is_some() {
                continue;
            }
            let parent = inst.parent(b).map(|p| (p, chosen[p].expect("parent chosen first")));
            let s = match (&self.table[b], parent) {
                (Some(t), None) => {
                    let (s, c) = argmin(t[0].iter().copied());
                    if c >= BIG {
                        return Vec::new();
                    }
                    s
                }
                (Some(t), Some((_, sp))) => {
                    let row = &t[self.cond_of(b, sp)];
                    argmin((0..row.len()).map(|s| row[s].saturating_add(m.pair(b, sp, m.child_keys[b].of[s])))).0
                }
                (None, _) => self.greedy(b, parent),
            };
            chosen[b] = Some(s);
            self.descend(b, s, &mut chosen);
        }
        chosen.into_iter().map(|s| s.unwrap()).collect()
    }

    fn descend(&self, b: BagId, s: usize, chosen: &mut [Option<usize>]) {
        let inst = self.m.inst;
        if self.table[b].is_none() {
            return;
        }
        let pk = match inst.parent(b) {
            Some(p) => self.cond_of(b, chosen[p].unwrap()),
            None => 0,
        };
        let pick = self.picks[b][pk][s];
        for (i, &c) in inst.children(b).iter().enumerate() {
            let sc = self.best[c][self.cond_of(c, s)].arg[pick[i]];
            chosen[c] = Some(sc);
            self.descend(c, sc, chosen);
        }
    }

    /// Deepest bag whose every state is infeasible.
    fn first_infeasible(&self) -> Option<BagId> {
        self.m.inst.rt.order.iter().copied().find(|&b| {
            self.table[b].as_ref().is_some_and(|t| t.iter().all(|row| row.iter().all(|&c| c >= BIG)))
        })
    }
}

/// Index and value of the first minimum.
fn argmin(it: impl Iterator<Item = u64>) -> (usize, u64) {
    let mut best = (0, u64::MAX);
    for (i, c) in it.enumerate() {
        if c < best.1 {
            best = (i, c);
        }
    }
    best
}

/// L2 only: keeps the states whose order restricted to `shared` matches
/// `order` restricted to `shared`, i.e. that cause no track-track inversion.
pub fn restrict_tt_free<'s>(
    order: &'s [Vertex],
    shared: &'s [Vertex],
    states: impl IntoIterator<Item = &'s BagDrawing> + 's,
) -> impl Iterator<Item = &'s BagDrawing> + 's {
    let want: Vec<Vertex> = order.iter().copied().filter(|v| shared.contains(v)).collect();
    states.into_iter().filter(move |d| d.order.iter().copied().filter(|v| shared.contains(v)).eq(want.iter().copied()))
}

/// Exhaustive search over every combination of bag drawings, bags assigned
/// top-down. Crossings among the curves of already assigned bags never go
/// away, so a partial assignment already costing at least the best complete
/// one is cut. Drawings with degenerate geometry are skipped.
pub fn brute_force_optimum(g: &Graph, t: &Decomposition, cfg: &SolveConfig) -> Result<WitnessDrawing> {
    const LIMIT: f64 = 1e7;
    let t = rooted(t, cfg.root)?;
    let inst = Instance::validated(g, &t)?;
    // bags too large to enumerate count with their raw size
    let raw: Vec<f64> = inst.ctxs.iter().map(|c| search_space_size(cfg.style, c, inst.w_plus)).collect();
    let mut states = Vec::new();
    let mut size = 1.0;
    for (ctx, &r) in inst.ctxs.iter().zip(&raw) {
        if r > LIMIT {
            size *= r;
            continue;
        }
        let s = enumerate_bag_drawings(cfg.style, ctx, inst.w_plus, &cfg.geometry);
        size *= s.len() as f64;
        states.push(s);
    }
    if size > LIMIT {
        return Err(Error::SearchSpaceTooLarge { size, limit: LIMIT });
    }
    let mut search = Exhaustive {
        inst: &inst,
        cfg,
        states: &states,
        order: inst.rt.top_down().collect(),
        geom: TreeGeometry::new(&inst.rt, &cfg.geometry),
        chosen: vec![0; inst.bag_count()],
        best: None,
    };
    if inst.bag_count() > 0 {
        search.descend(0);
    }
    search.best.map(|b| b.1).ok_or(Error::Infeasible { bag: inst.rt.root + 1 })
}

struct Exhaustive<'a> {
    inst: &'a Instance<'a>,
    cfg: &'a SolveConfig,
    states: &'a [Vec<BagDrawing>],
    order: Vec<BagId>,
    geom: TreeGeometry,
    chosen: Vec<usize>,
    best: Option<(u64, WitnessDrawing)>,
}

impl Exhaustive<'_> {
    fn cost(&self, t: CrossingTally) -> u64 {
        t.total + if self.cfg.style.forbid_tt && t.tt > 0 { BIG } else { 0 }
    }

    fn beaten(&self, c: u64) -> bool {
        c >= BIG || self.best.as_ref().is_some_and(|b| c >= b.0)
    }

    fn descend(&mut self, depth: usize) {
        let b = self.order[depth];
        for s in 0..self.states[b].len() {
            self.chosen[b] = s;
            if depth + 1 == self.order.len() {
                self.leaf();
            } else if !self.beaten(self.partial(depth)) {
                self.descend(depth + 1);
            }
        }
    }

    fn leaf(&mut self) {
        let per_bag = self.chosen.iter().enumerate().map(|(b, &s)| self.states[b][s].clone()).collect();
        let mut w = WitnessDrawing { style: self.cfg.style, per_bag, crossings: Default::default(), optimal: true };
        if let Ok(tally) = tally_instance(self.inst, &w, &self.cfg.geometry) {
            let c = self.cost(tally);
            if !self.beaten(c) {
                w.crossings = tally;
                self.best = Some((c, w));
            }
        }
    }

    /// Cost of the crossings among curves whose bags are all assigned.
    fn partial(&self, depth: usize) -> u64 {
        let inst = self.inst;
        let assigned = &self.order[..=depth];
        let drawing = |b: BagId| &self.states[b][self.chosen[b]];
        let mut flipped = vec![false; inst.bag_count()];
        for &b in assigned {
            flipped[b] = drawing(b).flipped;
        }
        let centers = self.geom.centers(&inst.rt, &flipped);
        let placed = |b: BagId| Placed { ctx: &inst.ctxs[b], drawing: drawing(b), center: centers[b] };
        let rz = Realizer::new(self.cfg.style.variant, &self.cfg.geometry, inst.w_plus);
        let mut curves = Vec::new();
        for &b in assigned {
            curves.extend(rz.edge_curves(&placed(b)));
            if let Some(p) = inst.parent(b) {
                curves.extend(rz.track_curves(&placed(p), inst.child_index(b), &placed(b)));
            }
        }
        match count_crossings(&curves, self.cfg.geometry.disk_radius, |_, _| true) {
            Ok(t) => self.cost(t),
            Err(_) => BIG,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_instance, InstanceShape};
    use crate::style::{CrossingTally, Page};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn small(width: usize, bags: usize, path: bool) -> InstanceShape {
        InstanceShape { max_vertices: 6, width, max_bags: bags, path, edge_prob: 0.5 }
    }

    fn product(g: &Graph, t: &Decomposition, style: Style) -> f64 {
        let inst = Instance::new(g, t).unwrap();
        inst.ctxs.iter().map(|c| search_space_size(style, c, inst.w_plus)).product()
    }

    #[test]
    fn matches_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut checked = 0;
        for i in 0..400 {
            let style = [Style::L1, Style::L2, Style::C, Style::O][i % 4];
            let (g, t) = random_instance(&mut rng, small(1 + i % 2, 4, i % 3 == 0));
            let budget = if style.variant.is_linear() { 20_000.0 } else { 3_000.0 };
            if product(&g, &t, style) > budget {
                continue;
            }
            let cfg = SolveConfig::new(style);
            let bf = brute_force_optimum(&g, &t, &cfg);
            let dp = solve_tree(&g, &t, &cfg);
            match (bf, dp) {
                (Ok(bf), Ok(dp)) => {
                    assert_eq!(dp.crossings.total, bf.crossings.total, "instance {i} {style}");
                    assert!(dp.optimal);
                    checked += 1;
                }
                (Err(Error::Infeasible { .. }), Err(Error::Infeasible { .. })) => {}
                (a, b) => panic!("instance {i} {style}: {a:?} vs {b:?}"),
            }
        }
        assert!(checked > 200, "{checked}");
    }

    #[test]
    fn single_triangle_and_shared_pair() {
        let g = Graph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let t = Decomposition::new(vec![vec![0, 1, 2]], vec![]).unwrap();
        assert_eq!(solve_path(&g, &t, &SolveConfig::new(Style::L1)).unwrap().crossings.total, 0);
        let g = Graph::new(2, []).unwrap();
        let t = Decomposition::new(vec![vec![0, 1], vec![0, 1]], vec![(0, 1)]).unwrap();
        for style in [Style::L1, Style::L2, Style::C, Style::O] {
            let d = solve_path(&g, &t, &SolveConfig::new(style)).unwrap();
            assert_eq!(d.crossings.total, 0, "{style}");
        }
    }

    #[test]
    fn forbidding_track_crossings() {
        // found by exhaustive search: the unrestricted optimum inverts a
        // shared pair to save two track-edge crossings
        let g = Graph::new(6, [(0, 1), (0, 2), (1, 2), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5), (3, 4)]).unwrap();
        let t = Decomposition::new(
            vec![vec![0, 1, 2, 3], vec![0, 1, 2, 3], vec![1, 2, 3, 4], vec![1, 2, 5]],
            vec![(0, 1), (1, 2), (2, 3)],
        )
        .unwrap();
        let free = solve_path(&g, &t, &SolveConfig::new(Style::L2)).unwrap();
        let cfg = SolveConfig::new(Style::new(Variant::L2, true).unwrap());
        let strict = solve_path(&g, &t, &cfg).unwrap();
        assert_eq!(free.crossings, CrossingTally::new(1, 1, 0));
        assert_eq!(strict.crossings, CrossingTally::new(0, 3, 0));

        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..100 {
            let (g, t) = random_instance(&mut rng, small(2, 3, true));
            let strict = solve_tree(&g, &t, &cfg).unwrap();
            assert_eq!(strict.crossings.tt, 0);
            assert!(strict.crossings.total >= solve_tree(&g, &t, &SolveConfig::new(Style::L2)).unwrap().crossings.total);
        }
    }

    #[test]
    fn forced_criss_cross_is_infeasible() {
        let g = Graph::new(2, []).unwrap();
        let t = Decomposition::new(vec![vec![0, 1], vec![0, 1], vec![0, 1]], vec![(0, 1), (0, 2)]).unwrap();
        let cfg = SolveConfig::new(Style::new(Variant::L2, true).unwrap());
        assert!(matches!(solve_tree(&g, &t, &cfg), Err(Error::Infeasible { .. })));
        assert_eq!(solve_tree(&g, &t, &SolveConfig::new(Style::L2)).unwrap().crossings.tt, 1);
    }

    #[test]
    fn restriction_keeps_consistent_orders() {
        let mk = |order: Vec<usize>| BagDrawing {
            bag: 0,
            order,
            side: None,
            pages: Some(vec![Page::Left]),
            orbits: None,
            directions: None,
            flipped: false,
        };
        let states = [mk(vec![0, 1, 2]), mk(vec![2, 1, 0]), mk(vec![1, 0, 2]), mk(vec![2, 0, 1])];
        let kept: Vec<_> = restrict_tt_free(&[0, 3, 2], &[0, 2], &states).map(|d| d.order.clone()).collect();
        assert_eq!(kept, vec![vec![0, 1, 2], vec![1, 0, 2]]);
        assert_eq!(restrict_tt_free(&[0, 3, 2], &[0], &states).count(), 4);
    }

    #[test]
    fn guard_and_timeout() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let (g, t) = random_instance(&mut rng, InstanceShape { max_vertices: 30, width: 5, max_bags: 12, path: false, edge_prob: 0.9 });
        let mut cfg = SolveConfig::new(Style::O);
        cfg.state_limit = 10.0;
        assert!(matches!(solve_tree(&g, &t, &cfg), Err(Error::SearchSpaceTooLarge { .. })));
        assert!(matches!(brute_force_optimum(&g, &t, &cfg), Err(Error::SearchSpaceTooLarge { .. })));

        let (g, t) = random_instance(&mut rng, InstanceShape { max_vertices: 12, width: 3, max_bags: 8, path: true, edge_prob: 0.9 });
        let mut cfg = SolveConfig::new(Style::L2);
        cfg.time_limit = Some(Duration::from_nanos(1));
        let d = solve_tree(&g, &t, &cfg).unwrap();
        assert_eq!(d.per_bag.len(), t.bag_count());
        assert_eq!(d.optimal, t.bag_count() <= 1);
    }
}
