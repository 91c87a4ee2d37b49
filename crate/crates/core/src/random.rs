//! Seeded generators for random decompositions and drawings, used by tests
//! and benchmarks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::decomposition::Decomposition;
use crate::graph::{Graph, Vertex};
use crate::instance::Instance;
use crate::style::{orbits_valid, BagDrawing, CrossingTally, Direction, GeometryConfig, Page, Style, Variant, WitnessDrawing};

#[derive(Debug, Clone, Copy)]
pub struct InstanceShape {
    pub max_vertices: usize,
    /// Largest bag size minus one.
    pub width: usize,
    pub max_bags: usize,
    pub path: bool,
    /// Probability that two vertices sharing a bag are adjacent.
    pub edge_prob: f64,
}

/// A random valid decomposition with at most two children per bag, rooted at bag 1,
/// and a graph whose edges all lie inside bags.
pub fn random_instance(rng: &mut impl Rng, shape: InstanceShape) -> (Graph, Decomposition) {
    let k = rng.gen_range(1..=shape.max_bags.max(1));
    let cap = shape.width + 1;
    let mut tree = Vec::new();
    let mut kids = vec![0usize; k];
    for b in 1..k {
        let p = if shape.path {
            b - 1
        } else {
            let open: Vec<usize> = (0..b).filter(|&p| kids[p] < 2).collect();
            *open.choose(rng).unwrap()
        };
        kids[p] += 1;
        tree.push((p, b));
    }
    let mut adj = vec![Vec::new(); k];
    for &(a, b) in &tree {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut bags: Vec<Vec<Vertex>> = vec![Vec::new(); k];
    let n_target = rng.gen_range(1..=shape.max_vertices.max(1));
    let mut n = 0;
    for _ in 0..n_target {
        let free: Vec<usize> = (0..k).filter(|&b| bags[b].len() < cap).collect();
        let Some(&start) = free.choose(rng) else { break };
        let v = n;
        n += 1;
        bags[start].push(v);
        // grow a connected support
        let mut support = vec![start];
        let steps = rng.gen_range(0..k.min(4));
        for _ in 0..steps {
            let frontier: Vec<usize> = support
                .iter()
                .flat_map(|&b| adj[b].iter().copied())
                .filter(|c| !support.contains(c) && bags[*c].len() < cap)
                .collect();
            let Some(&c) = frontier.choose(rng) else { break };
            bags[c].push(v);
            support.push(c);
        }
    }
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if bags.iter().any(|b| b.contains(&u) && b.contains(&v)) && rng.gen_bool(shape.edge_prob) {
                edges.push((u, v));
            }
        }
    }
    let g = Graph::new(n, edges).expect("generated edges are simple");
    let t = Decomposition::new(bags, tree).expect("generated tree");
    (g, t)
}

/// A uniformly random drawing of every bag (orbital drawings by rejection).
pub fn random_drawing(inst: &Instance, style: Style, cfg: &GeometryConfig, rng: &mut impl Rng) -> WitnessDrawing {
    let per_bag = (0..inst.bag_count()).map(|b| random_bag_drawing(inst, b, style.variant, cfg, rng)).collect();
    WitnessDrawing { style, per_bag, crossings: CrossingTally::default(), optimal: false }
}

pub fn random_bag_drawing(inst: &Instance, b: usize, variant: Variant, cfg: &GeometryConfig, rng: &mut impl Rng) -> BagDrawing {
    let ctx = &inst.ctxs[b];
    let e = ctx.graph.edges.len();
    let page = |rng: &mut dyn rand::RngCore| if rng.gen_bool(0.5) { Page::Left } else { Page::Right };
    loop {
        let mut order = ctx.graph.vertices.clone();
        order.shuffle(rng);
        let mut d = BagDrawing {
            bag: b,
            order,
            side: None,
            pages: None,
            orbits: None,
            directions: None,
            flipped: ctx.n_children() == 2 && rng.gen_bool(0.5),
        };
        match variant {
            Variant::L1 => d.side = (e > 0).then(|| page(rng)),
            Variant::L2 => d.pages = Some((0..e).map(|_| page(rng)).collect()),
            Variant::C => {}
            Variant::O => {
                let tv = ctx.tracked_vertices().len();
                d.orbits = Some((0..tv).map(|_| rng.gen_range(1..=inst.w_plus) as u8).collect());
                d.directions = Some(
                    (0..ctx.tracks().len())
                        .map(|_| if rng.gen_bool(0.5) { Direction::Cw } else { Direction::Ccw })
                        .collect(),
                );
                if !orbits_valid(ctx, &d, inst.w_plus, cfg) {
                    continue;
                }
            }
        }
        return d;
    }
}
