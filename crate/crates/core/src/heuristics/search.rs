//! Hill climbing over Vertex-Swap, Edge-Swap, Edge-Flip and Embedding-Flip moves.

use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{pass_order, HeuristicConfig};
use crate::crossing::{cr_ee, criss_cross, inversions, linear_tally, te_child_side, te_parent_side};
use crate::decomposition::{BagId, Decomposition};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::instance::Instance;
use crate::style::{BagDrawing, Role, Variant, WitnessDrawing};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Move {
    VertexSwap(usize, usize),
    EdgeSwap(usize, usize),
    EdgeFlip(usize),
    EmbeddingFlip,
}

impl Move {
    fn apply(self, d: &mut BagDrawing) {
        match self {
            Move::VertexSwap(i, j) => d.order.swap(i, j),
            Move::EdgeSwap(i, j) => {
                let p = d.pages.as_mut().unwrap();
                p[i] = p[i].flip();
                p[j] = p[j].flip();
            }
            Move::EdgeFlip(i) => {
                let p = d.pages.as_mut().unwrap();
                p[i] = p[i].flip();
            }
            Move::EmbeddingFlip => d.flipped = !d.flipped,
        }
    }
}

/// Every crossing that involves bag `b`.
fn bag_cost(inst: &Instance, per_bag: &[BagDrawing], b: BagId) -> u64 {
    let ctx = &inst.ctxs[b];
    let d = &per_bag[b];
    let mut c = cr_ee(d, &ctx.graph, Variant::L2);
    let edge = |p: BagId, ch: BagId| {
        let s = inst.ctxs[ch].shared(Role::Parent);
        te_parent_side(&per_bag[p], &inst.ctxs[p].graph, s)
            + te_child_side(&per_bag[ch], &inst.ctxs[ch].graph, s)
            + inversions(&per_bag[p].order, &per_bag[ch].order, s)
    };
    if let Some(p) = inst.parent(b) {
        c += edge(p, b);
    }
    for &ch in inst.children(b) {
        c += edge(b, ch);
    }
    if ctx.n_children() == 2 {
        let top = d.child_order(2);
        c += criss_cross(&d.order, ctx.shared(Role::Child(top[0])), ctx.shared(Role::Child(top[1])));
    }
    c
}

fn moves(d: &BagDrawing, two_children: bool) -> [Vec<Move>; 4] {
    let m = d.order.len();
    let pages = d.pages.as_deref().unwrap_or(&[]);
    let e = pages.len();
    let mut swaps = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            swaps.push(Move::VertexSwap(i, j));
        }
    }
    let mut edge_swaps = Vec::new();
    for i in 0..e {
        for j in i + 1..e {
            if pages[i] != pages[j] {
                edge_swaps.push(Move::EdgeSwap(i, j));
            }
        }
    }
    let flips = (0..e).map(Move::EdgeFlip).collect();
    let emb = if two_children { vec![Move::EmbeddingFlip] } else { Vec::new() };
    [swaps, edge_swaps, flips, emb]
}

/// Local search on an L2 drawing; see [`local_search_traced`].
pub fn local_search(start: &WitnessDrawing, g: &Graph, t: &Decomposition, cfg: &HeuristicConfig) -> Result<WitnessDrawing> {
    local_search_traced(start, g, t, cfg).map(|x| x.0)
}

/// Improves `start` bag by bag: bottom-up, then top-down, repeated until a
/// full round improves nothing or time runs out. Within a bag the four move
/// kinds take turns, each applying its first improving move, until none
/// improves. Also returns the total cost after every accepted move.
pub fn local_search_traced(
    start: &WitnessDrawing,
    g: &Graph,
    t: &Decomposition,
    cfg: &HeuristicConfig,
) -> Result<(WitnessDrawing, Vec<u64>)> {
    if start.style.variant != Variant::L2 {
        return Err(Error::Unsupported(format!("local search needs an L2 drawing, got {}", start.style)));
    }
    let inst = Instance::validated(g, t)?;
    let deadline = cfg.time_limit.map(|d| Instant::now() + d);
    let expired = || deadline.is_some_and(|d| Instant::now() >= d);
    let mut rng = (cfg.rng_seed != 0).then(|| ChaCha8Rng::seed_from_u64(cfg.rng_seed));
    let mut per_bag = start.per_bag.clone();
    let mut total = linear_tally(&inst, &per_bag).total;
    let mut trace = vec![total];
    'rounds: loop {
        let mut improved = false;
        for bottom_up in [true, false] {
            for b in pass_order(&inst, bottom_up) {
                loop {
                    let mut any = false;
                    for mut cands in moves(&per_bag[b], inst.ctxs[b].n_children() == 2) {
                        if let Some(r) = rng.as_mut() {
                            cands.shuffle(r);
                        }
                        let before = bag_cost(&inst, &per_bag, b);
                        for mv in cands {
                            let old = per_bag[b].clone();
                            mv.apply(&mut per_bag[b]);
                            let after = bag_cost(&inst, &per_bag, b);
                            if after < before {
                                total = total - before + after;
                                debug_assert_eq!(total, linear_tally(&inst, &per_bag).total);
                                trace.push(total);
                                any = true;
                                break;
                            }
                            per_bag[b] = old;
                        }
                        if expired() {
                            break 'rounds;
                        }
                    }
                    if !any {
                        break;
                    }
                    improved = true;
                }
            }
        }
        if !improved {
            break;
        }
    }
    let mut out = WitnessDrawing { style: start.style, per_bag, crossings: Default::default(), optimal: false };
    out.crossings = linear_tally(&inst, &out.per_bag);
    Ok((out, trace))
}
