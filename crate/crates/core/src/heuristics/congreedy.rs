//! Greedy insertion heuristic for two-page book drawings.

use crate::graph::{BagGraph, Vertex};
use crate::style::Page;

/// The already fixed drawing of the parent bag: its spine order and the
/// vertices shared with the bag being drawn.
#[derive(Debug, Clone, Copy)]
pub struct ParentContext<'a> {
    pub order: &'a [Vertex],
    pub shared: &'a [Vertex],
}

impl ParentContext<'_> {
    fn is_shared(&self, v: Vertex) -> bool {
        self.shared.contains(&v)
    }

    fn parent_pos(&self, v: Vertex) -> usize {
        self.order.iter().position(|&x| x == v).expect("shared vertex in parent")
    }
}

fn alternate(a: (usize, usize), b: (usize, usize)) -> bool {
    (a.0 < b.0 && b.0 < a.1 && a.1 < b.1) || (b.0 < a.0 && a.0 < b.1 && b.1 < a.1)
}

fn span(x: usize, y: usize) -> (usize, usize) {
    (x.min(y), x.max(y))
}

/// conGreedy+: inserts vertices one at a time and returns the spine order
/// and the page of each edge of `bg` (aligned with `bg.edges`).
///
/// The first vertex has maximum degree; each next vertex has the most placed
/// neighbors, ties broken by degree and then by identifier. Every spine
/// position is tried; the edges to placed neighbors pick their pages one
/// after another, each minimizing the crossings it adds (ties go left).
/// With a parent context, child-side track-edge crossings and track-track
/// inversions against the parent count as well.
pub fn con_greedy_plus(bg: &BagGraph, parent: Option<ParentContext>) -> (Vec<Vertex>, Vec<Page>) {
    let n = bg.vertices.len();
    let idx = |v: Vertex| bg.vertices.binary_search(&v).expect("vertex of the bag");
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (e, &(u, v)) in bg.edges.iter().enumerate() {
        adj[idx(u)].push((idx(v), e));
        adj[idx(v)].push((idx(u), e));
    }
    let mut placed = vec![false; n];
    let mut placed_nbrs = vec![0usize; n];
    // positions by local index; usize::MAX when not placed
    let mut pos = vec![usize::MAX; n];
    let mut order: Vec<usize> = Vec::with_capacity(n);
    let mut pages: Vec<Option<Page>> = vec![None; bg.edges.len()];
    let mut drawn: Vec<(usize, usize, Page)> = Vec::new();
    let shared = |i: usize| parent.is_some_and(|p| p.is_shared(bg.vertices[i]));

    for _ in 0..n {
        let v = (0..n)
            .filter(|&i| !placed[i])
            .max_by(|&a, &b| {
                (placed_nbrs[a], adj[a].len()).cmp(&(placed_nbrs[b], adj[b].len())).then(b.cmp(&a))
            })
            .unwrap();
        let nbrs: Vec<(usize, usize)> = adj[v].iter().copied().filter(|&(u, _)| placed[u]).collect();
        let mut best: Option<(u64, usize, Vec<Page>)> = None;
        for p in 0..=order.len() {
            let at = |x: usize| if pos[x] >= p { pos[x] + 1 } else { pos[x] };
            let mut cost = 0u64;
            if let Some(ctx) = parent.filter(|_| shared(v)) {
                // left edges passing over the new vertex
                cost += drawn.iter().filter(|&&(a, b, pg)| pg == Page::Left && span(at(a), at(b)).0 < p && p < span(at(a), at(b)).1).count() as u64;
                let pv = ctx.parent_pos(bg.vertices[v]);
                for &w in &order {
                    if shared(w) && ((at(w) < p) != (ctx.parent_pos(bg.vertices[w]) < pv)) {
                        cost += 1;
                    }
                }
            }
            let mut choice = Vec::with_capacity(nbrs.len());
            for &(u, _) in &nbrs {
                let s = span(p, at(u));
                let mut c = [0u64; 2];
                for &(a, b, pg) in &drawn {
                    if alternate(s, span(at(a), at(b))) {
                        c[(pg == Page::Right) as usize] += 1;
                    }
                }
                if parent.is_some() {
                    c[0] += order.iter().filter(|&&w| shared(w) && s.0 < at(w) && at(w) < s.1).count() as u64;
                }
                let pg = if c[1] < c[0] { Page::Right } else { Page::Left };
                cost += c[(pg == Page::Right) as usize];
                choice.push(pg);
            }
            if best.as_ref().map_or(true, |b| cost < b.0) {
                best = Some((cost, p, choice));
            }
        }
        let (_, p, choice) = best.unwrap();
        for x in order.iter().copied() {
            if pos[x] >= p {
                pos[x] += 1;
            }
        }
        order.insert(p, v);
        pos[v] = p;
        placed[v] = true;
        for (&(u, e), pg) in nbrs.iter().zip(choice) {
            pages[e] = Some(pg);
            drawn.push((v, u, pg));
        }
        for &(u, _) in &adj[v] {
            placed_nbrs[u] += 1;
        }
    }
    (order.into_iter().map(|i| bg.vertices[i]).collect(), pages.into_iter().map(|p| p.unwrap_or(Page::Left)).collect())
}
