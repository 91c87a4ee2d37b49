//! Closed-form crossing counts for linear styles, and the edge-edge count
//! shared by all styles.

use crate::graph::{BagGraph, Vertex};
use crate::style::{BagDrawing, Page, Variant};

fn positions(order: &[Vertex]) -> impl Fn(Vertex) -> usize + '_ {
    move |v| order.iter().position(|&x| x == v).expect("vertex not in order")
}

/// Pairs of edges with alternating endpoints on the same page. Circular
/// styles use a single page.
pub fn cr_ee(d: &BagDrawing, bg: &BagGraph, variant: Variant) -> u64 {
    let pos = positions(&d.order);
    let spans: Vec<(usize, usize, Page)> = bg
        .edges
        .iter()
        .enumerate()
        .map(|(i, &(u, v))| {
            let (a, b) = (pos(u), pos(v));
            let page = if variant.is_linear() { d.page(i) } else { Page::Left };
            (a.min(b), a.max(b), page)
        })
        .collect();
    let mut n = 0;
    for (i, &(a, b, p)) in spans.iter().enumerate() {
        for &(c, e, q) in &spans[i + 1..] {
            if p == q && ((a < c && c < b && b < e) || (c < a && a < e && e < b)) {
                n += 1;
            }
        }
    }
    n
}

/// Edges on `page` of a bag that cross tracks of `shared`: each edge counts
/// the shared vertices strictly between its endpoints.
fn te_side(d: &BagDrawing, bg: &BagGraph, shared: &[Vertex], page: Page) -> u64 {
    let pos = positions(&d.order);
    let sp: Vec<usize> = shared.iter().map(|&v| pos(v)).collect();
    let mut n = 0;
    for (i, &(u, v)) in bg.edges.iter().enumerate() {
        if d.page(i) != page {
            continue;
        }
        let (a, b) = (pos(u).min(pos(v)), pos(u).max(pos(v)));
        n += sp.iter().filter(|&&p| a < p && p < b).count() as u64;
    }
    n
}

/// Track-edge crossings of the parent's right-page edges with the tracks to
/// this child (depends only on the parent's drawing).
pub fn te_parent_side(parent: &BagDrawing, bg: &BagGraph, shared: &[Vertex]) -> u64 {
    te_side(parent, bg, shared, Page::Right)
}

/// Track-edge crossings of the child's left-page edges with the tracks from
/// its parent.
pub fn te_child_side(child: &BagDrawing, bg: &BagGraph, shared: &[Vertex]) -> u64 {
    te_side(child, bg, shared, Page::Left)
}

/// Track-edge crossings between a bag and the bag to its right.
pub fn cr_te_linear(parent: (&BagDrawing, &BagGraph), child: (&BagDrawing, &BagGraph), shared: &[Vertex]) -> u64 {
    te_parent_side(parent.0, parent.1, shared) + te_child_side(child.0, child.1, shared)
}

/// Pairs of shared vertices whose relative order differs between the bags.
pub fn cr_tt_linear(parent: &BagDrawing, child: &BagDrawing, shared: &[Vertex]) -> u64 {
    inversions(&parent.order, &child.order, shared)
}

/// Kendall-tau distance between two orders restricted to `shared`.
pub fn inversions(a: &[Vertex], b: &[Vertex], shared: &[Vertex]) -> u64 {
    let pa = positions(a);
    let pb = positions(b);
    let p: Vec<(usize, usize)> = shared.iter().map(|&v| (pa(v), pb(v))).collect();
    let mut n = 0;
    for (i, x) in p.iter().enumerate() {
        for y in &p[i + 1..] {
            if (x.0 < y.0) != (x.1 < y.1) {
                n += 1;
            }
        }
    }
    n
}

/// Track-edge crossings between a bag and all its children.
pub fn cr_te_tree(parent: (&BagDrawing, &BagGraph), children: &[(&BagDrawing, &BagGraph, &[Vertex])]) -> u64 {
    children.iter().map(|&(d, bg, s)| cr_te_linear(parent, (d, bg), s)).sum()
}

/// Tracks to the upper child starting below tracks to the lower child.
pub fn criss_cross(order: &[Vertex], upper: &[Vertex], lower: &[Vertex]) -> u64 {
    let pos = positions(order);
    let mut n = 0;
    for &u in upper {
        for &v in lower {
            if u != v && pos(v) < pos(u) {
                n += 1;
            }
        }
    }
    n
}

/// Track-track crossings at a bag with two children: criss-crossing tracks
/// plus the inversions toward each child. `x` is drawn above `y`.
pub fn cr_tt_tree(parent: &BagDrawing, x: (&BagDrawing, &[Vertex]), y: (&BagDrawing, &[Vertex])) -> u64 {
    criss_cross(&parent.order, x.1, y.1) + cr_tt_linear(parent, x.0, x.1) + cr_tt_linear(parent, y.0, y.1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn l2(order: Vec<usize>, pages: Vec<Page>) -> BagDrawing {
        BagDrawing { bag: 0, order, side: None, pages: Some(pages), orbits: None, directions: None, flipped: false }
    }

    fn complete(n: usize) -> BagGraph {
        let mut e = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                e.push((u, v));
            }
        }
        let g = Graph::new(n, e).unwrap();
        BagGraph::induced(&g, &(0..n).collect::<Vec<_>>())
    }

    #[test]
    fn complete_graph_one_page() {
        for n in 4..=8 {
            let bg = complete(n);
            let d = l2((0..n).rev().collect(), vec![Page::Left; bg.edges.len()]);
            let binom = (n * (n - 1) * (n - 2) * (n - 3) / 24) as u64;
            assert_eq!(cr_ee(&d, &bg, Variant::L2), binom);
            assert_eq!(cr_ee(&d, &bg, Variant::C), binom);
        }
    }

    #[test]
    fn two_edges_on_pages() {
        let g = Graph::new(4, [(0, 2), (1, 3)]).unwrap();
        let bg = BagGraph::induced(&g, &[0, 1, 2, 3]);
        assert_eq!(cr_ee(&l2(vec![0, 1, 2, 3], vec![Page::Left, Page::Right]), &bg, Variant::L2), 0);
        assert_eq!(cr_ee(&l2(vec![0, 1, 2, 3], vec![Page::Left, Page::Left]), &bg, Variant::L2), 1);
    }

    #[test]
    fn track_edge() {
        // left bag (u, w, v) with edge (u, v); w continues to the right
        let g = Graph::new(4, [(0, 2)]).unwrap();
        let left = BagGraph::induced(&g, &[0, 1, 2]);
        let right = BagGraph::induced(&g, &[1]);
        let child = l2(vec![1], vec![]);
        let on_right = l2(vec![0, 1, 2], vec![Page::Right]);
        let on_left = l2(vec![0, 1, 2], vec![Page::Left]);
        assert_eq!(cr_te_linear((&on_right, &left), (&child, &right), &[1]), 1);
        assert_eq!(cr_te_linear((&on_left, &left), (&child, &right), &[1]), 0);
        // two shared vertices between the endpoints
        let left4 = BagGraph::induced(&g, &[0, 1, 3, 2]);
        let right4 = BagGraph::induced(&g, &[1, 3]);
        let d = l2(vec![0, 1, 3, 2], vec![Page::Right]);
        assert_eq!(cr_te_linear((&d, &left4), (&l2(vec![1, 3], vec![]), &right4), &[1, 3]), 2);
        let kids = [(&child, &right, &[1usize][..]), (&child, &right, &[1usize][..])];
        assert_eq!(cr_te_tree((&on_right, &left), &kids), 2);
    }

    #[test]
    fn track_track() {
        let a = l2(vec![0, 1, 2], vec![]);
        assert_eq!(cr_tt_linear(&a, &a, &[0, 1, 2]), 0);
        assert_eq!(cr_tt_linear(&a, &l2(vec![2, 1, 0], vec![]), &[0, 1, 2]), 3);
        assert_eq!(cr_tt_linear(&l2(vec![0, 1], vec![]), &l2(vec![1, 0], vec![]), &[0, 1]), 1);
    }

    #[test]
    fn criss_cross_counts() {
        // x-shared above y-shared
        assert_eq!(criss_cross(&[0, 1, 2, 3], &[0, 1], &[2, 3]), 0);
        assert_eq!(criss_cross(&[0, 2, 1, 3], &[0, 1], &[2, 3]), 1);
        // flipping the embedding swaps the roles
        let (up, lo) = (&[0usize, 3][..], &[1usize, 2][..]);
        let order = [0, 1, 2, 3];
        assert_eq!(criss_cross(&order, up, lo) + criss_cross(&order, lo, up), 4);
    }
}
