//! Tree and path decompositions: the PACE `.td` format, validation of the
//! three decomposition properties, and left-to-right rooting.

use std::collections::VecDeque;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{BagGraph, Graph, Vertex};

pub type BagId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DecompositionKind {
    Path,
    Tree,
}

/// A decomposition with bags `0..k` (1-based in files).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    bags: Vec<Vec<Vertex>>,
    /// Tree edges in input order.
    tree_edges: Vec<(BagId, BagId)>,
    adj: Vec<Vec<BagId>>,
    root: BagId,
    kind: DecompositionKind,
}

impl Decomposition {
    /// Builds a decomposition from 0-based bags and tree edges. Bags are
    /// sorted; the tree edges must form a tree on the bags.
    pub fn new(bags: Vec<Vec<Vertex>>, tree_edges: Vec<(BagId, BagId)>) -> Result<Self> {
        let k = bags.len();
        let bags: Vec<Vec<Vertex>> = bags
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b.dedup();
                b
            })
            .collect();
        let mut adj = vec![Vec::new(); k];
        for &(a, b) in &tree_edges {
            if a >= k {
                return Err(Error::BagIndexOutOfRange { index: a + 1, k });
            }
            if b >= k {
                return Err(Error::BagIndexOutOfRange { index: b + 1, k });
            }
            if a == b {
                return Err(Error::NotATree(format!("loop at bag {}", a + 1)));
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        if k > 0 {
            if tree_edges.len() != k - 1 {
                return Err(Error::NotATree(format!("{} bags need {} tree edges, found {}", k, k - 1, tree_edges.len())));
            }
            let mut seen = vec![false; k];
            let mut queue = VecDeque::from([0]);
            seen[0] = true;
            let mut count = 1;
            while let Some(b) = queue.pop_front() {
                for &c in &adj[b] {
                    if !seen[c] {
                        seen[c] = true;
                        count += 1;
                        queue.push_back(c);
                    }
                }
            }
            if count != k {
                return Err(Error::NotATree("tree edges contain a cycle or leave bags disconnected".into()));
            }
        } else if !tree_edges.is_empty() {
            return Err(Error::NotATree("tree edges without bags".into()));
        }
        let kind = if adj.iter().all(|a| a.len() <= 2) { DecompositionKind::Path } else { DecompositionKind::Tree };
        Ok(Decomposition { bags, tree_edges, adj, root: 0, kind })
    }

    /// Returns a copy rooted at `root` (0-based).
    pub fn with_root(mut self, root: BagId) -> Result<Self> {
        if root >= self.bags.len() {
            return Err(Error::BagIndexOutOfRange { index: root + 1, k: self.bags.len() });
        }
        self.root = root;
        Ok(self)
    }

    pub fn bag_count(&self) -> usize {
        self.bags.len()
    }

    pub fn bag(&self, i: BagId) -> &[Vertex] {
        &self.bags[i]
    }

    pub fn bags(&self) -> &[Vec<Vertex>] {
        &self.bags
    }

    pub fn tree_edges(&self) -> &[(BagId, BagId)] {
        &self.tree_edges
    }

    pub fn tree_neighbors(&self, i: BagId) -> &[BagId] {
        &self.adj[i]
    }

    pub fn root(&self) -> BagId {
        self.root
    }

    pub fn kind(&self) -> DecompositionKind {
        self.kind
    }

    /// Largest bag size minus one; `-1` style emptiness is reported as 0.
    pub fn width(&self) -> usize {
        self.max_bag_size().saturating_sub(1)
    }

    /// `w + 1`, the largest bag size.
    pub fn max_bag_size(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn contains(&self, i: BagId, v: Vertex) -> bool {
        self.bags[i].binary_search(&v).is_ok()
    }

    /// Vertices shared by bags `a` and `b`, sorted.
    pub fn shared(&self, a: BagId, b: BagId) -> Vec<Vertex> {
        self.bags[a].iter().copied().filter(|&v| self.contains(b, v)).collect()
    }

    /// Induced subgraph `G[V_i]`.
    pub fn induced_bag_graph(&self, g: &Graph, i: BagId) -> Result<BagGraph> {
        if i >= self.bags.len() {
            return Err(Error::BagIndexOutOfRange { index: i + 1, k: self.bags.len() });
        }
        Ok(BagGraph::induced(g, &self.bags[i]))
    }

    /// Serializes to `.td` text for a graph on `n` vertices.
    pub fn to_td(&self, n: usize) -> String {
        let mut s = format!("s td {} {} {}\n", self.bags.len(), self.max_bag_size(), n);
        for (i, b) in self.bags.iter().enumerate() {
            let _ = write!(s, "b {}", i + 1);
            for v in b {
                let _ = write!(s, " {}", v + 1);
            }
            s.push('\n');
        }
        for &(a, b) in &self.tree_edges {
            let _ = writeln!(s, "{} {}", a + 1, b + 1);
        }
        s
    }

    /// Roots the tree at `self.root()` and orients it left to right.
    pub fn orient_left_to_right(&self) -> Result<RootedTree> {
        RootedTree::new(self)
    }
}

/// Parses PACE 2017 `.td` text, checking it against `g`.
pub fn parse_decomposition(text: &str, g: &Graph) -> Result<Decomposition> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut bags: Vec<Option<Vec<Vertex>>> = Vec::new();
    let mut edges = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let toks: Vec<&str> = line.split_whitespace().collect();
        let parse = |t: &str| -> Result<usize> {
            t.parse::<usize>().map_err(|_| Error::MalformedLine { line: lineno, msg: format!("expected an integer, got {t:?}") })
        };
        match toks.first() {
            None | Some(&"c") => continue,
            Some(&"s") => {
                if header.is_some() {
                    return Err(Error::MalformedHeader { line: lineno, msg: "second s-line".into() });
                }
                if toks.len() != 5 || toks[1] != "td" {
                    return Err(Error::MalformedHeader { line: lineno, msg: "expected `s td <k> <w+1> <n>`".into() });
                }
                let nums: Vec<usize> = toks[2..]
                    .iter()
                    .map(|t| t.parse().map_err(|_| Error::MalformedHeader { line: lineno, msg: format!("bad number {t:?}") }))
                    .collect::<Result<_>>()?;
                if nums[2] != g.vertex_count() {
                    return Err(Error::MalformedHeader {
                        line: lineno,
                        msg: format!("declares {} vertices but the graph has {}", nums[2], g.vertex_count()),
                    });
                }
                header = Some((nums[0], nums[1], nums[2]));
                bags = vec![None; nums[0]];
            }
            Some(&"b") => {
                let Some((k, _, n)) = header else {
                    return Err(Error::MalformedHeader { line: lineno, msg: "bag before s-line".into() });
                };
                if toks.len() < 2 {
                    return Err(Error::MalformedLine { line: lineno, msg: "bag line without index".into() });
                }
                let i = parse(toks[1])?;
                if i == 0 || i > k {
                    return Err(Error::BagIndexOutOfRange { index: i, k });
                }
                if bags[i - 1].is_some() {
                    return Err(Error::MalformedLine { line: lineno, msg: format!("bag {i} defined twice") });
                }
                let mut vs = Vec::with_capacity(toks.len() - 2);
                for t in &toks[2..] {
                    let v = parse(t)?;
                    if v == 0 || v > n {
                        return Err(Error::VertexOutOfRange { bag: i, v, n });
                    }
                    vs.push(v - 1);
                }
                bags[i - 1] = Some(vs);
            }
            Some(_) => {
                let Some((k, _, _)) = header else {
                    return Err(Error::MalformedHeader { line: lineno, msg: "tree edge before s-line".into() });
                };
                if toks.len() != 2 {
                    return Err(Error::MalformedLine { line: lineno, msg: "expected `<i> <j>`".into() });
                }
                let a = parse(toks[0])?;
                let b = parse(toks[1])?;
                for x in [a, b] {
                    if x == 0 || x > k {
                        return Err(Error::BagIndexOutOfRange { index: x, k });
                    }
                }
                edges.push((a - 1, b - 1));
            }
        }
    }
    let Some((_, declared, _)) = header else {
        return Err(Error::MalformedHeader { line: 0, msg: "missing s-line".into() });
    };
    let bags: Vec<Vec<Vertex>> = bags
        .into_iter()
        .enumerate()
        .map(|(i, b)| b.ok_or(Error::MalformedLine { line: 0, msg: format!("bag {} missing", i + 1) }))
        .collect::<Result<_>>()?;
    let t = Decomposition::new(bags, edges)?;
    if t.max_bag_size() != declared {
        return Err(Error::WidthMismatch { declared, actual: t.max_bag_size() });
    }
    Ok(t)
}

/// Outcome of checking a decomposition against a graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub covers_vertices: bool,
    /// 1-based.
    pub uncovered_vertices: Vec<usize>,
    pub covers_edges: bool,
    /// 1-based pairs.
    pub uncovered_edges: Vec<(usize, usize)>,
    pub connected_supports: bool,
    /// 1-based vertices whose bags do not induce a connected subtree.
    pub disconnected_vertices: Vec<usize>,
    pub degree_ok: bool,
    pub width: usize,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.covers_vertices && self.covers_edges && self.connected_supports && self.degree_ok
    }

    /// Human-readable list of violations, one per line.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for v in &self.uncovered_vertices {
            out.push(format!("vertex {v} is in no bag"));
        }
        for (u, v) in &self.uncovered_edges {
            out.push(format!("edge ({u}, {v}) is in no bag"));
        }
        for v in &self.disconnected_vertices {
            out.push(format!("bags containing vertex {v} are not connected"));
        }
        if !self.degree_ok {
            out.push("some bag has more than three tree neighbors".into());
        }
        out
    }
}

/// Checks the three decomposition properties and the degree bound independently.
pub fn validate(g: &Graph, t: &Decomposition) -> ValidationReport {
    let n = g.vertex_count();
    let k = t.bag_count();
    let mut occurs: Vec<Vec<BagId>> = vec![Vec::new(); n];
    for (i, b) in t.bags().iter().enumerate() {
        for &v in b {
            if v < n {
                occurs[v].push(i);
            }
        }
    }
    let uncovered_vertices: Vec<usize> = (0..n).filter(|&v| occurs[v].is_empty()).map(|v| v + 1).collect();
    let uncovered_edges: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .filter(|&&(u, v)| !occurs[u].iter().any(|&i| t.contains(i, v)))
        .map(|&(u, v)| (u + 1, v + 1))
        .collect();
    let mut disconnected_vertices = Vec::new();
    let mut mark = vec![false; k];
    for v in 0..n {
        let bags = &occurs[v];
        if bags.len() <= 1 {
            continue;
        }
        mark.iter_mut().for_each(|m| *m = false);
        let mut queue = VecDeque::from([bags[0]]);
        mark[bags[0]] = true;
        let mut reached = 1;
        while let Some(b) = queue.pop_front() {
            for &c in t.tree_neighbors(b) {
                if !mark[c] && t.contains(c, v) {
                    mark[c] = true;
                    reached += 1;
                    queue.push_back(c);
                }
            }
        }
        if reached != bags.len() {
            disconnected_vertices.push(v + 1);
        }
    }
    ValidationReport {
        covers_vertices: uncovered_vertices.is_empty(),
        uncovered_vertices,
        covers_edges: uncovered_edges.is_empty(),
        uncovered_edges,
        connected_supports: disconnected_vertices.is_empty(),
        disconnected_vertices,
        degree_ok: (0..k).all(|i| t.tree_neighbors(i).len() <= 3),
        width: t.width(),
    }
}

/// The decomposition tree rooted and oriented left to right.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedTree {
    pub root: BagId,
    /// Children before parents; the root comes last.
    pub order: Vec<BagId>,
    pub parent: Vec<Option<BagId>>,
    /// At most two children per bag, in input order.
    pub children: Vec<Vec<BagId>>,
    pub depth: Vec<usize>,
}

impl RootedTree {
    fn new(t: &Decomposition) -> Result<Self> {
        let k = t.bag_count();
        let mut parent = vec![None; k];
        let mut children = vec![Vec::new(); k];
        let mut depth = vec![0; k];
        if k == 0 {
            return Ok(RootedTree { root: 0, order: Vec::new(), parent, children, depth });
        }
        // neighbors in the order their tree edges appear in the input
        let mut ordered: Vec<Vec<BagId>> = vec![Vec::new(); k];
        for &(a, b) in t.tree_edges() {
            ordered[a].push(b);
            ordered[b].push(a);
        }
        let root = t.root();
        let mut bfs = Vec::with_capacity(k);
        let mut seen = vec![false; k];
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(b) = queue.pop_front() {
            bfs.push(b);
            for &c in &ordered[b] {
                if !seen[c] {
                    seen[c] = true;
                    parent[c] = Some(b);
                    depth[c] = depth[b] + 1;
                    children[b].push(c);
                    queue.push_back(c);
                }
            }
            if children[b].len() > 2 {
                return Err(Error::DegreeTooHigh { bag: b + 1, children: children[b].len() });
            }
        }
        bfs.reverse();
        Ok(RootedTree { root, order: bfs, parent, children, depth })
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    /// Parents before children.
    pub fn top_down(&self) -> impl Iterator<Item = BagId> + '_ {
        self.order.iter().rev().copied()
    }
}
