//! Simple undirected graphs and the PACE `.gr` format.
//!
//! Vertices are `0..n` internally; the `.gr` text uses `1..=n`.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};

pub type Vertex = usize;

/// Simple undirected graph on the vertex set `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    /// Sorted, each pair stored with `u < v`.
    edges: Vec<(Vertex, Vertex)>,
    adj: Vec<Vec<Vertex>>,
    labels: Option<Vec<String>>,
}

impl Graph {
    /// Builds a graph from 0-based edges, rejecting loops and duplicates.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::EdgeOutOfRange { u: u + 1, v: v + 1, n });
            }
            if u == v {
                return Err(Error::SelfLoop { v: u + 1 });
            }
            let e = (u.min(v), u.max(v));
            if !set.insert(e) {
                return Err(Error::DuplicateEdge { u: e.0 + 1, v: e.1 + 1 });
            }
        }
        let edges: Vec<_> = set.into_iter().collect();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        Ok(Graph { n, edges, adj, labels: None })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.n);
        self.labels = Some(labels);
        self
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Display label of `v`; defaults to its 1-based identifier.
    pub fn label(&self, v: Vertex) -> String {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => (v + 1).to_string(),
        }
    }

    /// Serializes to canonical `.gr` text (edges sorted, no comments).
    pub fn to_gr(&self) -> String {
        let mut s = format!("p tw {} {}\n", self.n, self.edges.len());
        for &(u, v) in &self.edges {
            let _ = writeln!(s, "{} {}", u + 1, v + 1);
        }
        s
    }
}

/// Subgraph induced by one bag, keeping the original vertex identifiers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BagGraph {
    /// Sorted vertex list.
    pub vertices: Vec<Vertex>,
    /// Sorted edges with `u < v`.
    pub edges: Vec<(Vertex, Vertex)>,
}

impl BagGraph {
    pub fn induced(g: &Graph, vertices: &[Vertex]) -> Self {
        let mut vs = vertices.to_vec();
        vs.sort_unstable();
        vs.dedup();
        let mut edges = Vec::new();
        for (i, &u) in vs.iter().enumerate() {
            for &v in &vs[i + 1..] {
                if g.has_edge(u, v) {
                    edges.push((u, v));
                }
            }
        }
        BagGraph { vertices: vs, edges }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

fn parse_usize(tok: &str, line: usize) -> Result<usize> {
    tok.parse::<usize>().map_err(|_| Error::MalformedLine { line, msg: format!("expected a non-negative integer, got {tok:?}") })
}

/// Parses PACE 2017 `.gr` text.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut raw = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks.first() {
            None => continue,
            Some(&"c") => continue,
            Some(&"p") => {
                if header.is_some() {
                    return Err(Error::MalformedHeader { line: lineno, msg: "second p-line".into() });
                }
                if toks.len() != 4 || toks[1] != "tw" {
                    return Err(Error::MalformedHeader { line: lineno, msg: "expected `p tw <n> <m>`".into() });
                }
                let n = toks[2].parse().map_err(|_| Error::MalformedHeader { line: lineno, msg: "bad vertex count".into() })?;
                let m = toks[3].parse().map_err(|_| Error::MalformedHeader { line: lineno, msg: "bad edge count".into() })?;
                header = Some((n, m, lineno));
            }
            Some(_) => {
                let Some((n, _, _)) = header else {
                    return Err(Error::MalformedHeader { line: lineno, msg: "edge before p-line".into() });
                };
                if toks.len() != 2 {
                    return Err(Error::MalformedLine { line: lineno, msg: "expected `<u> <v>`".into() });
                }
                let u = parse_usize(toks[0], lineno)?;
                let v = parse_usize(toks[1], lineno)?;
                if u == 0 || v == 0 || u > n || v > n {
                    return Err(Error::EdgeOutOfRange { u, v, n });
                }
                raw.push((u - 1, v - 1));
            }
        }
    }
    let Some((n, m, hline)) = header else {
        return Err(Error::MalformedHeader { line: 0, msg: "missing p-line".into() });
    };
    let g = Graph::new(n, raw.iter().copied())?;
    if raw.len() != m {
        return Err(Error::MalformedHeader { line: hline, msg: format!("header declares {m} edges, found {}", raw.len()) });
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_path() {
        let g = parse_graph("p tw 3 2\n1 2\n2 3\n").unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edges(), &[(0, 1), (1, 2)]);
    }

    #[test]
    fn parses_edgeless_with_comments() {
        let g = parse_graph("c hello\np tw 1 0\n").unwrap();
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(parse_graph("p tw 2 1\n1 3\n"), Err(Error::EdgeOutOfRange { .. })));
        assert!(matches!(parse_graph("p tw 2 2\n1 2\n2 1\n"), Err(Error::DuplicateEdge { .. })));
        assert!(matches!(parse_graph("p tw 2 1\n2 2\n"), Err(Error::SelfLoop { v: 2 })));
        assert!(matches!(parse_graph("p td 2 1\n1 2\n"), Err(Error::MalformedHeader { .. })));
        assert!(matches!(parse_graph("1 2\n"), Err(Error::MalformedHeader { .. })));
        assert!(matches!(parse_graph("p tw 3 2\n1 2\n"), Err(Error::MalformedHeader { .. })));
    }

    #[test]
    fn induced_subgraphs() {
        let tri = Graph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(BagGraph::induced(&tri, &[0, 1]).edges, vec![(0, 1)]);
        assert_eq!(BagGraph::induced(&tri, &[0, 1, 2]).edges, tri.edges().to_vec());
        let path = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        assert!(BagGraph::induced(&path, &[0, 2]).edges.is_empty());
    }

    proptest! {
        #[test]
        fn gr_round_trip(n in 1usize..12, pairs in proptest::collection::vec((0usize..12, 0usize..12), 0..30)) {
            let edges: BTreeSet<_> = pairs.into_iter()
                .filter(|&(u, v)| u < n && v < n && u != v)
                .map(|(u, v)| (u.min(v), u.max(v)))
                .collect();
            let g = Graph::new(n, edges).unwrap();
            let back = parse_graph(&g.to_gr()).unwrap();
            prop_assert_eq!(back, g);
        }
    }
}
