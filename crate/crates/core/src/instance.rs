//! A graph together with its rooted decomposition and per-bag contexts.

use crate::decomposition::{validate, BagId, Decomposition, RootedTree};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::style::BagContext;

#[derive(Debug, Clone)]
pub struct Instance<'a> {
    pub g: &'a Graph,
    pub t: &'a Decomposition,
    pub rt: RootedTree,
    pub ctxs: Vec<BagContext>,
    /// Largest bag size.
    pub w_plus: usize,
}

impl<'a> Instance<'a> {
    /// Roots the decomposition; fails if a bag would get three children.
    pub fn new(g: &'a Graph, t: &'a Decomposition) -> Result<Self> {
        let rt = t.orient_left_to_right()?;
        let ctxs = BagContext::all(g, t, &rt);
        Ok(Instance { g, t, rt, ctxs, w_plus: t.max_bag_size().max(1) })
    }

    /// Like [`Instance::new`] but also requires a valid decomposition.
    pub fn validated(g: &'a Graph, t: &'a Decomposition) -> Result<Self> {
        let report = validate(g, t);
        if !report.is_valid() {
            return Err(Error::InvalidDecomposition(report.violations().join("; ")));
        }
        Instance::new(g, t)
    }

    pub fn bag_count(&self) -> usize {
        self.ctxs.len()
    }

    pub fn children(&self, b: BagId) -> &[BagId] {
        &self.rt.children[b]
    }

    pub fn parent(&self, b: BagId) -> Option<BagId> {
        self.rt.parent[b]
    }

    /// Input index of `c` among its parent's children.
    pub fn child_index(&self, c: BagId) -> usize {
        let p = self.rt.parent[c].expect("not the root");
        self.rt.children[p].iter().position(|&x| x == c).unwrap()
    }
}
