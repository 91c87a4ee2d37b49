//! Crossing counters: closed forms for linear styles, exact geometry for the
//! circular and orbital styles, and a flattening oracle for tests.

pub mod combinatorial;
pub mod scene;

pub use combinatorial::{
    cr_ee, cr_te_linear, cr_te_tree, cr_tt_linear, cr_tt_tree, criss_cross, inversions, te_child_side,
    te_parent_side,
};
pub use scene::{count_crossings, flatten, Curve, Owner, Placed, Realizer};

use crate::decomposition::Decomposition;
use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::graph::Graph;
use crate::instance::Instance;
use crate::layout::TreeGeometry;
use crate::style::{orbits_valid, BagDrawing, CrossingTally, GeometryConfig, Role, Variant, WitnessDrawing};

/// Checks that every bag has a drawing consistent with the style.
pub fn check_drawing(inst: &Instance, drawing: &WitnessDrawing, cfg: &GeometryConfig) -> Result<()> {
    let v = drawing.style.variant;
    if drawing.per_bag.len() != inst.bag_count() {
        return Err(Error::StyleMismatch(format!(
            "{} bag drawings for {} bags",
            drawing.per_bag.len(),
            inst.bag_count()
        )));
    }
    for (b, d) in drawing.per_bag.iter().enumerate() {
        let ctx = &inst.ctxs[b];
        let bad = |m: &str| Err(Error::StyleMismatch(format!("bag {}: {m}", b + 1)));
        if d.bag != b {
            return bad("drawing is for another bag");
        }
        let mut sorted = d.order.clone();
        sorted.sort_unstable();
        if sorted != ctx.graph.vertices {
            return bad("order is not a permutation of the bag");
        }
        let e = ctx.graph.edges.len();
        let ok = match v {
            Variant::L1 => d.pages.is_none() && d.orbits.is_none() && d.side.is_some() == (e > 0),
            Variant::L2 => d.side.is_none() && d.orbits.is_none() && d.pages.as_ref().is_some_and(|p| p.len() == e),
            Variant::C => d.side.is_none() && d.pages.is_none() && d.orbits.is_none() && d.directions.is_none(),
            Variant::O => {
                d.side.is_none()
                    && d.pages.is_none()
                    && d.orbits.as_ref().is_some_and(|o| {
                        o.len() == ctx.tracked_vertices().len() && o.iter().all(|&x| x >= 1 && x as usize <= inst.w_plus)
                    })
                    && d.directions.as_ref().is_some_and(|x| x.len() == ctx.tracks().len())
            }
        };
        if !ok {
            return bad("fields do not match the style");
        }
        if d.flipped && ctx.n_children() != 2 {
            return bad("only bags with two children can be flipped");
        }
        if v == Variant::O && !orbits_valid(ctx, d, inst.w_plus, cfg) {
            return bad("vertices sharing an orbit have overlapping tracks");
        }
    }
    Ok(())
}

/// Disk centers and every edge and track curve of a drawing.
pub fn realize_curves(inst: &Instance, drawing: &WitnessDrawing, cfg: &GeometryConfig) -> Result<(Vec<Point>, Vec<Curve>)> {
    check_drawing(inst, drawing, cfg)?;
    let flipped: Vec<bool> = drawing.per_bag.iter().map(|d| d.flipped).collect();
    let centers = TreeGeometry::new(&inst.rt, cfg).centers(&inst.rt, &flipped);
    let rz = Realizer::new(drawing.style.variant, cfg, inst.w_plus);
    let placed: Vec<Placed> = (0..inst.bag_count())
        .map(|b| Placed { ctx: &inst.ctxs[b], drawing: &drawing.per_bag[b], center: centers[b] })
        .collect();
    let mut curves = Vec::new();
    for p in &placed {
        curves.extend(rz.edge_curves(p));
    }
    for b in 0..inst.bag_count() {
        for (i, &c) in inst.children(b).iter().enumerate() {
            curves.extend(rz.track_curves(&placed[b], i, &placed[c]));
        }
    }
    Ok((centers, curves))
}

/// Exact geometric count over the realized drawing.
pub fn cr_geometric(inst: &Instance, drawing: &WitnessDrawing, cfg: &GeometryConfig) -> Result<CrossingTally> {
    let (_, curves) = realize_curves(inst, drawing, cfg)?;
    count_crossings(&curves, cfg.disk_radius, |_, _| true)
}

/// Closed-form count for linear styles.
pub fn linear_tally(inst: &Instance, per_bag: &[BagDrawing]) -> CrossingTally {
    let mut t = CrossingTally::default();
    for b in 0..inst.bag_count() {
        let ctx = &inst.ctxs[b];
        let d = &per_bag[b];
        t.ee += cr_ee(d, &ctx.graph, Variant::L2);
        for (i, &c) in inst.children(b).iter().enumerate() {
            let s = ctx.shared(Role::Child(i));
            t.te += cr_te_linear((d, &ctx.graph), (&per_bag[c], &inst.ctxs[c].graph), s);
            t.tt += cr_tt_linear(d, &per_bag[c], s);
        }
        if ctx.n_children() == 2 {
            let top = d.child_order(2);
            t.tt += criss_cross(&d.order, ctx.shared(Role::Child(top[0])), ctx.shared(Role::Child(top[1])));
        }
    }
    t.total = t.tt + t.te + t.ee;
    t
}

/// Full recount from scratch: closed forms for linear styles, geometry otherwise.
pub fn tally_instance(inst: &Instance, drawing: &WitnessDrawing, cfg: &GeometryConfig) -> Result<CrossingTally> {
    if drawing.style.variant.is_linear() {
        check_drawing(inst, drawing, cfg)?;
        Ok(linear_tally(inst, &drawing.per_bag))
    } else {
        cr_geometric(inst, drawing, cfg)
    }
}

pub fn tally(drawing: &WitnessDrawing, t: &Decomposition, g: &Graph, cfg: &GeometryConfig) -> Result<CrossingTally> {
    tally_instance(&Instance::new(g, t)?, drawing, cfg)
}

/// Independent count: arcs are flattened to polylines with steps of at most
/// half a degree and all segment pairs are intersected.
pub fn brute_force_geometric_oracle(
    drawing: &WitnessDrawing,
    t: &Decomposition,
    g: &Graph,
    cfg: &GeometryConfig,
) -> Result<CrossingTally> {
    let inst = Instance::new(g, t)?;
    let (_, curves) = realize_curves(&inst, drawing, cfg)?;
    let flat = flatten(&curves, 0.5f64.to_radians());
    count_crossings(&flat, cfg.disk_radius, |_, _| true)
}
