use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use ww_core::crossing::{brute_force_geometric_oracle, tally};
use ww_core::decomposition::{parse_decomposition, validate, Decomposition};
use ww_core::dp::{solve, solve_path, solve_tree, SolveConfig};
use ww_core::graph::{parse_graph, Graph};
use ww_core::instance::Instance;
use ww_core::random::{random_drawing, random_instance, InstanceShape};
use ww_core::render::{parse_layout_json, realize, to_layout_json, to_svg, SvgOptions};
use ww_core::style::{GeometryConfig, Style, Variant};

const STYLES: [Style; 4] = [Style::L1, Style::L2, Style::C, Style::O];

fn fixture(name: &str) -> (Graph, Decomposition) {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
    let g = parse_graph(&std::fs::read_to_string(dir.join(format!("{name}.gr"))).unwrap()).unwrap();
    let t = parse_decomposition(&std::fs::read_to_string(dir.join(format!("{name}.td"))).unwrap(), &g).unwrap();
    (g, t)
}

fn instance(seed: u64, width: usize, path: bool) -> (Graph, Decomposition) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_instance(&mut rng, InstanceShape { max_vertices: 7, width, max_bags: 4, path, edge_prob: 0.6 })
}

#[test]
fn fixtures_are_valid_and_round_trip() {
    for name in ["fig2", "wagner"] {
        let (g, t) = fixture(name);
        let report = validate(&g, &t);
        assert!(report.is_valid(), "{name}: {:?}", report.violations());
        let g2 = parse_graph(&g.to_gr()).unwrap();
        assert_eq!(g2, g);
        let t2 = parse_decomposition(&t.to_td(g.vertex_count()), &g2).unwrap();
        assert_eq!(t2.bags(), t.bags());
    }
    assert_eq!(validate(&fixture("fig2").0, &fixture("fig2").1).width, 3);
    assert_eq!(validate(&fixture("wagner").0, &fixture("wagner").1).width, 4);
}

#[test]
fn wagner_solves_end_to_end() {
    let (g, t) = fixture("wagner");
    let geo = GeometryConfig::default();
    for style in [Style::L1, Style::L2, Style::C] {
        let d = solve(&g, &t, &SolveConfig::new(style)).unwrap();
        assert!(d.optimal);
        assert_eq!(tally(&d, &t, &g, &geo).unwrap(), d.crossings);
        let layout = realize(&d, &g, &t, &geo).unwrap();
        let json = to_layout_json(&layout, &d, &validate(&g, &t), d.crossings);
        parse_layout_json(&json).unwrap().verify(&g, &t, &geo).unwrap();
        let svg = String::from_utf8(to_svg(&layout, &SvgOptions::for_layout(&layout))).unwrap();
        assert!(svg.starts_with("<?xml") && svg.ends_with("</svg>\n"));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn path_and_tree_solvers_agree(seed in any::<u64>(), width in 1usize..=2, style in 0usize..4) {
        let (g, t) = instance(seed, width, true);
        let cfg = SolveConfig::new(STYLES[style]);
        if let (Ok(a), Ok(b)) = (solve_path(&g, &t, &cfg), solve_tree(&g, &t, &cfg)) {
            prop_assert_eq!(a.crossings.total, b.crossings.total);
        }
    }

    #[test]
    fn optimum_beats_random_drawings(seed in any::<u64>(), width in 1usize..=2, style in 0usize..4) {
        let style = STYLES[style];
        let (g, t) = instance(seed, width, seed % 2 == 0);
        let Ok(opt) = solve(&g, &t, &SolveConfig::new(style)) else { return Ok(()) };
        let inst = Instance::new(&g, &t).unwrap();
        let geo = GeometryConfig::default();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        for _ in 0..10 {
            let d = random_drawing(&inst, style, &geo, &mut rng);
            if let Ok(c) = tally(&d, &t, &g, &geo) {
                prop_assert!(opt.crossings.total <= c.total);
            }
        }
    }

    #[test]
    fn tally_matches_the_flattened_geometry(seed in any::<u64>(), width in 1usize..=4, style in 0usize..4) {
        let style = STYLES[style];
        let (g, t) = instance(seed, width, false);
        let inst = Instance::new(&g, &t).unwrap();
        let geo = GeometryConfig::default();
        let d = random_drawing(&inst, style, &geo, &mut ChaCha8Rng::seed_from_u64(seed));
        if let (Ok(a), Ok(b)) = (tally(&d, &t, &g, &geo), brute_force_geometric_oracle(&d, &t, &g, &geo)) {
            prop_assert_eq!(a, b);
            if style.variant == Variant::O {
                prop_assert_eq!(a.te, 0);
            }
        }
    }

    #[test]
    fn layout_json_round_trips(seed in any::<u64>(), style in 0usize..4) {
        let (g, t) = instance(seed, 2, false);
        let geo = GeometryConfig::default();
        let d = solve(&g, &t, &SolveConfig::new(STYLES[style])).unwrap();
        let layout = realize(&d, &g, &t, &geo).unwrap();
        let bytes = to_layout_json(&layout, &d, &validate(&g, &t), d.crossings);
        let doc = parse_layout_json(&bytes).unwrap();
        prop_assert_eq!(doc.to_bytes(), bytes);
        prop_assert_eq!(&doc.drawing, &d);
    }
}
