//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};
use ww_core::crossing::{brute_force_geometric_oracle, cr_ee, linear_tally, tally};
use ww_core::decomposition::{parse_decomposition, Decomposition, DecompositionKind};
use ww_core::dp::{brute_force_optimum, solve, solve_path, solve_tree, SolveConfig};
use ww_core::error::Error;
use ww_core::graph::{parse_graph, BagGraph, Graph};
use ww_core::heuristics::{self, HeuristicConfig, HeuristicVariant};
use ww_core::instance::Instance;
use ww_core::random::{random_drawing, random_instance, InstanceShape};
use ww_core::style::{BagDrawing, CrossingTally, GeometryConfig, Page, Style, Variant, WitnessDrawing};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

const STYLES: [Style; 4] = [Style::L1, Style::L2, Style::C, Style::O];

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn load(name: &str) -> (Graph, Decomposition) {
    let dir = fixtures();
    let g = parse_graph(&std::fs::read_to_string(dir.join(format!("{name}.gr"))).unwrap()).unwrap();
    let t = parse_decomposition(&std::fs::read_to_string(dir.join(format!("{name}.td"))).unwrap(), &g).unwrap();
    (g, t)
}

fn oracle_suite() -> Vec<(Graph, Decomposition)> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    (0..1000)
        .map(|i| random_instance(&mut rng, InstanceShape { max_vertices: 8, width: 2, max_bags: 4, path: i % 2 == 0, edge_prob: 0.5 }))
        .collect()
}

fn exact(g: &Graph, t: &Decomposition, cfg: &SolveConfig) -> Result<WitnessDrawing, Error> {
    match t.kind() {
        DecompositionKind::Path => solve_path(g, t, cfg),
        DecompositionKind::Tree => solve_tree(g, t, cfg),
    }
}

fn oracle_equivalence() -> Outcome {
    let mut checked = [0usize; 4];
    let mut skipped = [0usize; 4];
    for (i, (g, t)) in oracle_suite().iter().enumerate() {
        for (s, &style) in STYLES.iter().enumerate() {
            let cfg = SolveConfig::new(style);
            match brute_force_optimum(g, t, &cfg) {
                Err(Error::SearchSpaceTooLarge { .. }) => skipped[s] += 1,
                Err(e) => return Err(format!("instance {i} {style}: brute force failed: {e}")),
                Ok(bf) => {
                    let dp = exact(g, t, &cfg).map_err(|e| format!("instance {i} {style}: {e}"))?;
                    ensure!(dp.crossings.total == bf.crossings.total, "instance {i} {style}: dp {} brute {}", dp.crossings.total, bf.crossings.total);
                    ensure!(dp.optimal, "instance {i} {style}: not flagged optimal");
                    checked[s] += 1;
                }
            }
        }
    }
    let per: Vec<String> = STYLES.iter().zip(checked.iter().zip(&skipped)).map(|(s, (c, k))| format!("{s} {c}/{}", c + k)).collect();
    ensure!(checked.iter().all(|&c| c > 500), "too few instances within the brute-force guard: {}", per.join(", "));
    Ok(format!("exact agreement, checked {} (the rest exceed the brute-force guard)", per.join(", ")))
}

fn counter_consistency() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let cfg = GeometryConfig::default();
    let (mut checked, mut degenerate, mut orbital) = (0, 0, 0);
    for i in 0..1000 {
        let width = 1 + i % 4;
        let (g, t) = random_instance(&mut rng, InstanceShape { max_vertices: 10, width, max_bags: 6, path: i % 3 == 0, edge_prob: 0.6 });
        let inst = Instance::new(&g, &t).unwrap();
        let style = STYLES[i % 4];
        let d = random_drawing(&inst, style, &cfg, &mut rng);
        let (Ok(fast), Ok(slow)) = (tally(&d, &t, &g, &cfg), brute_force_geometric_oracle(&d, &t, &g, &cfg)) else {
            degenerate += 1;
            continue;
        };
        ensure!(fast == slow, "drawing {i} {style} width {width}: tally {fast:?} oracle {slow:?}");
        if style.variant == Variant::O {
            ensure!(fast.te == 0, "drawing {i}: orbital te = {}", fast.te);
            orbital += 1;
        }
        checked += 1;
    }
    ensure!(checked >= 950, "only {checked} non-degenerate drawings");
    Ok(format!("{checked} drawings equal ({orbital} orbital with te = 0), {degenerate} degenerate skipped"))
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn closed_form() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let geo = GeometryConfig::default();
    for n in 4..=8usize {
        let edges: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let g = Graph::new(n, edges.clone()).unwrap();
        let bg = BagGraph::induced(&g, &(0..n).collect::<Vec<_>>());
        let t = Decomposition::new(vec![(0..n).collect()], vec![]).unwrap();
        let want = binomial(n as u64, 4);
        for _ in 0..20 {
            let mut order: Vec<usize> = (0..n).collect();
            for i in (1..n).rev() {
                order.swap(i, rng.gen_range(0..=i));
            }
            let page = if rng.gen_bool(0.5) { Page::Left } else { Page::Right };
            let d = BagDrawing { bag: 0, order: order.clone(), side: None, pages: Some(vec![page; edges.len()]), orbits: None, directions: None, flipped: false };
            let got = cr_ee(&d, &bg, Variant::L2);
            ensure!(got == want, "K{n} one page: {got} != {want}");
            let circ = BagDrawing { pages: None, ..d };
            let w = WitnessDrawing { style: Style::C, per_bag: vec![circ], crossings: CrossingTally::default(), optimal: false };
            let geo_count = brute_force_geometric_oracle(&w, &t, &g, &geo).map_err(|e| format!("K{n}: {e}"))?;
            ensure!(geo_count.ee == want, "K{n} circle: {} != {want}", geo_count.ee);
        }
    }
    Ok("cr_ee(K_n) = C(n,4) for n = 4..8, one page and circular".into())
}

fn figure_tallies() -> Outcome {
    let (g, t) = load("fig2");
    let text = std::fs::read_to_string(fixtures().join("fig2_drawings.json")).unwrap();
    let drawings: std::collections::BTreeMap<String, WitnessDrawing> = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    let geo = GeometryConfig::default();
    let mut parts = Vec::new();
    // (tt, ee, te)
    for (key, want) in [("l2", (6, 0, 6)), ("c", (4, 1, 13)), ("o", (12, 1, 0))] {
        let d = drawings.get(key).ok_or(format!("no {key} drawing"))?;
        let got = tally(d, &t, &g, &geo).map_err(|e| format!("{key}: {e}"))?;
        let oracle = brute_force_geometric_oracle(d, &t, &g, &geo).map_err(|e| format!("{key}: {e}"))?;
        ensure!((got.tt, got.ee, got.te) == want, "{key}: got {:?}, want {want:?}", (got.tt, got.ee, got.te));
        ensure!(got == oracle, "{key}: geometric oracle {oracle:?}");
        parts.push(format!("{key} {want:?}"));
    }
    Ok(format!("(tt, ee, te) = {} on the synthesized fixture", parts.join(", ")))
}

fn heuristic_sanity() -> Outcome {
    let mut checked = 0;
    for (i, (g, t)) in oracle_suite().iter().enumerate() {
        let cfg = SolveConfig::new(Style::L2);
        let Ok(bf) = brute_force_optimum(g, t, &cfg) else { continue };
        let opt = bf.crossings.total;
        for variant in [HeuristicVariant::Global, HeuristicVariant::Local] {
            let mut hc = HeuristicConfig::new(variant);
            let plain = heuristics::run(g, t, &hc).map_err(|e| e.to_string())?.0.crossings.total;
            hc.local_search = true;
            let ls = heuristics::run(g, t, &hc).map_err(|e| e.to_string())?.0.crossings.total;
            ensure!(plain >= opt && ls >= opt, "instance {i} {variant:?}: heuristic {plain}/{ls} below optimum {opt}");
            ensure!(ls <= plain, "instance {i} {variant:?}: local search {ls} worse than {plain}");
        }
        checked += 1;
    }
    ensure!(checked > 900, "only {checked} solvable instances");
    Ok(format!("{checked} instances: optimum <= heuristic+LS <= heuristic"))
}

fn wagner() -> Outcome {
    let (g, t) = load("wagner");
    let dp = solve(&g, &t, &SolveConfig::new(Style::L2)).map_err(|e| e.to_string())?;
    let mut seen = Vec::new();
    for variant in [HeuristicVariant::Global, HeuristicVariant::Local] {
        for ls in [false, true] {
            let mut hc = HeuristicConfig::new(variant);
            hc.local_search = ls;
            let total = heuristics::run(&g, &t, &hc).map_err(|e| e.to_string())?.0.crossings.total;
            ensure!(total <= 12, "{variant:?} ls={ls}: {total} > 12");
            ensure!(dp.crossings.total <= total, "{variant:?} ls={ls}: {total} below DP {}", dp.crossings.total);
            seen.push(total.to_string());
        }
    }
    ensure!(dp.optimal, "DP not optimal");
    Ok(format!(
        "DP {} on the hand-built decomposition (the reference value 3 belongs to the corpus decomposition); heuristics {} (Global, Global+LS, Local, Local+LS) all <= 12 and >= DP",
        dp.crossings.total,
        seen.join("/")
    ))
}

/// Bags {i, i+1, i+2, i+3} on a path, every pair within a bag adjacent.
fn band(k: usize) -> (Graph, Decomposition) {
    let n = k + 3;
    let edges: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n.min(u + 4)).map(move |v| (u, v))).collect();
    let bags = (0..k).map(|i| (i..i + 4).collect()).collect();
    let tree = (1..k).map(|i| (i - 1, i)).collect();
    (Graph::new(n, edges).unwrap(), Decomposition::new(bags, tree).unwrap())
}

fn performance() -> Outcome {
    let limit = Duration::from_secs(60);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut cases = vec![("band".to_string(), band(20))];
    for i in 0..4 {
        let (g, t) = loop {
            let x = random_instance(&mut rng, InstanceShape { max_vertices: 40, width: 3, max_bags: 20, path: true, edge_prob: 0.6 });
            if x.1.bag_count() >= 15 {
                break x;
            }
        };
        cases.push((format!("random{i}"), (g, t)));
    }
    let mut slowest = Vec::new();
    for style in STYLES {
        let mut worst = Duration::ZERO;
        for (name, (g, t)) in &cases {
            let mut cfg = SolveConfig::new(style);
            cfg.time_limit = Some(limit);
            let start = Instant::now();
            let d = solve_path(g, t, &cfg).map_err(|e| format!("{name} {style}: {e}"))?;
            let took = start.elapsed();
            ensure!(d.optimal && took < limit, "{name} {style}: {took:?}, optimal={}", d.optimal);
            worst = worst.max(took);
        }
        slowest.push(format!("{style} {:.2}s", worst.as_secs_f64()));
    }

    let mut heavy: Vec<(String, (Graph, Decomposition))> = ["wagner", "fig2"].iter().map(|n| (n.to_string(), load(n))).collect();
    for i in 0..30 {
        let x = random_instance(&mut rng, InstanceShape { max_vertices: 60, width: 4 + i % 7, max_bags: 30, path: i % 2 == 0, edge_prob: 0.5 });
        heavy.push((format!("wide{i}"), x));
    }
    let mut worst = Duration::ZERO;
    for (name, (g, t)) in &heavy {
        for variant in [HeuristicVariant::Global, HeuristicVariant::Local] {
            for ls in [false, true] {
                let mut hc = HeuristicConfig::new(variant);
                hc.local_search = ls;
                let start = Instant::now();
                heuristics::run(g, t, &hc).map_err(|e| format!("{name}: {e}"))?;
                let took = start.elapsed();
                ensure!(took < Duration::from_secs(1), "{name} {variant:?} ls={ls}: {took:?}");
                worst = worst.max(took);
            }
        }
    }
    Ok(format!(
        "DP slowest per style on width-3 paths of up to 20 bags: {}; heuristics at most {:.3}s on {} instances of width <= 10",
        slowest.join(", "),
        worst.as_secs_f64(),
        heavy.len()
    ))
}

/// Every single move of the four kinds, applied to bag `b`.
fn neighbours(inst: &Instance, d: &BagDrawing, b: usize) -> Vec<BagDrawing> {
    let mut out = Vec::new();
    let m = d.order.len();
    for i in 0..m {
        for j in i + 1..m {
            let mut x = d.clone();
            x.order.swap(i, j);
            out.push(x);
        }
    }
    let pages = d.pages.clone().unwrap_or_default();
    for i in 0..pages.len() {
        let mut x = d.clone();
        x.pages.as_mut().unwrap()[i] = pages[i].flip();
        out.push(x);
        for j in i + 1..pages.len() {
            if pages[i] != pages[j] {
                let mut x = d.clone();
                let p = x.pages.as_mut().unwrap();
                p.swap(i, j);
                out.push(x);
            }
        }
    }
    if inst.ctxs[b].n_children() == 2 {
        let mut x = d.clone();
        x.flipped = !x.flipped;
        out.push(x);
    }
    out
}

fn local_search_monotone() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut suite = oracle_suite();
    for i in 0..200 {
        suite.push(random_instance(&mut rng, InstanceShape { max_vertices: 14, width: 3 + i % 3, max_bags: 8, path: i % 2 == 0, edge_prob: 0.6 }));
    }
    let (mut runs, mut moves) = (0, 0);
    for (i, (g, t)) in suite.iter().enumerate() {
        let inst = Instance::new(g, t).unwrap();
        for variant in [HeuristicVariant::Global, HeuristicVariant::Local] {
            let mut hc = HeuristicConfig::new(variant);
            let start = heuristics::run(g, t, &hc).map_err(|e| e.to_string())?.0;
            hc.local_search = true;
            hc.rng_seed = i as u64 % 3;
            let (d, trace) = heuristics::run(g, t, &hc).map_err(|e| e.to_string())?;
            ensure!(trace.first() == Some(&start.crossings.total), "instance {i}: trace starts at {:?}, not {}", trace.first(), start.crossings.total);
            ensure!(trace.windows(2).all(|w| w[1] < w[0]), "instance {i} {variant:?}: trace {trace:?} not strictly decreasing");
            let total = linear_tally(&inst, &d.per_bag).total;
            ensure!(trace.last() == Some(&total) && d.crossings.total == total, "instance {i}: trace ends at {:?}, drawing has {total}", trace.last());
            for b in 0..inst.bag_count() {
                for x in neighbours(&inst, &d.per_bag[b], b) {
                    let mut per_bag = d.per_bag.clone();
                    per_bag[b] = x;
                    let after = linear_tally(&inst, &per_bag).total;
                    ensure!(after >= total, "instance {i} {variant:?} bag {b}: a move reaches {after} < {total}");
                }
            }
            runs += 1;
            moves += trace.len() - 1;
        }
    }
    Ok(format!("{runs} runs, {moves} accepted moves, all strictly improving; every result is a local optimum"))
}

fn hash(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// The TSV with the wall-time column blanked.
fn mask_millis(tsv: &[u8]) -> Vec<u8> {
    let text = String::from_utf8_lossy(tsv);
    let mut out = String::new();
    for line in text.lines() {
        let mut f: Vec<&str> = line.split('\t').collect();
        if !line.starts_with('#') && f.len() == 11 && f[0] != "instance" {
            f[8] = "*";
        }
        out.push_str(&f.join("\t"));
        out.push('\n');
    }
    out.into_bytes()
}

fn artifacts(dir: &Path) -> Result<Vec<(String, String)>, String> {
    let ww = env!("CARGO_BIN_EXE_ww");
    let fx = fixtures();
    let (gr, td) = (fx.join("fig2.gr"), fx.join("fig2.td"));
    let mut out = Vec::new();
    let runs: [&[&str]; 6] = [
        &["--style", "l1"],
        &["--style", "l2"],
        &["--style", "c"],
        &["--style", "o"],
        &["--algo", "global", "--ls", "--seed", "7"],
        &["--algo", "local", "--ls", "--seed", "11"],
    ];
    for (i, extra) in runs.iter().enumerate() {
        let prefix = dir.join(format!("run{i}"));
        let o = Command::new(ww)
            .args(["solve", gr.to_str().unwrap(), td.to_str().unwrap(), "--out", prefix.to_str().unwrap()])
            .args(*extra)
            .output()
            .map_err(|e| e.to_string())?;
        ensure!(o.status.success(), "solve {extra:?}: {}", String::from_utf8_lossy(&o.stderr));
        out.push((format!("run{i}.tsv"), hash(&mask_millis(&o.stdout))));
        for ext in ["svg", "json"] {
            let bytes = std::fs::read(dir.join(format!("run{i}.{ext}"))).map_err(|e| e.to_string())?;
            out.push((format!("run{i}.{ext}"), hash(&bytes)));
        }
    }
    let o = Command::new(ww)
        .args(["bench", fx.to_str().unwrap(), "--style", "l1,l2,c", "--ls", "--seed", "5"])
        .output()
        .map_err(|e| e.to_string())?;
    ensure!(o.status.success(), "bench: {}", String::from_utf8_lossy(&o.stderr));
    out.push(("bench.tsv".into(), hash(&mask_millis(&o.stdout))));
    Ok(out)
}

fn determinism() -> Outcome {
    let a = tempfile::tempdir().map_err(|e| e.to_string())?;
    let b = tempfile::tempdir().map_err(|e| e.to_string())?;
    let first = artifacts(a.path())?;
    let second = artifacts(b.path())?;
    for ((name, x), (_, y)) in first.iter().zip(&second) {
        ensure!(x == y, "{name} differs: {x} vs {y}");
    }
    Ok(format!("{} artifacts hash-identical across two runs (wall-time column masked)", first.len()))
}

type Criterion = (usize, &'static str, fn() -> Outcome);

fn main() {
    let concurrent: [Criterion; 8] = [
        (1, "oracle equivalence", oracle_equivalence),
        (2, "counter/geometry consistency", counter_consistency),
        (3, "closed form for K_n", closed_form),
        (4, "example figure tallies", figure_tallies),
        (5, "heuristics vs optimum", heuristic_sanity),
        (6, "Wagner graph", wagner),
        (8, "local search monotonicity", local_search_monotone),
        (9, "determinism", determinism),
    ];
    let run = |(n, name, f): Criterion| {
        let start = Instant::now();
        let out = std::panic::catch_unwind(f).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panicked".into()))
        });
        (n, name, out, start.elapsed())
    };
    let mut results: Vec<_> = std::thread::scope(|s| {
        let handles: Vec<_> = concurrent.into_iter().map(|c| s.spawn(move || run(c))).collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    // timed alone
    results.push(run((7, "performance envelope", performance)));
    results.sort_by_key(|r| r.0);

    let mut failed = 0;
    for (n, name, out, took) in &results {
        let secs = took.as_secs_f64();
        match out {
            Ok(detail) => println!("criterion {n} {name}: PASS ({secs:.1}s) {detail}"),
            Err(why) => {
                failed += 1;
                println!("criterion {n} {name}: FAIL ({secs:.1}s) {why}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
