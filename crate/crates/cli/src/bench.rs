//! Corpus benchmark: every configuration on every instance, then a summary.

use std::collections::BTreeMap;
use std::fmt::Write;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use ww_core::decomposition::Decomposition;
use ww_core::graph::Graph;

use crate::run::{record, Algo, Failure, RunConfig, RunRecord, StyleArg, TSV_HEADER};

/// Pairs `NAME.gr` / `NAME.td` in `dir`, sorted by name.
pub fn corpus(dir: &Path) -> Result<Vec<(String, PathBuf, PathBuf)>, Failure> {
    let entries = std::fs::read_dir(dir).map_err(|e| Failure::Input(format!("{}: {e}", dir.display())))?;
    let mut out = Vec::new();
    for entry in entries {
        let path = entry.map_err(|e| Failure::Input(e.to_string()))?.path();
        if path.extension().and_then(|e| e.to_str()) != Some("gr") {
            continue;
        }
        let td = path.with_extension("td");
        if td.is_file() {
            let name = path.file_stem().unwrap_or_default().to_string_lossy().into_owned();
            out.push((name, path, td));
        }
    }
    out.sort();
    Ok(out)
}

/// The configurations to run: heuristics only for l2, each also with local
/// search when `ls` is set.
pub fn configs(styles: &[StyleArg], algos: &[Algo], ls: bool, base: RunConfig) -> Vec<RunConfig> {
    let mut out = Vec::new();
    for &style in styles {
        for &algo in algos {
            let heuristic = matches!(algo, Algo::Global | Algo::Local);
            if heuristic && style != StyleArg::L2 {
                continue;
            }
            out.push(RunConfig { style, algo, ls: false, ..base });
            if heuristic && ls {
                out.push(RunConfig { style, algo, ls: true, ..base });
            }
        }
    }
    out
}

struct Loaded {
    name: String,
    inputs: Result<(Graph, Decomposition), Failure>,
}

/// Runs everything and returns the TSV body and the summary, both
/// independent of scheduling.
pub fn bench(dir: &Path, cfgs: &[RunConfig]) -> Result<(Vec<RunRecord>, String), Failure> {
    let loaded: Vec<Loaded> = corpus(dir)?
        .into_iter()
        .map(|(name, gr, td)| Loaded { name, inputs: crate::run::read_inputs(&gr, &td) })
        .collect();
    let jobs: Vec<(usize, usize)> = (0..loaded.len()).flat_map(|i| (0..cfgs.len()).map(move |c| (i, c))).collect();
    let records: Vec<RunRecord> = jobs
        .par_iter()
        .map(|&(i, c)| {
            let inst = &loaded[i];
            match &inst.inputs {
                Ok((g, t)) => record(&inst.name, g, t, &cfgs[c]).0,
                Err(_) => RunRecord {
                    instance: inst.name.clone(),
                    style: cfgs[c].style,
                    algo: cfgs[c].algo,
                    ls: cfgs[c].ls,
                    tally: None,
                    millis: 0,
                    optimal: false,
                    seed: cfgs[c].seed,
                },
            }
        })
        .collect();
    let shapes: BTreeMap<&str, (usize, usize)> = loaded
        .iter()
        .filter_map(|l| l.inputs.as_ref().ok().map(|(_, t)| (l.name.as_str(), (t.width(), t.bag_count()))))
        .collect();
    let text = summary(&records, &shapes);
    Ok((records, text))
}

fn label(r: &RunRecord) -> (String, String, bool) {
    (r.style.style().to_string(), r.algo.to_string(), r.ls)
}

/// Per-instance best and winners, then per-algorithm win counts and mean
/// ratio best/achieved. Ratios compare runs of the same style only.
pub fn summary(records: &[RunRecord], shapes: &BTreeMap<&str, (usize, usize)>) -> String {
    let mut s = String::new();
    s.push_str("# summary: ties for the fewest crossings count as a win for every tied algorithm\n");
    s.push_str("# instance\twidth\tbags\tstyle\tbest\twinners\n");
    // (style, instance) -> records
    let mut groups: BTreeMap<(String, &str), Vec<&RunRecord>> = BTreeMap::new();
    for r in records {
        groups.entry((r.style.style().to_string(), r.instance.as_str())).or_default().push(r);
    }
    let mut wins: BTreeMap<(String, String, bool), (usize, f64, usize)> = BTreeMap::new();
    for r in records {
        wins.entry(label(r)).or_default();
    }
    let mut rows = Vec::new();
    for ((style, inst), rs) in &groups {
        let Some(best) = rs.iter().filter_map(|r| r.tally.map(|t| t.total)).min() else { continue };
        let mut winners = Vec::new();
        for r in rs {
            let Some(t) = r.tally else { continue };
            let e = wins.get_mut(&label(r)).unwrap();
            e.1 += if t.total == 0 { 1.0 } else { best as f64 / t.total as f64 };
            e.2 += 1;
            if t.total == best {
                e.0 += 1;
                winners.push(format!("{}{}", r.algo, if r.ls { "+ls" } else { "" }));
            }
        }
        let (w, k) = shapes.get(inst).copied().unwrap_or_default();
        rows.push(((w, k, inst.to_string(), style.clone()), format!("# {inst}\t{w}\t{k}\t{style}\t{best}\t{}\n", winners.join(","))));
    }
    rows.sort();
    for (_, line) in rows {
        s.push_str(&line);
    }
    s.push_str("# style\talgo\tls\twins\tmean_ratio\tsolved\n");
    for ((style, algo, ls), (w, sum, n)) in wins {
        let mean = if n == 0 { 0.0 } else { sum / n as f64 };
        let _ = writeln!(s, "# {style}\t{algo}\t{ls}\t{w}\t{mean:.4}\t{n}");
    }
    s
}

pub fn render(records: &[RunRecord], summary: &str) -> String {
    let mut s = String::new();
    s.push_str(TSV_HEADER);
    s.push('\n');
    for r in records {
        let _ = writeln!(s, "{r}");
    }
    s.push_str(summary);
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use ww_core::style::CrossingTally;

    fn rec(instance: &str, algo: Algo, total: Option<u64>) -> RunRecord {
        RunRecord {
            instance: instance.into(),
            style: StyleArg::L2,
            algo,
            ls: false,
            tally: total.map(|t| CrossingTally::new(0, 0, t)),
            millis: 0,
            optimal: false,
            seed: 0,
        }
    }

    #[test]
    fn ties_win_for_everyone() {
        let recs = vec![rec("a", Algo::Global, Some(3)), rec("a", Algo::Local, Some(3))];
        let s = summary(&recs, &BTreeMap::new());
        assert!(s.contains("# a\t0\t0\tl2\t3\tglobal,local\n"), "{s}");
        assert!(s.contains("# l2\tglobal\tfalse\t1\t1.0000\t1\n"));
        assert!(s.contains("# l2\tlocal\tfalse\t1\t1.0000\t1\n"));
    }

    #[test]
    fn ratios_and_failures() {
        let recs = vec![
            rec("a", Algo::Dp, Some(2)),
            rec("a", Algo::Global, Some(4)),
            rec("b", Algo::Dp, None),
            rec("b", Algo::Global, Some(0)),
        ];
        let shapes = BTreeMap::from([("a", (2, 5)), ("b", (1, 3))]);
        let s = summary(&recs, &shapes);
        // b (width 1) before a (width 2)
        assert!(s.find("# b\t").unwrap() < s.find("# a\t").unwrap());
        assert!(s.contains("# l2\tdp\tfalse\t1\t1.0000\t1\n"), "{s}");
        assert!(s.contains("# l2\tglobal\tfalse\t1\t0.7500\t2\n"), "{s}");
    }
}
