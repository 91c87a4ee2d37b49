//! One solver run and its TSV record.

use std::fmt;
use std::path::Path;
use std::time::{Duration, Instant};

use clap::ValueEnum;
use ww_core::decomposition::{parse_decomposition, validate, Decomposition};
use ww_core::dp::{brute_force_optimum, solve, SolveConfig};
use ww_core::error::Error;
use ww_core::graph::{parse_graph, Graph};
use ww_core::heuristics::{self, HeuristicConfig, HeuristicVariant};
use ww_core::render::{realize, to_layout_json, to_svg, SvgOptions};
use ww_core::style::{CrossingTally, Style, Variant, WitnessDrawing};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, ValueEnum)]
pub enum Algo {
    Dp,
    Global,
    Local,
    Brute,
}

impl fmt::Display for Algo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.to_possible_value().expect("no skipped variants").get_name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, ValueEnum)]
pub enum StyleArg {
    L1,
    L2,
    C,
    O,
}

impl StyleArg {
    pub fn style(self) -> Style {
        match self {
            StyleArg::L1 => Style::L1,
            StyleArg::L2 => Style::L2,
            StyleArg::C => Style::C,
            StyleArg::O => Style::O,
        }
    }
}

/// Everything one run needs besides the inputs.
#[derive(Debug, Clone, Copy)]
pub struct RunConfig {
    pub style: StyleArg,
    pub algo: Algo,
    pub ls: bool,
    pub time_limit: Duration,
    pub seed: u64,
    pub alpha: Option<f64>,
}

pub const TSV_HEADER: &str = "instance\tstyle\talgo\tls\ttt\tte\tee\ttotal\tmillis\toptimal\tseed";

#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub instance: String,
    pub style: StyleArg,
    pub algo: Algo,
    pub ls: bool,
    /// `None` when the run failed.
    pub tally: Option<CrossingTally>,
    pub millis: u128,
    pub optimal: bool,
    pub seed: u64,
}

impl fmt::Display for RunRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let style = self.style.style();
        write!(f, "{}\t{}\t{}\t{}\t", self.instance, style, self.algo, self.ls)?;
        match self.tally {
            Some(t) => write!(f, "{}\t{}\t{}\t{}\t", t.tt, t.te, t.ee, t.total)?,
            None => f.write_str("-\t-\t-\t-\t")?,
        }
        write!(f, "{}\t{}\t{}", self.millis, self.optimal, self.seed)
    }
}

/// Failures, each mapped to an exit status.
#[derive(Debug)]
pub enum Failure {
    /// Unreadable or unparsable input, or a bad flag combination.
    Input(String),
    /// The decomposition is not valid for the graph.
    Invalid(Vec<String>),
    TooLarge(String),
    Other(String),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Input(_) | Failure::Other(_) => 2,
            Failure::Invalid(_) => 1,
            Failure::TooLarge(_) => 3,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Input(m) | Failure::Other(m) => f.write_str(m),
            Failure::Invalid(v) => write!(f, "invalid decomposition:\n{}", v.join("\n")),
            Failure::TooLarge(m) => write!(f, "{m}\nhint: use --algo global or --algo local for instances this large"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::SearchSpaceTooLarge { .. } => Failure::TooLarge(e.to_string()),
            Error::Io(_)
            | Error::Json(_)
            | Error::MalformedHeader { .. }
            | Error::MalformedLine { .. }
            | Error::EdgeOutOfRange { .. }
            | Error::DuplicateEdge { .. }
            | Error::SelfLoop { .. }
            | Error::BagIndexOutOfRange { .. }
            | Error::VertexOutOfRange { .. }
            | Error::NotATree(_)
            | Error::WidthMismatch { .. }
            | Error::Unsupported(_) => Failure::Input(e.to_string()),
            _ => Failure::Other(e.to_string()),
        }
    }
}

pub fn read_inputs(graph: &Path, td: &Path) -> Result<(Graph, Decomposition), Failure> {
    let read = |p: &Path| std::fs::read_to_string(p).map_err(|e| Failure::Input(format!("{}: {e}", p.display())));
    let g = parse_graph(&read(graph)?).map_err(|e| Failure::Input(format!("{}: {e}", graph.display())))?;
    let t = parse_decomposition(&read(td)?, &g).map_err(|e| Failure::Input(format!("{}: {e}", td.display())))?;
    Ok((g, t))
}

/// Runs one configuration on validated inputs.
pub fn run(g: &Graph, t: &Decomposition, cfg: &RunConfig) -> Result<WitnessDrawing, Failure> {
    let report = validate(g, t);
    if !report.is_valid() {
        return Err(Failure::Invalid(report.violations()));
    }
    let style = cfg.style.style();
    let heuristic = matches!(cfg.algo, Algo::Global | Algo::Local);
    if cfg.ls && !heuristic {
        return Err(Failure::Input("--ls needs --algo global or --algo local".into()));
    }
    if heuristic && style.variant != Variant::L2 {
        return Err(Failure::Input(format!("the {} heuristic draws l2 only", cfg.algo)));
    }
    let mut sc = SolveConfig::new(style);
    sc.geometry.alpha = cfg.alpha;
    sc.time_limit = Some(cfg.time_limit);
    let d = match cfg.algo {
        Algo::Dp => solve(g, t, &sc)?,
        Algo::Brute => brute_force_optimum(g, t, &sc)?,
        Algo::Global | Algo::Local => {
            let variant = if cfg.algo == Algo::Global { HeuristicVariant::Global } else { HeuristicVariant::Local };
            let hc = HeuristicConfig { variant, local_search: cfg.ls, time_limit: Some(cfg.time_limit), rng_seed: cfg.seed };
            heuristics::run(g, t, &hc)?.0
        }
    };
    Ok(d)
}

/// Runs and times one configuration, producing its record.
pub fn record(instance: &str, g: &Graph, t: &Decomposition, cfg: &RunConfig) -> (RunRecord, Result<WitnessDrawing, Failure>) {
    let start = Instant::now();
    let out = run(g, t, cfg);
    let rec = RunRecord {
        instance: instance.to_string(),
        style: cfg.style,
        algo: cfg.algo,
        ls: cfg.ls,
        tally: out.as_ref().ok().map(|d| d.crossings),
        millis: start.elapsed().as_millis(),
        optimal: out.as_ref().is_ok_and(|d| d.optimal),
        seed: cfg.seed,
    };
    (rec, out)
}

/// Writes `PREFIX.svg` and `PREFIX.json`.
pub fn write_artifacts(prefix: &Path, d: &WitnessDrawing, g: &Graph, t: &Decomposition, cfg: &RunConfig) -> Result<(), Failure> {
    let mut geometry = SolveConfig::new(cfg.style.style()).geometry;
    geometry.alpha = cfg.alpha;
    let layout = realize(d, g, t, &geometry)?;
    let svg = to_svg(&layout, &SvgOptions::for_layout(&layout));
    let json = to_layout_json(&layout, d, &validate(g, t), d.crossings);
    let with_ext = |ext: &str| {
        let mut p = prefix.as_os_str().to_owned();
        p.push(ext);
        std::path::PathBuf::from(p)
    };
    for (path, bytes) in [(with_ext(".svg"), svg), (with_ext(".json"), json)] {
        std::fs::write(&path, bytes).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}
