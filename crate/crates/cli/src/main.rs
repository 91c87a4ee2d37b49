//! `ww`: witness drawings of tree and path decompositions.

mod bench;
mod run;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand};

use run::{Algo, Failure, RunConfig, StyleArg};

const EXIT_CODES: &str = "Exit status:
  0  success (also when a time limit stops the exact solver early; optimal=false)
  1  the decomposition is not valid for the graph
  2  unreadable or malformed input, or unsupported options
  3  search space too large for the exact solver

Environment:
  WW_THREADS  maximum number of worker threads for bench (default: all cores)";

#[derive(Debug, Parser)]
#[command(name = "ww", version, about = "Crossing-minimal witness drawings of tree and path decompositions", after_help = EXIT_CODES)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Check a decomposition (.td) against a graph (.gr)
    Validate {
        /// Graph in PACE .gr format
        graph: PathBuf,
        /// Decomposition in PACE .td format
        td: PathBuf,
    },
    /// Draw one instance; writes PREFIX.svg and PREFIX.json and prints a TSV record
    Solve {
        /// Graph in PACE .gr format
        graph: PathBuf,
        /// Decomposition in PACE .td format
        td: PathBuf,
        #[arg(long, value_enum, default_value_t = StyleArg::L2)]
        style: StyleArg,
        #[arg(long, value_enum, default_value_t = Algo::Dp)]
        algo: Algo,
        /// Follow the heuristic with local search
        #[arg(long)]
        ls: bool,
        /// Seconds
        #[arg(long, default_value_t = 900.0)]
        time_limit: f64,
        /// Local search scan order seed (0 keeps the canonical order)
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Clock angle of the first vertex on circles, in radians
        #[arg(long)]
        alpha: Option<f64>,
        /// Output prefix [default: graph file name without extension]
        #[arg(long)]
        out: Option<PathBuf>,
        /// Root bag, 1-based [default: 1]
        #[arg(long)]
        root: Option<usize>,
    },
    /// Run configurations over every NAME.gr/NAME.td pair in a directory
    Bench {
        /// Directory of NAME.gr/NAME.td pairs
        corpus: PathBuf,
        #[arg(long, value_enum, value_delimiter = ',', default_value = "l2")]
        style: Vec<StyleArg>,
        #[arg(long, value_enum, value_delimiter = ',', default_value = "dp,global,local")]
        algo: Vec<Algo>,
        /// Also run each heuristic followed by local search
        #[arg(long)]
        ls: bool,
        /// Seconds per run
        #[arg(long, default_value_t = 900.0)]
        time_limit: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn duration(secs: f64) -> Result<Duration, Failure> {
    Duration::try_from_secs_f64(secs).map_err(|_| Failure::Input(format!("invalid time limit {secs}")))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("ww: {f}");
            ExitCode::from(f.exit_code())
        }
    }
}

fn dispatch(cmd: Cmd) -> Result<(), Failure> {
    match cmd {
        Cmd::Validate { graph, td } => {
            let (g, t) = run::read_inputs(&graph, &td)?;
            let report = ww_core::decomposition::validate(&g, &t);
            if !report.is_valid() {
                return Err(Failure::Invalid(report.violations()));
            }
            println!("valid: {} bags, width {}", t.bag_count(), report.width);
            Ok(())
        }
        Cmd::Solve { graph, td, style, algo, ls, time_limit, seed, alpha, out, root } => {
            let (g, mut t) = run::read_inputs(&graph, &td)?;
            if let Some(r) = root {
                t = t.with_root(r.checked_sub(1).ok_or_else(|| Failure::Input("--root is 1-based".into()))?)?;
            }
            let cfg = RunConfig { style, algo, ls, time_limit: duration(time_limit)?, seed, alpha };
            let name = graph.file_stem().unwrap_or_default().to_string_lossy().into_owned();
            let (rec, d) = run::record(&name, &g, &t, &cfg);
            let d = d?;
            run::write_artifacts(&out.unwrap_or_else(|| PathBuf::from(&name)), &d, &g, &t, &cfg)?;
            println!("{rec}");
            Ok(())
        }
        Cmd::Bench { corpus, style, algo, ls, time_limit, seed } => {
            let threads = std::env::var("WW_THREADS").ok().and_then(|v| v.parse::<usize>().ok()).filter(|&n| n > 0);
            let mut pool = rayon::ThreadPoolBuilder::new();
            if let Some(n) = threads {
                pool = pool.num_threads(n);
            }
            let pool = pool.build().map_err(|e| Failure::Other(e.to_string()))?;
            let base = RunConfig { style: StyleArg::L2, algo: Algo::Dp, ls: false, time_limit: duration(time_limit)?, seed, alpha: None };
            let cfgs = bench::configs(&style, &algo, ls, base);
            let (records, summary) = pool.install(|| bench::bench(&corpus, &cfgs))?;
            print!("{}", bench::render(&records, &summary));
            Ok(())
        }
    }
}
