//! `triwheel`: chromatic polynomials, wheel-identity sweeps, certified
//! 4-colorings, triangulation generation and coloring classification.
//!
//! Every command prints one JSON object per graph, then a final run report.
//! The exit status is 0 exactly when the report lists no failures.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "triwheel", version, about)]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Seed for the randomized relabeling checks.
    #[arg(long, global = true, default_value_t = 0x5eed)]
    seed: u64,
    /// Cross-check every count against brute-force enumeration.
    #[arg(long, global = true)]
    oracle: bool,
    /// Polynomial memo file, loaded before and written after the run.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    PlanarCode,
    Adjlist,
}

#[derive(Args, Debug, Clone)]
pub struct InputOpts {
    #[arg(long)]
    input: PathBuf,
    /// Input format; sniffed from the content when omitted.
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Chromatic polynomial of every input graph.
    Poly {
        #[command(flatten)]
        input: InputOpts,
        /// Evaluate each polynomial at this integer.
        #[arg(long = "eval")]
        eval_at: Option<i64>,
    },
    /// Check the 4-wheel (1) or 5-wheel (2) identity on every generated
    /// triangulation up to the given order.
    Verify {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        theorem: u8,
        #[arg(long)]
        order_max: usize,
        /// Also check every rotation and reflection of each rim labeling.
        #[arg(long)]
        all_rims: bool,
        /// Random relabelings per graph; each must give the same totals.
        #[arg(long, default_value_t = 0)]
        permutations: usize,
    },
    /// Certified 4-coloring of every input triangulation.
    Color {
        #[command(flatten)]
        input: InputOpts,
    },
    /// All triangulations of one order, written as planar code.
    Generate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        min_degree: Option<usize>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Partition-set classification, plus funnel flags when the minimum
    /// degree is 5.
    Classify {
        #[command(flatten)]
        input: InputOpts,
        /// Largest induced subgraph examined for quasi-uniqueness.
        #[arg(long)]
        cap: Option<usize>,
        /// Append obstruction records (JSON lines) to this file.
        #[arg(long)]
        obstruction_log: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.global.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("triwheel: cannot size worker pool: {e}");
            return ExitCode::from(2);
        }
    }
    let mut out = std::io::stdout().lock();
    let result = match cli.command {
        Command::Poly { input, eval_at } => commands::poly(&cli.global, &input, eval_at, &mut out),
        Command::Verify {
            theorem,
            order_max,
            all_rims,
            permutations,
        } => commands::verify(&cli.global, theorem, order_max, all_rims, permutations, &mut out),
        Command::Color { input } => commands::color(&cli.global, &input, &mut out),
        Command::Generate { n, min_degree, out: path } => commands::generate(&cli.global, n, min_degree, &path, &mut out),
        Command::Classify {
            input,
            cap,
            obstruction_log,
        } => commands::classify(&cli.global, &input, cap, obstruction_log.as_deref(), &mut out),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("triwheel: {e:#}");
            ExitCode::from(2)
        }
    }
}
