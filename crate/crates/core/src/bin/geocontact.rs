use clap::{Parser, Subcommand};
use geocontact::experiments::{run_pipeline, Config};
use std::path::PathBuf;
use std::process::ExitCode;

/// Contact process experiments on scale-free geometric random graphs.
///
/// Every subcommand runs the matching pipeline. Parameters come from the
/// config file, then `--set key=value` overrides, then the global flags.
#[derive(Parser)]
#[command(version)]
struct Cli {
    /// Config file of `key = value` lines.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Master seed (overrides run.seed).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output directory.
    #[arg(long, global = true, default_value = "out")]
    out_dir: PathBuf,
    /// Worker threads; results do not depend on this.
    #[arg(long, global = true, env = "GEOCONTACT_WORKERS")]
    workers: Option<usize>,
    /// Config overrides, repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE", global = true)]
    set: Vec<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample a point cloud and graph; writes vertices.csv and edges.csv.
    SampleGraph,
    /// Degree CCDF and tail-exponent fit.
    DegreeStats,
    /// Contact process runs from a typical vertex.
    Simulate,
    /// Survival probability per infection rate; writes gamma.csv.
    EstimateGamma,
    /// Extinction times from the fully infected state; writes extinction.csv.
    ExtinctionScaling,
    /// Half-line of stars around a powerful vertex; writes chain.csv.
    StarChain,
    /// Good boxes per layer of the nested hierarchy; writes boxes.csv.
    BoxHierarchy,
    /// α/β sequences, closed bound and ν comparison; writes bounds.csv.
    BoundsTable,
}

impl Command {
    fn pipeline(&self) -> &'static str {
        match self {
            Command::SampleGraph => "sample_graph",
            Command::DegreeStats => "degree_stats",
            Command::Simulate => "simulate",
            Command::EstimateGamma => "estimate_gamma",
            Command::ExtinctionScaling => "extinction_scaling",
            Command::StarChain => "star_chain",
            Command::BoxHierarchy => "box_hierarchy",
            Command::BoundsTable => "bounds_table",
        }
    }
}

fn run(cli: Cli) -> geocontact::Result<()> {
    let mut cfg = match &cli.config {
        Some(p) => Config::load(p)?,
        None => Config::default(),
    };
    for s in &cli.set {
        cfg.set_assignment(s)?;
    }
    cfg.set("run.pipeline", cli.command.pipeline())?;
    if let Some(seed) = cli.seed {
        cfg.set("run.seed", seed)?;
    }
    let workers = cli
        .workers
        .or(cfg.get("run.workers")?)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let files = run_pipeline(&cfg, &cli.out_dir, workers)?;
    for f in files {
        println!("{}", cli.out_dir.join(f).display());
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
