use super::config::Config;
use super::extinction::{extinction_scaling, ExtinctionRules};
use super::gamma::{estimate_gamma, GammaRules};
use super::output::*;
use crate::bounds::{fit_constant_c, BoundsParams};
use crate::contact::{run_next_event_on, SimParams, StopReason};
use crate::error::{invalid, Error, Result};
use crate::graph::{
    degree_sequence, sample_graph_accelerated, sample_graph_exact, write_edge_list, write_vertex_table, GraphSample,
};
use crate::kernels::{KernelSpec, KernelVariant};
use crate::point_process::{add_palm_origin, add_palm_origin_with_mark, sample_point_cloud, Boundary, SpatialDomain};
use crate::rng::derive_stream_seed;
use crate::structure::{
    build_box_hierarchy, ccdf_points, classify_good_boxes, degree_tail_fit_slice, find_star_chain, BoxParams,
    StarChainParams,
};
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

/// Pipelines selectable by `run.pipeline`.
pub const PIPELINES: &[&str] = &[
    "sample_graph",
    "degree_stats",
    "simulate",
    "estimate_gamma",
    "extinction_scaling",
    "star_chain",
    "box_hierarchy",
    "bounds_table",
];

/// Kernel described by the `kernel.*` keys. Defaults: preferential
/// attachment, `d = 1`, `γ = 0.8`, `δ = 2`, unit constants.
pub fn kernel_from_config(cfg: &Config) -> Result<KernelSpec> {
    let dim = cfg.get_or("kernel.dim", 1usize)?;
    let gamma = cfg.get_or("kernel.gamma", 0.8)?;
    let delta = cfg.get_or("kernel.delta", 2.0)?;
    let variant = match cfg.raw("kernel.variant").unwrap_or("pref_attach") {
        "soft_boolean" => KernelVariant::SoftBoolean,
        "age_rcm" => KernelVariant::AgeRcm,
        "pref_attach" => KernelVariant::PrefAttachUpper,
        "min_lower" => KernelVariant::MinLower,
        "constant" => KernelVariant::Constant(cfg.get_or("kernel.p", 0.5)?),
        other => return invalid(format!("unknown kernel variant {other:?}")),
    };
    let spec = KernelSpec::new(variant, dim, gamma, delta)?
        .with_alpha(cfg.get_or("kernel.alpha", 1.0)?)?
        .with_kappas(cfg.get_or("kernel.kappa1", 1.0)?, cfg.get_or("kernel.kappa2", 1.0)?)?
        .with_beta(cfg.get_or("kernel.beta", 1.0)?)?;
    Ok(if cfg.get_or("kernel.calibrated", false)? { spec.calibrated() } else { spec })
}

fn create(dir: &Path, name: &str) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(dir.join(name))?))
}

fn finish(mut w: BufWriter<File>) -> Result<()> {
    w.flush()?;
    Ok(())
}

fn sample_graph_from_config(cfg: &Config, spec: &KernelSpec, seed: u64, palm: bool) -> Result<GraphSample> {
    let volume = cfg.get_or("graph.volume", 1000.0)?;
    let boundary = match cfg.raw("graph.boundary").unwrap_or("free") {
        "free" => Boundary::Free,
        "torus" => Boundary::Torus,
        other => return invalid(format!("unknown boundary {other:?}")),
    };
    let domain = SpatialDomain::with_volume(spec.dim, volume, boundary)?;
    let mut cloud = sample_point_cloud(domain, derive_stream_seed(seed, 0));
    if palm {
        cloud = add_palm_origin(cloud, derive_stream_seed(seed, 1))?;
    }
    match cfg.raw("graph.sampler").unwrap_or("accelerated") {
        "exact" => sample_graph_exact(cloud, spec, derive_stream_seed(seed, 2)),
        "accelerated" => sample_graph_accelerated(cloud, spec, derive_stream_seed(seed, 2)),
        other => invalid(format!("unknown sampler {other:?}")),
    }
}

/// Files written by a pipeline, relative to the output directory.
pub type Artifacts = Vec<PathBuf>;

/// Runs the pipeline named by `run.pipeline` and writes its CSVs plus
/// `manifest.txt` into `out_dir`. `workers` bounds the thread pool; outputs
/// do not depend on it.
pub fn run_pipeline(cfg: &Config, out_dir: &Path, workers: usize) -> Result<Artifacts> {
    let pipeline = cfg
        .raw("run.pipeline")
        .ok_or_else(|| Error::InvalidParameter("run.pipeline is not set".into()))?
        .to_string();
    if !PIPELINES.contains(&pipeline.as_str()) {
        return invalid(format!("unknown pipeline {pipeline:?}; expected one of {PIPELINES:?}"));
    }
    std::fs::create_dir_all(out_dir)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::InvalidParameter(e.to_string()))?;
    let mut files = pool.install(|| dispatch(&pipeline, cfg, out_dir))?;
    let seed = cfg.get_or("run.seed", 0u64)?;
    let mut m = create(out_dir, "manifest.txt")?;
    writeln!(m, "version = {}", env!("CARGO_PKG_VERSION"))?;
    writeln!(m, "pipeline = {pipeline}")?;
    writeln!(m, "seed = {seed}")?;
    writeln!(m, "[config]")?;
    write!(m, "{}", cfg.echo())?;
    finish(m)?;
    files.push("manifest.txt".into());
    Ok(files)
}

/// Loads a config file and runs it.
pub fn run_config(path: &Path, out_dir: &Path, workers: usize) -> Result<Artifacts> {
    run_pipeline(&Config::load(path)?, out_dir, workers)
}

fn dispatch(pipeline: &str, cfg: &Config, dir: &Path) -> Result<Artifacts> {
    let seed = cfg.get_or("run.seed", 0u64)?;
    let spec = kernel_from_config(cfg)?;
    let replicas = cfg.get_or("run.replicas", 1u64)?;
    match pipeline {
        "sample_graph" => {
            let g = sample_graph_from_config(cfg, &spec, seed, false)?;
            let mut v = create(dir, "vertices.csv")?;
            write_vertex_table(g.cloud(), &mut v)?;
            finish(v)?;
            let mut e = create(dir, "edges.csv")?;
            write_edge_list(&g, &mut e)?;
            finish(e)?;
            Ok(vec!["vertices.csv".into(), "edges.csv".into()])
        }
        "degree_stats" => {
            let g = sample_graph_from_config(cfg, &spec, seed, false)?;
            let degrees = degree_sequence(&g);
            let k_min = cfg.get_or("graph.k_min", 10usize)?;
            let mut c = create(dir, "degree_ccdf.csv")?;
            writeln!(c, "k,ccdf")?;
            for (k, p) in ccdf_points(&degrees, 1) {
                writeln!(c, "{k},{p}")?;
            }
            finish(c)?;
            let mut t = create(dir, "tail_fit.csv")?;
            writeln!(t, "vertices,mean_degree,k_min,slope,stderr")?;
            let mean = degrees.iter().sum::<usize>() as f64 / degrees.len().max(1) as f64;
            let f = degree_tail_fit_slice(&degrees, k_min)?;
            writeln!(t, "{},{},{},{},{}", degrees.len(), mean, k_min, f.slope, f.slope_stderr)?;
            finish(t)?;
            Ok(vec!["degree_ccdf.csv".into(), "tail_fit.csv".into()])
        }
        "simulate" => {
            let lambda = cfg.get_or("sim.lambda", 0.5)?;
            let horizon = cfg.get_or("sim.horizon", 50.0)?;
            let cap: Option<usize> = cfg.get("sim.cap")?;
            let budget: Option<u64> = cfg.get("sim.event_budget")?;
            let mut out = create(dir, "simulate.csv")?;
            writeln!(out, "replica,vertices,extinction_time,stop,stop_time,ever_infected,peak_infected,events")?;
            for j in 0..replicas {
                let rs = derive_stream_seed(seed, j);
                let g = sample_graph_from_config(cfg, &spec, rs, true)?;
                let origin = g.cloud().palm_origin().expect("palm origin");
                let mut p = SimParams::new(lambda, horizon, derive_stream_seed(rs, 3));
                p.ever_infected_cap = cap;
                p.event_budget = budget;
                let (o, _) = run_next_event_on(&mut &g, &p, &[origin], None)?;
                let stop = match o.stop {
                    StopReason::Extinct => "extinct",
                    StopReason::Horizon => "horizon",
                    StopReason::InfectedCap => "cap",
                    StopReason::EventBudget => "budget",
                };
                writeln!(
                    out,
                    "{},{},{},{},{},{},{},{}",
                    j,
                    g.vertex_count(),
                    o.extinction_time,
                    stop,
                    o.stop_time,
                    o.ever_infected,
                    o.peak_infected,
                    o.events_processed
                )?;
            }
            finish(out)?;
            Ok(vec!["simulate.csv".into()])
        }
        "estimate_gamma" => {
            let lambdas = cfg.get_list("sim.lambdas")?.unwrap_or_else(|| vec![0.2]);
            let mut rules = GammaRules::default();
            rules.volume_cap = cfg.get_or("sim.volume_cap", rules.volume_cap)?;
            rules.volume_exponent = cfg.get_or("sim.volume_exponent", rules.volume_exponent)?;
            rules.horizon = cfg.get_or("sim.horizon", rules.horizon)?;
            rules.cap = cfg.get_or("sim.cap", rules.cap)?;
            rules.event_budget = cfg.get("sim.event_budget")?;
            let recs = estimate_gamma(&spec, &lambdas, &rules, replicas, seed)?;
            let mut out = create(dir, "gamma.csv")?;
            write_gamma_csv(&recs, &mut out)?;
            finish(out)?;
            Ok(vec!["gamma.csv".into()])
        }
        "extinction_scaling" => {
            let lambda = cfg.get_or("sim.lambda", 1.0)?;
            let volumes = cfg.get_list("sim.volumes")?.unwrap_or_else(|| vec![100.0, 200.0]);
            let mut rules = ExtinctionRules::default();
            rules.horizon = cfg.get_or("sim.horizon", rules.horizon)?;
            rules.event_budget = cfg.get_or("sim.event_budget", rules.event_budget)?;
            let recs = extinction_scaling(&spec, lambda, &volumes, replicas, &rules, seed)?;
            let mut out = create(dir, "extinction.csv")?;
            write_extinction_csv(&recs, &mut out)?;
            finish(out)?;
            Ok(vec!["extinction.csv".into()])
        }
        "star_chain" => {
            let lambda = cfg.get_or("sim.lambda", 0.3)?;
            let mut params = StarChainParams::with_default_theta(
                &spec,
                lambda,
                cfg.get_or("chain.beta", 0.5)?,
                cfg.get_or("chain.stars", 3usize)?,
            );
            params.theta = cfg.get_or("chain.theta", params.theta)?;
            params.r_override = cfg.get("chain.r")?;
            params.validate(&spec)?;
            let side = match cfg.get::<f64>("chain.volume")? {
                Some(v) => v.powf(1.0 / spec.dim as f64),
                None => 2.0 * params.r_k(&spec, params.stars + 1) * 1.001,
            };
            let domain = SpatialDomain::new(spec.dim, side, Boundary::Free)?;
            let cloud = sample_point_cloud(domain, derive_stream_seed(seed, 0));
            let centre = (params.t_k(&spec, 1) * params.t_k(&spec, 2)).sqrt();
            let cloud = add_palm_origin_with_mark(cloud, centre)?;
            let x = cloud.palm_origin().expect("palm origin");
            let res = find_star_chain(&cloud, &spec, x, &params, derive_stream_seed(seed, 2))?;
            let mut out = create(dir, "chain.csv")?;
            write_chain_csv(&res, &mut out)?;
            finish(out)?;
            Ok(vec!["chain.csv".into()])
        }
        "box_hierarchy" => {
            let n = cfg.get_or("boxes.n", 4096.0)?;
            let a = cfg.get_or("boxes.a", 0.99 / std::f64::consts::LN_2)?;
            let mut bp = BoxParams::with_defaults(n, &spec, a, cfg.get_or("boxes.star_size", 3usize)?);
            bp.eps1 = cfg.get_or("boxes.eps1", bp.eps1)?;
            bp.theta3 = cfg.get_or("boxes.theta", bp.theta3)?;
            bp.eps3 = cfg.get_or("boxes.eps3", bp.eps3)?;
            let h = build_box_hierarchy(&bp, &spec)?;
            let domain = SpatialDomain::with_volume(spec.dim, n, Boundary::Free)?;
            let cloud = sample_point_cloud(domain, derive_stream_seed(seed, 0));
            let c = classify_good_boxes(&h, &cloud, &spec, derive_stream_seed(seed, 2));
            let mut out = create(dir, "boxes.csv")?;
            write_boxes_csv(&h, &c, &mut out)?;
            finish(out)?;
            Ok(vec!["boxes.csv".into()])
        }
        "bounds_table" => {
            let mut p = BoundsParams {
                kappa: cfg.get_or("bounds.kappa", 1.0)?,
                gamma: cfg.get_or("bounds.gamma", 0.8)?,
                ell: cfg.get_or("bounds.ell", 1e-6)?,
                t0: cfg.get_or("bounds.t0", 0.5)?,
                c_const: 1.0,
            };
            let nu_n_max = cfg.get_or("bounds.nu_n_max", 4usize)?;
            let grid = default_mark_grid(p.ell, 10);
            p.c_const = match cfg.get("bounds.c")? {
                Some(c) => c,
                None => fit_constant_c(&p, nu_n_max.max(2), &grid)?,
            };
            let rows = bounds_table(&p, cfg.get_or("bounds.n_max", 20usize)?, nu_n_max, &grid)?;
            let mut out = create(dir, "bounds.csv")?;
            write_bounds_csv(&rows, &mut out)?;
            finish(out)?;
            Ok(vec!["bounds.csv".into()])
        }
        _ => unreachable!("pipeline names are checked by the caller"),
    }
}
