use crate::contact::{run_next_event_on, SimParams};
use crate::error::{invalid, Result};
use crate::graph::{GraphSample, LazyGraph, PairKeying};
use crate::kernels::KernelSpec;
use crate::point_process::{add_palm_origin, sample_point_cloud, Boundary, SpatialDomain};
use crate::rng::derive_stream_seed;
use crate::stats::wilson_interval;
use rayon::prelude::*;

/// Survival estimate at one infection rate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaEstimateRecord {
    pub lambda: f64,
    pub volume: f64,
    pub replicas: u64,
    pub survivals: u64,
    pub gamma_hat: f64,
    /// Wilson 95% interval.
    pub ci_low: f64,
    pub ci_high: f64,
}

/// Finite-size rule for survival runs: a torus of volume
/// `min(volume_cap, ceil(λ^{-volume_exponent}))`, a time horizon, and an
/// ever-infected cap that counts as survival.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaRules {
    pub volume_cap: f64,
    pub volume_exponent: f64,
    pub horizon: f64,
    pub cap: usize,
    pub event_budget: Option<u64>,
}

impl Default for GammaRules {
    fn default() -> Self {
        GammaRules {
            volume_cap: 1e6,
            volume_exponent: 4.0,
            horizon: 50.0,
            cap: 200,
            event_budget: None,
        }
    }
}

impl GammaRules {
    pub fn volume(&self, lambda: f64) -> f64 {
        if lambda > 0.0 {
            self.volume_cap.min(lambda.powf(-self.volume_exponent).ceil())
        } else {
            self.volume_cap
        }
    }
}

/// Runs one replica and reports whether the survival proxy held.
pub fn gamma_replica(spec: &KernelSpec, lambda: f64, rules: &GammaRules, seed: u64) -> Result<bool> {
    let mut params = SimParams::new(lambda, rules.horizon, derive_stream_seed(seed, 3)).with_cap(rules.cap);
    params.event_budget = rules.event_budget;
    if lambda == 0.0 {
        // Without transmissions only the origin's recovery clock matters.
        let single = GraphSample::abstract_graph(1, &[])?;
        return Ok(run_next_event_on(&mut &single, &params, &[0], None)?.0.survived_proxy());
    }
    let domain = SpatialDomain::with_volume(spec.dim, rules.volume(lambda), Boundary::Torus)?;
    let cloud = sample_point_cloud(domain, derive_stream_seed(seed, 0));
    let cloud = add_palm_origin(cloud, derive_stream_seed(seed, 1))?;
    let origin = cloud.palm_origin().expect("origin was just added");
    let mut graph = LazyGraph::new(cloud, spec, derive_stream_seed(seed, 2), PairKeying::Ids);
    Ok(run_next_event_on(&mut graph, &params, &[origin], None)?.0.survived_proxy())
}

/// Estimates the survival probability from a typical vertex for each rate.
/// Replica `j` at rate index `i` uses seed `derive(derive(master, i), j)`.
pub fn estimate_gamma(
    spec: &KernelSpec,
    lambdas: &[f64],
    rules: &GammaRules,
    replicas: u64,
    master_seed: u64,
) -> Result<Vec<GammaEstimateRecord>> {
    spec.validate()?;
    if replicas == 0 {
        return invalid("at least one replica is required");
    }
    let mut out = Vec::with_capacity(lambdas.len());
    for (i, &lambda) in lambdas.iter().enumerate() {
        if !(lambda >= 0.0) || !lambda.is_finite() {
            return invalid(format!("lambda must be finite and nonnegative, got {lambda}"));
        }
        let base = derive_stream_seed(master_seed, i as u64);
        let survivals = (0..replicas)
            .into_par_iter()
            .map(|j| gamma_replica(spec, lambda, rules, derive_stream_seed(base, j)).map(u64::from))
            .try_reduce(|| 0, |a, b| Ok(a + b))?;
        let (ci_low, ci_high) = wilson_interval(survivals, replicas, 0.95);
        out.push(GammaEstimateRecord {
            lambda,
            volume: rules.volume(lambda),
            replicas,
            survivals,
            gamma_hat: survivals as f64 / replicas as f64,
            ci_low,
            ci_high,
        });
    }
    Ok(out)
}
