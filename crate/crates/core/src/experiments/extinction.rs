use crate::contact::{run_next_event, SimParams};
use crate::error::{invalid, Result};
use crate::graph::{sample_graph_accelerated, sample_graph_exact, EXACT_SAMPLER_LIMIT};
use crate::kernels::KernelSpec;
use crate::point_process::{sample_point_cloud, Boundary, SpatialDomain};
use crate::rng::derive_stream_seed;
use crate::stats::median;
use rayon::prelude::*;

/// Extinction time of one replica started from the fully infected graph.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtinctionRecord {
    pub n: f64,
    pub lambda: f64,
    pub replica: u64,
    /// Extinction time, or the horizon when capped.
    pub tau: f64,
    /// Stopped by the horizon or the event budget before extinction.
    pub capped: bool,
    pub vertices: usize,
}

/// Limits of extinction runs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtinctionRules {
    pub horizon: f64,
    pub event_budget: u64,
}

impl Default for ExtinctionRules {
    fn default() -> Self {
        ExtinctionRules {
            horizon: 1e6,
            event_budget: 100_000_000,
        }
    }
}

/// Samples a graph on a box of volume `n` and runs the process from the
/// fully infected state. Replica `j` of volume index `i` uses seed
/// `derive(derive(master, i), j)`.
pub fn extinction_scaling(
    spec: &KernelSpec,
    lambda: f64,
    volumes: &[f64],
    replicas: u64,
    rules: &ExtinctionRules,
    master_seed: u64,
) -> Result<Vec<ExtinctionRecord>> {
    spec.validate()?;
    if !(lambda >= 0.0) {
        return invalid(format!("lambda must be nonnegative, got {lambda}"));
    }
    let mut out = Vec::new();
    for (i, &n) in volumes.iter().enumerate() {
        let base = derive_stream_seed(master_seed, i as u64);
        let domain = SpatialDomain::with_volume(spec.dim, n, Boundary::Free)?;
        let recs = (0..replicas)
            .into_par_iter()
            .map(|j| {
                let seed = derive_stream_seed(base, j);
                let cloud = sample_point_cloud(domain, derive_stream_seed(seed, 0));
                let vertices = cloud.len();
                let graph = if vertices <= EXACT_SAMPLER_LIMIT {
                    sample_graph_exact(cloud, spec, derive_stream_seed(seed, 1))?
                } else {
                    sample_graph_accelerated(cloud, spec, derive_stream_seed(seed, 1))?
                };
                let params = SimParams::new(lambda, rules.horizon, derive_stream_seed(seed, 2))
                    .with_budget(rules.event_budget);
                let all: Vec<usize> = (0..vertices).collect();
                let o = run_next_event(&graph, &params, &all)?;
                let capped = !o.extinct();
                Ok(ExtinctionRecord {
                    n,
                    lambda,
                    replica: j,
                    tau: if capped { rules.horizon } else { o.extinction_time },
                    capped,
                    vertices,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        out.extend(recs);
    }
    Ok(out)
}

/// `(n, median τ, capped count)` per volume in first-appearance order.
/// Capped runs enter at the horizon, which is exact for the median as long
/// as fewer than half the runs are capped.
pub fn median_tau_by_volume(records: &[ExtinctionRecord]) -> Vec<(f64, f64, usize)> {
    let mut volumes: Vec<f64> = Vec::new();
    for r in records {
        if !volumes.contains(&r.n) {
            volumes.push(r.n);
        }
    }
    volumes
        .into_iter()
        .map(|n| {
            let taus: Vec<f64> = records.iter().filter(|r| r.n == n).map(|r| r.tau).collect();
            let capped = records.iter().filter(|r| r.n == n && r.capped).count();
            (n, median(&taus), capped)
        })
        .collect()
}

/// Strictly increasing medians whose last ratio beats the logarithmic ratio
/// `log(n_last)/log(n_prev)`.
pub fn super_logarithmic_growth(medians: &[(f64, f64, usize)]) -> bool {
    if medians.len() < 2 {
        return false;
    }
    let increasing = medians.windows(2).all(|w| w[1].1 > w[0].1);
    let (a, b) = (medians[medians.len() - 2], medians[medians.len() - 1]);
    increasing && b.1 / a.1 > b.0.ln() / a.0.ln()
}
