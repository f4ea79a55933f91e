//! Draws the same cloud with the exact and the accelerated sampler and
//! compares their degree distributions.

use geocontact::graph::{degree_sequence, sample_graph_accelerated, sample_graph_exact};
use geocontact::kernels::{KernelSpec, KernelVariant};
use geocontact::point_process::{sample_point_cloud, Boundary, SpatialDomain};
use geocontact::stats::ks_two_sample;
use std::sync::Arc;

fn main() -> geocontact::Result<()> {
    let spec = KernelSpec::new(KernelVariant::PrefAttachUpper, 1, 0.8, 2.0)?;
    let cloud = Arc::new(sample_point_cloud(SpatialDomain::with_volume(1, 5000.0, Boundary::Torus)?, 11));
    let exact = sample_graph_exact(cloud.clone(), &spec, 1)?;
    let fast = sample_graph_accelerated(cloud, &spec, 2)?;
    println!("exact: {} edges, accelerated: {} edges", exact.edge_count(), fast.edge_count());

    let a: Vec<f64> = degree_sequence(&exact).into_iter().map(|d| d as f64).collect();
    let b: Vec<f64> = degree_sequence(&fast).into_iter().map(|d| d as f64).collect();
    println!("degree KS: {:?}", ks_two_sample(&a, &b));
    Ok(())
}
