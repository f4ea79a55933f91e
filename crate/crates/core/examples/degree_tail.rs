//! Fits the degree CCDF tail, whose slope should be close to -1/γ.

use geocontact::graph::sample_graph_accelerated;
use geocontact::kernels::{KernelSpec, KernelVariant};
use geocontact::point_process::{sample_point_cloud, Boundary, SpatialDomain};
use geocontact::structure::degree_tail_fit;

fn main() -> geocontact::Result<()> {
    let gamma = 0.8;
    let spec = KernelSpec::new(KernelVariant::PrefAttachUpper, 1, gamma, 2.0)?;
    let cloud = sample_point_cloud(SpatialDomain::with_volume(1, 100_000.0, Boundary::Torus)?, 3);
    let graph = sample_graph_accelerated(cloud, &spec, 4)?;
    let fit = degree_tail_fit(&graph, 200)?;
    println!("slope {:.3} ± {:.3} (expected {:.3})", fit.slope, fit.slope_stderr, -1.0 / gamma);
    Ok(())
}
