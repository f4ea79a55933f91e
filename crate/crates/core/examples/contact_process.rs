//! Runs the contact process from a high-degree vertex with the next-event
//! engine and with the graphical representation.

use geocontact::contact::{build_event_stream, run_next_event, run_on_stream, SimParams};
use geocontact::graph::sample_graph_accelerated;
use geocontact::kernels::{KernelSpec, KernelVariant};
use geocontact::point_process::{sample_point_cloud, Boundary, SpatialDomain};

fn main() -> geocontact::Result<()> {
    let spec = KernelSpec::new(KernelVariant::PrefAttachUpper, 1, 0.8, 2.0)?;
    let cloud = sample_point_cloud(SpatialDomain::with_volume(1, 2000.0, Boundary::Torus)?, 5);
    let graph = sample_graph_accelerated(cloud, &spec, 6)?;
    let hub = (0..graph.vertex_count()).max_by_key(|&v| graph.degree(v)).unwrap_or(0);
    println!("starting at vertex {hub} of degree {}", graph.degree(hub));

    for lambda in [0.2, 0.5, 1.0] {
        let params = SimParams::new(lambda, 50.0, 9).with_cap(500);
        let a = run_next_event(&graph, &params, &[hub])?;
        let stream = build_event_stream(&graph, lambda, 50.0, 9)?;
        let b = run_on_stream(&stream, &graph, &[hub])?;
        println!(
            "λ={lambda}: next-event stop {:?} at {:.2} ({} infected); graphical stop {:?} at {:.2}",
            a.stop, a.stop_time, a.ever_infected, b.stop, b.stop_time
        );
    }
    Ok(())
}
