//! Builds the nested box hierarchy and counts good boxes per layer.

use geocontact::graph::sample_graph_accelerated;
use geocontact::kernels::{KernelSpec, KernelVariant};
use geocontact::point_process::{sample_point_cloud, Boundary, SpatialDomain};
use geocontact::structure::{build_box_hierarchy, classify_good_boxes, BoxParams};

fn main() -> geocontact::Result<()> {
    let spec = KernelSpec::new(KernelVariant::PrefAttachUpper, 1, 0.85, 1.5)?;
    let params = BoxParams::with_defaults(4096.0, &spec, 0.5, 3);
    let h = build_box_hierarchy(&params, &spec)?;
    println!("n_p={} k_p={} region side {}", h.n_p, h.k_p, h.region_side());

    let cloud = sample_point_cloud(SpatialDomain::new(1, h.region_side(), Boundary::Free)?, 21);
    // Classification only needs the cloud; sampling the graph is for scale.
    let graph = sample_graph_accelerated(cloud.clone(), &spec, 22)?;
    println!("{} vertices, {} edges", graph.vertex_count(), graph.edge_count());
    let c = classify_good_boxes(&h, &cloud, &spec, 23);
    for k in 0..h.layers.len() {
        println!("layer {k}: {} boxes, {} with a midpoint, {} good", h.box_count(k), c.nonempty[k], c.counts[k]);
    }
    Ok(())
}
