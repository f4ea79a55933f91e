//! Samples a marked Poisson cloud on a torus and adds a Palm origin.

use geocontact::point_process::{add_palm_origin_with_mark, sample_point_cloud, Boundary, SpatialDomain};

fn main() -> geocontact::Result<()> {
    let domain = SpatialDomain::with_volume(2, 1000.0, Boundary::Torus)?;
    let cloud = sample_point_cloud(domain, 7);
    let mean_mark = cloud.marks().iter().sum::<f64>() / cloud.len() as f64;
    println!("{} vertices in volume {}, mean mark {mean_mark:.4}", cloud.len(), domain.volume());

    let cloud = add_palm_origin_with_mark(cloud, 0.01)?;
    let o = cloud.palm_origin().expect("origin was added");
    println!("origin id {o} at {:?} with mark {}", cloud.position(o), cloud.mark(o));
    Ok(())
}
