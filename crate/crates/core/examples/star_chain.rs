//! Searches a half-line of stars around a powerful vertex for a few λ.

use geocontact::kernels::{KernelSpec, KernelVariant};
use geocontact::point_process::{add_palm_origin_with_mark, sample_point_cloud, Boundary, SpatialDomain};
use geocontact::structure::{find_star_chain, StarChainParams};

fn main() -> geocontact::Result<()> {
    let spec = KernelSpec::new(KernelVariant::PrefAttachUpper, 1, 0.85, 1.5)?;
    for (i, lambda) in [0.4, 0.3, 0.25].into_iter().enumerate() {
        let params = StarChainParams::with_default_theta(&spec, lambda, 0.5, 3);
        let side = 2.002 * params.r_k(&spec, 4);
        let mark = (params.t_k(&spec, 1) * params.t_k(&spec, 2)).sqrt();
        let cloud = sample_point_cloud(SpatialDomain::new(1, side, Boundary::Free)?, 100 + i as u64);
        let cloud = add_palm_origin_with_mark(cloud, mark)?;
        let x = cloud.palm_origin().expect("origin was added");
        let res = find_star_chain(&cloud, &spec, x, &params, 7)?;
        println!("λ={lambda}: r={} found {}/{} stars in {} vertices", res.r, res.found, res.requested, cloud.len());
        for s in &res.stars {
            println!(
                "  midpoint {} (mark {:.2e}): {} neighbours, connector {:?}",
                s.midpoint,
                s.mark,
                s.neighbors.len(),
                s.connector
            );
        }
    }
    Ok(())
}
