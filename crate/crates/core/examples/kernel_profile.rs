//! Evaluates every kernel variant, its sandwich envelopes and the expected
//! degree profile Λ(t), which scales like t^{-γ}.

use geocontact::kernels::{assumption_sandwich, expected_degree_profile, KernelSpec, KernelVariant};

fn main() -> geocontact::Result<()> {
    let variants = [KernelVariant::PrefAttachUpper, KernelVariant::SoftBoolean, KernelVariant::AgeRcm];
    for v in variants {
        let spec = KernelSpec::new(v, 1, 0.8, 2.0)?.calibrated();
        let (lo, hi) = assumption_sandwich(&spec, 0.1, 0.5, 40.0)?;
        println!("{v:?}: p(0.1, 0.5, 40) = {:.5} in [{lo:.5}, {hi:.5}]", spec.connection_probability(0.1, 0.5, 40.0));
        for t in [1e-1, 1e-2, 1e-3] {
            let lambda = expected_degree_profile(&spec, t)?;
            println!("  Λ({t:e}) = {lambda:10.3}   Λ·t^γ = {:.3}", lambda * t.powf(spec.gamma));
        }
    }
    Ok(())
}
