//! Extinction time from the fully infected state as the volume grows.

use geocontact::experiments::{extinction_scaling, median_tau_by_volume, super_logarithmic_growth, ExtinctionRules};
use geocontact::kernels::{KernelSpec, KernelVariant};

fn main() -> geocontact::Result<()> {
    let spec = KernelSpec::new(KernelVariant::PrefAttachUpper, 1, 0.85, 1.5)?.with_kappas(1e-4, 1e-4)?;
    let rules = ExtinctionRules {
        horizon: 1e4,
        event_budget: 2_000_000,
    };
    let recs = extinction_scaling(&spec, 1.0, &[50.0, 100.0, 200.0], 40, &rules, 8)?;
    let medians = median_tau_by_volume(&recs);
    for (n, m, capped) in &medians {
        println!("n={n}: median τ {m:.3} ({capped} capped)");
    }
    println!("super-logarithmic: {}", super_logarithmic_growth(&medians));
    Ok(())
}
