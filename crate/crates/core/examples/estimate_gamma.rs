//! Survival probability Γ(λ) from a typical vertex and its log-log slope.

use geocontact::experiments::{estimate_gamma, fit_loglog_slope, GammaRules};
use geocontact::kernels::{KernelSpec, KernelVariant};

fn main() -> geocontact::Result<()> {
    let spec = KernelSpec::new(KernelVariant::PrefAttachUpper, 1, 0.8, 2.0)?.with_kappas(0.01, 0.01)?;
    let rules = GammaRules {
        volume_cap: 2000.0,
        ..GammaRules::default()
    };
    let recs = estimate_gamma(&spec, &[0.2, 0.3, 0.4], &rules, 500, 42)?;
    for r in &recs {
        println!("λ={} volume={} Γ̂={:.4} [{:.4}, {:.4}]", r.lambda, r.volume, r.gamma_hat, r.ci_low, r.ci_high);
    }
    let pts: Vec<(f64, f64)> = recs.iter().map(|r| (r.lambda, r.gamma_hat)).collect();
    match fit_loglog_slope(&pts) {
        Ok((slope, se)) => println!("log-log slope {slope:.3} ± {se:.3}"),
        Err(e) => println!("no slope: {e}"),
    }
    Ok(())
}
