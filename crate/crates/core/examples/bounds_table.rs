//! α/β recursion, the closed α bound and the ν comparison for one parameter
//! set.

use geocontact::bounds::{fit_constant_c, window_holds, BoundsParams};
use geocontact::experiments::{bounds_table, default_mark_grid};

fn main() -> geocontact::Result<()> {
    let gamma = 0.85;
    // Smallest log(1/ℓ) on a half-step grid with 6x² ≤ ℓ^{1-2γ}, which puts
    // ℓ inside the window for any fitted c above 1/x.
    let x = (4..).map(|i| i as f64 * 0.5).find(|x| 6.0 * x * x <= (x * (2.0 * gamma - 1.0)).exp()).unwrap_or(20.0);
    let mut p = BoundsParams {
        kappa: 1.0,
        gamma,
        ell: (-x).exp(),
        t0: 0.5,
        c_const: 1.0,
    };
    let grid = default_mark_grid(p.ell, 10);
    p = p.with_c(fit_constant_c(&p, 4, &grid)?);
    println!("ℓ = e^-{x}, fitted c = {:.4}, window holds: {}", p.c_const, window_holds(&p));
    println!("n  alpha_n  beta_n  closed_bound  nu_ratio");
    for row in bounds_table(&p, 10, 3, &grid)? {
        println!(
            "{:2} {:.4e} {:.4e} {:.4e} {:.4}",
            row.n, row.alpha_n, row.beta_n, row.closed_bound, row.nu_check_max_ratio
        );
    }
    Ok(())
}
