use super::sequences::BoundsParams;
use crate::error::{invalid, Result};
use crate::quad::{integrate_with_breaks, Tolerance};

/// `κ (u∧s)^{-γ} (u∨s)^{γ-1}`.
#[inline]
pub(crate) fn mark_kernel(kappa: f64, gamma: f64, u: f64, s: f64) -> f64 {
    let (lo, hi) = if u <= s { (u, s) } else { (s, u) };
    kappa * lo.powf(-gamma) * hi.powf(gamma - 1.0)
}

/// `ν_{ℓ,n}^{t0}(s)` by nested adaptive quadrature of the recursion
/// `ν_n(s) = ∫_ℓ^1 ν_{n-1}(u) K(u, s) du`, integrating in `ln u`.
pub fn nu_value(p: &BoundsParams, n: usize, s: f64) -> Result<f64> {
    nu_value_tol(p, n, s, 1e-10)
}

pub fn nu_value_tol(p: &BoundsParams, n: usize, s: f64, rel_tol: f64) -> Result<f64> {
    p.validate()?;
    if n == 0 {
        return invalid("n must be at least 1");
    }
    if !(s > 0.0 && s < 1.0) {
        return invalid(format!("s = {s} not in (0,1)"));
    }
    Ok(nu_rec(p, n, s, rel_tol))
}

fn nu_rec(p: &BoundsParams, n: usize, s: f64, tol: f64) -> f64 {
    if n == 1 {
        return mark_kernel(p.kappa, p.gamma, p.t0, s);
    }
    let lo = p.ell.ln();
    let mut breaks = vec![lo];
    for b in [p.t0, s] {
        let w = b.ln();
        if w > lo && w < 0.0 {
            breaks.push(w);
        }
    }
    breaks.push(0.0);
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();
    // Inner levels use a tighter tolerance so errors do not compound.
    let inner = (tol * 1e-2).max(1e-14);
    integrate_with_breaks(
        |w: f64| {
            let u = w.exp();
            nu_rec(p, n - 1, u, inner) * mark_kernel(p.kappa, p.gamma, u, s) * u
        },
        &breaks,
        Tolerance {
            abs: 0.0,
            rel: tol,
            max_panels: 400,
        },
    )
    .value
}
