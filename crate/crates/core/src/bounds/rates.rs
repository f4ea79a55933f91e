use crate::error::{invalid, Result};

/// `exp(c λ² deg) / T + T · w`.
pub fn survival_upper_bound(deg_root: usize, lambda: f64, c_growth: f64, t: f64, weight_sum: f64) -> Result<f64> {
    if !(t > 0.0) {
        return invalid(format!("T must be positive, got {t}"));
    }
    Ok((c_growth * lambda * lambda * deg_root as f64).exp() / t + t * weight_sum)
}

/// Minimizing `T* = sqrt(exp(c λ² deg) / w)`, defined when `w > 0`.
pub fn optimal_t(deg_root: usize, lambda: f64, c_growth: f64, weight_sum: f64) -> Option<f64> {
    (weight_sum > 0.0).then(|| ((c_growth * lambda * lambda * deg_root as f64).exp() / weight_sum).sqrt())
}

/// The bound at `T*`, `2 sqrt(exp(c λ² deg) w)`; its infimum 0 when `w = 0`.
pub fn survival_upper_bound_optimal(deg_root: usize, lambda: f64, c_growth: f64, weight_sum: f64) -> f64 {
    2.0 * ((c_growth * lambda * lambda * deg_root as f64).exp() * weight_sum).sqrt()
}

/// Decay rate of the survival probability on product-weight graphs with
/// power-law exponent `τ`.
pub fn rho_tau_rate(lambda: f64, tau: f64) -> Result<f64> {
    if !(tau > 2.0) {
        return invalid(format!("tau must exceed 2, got {tau}"));
    }
    if !(lambda > 0.0 && lambda < 1.0) {
        return invalid(format!("lambda must lie in (0,1), got {lambda}"));
    }
    let log = (1.0 / lambda).ln();
    Ok(if tau <= 2.5 {
        lambda.powf(1.0 / (3.0 - tau))
    } else if tau <= 3.0 {
        lambda.powf(2.0 * tau - 3.0) / log.powf(tau - 2.0)
    } else {
        lambda.powf(2.0 * tau - 3.0) / log.powf(2.0 * tau - 4.0)
    })
}

/// `λ^{2/γ-1} / log(1/λ)^{(1-γ)/γ}`.
pub fn gamma_envelope(lambda: f64, gamma: f64) -> Result<f64> {
    if !(gamma > 0.0 && gamma < 1.0) {
        return invalid(format!("gamma must lie in (0,1), got {gamma}"));
    }
    if !(lambda > 0.0 && lambda < 1.0) {
        return invalid(format!("lambda must lie in (0,1), got {lambda}"));
    }
    Ok(lambda.powf(2.0 / gamma - 1.0) / (1.0 / lambda).ln().powf((1.0 - gamma) / gamma))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn branches() {
        assert!((rho_tau_rate(0.1, 2.25).unwrap() - 0.1f64.powf(4.0 / 3.0)).abs() < 1e-15);
        let l10 = 10f64.ln();
        assert!((rho_tau_rate(0.1, 2.75).unwrap() - 0.1f64.powf(2.5) / l10.powf(0.75)).abs() < 1e-15);
        assert!((rho_tau_rate(0.1, 3.5).unwrap() - 1e-4 / l10.powi(3)).abs() < 1e-18);
        assert!(rho_tau_rate(0.1, 2.0).is_err());
    }

    #[test]
    fn envelope_values() {
        assert!((gamma_envelope(0.1, 0.8).unwrap() - 0.025671).abs() < 1e-6);
        assert!((gamma_envelope(0.01, 0.8).unwrap() - 6.826e-4).abs() < 1e-7);
    }

    #[test]
    fn optimum() {
        let w = 0.03;
        let t = optimal_t(5, 0.2, 1.0, w).unwrap();
        let at = survival_upper_bound(5, 0.2, 1.0, t, w).unwrap();
        assert!((at - survival_upper_bound_optimal(5, 0.2, 1.0, w)).abs() < 1e-12);
        assert!(optimal_t(5, 0.2, 1.0, 0.0).is_none());
    }
}
