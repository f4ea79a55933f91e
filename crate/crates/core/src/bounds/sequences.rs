use super::nu::nu_value_tol;
use crate::error::{invalid, Error, Result};

/// Parameters of the mark-convolution bounds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundsParams {
    pub kappa: f64,
    pub gamma: f64,
    /// Truncation `ℓ` in (0,1).
    pub ell: f64,
    pub t0: f64,
    /// Recursion constant `c`.
    pub c_const: f64,
}

impl BoundsParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.kappa > 0.0) {
            return invalid(format!("kappa must be positive, got {}", self.kappa));
        }
        if !(self.gamma > 0.0 && self.gamma < 1.0) {
            return invalid(format!("gamma must lie in (0,1), got {}", self.gamma));
        }
        if !(self.ell > 0.0 && self.ell < 1.0) {
            return invalid(format!("ell must lie in (0,1), got {}", self.ell));
        }
        if !(self.t0 > 0.0 && self.t0 < 1.0) {
            return invalid(format!("t0 must lie in (0,1), got {}", self.t0));
        }
        if !(self.c_const > 0.0) {
            return invalid(format!("c must be positive, got {}", self.c_const));
        }
        Ok(())
    }

    pub fn with_c(mut self, c: f64) -> Self {
        self.c_const = c;
        self
    }
}

/// `c^{-2} < log(1/ℓ)^2 < ℓ^{1-2γ}/3`.
pub fn window_holds(p: &BoundsParams) -> bool {
    let l2 = p.ell.ln().powi(2);
    p.c_const.powi(-2) < l2 && l2 < p.ell.powf(1.0 - 2.0 * p.gamma) / 3.0
}

/// `(ln α_n, ln β_n)` by the recursion in log space.
pub fn alpha_beta_log(p: &BoundsParams, n: usize) -> Result<(f64, f64)> {
    p.validate()?;
    if n == 0 {
        return invalid("n must be at least 1");
    }
    let ln_c = p.c_const.ln();
    let ln_l = (1.0 / p.ell).ln().ln();
    let ln_pow = (1.0 - 2.0 * p.gamma) * p.ell.ln();
    let mut a = p.kappa.ln() + (p.gamma - 1.0) * p.t0.ln();
    let mut b = p.kappa.ln() - p.gamma * p.t0.ln();
    let lse = |x: f64, y: f64| {
        let m = x.max(y);
        m + ((x - m).exp() + (y - m).exp()).ln()
    };
    for _ in 1..n {
        let na = ln_c + lse(a + ln_l, b);
        let nb = ln_c + lse(a + ln_pow, b + ln_l);
        a = na;
        b = nb;
    }
    Ok((a, b))
}

/// `(α_n, β_n)`. Direct arithmetic up to `n = 50`, log space beyond.
pub fn alpha_beta(p: &BoundsParams, n: usize) -> Result<(f64, f64)> {
    p.validate()?;
    if n == 0 {
        return invalid("n must be at least 1");
    }
    if n > 50 {
        let (a, b) = alpha_beta_log(p, n)?;
        return Ok((a.exp(), b.exp()));
    }
    let c = p.c_const;
    let l = (1.0 / p.ell).ln();
    let pow = p.ell.powf(1.0 - 2.0 * p.gamma);
    let mut a = p.kappa * p.t0.powf(p.gamma - 1.0);
    let mut b = p.kappa * p.t0.powf(-p.gamma);
    for _ in 1..n {
        let na = c * (a * l + b);
        let nb = c * (a * pow + b * l);
        a = na;
        b = nb;
    }
    Ok((a, b))
}

/// `(2c)^{n-2} c^2 (ℓ^{1/2-γ} t0^{γ-1} + t0^{-γ}) ℓ^{(1-2γ)(n/2-1)}`.
/// Fails outside the window where the bound is guaranteed.
pub fn alpha_closed_bound(p: &BoundsParams, n: usize) -> Result<f64> {
    p.validate()?;
    if n < 2 {
        return invalid("closed bound needs n >= 2");
    }
    if !window_holds(p) {
        return Err(Error::Window(format!(
            "c^-2 < log(1/l)^2 < l^(1-2g)/3 fails for c={}, l={}, g={}",
            p.c_const, p.ell, p.gamma
        )));
    }
    let c = p.c_const;
    let (g, l, t0) = (p.gamma, p.ell, p.t0);
    Ok((2.0 * c).powi(n as i32 - 2)
        * c
        * c
        * (l.powf(0.5 - g) * t0.powf(g - 1.0) + t0.powf(-g))
        * l.powf((1.0 - 2.0 * g) * (n as f64 / 2.0 - 1.0)))
}

/// `ν_n(s) / (α_n s^{-γ} + 1{s≥ℓ} β_n s^{γ-1})` with the given quadrature
/// values of ν.
pub fn bound_ratio(p: &BoundsParams, n: usize, s: f64, nu: f64) -> Result<f64> {
    let (a, b) = alpha_beta(p, n)?;
    let mut rhs = a * s.powf(-p.gamma);
    if s >= p.ell {
        rhs += b * s.powf(p.gamma - 1.0);
    }
    Ok(nu / rhs)
}

/// Precomputed ν values on a grid, for repeated bound checks.
#[derive(Debug, Clone)]
pub struct NuBoundCheck {
    pub params: BoundsParams,
    /// `(n, s, ν_n(s))`.
    pub values: Vec<(usize, f64, f64)>,
}

impl NuBoundCheck {
    pub fn new(p: &BoundsParams, n_max: usize, grid: &[f64]) -> Result<Self> {
        let mut values = Vec::new();
        for n in 2..=n_max {
            for &s in grid {
                values.push((n, s, nu_value_tol(p, n, s, 1e-8)?));
            }
        }
        Ok(NuBoundCheck { params: *p, values })
    }

    /// Largest ratio of ν to its bound with constant `c`.
    pub fn max_ratio(&self, c: f64) -> Result<f64> {
        let p = self.params.with_c(c);
        let mut worst = 0.0f64;
        for &(n, s, nu) in &self.values {
            worst = worst.max(bound_ratio(&p, n, s, nu)?);
        }
        Ok(worst)
    }
}

/// Smallest `c` (to 1e-4 relative) for which the α/β bound dominates the
/// quadrature of ν for all `2 <= n <= n_max` on the grid.
pub fn fit_constant_c(p: &BoundsParams, n_max: usize, grid: &[f64]) -> Result<f64> {
    if n_max < 2 || grid.is_empty() {
        return invalid("need n_max >= 2 and a nonempty grid");
    }
    if grid.iter().any(|s| !(*s > 0.0 && *s < 1.0)) {
        return invalid("grid points must lie in (0,1)");
    }
    let check = NuBoundCheck::new(&p.with_c(1.0), n_max, grid)?;
    let c_max = 1e6;
    if check.max_ratio(c_max)? > 1.0 {
        return Err(Error::NoConstant(c_max));
    }
    // The bound is increasing in c, so bisect in log c.
    let (mut lo, mut hi) = (1e-6f64.ln(), c_max.ln());
    if check.max_ratio(lo.exp())? <= 1.0 {
        return Ok(lo.exp());
    }
    while hi - lo > 1e-5 {
        let mid = 0.5 * (lo + hi);
        if check.max_ratio(mid.exp())? <= 1.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi.exp())
}
