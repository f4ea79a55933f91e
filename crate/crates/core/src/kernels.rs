//! Pairwise connection probabilities for the supported model variants.

use crate::error::{invalid, Error, Result};
use crate::quad::{integrate_with_breaks, unit_ball_volume, Tolerance};

/// Model variant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KernelVariant {
    /// Marginal of the soft Boolean model with radii `t^{-γ/d}` and a Pareto
    /// pair variable: `1 ∧ (dist / (R_t + R_s))^{-δd}`.
    SoftBoolean,
    /// Age-dependent random connection model with profile `1 ∧ r^{-δ}`.
    AgeRcm,
    /// `1 ∧ κ2 (t∧s)^{-δγ} (t∨s)^{δ(γ-1)} dist^{-δd}`.
    PrefAttachUpper,
    /// `α (1 ∧ κ1 (t∧s)^{-δγ} dist^{-δd})`.
    MinLower,
    /// Constant probability regardless of marks and distance (fixtures).
    Constant(f64),
}

/// Kernel parameters. The spatial dimension is carried here because
/// every variant scales distance as `dist^d`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelSpec {
    pub variant: KernelVariant,
    pub dim: usize,
    pub gamma: f64,
    pub delta: f64,
    pub alpha: f64,
    pub kappa1: f64,
    pub kappa2: f64,
    pub beta_scale: f64,
}

impl KernelSpec {
    /// A spec with unit constants; call [`KernelSpec::calibrated`] to fill in
    /// the sandwich constants of the variant.
    pub fn new(variant: KernelVariant, dim: usize, gamma: f64, delta: f64) -> Result<Self> {
        let spec = KernelSpec {
            variant,
            dim,
            gamma,
            delta,
            alpha: 1.0,
            kappa1: 1.0,
            kappa2: 1.0,
            beta_scale: 1.0,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Fixture kernel with constant probability `p`.
    pub fn constant(p: f64, dim: usize) -> Result<Self> {
        Self::new(KernelVariant::Constant(p), dim, 0.5, 2.0)
    }

    pub fn with_alpha(mut self, alpha: f64) -> Result<Self> {
        self.alpha = alpha;
        self.validate().map(|_| self)
    }

    pub fn with_kappas(mut self, kappa1: f64, kappa2: f64) -> Result<Self> {
        self.kappa1 = kappa1;
        self.kappa2 = kappa2;
        self.validate().map(|_| self)
    }

    pub fn with_beta(mut self, beta: f64) -> Result<Self> {
        self.beta_scale = beta;
        self.validate().map(|_| self)
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim == 0 {
            return invalid("dimension must be at least 1");
        }
        if !(self.gamma > 0.0 && self.gamma < 1.0) {
            return invalid(format!("gamma must lie in (0,1), got {}", self.gamma));
        }
        if !(self.delta > 1.0) || !self.delta.is_finite() {
            return invalid(format!("delta must exceed 1, got {}", self.delta));
        }
        if !(self.alpha > 0.0 && self.alpha <= 1.0) {
            return invalid(format!("alpha must lie in (0,1], got {}", self.alpha));
        }
        for (name, v) in [
            ("kappa1", self.kappa1),
            ("kappa2", self.kappa2),
            ("beta", self.beta_scale),
        ] {
            if !(v > 0.0) || !v.is_finite() {
                return invalid(format!("{name} must be positive, got {v}"));
            }
        }
        if let KernelVariant::Constant(p) = self.variant {
            if !(0.0..=1.0).contains(&p) {
                return invalid(format!("constant probability {p} outside [0,1]"));
            }
        }
        Ok(())
    }

    /// Ultrasmall regime `γ > δ/(δ+1)`.
    pub fn is_ultrasmall(&self) -> bool {
        self.gamma > self.delta / (self.delta + 1.0)
    }

    /// Copy with the sandwich constants known to hold for the variant.
    pub fn calibrated(&self) -> Self {
        let mut s = *self;
        let dd = self.delta * self.dim as f64;
        match self.variant {
            KernelVariant::SoftBoolean => {
                s.alpha = 1.0;
                s.kappa1 = 1.0;
                s.kappa2 = 2f64.powf(dd);
            }
            KernelVariant::AgeRcm => {
                let b = self.beta_scale.powf(self.delta);
                s.alpha = b.min(1.0);
                s.kappa1 = b;
                s.kappa2 = b;
            }
            KernelVariant::PrefAttachUpper => {
                s.alpha = 1.0;
                s.kappa1 = self.kappa2;
            }
            KernelVariant::MinLower => {
                s.kappa2 = self.alpha * self.kappa1;
            }
            KernelVariant::Constant(_) => {}
        }
        s
    }

    /// Probability that vertices with marks `t`, `s` at distance `dist` are
    /// adjacent.
    #[inline]
    pub fn connection_probability(&self, t: f64, s: f64, dist: f64) -> f64 {
        let d = self.dim as f64;
        let (lo, hi) = if t <= s { (t, s) } else { (s, t) };
        match self.variant {
            KernelVariant::Constant(p) => p,
            KernelVariant::SoftBoolean => {
                let r = lo.powf(-self.gamma / d) + hi.powf(-self.gamma / d);
                if dist <= r {
                    1.0
                } else {
                    (r / dist).powf(self.delta * d)
                }
            }
            KernelVariant::AgeRcm => {
                let arg = lo.powf(self.gamma) * hi.powf(1.0 - self.gamma) * dist.powf(d) / self.beta_scale;
                if arg <= 1.0 {
                    1.0
                } else {
                    arg.powf(-self.delta)
                }
            }
            KernelVariant::PrefAttachUpper => {
                let v = self.kappa2
                    * (lo.powf(-self.gamma) * hi.powf(self.gamma - 1.0) / dist.powf(d)).powf(self.delta);
                v.min(1.0)
            }
            KernelVariant::MinLower => {
                let v = self.kappa1 * (lo.powf(-self.gamma) / dist.powf(d)).powf(self.delta);
                self.alpha * v.min(1.0)
            }
        }
    }

    /// `u = dist^d` at which the kernel leaves its plateau, or `None` if it
    /// never decays.
    fn saturation_volume(&self, t: f64, s: f64) -> Option<f64> {
        let d = self.dim as f64;
        let (lo, hi) = if t <= s { (t, s) } else { (s, t) };
        match self.variant {
            KernelVariant::Constant(_) => None,
            KernelVariant::SoftBoolean => Some((lo.powf(-self.gamma / d) + hi.powf(-self.gamma / d)).powf(d)),
            KernelVariant::AgeRcm => Some(self.beta_scale / (lo.powf(self.gamma) * hi.powf(1.0 - self.gamma))),
            KernelVariant::PrefAttachUpper => {
                Some(self.kappa2.powf(1.0 / self.delta) * lo.powf(-self.gamma) * hi.powf(self.gamma - 1.0))
            }
            KernelVariant::MinLower => Some(self.kappa1.powf(1.0 / self.delta) * lo.powf(-self.gamma)),
        }
    }

    /// `∫_{R^d} p(t, s, |x|) dx` by quadrature in `u = |x|^d`.
    pub fn pair_volume_integral(&self, t: f64, s: f64) -> Result<f64> {
        let Some(u_star) = self.saturation_volume(t, s) else {
            return match self.variant {
                KernelVariant::Constant(p) if p == 0.0 => Ok(0.0),
                _ => Err(Error::Divergent("kernel does not decay in distance".into())),
            };
        };
        let d = self.dim as f64;
        let plateau = self.connection_probability(t, s, (0.5 * u_star).powf(1.0 / d)) * u_star;
        let v_max = 60.0 / (self.delta - 1.0);
        let tail = integrate_with_breaks(
            |v: f64| {
                let u = u_star * v.exp();
                self.connection_probability(t, s, u.powf(1.0 / d)) * u
            },
            &[0.0, 1.0, v_max.max(2.0)],
            Tolerance::new(0.0, 1e-12),
        );
        Ok(unit_ball_volume(self.dim) * (plateau + tail.value))
    }
}

/// Lower and upper envelopes at one point, checked against the kernel.
pub fn assumption_sandwich(spec: &KernelSpec, t: f64, s: f64, dist: f64) -> Result<(f64, f64)> {
    if let KernelVariant::Constant(_) = spec.variant {
        return invalid("constant kernels carry no sandwich constants");
    }
    let d = spec.dim as f64;
    let (lo, hi) = if t <= s { (t, s) } else { (s, t) };
    let base = (lo.powf(-spec.gamma) / dist.powf(d)).powf(spec.delta);
    let lower = spec.alpha * (spec.kappa1 * base).min(1.0);
    let upper = (spec.kappa2 * base * hi.powf(spec.delta * (spec.gamma - 1.0))).min(1.0);
    let value = spec.connection_probability(t, s, dist);
    // Relative slack for rounding in the power evaluations.
    let slack = 1e-12;
    if value < lower * (1.0 - slack) || value > upper * (1.0 + slack) {
        return Err(Error::SandwichViolation {
            t,
            s,
            dist,
            lower,
            value,
            upper,
        });
    }
    Ok((lower, upper))
}

/// Expected degree `Λ(t) = ∫_0^1 ds ∫_{R^d} p(t, s, |x|) dx`.
pub fn expected_degree_profile(spec: &KernelSpec, t: f64) -> Result<f64> {
    expected_degree_profile_tol(spec, t, 1e-10)
}

/// As [`expected_degree_profile`] with an explicit relative tolerance on the
/// outer integral.
pub fn expected_degree_profile_tol(spec: &KernelSpec, t: f64, rel_tol: f64) -> Result<f64> {
    if !(spec.delta > 1.0) {
        return Err(Error::Divergent(format!("delta = {} <= 1", spec.delta)));
    }
    if !(t > 0.0 && t < 1.0) {
        return invalid(format!("mark {t} not in (0,1)"));
    }
    if let KernelVariant::Constant(p) = spec.variant {
        if p > 0.0 {
            return Err(Error::Divergent("constant kernel".into()));
        }
        return Ok(0.0);
    }
    // s = e^{-y}; the kernel kinks at s = t.
    let y_t = -t.ln();
    let y_max = y_t + 80.0 / (1.0 - spec.gamma);
    let q = integrate_with_breaks(
        |y: f64| {
            let s = (-y).exp();
            spec.pair_volume_integral(t, s).unwrap_or(f64::NAN) * s
        },
        &[0.0, y_t, y_t + 1.0, y_max],
        Tolerance::new(0.0, rel_tol),
    );
    Ok(q.value)
}

/// `I_ρ = ∫_{R^d} ρ(κ2 |x|^d) dx` with `ρ(x) = 1 ∧ x^{-δ}`.
pub fn compute_i_rho(d: usize, delta: f64, kappa2: f64) -> Result<f64> {
    if !(delta > 1.0) {
        return Err(Error::Divergent(format!("delta = {delta} <= 1")));
    }
    if d == 0 || !(kappa2 > 0.0) {
        return invalid("need d >= 1 and kappa2 > 0");
    }
    let u_star = 1.0 / kappa2;
    let v_max = 60.0 / (delta - 1.0);
    let tail = integrate_with_breaks(
        |v: f64| {
            let u = u_star * v.exp();
            (kappa2 * u).powf(-delta).min(1.0) * u
        },
        &[0.0, 1.0, v_max.max(2.0)],
        Tolerance::new(0.0, 1e-13),
    );
    Ok(unit_ball_volume(d) * (u_star + tail.value))
}
