use super::extinction::ExtinctionRecord;
use super::gamma::GammaEstimateRecord;
use crate::bounds::{alpha_beta, alpha_closed_bound, bound_ratio, nu_value_tol, BoundsParams};
use crate::error::{invalid, Result};
use crate::stats::least_squares;
use crate::structure::{BoxClassification, BoxHierarchy, StarChainResult};
use std::io::Write;

/// Least-squares `(slope, stderr)` of `log y` against `log x`.
pub fn fit_loglog_slope(points: &[(f64, f64)]) -> Result<(f64, f64)> {
    if points.len() < 2 {
        return invalid(format!("need at least two points, got {}", points.len()));
    }
    if let Some(p) = points.iter().find(|p| !(p.0 > 0.0 && p.1 > 0.0)) {
        return invalid(format!("coordinates must be positive, got ({}, {})", p.0, p.1));
    }
    let x: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let y: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let fit = least_squares(&x, &y);
    Ok((fit.slope, fit.slope_stderr))
}

fn flag(b: bool) -> u8 {
    u8::from(b)
}

pub fn write_gamma_csv<W: Write>(records: &[GammaEstimateRecord], mut out: W) -> std::io::Result<()> {
    writeln!(out, "lambda,volume,replicas,survivals,gamma_hat,ci_low,ci_high")?;
    for r in records {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.lambda, r.volume, r.replicas, r.survivals, r.gamma_hat, r.ci_low, r.ci_high
        )?;
    }
    Ok(())
}

pub fn write_extinction_csv<W: Write>(records: &[ExtinctionRecord], mut out: W) -> std::io::Result<()> {
    writeln!(out, "n,lambda,replica,tau,capped,vertices")?;
    for r in records {
        writeln!(out, "{},{},{},{},{},{}", r.n, r.lambda, r.replica, r.tau, flag(r.capped), r.vertices)?;
    }
    Ok(())
}

/// One row per star, 1-based; `neighbors` is the leaf count.
pub fn write_chain_csv<W: Write>(result: &StarChainResult, mut out: W) -> std::io::Result<()> {
    writeln!(out, "star_index,midpoint_mark,neighbors,connector_found")?;
    for (i, s) in result.stars.iter().enumerate() {
        writeln!(out, "{},{},{},{}", i + 1, s.mark, s.neighbors.len(), flag(s.connector.is_some()))?;
    }
    Ok(())
}

pub fn write_boxes_csv<W: Write>(h: &BoxHierarchy, c: &BoxClassification, mut out: W) -> std::io::Result<()> {
    writeln!(out, "layer,boxes,good")?;
    for (k, good) in c.counts.iter().enumerate() {
        writeln!(out, "{},{},{}", k, h.box_count(k), good)?;
    }
    Ok(())
}

/// A row of the α/β table. Undefined entries are NaN: the closed bound
/// below `n = 2` or outside its window, and the ν comparison beyond the
/// depth where nested quadrature is affordable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundsRow {
    pub n: usize,
    pub alpha_n: f64,
    pub beta_n: f64,
    pub closed_bound: f64,
    pub nu_check_max_ratio: f64,
}

/// `points` marks log-spaced in `[max(ℓ, 1e-4), 1)`.
pub fn default_mark_grid(ell: f64, points: usize) -> Vec<f64> {
    let lo = ell.max(1e-4).ln();
    (0..points)
        .map(|i| (lo + (-lo) * (i as f64 + 0.5) / points as f64).exp())
        .collect()
}

pub fn bounds_table(p: &BoundsParams, n_max: usize, nu_n_max: usize, grid: &[f64]) -> Result<Vec<BoundsRow>> {
    p.validate()?;
    (1..=n_max)
        .map(|n| {
            let (alpha_n, beta_n) = alpha_beta(p, n)?;
            let closed_bound = if n >= 2 { alpha_closed_bound(p, n).unwrap_or(f64::NAN) } else { f64::NAN };
            let mut ratio = f64::NAN;
            if n >= 2 && n <= nu_n_max {
                ratio = 0.0;
                for &s in grid {
                    ratio = ratio.max(bound_ratio(p, n, s, nu_value_tol(p, n, s, 1e-8)?)?);
                }
            }
            Ok(BoundsRow {
                n,
                alpha_n,
                beta_n,
                closed_bound,
                nu_check_max_ratio: ratio,
            })
        })
        .collect()
}

pub fn write_bounds_csv<W: Write>(rows: &[BoundsRow], mut out: W) -> std::io::Result<()> {
    writeln!(out, "n,alpha_n,beta_n,closed_bound,nu_check_max_ratio")?;
    for r in rows {
        writeln!(out, "{},{},{},{},{}", r.n, r.alpha_n, r.beta_n, r.closed_bound, r.nu_check_max_ratio)?;
    }
    Ok(())
}
