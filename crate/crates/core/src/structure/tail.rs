use crate::error::{Error, Result};
use crate::graph::{degree_sequence, GraphSample};
use crate::stats::{weighted_least_squares, LinearFit};

/// Vertices with degree at least `k_min` required for a fit.
pub const MIN_TAIL_VERTICES: usize = 100;
/// CCDF points whose tail holds fewer vertices are dropped as noise.
const MIN_POINT_COUNT: usize = 10;
const POINTS_PER_DECADE: f64 = 20.0;

/// Log-spaced `(k, P(D >= k))` pairs for `k >= k_min`, keeping only points
/// supported by at least ten vertices.
pub fn ccdf_points(degrees: &[usize], k_min: usize) -> Vec<(f64, f64)> {
    let k_min = k_min.max(1);
    let mut sorted = degrees.to_vec();
    sorted.sort_unstable();
    let n = sorted.len() as f64;
    let max = sorted.last().copied().unwrap_or(0);
    let mut out = Vec::new();
    let mut last_k = 0;
    let mut i = 0.0f64;
    loop {
        let k = (k_min as f64 * 10f64.powf(i / POINTS_PER_DECADE)).round() as usize;
        i += 1.0;
        if k > max {
            break;
        }
        if k == last_k {
            continue;
        }
        last_k = k;
        let tail = sorted.len() - sorted.partition_point(|&d| d < k);
        if tail < MIN_POINT_COUNT {
            break;
        }
        out.push((k as f64, tail as f64 / n));
    }
    out
}

/// Least-squares slope of the log CCDF against `log k` over `k >= k_min`,
/// each point weighted by its tail count.
pub fn degree_tail_fit_slice(degrees: &[usize], k_min: usize) -> Result<LinearFit> {
    let found = degrees.iter().filter(|&&d| d >= k_min.max(1)).count();
    if found < MIN_TAIL_VERTICES {
        return Err(Error::InsufficientTail {
            found,
            k_min,
            needed: MIN_TAIL_VERTICES,
        });
    }
    let pts = ccdf_points(degrees, k_min);
    // A flat CCDF (all tail degrees equal) carries no slope information.
    let distinct = pts.windows(2).filter(|w| w[0].1 != w[1].1).count();
    if distinct == 0 {
        return Err(Error::InsufficientTail {
            found,
            k_min,
            needed: MIN_TAIL_VERTICES,
        });
    }
    let x: Vec<f64> = pts.iter().map(|p| p.0.ln()).collect();
    let y: Vec<f64> = pts.iter().map(|p| p.1.ln()).collect();
    // The log of a tail count c has variance about 1/c.
    let w: Vec<f64> = pts.iter().map(|p| p.1).collect();
    Ok(weighted_least_squares(&x, &y, &w))
}

pub fn degree_tail_fit(graph: &GraphSample, k_min: usize) -> Result<LinearFit> {
    degree_tail_fit_slice(&degree_sequence(graph), k_min)
}
