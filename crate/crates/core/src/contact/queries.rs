//! Monte Carlo queries: duality checks and infection paths with a given
//! ordered trace.

use super::stream::{build_event_stream, EventStream};
use super::{run_next_event_state, SimParams};
use crate::error::{invalid, Error, Result};
use crate::graph::GraphSample;
use crate::rng::derive_stream_seed;
use crate::stats::wilson_interval;

/// Two independent estimates of `P(ξ_t^A ∩ B ≠ ∅)` and `P(ξ_t^B ∩ A ≠ ∅)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualityEstimate {
    pub p_ab: f64,
    pub p_ba: f64,
    /// Two-proportion z-score of the difference (0 when both are 0 or 1).
    pub z: f64,
}

fn hits_at(graph: &GraphSample, lambda: f64, t: f64, from: &[usize], target: &[usize], seed: u64) -> Result<bool> {
    let (_, state) = run_next_event_state(graph, &SimParams::new(lambda, t, seed), from)?;
    Ok(target.iter().any(|v| state.binary_search(v).is_ok()))
}

pub fn duality_gap(
    graph: &GraphSample,
    lambda: f64,
    t: f64,
    a: &[usize],
    b: &[usize],
    replicates: usize,
    seed: u64,
) -> Result<DualityEstimate> {
    if a.is_empty() || b.is_empty() {
        return invalid("both vertex sets must be nonempty");
    }
    if replicates == 0 {
        return invalid("need at least one replicate");
    }
    let mut ab = 0usize;
    let mut ba = 0usize;
    for r in 0..replicates as u64 {
        ab += hits_at(graph, lambda, t, a, b, derive_stream_seed(seed, 2 * r))? as usize;
        ba += hits_at(graph, lambda, t, b, a, derive_stream_seed(seed, 2 * r + 1))? as usize;
    }
    let n = replicates as f64;
    let (p1, p2) = (ab as f64 / n, ba as f64 / n);
    let pooled = (p1 + p2) / 2.0;
    let var = pooled * (1.0 - pooled) * 2.0 / n;
    let z = if var > 0.0 { (p1 - p2) / var.sqrt() } else { 0.0 };
    Ok(DualityEstimate { p_ab: p1, p_ba: p2, z })
}

/// Monte Carlo estimate of the probability that some infection path from
/// `(trace[0], 0)` visits exactly the vertices of `trace` in order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceEstimate {
    pub hits: u64,
    pub replicates: u64,
    pub estimate: f64,
    /// 99% Wilson interval.
    pub ci_low: f64,
    pub ci_high: f64,
    /// `(2λ)^{edges}`.
    pub bound: f64,
}

/// Whether the stream contains an infection path with the given trace.
///
/// At each step the set of all feasible arrival times is kept, since a later
/// arrival can outlast an earlier one across a recovery mark.
pub fn trace_realized(stream: &EventStream, graph: &GraphSample, trace: &[usize]) -> bool {
    let mut feasible = vec![0.0f64];
    for w in trace.windows(2) {
        let (x, y) = (w[0], w[1]);
        let mut next = Vec::new();
        for a in stream.transmissions(graph, x, y) {
            let k = feasible.partition_point(|f| *f < a);
            if k == 0 {
                continue;
            }
            if feasible[k - 1] > stream.last_recovery(x, a) {
                next.push(a);
            }
        }
        if next.is_empty() {
            return false;
        }
        feasible = next;
    }
    true
}

pub fn trace_realization_probability(
    graph: &GraphSample,
    lambda: f64,
    trace: &[usize],
    replicates: usize,
    seed: u64,
) -> Result<TraceEstimate> {
    if trace.is_empty() {
        return invalid("trace must contain at least one vertex");
    }
    for &v in trace {
        if v >= graph.vertex_count() {
            return Err(Error::VertexOutOfRange(v));
        }
    }
    for w in trace.windows(2) {
        if !graph.has_edge(w[0], w[1]) {
            return Err(Error::NotAPath(w[0], w[1]));
        }
    }
    let edges = trace.len() - 1;
    // Paths needing longer than this are astronomically unlikely.
    let horizon = 20.0 + 15.0 * edges as f64;
    let mut hits = 0u64;
    for r in 0..replicates as u64 {
        let ok = if edges == 0 {
            true
        } else {
            let stream = build_event_stream(graph, lambda, horizon, derive_stream_seed(seed, r))?;
            trace_realized(&stream, graph, trace)
        };
        hits += ok as u64;
    }
    let (ci_low, ci_high) = wilson_interval(hits, replicates as u64, 0.99);
    Ok(TraceEstimate {
        hits,
        replicates: replicates as u64,
        estimate: if replicates > 0 { hits as f64 / replicates as f64 } else { f64::NAN },
        ci_low,
        ci_high,
        bound: (2.0 * lambda).powi(edges as i32),
    })
}
