//! Fixtures and reporting for the acceptance run in `tests/acceptance.rs`.
//!
//! Each criterion is a function returning an [`Outcome`]; the runner prints
//! one line per criterion and exits nonzero if any failed.

use geocontact::graph::GraphSample;
use geocontact::kernels::{KernelSpec, KernelVariant};
use geocontact::point_process::{Boundary, PointCloud, SpatialDomain};
use geocontact::structure::StarChainParams;
use std::time::{Duration, Instant};

/// Verdict of one criterion with a one-line summary of the evidence.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub pass: bool,
    pub detail: String,
}

impl Outcome {
    pub fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome {
            pass,
            detail: detail.into(),
        }
    }
}

/// A numbered criterion.
pub struct Criterion {
    pub id: u32,
    pub name: &'static str,
    pub budget: Duration,
    pub run: fn() -> geocontact::Result<Outcome>,
}

/// Runs the criteria whose ids are in `only` (all if empty), printing one
/// line each. Returns the number of failures.
pub fn run_all(criteria: &[Criterion], only: &[u32]) -> usize {
    let mut failed = 0;
    let mut ran = 0;
    for c in criteria.iter().filter(|c| only.is_empty() || only.contains(&c.id)) {
        let start = Instant::now();
        let out = (c.run)().unwrap_or_else(|e| Outcome::new(false, format!("error: {e}")));
        let took = start.elapsed();
        let over = if took > c.budget { " over budget" } else { "" };
        println!(
            "criterion {:>2} {} {}: {} [{:.1}s of {}s{}]",
            c.id,
            if out.pass { "PASS" } else { "FAIL" },
            c.name,
            out.detail,
            took.as_secs_f64(),
            c.budget.as_secs(),
            over
        );
        ran += 1;
        failed += usize::from(!out.pass);
    }
    println!("acceptance: {} passed, {} failed", ran - failed, failed);
    failed
}

fn is_connected(n: usize, adj: &[u32]) -> bool {
    let mut seen = 1u32;
    let mut stack = vec![0usize];
    while let Some(v) = stack.pop() {
        let fresh = adj[v] & !seen;
        seen |= fresh;
        for w in 0..n {
            if fresh >> w & 1 == 1 {
                stack.push(w);
            }
        }
    }
    seen == (1u32 << n) - 1
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// One representative per isomorphism class of connected simple graphs on
/// `2..=max_n` vertices (1, 2, 6, 21, 112 classes for 2..=6 vertices).
pub fn connected_graph_classes(max_n: usize) -> Vec<GraphSample> {
    assert!(max_n <= 7, "class enumeration is brute force");
    let mut out = Vec::new();
    for n in 2..=max_n {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let slot = |i: usize, j: usize| pairs.iter().position(|&p| p == (i.min(j), i.max(j))).unwrap();
        let perms = permutations(n);
        let mut seen = std::collections::HashSet::new();
        for mask in 0u32..(1 << pairs.len()) {
            let mut adj = vec![0u32; n];
            for (k, &(i, j)) in pairs.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    adj[i] |= 1 << j;
                    adj[j] |= 1 << i;
                }
            }
            if !is_connected(n, &adj) {
                continue;
            }
            // Canonical form: the smallest relabelled edge mask.
            let canon = perms
                .iter()
                .map(|p| {
                    pairs
                        .iter()
                        .enumerate()
                        .filter(|(k, _)| mask >> k & 1 == 1)
                        .fold(0u32, |m, (_, &(i, j))| m | 1 << slot(p[i], p[j]))
                })
                .min()
                .unwrap();
            if seen.insert(canon) {
                let edges: Vec<(usize, usize)> =
                    pairs.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, e)| *e).collect();
                out.push(GraphSample::abstract_graph(n, &edges).expect("valid edges"));
            }
        }
    }
    out
}

/// Certain edges with `γ = 0.85`, `δ = 1.5`, `d = 1`.
pub fn certain_kernel() -> KernelSpec {
    KernelSpec {
        variant: KernelVariant::Constant(1.0),
        ..KernelSpec::new(KernelVariant::PrefAttachUpper, 1, 0.85, 1.5).expect("valid kernel")
    }
}

/// A hand-placed chain of three stars on the free line with centre 0. With
/// certain edges the search must report midpoints 0, 4, 9.
pub fn planted_star_chain() -> (PointCloud, StarChainParams) {
    let spec = certain_kernel();
    let params = StarChainParams {
        r_override: Some(2),
        ..StarChainParams::with_default_theta(&spec, 0.1, 0.5, 3)
    };
    let (r1, r2, r3) = (params.r_k(&spec, 1), params.r_k(&spec, 2), params.r_k(&spec, 3));
    let mid = |k| (params.t_k(&spec, k + 1) * params.t_k(&spec, k)).sqrt();
    let pts: Vec<(f64, f64)> = vec![
        (0.0, 0.3 * params.t_sp(&spec)),
        (0.2 * r1, 0.6),
        (0.5 * r1, 0.7),
        (0.7 * r1, 0.8),
        (0.5 * (r1 + r2), mid(2)),
        (0.6 * (r1 + r2), params.t_k(&spec, 2) * 0.999),
        (0.4 * (r1 + r2), 0.55),
        (0.45 * (r1 + r2), 0.65),
        (0.55 * (r1 + r2), 0.9),
        (0.5 * (r2 + r3), mid(3)),
        (0.45 * (r2 + r3), 0.5),
        (0.55 * (r2 + r3), 0.74),
        (-0.5 * r1, 0.6),
        (-0.5 * (r1 + r2), mid(2) * 0.5),
    ];
    let side = 4.0 * params.r_k(&spec, 4);
    let dom = SpatialDomain::new(1, side, Boundary::Free).expect("valid domain");
    let cloud = PointCloud::from_parts(dom, pts.iter().map(|p| vec![p.0]).collect(), pts.iter().map(|p| p.1).collect())
        .expect("valid fixture");
    (cloud, params)
}
