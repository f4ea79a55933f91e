//! Self-duality on a path and the trace realization bound (2λ)^n.

use geocontact::bounds::{enumerate_traces, trace_weight_sum, TraceQuery};
use geocontact::contact::{duality_gap, trace_realization_probability};
use geocontact::graph::GraphSample;

fn main() -> geocontact::Result<()> {
    let path = GraphSample::abstract_graph(3, &[(0, 1), (1, 2)])?;
    let d = duality_gap(&path, 0.5, 1.0, &[0], &[2], 10_000, 1)?;
    println!("P3 duality: P(0→2) = {:.4}, P(2→0) = {:.4}, z = {:.2}", d.p_ab, d.p_ba, d.z);

    let triangle = GraphSample::abstract_graph(3, &[(0, 1), (1, 2), (0, 2)])?;
    let q = TraceQuery {
        root: 0,
        targets: vec![2],
        max_length: 4,
    };
    let sets = enumerate_traces(&triangle, &q)?;
    for (n, trace) in sets.all() {
        let e = trace_realization_probability(&triangle, 0.2, trace, 20_000, 3)?;
        println!("trace {trace:?} ({n} edges): {:.5} ≤ {:.5}, CI high {:.5}", e.estimate, e.bound, e.ci_high);
    }
    println!("weight sum at λ=0.2: {:.5}", trace_weight_sum(&triangle, &q, 0.2)?);
    Ok(())
}
