use crate::error::{invalid, Error, Result};
use crate::graph::GraphSample;

/// Longest trace length the enumerator accepts.
pub const MAX_TRACE_LENGTH: usize = 12;
/// Largest graph the enumerator accepts.
pub const MAX_TRACE_GRAPH: usize = 1000;

/// Root, target set, and maximal trace length.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceQuery {
    pub root: usize,
    pub targets: Vec<usize>,
    pub max_length: usize,
}

/// Traces by length: `q[n]` and `r[n]` hold the traces with `n` edges.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct TraceSets {
    pub q: Vec<Vec<Vec<usize>>>,
    pub r: Vec<Vec<Vec<usize>>>,
}

impl TraceSets {
    pub fn q_count(&self, n: usize) -> usize {
        self.q.get(n).map_or(0, |v| v.len())
    }

    pub fn r_count(&self, n: usize) -> usize {
        self.r.get(n).map_or(0, |v| v.len())
    }

    pub fn is_empty(&self) -> bool {
        self.q.iter().chain(&self.r).all(|v| v.is_empty())
    }

    /// All traces with their lengths.
    pub fn all(&self) -> impl Iterator<Item = (usize, &Vec<usize>)> {
        self.q
            .iter()
            .chain(&self.r)
            .enumerate()
            .flat_map(move |(i, v)| {
                let n = i % self.q.len().max(1);
                v.iter().map(move |p| (n, p))
            })
    }
}

/// Enumerates the walks from the root whose first `n` vertices are distinct
/// and outside `A`, and whose last vertex either lies in `A` (`n >= 1`) or
/// repeats an earlier one (`n >= 3`).
pub fn enumerate_traces(graph: &GraphSample, q: &TraceQuery) -> Result<TraceSets> {
    if q.max_length > MAX_TRACE_LENGTH {
        return Err(Error::Guard(format!(
            "max length {} exceeds {MAX_TRACE_LENGTH}",
            q.max_length
        )));
    }
    if graph.vertex_count() > MAX_TRACE_GRAPH {
        return Err(Error::Guard(format!(
            "graph has {} vertices, limit {MAX_TRACE_GRAPH}",
            graph.vertex_count()
        )));
    }
    let n = graph.vertex_count();
    if q.root >= n {
        return Err(Error::VertexOutOfRange(q.root));
    }
    let mut in_a = vec![false; n];
    for &a in &q.targets {
        if a >= n {
            return Err(Error::VertexOutOfRange(a));
        }
        in_a[a] = true;
    }
    if in_a[q.root] {
        return invalid("the root must not be a target");
    }
    let mut out = TraceSets {
        q: vec![Vec::new(); q.max_length + 1],
        r: vec![Vec::new(); q.max_length + 1],
    };
    let mut on_path = vec![false; n];
    let mut path = vec![q.root];
    on_path[q.root] = true;
    extend(graph, &in_a, q.max_length, &mut path, &mut on_path, &mut out);
    Ok(out)
}

fn extend(
    graph: &GraphSample,
    in_a: &[bool],
    max_len: usize,
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    out: &mut TraceSets,
) {
    let len = path.len();
    if len > max_len {
        return;
    }
    let last = path[len - 1];
    for &w in graph.neighbors(last) {
        let w = w as usize;
        let trace = || {
            let mut t = path.clone();
            t.push(w);
            t
        };
        if in_a[w] {
            out.q[len].push(trace());
        } else if on_path[w] {
            if len >= 3 {
                out.r[len].push(trace());
            }
        } else {
            path.push(w);
            on_path[w] = true;
            extend(graph, in_a, max_len, path, on_path, out);
            on_path[w] = false;
            path.pop();
        }
    }
}

/// `Σ (2λ)^{|p|}` over the enumerated traces.
pub fn trace_weight_sum(graph: &GraphSample, q: &TraceQuery, lambda: f64) -> Result<f64> {
    if !(lambda >= 0.0 && lambda < 0.5) {
        return invalid(format!("lambda must lie in [0, 1/2), got {lambda}"));
    }
    let sets = enumerate_traces(graph, q)?;
    let mut sum = 0.0;
    for n in 0..=q.max_length {
        let k = sets.q_count(n) + sets.r_count(n);
        sum += k as f64 * (2.0 * lambda).powi(n as i32);
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn query(root: usize, targets: &[usize], max_length: usize) -> TraceQuery {
        TraceQuery {
            root,
            targets: targets.to_vec(),
            max_length,
        }
    }

    #[test]
    fn path_to_target() {
        let g = GraphSample::abstract_graph(3, &[(0, 1), (1, 2)]).unwrap();
        let s = enumerate_traces(&g, &query(0, &[2], 6)).unwrap();
        assert_eq!(s.q[2], vec![vec![0, 1, 2]]);
        assert_eq!(s.q_count(1) + s.q_count(3), 0);
        assert!(s.r.iter().all(|v| v.is_empty()));
        assert!((trace_weight_sum(&g, &query(0, &[2], 6), 0.2).unwrap() - 0.16).abs() < 1e-15);
    }

    #[test]
    fn triangle_returns() {
        let g = GraphSample::abstract_graph(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let s = enumerate_traces(&g, &query(0, &[], 6)).unwrap();
        let mut r3 = s.r[3].clone();
        r3.sort();
        assert_eq!(r3, vec![vec![0, 1, 2, 0], vec![0, 1, 2, 1], vec![0, 2, 1, 0], vec![0, 2, 1, 2]]);
        assert!((trace_weight_sum(&g, &query(0, &[], 6), 0.1).unwrap() - 0.032).abs() < 1e-15);
    }

    #[test]
    fn star_has_no_returns() {
        let g = GraphSample::abstract_graph(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let s = enumerate_traces(&g, &query(0, &[], 8)).unwrap();
        assert!(s.is_empty());
        assert_eq!(trace_weight_sum(&g, &query(0, &[], 8), 0.3).unwrap(), 0.0);
    }

    #[test]
    fn guards() {
        let g = GraphSample::abstract_graph(2, &[(0, 1)]).unwrap();
        assert!(matches!(enumerate_traces(&g, &query(0, &[], 13)), Err(Error::Guard(_))));
        assert!(enumerate_traces(&g, &query(0, &[0], 3)).is_err());
    }
}
