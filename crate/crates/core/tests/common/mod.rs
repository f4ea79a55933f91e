//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use geocontact::graph::GraphSample;

/// Gauss–Legendre nodes and weights on `[-1, 1]` by Newton iteration on
/// the Legendre polynomial.
pub fn gauss_legendre(m: usize) -> Vec<(f64, f64)> {
    (0..m)
        .map(|i| {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (m as f64 + 0.5)).cos();
            loop {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=m {
                    let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                    p0 = p1;
                    p1 = p2;
                }
                let dp = m as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-15 {
                    let w = 2.0 / ((1.0 - x * x) * dp * dp);
                    return (x, w);
                }
            }
        })
        .collect()
}

/// Composite Gauss–Legendre over `[a, b]` split at `breaks`, with `panels`
/// equal panels of `rule` per piece.
pub fn composite<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, breaks: &[f64], panels: usize, rule: &[(f64, f64)]) -> f64 {
    let mut pts: Vec<f64> = vec![a, b];
    pts.extend(breaks.iter().copied().filter(|x| *x > a && *x < b));
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    let mut sum = 0.0;
    for w in pts.windows(2) {
        let h = (w[1] - w[0]) / panels as f64;
        for k in 0..panels {
            let mid = w[0] + (k as f64 + 0.5) * h;
            for &(x, wt) in rule {
                sum += wt * 0.5 * h * f(mid + 0.5 * h * x);
            }
        }
    }
    sum
}

fn mark_kernel(kappa: f64, gamma: f64, u: f64, s: f64) -> f64 {
    let (lo, hi) = if u <= s { (u, s) } else { (s, u) };
    kappa * lo.powf(-gamma) * hi.powf(gamma - 1.0)
}

/// The multiple integral defining `ν_n` for `n ∈ {1, 2, 3}`, written out
/// as a product kernel and integrated over `[ℓ,1]^{n-1}` in `log t`.
pub fn nu_brute(kappa: f64, gamma: f64, ell: f64, t0: f64, s: f64, n: usize) -> f64 {
    let k = |u: f64, v: f64| mark_kernel(kappa, gamma, u, v);
    let rule = gauss_legendre(20);
    let (a, b) = (ell.ln(), 0.0);
    match n {
        1 => k(t0, s),
        2 => composite(
            |w| {
                let t1 = w.exp();
                k(t0, t1) * k(t1, s) * t1
            },
            a,
            b,
            &[t0.ln(), s.ln()],
            200,
            &rule,
        ),
        3 => composite(
            |w1| {
                let t1 = w1.exp();
                let inner = composite(
                    |w2| {
                        let t2 = w2.exp();
                        k(t1, t2) * k(t2, s) * t2
                    },
                    a,
                    b,
                    &[w1, s.ln()],
                    40,
                    &rule,
                );
                k(t0, t1) * t1 * inner
            },
            a,
            b,
            &[t0.ln(), s.ln()],
            40,
            &rule,
        ),
        _ => panic!("brute force covers n <= 3"),
    }
}

/// Walk classes by brute force over every vertex sequence of each length:
/// `(q, r)` with `q[n]`, `r[n]` the sorted traces with `n` edges.
pub fn naive_traces(g: &GraphSample, root: usize, a: &[usize], max_len: usize) -> (Vec<Vec<Vec<usize>>>, Vec<Vec<Vec<usize>>>) {
    let nv = g.vertex_count();
    let mut q = vec![Vec::new(); max_len + 1];
    let mut r = vec![Vec::new(); max_len + 1];
    for n in 1..=max_len {
        let total = nv.pow(n as u32);
        for code in 0..total {
            let mut seq = vec![root];
            let mut c = code;
            for _ in 0..n {
                seq.push(c % nv);
                c /= nv;
            }
            if !seq.windows(2).all(|w| g.has_edge(w[0], w[1])) {
                continue;
            }
            let head = &seq[..n];
            let distinct = (0..n).all(|i| (0..i).all(|j| head[i] != head[j]));
            if !distinct || head.iter().any(|v| a.contains(v)) {
                continue;
            }
            let last = seq[n];
            if a.contains(&last) {
                q[n].push(seq);
            } else if n >= 3 && head.contains(&last) {
                r[n].push(seq);
            }
        }
        q[n].sort();
        r[n].sort();
    }
    (q, r)
}

/// Mean extinction time of K_2 from both infected, by solving the
/// first-passage equations of the chain on {both, one, none}:
/// `E2 = 1/2 + E1` and `(1+λ) E1 = 1 + λ E2`.
pub fn k2_mean_extinction(lambda: f64) -> f64 {
    let (a11, a12, b1) = (1.0, -1.0, 0.5);
    let (a21, a22, b2) = (-lambda, 1.0 + lambda, 1.0);
    let det = a11 * a22 - a12 * a21;
    (b1 * a22 - a12 * b2) / det
}

/// All connected simple graphs on `n` vertices, one per edge mask.
pub fn connected_graphs(n: usize) -> Vec<GraphSample> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    for mask in 0u32..(1 << pairs.len()) {
        let edges: Vec<(usize, usize)> = pairs.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, e)| *e).collect();
        let g = GraphSample::abstract_graph(n, &edges).unwrap();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &w in g.neighbors(v) {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    stack.push(w as usize);
                }
            }
        }
        if seen.iter().all(|x| *x) {
            out.push(g);
        }
    }
    out
}
