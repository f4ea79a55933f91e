use crate::error::{invalid, Error, Result};
use crate::graph::{PairKeying, PairRandomness};
use crate::kernels::KernelSpec;
use crate::point_process::{Boundary, PointCloud};

/// Search parameters for a half-line of stars around a powerful vertex.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StarChainParams {
    pub lambda: f64,
    /// `β` in `r = β log(1/λ) λ^{-2}`.
    pub beta_star: f64,
    /// Mark-layer decay, `1 < θ < γ + γ/δ`.
    pub theta: f64,
    /// Number of stars requested.
    pub stars: usize,
    /// Replaces the computed star size `r` (planted fixtures).
    pub r_override: Option<usize>,
}

impl StarChainParams {
    /// `θ` at the midpoint of `(1, γ + γ/δ)`.
    pub fn with_default_theta(spec: &KernelSpec, lambda: f64, beta_star: f64, stars: usize) -> Self {
        StarChainParams {
            lambda,
            beta_star,
            theta: 0.5 * (1.0 + spec.gamma + spec.gamma / spec.delta),
            stars,
            r_override: None,
        }
    }

    pub fn validate(&self, spec: &KernelSpec) -> Result<()> {
        if !(self.lambda > 0.0 && self.lambda < 1.0) {
            return invalid(format!("lambda must lie in (0,1), got {}", self.lambda));
        }
        if !(self.beta_star > 0.0) {
            return invalid(format!("beta must be positive, got {}", self.beta_star));
        }
        let top = spec.gamma + spec.gamma / spec.delta;
        if !(self.theta > 1.0 && self.theta < top) {
            return Err(Error::Window(format!(
                "1 < theta < gamma + gamma/delta = {top} fails for theta = {}",
                self.theta
            )));
        }
        if self.r_override == Some(0) {
            return invalid("star size must be at least 1");
        }
        Ok(())
    }

    /// Star size `r = ⌈β log(1/λ) λ^{-2}⌉`.
    pub fn r(&self) -> usize {
        self.r_override.unwrap_or_else(|| {
            let l = self.lambda;
            ((self.beta_star * (1.0 / l).ln() / (l * l)).ceil() as usize).max(1)
        })
    }

    /// `T_sp = r^{-1/γ}`.
    pub fn t_sp(&self, spec: &KernelSpec) -> f64 {
        (self.r() as f64).powf(-1.0 / spec.gamma)
    }

    /// `T_k = T_sp^θ e^{-kθ}`.
    pub fn t_k(&self, spec: &KernelSpec, k: usize) -> f64 {
        self.t_sp(spec).powf(self.theta) * (-(k as f64) * self.theta).exp()
    }

    /// `R_k = ½ T_sp^{-(γ+γ/δ)/d} e^{k(γ+γ/δ)/d}`, `R_0 = 0`.
    pub fn r_k(&self, spec: &KernelSpec, k: usize) -> f64 {
        if k == 0 {
            return 0.0;
        }
        let e = (spec.gamma + spec.gamma / spec.delta) / spec.dim as f64;
        0.5 * self.t_sp(spec).powf(-e) * (k as f64 * e).exp()
    }
}

/// One star of the chain.
#[derive(Debug, Clone, PartialEq)]
pub struct StarRecord {
    pub midpoint: usize,
    pub mark: f64,
    /// Neighbours of the midpoint with marks in `[1/2, 3/4)` in its annulus.
    pub neighbors: Vec<usize>,
    /// Vertex with mark in `[3/4, 1)` of the previous annulus adjacent to
    /// both this midpoint and the previous one. Always `None` for the first.
    pub connector: Option<usize>,
    /// At least `r` neighbours, and a connector unless first.
    pub complete: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StarChainResult {
    /// Completed stars followed by at most one incomplete one.
    pub stars: Vec<StarRecord>,
    pub found: usize,
    pub requested: usize,
    pub r: usize,
    /// Every `(annulus, vertex)` whose position or adjacency was inspected.
    pub inspected: Vec<(usize, usize)>,
}

impl StarChainResult {
    pub fn success(&self) -> bool {
        self.found == self.requested
    }
}

/// Region of a vertex relative to the centre `x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StarRegion {
    /// Potential midpoint of star `k`.
    Midpoint(usize),
    /// Potential leaf of star `k`, mark in `[1/2, 3/4)`.
    Leaf(usize),
    /// Potential connector in annulus `k`, mark in `[3/4, 1)`.
    Connector(usize),
    Outside,
}

fn displacement(cloud: &PointCloud, from: &[f64], to: &[f64], out: &mut Vec<f64>) {
    let dom = cloud.domain();
    let side = dom.side();
    out.clear();
    for (a, b) in from.iter().zip(to) {
        let mut g = b - a;
        if dom.boundary() == Boundary::Torus && side > 0.0 {
            g -= side * (g / side).round();
        }
        out.push(g);
    }
}

/// Classifies vertex `v` for the chain centred at `x` with annulus radii
/// `radii[k] = R_k` and mark thresholds `marks[k] = T_k`, both indexed from 0.
fn classify(
    cloud: &PointCloud,
    x: usize,
    v: usize,
    radii: &[f64],
    marks: &[f64],
    buf: &mut Vec<f64>,
) -> StarRegion {
    if v == x {
        return StarRegion::Outside;
    }
    let px = cloud.position(x);
    displacement(cloud, px, cloud.position(v), buf);
    // Half-space beyond the hyperplane through x with normal x; e_1 at the origin.
    let norm2: f64 = px.iter().map(|c| c * c).sum();
    let side = if norm2 > 0.0 {
        buf.iter().zip(px).map(|(g, n)| g * n).sum::<f64>()
    } else {
        buf[0]
    };
    if side < 0.0 {
        return StarRegion::Outside;
    }
    let dist = buf.iter().map(|g| g * g).sum::<f64>().sqrt();
    // radii[0] = 0 and radii is increasing: annulus k is [R_{k-1}, R_k).
    let k = radii.partition_point(|&r| r <= dist);
    if k == 0 || k >= radii.len() {
        return StarRegion::Outside;
    }
    let t = cloud.mark(v);
    if t >= 0.75 {
        StarRegion::Connector(k)
    } else if t >= 0.5 {
        StarRegion::Leaf(k)
    } else if k < marks.len() - 1 && t >= marks[k + 1] && t < marks[k] {
        StarRegion::Midpoint(k)
    } else {
        StarRegion::Outside
    }
}

/// Region of `v` for the chain around `x`, over annuli `1..=params.stars`.
pub fn star_region(cloud: &PointCloud, spec: &KernelSpec, x: usize, params: &StarChainParams, v: usize) -> StarRegion {
    let k_max = params.stars;
    let radii: Vec<f64> = (0..=k_max).map(|k| params.r_k(spec, k)).collect();
    let marks: Vec<f64> = (0..=k_max + 1).map(|k| params.t_k(spec, k)).collect();
    classify(cloud, x, v, &radii, &marks, &mut Vec::new())
}

/// Greedy construction of a half-line of stars rooted at `x`: the first
/// midpoint is `x` itself, later midpoints are the smallest-mark vertices of
/// consecutive half-annuli, each carrying at least `r` leaves and joined to
/// its predecessor through a two-edge path. Edges are decided by the pair
/// uniforms of the graph samplers for the same `seed`, so the result agrees
/// with a graph sampled from the same cloud.
pub fn find_star_chain(
    cloud: &PointCloud,
    spec: &KernelSpec,
    x: usize,
    params: &StarChainParams,
    seed: u64,
) -> Result<StarChainResult> {
    spec.validate()?;
    params.validate(spec)?;
    if x >= cloud.len() {
        return Err(Error::VertexOutOfRange(x));
    }
    let r = params.r();
    let k_max = params.stars;
    let mut result = StarChainResult {
        stars: Vec::new(),
        found: 0,
        requested: k_max,
        r,
        inspected: Vec::new(),
    };
    if k_max == 0 {
        return Ok(result);
    }
    let t_sp = params.t_sp(spec);
    if !(cloud.mark(x) < t_sp) {
        return invalid(format!("centre mark {} is not below T_sp = {t_sp}", cloud.mark(x)));
    }
    let needed = params.r_k(spec, k_max + 1);
    let dom = cloud.domain();
    let available = match dom.boundary() {
        Boundary::Torus => dom.side() / 2.0,
        Boundary::Free => cloud
            .position(x)
            .iter()
            .map(|c| dom.side() / 2.0 - c.abs())
            .fold(f64::INFINITY, f64::min),
    };
    if needed > available {
        return Err(Error::DomainTooSmall { needed, available });
    }

    let radii: Vec<f64> = (0..=k_max).map(|k| params.r_k(spec, k)).collect();
    let marks: Vec<f64> = (0..=k_max + 1).map(|k| params.t_k(spec, k)).collect();
    let mut midpoint: Vec<Option<usize>> = vec![None; k_max + 1];
    let mut leaves: Vec<Vec<usize>> = vec![Vec::new(); k_max + 1];
    let mut connectors: Vec<Vec<usize>> = vec![Vec::new(); k_max + 1];
    let mut buf = Vec::with_capacity(spec.dim);
    for v in 0..cloud.len() {
        match classify(cloud, x, v, &radii, &marks, &mut buf) {
            StarRegion::Midpoint(k) => {
                result.inspected.push((k, v));
                if midpoint[k].is_none_or(|m| cloud.mark(v) < cloud.mark(m)) {
                    midpoint[k] = Some(v);
                }
            }
            StarRegion::Leaf(k) => leaves[k].push(v),
            StarRegion::Connector(k) => connectors[k].push(v),
            StarRegion::Outside => {}
        }
    }
    midpoint[1] = Some(x);

    let pairs = PairRandomness::new(cloud, seed, PairKeying::Ids);
    let adjacent = |a: usize, b: usize| {
        pairs.uniform(a, b) < spec.connection_probability(cloud.mark(a), cloud.mark(b), cloud.distance(a, b))
    };
    let mut prev: Option<usize> = None;
    for k in 1..=k_max {
        let Some(mid) = midpoint[k] else { break };
        let mut neighbors = Vec::new();
        for &v in &leaves[k] {
            result.inspected.push((k, v));
            if adjacent(mid, v) {
                neighbors.push(v);
            }
        }
        let connector = match prev {
            None => None,
            Some(p) => connectors[k - 1].iter().copied().find(|&c| {
                result.inspected.push((k - 1, c));
                adjacent(c, p) && adjacent(c, mid)
            }),
        };
        let complete = neighbors.len() >= r && (k == 1 || connector.is_some());
        result.stars.push(StarRecord {
            midpoint: mid,
            mark: cloud.mark(mid),
            neighbors,
            connector,
            complete,
        });
        if !complete {
            break;
        }
        result.found += 1;
        prev = Some(mid);
    }
    Ok(result)
}
