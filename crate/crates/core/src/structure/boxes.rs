use crate::error::{invalid, Error, Result};
use crate::graph::{PairKeying, PairRandomness};
use crate::kernels::KernelSpec;
use crate::point_process::PointCloud;
use crate::rng::{derive_stream_seed, keyed_uniform};
use rayon::prelude::*;
use std::f64::consts::LN_2;

const COLOR_STREAM: u64 = 0x43_4F_4C_4F_52;

/// Parameters of the nested box hierarchy on a window of volume `n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoxParams {
    pub n: f64,
    pub dim: usize,
    /// Depth exponent, `0 < a < 1/log 2`.
    pub a: f64,
    /// Mark decay per layer, `(ε1 + log 2)/(γ + γ/δ) < θ < log 2`.
    pub theta3: f64,
    /// `0 < ε1 < log 2 (γ + γ/δ - 1)`.
    pub eps1: f64,
    /// `0 < ε3 < θγ ∧ δε1`.
    pub eps3: f64,
    /// Leaves required per star.
    pub star_size: usize,
}

impl BoxParams {
    /// `ε1` at half its maximum, `θ` at the middle of its window and `ε3` at
    /// half of `θγ ∧ δε1`.
    pub fn with_defaults(n: f64, spec: &KernelSpec, a: f64, star_size: usize) -> Self {
        let s = spec.gamma + spec.gamma / spec.delta;
        let eps1 = 0.5 * LN_2 * (s - 1.0);
        let theta3 = 0.5 * ((eps1 + LN_2) / s + LN_2);
        let eps3 = 0.5 * (theta3 * spec.gamma).min(spec.delta * eps1);
        BoxParams {
            n,
            dim: spec.dim,
            a,
            theta3,
            eps1,
            eps3,
            star_size,
        }
    }

    /// Checks every window, naming the inequality that fails.
    pub fn validate(&self, spec: &KernelSpec) -> Result<()> {
        let win = |msg: String| Err(Error::Window(msg));
        if self.dim != spec.dim {
            return invalid(format!("dimension {} differs from the kernel's {}", self.dim, spec.dim));
        }
        if !(self.n >= 1.0) || !self.n.is_finite() {
            return invalid(format!("volume must be at least 1, got {}", self.n));
        }
        if !(self.a > 0.0 && self.a < 1.0 / LN_2) {
            return win(format!("0 < a < 1/log 2 fails for a = {}", self.a));
        }
        let s = spec.gamma + spec.gamma / spec.delta;
        if !(self.eps1 > 0.0) {
            return win(format!("eps1 > 0 fails for eps1 = {}", self.eps1));
        }
        if !(LN_2 > (self.eps1 + LN_2) / s) {
            return win(format!(
                "log 2 > (eps1 + log 2)/(gamma + gamma/delta) fails for eps1 = {}, gamma + gamma/delta = {s}",
                self.eps1
            ));
        }
        let lo = (self.eps1 + LN_2) / s;
        if !(self.theta3 > lo) {
            return win(format!("theta > (eps1 + log 2)/(gamma + gamma/delta) = {lo} fails for theta = {}", self.theta3));
        }
        if !(self.theta3 < LN_2) {
            return win(format!("theta < log 2 fails for theta = {}", self.theta3));
        }
        let cap = (self.theta3 * spec.gamma).min(spec.delta * self.eps1);
        if !(self.eps3 > 0.0 && self.eps3 < cap) {
            return win(format!("0 < eps3 < theta*gamma ∧ delta*eps1 = {cap} fails for eps3 = {}", self.eps3));
        }
        if self.star_size == 0 {
            return invalid("star size must be at least 1");
        }
        Ok(())
    }
}

/// One layer of cubes of side `2^k`.
#[derive(Debug, Clone, PartialEq)]
pub struct Layer {
    pub k: usize,
    /// Boxes per axis, `n_p 2^{k_p - k}`.
    pub per_axis: usize,
    pub side: f64,
    /// Open mark interval `(½e^{-(k+1)θd}, ½e^{-kθd})` of the midpoints.
    pub mark_low: f64,
    pub mark_high: f64,
    /// Probability that a vertex of mark at least 1/2 is coloured `k`.
    pub color_prob: f64,
    /// Parent index on layer `k+1` for every box; empty on the top layer.
    pub parent: Vec<u32>,
}

impl Layer {
    pub fn box_count(&self, dim: usize) -> usize {
        self.per_axis.pow(dim as u32)
    }
}

/// Boxes `A_{k,v} = 2^k (v + [0,1)^d)`, shifted to the lower corner of the
/// window `[-L/2, L/2]^d` with `L = n^{1/d}`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoxHierarchy {
    pub params: BoxParams,
    pub gamma: f64,
    pub n_p: usize,
    pub k_p: usize,
    /// Lower corner coordinate, the same on every axis.
    pub origin: f64,
    pub layers: Vec<Layer>,
}

fn floor_robust(x: f64) -> usize {
    (x * (1.0 + 1e-12)).floor().max(0.0) as usize
}

pub fn build_box_hierarchy(params: &BoxParams, spec: &KernelSpec) -> Result<BoxHierarchy> {
    spec.validate()?;
    params.validate(spec)?;
    let d = params.dim as f64;
    let n_p = floor_robust(params.n.powf((1.0 - params.a * LN_2) / d));
    let k_p = floor_robust(params.a * params.n.ln() / d);
    if n_p == 0 {
        return invalid("n^((1 - a log 2)/d) < 1 leaves no top-layer boxes");
    }
    if k_p >= 40 {
        return invalid(format!("hierarchy depth {k_p} is too large"));
    }
    let rate = d * ((params.theta3 * spec.gamma).min(spec.delta * params.eps1) - params.eps3);
    let z: f64 = (0..=k_p).map(|k| (-(k as f64) * rate).exp()).sum();
    let top = n_p << k_p;
    let total_boxes = (0..=k_p).map(|k| (top >> k).pow(params.dim as u32)).sum::<usize>();
    if total_boxes > 1 << 26 {
        return invalid(format!("{total_boxes} boxes exceed the hierarchy limit"));
    }
    let mut layers = Vec::with_capacity(k_p + 1);
    for k in 0..=k_p {
        let per_axis = n_p << (k_p - k);
        let kf = k as f64;
        let parent = if k == k_p {
            Vec::new()
        } else {
            let count = per_axis.pow(params.dim as u32);
            let parent_axis = per_axis / 2;
            (0..count)
                .map(|idx| {
                    let mut rem = idx;
                    let mut p = 0usize;
                    let mut stride = 1usize;
                    for _ in 0..params.dim {
                        p += (rem % per_axis) / 2 * stride;
                        rem /= per_axis;
                        stride *= parent_axis;
                    }
                    p as u32
                })
                .collect()
        };
        layers.push(Layer {
            k,
            per_axis,
            side: (1u64 << k) as f64,
            mark_low: 0.5 * (-(kf + 1.0) * params.theta3 * d).exp(),
            mark_high: 0.5 * (-kf * params.theta3 * d).exp(),
            color_prob: (-kf * rate).exp() / z,
            parent,
        });
    }
    Ok(BoxHierarchy {
        params: *params,
        gamma: spec.gamma,
        n_p,
        k_p,
        origin: -0.5 * params.n.powf(1.0 / d),
        layers,
    })
}

impl BoxHierarchy {
    pub fn dim(&self) -> usize {
        self.params.dim
    }

    pub fn box_count(&self, k: usize) -> usize {
        self.layers[k].box_count(self.dim())
    }

    /// Side of the covered region, `n_p 2^{k_p}`.
    pub fn region_side(&self) -> f64 {
        (self.n_p << self.k_p) as f64
    }

    /// Layer whose midpoint mark interval contains `t`.
    pub fn layer_of_mark(&self, t: f64) -> Option<usize> {
        if !(t > 0.0 && t < 0.5) {
            return None;
        }
        let d = self.dim() as f64;
        let guess = (-(2.0 * t).ln() / (self.params.theta3 * d)).floor() as usize;
        // Check the neighbours of the guess against rounding at interval ends.
        (guess.saturating_sub(1)..=guess + 1)
            .filter(|&k| k <= self.k_p)
            .find(|&k| t > self.layers[k].mark_low && t < self.layers[k].mark_high)
    }

    /// Layer-`k` box containing `x`, if inside the region.
    pub fn box_of_point(&self, k: usize, x: &[f64]) -> Option<usize> {
        let layer = &self.layers[k];
        let mut idx = 0usize;
        let mut stride = 1usize;
        for &c in x {
            let u = ((c - self.origin) / layer.side).floor();
            if !(u >= 0.0 && u < layer.per_axis as f64) {
                return None;
            }
            idx += u as usize * stride;
            stride *= layer.per_axis;
        }
        Some(idx)
    }

    /// Integer coordinates of a layer-`k` box.
    pub fn coords(&self, k: usize, mut idx: usize) -> Vec<usize> {
        let m = self.layers[k].per_axis;
        (0..self.dim())
            .map(|_| {
                let c = idx % m;
                idx /= m;
                c
            })
            .collect()
    }

    pub fn index(&self, k: usize, coords: &[usize]) -> usize {
        let m = self.layers[k].per_axis;
        coords.iter().rev().fold(0, |acc, &c| acc * m + c)
    }

    /// Lower corner and side of a layer-`k` box in window coordinates.
    pub fn cube(&self, k: usize, idx: usize) -> (Vec<f64>, f64) {
        let side = self.layers[k].side;
        let lower = self.coords(k, idx).iter().map(|&c| self.origin + c as f64 * side).collect();
        (lower, side)
    }
}

/// Visits `{0..m-1}^d` so that consecutive entries differ by one in a single
/// coordinate, starting at the origin.
pub fn snake_order(m: usize, d: usize) -> Vec<Vec<usize>> {
    if d == 0 {
        return vec![Vec::new()];
    }
    let inner = snake_order(m, d - 1);
    let mut out = Vec::with_capacity(inner.len() * m);
    for i in 0..m {
        let iter: Box<dyn Iterator<Item = &Vec<usize>>> =
            if i % 2 == 0 { Box::new(inner.iter()) } else { Box::new(inner.iter().rev()) };
        for c in iter {
            let mut v = c.clone();
            v.push(i);
            out.push(v);
        }
    }
    out
}

/// Good flags and counts per layer.
#[derive(Debug, Clone, PartialEq)]
pub struct BoxClassification {
    pub good: Vec<Vec<bool>>,
    pub counts: Vec<usize>,
    /// Boxes holding a midpoint candidate.
    pub nonempty: Vec<usize>,
}

struct LayerContents {
    midpoint: Vec<Option<u32>>,
    leaves: Vec<Vec<u32>>,
    connectors: Vec<Vec<u32>>,
}

/// Layer-sequential classification of good boxes. The top layer is chained
/// along a snake order; every lower box needs a good parent, a midpoint with
/// at least `S` leaves, and a connector to the parent's midpoint. Vertices
/// of mark at least 1/2 are coloured independently by layer, keyed by id.
pub fn classify_good_boxes(h: &BoxHierarchy, cloud: &PointCloud, spec: &KernelSpec, seed: u64) -> BoxClassification {
    let dim = h.dim();
    let k_p = h.k_p;
    let mut contents: Vec<LayerContents> = h
        .layers
        .iter()
        .map(|l| {
            let c = l.box_count(dim);
            LayerContents {
                midpoint: vec![None; c],
                leaves: vec![Vec::new(); c],
                connectors: vec![Vec::new(); c],
            }
        })
        .collect();
    let color_seed = derive_stream_seed(seed, COLOR_STREAM);
    let cumulative: Vec<f64> = h
        .layers
        .iter()
        .scan(0.0, |acc, l| {
            *acc += l.color_prob;
            Some(*acc)
        })
        .collect();
    if cloud.domain().dim() == dim {
        for v in 0..cloud.len() {
            let t = cloud.mark(v);
            let x = cloud.position(v);
            if t >= 0.5 {
                let u = keyed_uniform(color_seed, v as u64);
                let k = cumulative.partition_point(|&c| c <= u).min(k_p);
                if let Some(b) = h.box_of_point(k, x) {
                    let slot = if t < 0.75 { &mut contents[k].leaves } else { &mut contents[k].connectors };
                    slot[b].push(v as u32);
                }
            } else if let Some(k) = h.layer_of_mark(t) {
                if let Some(b) = h.box_of_point(k, x) {
                    let m = &mut contents[k].midpoint[b];
                    if m.is_none_or(|w| t < cloud.mark(w as usize)) {
                        *m = Some(v as u32);
                    }
                }
            }
        }
    }

    let pairs = PairRandomness::new(cloud, seed, PairKeying::Ids);
    let adjacent = |a: usize, b: usize| {
        pairs.uniform(a, b) < spec.connection_probability(cloud.mark(a), cloud.mark(b), cloud.distance(a, b))
    };
    let star_size = h.params.star_size;
    let is_star = |c: &LayerContents, b: usize| -> bool {
        let Some(m) = c.midpoint[b] else { return false };
        let mut count = 0;
        for &w in &c.leaves[b] {
            if adjacent(m as usize, w as usize) {
                count += 1;
                if count >= star_size {
                    return true;
                }
            }
        }
        false
    };
    let connected = |c: &LayerContents, b: usize, other: usize| -> bool {
        let m = c.midpoint[b].expect("star check precedes connector check") as usize;
        c.connectors[b]
            .iter()
            .any(|&w| adjacent(w as usize, m) && adjacent(w as usize, other))
    };

    let mut good: Vec<Vec<bool>> = h.layers.iter().map(|l| vec![false; l.box_count(dim)]).collect();
    let top = &contents[k_p];
    let mut prev: Option<usize> = None;
    for c in snake_order(h.layers[k_p].per_axis, dim) {
        let b = h.index(k_p, &c);
        let ok = match prev {
            None => is_star(top, b),
            Some(p) => good[k_p][p] && is_star(top, b) && connected(top, b, top.midpoint[p].unwrap() as usize),
        };
        good[k_p][b] = ok;
        prev = Some(b);
    }
    for k in (0..k_p).rev() {
        let (lower, upper) = good.split_at_mut(k + 1);
        let parent_good = &upper[0];
        let parent_mid = &contents[k + 1].midpoint;
        let layer = &contents[k];
        let parents = &h.layers[k].parent;
        lower[k].par_iter_mut().enumerate().for_each(|(b, g)| {
            let p = parents[b] as usize;
            *g = parent_good[p] && is_star(layer, b) && connected(layer, b, parent_mid[p].unwrap() as usize);
        });
    }
    let counts = good.iter().map(|l| l.iter().filter(|&&g| g).count()).collect();
    let nonempty = contents.iter().map(|c| c.midpoint.iter().filter(|m| m.is_some()).count()).collect();
    BoxClassification { good, counts, nonempty }
}

/// Layer-0 good boxes per unit volume.
pub fn good_box_fraction(c: &BoxClassification, h: &BoxHierarchy) -> f64 {
    c.counts.first().copied().unwrap_or(0) as f64 / h.params.n
}
