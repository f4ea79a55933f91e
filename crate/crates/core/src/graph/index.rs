//! Mark-banded spatial index used by the accelerated and lazy samplers.
//!
//! Vertices are grouped into dyadic mark bands `[2^{-(b+1)}, 2^{-b})` and,
//! within a band, sorted by the Morton code of their grid cell. Any aligned
//! block of cells is then a contiguous run, so a quadtree over cells can be
//! walked with binary searches alone. For a source vertex and a block, the
//! kernel evaluated at the band's lowest mark and the block's minimal
//! distance bounds every pair probability in the block; candidates are drawn
//! from that envelope by geometric skipping and accepted with probability
//! `p / p_max`.

use crate::kernels::KernelSpec;
use crate::point_process::{Boundary, PointCloud, SpatialDomain};
use crate::rng::SimRng;
use rand::Rng;

const MAX_BANDS: usize = 64;
const DIRECT_BLOCK: usize = 8;
const SEPARATION: f64 = 0.5;

struct Band {
    low_mark: f64,
    codes: Vec<u64>,
    ids: Vec<u32>,
}

pub(crate) struct SpatialIndex {
    domain: SpatialDomain,
    dim: usize,
    levels: u32,
    cells: u64,
    cell: f64,
    bands: Vec<Band>,
}

#[inline]
fn morton(cell: &[u64], levels: u32) -> u64 {
    let d = cell.len();
    if d == 1 {
        return cell[0];
    }
    let mut code = 0u64;
    for k in 0..levels {
        for (i, c) in cell.iter().enumerate() {
            code |= ((c >> k) & 1) << (k as usize * d + i);
        }
    }
    code
}

/// `floor(-log2 t)` for `t` in (0,1), read off the float's exponent bits.
#[inline]
pub(crate) fn band_of(mark: f64) -> usize {
    let bits = mark.to_bits();
    let exp = ((bits >> 52) & 0x7ff) as i64 - 1023;
    let exact_power = bits & ((1u64 << 52) - 1) == 0;
    let b = if exact_power { -exp } else { -exp - 1 };
    (b.max(0) as usize).min(MAX_BANDS - 1)
}

/// Sorts by (band, code) in two stable counting passes: code, then band.
/// Ties keep id order, matching a comparison sort on `(key, id)`.
fn counting_sort(keyed: &mut Vec<(u64, u32)>, shift: u32, codes: usize) {
    let mask = (1u64 << shift) - 1;
    let mut count = vec![0usize; codes + 1];
    for e in keyed.iter() {
        count[(e.0 & mask) as usize + 1] += 1;
    }
    for k in 1..count.len() {
        count[k] += count[k - 1];
    }
    let mut tmp = vec![(0u64, 0u32); keyed.len()];
    for e in keyed.iter() {
        let c = &mut count[(e.0 & mask) as usize];
        tmp[*c] = *e;
        *c += 1;
    }
    let mut bcount = [0usize; MAX_BANDS + 1];
    for e in tmp.iter() {
        bcount[(e.0 >> shift) as usize + 1] += 1;
    }
    for k in 1..bcount.len() {
        bcount[k] += bcount[k - 1];
    }
    for e in tmp.iter() {
        let c = &mut bcount[(e.0 >> shift) as usize];
        keyed[*c] = *e;
        *c += 1;
    }
}

impl SpatialIndex {
    pub fn build(cloud: &PointCloud) -> Self {
        let domain = *cloud.domain();
        let dim = domain.dim();
        let side = domain.side();
        let mut cells = side.ceil().max(1.0) as u64;
        let mut levels = 64 - (cells - 1).leading_zeros();
        if cells == 1 {
            levels = 0;
        }
        while dim as u32 * levels > 56 {
            levels -= 1;
            cells = 1u64 << levels;
        }
        let cell = if side > 0.0 { side / cells as f64 } else { 1.0 };
        // One sort on (band, code) keys, then split into bands.
        let shift = 57u32;
        let mut keyed: Vec<(u64, u32)> = Vec::with_capacity(cloud.len());
        let mut c = vec![0u64; dim];
        for i in 0..cloud.len() {
            let x = cloud.position(i);
            for k in 0..dim {
                let v = ((x[k] + side / 2.0) / cell).floor();
                c[k] = (v.max(0.0) as u64).min(cells - 1);
            }
            let band = band_of(cloud.mark(i)) as u64;
            keyed.push(((band << shift) | morton(&c, levels), i as u32));
        }
        let total_cells = 1u64.checked_shl(dim as u32 * levels).unwrap_or(u64::MAX);
        if total_cells <= 4 * cloud.len() as u64 + 1024 {
            counting_sort(&mut keyed, shift, total_cells as usize);
        } else {
            keyed.sort_unstable();
        }
        let mut bands: Vec<Band> = Vec::with_capacity(MAX_BANDS);
        let mut pos = 0;
        for b in 0..MAX_BANDS {
            let end = pos + keyed[pos..].partition_point(|e| (e.0 >> shift) as usize <= b);
            let mask = (1u64 << shift) - 1;
            bands.push(Band {
                low_mark: if b + 1 < MAX_BANDS { 0.5f64.powi(b as i32 + 1) } else { 0.0 },
                codes: keyed[pos..end].iter().map(|e| e.0 & mask).collect(),
                ids: keyed[pos..end].iter().map(|e| e.1).collect(),
            });
            pos = end;
        }
        SpatialIndex {
            domain,
            dim,
            levels,
            cells,
            cell,
            bands,
        }
    }

    fn box_gap(&self, x: &[f64], corner: &[u64], level: u32) -> f64 {
        let half = self.domain.side() / 2.0;
        let span = 1u64 << level;
        let mut sq = 0.0;
        for k in 0..self.dim {
            let lo = -half + corner[k] as f64 * self.cell;
            let hi = -half + (corner[k] + span).min(self.cells) as f64 * self.cell;
            let xi = x[k];
            let g = if xi >= lo && xi <= hi {
                0.0
            } else {
                match self.domain.boundary() {
                    Boundary::Free => (lo - xi).max(xi - hi).max(0.0),
                    Boundary::Torus => {
                        let l = self.domain.side();
                        let d1 = (lo - xi).rem_euclid(l);
                        let d2 = (xi - hi).rem_euclid(l);
                        d1.min(d2)
                    }
                }
            };
            sq += g * g;
        }
        sq.sqrt()
    }

    /// Visits every vertex `j` adjacent to `src` under the kernel, except
    /// those for which `skip(j)` holds. `uniform(j)` must return the pair's
    /// keyed uniform; `rng` drives the envelope skips.
    pub fn scan<S, U, F>(
        &self,
        cloud: &PointCloud,
        spec: &KernelSpec,
        src: usize,
        rng: &mut SimRng,
        skip: S,
        uniform: U,
        mut found: F,
    ) where
        S: Fn(u32) -> bool,
        U: Fn(u32) -> f64,
        F: FnMut(u32),
    {
        let x = cloud.position(src).to_vec();
        let t = cloud.mark(src);
        let mut corner = vec![0u64; self.dim];
        let mut ctx = ScanCtx {
            index: self,
            cloud,
            spec,
            src,
            x: &x,
            t,
            rng,
            skip: &skip,
            uniform: &uniform,
            found: &mut found,
        };
        for b in 0..self.bands.len() {
            if self.bands[b].ids.is_empty() {
                continue;
            }
            corner.iter_mut().for_each(|c| *c = 0);
            ctx.visit(b, &mut corner, self.levels);
        }
    }
}

struct ScanCtx<'a, S, U, F> {
    index: &'a SpatialIndex,
    cloud: &'a PointCloud,
    spec: &'a KernelSpec,
    src: usize,
    x: &'a [f64],
    t: f64,
    rng: &'a mut SimRng,
    skip: &'a S,
    uniform: &'a U,
    found: &'a mut F,
}

impl<S, U, F> ScanCtx<'_, S, U, F>
where
    S: Fn(u32) -> bool,
    U: Fn(u32) -> f64,
    F: FnMut(u32),
{
    fn visit(&mut self, b: usize, corner: &mut [u64], level: u32) {
        let idx = self.index;
        let band = &idx.bands[b];
        let lo_code = morton(corner, idx.levels);
        let hi_code = lo_code.saturating_add(1u64 << (level as usize * idx.dim));
        let start = band.codes.partition_point(|c| *c < lo_code);
        let end = start + band.codes[start..].partition_point(|c| *c < hi_code);
        if start == end {
            return;
        }
        let gap = idx.box_gap(self.x, corner, level);
        let q = if band.low_mark > 0.0 {
            self.spec.connection_probability(self.t, band.low_mark, gap)
        } else {
            self.spec.connection_probability(self.t, f64::MIN_POSITIVE, gap)
        };
        if q <= 0.0 {
            return;
        }
        let diag = (1u64 << level) as f64 * idx.cell * (idx.dim as f64).sqrt();
        if level == 0 || end - start <= DIRECT_BLOCK || gap >= SEPARATION * diag {
            self.block(&band.ids[start..end], q);
            return;
        }
        let half = 1u64 << (level - 1);
        for child in 0..(1u32 << idx.dim) {
            let mut inside = true;
            for k in 0..idx.dim {
                if child >> k & 1 == 1 {
                    corner[k] += half;
                    inside &= corner[k] < idx.cells;
                }
            }
            if inside {
                self.visit(b, corner, level - 1);
            }
            for k in 0..idx.dim {
                if child >> k & 1 == 1 {
                    corner[k] -= half;
                }
            }
        }
    }

    /// Accepts `j` with probability `p / q`; `q = 1` is a plain Bernoulli test.
    #[inline]
    fn try_pair(&mut self, j: u32, q: f64) {
        if j as usize == self.src || (self.skip)(j) {
            return;
        }
        let dist = self.cloud.distance(self.src, j as usize);
        let p = self.spec.connection_probability(self.t, self.cloud.mark(j as usize), dist);
        if (self.uniform)(j) * q < p {
            (self.found)(j);
        }
    }

    fn block(&mut self, ids: &[u32], q: f64) {
        if q >= 0.5 {
            for &j in ids {
                self.try_pair(j, 1.0);
            }
            return;
        }
        let log_miss = (-q).ln_1p();
        let mut pos: usize = 0;
        loop {
            let u: f64 = 1.0 - self.rng.random::<f64>();
            let jump = (u.ln() / log_miss).floor();
            if jump >= (ids.len() - pos) as f64 {
                return;
            }
            pos += jump as usize;
            self.try_pair(ids[pos], q);
            pos += 1;
            if pos >= ids.len() {
                return;
            }
        }
    }
}
