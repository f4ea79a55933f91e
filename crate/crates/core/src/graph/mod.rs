//! Graphs drawn from a point cloud with independent Bernoulli edges.

mod index;
mod lazy;

pub use lazy::LazyGraph;

use crate::error::{Error, Result};
use crate::kernels::KernelSpec;
use crate::point_process::PointCloud;
use crate::rng::{derive_stream_seed, hash_floats, pair_uniform, stream_rng};
use index::SpatialIndex;
use rayon::prelude::*;
use std::io::Write;
use std::sync::Arc;

/// Above this many vertices the exact sampler refuses to run unless the
/// guard is lifted.
pub const EXACT_SAMPLER_LIMIT: usize = 50_000;

const EDGE_STREAM: u64 = 0x45_44_47_45;
const SKIP_STREAM: u64 = 0x53_4B_49_50;

/// How the per-pair uniforms are keyed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PairKeying {
    /// By the unordered id pair.
    #[default]
    Ids,
    /// By the unordered pair of (position, mark) bit patterns, which makes
    /// the edge set invariant under relabelling.
    Positions,
}

/// Per-pair randomness shared by all samplers.
#[derive(Debug, Clone)]
pub(crate) struct PairRandomness {
    seed: u64,
    keys: Option<Vec<u64>>,
}

impl PairRandomness {
    pub fn new(cloud: &PointCloud, seed: u64, keying: PairKeying) -> Self {
        let keys = match keying {
            PairKeying::Ids => None,
            PairKeying::Positions => Some(
                (0..cloud.len())
                    .map(|i| {
                        let mut v = cloud.position(i).to_vec();
                        v.push(cloud.mark(i));
                        hash_floats(&v)
                    })
                    .collect(),
            ),
        };
        PairRandomness {
            seed: derive_stream_seed(seed, EDGE_STREAM),
            keys,
        }
    }

    #[inline]
    pub fn uniform(&self, i: usize, j: usize) -> f64 {
        match &self.keys {
            None => pair_uniform(self.seed, i as u64, j as u64),
            Some(k) => pair_uniform(self.seed, k[i], k[j]),
        }
    }
}

/// Sampler options.
#[derive(Debug, Clone, Copy, Default)]
pub struct SamplerOptions {
    pub keying: PairKeying,
    /// Lifts [`EXACT_SAMPLER_LIMIT`].
    pub allow_large_exact: bool,
}

/// An immutable graph over a point cloud, stored as sorted adjacency lists.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphSample {
    cloud: Arc<PointCloud>,
    offsets: Vec<usize>,
    neighbors: Vec<u32>,
}

impl GraphSample {
    /// Builds a graph from an edge list. Duplicates collapse; self-loops and
    /// out-of-range ids are rejected.
    pub fn from_edges(cloud: impl Into<Arc<PointCloud>>, edges: &[(usize, usize)]) -> Result<Self> {
        let cloud = cloud.into();
        let n = cloud.len();
        let mut lists: Vec<Vec<u32>> = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n {
                return Err(Error::VertexOutOfRange(u));
            }
            if v >= n {
                return Err(Error::VertexOutOfRange(v));
            }
            if u == v {
                return Err(Error::InvalidParameter(format!("self-loop at {u}")));
            }
            lists[u].push(v as u32);
            lists[v].push(u as u32);
        }
        Ok(Self::from_lists(cloud, lists))
    }

    /// Graph on `n` unplaced vertices; for fixtures that only need topology.
    pub fn abstract_graph(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Self::from_edges(PointCloud::unplaced(n), edges)
    }

    fn from_lists(cloud: Arc<PointCloud>, mut lists: Vec<Vec<u32>>) -> Self {
        let mut offsets = Vec::with_capacity(lists.len() + 1);
        offsets.push(0);
        let mut neighbors = Vec::new();
        for l in lists.iter_mut() {
            l.sort_unstable();
            l.dedup();
            neighbors.extend_from_slice(l);
            offsets.push(neighbors.len());
        }
        GraphSample {
            cloud,
            offsets,
            neighbors,
        }
    }

    pub fn cloud(&self) -> &Arc<PointCloud> {
        &self.cloud
    }

    pub fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.neighbors[self.offsets[v]..self.offsets[v + 1]]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    /// Position of the directed edge `u -> v` in the flat adjacency array.
    #[inline]
    pub fn edge_slot(&self, u: usize, v: usize) -> Option<usize> {
        self.neighbors(u)
            .binary_search(&(v as u32))
            .ok()
            .map(|k| self.offsets[u] + k)
    }

    /// Slot of the first directed edge leaving `v`; the slot of `v`'s k-th
    /// neighbour is `slot_start(v) + k`.
    #[inline]
    pub fn slot_start(&self, v: usize) -> usize {
        self.offsets[v]
    }

    /// Number of directed edge slots (twice the edge count).
    pub fn slot_count(&self) -> usize {
        self.neighbors.len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_slot(u, v).is_some()
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.len() / 2
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.vertex_count()).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .filter(move |v| (**v as usize) > u)
                .map(move |v| (u, *v as usize))
        })
    }
}

/// Tests every unordered pair once against the kernel.
pub fn sample_graph_exact(cloud: impl Into<Arc<PointCloud>>, spec: &KernelSpec, seed: u64) -> Result<GraphSample> {
    sample_graph_exact_with(cloud, spec, seed, SamplerOptions::default())
}

pub fn sample_graph_exact_with(
    cloud: impl Into<Arc<PointCloud>>,
    spec: &KernelSpec,
    seed: u64,
    opts: SamplerOptions,
) -> Result<GraphSample> {
    let cloud = cloud.into();
    spec.validate()?;
    let n = cloud.len();
    if n > EXACT_SAMPLER_LIMIT && !opts.allow_large_exact {
        return Err(Error::TooManyVertices(n, EXACT_SAMPLER_LIMIT));
    }
    let pr = PairRandomness::new(&cloud, seed, opts.keying);
    let lists: Vec<Vec<u32>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let t = cloud.mark(i);
            let mut out = Vec::new();
            for j in i + 1..n {
                let p = spec.connection_probability(t, cloud.mark(j), cloud.distance(i, j));
                if pr.uniform(i, j) < p {
                    out.push(j as u32);
                }
            }
            out
        })
        .collect();
    Ok(symmetrize(cloud, lists))
}

/// Same law as [`sample_graph_exact`], drawn through envelope thinning over
/// a mark-banded spatial index.
pub fn sample_graph_accelerated(cloud: impl Into<Arc<PointCloud>>, spec: &KernelSpec, seed: u64) -> Result<GraphSample> {
    sample_graph_accelerated_with(cloud, spec, seed, SamplerOptions::default())
}

pub fn sample_graph_accelerated_with(
    cloud: impl Into<Arc<PointCloud>>,
    spec: &KernelSpec,
    seed: u64,
    opts: SamplerOptions,
) -> Result<GraphSample> {
    let cloud = cloud.into();
    spec.validate()?;
    let index = SpatialIndex::build(&cloud);
    let pr = PairRandomness::new(&cloud, seed, opts.keying);
    let skip_seed = derive_stream_seed(seed, SKIP_STREAM);
    let lists: Vec<Vec<u32>> = (0..cloud.len())
        .into_par_iter()
        .map(|i| {
            let mut rng = stream_rng(skip_seed, i as u64);
            let mut out = Vec::new();
            index.scan(
                &cloud,
                spec,
                i,
                &mut rng,
                |j| (j as usize) < i,
                |j| pr.uniform(i, j as usize),
                |j| out.push(j),
            );
            out
        })
        .collect();
    Ok(symmetrize(cloud, lists))
}

fn symmetrize(cloud: Arc<PointCloud>, upper: Vec<Vec<u32>>) -> GraphSample {
    let n = upper.len();
    let mut lists: Vec<Vec<u32>> = vec![Vec::new(); n];
    for (i, l) in upper.iter().enumerate() {
        for &j in l {
            lists[i].push(j);
            lists[j as usize].push(i as u32);
        }
    }
    GraphSample::from_lists(cloud, lists)
}

/// Vertex degrees in id order.
pub fn degree_sequence(graph: &GraphSample) -> Vec<usize> {
    (0..graph.vertex_count()).map(|v| graph.degree(v)).collect()
}

/// Writes `u v` per edge, `u < v`.
pub fn write_edge_list<W: Write>(graph: &GraphSample, mut out: W) -> std::io::Result<()> {
    for (u, v) in graph.edges() {
        writeln!(out, "{u} {v}")?;
    }
    Ok(())
}

/// Writes `id x_1 .. x_d mark` per vertex with 12 significant digits.
pub fn write_vertex_table<W: Write>(cloud: &PointCloud, mut out: W) -> std::io::Result<()> {
    for v in cloud.vertices() {
        write!(out, "{}", v.id)?;
        for x in v.position {
            write!(out, " {x:.11e}")?;
        }
        writeln!(out, " {:.11e}", v.mark)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::point_process::{sample_point_cloud, Boundary, SpatialDomain};

    #[test]
    fn tiny_clouds_have_no_edges() {
        let spec = KernelSpec::constant(1.0, 1).unwrap();
        for n in 0..2 {
            let g = sample_graph_exact(PointCloud::unplaced(n), &spec, 1).unwrap();
            assert_eq!(g.edge_count(), 0);
        }
    }

    #[test]
    fn certain_kernel_gives_complete_graph() {
        let spec = KernelSpec::constant(1.0, 1).unwrap();
        let dom = SpatialDomain::new(1, 30.0, Boundary::Free).unwrap();
        let cloud = Arc::new(sample_point_cloud(dom, 5));
        let n = cloud.len();
        let g = sample_graph_exact(cloud.clone(), &spec, 1).unwrap();
        assert_eq!(g.edge_count(), n * (n - 1) / 2);
        let g = sample_graph_accelerated(cloud, &spec, 1).unwrap();
        assert_eq!(g.edge_count(), n * (n - 1) / 2);
    }

    #[test]
    fn null_kernel_gives_no_edges() {
        let spec = KernelSpec::constant(0.0, 2).unwrap();
        let dom = SpatialDomain::new(2, 10.0, Boundary::Torus).unwrap();
        let g = sample_graph_accelerated(sample_point_cloud(dom, 2), &spec, 1).unwrap();
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn exact_guard() {
        let spec = KernelSpec::constant(0.0, 1).unwrap();
        let err = sample_graph_exact(PointCloud::unplaced(EXACT_SAMPLER_LIMIT + 1), &spec, 1).unwrap_err();
        assert!(matches!(err, Error::TooManyVertices(..)));
    }

    #[test]
    fn complete_five() {
        let edges: Vec<_> = (0..5).flat_map(|u| (u + 1..5).map(move |v| (u, v))).collect();
        let g = GraphSample::abstract_graph(5, &edges).unwrap();
        assert_eq!(degree_sequence(&g), vec![4; 5]);
    }
}
