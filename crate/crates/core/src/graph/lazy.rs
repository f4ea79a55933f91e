//! Graphs whose neighbourhoods are drawn on first request.

use super::index::SpatialIndex;
use super::{PairKeying, PairRandomness, SKIP_STREAM};
use crate::kernels::KernelSpec;
use crate::point_process::PointCloud;
use crate::rng::{derive_stream_seed, stream_rng};
use std::sync::Arc;

/// A graph over a cloud that samples a vertex's edges when it is explored.
///
/// The pair between `u` and `v` is decided by whichever endpoint is explored
/// first, with the same per-pair law as the full samplers, so any set of
/// explored neighbourhoods has the distribution of the full graph.
pub struct LazyGraph {
    cloud: Arc<PointCloud>,
    spec: KernelSpec,
    pairs: PairRandomness,
    skip_seed: u64,
    index: SpatialIndex,
    adjacency: Vec<Vec<u32>>,
    explored: Vec<bool>,
    explored_count: usize,
}

impl LazyGraph {
    pub fn new(cloud: impl Into<Arc<PointCloud>>, spec: &KernelSpec, seed: u64, keying: PairKeying) -> Self {
        let cloud = cloud.into();
        let n = cloud.len();
        LazyGraph {
            pairs: PairRandomness::new(&cloud, seed, keying),
            skip_seed: derive_stream_seed(seed, SKIP_STREAM),
            index: SpatialIndex::build(&cloud),
            spec: *spec,
            adjacency: vec![Vec::new(); n],
            explored: vec![false; n],
            explored_count: 0,
            cloud,
        }
    }

    pub fn cloud(&self) -> &Arc<PointCloud> {
        &self.cloud
    }

    pub fn vertex_count(&self) -> usize {
        self.cloud.len()
    }

    pub fn is_explored(&self, v: usize) -> bool {
        self.explored[v]
    }

    pub fn explored_count(&self) -> usize {
        self.explored_count
    }

    /// Draws all edges of `v` not yet decided.
    pub fn explore(&mut self, v: usize) {
        if self.explored[v] {
            return;
        }
        let mut rng = stream_rng(self.skip_seed, v as u64);
        let mut found = Vec::new();
        let explored = &self.explored;
        let pairs = &self.pairs;
        self.index.scan(
            &self.cloud,
            &self.spec,
            v,
            &mut rng,
            |j| explored[j as usize],
            |j| pairs.uniform(v, j as usize),
            |j| found.push(j),
        );
        for &j in &found {
            self.adjacency[j as usize].push(v as u32);
        }
        self.adjacency[v].extend_from_slice(&found);
        self.adjacency[v].sort_unstable();
        self.explored[v] = true;
        self.explored_count += 1;
    }

    /// Neighbours of an explored vertex, sorted.
    pub fn neighbors(&self, v: usize) -> &[u32] {
        debug_assert!(self.explored[v], "vertex {v} not explored");
        &self.adjacency[v]
    }
}
