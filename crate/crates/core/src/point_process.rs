//! Marked Poisson point clouds on boxes and tori.

use crate::error::{invalid, Error, Result};
use crate::rng::{open_unit, stream_rng};
use rand::Rng;
use rand_distr::{Distribution, Poisson};

/// Boundary condition of the observation window.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Boundary {
    Free,
    Torus,
}

/// The box `[-L/2, L/2]^d`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpatialDomain {
    dim: usize,
    side: f64,
    boundary: Boundary,
}

impl SpatialDomain {
    /// A zero side is accepted and yields an empty window.
    pub fn new(dim: usize, side: f64, boundary: Boundary) -> Result<Self> {
        if dim == 0 {
            return invalid("dimension must be at least 1");
        }
        if !(side >= 0.0) || !side.is_finite() {
            return invalid(format!("side must be finite and nonnegative, got {side}"));
        }
        Ok(SpatialDomain { dim, side, boundary })
    }

    /// Window of the given volume.
    pub fn with_volume(dim: usize, volume: f64, boundary: Boundary) -> Result<Self> {
        if !(volume >= 0.0) {
            return invalid(format!("volume must be nonnegative, got {volume}"));
        }
        Self::new(dim, volume.powf(1.0 / dim as f64), boundary)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn side(&self) -> f64 {
        self.side
    }

    pub fn boundary(&self) -> Boundary {
        self.boundary
    }

    pub fn volume(&self) -> f64 {
        self.side.powi(self.dim as i32)
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        let h = self.side / 2.0;
        x.len() == self.dim && x.iter().all(|v| *v >= -h && *v <= h)
    }

    /// Separation along one axis.
    #[inline]
    pub fn axis_gap(&self, a: f64, b: f64) -> f64 {
        let g = (a - b).abs();
        match self.boundary {
            Boundary::Free => g,
            Boundary::Torus => {
                let g = g % self.side;
                g.min(self.side - g)
            }
        }
    }
}

/// Euclidean distance, with per-coordinate wrap-around on a torus.
#[inline]
pub fn distance(domain: &SpatialDomain, a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| {
            let g = domain.axis_gap(*x, *y);
            g * g
        })
        .sum::<f64>()
        .sqrt()
}

/// A borrowed view of one vertex.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MarkedVertex<'a> {
    pub id: usize,
    pub position: &'a [f64],
    pub mark: f64,
}

/// Vertices of a marked point process in a window. Coordinates are stored
/// flat, `d` per vertex; ids are dense indices.
#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud {
    domain: SpatialDomain,
    coords: Vec<f64>,
    marks: Vec<f64>,
    palm_origin: Option<usize>,
}

impl PointCloud {
    /// Builds a cloud from explicit positions and marks, for fixtures.
    pub fn from_parts(domain: SpatialDomain, positions: Vec<Vec<f64>>, marks: Vec<f64>) -> Result<Self> {
        if positions.len() != marks.len() {
            return invalid("positions and marks differ in length");
        }
        let mut coords = Vec::with_capacity(positions.len() * domain.dim);
        for (i, p) in positions.iter().enumerate() {
            if !domain.contains(p) {
                return invalid(format!("vertex {i} lies outside the domain"));
            }
            coords.extend_from_slice(p);
        }
        if let Some(i) = marks.iter().position(|t| !(*t > 0.0 && *t < 1.0)) {
            return invalid(format!("mark of vertex {i} not in (0,1)"));
        }
        Ok(PointCloud {
            domain,
            coords,
            marks,
            palm_origin: None,
        })
    }

    /// `n` vertices with no meaningful geometry, all at the origin of a unit
    /// line with mark 1/2. Used for abstract graph fixtures.
    pub fn unplaced(n: usize) -> Self {
        PointCloud {
            domain: SpatialDomain::new(1, 1.0, Boundary::Free).expect("valid"),
            coords: vec![0.0; n],
            marks: vec![0.5; n],
            palm_origin: None,
        }
    }

    pub fn domain(&self) -> &SpatialDomain {
        &self.domain
    }

    pub fn len(&self) -> usize {
        self.marks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.marks.is_empty()
    }

    #[inline]
    pub fn position(&self, i: usize) -> &[f64] {
        let d = self.domain.dim;
        &self.coords[i * d..(i + 1) * d]
    }

    #[inline]
    pub fn mark(&self, i: usize) -> f64 {
        self.marks[i]
    }

    pub fn marks(&self) -> &[f64] {
        &self.marks
    }

    pub fn vertex(&self, i: usize) -> MarkedVertex<'_> {
        MarkedVertex {
            id: i,
            position: self.position(i),
            mark: self.marks[i],
        }
    }

    pub fn vertices(&self) -> impl Iterator<Item = MarkedVertex<'_>> + '_ {
        (0..self.len()).map(move |i| self.vertex(i))
    }

    pub fn palm_origin(&self) -> Option<usize> {
        self.palm_origin
    }

    #[inline]
    pub fn distance(&self, i: usize, j: usize) -> f64 {
        distance(&self.domain, self.position(i), self.position(j))
    }

    /// Appends a vertex, returning its id.
    pub fn push(&mut self, position: &[f64], mark: f64) -> Result<usize> {
        if !self.domain.contains(position) {
            return invalid("position outside the domain");
        }
        if !(mark > 0.0 && mark < 1.0) {
            return invalid(format!("mark {mark} not in (0,1)"));
        }
        self.coords.extend_from_slice(position);
        self.marks.push(mark);
        Ok(self.marks.len() - 1)
    }
}

/// Samples a unit-intensity Poisson process with uniform marks: the count is
/// Poisson(L^d), then positions and marks are drawn uniformly.
pub fn sample_point_cloud(domain: SpatialDomain, seed: u64) -> PointCloud {
    let mut rng = stream_rng(seed, 0);
    let volume = domain.volume();
    let n = if volume > 0.0 {
        Poisson::new(volume).expect("positive mean").sample(&mut rng) as usize
    } else {
        0
    };
    let d = domain.dim;
    let h = domain.side / 2.0;
    let mut coords = Vec::with_capacity(n * d);
    let mut marks = Vec::with_capacity(n);
    for _ in 0..n {
        for _ in 0..d {
            coords.push(rng.random_range(-h..h));
        }
        marks.push(open_unit(&mut rng));
    }
    PointCloud {
        domain,
        coords,
        marks,
        palm_origin: None,
    }
}

/// Adds a vertex at the origin with an independent uniform mark.
pub fn add_palm_origin(cloud: PointCloud, seed: u64) -> Result<PointCloud> {
    let mark = open_unit(&mut stream_rng(seed, 1));
    add_palm_origin_with_mark(cloud, mark)
}

/// Adds a vertex at the origin with the given mark.
pub fn add_palm_origin_with_mark(mut cloud: PointCloud, mark: f64) -> Result<PointCloud> {
    if let Some(i) = cloud.palm_origin {
        return Err(Error::PalmOriginPresent(i));
    }
    if !(mark > 0.0 && mark < 1.0) {
        return invalid(format!("palm mark {mark} not in (0,1)"));
    }
    let zero = vec![0.0; cloud.domain.dim];
    let id = cloud.push(&zero, mark)?;
    cloud.palm_origin = Some(id);
    Ok(cloud)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_volume_is_empty() {
        let dom = SpatialDomain::new(2, 0.0, Boundary::Free).unwrap();
        assert!(sample_point_cloud(dom, 1).is_empty());
    }

    #[test]
    fn distances() {
        let free = SpatialDomain::new(1, 10.0, Boundary::Free).unwrap();
        let torus = SpatialDomain::new(1, 10.0, Boundary::Torus).unwrap();
        assert_eq!(distance(&free, &[-4.5], &[4.5]), 9.0);
        assert!((distance(&torus, &[-4.5], &[4.5]) - 1.0).abs() < 1e-12);
        assert_eq!(distance(&torus, &[1.5], &[1.5]), 0.0);
    }

    #[test]
    fn palm_origin_once() {
        let dom = SpatialDomain::new(2, 5.0, Boundary::Torus).unwrap();
        let c = sample_point_cloud(dom, 3);
        let n = c.len();
        let c = add_palm_origin(c, 4).unwrap();
        assert_eq!(c.len(), n + 1);
        assert_eq!(c.position(n), &[0.0, 0.0]);
        assert_eq!(c.palm_origin(), Some(n));
        assert!(matches!(add_palm_origin(c, 5), Err(Error::PalmOriginPresent(_))));
    }
}
