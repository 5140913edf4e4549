use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use super::MeanDistanceError;
use crate::geometry::Point;

/// Nodes and weights for the normalized round measure on S^{N−1}.
///
/// Node sets are antipodally symmetric: `antipode(k)` is the index of −ν_k.
#[derive(Debug, Clone, PartialEq)]
pub struct SphereQuadrature {
    dim: usize,
    nodes: Vec<Point>,
    weights: Vec<f64>,
    half: usize,
}

/// JSON form: `{"sphere_nodes": 256}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SphereSpec {
    pub sphere_nodes: usize,
}

impl SphereQuadrature {
    /// `m` nodes on S^{dim−1}: ±1 for dim 1 (m is ignored), `m` equispaced
    /// angles for dim 2, and `m/2` Fibonacci points plus their antipodes for
    /// dim 3. `m` must be even.
    pub fn new(dim: usize, m: usize) -> Result<Self, MeanDistanceError> {
        let nodes: Vec<Point> = match dim {
            1 => vec![Point::x(), -Point::x()],
            2 | 3 if m < 2 || m % 2 != 0 => {
                return Err(MeanDistanceError::InvalidSphereNodes { m });
            }
            2 => {
                let half = m / 2;
                let first: Vec<Point> = (0..half)
                    .map(|k| {
                        let t = TAU * k as f64 / m as f64;
                        Point::new(t.cos(), t.sin(), 0.0)
                    })
                    .collect();
                first.iter().copied().chain(first.iter().map(|p| -p)).collect()
            }
            3 => {
                let half = m / 2;
                let golden = PI * (3.0 - 5f64.sqrt());
                let first: Vec<Point> = (0..half)
                    .map(|k| {
                        let z = 1.0 - (2.0 * k as f64 + 1.0) / half as f64;
                        let r = (1.0 - z * z).sqrt();
                        let t = golden * k as f64;
                        Point::new(r * t.cos(), r * t.sin(), z)
                    })
                    .collect();
                first.iter().copied().chain(first.iter().map(|p| -p)).collect()
            }
            _ => return Err(MeanDistanceError::UnsupportedDimension(dim)),
        };
        let n = nodes.len();
        Ok(Self {
            dim,
            weights: vec![1.0 / n as f64; n],
            half: n / 2,
            nodes,
        })
    }

    /// The default rule: 2 nodes (N=1), 256 (N=2), 1024 (N=3).
    pub fn default_for(dim: usize) -> Result<Self, MeanDistanceError> {
        Self::new(dim, if dim == 3 { 1024 } else { 256 })
    }

    pub fn from_spec(dim: usize, spec: &SphereSpec) -> Result<Self, MeanDistanceError> {
        Self::new(dim, spec.sphere_nodes)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[Point] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn antipode(&self, k: usize) -> usize {
        (k + self.half) % self.nodes.len()
    }

    /// Σ w_k f(ν_k).
    pub fn integrate(&self, f: impl Fn(&Point) -> f64) -> f64 {
        crate::quadrature::compensated_sum(
            self.nodes.iter().zip(&self.weights).map(|(n, w)| w * f(n)),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn weights_and_symmetry() {
        for (dim, m) in [(1, 2), (2, 256), (3, 1024)] {
            let sq = SphereQuadrature::new(dim, m).unwrap();
            assert_relative_eq!(sq.weights().iter().sum::<f64>(), 1.0, epsilon = 1e-12);
            for k in 0..sq.len() {
                let a = sq.antipode(k);
                assert!((sq.nodes()[k] + sq.nodes()[a]).norm() < 1e-15);
                assert!((sq.nodes()[k].norm() - 1.0).abs() < 1e-15);
            }
        }
        assert!(SphereQuadrature::new(2, 255).is_err());
    }

    #[test]
    fn second_moments() {
        // ∫ν_1² dσ = 1/N for the normalized measure.
        for dim in [1, 2, 3] {
            let sq = SphereQuadrature::default_for(dim).unwrap();
            let m = sq.integrate(|n| n[0] * n[0]);
            assert_relative_eq!(m, 1.0 / dim as f64, max_relative = 2e-3);
        }
    }
}
