//! Catalog domains with analytic distance functions.
//!
//! A [`Domain`] is one of a closed set of shapes (intervals, balls, annuli,
//! strips, rectangles, punctured balls, exteriors of balls and convex
//! polygons). Every geometric query has a closed form for each shape, so the
//! distance function, its gradient, directional distances and the cut locus
//! are exact up to rounding.
//!
//! Points are [`Point`] values (`Vector3<f64>`); coordinates past the domain
//! dimension are zero. Use [`point`] to build one from a slice.

mod cut_locus;
mod distance;
mod domain;
mod extent;
mod polygon;
mod rays;

pub use cut_locus::CutLocusDescriptor;
pub use distance::NearSet;
pub use domain::{Domain, DomainKind, DomainSpec};
pub use polygon::ConvexPolygon;
pub use rays::{LineSegment, LineSegmentFamily};

use nalgebra::Vector3;
use thiserror::Error;

/// A point or vector in R^N, N ≤ 3, padded with zeros.
pub type Point = Vector3<f64>;

/// Largest supported ambient dimension.
pub const MAX_DIM: usize = 3;

/// Relative tolerance used to decide whether a point lies on the skeleton.
pub const SKELETON_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("point is outside the domain")]
    PointOutsideDomain,
    #[error("point lies on the skeleton (gap {gap:.3e})")]
    OnSkeleton { gap: f64 },
    #[error("point lies on the cut locus")]
    OnCutLocus,
    #[error("nearest boundary point is not a smooth boundary point")]
    NonSmoothBoundaryPoint,
    #[error("direction is not a unit vector (|nu| = {norm})")]
    InvalidDirection { norm: f64 },
    #[error("expected a point of dimension {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("unsupported dimension {0} (1..=3 are supported)")]
    UnsupportedDimension(usize),
    #[error("invalid domain: {0}")]
    InvalidDomain(String),
    #[error("polygon is not convex")]
    NonConvexPolygon,
}

/// Builds a [`Point`] from at most three coordinates.
pub fn point(coords: &[f64]) -> Result<Point, GeometryError> {
    if coords.is_empty() || coords.len() > MAX_DIM {
        return Err(GeometryError::UnsupportedDimension(coords.len()));
    }
    let mut p = Point::zeros();
    for (i, c) in coords.iter().enumerate() {
        p[i] = *c;
    }
    Ok(p)
}

/// Returns an orthonormal basis of the complement of the unit vector `nu`
/// within R^dim (empty for dim = 1).
pub fn orthogonal_basis(nu: &Point, dim: usize) -> Vec<Point> {
    match dim {
        1 => Vec::new(),
        2 => vec![Point::new(-nu[1], nu[0], 0.0)],
        _ => {
            let trial = if nu[0].abs() < 0.9 { Point::x() } else { Point::y() };
            let e1 = (trial - nu * nu.dot(&trial)).normalize();
            let e2 = nu.cross(&e1);
            vec![e1, e2]
        }
    }
}
