//! Numerical verification of distance-weighted Hardy identities.
//!
//! The crate evaluates both sides of Hardy-type identities on a catalog of
//! model domains and reports residuals, together with the geometric and
//! spectral quantities the identities are built from:
//!
//! - [`geometry`]: analytic distance functions, directional distances, line
//!   segments and cut loci of catalog domains.
//! - [`bessel`]: p-Bessel weight pairs, the remainder function `C_p`, the
//!   Bessel function `J₀` and Lamb's constant.
//! - [`mean_distance`]: sphere quadrature, mean distance, quasi-inradius and
//!   spherical means.
//! - [`hardy_verify`]: the identity checks themselves.
//! - [`spectral`]: finite-difference Dirichlet eigenvalues and lower bounds.
//! - [`cli`]: the command functions behind the `hardylab` binary.

pub mod bessel;
pub mod cli;
pub mod geometry;
pub mod hardy_verify;
pub mod mean_distance;
pub mod quadrature;
pub mod spectral;

pub use geometry::{point, Domain, DomainSpec, Point};

/// Any error produced by the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Geometry(#[from] geometry::GeometryError),
    #[error(transparent)]
    Bessel(#[from] bessel::BesselError),
    #[error(transparent)]
    MeanDistance(#[from] mean_distance::MeanDistanceError),
    #[error(transparent)]
    Verify(#[from] hardy_verify::VerifyError),
    #[error(transparent)]
    Spectral(#[from] spectral::SpectralError),
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Schema(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
