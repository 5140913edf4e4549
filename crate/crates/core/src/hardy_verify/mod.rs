//! Numerical verification of the weighted Hardy identities.
//!
//! Every check computes each side of an identity by quadrature and returns
//! an [`IdentityReport`]. Right-hand-side terms are stored exactly as they
//! enter the sum, so `residual = lhs − Σ rhs`. In particular the
//! distributional term holds `−⟨Δd_Ω, ψ⟩` with `ψ = G(d_Ω)|u|^p`, where
//! `G = V|φ′/φ|^{p−2}(φ′/φ)` is the pair's boundary weight.

mod conformal;
mod descriptor;
mod identities;
mod mean;
mod pairing;
mod test_function;

pub use conformal::{superharmonic_condition, verify_conformal_bookkeeping};
pub use descriptor::{run_descriptor, IdentityKind, RunDescriptor};
pub use identities::{
    lamb_bracket, verify_1d, verify_avk_wirths, verify_domain_directional, verify_domain_full,
};
pub use mean::verify_mean_identity;
pub use pairing::distributional_pairing;
pub use test_function::{eta, eta_prime, ScalarField, TestFunction, TestFunctionKind, TestFunctionSpec};

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bessel::BesselError;
use crate::geometry::{Domain, GeometryError};
use crate::mean_distance::{MeanDistanceError, SphereQuadrature};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum VerifyError {
    #[error("pair interval end R = {r_max} does not cover distances up to {needed}")]
    PairIntervalTooShort { r_max: f64, needed: f64 },
    #[error("pair interval end R = {r_max} must exceed D∞/2 = {half_diameter}")]
    EssentialDiameterTooLarge { r_max: f64, half_diameter: f64 },
    #[error("dimension {0} is too small for this check")]
    DimensionTooSmall(usize),
    #[error("the domain has infinite inradius")]
    InfiniteInradius,
    #[error("invalid test function: {0}")]
    InvalidTestFunction(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Bessel(#[from] BesselError),
    #[error(transparent)]
    MeanDistance(#[from] MeanDistanceError),
}

/// How the pairing ⟨Δd_Ω, ψ⟩ is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DistributionalMethod {
    /// −∫∇d_Ω·∇ψ.
    #[default]
    Ibp,
    /// ∫ψ Δd_Ω on the good set minus the cut-locus surface integral.
    Geometric,
}

/// Resolution settings. Unset fields fall back to per-dimension defaults.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct QuadratureConfig {
    /// Cells per axis over the support box (Gauss–Legendre panels in 1D).
    pub cells: Option<usize>,
    /// Maximum depth of 2^N refinement of cells cut by the cut locus.
    pub refine_depth: Option<usize>,
    pub sphere_nodes: Option<usize>,
    /// Lateral cells per axis for skeletal means.
    pub lateral_cells: usize,
    /// Resolution of boundary integrals over the cut locus.
    pub boundary_nodes: usize,
    pub method: DistributionalMethod,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            cells: None,
            refine_depth: None,
            sphere_nodes: None,
            lateral_cells: 256,
            boundary_nodes: 256,
            method: DistributionalMethod::Ibp,
        }
    }
}

impl QuadratureConfig {
    pub fn with_cells(mut self, cells: usize) -> Self {
        self.cells = Some(cells);
        self
    }

    pub fn cells_for(&self, dim: usize) -> usize {
        self.cells.unwrap_or(if dim == 3 { 96 } else { 256 })
    }

    pub fn refine_depth_for(&self, dim: usize) -> usize {
        self.refine_depth.unwrap_or(match dim {
            1 => 0,
            2 => 12,
            _ => 6,
        })
    }

    pub fn sphere(&self, dim: usize) -> Result<SphereQuadrature, MeanDistanceError> {
        match self.sphere_nodes {
            Some(m) => SphereQuadrature::new(dim, m),
            None => SphereQuadrature::default_for(dim),
        }
    }
}

/// Default relative tolerance: 1e-8 in one dimension, 1e-4 otherwise.
pub fn default_tolerance(dim: usize) -> f64 {
    if dim == 1 {
        1e-8
    } else {
        1e-4
    }
}

/// Both evaluations of the distributional term, each as `−⟨Δd_Ω, ψ⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DistributionalTerm {
    pub ibp_value: f64,
    pub geometric_value: Option<f64>,
    pub method_used: DistributionalMethod,
}

impl DistributionalTerm {
    pub fn value(&self) -> f64 {
        match (self.method_used, self.geometric_value) {
            (DistributionalMethod::Geometric, Some(g)) => g,
            _ => self.ibp_value,
        }
    }
}

/// Both sides of one identity check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityReport {
    pub identity: String,
    pub domain: String,
    pub p: f64,
    pub lambda: Option<f64>,
    pub lhs_gradient_term: f64,
    pub weight_term: f64,
    pub cp_term: f64,
    pub distributional_term: Option<DistributionalTerm>,
    pub skeletal_term: Option<f64>,
    pub boundary_term: Option<f64>,
    pub residual: f64,
    pub relative_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    /// Secondary quantities (alternative residuals, slacks, side checks).
    pub aux: BTreeMap<String, f64>,
}

pub(crate) fn relative(residual: f64, terms: &[f64]) -> f64 {
    let scale = terms.iter().fold(0.0f64, |m, t| m.max(t.abs()));
    if scale == 0.0 {
        residual.abs()
    } else {
        residual.abs() / scale
    }
}

impl IdentityReport {
    #[allow(clippy::too_many_arguments)]
    pub(crate) fn assemble(
        identity: &str,
        domain: &Domain,
        p: f64,
        lambda: Option<f64>,
        lhs: f64,
        weight: f64,
        cp: f64,
        distributional: Option<DistributionalTerm>,
        skeletal: Option<f64>,
        boundary: Option<f64>,
        tolerance: f64,
    ) -> Self {
        let rhs_parts = [
            weight,
            cp,
            distributional.map_or(0.0, |d| d.value()),
            skeletal.unwrap_or(0.0),
            boundary.unwrap_or(0.0),
        ];
        let residual = lhs - crate::quadrature::compensated_sum(rhs_parts);
        let mut all = vec![lhs];
        all.extend_from_slice(&rhs_parts);
        let relative_residual = relative(residual, &all);
        let mut aux = BTreeMap::new();
        if let Some(DistributionalTerm {
            ibp_value,
            geometric_value: Some(g),
            ..
        }) = distributional
        {
            let base = lhs - weight - cp - skeletal.unwrap_or(0.0) - boundary.unwrap_or(0.0);
            let mut alt = all.clone();
            alt[3] = ibp_value;
            aux.insert("ibp_residual".into(), base - ibp_value);
            aux.insert("ibp_relative_residual".into(), relative(base - ibp_value, &alt));
            alt[3] = g;
            aux.insert("geometric_residual".into(), base - g);
            aux.insert("geometric_relative_residual".into(), relative(base - g, &alt));
        }
        Self {
            identity: identity.to_string(),
            domain: domain.variant_name().to_string(),
            p,
            lambda,
            lhs_gradient_term: lhs,
            weight_term: weight,
            cp_term: cp,
            distributional_term: distributional,
            skeletal_term: skeletal,
            boundary_term: boundary,
            residual,
            relative_residual,
            tolerance,
            pass: relative_residual < tolerance,
            aux,
        }
    }

    /// Re-evaluates `pass` against a new tolerance.
    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self.pass = self.relative_residual < tolerance;
        self
    }

    pub const CSV_HEADER: &'static str = "identity,domain,p,lambda,residual,relative_residual,pass";

    /// `identity,domain,p,lambda,residual,relative_residual,pass`, floats in
    /// `{:.16e}` form; an absent λ is an empty field.
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{:.16e},{},{:.16e},{:.16e},{}",
            self.identity,
            self.domain,
            self.p,
            self.lambda.map(|l| format!("{l:.16e}")).unwrap_or_default(),
            self.residual,
            self.relative_residual,
            self.pass
        )
    }
}
