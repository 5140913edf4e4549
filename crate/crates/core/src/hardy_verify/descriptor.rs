use serde::{Deserialize, Serialize};

use super::{
    verify_1d, verify_avk_wirths, verify_conformal_bookkeeping, verify_domain_directional,
    verify_domain_full, verify_mean_identity, IdentityReport, QuadratureConfig, TestFunction,
    TestFunctionSpec,
};
use crate::bessel::{BesselPair, PairSpec};
use crate::geometry::{Domain, DomainSpec};
use crate::Error;

/// Which identity a run checks. The JSON names are part of the descriptor
/// format; short aliases are accepted too.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum IdentityKind {
    #[serde(rename = "thm-3.3-full", alias = "full")]
    Full,
    #[serde(rename = "thm-3.3-directional", alias = "directional")]
    Directional,
    #[serde(rename = "thm-3.1", alias = "one-dimensional")]
    OneDimensional,
    #[serde(rename = "cor-avk-wirths", alias = "avkhadiev-wirths")]
    AvkhadievWirths,
    #[serde(rename = "thm-3.8-mean", alias = "mean")]
    Mean,
    #[serde(rename = "conformal")]
    Conformal,
}

/// A verification run:
///
/// ```json
/// {"identity": "thm-3.3-full",
///  "domain": {"variant": "ball", "center": [0, 0], "radius": 1.0, "dim": 2},
///  "pair": {"family": "power", "p": 2.0, "lambda": 0.0},
///  "test_function": {"family": "radial-bump", "center": [0.4, 0.0], "radius": 0.3},
///  "quadrature": {"cells": 256},
///  "tolerance": 1e-4}
/// ```
///
/// `pair` is unused by `conformal`; for `cor-avk-wirths` only its `lambda`
/// is read (default 0). A Lamb or log pair without `R` uses the inradius.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunDescriptor {
    pub identity: IdentityKind,
    pub domain: DomainSpec,
    #[serde(default)]
    pub pair: Option<PairSpec>,
    pub test_function: TestFunctionSpec,
    #[serde(default)]
    pub quadrature: QuadratureConfig,
    #[serde(default)]
    pub tolerance: Option<f64>,
}

impl RunDescriptor {
    pub fn from_json(text: &str) -> Result<Self, Error> {
        Ok(serde_json::from_str(text)?)
    }

    fn pair(&self, domain: &Domain) -> Result<BesselPair, Error> {
        let spec = self
            .pair
            .as_ref()
            .ok_or_else(|| Error::Schema(format!("identity {:?} needs a `pair`", self.identity)))?;
        let r = domain.inradius();
        Ok(spec.build(r.is_finite().then_some(r))?)
    }
}

/// Runs the identity a descriptor names. A descriptor tolerance overrides
/// the default.
pub fn run_descriptor(desc: &RunDescriptor) -> Result<IdentityReport, Error> {
    let domain = Domain::try_from(&desc.domain)?;
    let u = TestFunction::from_spec(&desc.test_function)?;
    let q = &desc.quadrature;
    let report = match desc.identity {
        IdentityKind::Full => verify_domain_full(&desc.pair(&domain)?, &domain, &u, q)?,
        IdentityKind::Directional => verify_domain_directional(&desc.pair(&domain)?, &domain, &u, q)?,
        IdentityKind::OneDimensional => verify_1d(&desc.pair(&domain)?, &domain, &u, q)?,
        IdentityKind::AvkhadievWirths => {
            let lambda = desc.pair.as_ref().and_then(|p| p.lambda).unwrap_or(0.0);
            verify_avk_wirths(lambda, &domain, &u, q)?
        }
        IdentityKind::Mean => {
            let sq = q.sphere(domain.dim())?;
            verify_mean_identity(&desc.pair(&domain)?, &domain, &u, &sq, q)?
        }
        IdentityKind::Conformal => verify_conformal_bookkeeping(&domain, &u, q)?,
    };
    Ok(match desc.tolerance {
        Some(t) => report.with_tolerance(t),
        None => report,
    })
}
