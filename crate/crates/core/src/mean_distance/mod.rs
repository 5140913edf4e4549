//! Spherical averages over directions: the constant Ξ(N,p), the mean
//! distance d_{Ω,M,p}, the quasi-inradius μ, spherical means of a Bessel
//! pair and the skeletal mean S_Ω.
//!
//! The measure on the sphere is normalized to total mass one.

mod skeletal;
mod sphere;

pub use skeletal::{skeletal_mean, LateralGrid, SkeletalSample};
pub use sphere::{SphereQuadrature, SphereSpec};

use rayon::prelude::*;
use serde::Serialize;
use statrs::function::gamma::ln_gamma;
use thiserror::Error;

use crate::bessel::BesselPair;
use crate::geometry::{Domain, DomainKind, GeometryError, Point};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MeanDistanceError {
    #[error("Gamma argument must be positive (N = {n}, p = {p})")]
    InvalidGammaArgument { n: usize, p: f64 },
    #[error("point is outside the domain")]
    PointOutsideDomain,
    #[error("the supremum is not attained on a bounded region")]
    UnboundedSupremum,
    #[error("ray length {rho} at sphere node {node} is not below the pair end R = {r_max}")]
    RhoExceedsPairInterval { node: usize, rho: f64, r_max: f64 },
    #[error("sphere quadrature needs an even node count, got {m}")]
    InvalidSphereNodes { m: usize },
    #[error("unsupported dimension {0}")]
    UnsupportedDimension(usize),
    #[error("sphere quadrature has dimension {got}, domain has {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Ξ(N,p) = √π Γ((N+p)/2) / (Γ((p+1)/2) Γ(N/2)), via log-Gamma.
pub fn xi(n: usize, p: f64) -> Result<f64, MeanDistanceError> {
    let a = 0.5 * (n as f64 + p);
    let b = 0.5 * (p + 1.0);
    let c = 0.5 * n as f64;
    if !(n >= 1 && a > 0.0 && b > 0.0 && c > 0.0 && p.is_finite()) {
        return Err(MeanDistanceError::InvalidGammaArgument { n, p });
    }
    Ok((0.5 * std::f64::consts::PI.ln() + ln_gamma(a) - ln_gamma(b) - ln_gamma(c)).exp())
}

/// How the ray length along ν is measured at a point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RayConvention {
    /// ρ_ν(x), the distance to ∂Ω along the ray x + tν, t > 0.
    OneSided,
    /// min(ρ_ν(x), ρ_{−ν}(x)): the distance to the nearer end of the segment
    /// through x in direction ±ν.
    Chord,
}

fn check_dims(domain: &Domain, sq: &SphereQuadrature) -> Result<(), MeanDistanceError> {
    if domain.dim() != sq.dim() {
        return Err(MeanDistanceError::DimensionMismatch {
            expected: domain.dim(),
            got: sq.dim(),
        });
    }
    Ok(())
}

/// ∫ ρ_ν(x)^{−p} dσ(ν) (one-sided rays; infinite rays contribute 0).
pub fn inverse_power_mean(
    domain: &Domain,
    x: &Point,
    p: f64,
    sq: &SphereQuadrature,
) -> Result<f64, MeanDistanceError> {
    check_dims(domain, sq)?;
    if !domain.contains(x) {
        return Err(MeanDistanceError::PointOutsideDomain);
    }
    Ok(sq.integrate(|nu| domain.directional_unchecked(x, nu).powf(-p)))
}

/// d_{Ω,M,p}(x) = (Ξ(N,p) ∫ ρ_ν(x)^{−p} dσ)^{−1/p}.
pub fn mean_distance(
    domain: &Domain,
    x: &Point,
    p: f64,
    sq: &SphereQuadrature,
) -> Result<f64, MeanDistanceError> {
    if !(p > 0.0) {
        return Err(MeanDistanceError::InvalidGammaArgument { n: domain.dim(), p });
    }
    let s = inverse_power_mean(domain, x, p, sq)?;
    Ok((xi(domain.dim(), p)? * s).powf(-1.0 / p))
}

/// Resolution of the μ search.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, serde::Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchGrid {
    pub cells: usize,
}

impl Default for SearchGrid {
    fn default() -> Self {
        Self { cells: 64 }
    }
}

fn golden_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while (b - a) > tol {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    if fc > fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// μ = √N sup_Ω d_{Ω,M,2}, from a grid search followed by golden-section
/// refinement along each axis around the best cell.
///
/// Strips are translation invariant, so the search runs across the strip
/// only. Exteriors of balls have no finite supremum.
pub fn quasi_inradius(
    domain: &Domain,
    sq: &SphereQuadrature,
    grid: SearchGrid,
) -> Result<f64, MeanDistanceError> {
    check_dims(domain, sq)?;
    let n = domain.dim();
    let value = |x: &Point| -> f64 {
        if domain.contains(x) {
            mean_distance(domain, x, 2.0, sq).unwrap_or(0.0)
        } else {
            0.0
        }
    };
    let cells = grid.cells.max(2);
    let best = match domain.kind() {
        DomainKind::ExteriorOfBall { .. } => return Err(MeanDistanceError::UnboundedSupremum),
        DomainKind::Strip { normal, half_width } => {
            let w = *half_width;
            let h = 2.0 * w / cells as f64;
            let at = |t: f64| value(&(normal * t));
            let (t0, _) = (0..cells)
                .map(|k| {
                    let t = -w + (k as f64 + 0.5) * h;
                    (t, at(t))
                })
                .fold((0.0, f64::NEG_INFINITY), |acc, v| if v.1 > acc.1 { v } else { acc });
            let (a, b) = ((t0 - h).max(-w), (t0 + h).min(w));
            golden_max(at, a, b, 1e-12 * w).1
        }
        _ => {
            let (lo, hi) = domain.bounding_box().expect("bounded domain");
            let h: Point = (hi - lo) / cells as f64;
            let total = cells.pow(n as u32);
            let (best_x, best_v) = (0..total)
                .into_par_iter()
                .map(|idx| {
                    let mut x = lo;
                    let mut r = idx;
                    for a in 0..n {
                        x[a] += ((r % cells) as f64 + 0.5) * h[a];
                        r /= cells;
                    }
                    (x, value(&x))
                })
                .collect::<Vec<_>>()
                .into_iter()
                .fold((lo, f64::NEG_INFINITY), |acc, v| if v.1 > acc.1 { v } else { acc });
            let mut x = best_x;
            let mut v = best_v;
            for _pass in 0..2 {
                for a in 0..n {
                    let line = |t: f64| {
                        let mut y = x;
                        y[a] = t;
                        value(&y)
                    };
                    let (t, fv) = golden_max(line, x[a] - h[a], x[a] + h[a], 1e-12 * h[a]);
                    if fv > v {
                        v = fv;
                        x[a] = t;
                    }
                }
            }
            v
        }
    };
    Ok((n as f64).sqrt() * best)
}

/// Spherical means of a Bessel pair at a point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeanWeights {
    /// Ṽ_{M,p}(x) = ∫ V(ρ_ν(x)) |cos(ν, ē)|^p dσ.
    pub v_tilde: f64,
    /// V_{M,p}(x) = ∫ V(ρ_ν(x)) dσ.
    pub v_mean: f64,
    /// W_{M,p}(x) = ∫ W(ρ_ν(x)) dσ.
    pub w_mean: f64,
}

/// Options for [`spherical_mean_weights_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanOptions {
    pub convention: RayConvention,
    /// Reference unit vector ē for the cosine factor.
    pub reference: Point,
}

impl Default for MeanOptions {
    fn default() -> Self {
        Self {
            convention: RayConvention::OneSided,
            reference: Point::x(),
        }
    }
}

/// Ray length at `x` along sphere node `k` under a convention.
pub(crate) fn ray_length(
    domain: &Domain,
    x: &Point,
    sq: &SphereQuadrature,
    k: usize,
    convention: RayConvention,
) -> f64 {
    let fwd = domain.directional_unchecked(x, &sq.nodes()[k]);
    match convention {
        RayConvention::OneSided => fwd,
        RayConvention::Chord => fwd.min(domain.directional_unchecked(x, &sq.nodes()[sq.antipode(k)])),
    }
}

/// Spherical means with one-sided rays and ē = e₁.
pub fn spherical_mean_weights(
    pair: &BesselPair,
    domain: &Domain,
    x: &Point,
    sq: &SphereQuadrature,
) -> Result<MeanWeights, MeanDistanceError> {
    spherical_mean_weights_with(pair, domain, x, sq, &MeanOptions::default())
}

pub fn spherical_mean_weights_with(
    pair: &BesselPair,
    domain: &Domain,
    x: &Point,
    sq: &SphereQuadrature,
    opts: &MeanOptions,
) -> Result<MeanWeights, MeanDistanceError> {
    check_dims(domain, sq)?;
    if !domain.contains(x) {
        return Err(MeanDistanceError::PointOutsideDomain);
    }
    let p = pair.p();
    let mut vt = crate::quadrature::CompensatedSum::default();
    let mut vm = crate::quadrature::CompensatedSum::default();
    let mut wm = crate::quadrature::CompensatedSum::default();
    for (k, (nu, w)) in sq.nodes().iter().zip(sq.weights()).enumerate() {
        let rho = ray_length(domain, x, sq, k, opts.convention);
        if rho.is_finite() && !pair.admits(rho) {
            return Err(MeanDistanceError::RhoExceedsPairInterval {
                node: k,
                rho,
                r_max: pair.r_max(),
            });
        }
        let v = pair.v(rho);
        vt.add(w * v * nu.dot(&opts.reference).abs().powf(p));
        vm.add(w * v);
        wm.add(w * pair.w(rho));
    }
    Ok(MeanWeights {
        v_tilde: vt.value(),
        v_mean: vm.value(),
        w_mean: wm.value(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bessel::power_pair;
    use approx::assert_relative_eq;

    #[test]
    fn xi_identities() {
        for n in [1, 2, 3, 5] {
            assert_relative_eq!(xi(n, 2.0).unwrap(), n as f64, max_relative = 1e-13);
        }
        for p in [0.5, 1.0, 1.7, 3.0, 9.5] {
            assert_relative_eq!(xi(1, p).unwrap(), 1.0, max_relative = 1e-13);
        }
        assert_relative_eq!(xi(2, 1.0).unwrap(), std::f64::consts::FRAC_PI_2, max_relative = 1e-13);
        assert!(xi(2, -3.0).is_err());
    }

    #[test]
    fn mean_distance_closed_forms() {
        let b = Domain::ball(&[0.0, 0.0], 2.0).unwrap();
        let sq = SphereQuadrature::default_for(2).unwrap();
        let d = mean_distance(&b, &Point::zeros(), 2.0, &sq).unwrap();
        assert_relative_eq!(d, 2.0 / 2f64.sqrt(), max_relative = 1e-13);
        let i = Domain::interval(0.0, 1.0).unwrap();
        let sq1 = SphereQuadrature::default_for(1).unwrap();
        let d = mean_distance(&i, &Point::new(0.5, 0.0, 0.0), 2.0, &sq1).unwrap();
        assert_relative_eq!(d, 0.5, max_relative = 1e-15);
    }

    #[test]
    fn quasi_inradius_values() {
        let b = Domain::ball(&[0.0, 0.0], 1.0).unwrap();
        let sq = SphereQuadrature::default_for(2).unwrap();
        let mu = quasi_inradius(&b, &sq, SearchGrid::default()).unwrap();
        assert_relative_eq!(mu, 1.0, max_relative = 1e-9);
        let i = Domain::interval(0.0, 1.0).unwrap();
        let sq1 = SphereQuadrature::default_for(1).unwrap();
        let mu = quasi_inradius(&i, &sq1, SearchGrid::default()).unwrap();
        assert_relative_eq!(mu, 0.5, max_relative = 1e-12);
        let e = Domain::exterior_of_ball(&[0.0, 0.0], 1.0).unwrap();
        assert_eq!(
            quasi_inradius(&e, &sq, SearchGrid::default()),
            Err(MeanDistanceError::UnboundedSupremum)
        );
    }

    #[test]
    fn unit_weight_constants() {
        // V ≡ 1 with W = ((p−1)/p)^p r^{−p}: the λ = 1 − p power pair.
        let b = Domain::ball(&[0.0, 0.0], 1.0).unwrap();
        let sq = SphereQuadrature::default_for(2).unwrap();
        let x = Point::new(0.3, -0.2, 0.0);
        for p in [1.5, 2.0, 3.0] {
            let pair = power_pair(p, 0.0).unwrap();
            let mw = spherical_mean_weights(&pair, &b, &x, &sq).unwrap();
            assert_relative_eq!(mw.v_mean, 1.0, max_relative = 1e-14);
            // |cos|^p has a kink, so the equispaced rule is only algebraically accurate.
            assert_relative_eq!(mw.v_tilde, 1.0 / xi(2, p).unwrap(), max_relative = 1e-5);
            let dm = mean_distance(&b, &x, p, &sq).unwrap();
            let expect = ((p - 1.0) / p).powf(p) / xi(2, p).unwrap() / dm.powf(p);
            assert_relative_eq!(mw.w_mean, expect, max_relative = 1e-12);
        }
    }
}
