use super::pairing::volume_grid;
use super::{default_tolerance, IdentityReport, QuadratureConfig, ScalarField, TestFunction, VerifyError};
use crate::bessel::{cp_scalar, BesselPair, PairFamily};
use crate::geometry::{Domain, Point};
use crate::mean_distance::{skeletal_mean, LateralGrid, SkeletalSample, SphereQuadrature};

const V_TILDE: usize = 0;
const V_MEAN: usize = 1;
const W_MEAN: usize = 2;
const CP: usize = 3;
const DIRECTIONAL: usize = 4;

/// The spherical-mean identity
///
/// ∫Ṽ|∇u|^p = ∫W_M|u|^p + ∫∫V(ρ̂_ν)C_p(∂_νu, φ(ρ̂_ν)∂_ν(u/φ(ρ̂_ν))) dσ dx
///            + 2 S_Ω[G(ρ̂_ν)|u|^p],
///
/// where ρ̂_ν = min(ρ_ν, ρ_{−ν}) is the distance to the nearer end of the
/// segment through x in direction ±ν, and the means Ṽ, V_M, W_M are taken
/// with ρ̂_ν. The reference vector for Ṽ is e₁.
///
/// `aux` carries the directional left side ∫∫V(ρ̂_ν)|∂_νu|^p with its
/// residual, and the slack ∫(V_M − Ṽ)|∇u|^p ≥ 0.
pub fn verify_mean_identity(
    pair: &BesselPair,
    domain: &Domain,
    u: &TestFunction,
    sq: &SphereQuadrature,
    cfg: &QuadratureConfig,
) -> Result<IdentityReport, VerifyError> {
    u.validate(domain)?;
    if sq.dim() != domain.dim() {
        return Err(VerifyError::InvalidParameter(format!(
            "sphere quadrature has dimension {}, domain has {}",
            sq.dim(),
            domain.dim()
        )));
    }
    let half_diameter = 0.5 * domain.essential_diameter();
    if !pair.admits(half_diameter) {
        return Err(VerifyError::EssentialDiameterTooLarge {
            r_max: pair.r_max(),
            half_diameter,
        });
    }
    let p = pair.p();
    let e1 = Point::x();
    let cos_p: Vec<f64> = sq.nodes().iter().map(|n| n.dot(&e1).abs().powf(p)).collect();
    let (lo, hi) = u.support_box();
    let grid = volume_grid(domain, &lo, &hi, cfg);
    let v = grid.integrate(
        |_: &Point, _: &Point| false,
        0,
        |x| {
            if !u.in_support(x) || !domain.contains(x) {
                return None;
            }
            let uu = u.value(x);
            let du = u.gradient(x);
            let up = uu.abs().powf(p);
            let gp = du.norm().powf(p);
            let mut acc = [0.0; 5];
            for (k, (nu, w)) in sq.nodes().iter().zip(sq.weights()).enumerate() {
                let fwd = domain.directional_unchecked(x, nu);
                let back = domain.directional_unchecked(x, &sq.nodes()[sq.antipode(k)]);
                let (rho, slope) = if back < fwd { (back, 1.0) } else { (fwd, -1.0) };
                let vv = pair.v(rho);
                let a = nu.dot(&du);
                acc[V_TILDE] += w * vv * cos_p[k];
                acc[V_MEAN] += w * vv;
                acc[W_MEAN] += w * pair.w(rho);
                acc[CP] += w * vv * cp_scalar(a, a - uu * pair.log_derivative(rho) * slope, p);
                acc[DIRECTIONAL] += w * vv * a.abs().powf(p);
            }
            Some([
                acc[V_TILDE] * gp,
                acc[V_MEAN] * gp,
                acc[W_MEAN] * up,
                acc[CP],
                acc[DIRECTIONAL],
            ])
        },
    );
    let lateral = LateralGrid {
        lo,
        hi,
        cells: cfg.lateral_cells,
    };
    let f = |s: &SkeletalSample| {
        if u.in_support(&s.midpoint) {
            pair.boundary_weight(s.half_length) * u.value(&s.midpoint).abs().powf(p)
        } else {
            0.0
        }
    };
    let skeletal = 2.0 * skeletal_mean(domain, &f, sq, &lateral);
    let lambda = match pair.family() {
        PairFamily::Power { lambda, .. } | PairFamily::Lamb { lambda, .. } => Some(*lambda),
        _ => None,
    };
    let mut r = IdentityReport::assemble(
        "mean",
        domain,
        p,
        lambda,
        v[V_TILDE],
        v[W_MEAN],
        v[CP],
        None,
        Some(skeletal),
        None,
        default_tolerance(domain.dim()),
    );
    let dir_res = v[DIRECTIONAL] - v[W_MEAN] - v[CP] - skeletal;
    r.aux.insert("directional_lhs".into(), v[DIRECTIONAL]);
    r.aux.insert("directional_residual".into(), dir_res);
    r.aux.insert(
        "directional_relative_residual".into(),
        super::relative(dir_res, &[v[DIRECTIONAL], v[W_MEAN], v[CP], skeletal]),
    );
    r.aux.insert("v_mean_lhs".into(), v[V_MEAN]);
    r.aux.insert("v_mean_slack".into(), v[V_MEAN] - v[V_TILDE]);
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bessel::{critical_lamb_pair, power_pair};

    #[test]
    fn interval_reduction() {
        let i = Domain::interval(0.0, 2.0).unwrap();
        let u = TestFunction::shifted_bump(&[0.9], 0.7, &[0.5]).unwrap();
        let sq = SphereQuadrature::default_for(1).unwrap();
        for pair in [power_pair(2.0, 0.0).unwrap(), power_pair(3.0, 1.0).unwrap()] {
            let r = verify_mean_identity(&pair, &i, &u, &sq, &QuadratureConfig::default()).unwrap();
            assert!(r.pass, "{r:?}");
        }
    }

    #[test]
    fn short_pair_is_rejected() {
        let b = Domain::ball(&[0.0, 0.0], 1.0).unwrap();
        let u = TestFunction::radial_bump(&[0.4, 0.0], 0.3).unwrap();
        let sq = SphereQuadrature::new(2, 16).unwrap();
        let pair = critical_lamb_pair(0.9).unwrap();
        assert!(matches!(
            verify_mean_identity(&pair, &b, &u, &sq, &QuadratureConfig::default()),
            Err(VerifyError::EssentialDiameterTooLarge { .. })
        ));
    }
}
