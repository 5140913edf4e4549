use super::pairing::{refinement, skeleton_tube, volume_grid};
use super::{
    default_tolerance, DistributionalTerm, IdentityReport, QuadratureConfig,
    ScalarField, TestFunction, VerifyError,
};
use crate::bessel::{cp_scalar, cp_vec3, j0, j0_prime, lamb_constant_for, lamb_pair, BesselPair, PairFamily};
use crate::geometry::{Domain, DomainKind, Point};

/// Per-point contributions accumulated by one quadrature pass.
const LHS_FULL: usize = 0;
const LHS_DIR: usize = 1;
const WEIGHT: usize = 2;
const CP_FULL: usize = 3;
const CP_DIR: usize = 4;
const IBP: usize = 5;
const GEO: usize = 6;

pub(crate) struct DomainTerms {
    pub v: [f64; 7],
    pub cut: f64,
}

fn pair_lambda(pair: &BesselPair) -> Option<f64> {
    match pair.family() {
        PairFamily::Power { lambda, .. } | PairFamily::Lamb { lambda, .. } => Some(*lambda),
        _ => None,
    }
}

/// Requires the pair to cover every value of d_Ω the test function sees.
fn check_cover(pair: &BesselPair, domain: &Domain, u: &TestFunction) -> Result<(), VerifyError> {
    let needed = if domain.is_bounded() {
        domain.max_distance()
    } else {
        let (lo, hi) = u.support_box();
        let c = 0.5 * (lo + hi);
        domain.distance(&c)? + 0.5 * (hi - lo).norm()
    };
    if !pair.admits(needed) {
        return Err(VerifyError::PairIntervalTooShort {
            r_max: pair.r_max(),
            needed,
        });
    }
    Ok(())
}

fn abs_pow_grad(u: f64, du: &Point, p: f64) -> Point {
    if u == 0.0 {
        Point::zeros()
    } else {
        du * (p * u.abs().powf(p - 2.0) * u)
    }
}

/// One pass over the support of `u` collecting every volume term, plus the
/// cut-locus integral of ψ = G(d)|u|^p.
pub(crate) fn domain_terms(
    pair: &BesselPair,
    domain: &Domain,
    u: &TestFunction,
    cfg: &QuadratureConfig,
) -> DomainTerms {
    let p = pair.p();
    let (lo, hi) = u.support_box();
    let grid = volume_grid(domain, &lo, &hi, cfg);
    let tube = skeleton_tube(domain);
    let v = grid.integrate(
        refinement(domain, &grid),
        cfg.refine_depth_for(domain.dim()),
        |x| {
            if !u.in_support(x) || !domain.contains(x) {
                return None;
            }
            let (d, g, lap) = domain.local_frame(x);
            if domain.cut_locus_distance(x) < tube {
                // ψΔd is integrable across the tube; the other columns skip it.
                let mut out = [0.0; 7];
                out[GEO] = pair.boundary_weight(d) * u.value(x).abs().powf(p) * lap;
                return Some(out);
            }
            let uu = u.value(x);
            let du = u.gradient(x);
            let vv = pair.v(d);
            let q = pair.log_derivative(d);
            let gw = pair.boundary_weight(d);
            let up = uu.abs().powf(p);
            let a = g.dot(&du);
            let mut out = [0.0; 7];
            out[LHS_FULL] = vv * du.norm().powf(p);
            out[LHS_DIR] = vv * a.abs().powf(p);
            out[WEIGHT] = pair.w(d) * up;
            out[CP_FULL] = vv * cp_vec3(&du, &(du - g * (uu * q)), p);
            out[CP_DIR] = vv * cp_scalar(a, a - uu * q, p);
            out[IBP] = if up == 0.0 && gw == 0.0 {
                0.0
            } else {
                pair.boundary_weight_derivative(d) * up + gw * g.dot(&abs_pow_grad(uu, &du, p))
            };
            out[GEO] = gw * up * lap;
            Some(out)
        },
    );
    let psi = |x: &Point| {
        if u.in_support(x) && domain.contains(x) {
            let d = domain.local_frame(x).0;
            pair.boundary_weight(d) * u.value(x).abs().powf(p)
        } else {
            0.0
        }
    };
    let cut = domain.cut_locus_integral(&psi, &lo, &hi, cfg.boundary_nodes);
    DomainTerms { v, cut }
}

fn report_from_terms(
    identity: &str,
    pair: &BesselPair,
    domain: &Domain,
    t: &DomainTerms,
    directional: bool,
    cfg: &QuadratureConfig,
) -> IdentityReport {
    let dist = DistributionalTerm {
        ibp_value: t.v[IBP],
        geometric_value: Some(-(t.v[GEO] - t.cut)),
        method_used: cfg.method,
    };
    let (lhs, cp) = if directional {
        (t.v[LHS_DIR], t.v[CP_DIR])
    } else {
        (t.v[LHS_FULL], t.v[CP_FULL])
    };
    let mut r = IdentityReport::assemble(
        identity,
        domain,
        pair.p(),
        pair_lambda(pair),
        lhs,
        t.v[WEIGHT],
        cp,
        Some(dist),
        None,
        None,
        default_tolerance(domain.dim()),
    );
    r.aux.insert("lhs_full".into(), t.v[LHS_FULL]);
    r.aux.insert("lhs_directional".into(), t.v[LHS_DIR]);
    r
}

/// The one-dimensional identity on an interval (a, b) with d(t) = min(t−a, b−t):
///
/// ∫V(d)|u′|^p = ∫W(d)|u|^p + ∫V(d)C_p(u′, φ(d)(u/φ(d))′) + 2G(R)|u((a+b)/2)|^p,
///
/// with R = (b−a)/2.
pub fn verify_1d(
    pair: &BesselPair,
    domain: &Domain,
    u: &TestFunction,
    cfg: &QuadratureConfig,
) -> Result<IdentityReport, VerifyError> {
    let DomainKind::Interval { a, b } = *domain.kind() else {
        return Err(VerifyError::InvalidParameter("verify_1d needs an interval".into()));
    };
    u.validate(domain)?;
    let half = 0.5 * (b - a);
    if !pair.admits(half) {
        return Err(VerifyError::PairIntervalTooShort {
            r_max: pair.r_max(),
            needed: half,
        });
    }
    let t = domain_terms(pair, domain, u, cfg);
    let mid = Point::new(0.5 * (a + b), 0.0, 0.0);
    let boundary = 2.0 * pair.boundary_weight(half) * u.value(&mid).abs().powf(pair.p());
    let mut r = IdentityReport::assemble(
        "one-dimensional",
        domain,
        pair.p(),
        pair_lambda(pair),
        t.v[LHS_FULL],
        t.v[WEIGHT],
        t.v[CP_FULL],
        None,
        None,
        Some(boundary),
        default_tolerance(1),
    );
    r.aux.insert("distributional_ibp".into(), t.v[IBP]);
    Ok(r)
}

/// The identity on a general domain with the full gradient:
///
/// ∫V(d)|∇u|^p = ∫W(d)|u|^p + ∫V(d)C_p(∇u, φ(d)∇(u/φ(d))) − ⟨Δd, G(d)|u|^p⟩.
pub fn verify_domain_full(
    pair: &BesselPair,
    domain: &Domain,
    u: &TestFunction,
    cfg: &QuadratureConfig,
) -> Result<IdentityReport, VerifyError> {
    u.validate(domain)?;
    check_cover(pair, domain, u)?;
    let t = domain_terms(pair, domain, u, cfg);
    Ok(report_from_terms("full", pair, domain, &t, false, cfg))
}

/// As [`verify_domain_full`] with ∇u replaced by its component along ∇d_Ω
/// in the gradient term and the remainder.
pub fn verify_domain_directional(
    pair: &BesselPair,
    domain: &Domain,
    u: &TestFunction,
    cfg: &QuadratureConfig,
) -> Result<IdentityReport, VerifyError> {
    u.validate(domain)?;
    check_cover(pair, domain, u)?;
    let t = domain_terms(pair, domain, u, cfg);
    Ok(report_from_terms("directional", pair, domain, &t, true, cfg))
}

/// φ′/φ of the Lamb pair with parameters (λ, λ₀(λ), R):
/// (λ+1)/(2r) + (λ₀/R) J₀′(λ₀r/R)/J₀(λ₀r/R).
pub fn lamb_bracket(lambda: f64, r: f64, radius: f64) -> f64 {
    let k = lamb_constant_for(lambda) / radius;
    0.5 * (lambda + 1.0) / r + k * j0_prime(k * r) / j0(k * r)
}

/// The identity for the Lamb pair (λ, λ₀(λ), R) with R the inradius, whose
/// weight term carries the mass term (λ₀²/R²)∫|u|²/d^λ. Reports the mass
/// term and the smallest sampled bracket value on (0, R) in `aux`.
pub fn verify_avk_wirths(
    lambda: f64,
    domain: &Domain,
    u: &TestFunction,
    cfg: &QuadratureConfig,
) -> Result<IdentityReport, VerifyError> {
    if !(lambda >= 0.0 && lambda.is_finite()) {
        return Err(VerifyError::InvalidParameter(format!("λ = {lambda} must be ≥ 0")));
    }
    let radius = domain.inradius();
    if !radius.is_finite() {
        return Err(VerifyError::InfiniteInradius);
    }
    let big = lamb_constant_for(lambda);
    let pair = lamb_pair(lambda, big, radius)?;
    let mut r = if domain.dim() == 1 {
        verify_1d(&pair, domain, u, cfg)?
    } else {
        verify_domain_full(&pair, domain, u, cfg)?
    };
    r.identity = "avkhadiev-wirths".into();
    let (lo, hi) = u.support_box();
    let [mass] = volume_grid(domain, &lo, &hi, cfg).integrate(
        |c: &Point, h: &Point| domain.cell_meets_cut_locus(c, h),
        cfg.refine_depth_for(domain.dim()),
        |x| {
            if !u.in_support(x) || !domain.contains(x) {
                return None;
            }
            let d = domain.local_frame(x).0;
            Some([u.value(x).powi(2) * d.powf(-lambda)])
        },
    );
    r.aux.insert("mass_term".into(), (big / radius).powi(2) * mass);
    let bracket_min = (0..1000)
        .map(|i| lamb_bracket(lambda, radius * (i as f64 + 0.5) / 1000.0, radius))
        .fold(f64::INFINITY, f64::min);
    r.aux.insert("bracket_min".into(), bracket_min);
    Ok(r)
}
