use super::pairing::volume_grid;
use super::{relative, IdentityReport, QuadratureConfig, ScalarField, TestFunction, VerifyError};
use crate::geometry::{Domain, Point};

/// Checks the two change-of-metric identities for g = d^{2/(N−2)}|dx|²,
/// i.e. A = d^{1/(N−2)}, ∇_g v = A^{−2}∇v and dV_g = A^N dx:
///
/// ∫|∇_g v|²_g dV_g = ∫d|∇v|² dx and ∫|v|^{2*} dV_g = ∫|d^{1/2}v|^{2*} dx,
///
/// with 2* = 2N/(N−2). The first pair fills the main fields; the second goes
/// to `aux` and must also pass.
pub fn verify_conformal_bookkeeping(
    domain: &Domain,
    v: &TestFunction,
    cfg: &QuadratureConfig,
) -> Result<IdentityReport, VerifyError> {
    let n = domain.dim();
    if n <= 2 {
        return Err(VerifyError::DimensionTooSmall(n));
    }
    v.validate(domain)?;
    let nf = n as f64;
    let crit = 2.0 * nf / (nf - 2.0);
    let (lo, hi) = v.support_box();
    let [lhs1, rhs1, lhs2, rhs2] = volume_grid(domain, &lo, &hi, cfg).integrate(
        |_: &Point, _: &Point| false,
        0,
        |x| {
            if !v.in_support(x) || !domain.contains(x) {
                return None;
            }
            let d = domain.local_frame(x).0;
            let a = d.powf(1.0 / (nf - 2.0));
            let vol = a.powf(nf);
            let grad = v.gradient(x);
            let grad_g = grad * a.powi(-2);
            let norm_g2 = a * a * grad_g.norm_squared();
            let val = v.value(x);
            Some([
                norm_g2 * vol,
                d * grad.norm_squared(),
                val.abs().powf(crit) * vol,
                (d.sqrt() * val).abs().powf(crit),
            ])
        },
    );
    let tol = 1e-6;
    let mut r = IdentityReport::assemble(
        "conformal", domain, 2.0, None, lhs1, rhs1, 0.0, None, None, None, tol,
    );
    let res2 = lhs2 - rhs2;
    let rel2 = relative(res2, &[lhs2, rhs2]);
    r.aux.insert("volume_lhs".into(), lhs2);
    r.aux.insert("volume_rhs".into(), rhs2);
    r.aux.insert("volume_residual".into(), res2);
    r.aux.insert("volume_relative_residual".into(), rel2);
    r.pass = r.pass && rel2 < tol;
    Ok(r)
}

/// −Δd_Ω(x) + (N−1)(∇d_Ω(x)·x)/|x|² at a point of the good set.
pub fn superharmonic_condition(domain: &Domain, x: &Point) -> Result<f64, VerifyError> {
    let lap = domain.laplacian_distance_good(x)?;
    let g = domain.grad_distance(x)?;
    let n1 = (domain.dim() - 1) as f64;
    Ok(-lap + n1 * g.dot(x) / x.norm_squared())
}
