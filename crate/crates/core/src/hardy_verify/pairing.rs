use super::{DistributionalMethod, QuadratureConfig, ScalarField, VerifyError};
use crate::geometry::{Domain, Point};
use crate::quadrature::Grid;

/// Margin a support must keep from ∂Ω: 1e-3·δ₀, or 1e-3 times the support
/// size when δ₀ is infinite.
pub(crate) fn support_margin(domain: &Domain, lo: &Point, hi: &Point) -> f64 {
    let d0 = domain.max_distance();
    if d0.is_finite() {
        1e-3 * d0
    } else {
        1e-3 * (hi - lo).norm()
    }
}

/// Radius of the skeleton tube skipped by volume quadrature.
pub(crate) fn skeleton_tube(domain: &Domain) -> f64 {
    let d0 = domain.max_distance();
    1e-6 * if d0.is_finite() { d0 } else { domain.length_scale() }
}

/// Grid over a support box with the domain's anchors.
pub(crate) fn volume_grid(domain: &Domain, lo: &Point, hi: &Point, cfg: &QuadratureConfig) -> Grid {
    Grid::new(domain.dim(), lo, hi, cfg.cells_for(domain.dim()), domain.grid_anchor())
}

/// Refinement for integrands that involve Δd_Ω: cells met by the cut locus,
/// and cells near a singularity s of Δd_Ω until their width h satisfies
/// h ≤ h₀ |c − s| / r* with r* = δ₀/4.
pub(crate) fn refinement<'a>(domain: &'a Domain, grid: &Grid) -> impl Fn(&Point, &Point) -> bool + Sync + 'a {
    let h0 = grid.spacing().norm();
    let singular = domain.laplacian_singularity();
    let r_star = 0.25 * domain.max_distance();
    move |c: &Point, h: &Point| {
        domain.cell_meets_cut_locus(c, h)
            || singular.is_some_and(|s| {
                2.0 * h.norm() * r_star > h0 * (c - s).norm()
            })
    }
}

/// ⟨Δd_Ω, ψ⟩ for a compactly supported ψ.
///
/// `Ibp` evaluates −∫∇d_Ω·∇ψ, skipping a tube of radius 1e-6·δ₀ around the
/// skeleton. `Geometric` evaluates ∫ψ Δd_Ω over the good set minus the
/// cut-locus integral of ψ against the normal density.
pub fn distributional_pairing(
    domain: &Domain,
    psi: &dyn ScalarField,
    cfg: &QuadratureConfig,
    method: DistributionalMethod,
) -> Result<f64, VerifyError> {
    let (lo, hi) = psi.support_box();
    if !psi.support_inside(domain, support_margin(domain, &lo, &hi)) {
        return Err(VerifyError::InvalidTestFunction(
            "support is not compactly inside the domain".into(),
        ));
    }
    let grid = volume_grid(domain, &lo, &hi, cfg);
    let depth = cfg.refine_depth_for(domain.dim());
    let tube = skeleton_tube(domain);
    let refine = refinement(domain, &grid);
    Ok(match method {
        DistributionalMethod::Ibp => {
            let [v] = grid.integrate(refine, depth, |x| {
                if !psi.in_support(x) || !domain.contains(x) || domain.cut_locus_distance(x) < tube {
                    return None;
                }
                let (_, g, _) = domain.local_frame(x);
                Some([-g.dot(&psi.gradient(x))])
            });
            v
        }
        DistributionalMethod::Geometric => {
            let [v] = grid.integrate(refine, depth, |x| {
                if !psi.in_support(x) || !domain.contains(x) {
                    return None;
                }
                let (_, _, lap) = domain.local_frame(x);
                Some([psi.value(x) * lap])
            });
            let safe = |x: &Point| {
                if psi.in_support(x) && domain.contains(x) {
                    psi.value(x)
                } else {
                    0.0
                }
            };
            v - domain.cut_locus_integral(&safe, &lo, &hi, cfg.boundary_nodes)
        }
    })
}
