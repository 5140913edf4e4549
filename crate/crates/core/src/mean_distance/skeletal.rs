use rayon::prelude::*;

use super::SphereQuadrature;
use crate::geometry::{orthogonal_basis, Domain, Point};
use crate::quadrature::compensated_sum;

/// What the integrand of a skeletal mean sees at one segment midpoint.
#[derive(Debug, Clone, Copy)]
pub struct SkeletalSample {
    pub direction: Point,
    /// Midpoint m_ℓ of the segment.
    pub midpoint: Point,
    /// Half the segment length, i.e. ρ_ν(m_ℓ).
    pub half_length: f64,
}

/// Lateral midpoint grid over the projection of a box onto ν⊥.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LateralGrid {
    pub lo: Point,
    pub hi: Point,
    pub cells: usize,
}

/// Range of `t·x` over the box `[lo, hi]`.
fn projection(lo: &Point, hi: &Point, t: &Point) -> (f64, f64) {
    let (mut a, mut b) = (0.0, 0.0);
    for i in 0..3 {
        let (u, v) = (t[i] * lo[i], t[i] * hi[i]);
        a += u.min(v);
        b += u.max(v);
    }
    (a, b)
}

/// S_Ω[f] = ∫_{S^{N−1}} ∫_{ν⊥} Σ_ℓ f(m_ℓ) dx′ dσ(ν), summing over the
/// bounded segments of Ω along each line. Unbounded segments have no
/// midpoint and contribute nothing.
pub fn skeletal_mean(
    domain: &Domain,
    f: &(dyn Fn(&SkeletalSample) -> f64 + Sync),
    sq: &SphereQuadrature,
    lateral: &LateralGrid,
) -> f64 {
    let per_node: Vec<f64> = sq
        .nodes()
        .par_iter()
        .map(|nu| {
            let basis = orthogonal_basis(nu, domain.dim());
            let line_sum = |x_perp: Point| -> f64 {
                domain
                    .segments_unchecked(&x_perp, nu)
                    .iter()
                    .filter_map(|s| {
                        s.mid_parameter().map(|t| SkeletalSample {
                            direction: *nu,
                            midpoint: x_perp + nu * t,
                            half_length: 0.5 * s.length(),
                        })
                    })
                    .map(|sample| f(&sample))
                    .sum()
            };
            let n = lateral.cells;
            match basis.len() {
                0 => line_sum(Point::zeros()),
                1 => {
                    let (a, b) = projection(&lateral.lo, &lateral.hi, &basis[0]);
                    let h = (b - a) / n as f64;
                    h * compensated_sum(
                        (0..n).map(|i| line_sum(basis[0] * (a + (i as f64 + 0.5) * h))),
                    )
                }
                _ => {
                    let (a0, b0) = projection(&lateral.lo, &lateral.hi, &basis[0]);
                    let (a1, b1) = projection(&lateral.lo, &lateral.hi, &basis[1]);
                    let (h0, h1) = ((b0 - a0) / n as f64, (b1 - a1) / n as f64);
                    h0 * h1
                        * compensated_sum((0..n * n).map(|ij| {
                            let (i, j) = (ij / n, ij % n);
                            line_sum(
                                basis[0] * (a0 + (i as f64 + 0.5) * h0)
                                    + basis[1] * (a1 + (j as f64 + 0.5) * h1),
                            )
                        }))
                }
            }
        })
        .collect();
    compensated_sum(per_node.iter().zip(sq.weights()).map(|(v, w)| v * w))
}
