use std::f64::consts::{PI, TAU};

use super::{orthogonal_basis, ConvexPolygon, Domain, DomainKind, Point};
use crate::quadrature::{gauss_legendre, integrate_1d, PANEL_ORDER};

/// Closed-form description of the cut locus (closure of the skeleton).
#[derive(Debug, Clone, PartialEq)]
pub enum CutLocusDescriptor {
    Point(Point),
    Sphere { center: Point, radius: f64 },
    /// `{x : x·normal = offset}`.
    Plane { normal: Point, offset: f64 },
    SegmentSet(Vec<(Point, Point)>),
    Empty,
}

impl Domain {
    pub fn cut_locus(&self) -> CutLocusDescriptor {
        match &self.kind {
            DomainKind::Interval { a, b } => {
                CutLocusDescriptor::Point(Point::new(0.5 * (a + b), 0.0, 0.0))
            }
            DomainKind::Ball { center, .. } => CutLocusDescriptor::Point(*center),
            DomainKind::Annulus {
                center,
                r_in,
                r_out,
            } => CutLocusDescriptor::Sphere {
                center: *center,
                radius: 0.5 * (r_in + r_out),
            },
            DomainKind::PuncturedBall { center, radius } => CutLocusDescriptor::Sphere {
                center: *center,
                radius: 0.5 * radius,
            },
            DomainKind::Strip { normal, .. } => CutLocusDescriptor::Plane {
                normal: *normal,
                offset: 0.0,
            },
            DomainKind::Rectangle { .. } | DomainKind::Polygon(_) => {
                CutLocusDescriptor::SegmentSet(self.as_polygon().unwrap().medial_segments())
            }
            DomainKind::ExteriorOfBall { .. } => CutLocusDescriptor::Empty,
        }
    }

    fn as_polygon(&self) -> Option<ConvexPolygon> {
        match &self.kind {
            DomainKind::Rectangle { lo, hi } => Some(
                ConvexPolygon::new(&[[lo[0], lo[1]], [hi[0], lo[1]], [hi[0], hi[1]], [lo[0], hi[1]]])
                    .expect("rectangle is convex"),
            ),
            DomainKind::Polygon(p) => Some(p.clone()),
            _ => None,
        }
    }

    /// Cut distance c(σ) for a boundary point σ: how far the inward normal
    /// segment from σ stays minimizing. `None` if σ is not on ∂Ω.
    pub fn cut_distance_at(&self, sigma: &Point) -> Option<f64> {
        let tol = 1e-9 * self.length_scale();
        match &self.kind {
            DomainKind::Interval { a, b } => {
                ((sigma[0] - a).abs() < tol || (sigma[0] - b).abs() < tol).then(|| 0.5 * (b - a))
            }
            DomainKind::Ball { center, radius } => {
                ((sigma - center).norm() - radius).abs().lt(&tol).then_some(*radius)
            }
            DomainKind::Annulus {
                center,
                r_in,
                r_out,
            } => {
                let r = (sigma - center).norm();
                ((r - r_in).abs() < tol || (r - r_out).abs() < tol).then(|| 0.5 * (r_out - r_in))
            }
            DomainKind::PuncturedBall { center, radius } => {
                let r = (sigma - center).norm();
                (r < tol || (r - radius).abs() < tol).then(|| 0.5 * radius)
            }
            DomainKind::Strip { normal, half_width } => {
                (sigma.dot(normal).abs() - half_width).abs().lt(&tol).then_some(*half_width)
            }
            DomainKind::ExteriorOfBall { center, radius } => ((sigma - center).norm() - radius)
                .abs()
                .lt(&tol)
                .then_some(f64::INFINITY),
            DomainKind::Rectangle { .. } | DomainKind::Polygon(_) => {
                let p = self.as_polygon().unwrap();
                p.edges.iter().enumerate().find_map(|(i, e)| {
                    let s = (sigma - e.start).dot(&e.tangent());
                    let off = e.signed_distance(sigma).abs();
                    (off < tol && s >= -tol && s <= e.length + tol)
                        .then(|| p.cut_distance(i, s.clamp(0.0, e.length)))
                })
            }
        }
    }

    /// Jacobian θ(r, σ) of the normal coordinates x = σ + r n(σ), relative to
    /// dr dH^{N−1}(σ). For the puncture σ = center it is taken relative to
    /// the unit-sphere measure of directions.
    pub fn normal_density(&self, r: f64, sigma: &Point) -> f64 {
        let m = (self.dim as i32) - 1;
        match &self.kind {
            DomainKind::Ball { radius, .. } => ((radius - r) / radius).max(0.0).powi(m),
            DomainKind::Annulus {
                center,
                r_in,
                r_out,
            } => {
                let rs = (sigma - center).norm();
                if (rs - r_in).abs() < (rs - r_out).abs() {
                    ((r_in + r) / r_in).powi(m)
                } else {
                    ((r_out - r) / r_out).max(0.0).powi(m)
                }
            }
            DomainKind::PuncturedBall { center, radius } => {
                if (sigma - center).norm() < 0.5 * radius {
                    r.powi(m)
                } else {
                    ((radius - r) / radius).max(0.0).powi(m)
                }
            }
            DomainKind::ExteriorOfBall { radius, .. } => ((radius + r) / radius).powi(m),
            _ => 1.0,
        }
    }

    /// ∫_{∂Ω} ψ(σ + c(σ) n(σ)) θ(c(σ), σ) dH^{N−1}(σ): the mass of the
    /// singular part of −Δd_Ω tested against ψ. `lo`/`hi` bound the support
    /// of ψ; `nodes` sets the resolution of each boundary quadrature.
    pub fn cut_locus_integral(
        &self,
        psi: &(dyn Fn(&Point) -> f64 + Sync),
        lo: &Point,
        hi: &Point,
        nodes: usize,
    ) -> f64 {
        let n = self.dim;
        match &self.kind {
            DomainKind::Interval { a, b } => 2.0 * psi(&Point::new(0.5 * (a + b), 0.0, 0.0)),
            DomainKind::Ball { center, radius } => {
                let theta = self.normal_density(*radius, &(center + Point::x() * *radius));
                if theta == 0.0 {
                    return 0.0;
                }
                theta * sphere_integral_in_box(n, center, *radius, nodes, lo, hi, |x| psi(x))
            }
            DomainKind::Annulus {
                center,
                r_in,
                r_out,
            } => {
                let c = 0.5 * (r_out - r_in);
                let mid = 0.5 * (r_in + r_out);
                let inner = ((r_in + c) / r_in).powi(n as i32 - 1);
                let outer = ((r_out - c) / r_out).powi(n as i32 - 1);
                // Both sides land on the middle sphere; integrate over the
                // boundary spheres with their own surface measure.
                let on_mid = |sph_r: f64| {
                    sphere_integral_in_box(n, center, sph_r, nodes, lo, hi, |y| {
                        let e = (y - center) / sph_r;
                        psi(&(center + e * mid))
                    })
                };
                inner * on_mid(*r_in) + outer * on_mid(*r_out)
            }
            DomainKind::PuncturedBall { center, radius } => {
                let c = 0.5 * radius;
                let outer = ((radius - c) / radius).powi(n as i32 - 1);
                let outer_part = outer
                    * sphere_integral_in_box(n, center, *radius, nodes, lo, hi, |y| {
                        let e = (y - center) / *radius;
                        psi(&(center + e * c))
                    });
                let puncture_part = c.powi(n as i32 - 1)
                    * sphere_integral_in_box(n, center, 1.0, nodes, lo, hi, |e| psi(&(center + (e - center) * c)));
                outer_part + puncture_part
            }
            DomainKind::Strip { normal, .. } => {
                let basis = orthogonal_basis(normal, n);
                let ranges: Vec<(f64, f64)> = basis
                    .iter()
                    .map(|t| box_projection(lo, hi, t, n))
                    .collect();
                2.0 * plane_integral(&basis, &ranges, nodes, psi)
            }
            DomainKind::Rectangle { .. } | DomainKind::Polygon(_) => {
                let p = self.as_polygon().unwrap();
                let panels = (nodes / 16).max(4);
                (0..p.edges.len())
                    .map(|i| {
                        let e = &p.edges[i];
                        let bp = p.cut_breakpoints(i);
                        let t = e.tangent();
                        integrate_1d(
                            |s| {
                                let c = p.cut_distance(i, s);
                                psi(&(e.start + t * s + e.normal * c))
                            },
                            &bp,
                            panels,
                        )
                    })
                    .sum()
            }
            DomainKind::ExteriorOfBall { .. } => 0.0,
        }
    }
}

/// Range of `t·x` over the box `[lo, hi]` (first `dim` coordinates).
fn box_projection(lo: &Point, hi: &Point, t: &Point, dim: usize) -> (f64, f64) {
    let (mut a, mut b) = (0.0, 0.0);
    for i in 0..dim {
        let (u, v) = (t[i] * lo[i], t[i] * hi[i]);
        a += u.min(v);
        b += u.max(v);
    }
    (a, b)
}

fn plane_integral(
    basis: &[Point],
    ranges: &[(f64, f64)],
    nodes: usize,
    psi: &(dyn Fn(&Point) -> f64 + Sync),
) -> f64 {
    let panels = (nodes / 16).max(4);
    match basis.len() {
        1 => integrate_1d(|s| psi(&(basis[0] * s)), &[ranges[0].0, ranges[0].1], panels),
        _ => {
            let p2 = (panels / 4).max(4);
            integrate_1d(
                |s| {
                    integrate_1d(
                        |t| psi(&(basis[0] * s + basis[1] * t)),
                        &[ranges[1].0, ranges[1].1],
                        p2,
                    )
                },
                &[ranges[0].0, ranges[0].1],
                p2,
            )
        }
    }
}

/// Angular interval seen from `center` that covers the box `[lo, hi]` in
/// the plane, or `None` when the box surrounds the center.
fn angular_window(center: &Point, lo: &Point, hi: &Point) -> Option<(f64, f64)> {
    if (0..2).all(|a| lo[a] <= center[a] && center[a] <= hi[a]) {
        return None;
    }
    let mid = 0.5 * (lo + hi) - center;
    let base = mid[1].atan2(mid[0]);
    let (mut a, mut b) = (0.0f64, 0.0f64);
    for corner in [(lo[0], lo[1]), (hi[0], lo[1]), (lo[0], hi[1]), (hi[0], hi[1])] {
        let t = (corner.1 - center[1]).atan2(corner.0 - center[0]) - base;
        let t = (t + PI).rem_euclid(TAU) - PI;
        a = a.min(t);
        b = b.max(t);
    }
    Some((base + a, base + b))
}

/// As [`sphere_integral`] for an `f` supported in the cone from `center`
/// over the box `[lo, hi]`. In the plane only the arc under the box is
/// integrated, with Gauss–Legendre panels.
pub(crate) fn sphere_integral_in_box(
    dim: usize,
    center: &Point,
    r: f64,
    nodes: usize,
    lo: &Point,
    hi: &Point,
    f: impl Fn(&Point) -> f64,
) -> f64 {
    match (dim, angular_window(center, lo, hi)) {
        (2, Some((a, b))) => {
            let panels = (nodes / PANEL_ORDER).max(4);
            r * integrate_1d(|t| f(&(center + Point::new(t.cos(), t.sin(), 0.0) * r)), &[a, b], panels)
        }
        _ => sphere_integral(dim, center, r, nodes, f),
    }
}

/// ∫ over the sphere |y − c| = r in R^dim (dim 2 or 3) with surface measure.
/// Trapezoid in the azimuth, Gauss–Legendre in the polar cosine.
pub(crate) fn sphere_integral(
    dim: usize,
    center: &Point,
    r: f64,
    nodes: usize,
    f: impl Fn(&Point) -> f64,
) -> f64 {
    match dim {
        2 => {
            let h = TAU / nodes as f64;
            let s: f64 = (0..nodes)
                .map(|k| {
                    let t = k as f64 * h;
                    f(&(center + Point::new(t.cos(), t.sin(), 0.0) * r))
                })
                .sum();
            s * h * r
        }
        3 => {
            let n_phi = (nodes / 8).max(16);
            let n_z = (nodes / 16).max(8);
            let (zn, zw) = gauss_legendre(16);
            let panels = n_z.div_ceil(16).max(1);
            let hz = 2.0 / panels as f64;
            let hphi = TAU / n_phi as f64;
            let mut total = 0.0;
            for p in 0..panels {
                let z0 = -1.0 + p as f64 * hz;
                for (x, w) in zn.iter().zip(zw.iter()) {
                    let z = z0 + 0.5 * hz * (x + 1.0);
                    let rho = (1.0 - z * z).max(0.0).sqrt();
                    let ring: f64 = (0..n_phi)
                        .map(|k| {
                            let t = k as f64 * hphi;
                            f(&(center + Point::new(rho * t.cos(), rho * t.sin(), z) * r))
                        })
                        .sum();
                    total += 0.5 * hz * w * ring * hphi;
                }
            }
            total * r * r
        }
        _ => {
            // S⁰: two points, counting measure.
            f(&(center + Point::x() * r)) + f(&(center - Point::x() * r))
        }
    }
}

/// Surface area of the unit sphere S^{dim−1}.
#[allow(dead_code)]
pub(crate) fn unit_sphere_area(dim: usize) -> f64 {
    match dim {
        1 => 2.0,
        2 => TAU,
        _ => 4.0 * PI,
    }
}
