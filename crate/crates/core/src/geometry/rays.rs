use super::{orthogonal_basis, Domain, DomainKind, GeometryError, Point};

/// One connected component of a line intersected with Ω, in the line's own
/// parameter `s` (point = base + s ν).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineSegment {
    pub enter: f64,
    pub exit: f64,
}

impl LineSegment {
    pub fn length(&self) -> f64 {
        self.exit - self.enter
    }

    pub fn is_bounded(&self) -> bool {
        self.enter.is_finite() && self.exit.is_finite()
    }

    pub fn mid_parameter(&self) -> Option<f64> {
        self.is_bounded().then(|| 0.5 * (self.enter + self.exit))
    }
}

/// The components of `Ω ∩ {base + s ν}`, ordered by parameter.
#[derive(Debug, Clone, PartialEq)]
pub struct LineSegmentFamily {
    pub direction: Point,
    pub base: Point,
    pub segments: Vec<LineSegment>,
}

impl LineSegmentFamily {
    pub fn at(&self, s: f64) -> Point {
        self.base + self.direction * s
    }

    /// Midpoints m_ℓ of the bounded segments.
    pub fn midpoints(&self) -> Vec<Point> {
        self.segments
            .iter()
            .filter_map(|s| s.mid_parameter().map(|t| self.at(t)))
            .collect()
    }
}

/// Roots of |base + sν − c|² = r², if the line meets the sphere.
fn sphere_chord(base: &Point, nu: &Point, c: &Point, r: f64) -> Option<(f64, f64)> {
    let v = base - c;
    let b = nu.dot(&v);
    let disc = b * b - (v.norm_squared() - r * r);
    if disc < 0.0 {
        return None;
    }
    let q = disc.sqrt();
    Some((-b - q, -b + q))
}

impl Domain {
    pub(crate) fn check_direction(&self, nu: &Point) -> Result<(), GeometryError> {
        let norm = nu.norm();
        let stray = (self.dim..3).any(|i| nu[i] != 0.0);
        if (norm - 1.0).abs() > 1e-10 || stray {
            return Err(GeometryError::InvalidDirection { norm });
        }
        Ok(())
    }

    /// ρ_ν(x): distance from `x` to ∂Ω along the ray in direction ν, or
    /// `+∞` when the ray stays in Ω.
    pub fn directional_distance(&self, x: &Point, nu: &Point) -> Result<f64, GeometryError> {
        if !self.contains(x) {
            return Err(GeometryError::PointOutsideDomain);
        }
        self.check_direction(nu)?;
        Ok(self.directional_unchecked(x, nu))
    }

    pub(crate) fn directional_unchecked(&self, x: &Point, nu: &Point) -> f64 {
        match &self.kind {
            DomainKind::Interval { a, b } => {
                if nu[0] > 0.0 {
                    b - x[0]
                } else {
                    x[0] - a
                }
            }
            DomainKind::Ball { center, radius } => {
                sphere_chord(x, nu, center, *radius).map_or(0.0, |(_, t)| t)
            }
            DomainKind::Annulus {
                center,
                r_in,
                r_out,
            } => {
                let out = sphere_chord(x, nu, center, *r_out).map_or(0.0, |(_, t)| t);
                match sphere_chord(x, nu, center, *r_in) {
                    Some((t1, _)) if t1 > 0.0 => out.min(t1),
                    _ => out,
                }
            }
            DomainKind::Strip { normal, half_width } => {
                let s = x.dot(normal);
                let vn = nu.dot(normal);
                if vn > 0.0 {
                    (half_width - s) / vn
                } else if vn < 0.0 {
                    (-half_width - s) / vn
                } else {
                    f64::INFINITY
                }
            }
            DomainKind::Rectangle { lo, hi } => {
                let mut t = f64::INFINITY;
                for i in 0..2 {
                    if nu[i] > 0.0 {
                        t = t.min((hi[i] - x[i]) / nu[i]);
                    } else if nu[i] < 0.0 {
                        t = t.min((lo[i] - x[i]) / nu[i]);
                    }
                }
                t
            }
            DomainKind::PuncturedBall { center, radius } => {
                let out = sphere_chord(x, nu, center, *radius).map_or(0.0, |(_, t)| t);
                let v = center - x;
                let along = v.dot(nu);
                let off = (v - nu * along).norm();
                if along > 0.0 && off <= 1e-12 * radius {
                    out.min(along)
                } else {
                    out
                }
            }
            DomainKind::ExteriorOfBall { center, radius } => {
                match sphere_chord(x, nu, center, *radius) {
                    Some((t1, _)) if t1 > 0.0 => t1,
                    _ => f64::INFINITY,
                }
            }
            DomainKind::Polygon(p) => {
                let mut t = f64::INFINITY;
                for e in &p.edges {
                    let rate = e.normal.dot(nu);
                    if rate < 0.0 {
                        t = t.min(e.signed_distance(x) / -rate);
                    }
                }
                t
            }
        }
    }

    /// The connected components of Ω along the line through `x'` with
    /// direction ν. `x'` is projected onto ν⊥ first.
    pub fn segments_along_line(
        &self,
        x_perp: &Point,
        nu: &Point,
    ) -> Result<LineSegmentFamily, GeometryError> {
        self.check_direction(nu)?;
        let base = x_perp - nu * x_perp.dot(nu);
        Ok(LineSegmentFamily {
            direction: *nu,
            base,
            segments: self.segments_unchecked(&base, nu),
        })
    }

    pub(crate) fn segments_unchecked(&self, base: &Point, nu: &Point) -> Vec<LineSegment> {
        let seg = |enter: f64, exit: f64| LineSegment { enter, exit };
        let clip = |lo: f64, hi: f64| if lo < hi { vec![seg(lo, hi)] } else { Vec::new() };
        match &self.kind {
            DomainKind::Interval { a, b } => {
                if nu[0] > 0.0 {
                    vec![seg(*a, *b)]
                } else {
                    vec![seg(-b, -a)]
                }
            }
            DomainKind::Ball { center, radius } => match sphere_chord(base, nu, center, *radius) {
                Some((s1, s2)) if s1 < s2 => vec![seg(s1, s2)],
                _ => Vec::new(),
            },
            DomainKind::Annulus {
                center,
                r_in,
                r_out,
            } => match sphere_chord(base, nu, center, *r_out) {
                Some((s1, s2)) if s1 < s2 => match sphere_chord(base, nu, center, *r_in) {
                    Some((q1, q2)) => vec![seg(s1, q1), seg(q2, s2)],
                    None => vec![seg(s1, s2)],
                },
                _ => Vec::new(),
            },
            DomainKind::Strip { normal, half_width } => {
                let s = base.dot(normal);
                let vn = nu.dot(normal);
                if vn.abs() < 1e-15 {
                    if s.abs() < *half_width {
                        vec![seg(f64::NEG_INFINITY, f64::INFINITY)]
                    } else {
                        Vec::new()
                    }
                } else {
                    let t1 = (-half_width - s) / vn;
                    let t2 = (half_width - s) / vn;
                    clip(t1.min(t2), t1.max(t2))
                }
            }
            DomainKind::Rectangle { lo, hi } => {
                let (mut a, mut b) = (f64::NEG_INFINITY, f64::INFINITY);
                for i in 0..2 {
                    if nu[i] == 0.0 {
                        if base[i] <= lo[i] || base[i] >= hi[i] {
                            return Vec::new();
                        }
                    } else {
                        let t1 = (lo[i] - base[i]) / nu[i];
                        let t2 = (hi[i] - base[i]) / nu[i];
                        a = a.max(t1.min(t2));
                        b = b.min(t1.max(t2));
                    }
                }
                clip(a, b)
            }
            DomainKind::PuncturedBall { center, radius } => {
                match sphere_chord(base, nu, center, *radius) {
                    Some((s1, s2)) if s1 < s2 => {
                        let v = center - base;
                        let along = v.dot(nu);
                        if (v - nu * along).norm() <= 1e-12 * radius {
                            vec![seg(s1, along), seg(along, s2)]
                        } else {
                            vec![seg(s1, s2)]
                        }
                    }
                    _ => Vec::new(),
                }
            }
            DomainKind::ExteriorOfBall { center, radius } => {
                match sphere_chord(base, nu, center, *radius) {
                    Some((s1, s2)) => vec![seg(f64::NEG_INFINITY, s1), seg(s2, f64::INFINITY)],
                    None => vec![seg(f64::NEG_INFINITY, f64::INFINITY)],
                }
            }
            DomainKind::Polygon(p) => {
                let (mut a, mut b) = (f64::NEG_INFINITY, f64::INFINITY);
                for e in &p.edges {
                    let d0 = e.signed_distance(base);
                    let rate = e.normal.dot(nu);
                    if rate.abs() < 1e-300 {
                        if d0 <= 0.0 {
                            return Vec::new();
                        }
                    } else {
                        let t = -d0 / rate;
                        if rate > 0.0 {
                            a = a.max(t);
                        } else {
                            b = b.min(t);
                        }
                    }
                }
                clip(a, b)
            }
        }
    }

    /// Samples the ν-skeleton Σ_ν: midpoints of bounded segments over a
    /// lateral midpoint grid of `cells` cells per axis on `[-half_extent,
    /// half_extent]` around `origin` in ν⊥.
    pub fn nu_skeleton(
        &self,
        nu: &Point,
        origin: &Point,
        half_extent: f64,
        cells: usize,
    ) -> Result<Vec<Point>, GeometryError> {
        self.check_direction(nu)?;
        let basis = orthogonal_basis(nu, self.dim);
        let h = 2.0 * half_extent / cells as f64;
        let coord = |k: usize| -half_extent + (k as f64 + 0.5) * h;
        let mut out = Vec::new();
        let mut visit = |xp: Point| {
            let fam = self.segments_along_line(&xp, nu).expect("direction checked");
            out.extend(fam.midpoints());
        };
        match basis.len() {
            0 => visit(*origin),
            1 => (0..cells).for_each(|i| visit(origin + basis[0] * coord(i))),
            _ => {
                for i in 0..cells {
                    for j in 0..cells {
                        visit(origin + basis[0] * coord(i) + basis[1] * coord(j));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Exit distance along a ray found only from the membership predicate:
    /// march in steps of `step` until outside, then bisect 80 times. Returns
    /// `None` if the ray is still inside at `t_max`.
    pub fn ray_exit_bisection(&self, x: &Point, nu: &Point, step: f64, t_max: f64) -> Option<f64> {
        let mut lo = 0.0;
        let mut hi = step;
        while self.contains(&(x + nu * hi)) {
            lo = hi;
            hi += step;
            if hi > t_max {
                return None;
            }
        }
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if self.contains(&(x + nu * mid)) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Some(0.5 * (lo + hi))
    }
}
