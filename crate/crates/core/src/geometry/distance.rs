use super::{Domain, DomainKind, GeometryError, Point, SKELETON_TOL};

/// Curvature type of the boundary piece a candidate distance refers to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum Piece {
    Flat,
    /// Sphere with principal curvature `k` (negative when Ω lies inside).
    Sphere(f64),
    /// An isolated boundary point (the puncture).
    Point,
}

/// Distance from `x` to one smooth boundary piece, with the local data
/// needed for gradients and curvature.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Candidate {
    pub dist: f64,
    pub foot: Point,
    /// Gradient of this candidate distance at `x`.
    pub grad: Point,
    pub piece: Piece,
}

/// The near set N(x) of an interior point.
#[derive(Debug, Clone, PartialEq)]
pub enum NearSet {
    Points(Vec<Point>),
    /// Every point of a sphere is a near point (the center of a ball).
    Sphere { center: Point, radius: f64 },
}

impl NearSet {
    pub fn len_hint(&self) -> usize {
        match self {
            NearSet::Points(p) => p.len(),
            NearSet::Sphere { .. } => usize::MAX,
        }
    }
}

fn unit_or_zero(v: Point) -> Point {
    let n = v.norm();
    if n > 0.0 {
        v / n
    } else {
        Point::zeros()
    }
}

impl Domain {
    /// All local distance candidates at `x`; `d_Ω` is their minimum and the
    /// skeleton is where the two smallest coincide.
    pub(crate) fn candidates(&self, x: &Point) -> Vec<Candidate> {
        match &self.kind {
            DomainKind::Interval { a, b } => vec![
                Candidate {
                    dist: x[0] - a,
                    foot: Point::new(*a, 0.0, 0.0),
                    grad: Point::x(),
                    piece: Piece::Flat,
                },
                Candidate {
                    dist: b - x[0],
                    foot: Point::new(*b, 0.0, 0.0),
                    grad: -Point::x(),
                    piece: Piece::Flat,
                },
            ],
            DomainKind::Ball { center, radius } => {
                let v = x - center;
                let r = v.norm();
                let e = unit_or_zero(v);
                vec![
                    Candidate {
                        dist: radius - r,
                        foot: center + e * *radius,
                        grad: -e,
                        piece: Piece::Sphere(-1.0 / radius),
                    },
                    Candidate {
                        dist: radius + r,
                        foot: center - e * *radius,
                        grad: e,
                        piece: Piece::Sphere(-1.0 / radius),
                    },
                ]
            }
            DomainKind::Annulus {
                center,
                r_in,
                r_out,
            } => {
                let v = x - center;
                let r = v.norm();
                let e = unit_or_zero(v);
                vec![
                    Candidate {
                        dist: r - r_in,
                        foot: center + e * *r_in,
                        grad: e,
                        piece: Piece::Sphere(1.0 / r_in),
                    },
                    Candidate {
                        dist: r_out - r,
                        foot: center + e * *r_out,
                        grad: -e,
                        piece: Piece::Sphere(-1.0 / r_out),
                    },
                ]
            }
            DomainKind::Strip { normal, half_width } => {
                let s = x.dot(normal);
                vec![
                    Candidate {
                        dist: half_width - s,
                        foot: x + normal * (half_width - s),
                        grad: -normal,
                        piece: Piece::Flat,
                    },
                    Candidate {
                        dist: half_width + s,
                        foot: x - normal * (half_width + s),
                        grad: *normal,
                        piece: Piece::Flat,
                    },
                ]
            }
            DomainKind::Rectangle { lo, hi } => {
                let mk = |dist: f64, axis: usize, sign: f64| {
                    let mut g = Point::zeros();
                    g[axis] = sign;
                    Candidate {
                        dist,
                        foot: x - g * dist,
                        grad: g,
                        piece: Piece::Flat,
                    }
                };
                vec![
                    mk(x[0] - lo[0], 0, 1.0),
                    mk(hi[0] - x[0], 0, -1.0),
                    mk(x[1] - lo[1], 1, 1.0),
                    mk(hi[1] - x[1], 1, -1.0),
                ]
            }
            DomainKind::PuncturedBall { center, radius } => {
                let v = x - center;
                let r = v.norm();
                let e = unit_or_zero(v);
                vec![
                    Candidate {
                        dist: r,
                        foot: *center,
                        grad: e,
                        piece: Piece::Point,
                    },
                    Candidate {
                        dist: radius - r,
                        foot: center + e * *radius,
                        grad: -e,
                        piece: Piece::Sphere(-1.0 / radius),
                    },
                ]
            }
            DomainKind::ExteriorOfBall { center, radius } => {
                let v = x - center;
                let r = v.norm();
                let e = unit_or_zero(v);
                vec![Candidate {
                    dist: r - radius,
                    foot: center + e * *radius,
                    grad: e,
                    piece: Piece::Sphere(1.0 / radius),
                }]
            }
            DomainKind::Polygon(p) => p
                .edges
                .iter()
                .map(|e| {
                    let dist = e.signed_distance(x);
                    Candidate {
                        dist,
                        foot: x - e.normal * dist,
                        grad: e.normal,
                        piece: Piece::Flat,
                    }
                })
                .collect(),
        }
    }

    /// Smallest and second-smallest candidate, by index.
    fn two_smallest(c: &[Candidate]) -> (usize, Option<usize>) {
        let mut i0 = 0;
        for (i, ci) in c.iter().enumerate() {
            if ci.dist < c[i0].dist {
                i0 = i;
            }
        }
        let mut i1: Option<usize> = None;
        for (i, ci) in c.iter().enumerate() {
            if i != i0 && i1.map_or(true, |j| ci.dist < c[j].dist) {
                i1 = Some(i);
            }
        }
        (i0, i1)
    }

    /// Length used to scale the skeleton tolerance: the diameter when finite,
    /// otherwise twice the largest value of d_Ω, otherwise 1.
    pub fn length_scale(&self) -> f64 {
        let diam = self.diameter();
        if diam.is_finite() {
            return diam;
        }
        let m = self.max_distance();
        if m.is_finite() {
            2.0 * m
        } else {
            1.0
        }
    }

    fn require_inside(&self, x: &Point) -> Result<(), GeometryError> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(GeometryError::PointOutsideDomain)
        }
    }

    /// d_Ω(x), the distance to the boundary.
    pub fn distance(&self, x: &Point) -> Result<f64, GeometryError> {
        self.require_inside(x)?;
        Ok(self.distance_unchecked(x))
    }

    pub(crate) fn distance_unchecked(&self, x: &Point) -> f64 {
        self.candidates(x)
            .iter()
            .map(|c| c.dist)
            .fold(f64::INFINITY, f64::min)
    }

    /// Difference between the two smallest candidate distances; zero exactly
    /// on the skeleton and `+∞` when the boundary has a single piece.
    pub(crate) fn skeleton_gap(&self, x: &Point) -> f64 {
        let c = self.candidates(x);
        let (i0, i1) = Self::two_smallest(&c);
        i1.map_or(f64::INFINITY, |j| c[j].dist - c[i0].dist)
    }

    /// Lower bound on the distance from `x` to the cut locus (exact for the
    /// round and flat shapes).
    pub fn cut_locus_distance(&self, x: &Point) -> f64 {
        0.5 * self.skeleton_gap(x)
    }

    /// Whether `x` is on the skeleton within the catalog tolerance.
    pub fn on_skeleton(&self, x: &Point) -> bool {
        self.skeleton_gap(x) < SKELETON_TOL * self.length_scale()
    }

    /// The near set N(x).
    pub fn near_points(&self, x: &Point) -> Result<NearSet, GeometryError> {
        self.require_inside(x)?;
        let tol = SKELETON_TOL * self.length_scale();
        if let DomainKind::Ball { center, radius } = &self.kind {
            if (x - center).norm() < 0.5 * tol {
                return Ok(NearSet::Sphere {
                    center: *center,
                    radius: *radius,
                });
            }
            let c = &self.candidates(x)[0];
            return Ok(NearSet::Points(vec![c.foot]));
        }
        let c = self.candidates(x);
        let d = c.iter().map(|c| c.dist).fold(f64::INFINITY, f64::min);
        let mut pts: Vec<Point> = Vec::new();
        for ci in c.iter().filter(|ci| ci.dist - d < tol) {
            if !pts.iter().any(|p| (p - ci.foot).norm() < tol) {
                pts.push(ci.foot);
            }
        }
        Ok(NearSet::Points(pts))
    }

    /// ∇d_Ω(x) off the skeleton.
    pub fn grad_distance(&self, x: &Point) -> Result<Point, GeometryError> {
        self.require_inside(x)?;
        let c = self.candidates(x);
        let (i0, i1) = Self::two_smallest(&c);
        if let Some(j) = i1 {
            let gap = c[j].dist - c[i0].dist;
            if gap < SKELETON_TOL * self.length_scale() {
                return Err(GeometryError::OnSkeleton { gap });
            }
        }
        Ok(c[i0].grad)
    }

    /// d_Ω, ∇d_Ω and Δ_G d_Ω from the nearest boundary piece, without the
    /// skeleton check. Used by quadrature loops that handle the cut locus
    /// themselves.
    pub(crate) fn local_frame(&self, x: &Point) -> (f64, Point, f64) {
        let c = self.candidates(x);
        let (i0, _) = Self::two_smallest(&c);
        (c[i0].dist, c[i0].grad, self.laplacian_from(&c[i0]))
    }

    /// Interior point where Δd_Ω is unbounded: the center of a ball.
    pub(crate) fn laplacian_singularity(&self) -> Option<Point> {
        match &self.kind {
            DomainKind::Ball { center, .. } if self.dim > 1 => Some(*center),
            _ => None,
        }
    }

    /// Whether the cut locus may cross the box `center ± half`.
    ///
    /// Flat pieces have convex nearest-point regions, so a box is cut exactly
    /// when its (slightly shrunk) corners disagree on the nearest piece.
    /// Curved pieces use the cut-locus distance of the center.
    pub(crate) fn cell_meets_cut_locus(&self, center: &Point, half: &Point) -> bool {
        match &self.kind {
            DomainKind::ExteriorOfBall { .. } => false,
            DomainKind::Ball { .. } | DomainKind::Annulus { .. } | DomainKind::PuncturedBall { .. } => {
                self.cut_locus_distance(center) < half.norm()
            }
            _ => {
                let nearest = |x: &Point| {
                    let c = self.candidates(x);
                    Self::two_smallest(&c).0
                };
                let first = nearest(center);
                (0..(1usize << self.dim)).any(|mask| {
                    let mut y = *center;
                    for a in 0..self.dim {
                        let s = if mask & (1 << a) == 0 { -1.0 } else { 1.0 };
                        y[a] += s * half[a] * (1.0 - 1e-6);
                    }
                    nearest(&y) != first
                })
            }
        }
    }

    /// Δd_Ω(x) on the good set, from the principal curvatures at the near
    /// point: Σ k_j / (1 + d k_j).
    ///
    /// The puncture of a punctured ball is treated as the limit of a sphere
    /// of vanishing radius, which gives (N−1)/d.
    pub fn laplacian_distance_good(&self, x: &Point) -> Result<f64, GeometryError> {
        self.require_inside(x)?;
        let c = self.candidates(x);
        let (i0, i1) = Self::two_smallest(&c);
        if let Some(j) = i1 {
            if c[j].dist - c[i0].dist < SKELETON_TOL * self.length_scale() {
                return Err(GeometryError::OnCutLocus);
            }
        }
        if let DomainKind::Polygon(p) = &self.kind {
            let foot = c[i0].foot;
            let tol = SKELETON_TOL * self.length_scale();
            let at_vertex = p
                .edges
                .iter()
                .any(|e| (foot - e.start).norm() < tol || (foot - e.end).norm() < tol);
            if at_vertex {
                return Err(GeometryError::NonSmoothBoundaryPoint);
            }
        }
        Ok(self.laplacian_from(&c[i0]))
    }

    pub(crate) fn laplacian_from(&self, c: &Candidate) -> f64 {
        let m = (self.dim - 1) as f64;
        match c.piece {
            Piece::Flat => 0.0,
            Piece::Sphere(k) => m * k / (1.0 + c.dist * k),
            Piece::Point => m / c.dist,
        }
    }

    /// Principal curvature at the nearest boundary point, repeated N−1 times
    /// (convex boundaries give non-positive values).
    pub fn principal_curvatures(&self, x: &Point) -> Result<Vec<f64>, GeometryError> {
        self.require_inside(x)?;
        let c = self.candidates(x);
        let (i0, _) = Self::two_smallest(&c);
        let k = match c[i0].piece {
            Piece::Flat => 0.0,
            Piece::Sphere(k) => k,
            Piece::Point => return Err(GeometryError::NonSmoothBoundaryPoint),
        };
        Ok(vec![k; self.dim - 1])
    }
}
