use serde::{Deserialize, Serialize};

use super::{point, ConvexPolygon, GeometryError, Point, MAX_DIM};

/// The shape of a catalog domain together with its parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum DomainKind {
    /// The open interval (a, b).
    Interval { a: f64, b: f64 },
    Ball { center: Point, radius: f64 },
    Annulus { center: Point, r_in: f64, r_out: f64 },
    /// `{x : |x·normal| < half_width}`, centered at the origin.
    Strip { normal: Point, half_width: f64 },
    /// Axis-aligned `(lo0, hi0) × (lo1, hi1)`.
    Rectangle { lo: [f64; 2], hi: [f64; 2] },
    /// Ball minus its center; the center belongs to the boundary.
    PuncturedBall { center: Point, radius: f64 },
    ExteriorOfBall { center: Point, radius: f64 },
    Polygon(ConvexPolygon),
}

/// An immutable, validated catalog domain.
#[derive(Debug, Clone, PartialEq)]
pub struct Domain {
    pub(crate) kind: DomainKind,
    pub(crate) dim: usize,
}

fn check_dim(dim: usize) -> Result<(), GeometryError> {
    if dim == 0 || dim > MAX_DIM {
        Err(GeometryError::UnsupportedDimension(dim))
    } else {
        Ok(())
    }
}

fn positive(name: &str, v: f64) -> Result<(), GeometryError> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(GeometryError::InvalidDomain(format!("{name} must be positive and finite")))
    }
}

fn center_point(center: &[f64], dim: usize) -> Result<Point, GeometryError> {
    check_dim(dim)?;
    if center.len() != dim {
        return Err(GeometryError::DimensionMismatch {
            expected: dim,
            got: center.len(),
        });
    }
    if center.iter().any(|c| !c.is_finite()) {
        return Err(GeometryError::InvalidDomain("non-finite center".into()));
    }
    point(center)
}

impl Domain {
    pub fn interval(a: f64, b: f64) -> Result<Self, GeometryError> {
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(GeometryError::InvalidDomain("interval needs a < b".into()));
        }
        Ok(Self {
            kind: DomainKind::Interval { a, b },
            dim: 1,
        })
    }

    pub fn ball(center: &[f64], radius: f64) -> Result<Self, GeometryError> {
        let dim = center.len();
        let center = center_point(center, dim)?;
        positive("radius", radius)?;
        if dim < 2 {
            return Err(GeometryError::InvalidDomain("use an interval for N = 1".into()));
        }
        Ok(Self {
            kind: DomainKind::Ball { center, radius },
            dim,
        })
    }

    pub fn annulus(center: &[f64], r_in: f64, r_out: f64) -> Result<Self, GeometryError> {
        let dim = center.len();
        let center = center_point(center, dim)?;
        positive("r_in", r_in)?;
        positive("r_out", r_out)?;
        if dim < 2 {
            return Err(GeometryError::InvalidDomain("annulus needs N ≥ 2".into()));
        }
        if r_in >= r_out {
            return Err(GeometryError::InvalidDomain("annulus needs r_in < r_out".into()));
        }
        Ok(Self {
            kind: DomainKind::Annulus {
                center,
                r_in,
                r_out,
            },
            dim,
        })
    }

    /// Strip `{|x·normal| < half_width}`; `normal` is normalized here.
    pub fn strip(normal: &[f64], half_width: f64) -> Result<Self, GeometryError> {
        let dim = normal.len();
        let n = center_point(normal, dim)?;
        positive("half_width", half_width)?;
        if dim < 2 {
            return Err(GeometryError::InvalidDomain("use an interval for N = 1".into()));
        }
        let norm = n.norm();
        if norm == 0.0 {
            return Err(GeometryError::InvalidDirection { norm });
        }
        Ok(Self {
            kind: DomainKind::Strip {
                normal: n / norm,
                half_width,
            },
            dim,
        })
    }

    pub fn rectangle(lo: [f64; 2], hi: [f64; 2]) -> Result<Self, GeometryError> {
        if !(lo.iter().chain(&hi).all(|v| v.is_finite()) && lo[0] < hi[0] && lo[1] < hi[1]) {
            return Err(GeometryError::InvalidDomain("rectangle needs lo < hi".into()));
        }
        Ok(Self {
            kind: DomainKind::Rectangle { lo, hi },
            dim: 2,
        })
    }

    pub fn punctured_ball(center: &[f64], radius: f64) -> Result<Self, GeometryError> {
        let dim = center.len();
        let center = center_point(center, dim)?;
        positive("radius", radius)?;
        if dim < 2 {
            return Err(GeometryError::InvalidDomain("punctured ball needs N ≥ 2".into()));
        }
        Ok(Self {
            kind: DomainKind::PuncturedBall { center, radius },
            dim,
        })
    }

    pub fn exterior_of_ball(center: &[f64], radius: f64) -> Result<Self, GeometryError> {
        let dim = center.len();
        let center = center_point(center, dim)?;
        positive("radius", radius)?;
        if dim < 2 {
            return Err(GeometryError::InvalidDomain("exterior needs N ≥ 2".into()));
        }
        Ok(Self {
            kind: DomainKind::ExteriorOfBall { center, radius },
            dim,
        })
    }

    pub fn polygon(vertices: &[[f64; 2]]) -> Result<Self, GeometryError> {
        Ok(Self {
            kind: DomainKind::Polygon(ConvexPolygon::new(vertices)?),
            dim: 2,
        })
    }

    pub fn kind(&self) -> &DomainKind {
        &self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Short lowercase variant name, as used in JSON.
    pub fn variant_name(&self) -> &'static str {
        match self.kind {
            DomainKind::Interval { .. } => "interval",
            DomainKind::Ball { .. } => "ball",
            DomainKind::Annulus { .. } => "annulus",
            DomainKind::Strip { .. } => "strip",
            DomainKind::Rectangle { .. } => "rectangle",
            DomainKind::PuncturedBall { .. } => "punctured_ball",
            DomainKind::ExteriorOfBall { .. } => "exterior_of_ball",
            DomainKind::Polygon(_) => "polygon",
        }
    }

    pub fn is_bounded(&self) -> bool {
        !matches!(
            self.kind,
            DomainKind::Strip { .. } | DomainKind::ExteriorOfBall { .. }
        )
    }

    /// Membership in the open set.
    pub fn contains(&self, x: &Point) -> bool {
        match &self.kind {
            DomainKind::Interval { a, b } => *a < x[0] && x[0] < *b,
            DomainKind::Ball { center, radius } => (x - center).norm() < *radius,
            DomainKind::Annulus {
                center,
                r_in,
                r_out,
            } => {
                let r = (x - center).norm();
                *r_in < r && r < *r_out
            }
            DomainKind::Strip { normal, half_width } => x.dot(normal).abs() < *half_width,
            DomainKind::Rectangle { lo, hi } => {
                lo[0] < x[0] && x[0] < hi[0] && lo[1] < x[1] && x[1] < hi[1]
            }
            DomainKind::PuncturedBall { center, radius } => {
                let r = (x - center).norm();
                0.0 < r && r < *radius
            }
            DomainKind::ExteriorOfBall { center, radius } => (x - center).norm() > *radius,
            DomainKind::Polygon(poly) => poly.edges.iter().all(|e| e.signed_distance(x) > 0.0),
        }
    }

    /// Checks that a slice has the domain's dimension and converts it.
    pub fn point(&self, coords: &[f64]) -> Result<Point, GeometryError> {
        if coords.len() != self.dim {
            return Err(GeometryError::DimensionMismatch {
                expected: self.dim,
                got: coords.len(),
            });
        }
        point(coords)
    }

    /// The image of the domain under `x ↦ s x`.
    pub fn dilate(&self, s: f64) -> Result<Self, GeometryError> {
        positive("scale", s)?;
        let kind = match &self.kind {
            DomainKind::Interval { a, b } => DomainKind::Interval { a: a * s, b: b * s },
            DomainKind::Ball { center, radius } => DomainKind::Ball {
                center: center * s,
                radius: radius * s,
            },
            DomainKind::Annulus {
                center,
                r_in,
                r_out,
            } => DomainKind::Annulus {
                center: center * s,
                r_in: r_in * s,
                r_out: r_out * s,
            },
            DomainKind::Strip { normal, half_width } => DomainKind::Strip {
                normal: *normal,
                half_width: half_width * s,
            },
            DomainKind::Rectangle { lo, hi } => DomainKind::Rectangle {
                lo: [lo[0] * s, lo[1] * s],
                hi: [hi[0] * s, hi[1] * s],
            },
            DomainKind::PuncturedBall { center, radius } => DomainKind::PuncturedBall {
                center: center * s,
                radius: radius * s,
            },
            DomainKind::ExteriorOfBall { center, radius } => DomainKind::ExteriorOfBall {
                center: center * s,
                radius: radius * s,
            },
            DomainKind::Polygon(p) => DomainKind::Polygon(p.scaled(s)),
        };
        Ok(Self {
            kind,
            dim: self.dim,
        })
    }

    /// Axis-aligned bounding box, `None` for unbounded domains.
    pub fn bounding_box(&self) -> Option<(Point, Point)> {
        let ball_box = |c: &Point, r: f64| {
            let mut lo = *c;
            let mut hi = *c;
            for i in 0..self.dim {
                lo[i] -= r;
                hi[i] += r;
            }
            (lo, hi)
        };
        match &self.kind {
            DomainKind::Interval { a, b } => Some((Point::new(*a, 0.0, 0.0), Point::new(*b, 0.0, 0.0))),
            DomainKind::Ball { center, radius } | DomainKind::PuncturedBall { center, radius } => {
                Some(ball_box(center, *radius))
            }
            DomainKind::Annulus { center, r_out, .. } => Some(ball_box(center, *r_out)),
            DomainKind::Rectangle { lo, hi } => {
                Some((Point::new(lo[0], lo[1], 0.0), Point::new(hi[0], hi[1], 0.0)))
            }
            DomainKind::Polygon(p) => {
                let mut lo = Point::new(f64::INFINITY, f64::INFINITY, 0.0);
                let mut hi = Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY, 0.0);
                for v in p.vertices() {
                    for i in 0..2 {
                        lo[i] = lo[i].min(v[i]);
                        hi[i] = hi[i].max(v[i]);
                    }
                }
                Some((lo, hi))
            }
            DomainKind::Strip { .. } | DomainKind::ExteriorOfBall { .. } => None,
        }
    }

    /// Coordinates that quadrature grids should place on cell faces, one
    /// optional value per axis (skeleton planes and skeleton points).
    pub(crate) fn grid_anchor(&self) -> [Option<f64>; 3] {
        let mut out = [None; 3];
        match &self.kind {
            DomainKind::Interval { a, b } => out[0] = Some(0.5 * (a + b)),
            DomainKind::Ball { center, .. }
            | DomainKind::Annulus { center, .. }
            | DomainKind::PuncturedBall { center, .. }
            | DomainKind::ExteriorOfBall { center, .. } => {
                for (i, o) in out.iter_mut().enumerate().take(self.dim) {
                    *o = Some(center[i]);
                }
            }
            DomainKind::Strip { normal, .. } => {
                for (i, o) in out.iter_mut().enumerate().take(self.dim) {
                    if (normal[i].abs() - 1.0).abs() < 1e-15 {
                        *o = Some(0.0);
                    }
                }
            }
            DomainKind::Rectangle { lo, hi } => {
                out[0] = Some(0.5 * (lo[0] + hi[0]));
                out[1] = Some(0.5 * (lo[1] + hi[1]));
            }
            DomainKind::Polygon(_) => {}
        }
        out
    }

    /// Whether the closed box `[lo, hi]` lies in Ω at distance ≥ `margin`
    /// from the boundary.
    pub fn contains_box(&self, lo: &Point, hi: &Point, margin: f64) -> bool {
        let d = self.dim;
        let corners: Vec<Point> = (0..(1usize << d))
            .map(|mask| {
                let mut c = Point::zeros();
                for i in 0..d {
                    c[i] = if mask & (1 << i) == 0 { lo[i] } else { hi[i] };
                }
                c
            })
            .collect();
        // Nearest and farthest box points from a center.
        let near_far = |c: &Point| {
            let mut near2 = 0.0;
            let mut far2 = 0.0;
            for i in 0..d {
                let lo_d = lo[i] - c[i];
                let hi_d = hi[i] - c[i];
                let n = if lo_d > 0.0 {
                    lo_d
                } else if hi_d < 0.0 {
                    -hi_d
                } else {
                    0.0
                };
                near2 += n * n;
                far2 += lo_d.abs().max(hi_d.abs()).powi(2);
            }
            (near2.sqrt(), far2.sqrt())
        };
        match &self.kind {
            DomainKind::Interval { a, b } => lo[0] >= a + margin && hi[0] <= b - margin,
            DomainKind::Ball { center, radius } => near_far(center).1 <= radius - margin,
            DomainKind::Annulus {
                center,
                r_in,
                r_out,
            } => {
                let (n, f) = near_far(center);
                n >= r_in + margin && f <= r_out - margin
            }
            DomainKind::PuncturedBall { center, radius } => {
                let (n, f) = near_far(center);
                n >= margin && f <= radius - margin
            }
            DomainKind::ExteriorOfBall { center, radius } => near_far(center).0 >= radius + margin,
            DomainKind::Strip { normal, half_width } => corners
                .iter()
                .all(|c| c.dot(normal).abs() <= half_width - margin),
            DomainKind::Rectangle { lo: a, hi: b } => {
                (0..2).all(|i| lo[i] >= a[i] + margin && hi[i] <= b[i] - margin)
            }
            DomainKind::Polygon(p) => corners
                .iter()
                .all(|c| p.edges.iter().all(|e| e.signed_distance(c) >= margin)),
        }
    }

    /// Whether the closed ball `B(c, r)` lies in Ω at distance ≥ `margin`
    /// from the boundary.
    pub fn contains_ball(&self, c: &Point, r: f64, margin: f64) -> bool {
        self.contains(c)
            && self
                .distance(c)
                .map(|d| d >= r + margin)
                .unwrap_or(false)
    }
}

/// JSON form of a domain, e.g. `{"variant": "ball", "center": [0,0], "radius": 1.0, "dim": 2}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "snake_case", deny_unknown_fields)]
pub enum DomainSpec {
    Interval {
        a: f64,
        b: f64,
    },
    Ball {
        center: Vec<f64>,
        radius: f64,
        dim: usize,
    },
    Annulus {
        center: Vec<f64>,
        r_in: f64,
        r_out: f64,
        dim: usize,
    },
    Strip {
        normal: Vec<f64>,
        half_width: f64,
        dim: usize,
    },
    Rectangle {
        lo: [f64; 2],
        hi: [f64; 2],
    },
    PuncturedBall {
        center: Vec<f64>,
        radius: f64,
        dim: usize,
    },
    ExteriorOfBall {
        center: Vec<f64>,
        radius: f64,
        dim: usize,
    },
    Polygon {
        vertices: Vec<[f64; 2]>,
    },
}

fn with_dim(v: &[f64], dim: usize) -> Result<&[f64], GeometryError> {
    if v.len() == dim {
        Ok(v)
    } else {
        Err(GeometryError::DimensionMismatch {
            expected: dim,
            got: v.len(),
        })
    }
}

impl TryFrom<&DomainSpec> for Domain {
    type Error = GeometryError;

    fn try_from(spec: &DomainSpec) -> Result<Self, Self::Error> {
        match spec {
            DomainSpec::Interval { a, b } => Domain::interval(*a, *b),
            DomainSpec::Ball {
                center,
                radius,
                dim,
            } => Domain::ball(with_dim(center, *dim)?, *radius),
            DomainSpec::Annulus {
                center,
                r_in,
                r_out,
                dim,
            } => Domain::annulus(with_dim(center, *dim)?, *r_in, *r_out),
            DomainSpec::Strip {
                normal,
                half_width,
                dim,
            } => Domain::strip(with_dim(normal, *dim)?, *half_width),
            DomainSpec::Rectangle { lo, hi } => Domain::rectangle(*lo, *hi),
            DomainSpec::PuncturedBall {
                center,
                radius,
                dim,
            } => Domain::punctured_ball(with_dim(center, *dim)?, *radius),
            DomainSpec::ExteriorOfBall {
                center,
                radius,
                dim,
            } => Domain::exterior_of_ball(with_dim(center, *dim)?, *radius),
            DomainSpec::Polygon { vertices } => Domain::polygon(vertices),
        }
    }
}

impl From<&Domain> for DomainSpec {
    fn from(d: &Domain) -> Self {
        let v = |p: &Point| p.as_slice()[..d.dim].to_vec();
        match &d.kind {
            DomainKind::Interval { a, b } => DomainSpec::Interval { a: *a, b: *b },
            DomainKind::Ball { center, radius } => DomainSpec::Ball {
                center: v(center),
                radius: *radius,
                dim: d.dim,
            },
            DomainKind::Annulus {
                center,
                r_in,
                r_out,
            } => DomainSpec::Annulus {
                center: v(center),
                r_in: *r_in,
                r_out: *r_out,
                dim: d.dim,
            },
            DomainKind::Strip { normal, half_width } => DomainSpec::Strip {
                normal: v(normal),
                half_width: *half_width,
                dim: d.dim,
            },
            DomainKind::Rectangle { lo, hi } => DomainSpec::Rectangle { lo: *lo, hi: *hi },
            DomainKind::PuncturedBall { center, radius } => DomainSpec::PuncturedBall {
                center: v(center),
                radius: *radius,
                dim: d.dim,
            },
            DomainKind::ExteriorOfBall { center, radius } => DomainSpec::ExteriorOfBall {
                center: v(center),
                radius: *radius,
                dim: d.dim,
            },
            DomainKind::Polygon(p) => DomainSpec::Polygon {
                vertices: p.vertices().to_vec(),
            },
        }
    }
}

impl Domain {
    /// Parses the JSON object form.
    pub fn from_json(text: &str) -> Result<Self, crate::Error> {
        let spec: DomainSpec = serde_json::from_str(text)?;
        Ok(Domain::try_from(&spec)?)
    }

    pub fn to_spec(&self) -> DomainSpec {
        DomainSpec::from(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let d = Domain::from_json(r#"{"variant": "ball", "center": [0,0], "radius": 1.0, "dim": 2}"#)
            .unwrap();
        assert_eq!(d.dim(), 2);
        let back = Domain::try_from(&d.to_spec()).unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn unknown_fields_rejected() {
        let r = Domain::from_json(
            r#"{"variant": "ball", "center": [0,0], "radius": 1.0, "dim": 2, "colour": 1}"#,
        );
        assert!(r.is_err());
    }

    #[test]
    fn dim_must_match_center() {
        let r = Domain::from_json(r#"{"variant": "ball", "center": [0,0,0], "radius": 1.0, "dim": 2}"#);
        assert!(matches!(
            r,
            Err(crate::Error::Geometry(GeometryError::DimensionMismatch { .. }))
        ));
    }

    #[test]
    fn invalid_parameters_rejected() {
        assert!(Domain::interval(1.0, 1.0).is_err());
        assert!(Domain::annulus(&[0.0, 0.0], 2.0, 1.0).is_err());
        assert!(Domain::ball(&[0.0, 0.0], -1.0).is_err());
        assert!(Domain::polygon(&[[0.0, 0.0], [2.0, 0.0], [1.0, 0.2], [1.0, 2.0]]).is_err());
    }

    #[test]
    fn box_containment() {
        let a = Domain::annulus(&[0.0, 0.0], 1.0, 2.0).unwrap();
        assert!(a.contains_box(&Point::new(1.2, -0.2, 0.0), &Point::new(1.6, 0.2, 0.0), 1e-3));
        assert!(!a.contains_box(&Point::new(-0.2, -0.2, 0.0), &Point::new(1.6, 0.2, 0.0), 1e-3));
    }
}
