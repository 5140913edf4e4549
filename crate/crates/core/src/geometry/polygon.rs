use super::{GeometryError, Point};

/// One edge of a counter-clockwise convex polygon.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Edge {
    pub start: Point,
    pub end: Point,
    /// Unit normal pointing into the polygon.
    pub normal: Point,
    pub length: f64,
}

impl Edge {
    /// Signed distance to the supporting line, positive inside.
    pub fn signed_distance(&self, x: &Point) -> f64 {
        self.normal.dot(&(x - self.start))
    }

    pub fn tangent(&self) -> Point {
        (self.end - self.start) / self.length
    }
}

/// A convex polygon given by its vertices in counter-clockwise order.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexPolygon {
    vertices: Vec<[f64; 2]>,
    pub(crate) edges: Vec<Edge>,
}

impl ConvexPolygon {
    /// Validates the vertex list. Clockwise input is reversed; collinear or
    /// reflex vertices are rejected.
    pub fn new(vertices: &[[f64; 2]]) -> Result<Self, GeometryError> {
        if vertices.len() < 3 {
            return Err(GeometryError::InvalidDomain(
                "a polygon needs at least three vertices".into(),
            ));
        }
        if vertices.iter().flatten().any(|c| !c.is_finite()) {
            return Err(GeometryError::InvalidDomain("non-finite vertex".into()));
        }
        let mut verts = vertices.to_vec();
        let area2: f64 = (0..verts.len())
            .map(|i| {
                let a = verts[i];
                let b = verts[(i + 1) % verts.len()];
                a[0] * b[1] - a[1] * b[0]
            })
            .sum();
        if area2.abs() < 1e-300 {
            return Err(GeometryError::InvalidDomain("degenerate polygon".into()));
        }
        if area2 < 0.0 {
            verts.reverse();
        }
        let n = verts.len();
        let mut turning = 0.0;
        for i in 0..n {
            let a = verts[i];
            let b = verts[(i + 1) % n];
            let c = verts[(i + 2) % n];
            let u = [b[0] - a[0], b[1] - a[1]];
            let v = [c[0] - b[0], c[1] - b[1]];
            let cross = u[0] * v[1] - u[1] * v[0];
            if cross <= 0.0 {
                return Err(GeometryError::NonConvexPolygon);
            }
            turning += cross.atan2(u[0] * v[0] + u[1] * v[1]);
        }
        // A simple convex polygon turns exactly once.
        if (turning - std::f64::consts::TAU).abs() > 1e-6 {
            return Err(GeometryError::NonConvexPolygon);
        }
        let edges = (0..n)
            .map(|i| {
                let s = Point::new(verts[i][0], verts[i][1], 0.0);
                let e = Point::new(verts[(i + 1) % n][0], verts[(i + 1) % n][1], 0.0);
                let t = e - s;
                let length = t.norm();
                Edge {
                    start: s,
                    end: e,
                    normal: Point::new(-t[1], t[0], 0.0) / length,
                    length,
                }
            })
            .collect();
        Ok(Self {
            vertices: verts,
            edges,
        })
    }

    pub fn vertices(&self) -> &[[f64; 2]] {
        &self.vertices
    }

    pub(crate) fn scaled(&self, s: f64) -> Self {
        let v: Vec<[f64; 2]> = self.vertices.iter().map(|p| [p[0] * s, p[1] * s]).collect();
        Self::new(&v).expect("dilation preserves convexity")
    }

    /// Largest inscribed disk radius, from the triples of edges that can
    /// determine the Chebyshev center.
    pub(crate) fn chebyshev_radius(&self) -> f64 {
        let m = self.edges.len();
        let mut best: f64 = 0.0;
        for i in 0..m {
            for j in (i + 1)..m {
                for k in (j + 1)..m {
                    let rows = [&self.edges[i], &self.edges[j], &self.edges[k]];
                    // n·x − n·s = r for the three edges.
                    let a = nalgebra::Matrix3::new(
                        rows[0].normal[0], rows[0].normal[1], -1.0,
                        rows[1].normal[0], rows[1].normal[1], -1.0,
                        rows[2].normal[0], rows[2].normal[1], -1.0,
                    );
                    let b = nalgebra::Vector3::new(
                        rows[0].normal.dot(&rows[0].start),
                        rows[1].normal.dot(&rows[1].start),
                        rows[2].normal.dot(&rows[2].start),
                    );
                    let Some(sol) = a.lu().solve(&b) else { continue };
                    let c = Point::new(sol[0], sol[1], 0.0);
                    let r = sol[2];
                    if r <= best || !r.is_finite() {
                        continue;
                    }
                    if self
                        .edges
                        .iter()
                        .all(|e| e.signed_distance(&c) >= r * (1.0 - 1e-12) - 1e-14)
                    {
                        best = r;
                    }
                }
            }
        }
        best
    }

    pub(crate) fn vertex_diameter(&self) -> f64 {
        let mut best: f64 = 0.0;
        for a in &self.vertices {
            for b in &self.vertices {
                best = best.max(((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)).sqrt());
            }
        }
        best
    }

    /// Cut distance along the inward normal ray from the point at arclength
    /// `s` on edge `i`: the first `t` at which another edge becomes as close.
    pub(crate) fn cut_distance(&self, i: usize, s: f64) -> f64 {
        let e = &self.edges[i];
        let sigma = e.start + e.tangent() * s;
        let mut c = f64::INFINITY;
        for (j, f) in self.edges.iter().enumerate() {
            if j == i {
                continue;
            }
            let a = f.signed_distance(&sigma);
            let b = e.normal.dot(&f.normal);
            if b < 1.0 - 1e-14 {
                c = c.min(a / (1.0 - b));
            }
        }
        c
    }

    /// Arclength breakpoints of the piecewise-affine cut distance on edge
    /// `i`, including both ends.
    pub(crate) fn cut_breakpoints(&self, i: usize) -> Vec<f64> {
        let e = &self.edges[i];
        let tangent = e.tangent();
        // Each competitor j gives c_j(s) = (a_j + s g_j) / (1 − b_j).
        let lines: Vec<(f64, f64)> = self
            .edges
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .filter_map(|(_, f)| {
                let b = e.normal.dot(&f.normal);
                (b < 1.0 - 1e-14).then(|| {
                    let a = f.signed_distance(&e.start);
                    let g = f.normal.dot(&tangent);
                    (a / (1.0 - b), g / (1.0 - b))
                })
            })
            .collect();
        let mut pts = vec![0.0, e.length];
        for (k, l1) in lines.iter().enumerate() {
            for l2 in &lines[k + 1..] {
                let dg = l1.1 - l2.1;
                if dg.abs() > 1e-300 {
                    let s = (l2.0 - l1.0) / dg;
                    if s > 0.0 && s < e.length {
                        pts.push(s);
                    }
                }
            }
        }
        pts.sort_by(f64::total_cmp);
        pts.dedup_by(|a, b| (*a - *b).abs() < 1e-14 * e.length);
        // Keep only the kinks of the lower envelope.
        let argmin = |s: f64| {
            lines
                .iter()
                .enumerate()
                .min_by(|x, y| (x.1 .0 + x.1 .1 * s).total_cmp(&(y.1 .0 + y.1 .1 * s)))
                .map(|(k, _)| k)
        };
        let mut kept = vec![pts[0]];
        for w in pts.windows(3) {
            let left = argmin(0.5 * (w[0] + w[1]));
            let right = argmin(0.5 * (w[1] + w[2]));
            if left != right {
                kept.push(w[1]);
            }
        }
        kept.push(*pts.last().unwrap());
        kept.dedup();
        kept
    }

    /// Medial-axis segments traced by the cut points of every edge.
    pub(crate) fn medial_segments(&self) -> Vec<(Point, Point)> {
        let mut segs: Vec<(Point, Point)> = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            let bp = self.cut_breakpoints(i);
            for w in bp.windows(2) {
                let p = |s: f64| e.start + e.tangent() * s + e.normal * self.cut_distance(i, s);
                let (a, b) = (p(w[0]), p(w[1]));
                if (a - b).norm() < 1e-12 {
                    continue;
                }
                let dup = segs.iter().any(|(c, d)| {
                    ((a - c).norm() < 1e-9 && (b - d).norm() < 1e-9)
                        || ((a - d).norm() < 1e-9 && (b - c).norm() < 1e-9)
                });
                if !dup {
                    segs.push((a, b));
                }
            }
        }
        segs
    }
}
