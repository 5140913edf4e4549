use std::f64::consts::PI;

use super::{ConvexPolygon, Domain, DomainKind, Point};

impl Domain {
    /// Catalog inradius δ₀. For the punctured ball this is the radius `R`
    /// quoted for that example; see [`Domain::max_distance`] for sup d_Ω.
    pub fn inradius(&self) -> f64 {
        match &self.kind {
            DomainKind::PuncturedBall { radius, .. } => *radius,
            _ => self.max_distance(),
        }
    }

    /// sup over Ω of d_Ω.
    pub fn max_distance(&self) -> f64 {
        match &self.kind {
            DomainKind::Interval { a, b } => 0.5 * (b - a),
            DomainKind::Ball { radius, .. } => *radius,
            DomainKind::Annulus { r_in, r_out, .. } => 0.5 * (r_out - r_in),
            DomainKind::Strip { half_width, .. } => *half_width,
            DomainKind::Rectangle { lo, hi } => 0.5 * (hi[0] - lo[0]).min(hi[1] - lo[1]),
            DomainKind::PuncturedBall { radius, .. } => 0.5 * radius,
            DomainKind::ExteriorOfBall { .. } => f64::INFINITY,
            DomainKind::Polygon(p) => p.chebyshev_radius(),
        }
    }

    /// Essential diameter D_∞: the essential supremum of the lengths of the
    /// segments contained in Ω.
    pub fn essential_diameter(&self) -> f64 {
        match &self.kind {
            DomainKind::Interval { a, b } => b - a,
            DomainKind::Ball { radius, .. } | DomainKind::PuncturedBall { radius, .. } => {
                2.0 * radius
            }
            // Chords of the outer sphere that just miss the inner ball.
            DomainKind::Annulus { r_in, r_out, .. } => 2.0 * (r_out * r_out - r_in * r_in).sqrt(),
            DomainKind::Rectangle { lo, hi } => (hi[0] - lo[0]).hypot(hi[1] - lo[1]),
            DomainKind::Strip { .. } | DomainKind::ExteriorOfBall { .. } => f64::INFINITY,
            DomainKind::Polygon(p) => polygon_chord_search(self, p),
        }
    }

    pub fn diameter(&self) -> f64 {
        match &self.kind {
            DomainKind::Interval { a, b } => b - a,
            DomainKind::Ball { radius, .. } | DomainKind::PuncturedBall { radius, .. } => {
                2.0 * radius
            }
            DomainKind::Annulus { r_out, .. } => 2.0 * r_out,
            DomainKind::Rectangle { lo, hi } => (hi[0] - lo[0]).hypot(hi[1] - lo[1]),
            DomainKind::Strip { .. } | DomainKind::ExteriorOfBall { .. } => f64::INFINITY,
            DomainKind::Polygon(p) => p.vertex_diameter(),
        }
    }
}

fn golden_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, iters: usize) -> (f64, f64) {
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..iters {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    if fc > fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// Longest chord of a convex polygon: coarse direction/offset grid followed
/// by golden-section refinement in the offset and then the angle.
fn polygon_chord_search(domain: &Domain, p: &ConvexPolygon) -> f64 {
    let longest_at_angle = |theta: f64| -> (f64, f64) {
        let nu = Point::new(theta.cos(), theta.sin(), 0.0);
        let perp = Point::new(-nu[1], nu[0], 0.0);
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for v in p.vertices() {
            let s = perp[0] * v[0] + perp[1] * v[1];
            lo = lo.min(s);
            hi = hi.max(s);
        }
        let chord = |s: f64| {
            domain
                .segments_unchecked(&(perp * s), &nu)
                .iter()
                .map(|seg| seg.length())
                .fold(0.0, f64::max)
        };
        let n = 64;
        let h = (hi - lo) / n as f64;
        let mut best = (lo, 0.0);
        for k in 0..=n {
            let s = lo + k as f64 * h;
            let c = chord(s);
            if c > best.1 {
                best = (s, c);
            }
        }
        let a = (best.0 - h).max(lo);
        let b = (best.0 + h).min(hi);
        let refined = golden_max(chord, a, b, 80);
        if refined.1 > best.1 {
            refined
        } else {
            best
        }
    };
    let n_dir = 180;
    let dtheta = PI / n_dir as f64;
    let mut best = (0.0, 0.0);
    for k in 0..n_dir {
        let theta = k as f64 * dtheta;
        let c = longest_at_angle(theta).1;
        if c > best.1 {
            best = (theta, c);
        }
    }
    let refined = golden_max(
        |t| longest_at_angle(t).1,
        best.0 - dtheta,
        best.0 + dtheta,
        80,
    );
    best.1.max(refined.1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn catalog_extents() {
        let b = Domain::ball(&[0.0, 0.0, 0.0], 2.0).unwrap();
        assert_eq!((b.inradius(), b.essential_diameter()), (2.0, 4.0));
        let pb = Domain::punctured_ball(&[0.0, 0.0], 1.0).unwrap();
        assert_eq!((pb.inradius(), pb.essential_diameter()), (1.0, 2.0));
        assert_eq!(pb.max_distance(), 0.5);
        let s = Domain::strip(&[0.0, 1.0], 0.7).unwrap();
        assert_eq!(s.inradius(), 0.7);
        assert!(s.essential_diameter().is_infinite());
        let a = Domain::annulus(&[0.0, 0.0], 1.0, 2.0).unwrap();
        assert!(a.essential_diameter() < a.diameter());
    }

    #[test]
    fn polygon_chord_search_finds_vertex_diameter() {
        let d = Domain::polygon(&[[0.0, 0.0], [3.0, 0.2], [2.5, 2.0], [0.4, 1.5]]).unwrap();
        let DomainKind::Polygon(p) = d.kind() else { unreachable!() };
        assert_relative_eq!(d.essential_diameter(), p.vertex_diameter(), max_relative = 1e-9);
    }

    #[test]
    fn polygon_inradius_of_square() {
        let d = Domain::polygon(&[[0.0, 0.0], [2.0, 0.0], [2.0, 2.0], [0.0, 2.0]]).unwrap();
        assert_relative_eq!(d.inradius(), 1.0, max_relative = 1e-12);
        let t = Domain::polygon(&[[0.0, 0.0], [3.0, 0.0], [0.0, 4.0]]).unwrap();
        // Right triangle 3-4-5: r = (3 + 4 − 5) / 2.
        assert_relative_eq!(t.inradius(), 1.0, max_relative = 1e-12);
    }
}
