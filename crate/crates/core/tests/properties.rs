use proptest::prelude::*;

use hardylab::bessel::{
    cp, cp_first_form, cp_second_form, critical_lamb_pair, j0, j0_first_zero, j0_prime,
    lamb_constant, lamb_pair, log_pair, power_pair, BesselPair,
};
use hardylab::geometry::NearSet;
use hardylab::hardy_verify::{
    eta, verify_1d, verify_domain_directional, verify_domain_full, QuadratureConfig, TestFunction,
};
use hardylab::mean_distance::{
    inverse_power_mean, mean_distance, skeletal_mean, spherical_mean_weights, xi, LateralGrid,
    SkeletalSample, SphereQuadrature,
};
use hardylab::quadrature::integrate_1d;
use hardylab::{Domain, Point};

const EXPONENTS: [f64; 5] = [1.2, 1.5, 2.0, 3.0, 4.7];

fn vec2() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-3.0..3.0f64, 2)
}

fn exponent() -> impl Strategy<Value = f64> {
    prop::sample::select(EXPONENTS.to_vec())
}

/// A catalog domain together with a box that covers its interesting part.
fn catalog(k: usize, s: f64) -> (Domain, Point, Point) {
    let p = |a: f64, b: f64| Point::new(a, b, 0.0);
    match k {
        0 => (Domain::ball(&[0.0, 0.0], s).unwrap(), p(-s, -s), p(s, s)),
        1 => (Domain::annulus(&[0.0, 0.0], s, 2.5 * s).unwrap(), p(-2.5 * s, -2.5 * s), p(2.5 * s, 2.5 * s)),
        2 => (Domain::strip(&[0.6, 0.8], s).unwrap(), p(-3.0 * s, -3.0 * s), p(3.0 * s, 3.0 * s)),
        3 => (Domain::rectangle([0.0, 0.0], [2.0 * s, s]).unwrap(), p(0.0, 0.0), p(2.0 * s, s)),
        4 => (Domain::punctured_ball(&[0.0, 0.0], s).unwrap(), p(-s, -s), p(s, s)),
        5 => (Domain::exterior_of_ball(&[0.0, 0.0], s).unwrap(), p(-3.0 * s, -3.0 * s), p(3.0 * s, 3.0 * s)),
        _ => (
            Domain::polygon(&[[0.0, 0.0], [2.0 * s, 0.0], [2.5 * s, s], [s, 2.0 * s], [-0.5 * s, s]]).unwrap(),
            p(-0.5 * s, 0.0),
            p(2.5 * s, 2.0 * s),
        ),
    }
}

fn lerp(lo: &Point, hi: &Point, t: (f64, f64)) -> Point {
    Point::new(lo[0] + t.0 * (hi[0] - lo[0]), lo[1] + t.1 * (hi[1] - lo[1]), 0.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn cp_is_nonnegative_and_forms_agree(x in vec2(), y in vec2(), p in exponent()) {
        let v = cp(&x, &y, p).unwrap().value;
        prop_assert!(v >= -1e-12, "C_p = {v}");
        let (a, b) = (cp_first_form(&x, &y, p), cp_second_form(&x, &y, p));
        let diff = x.iter().zip(&y).map(|(u, w)| (u - w).powi(2)).sum::<f64>().sqrt();
        let norm = x.iter().chain(&y).map(|u| u.abs()).sum::<f64>();
        if diff > 1e-6 * norm {
            prop_assert!((a - b).abs() <= 1e-10 * a.abs().max(b.abs()).max(1e-300), "{a} vs {b}");
        }
    }

    #[test]
    fn cp_vanishes_only_at_zero(x in vec2(), y in vec2(), p in exponent()) {
        prop_assert_eq!(cp(&x, &[0.0, 0.0], p).unwrap().value, 0.0);
        if y.iter().any(|v| v.abs() > 1e-3) {
            prop_assert!(cp(&x, &y, p).unwrap().value > 0.0);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn eikonal_and_near_points(k in 0usize..7, s in 0.5..2.0f64, t in (0.0..1.0f64, 0.0..1.0f64)) {
        let (dom, lo, hi) = catalog(k, s);
        let x = lerp(&lo, &hi, t);
        let h = 1e-6 * s;
        prop_assume!(dom.contains(&x));
        let d = dom.distance(&x).unwrap();
        prop_assume!(d > 10.0 * h && dom.cut_locus_distance(&x) > 10.0 * h);
        let g = dom.grad_distance(&x).unwrap();
        prop_assert!((g.norm() - 1.0).abs() < 1e-12);
        let mut fd = Point::zeros();
        for a in 0..2 {
            let mut e = Point::zeros();
            e[a] = h;
            fd[a] = (dom.distance(&(x + e)).unwrap() - dom.distance(&(x - e)).unwrap()) / (2.0 * h);
        }
        prop_assert!((fd - g).norm() < 1e-6, "{fd:?} vs {g:?}");
        if let NearSet::Points(ns) = dom.near_points(&x).unwrap() {
            for n in ns {
                prop_assert!(((x - n).norm() - d).abs() < 1e-12 * s.max(1.0));
            }
        }
    }

    #[test]
    fn laplacian_matches_finite_differences(k in 0usize..7, s in 0.5..2.0f64, t in (0.0..1.0f64, 0.0..1.0f64)) {
        let (dom, lo, hi) = catalog(k, s);
        let x = lerp(&lo, &hi, t);
        let h = 1e-3 * s;
        prop_assume!(dom.contains(&x));
        prop_assume!(dom.distance(&x).unwrap() > 10.0 * h && dom.cut_locus_distance(&x) > 10.0 * h);
        let d = |y: Point| dom.distance(&y).unwrap();
        let mut fd = -4.0 * d(x);
        for e in [Point::x(), -Point::x(), Point::y(), -Point::y()] {
            fd += d(x + e * h);
        }
        fd /= h * h;
        let lap = dom.laplacian_distance_good(&x).unwrap();
        let r = dom.distance(&x).unwrap().min(dom.cut_locus_distance(&x));
        // O(h²) with the constant set by the curvature scale r.
        prop_assert!((fd - lap).abs() < 10.0 * (h / r).powi(2) / r, "{fd} vs {lap}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn inradius_and_diameters_are_ordered(k in 0usize..7, s in 0.5..2.0f64) {
        let (dom, _, _) = catalog(k, s);
        let (d0, dinf, diam) = (dom.inradius(), dom.essential_diameter(), dom.diameter());
        prop_assert!(2.0 * d0 <= dinf * (1.0 + 1e-9), "2δ₀ = {} > D∞ = {dinf}", 2.0 * d0);
        prop_assert!(dinf <= diam * (1.0 + 1e-9), "D∞ = {dinf} > diam = {diam}");
    }

    #[test]
    fn mean_weights_are_ordered(k in 0usize..5, t in (0.0..1.0f64, 0.0..1.0f64), pi in 0usize..4) {
        let (dom, lo, hi) = catalog(k, 1.0);
        let x = lerp(&lo, &hi, t);
        prop_assume!(dom.contains(&x));
        let pair = [
            power_pair(2.0, 0.0).unwrap(),
            power_pair(3.0, 1.0).unwrap(),
            power_pair(1.5, -0.2).unwrap(),
            power_pair(4.7, 0.5).unwrap(),
        ][pi].clone();
        let sq = SphereQuadrature::new(2, 128).unwrap();
        let m = spherical_mean_weights(&pair, &dom, &x, &sq).unwrap();
        prop_assert!(m.v_tilde <= m.v_mean * (1.0 + 1e-12), "{m:?}");
    }

    #[test]
    fn mean_distance_round_trip(k in 0usize..5, t in (0.0..1.0f64, 0.0..1.0f64), p in 0.5..4.0f64) {
        let (dom, lo, hi) = catalog(k, 1.0);
        let x = lerp(&lo, &hi, t);
        prop_assume!(dom.contains(&x));
        let sq = SphereQuadrature::new(2, 64).unwrap();
        let dm = mean_distance(&dom, &x, p, &sq).unwrap();
        let direct = inverse_power_mean(&dom, &x, p, &sq).unwrap();
        let back = dm.powf(-p) / xi(2, p).unwrap();
        prop_assert!((back - direct).abs() <= 1e-12 * direct, "{back} vs {direct}");
    }

    #[test]
    fn ode_residuals_vanish(r in 0.02..0.98f64, p in exponent(), lambda in -0.5..2.0f64) {
        prop_assume!((p + lambda - 1.0).abs() > 1e-3);
        let mut pairs: Vec<BesselPair> = vec![
            power_pair(p, lambda).unwrap(),
            lamb_pair(lambda.max(0.0), lamb_constant(), 1.0).unwrap(),
            critical_lamb_pair(1.0).unwrap(),
        ];
        if p < 2.0 {
            pairs.push(log_pair(p, 1.0).unwrap());
        }
        for pair in &pairs {
            let res = pair.relative_ode_residual(r * pair.r_max().min(1.0)).unwrap();
            prop_assert!(res.abs() < 1e-6, "{:?}: {res}", pair.family());
        }
    }

    #[test]
    fn power_log_derivative(r in 1e-3..1e3f64, p in exponent(), lambda in -0.5..2.0f64) {
        prop_assume!((p + lambda - 1.0).abs() > 1e-3);
        let pair = power_pair(p, lambda).unwrap();
        let a = (p + lambda - 1.0) / p;
        let d = pair.phi_prime(r);
        let lhs = d.abs().powf(p - 2.0) * d * pair.phi(r).powf(1.0 - p);
        let rhs = a.abs().powf(p - 2.0) * a * r.powf(1.0 - p);
        prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.abs(), "{lhs} vs {rhs}");
    }

    #[test]
    fn lamb_expression_changes_sign_once(t in 0.001..0.999f64) {
        let (l0, z0) = (lamb_constant(), j0_first_zero());
        let g = |r: f64| j0(r) + 2.0 * r * j0_prime(r);
        prop_assert!(g(t * l0) > 0.0);
        prop_assert!(g(l0 + t * (z0 - l0)) < 0.0);
    }
}

fn skeletal(dom: &Domain, f: &(dyn Fn(&SkeletalSample) -> f64 + Sync)) -> f64 {
    let sq = SphereQuadrature::new(2, 32).unwrap();
    let lateral = LateralGrid { lo: Point::new(-2.0, -2.0, 0.0), hi: Point::new(2.0, 2.0, 0.0), cells: 32 };
    skeletal_mean(dom, f, &sq, &lateral)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn skeletal_mean_is_linear_and_monotone(a in -3.0..3.0f64, b in -3.0..3.0f64, c in (-1.0..1.0f64, -1.0..1.0f64)) {
        let dom = Domain::annulus(&[0.0, 0.0], 0.5, 1.5).unwrap();
        let f = move |s: &SkeletalSample| (s.midpoint[0] - c.0).powi(2) + s.half_length;
        let g = move |s: &SkeletalSample| (s.midpoint[1] * c.1).sin() + s.direction[0];
        let combined = move |s: &SkeletalSample| a * f(s) + b * g(s);
        let (sf, sg, sc) = (skeletal(&dom, &f), skeletal(&dom, &g), skeletal(&dom, &combined));
        prop_assert!((sc - (a * sf + b * sg)).abs() <= 1e-10 * (1.0 + sc.abs()), "{sc} vs {}", a * sf + b * sg);
        prop_assert!(sf >= 0.0);
    }

    #[test]
    fn directional_lhs_below_full(cx in -0.3..0.3f64, cy in -0.3..0.3f64, r in 0.2..0.6f64, pi in 0usize..3) {
        let dom = Domain::ball(&[0.0, 0.0], 1.0).unwrap();
        let u = TestFunction::radial_bump(&[cx, cy], r).unwrap();
        let pair = [power_pair(2.0, 0.0), power_pair(3.0, 0.0), power_pair(2.0, 1.0)][pi].clone().unwrap();
        let cfg = QuadratureConfig::default().with_cells(48);
        let full = verify_domain_full(&pair, &dom, &u, &cfg).unwrap();
        let dir = verify_domain_directional(&pair, &dom, &u, &cfg).unwrap();
        prop_assert!(dir.lhs_gradient_term <= full.lhs_gradient_term);
        prop_assert!(full.cp_term >= -1e-10 && dir.cp_term >= -1e-10);
    }

    #[test]
    fn improvement_inequality_on_mean_convex_domains(cx in -0.3..0.3f64, cy in -0.3..0.3f64, r in 0.2..0.6f64, k in 0usize..2) {
        let dom = [Domain::ball(&[0.0, 0.0], 1.0).unwrap(), Domain::strip(&[0.0, 1.0], 1.0).unwrap()][k].clone();
        let u = TestFunction::radial_bump(&[cx, cy], r).unwrap();
        let pair = power_pair(2.0, 0.0).unwrap();
        let rep = verify_domain_full(&pair, &dom, &u, &QuadratureConfig::default().with_cells(48)).unwrap();
        let tol = 1e-4 * rep.lhs_gradient_term;
        prop_assert!(rep.cp_term + rep.distributional_term.unwrap().value() >= -tol);
        prop_assert!(rep.lhs_gradient_term >= rep.weight_term - tol);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn strip_tensor_reduction(c in -0.3..0.3f64, w in 0.3..0.6f64, lat in 0.3..1.0f64, p in prop::sample::select(vec![2.0, 3.0])) {
        let strip = Domain::strip(&[0.0, 1.0], 1.0).unwrap();
        let line = Domain::interval(-1.0, 1.0).unwrap();
        let pair = power_pair(p, 0.0).unwrap();
        let u2 = TestFunction::tensor_bump(&[0.1, c], &[lat, w]).unwrap();
        let u1 = TestFunction::tensor_bump(&[c], &[w]).unwrap();
        let factor = integrate_1d(|t| eta(t / lat).powf(p), &[-lat, lat], 64);
        let full = verify_domain_directional(&pair, &strip, &u2, &QuadratureConfig::default().with_cells(1024)).unwrap();
        let one = verify_1d(&pair, &line, &u1, &QuadratureConfig::default()).unwrap();
        let close = |a: f64, b: f64| (a - b).abs() <= 1e-6 * a.abs().max(b.abs());
        prop_assert!(close(full.lhs_gradient_term, factor * one.lhs_gradient_term), "{} vs {}", full.lhs_gradient_term, factor * one.lhs_gradient_term);
        prop_assert!(close(full.weight_term, factor * one.weight_term), "{} vs {}", full.weight_term, factor * one.weight_term);
        prop_assert!(close(full.cp_term, factor * one.cp_term), "{} vs {}", full.cp_term, factor * one.cp_term);
        let dist = full.distributional_term.unwrap().geometric_value.unwrap();
        prop_assert!(close(dist, factor * one.boundary_term.unwrap()), "{dist} vs {}", factor * one.boundary_term.unwrap());
    }
}

#[test]
fn v_tilde_is_reference_independent_for_unit_v() {
    let dom = Domain::annulus(&[0.0, 0.0], 1.0, 2.0).unwrap();
    let pair = power_pair(3.0, 0.0).unwrap();
    let sq = SphereQuadrature::new(2, 1024).unwrap();
    let x = Point::new(1.2, 0.7, 0.0);
    let mut values = Vec::new();
    for angle in [0.0f64, 0.4, 1.3] {
        let opts = hardylab::mean_distance::MeanOptions {
            reference: Point::new(angle.cos(), angle.sin(), 0.0),
            ..Default::default()
        };
        values.push(hardylab::mean_distance::spherical_mean_weights_with(&pair, &dom, &x, &sq, &opts).unwrap().v_tilde);
    }
    for v in &values {
        assert!((v - values[0]).abs() < 1e-6, "{values:?}");
    }
}
