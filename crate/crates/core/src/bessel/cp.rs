use super::BesselError;

/// Value of the remainder function C_p(x, y) ≥ 0.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct CpValue {
    pub value: f64,
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|a| a * a).sum::<f64>().sqrt()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// |w|^{p−2} w · z, finite at w = 0.
fn weighted_dot(w: &[f64], z: &[f64], p: f64) -> f64 {
    let n = norm(w);
    if n == 0.0 {
        0.0
    } else {
        n.powf(p - 2.0) * dot(w, z)
    }
}

/// C_p(x, y) = |x|^p − |x−y|^p − p|x−y|^{p−2}(x−y)·y.
pub fn cp_first_form(x: &[f64], y: &[f64], p: f64) -> f64 {
    let w: Vec<f64> = x.iter().zip(y).map(|(a, b)| a - b).collect();
    norm(x).powf(p) - norm(&w).powf(p) - p * weighted_dot(&w, y, p)
}

/// C_p(x, y) = |x|^p + (p−1)|x−y|^p − p|x−y|^{p−2}(x−y)·x.
pub fn cp_second_form(x: &[f64], y: &[f64], p: f64) -> f64 {
    let w: Vec<f64> = x.iter().zip(y).map(|(a, b)| a - b).collect();
    norm(x).powf(p) + (p - 1.0) * norm(&w).powf(p) - p * weighted_dot(&w, x, p)
}

/// C_p(x, y) for vectors of equal length. Uses the second algebraic form
/// when x and y nearly coincide.
pub fn cp(x: &[f64], y: &[f64], p: f64) -> Result<CpValue, BesselError> {
    if !(p > 1.0) {
        return Err(BesselError::ExponentOutOfRange { p });
    }
    assert_eq!(x.len(), y.len(), "C_p arguments must have equal length");
    Ok(CpValue {
        value: cp_unchecked(x, y, p),
    })
}

pub(crate) fn cp_unchecked(x: &[f64], y: &[f64], p: f64) -> f64 {
    let w: Vec<f64> = x.iter().zip(y).map(|(a, b)| a - b).collect();
    if norm(&w) < 1e-8 * (norm(x) + norm(y)) {
        cp_second_form(x, y, p)
    } else {
        cp_first_form(x, y, p)
    }
}

/// Scalar C_p(a, b), used for one-dimensional and directional remainders.
pub(crate) fn cp_scalar(a: f64, b: f64, p: f64) -> f64 {
    if p == 2.0 {
        return b * b;
    }
    let w = a - b;
    let sw = |z: f64| if w == 0.0 { 0.0 } else { w.abs().powf(p - 2.0) * w * z };
    if w.abs() < 1e-8 * (a.abs() + b.abs()) {
        a.abs().powf(p) + (p - 1.0) * w.abs().powf(p) - p * sw(a)
    } else {
        a.abs().powf(p) - w.abs().powf(p) - p * sw(b)
    }
}

/// Vector C_p(x, y) for points stored as 3-vectors with zero padding.
pub(crate) fn cp_vec3(x: &nalgebra::Vector3<f64>, y: &nalgebra::Vector3<f64>, p: f64) -> f64 {
    if p == 2.0 {
        return y.norm_squared();
    }
    cp_unchecked(x.as_slice(), y.as_slice(), p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn zero_second_argument() {
        for p in [1.2, 2.0, 3.5] {
            assert_eq!(cp(&[0.3, -1.2], &[0.0, 0.0], p).unwrap().value, 0.0);
        }
    }

    #[test]
    fn quadratic_case() {
        let v = cp(&[1.0, 2.0], &[0.3, -0.4], 2.0).unwrap().value;
        assert_relative_eq!(v, 0.25, max_relative = 1e-14);
    }

    #[test]
    fn forms_agree_on_example() {
        // x = (1,0), y = (0.3,0.4), p = 3: x−y = (0.7,−0.4), |x−y|² = 0.65.
        let n = 0.65f64.sqrt();
        let first = 1.0 - n.powi(3) - 3.0 * n * (0.7 * 0.3 - 0.4 * 0.4);
        let second = 1.0 + 2.0 * n.powi(3) - 3.0 * n * 0.7;
        assert_relative_eq!(first, second, max_relative = 1e-14);
        let v = cp(&[1.0, 0.0], &[0.3, 0.4], 3.0).unwrap().value;
        assert_relative_eq!(v, first, max_relative = 1e-14);
    }

    #[test]
    fn coincident_arguments_stay_finite() {
        let v = cp(&[0.5, 0.5], &[0.5, 0.5], 1.3).unwrap().value;
        assert_relative_eq!(v, 0.5f64.sqrt().powf(1.3), max_relative = 1e-14);
        assert_relative_eq!(cp_scalar(0.7, 0.7, 1.5), 0.7f64.powf(1.5), max_relative = 1e-14);
    }

    #[test]
    fn exponent_check() {
        assert!(matches!(
            cp(&[1.0], &[1.0], 1.0),
            Err(BesselError::ExponentOutOfRange { .. })
        ));
    }
}
