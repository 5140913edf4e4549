use serde::{Deserialize, Serialize};

use super::VerifyError;
use crate::geometry::{point, Domain, Point};

/// A scalar field with an exact gradient and a bounded support box.
pub trait ScalarField: Sync {
    fn value(&self, x: &Point) -> f64;
    fn gradient(&self, x: &Point) -> Point;
    /// A box containing the support.
    fn support_box(&self) -> (Point, Point);
    /// Whether `x` may lie in the support. Points where this is false are
    /// skipped by quadrature.
    fn in_support(&self, x: &Point) -> bool {
        let (lo, hi) = self.support_box();
        (0..3).all(|i| x[i] >= lo[i] && x[i] <= hi[i])
    }
    /// Whether the support stays at distance ≥ `margin` from ∂Ω.
    fn support_inside(&self, domain: &Domain, margin: f64) -> bool {
        let (lo, hi) = self.support_box();
        domain.contains_box(&lo, &hi, margin)
    }
}

/// η(s) = exp(1 − 1/(1 − s²)) for |s| < 1, else 0; η(0) = 1.
pub fn eta(s: f64) -> f64 {
    let t = 1.0 - s * s;
    if t <= 0.0 {
        0.0
    } else {
        (1.0 - 1.0 / t).exp()
    }
}

/// η′(s) = −2s η(s) / (1 − s²)².
pub fn eta_prime(s: f64) -> f64 {
    let t = 1.0 - s * s;
    if t <= 0.0 {
        0.0
    } else {
        -2.0 * s * eta(s) / (t * t)
    }
}

/// JSON form of a test function, e.g.
/// `{"family": "radial-bump", "center": [0.4, 0.0], "radius": 0.3}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case", deny_unknown_fields)]
pub enum TestFunctionSpec {
    RadialBump {
        center: Vec<f64>,
        radius: f64,
        #[serde(default = "one")]
        amplitude: f64,
    },
    TensorBump {
        center: Vec<f64>,
        half_widths: Vec<f64>,
        #[serde(default = "one")]
        amplitude: f64,
    },
    ShiftedBump {
        center: Vec<f64>,
        radius: f64,
        tilt: Vec<f64>,
        #[serde(default = "one")]
        amplitude: f64,
    },
}

fn one() -> f64 {
    1.0
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TestFunctionKind {
    /// η(|x − c|/ρ).
    RadialBump { radius: f64 },
    /// Π_i η((x_i − c_i)/h_i).
    TensorBump { half_widths: Point },
    /// η(|x − c|/ρ)(1 + t·(x − c)), a bump without radial symmetry.
    ShiftedBump { radius: f64, tilt: Point },
}

/// A smooth compactly supported test function u with its exact gradient.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TestFunction {
    pub dim: usize,
    pub center: Point,
    pub amplitude: f64,
    pub kind: TestFunctionKind,
}

fn invalid(msg: impl Into<String>) -> VerifyError {
    VerifyError::InvalidTestFunction(msg.into())
}

fn checked_point(v: &[f64], what: &str) -> Result<Point, VerifyError> {
    if v.is_empty() || v.len() > 3 || v.iter().any(|c| !c.is_finite()) {
        return Err(invalid(format!("{what} must have 1 to 3 finite coordinates")));
    }
    point(v).map_err(|e| invalid(e.to_string()))
}

impl TestFunction {
    pub fn radial_bump(center: &[f64], radius: f64) -> Result<Self, VerifyError> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(invalid("radius must be positive"));
        }
        Ok(Self {
            dim: center.len(),
            center: checked_point(center, "center")?,
            amplitude: 1.0,
            kind: TestFunctionKind::RadialBump { radius },
        })
    }

    pub fn tensor_bump(center: &[f64], half_widths: &[f64]) -> Result<Self, VerifyError> {
        if half_widths.len() != center.len() {
            return Err(invalid("half_widths and center differ in length"));
        }
        if half_widths.iter().any(|h| !(*h > 0.0 && h.is_finite())) {
            return Err(invalid("half widths must be positive"));
        }
        Ok(Self {
            dim: center.len(),
            center: checked_point(center, "center")?,
            amplitude: 1.0,
            kind: TestFunctionKind::TensorBump {
                half_widths: checked_point(half_widths, "half_widths")?,
            },
        })
    }

    pub fn shifted_bump(center: &[f64], radius: f64, tilt: &[f64]) -> Result<Self, VerifyError> {
        if tilt.len() != center.len() {
            return Err(invalid("tilt and center differ in length"));
        }
        let mut u = Self::radial_bump(center, radius)?;
        u.kind = TestFunctionKind::ShiftedBump {
            radius,
            tilt: checked_point(tilt, "tilt")?,
        };
        Ok(u)
    }

    pub fn with_amplitude(mut self, amplitude: f64) -> Self {
        self.amplitude = amplitude;
        self
    }

    pub fn from_spec(spec: &TestFunctionSpec) -> Result<Self, VerifyError> {
        let (u, a) = match spec {
            TestFunctionSpec::RadialBump {
                center,
                radius,
                amplitude,
            } => (Self::radial_bump(center, *radius)?, *amplitude),
            TestFunctionSpec::TensorBump {
                center,
                half_widths,
                amplitude,
            } => (Self::tensor_bump(center, half_widths)?, *amplitude),
            TestFunctionSpec::ShiftedBump {
                center,
                radius,
                tilt,
                amplitude,
            } => (Self::shifted_bump(center, *radius, tilt)?, *amplitude),
        };
        if !a.is_finite() {
            return Err(invalid("amplitude must be finite"));
        }
        Ok(u.with_amplitude(a))
    }

    pub fn to_spec(&self) -> TestFunctionSpec {
        let c = self.center.as_slice()[..self.dim].to_vec();
        let v = |p: &Point| p.as_slice()[..self.dim].to_vec();
        match self.kind {
            TestFunctionKind::RadialBump { radius } => TestFunctionSpec::RadialBump {
                center: c,
                radius,
                amplitude: self.amplitude,
            },
            TestFunctionKind::TensorBump { half_widths } => TestFunctionSpec::TensorBump {
                center: c,
                half_widths: v(&half_widths),
                amplitude: self.amplitude,
            },
            TestFunctionKind::ShiftedBump { radius, tilt } => TestFunctionSpec::ShiftedBump {
                center: c,
                radius,
                tilt: v(&tilt),
                amplitude: self.amplitude,
            },
        }
    }

    pub fn family(&self) -> &'static str {
        match self.kind {
            TestFunctionKind::RadialBump { .. } => "radial-bump",
            TestFunctionKind::TensorBump { .. } => "tensor-bump",
            TestFunctionKind::ShiftedBump { .. } => "shifted-bump",
        }
    }

    /// Checks the dimension and that the support keeps a margin of
    /// `1e-3·δ₀` from the boundary (`1e-3` times the support size when δ₀
    /// is infinite).
    pub fn validate(&self, domain: &Domain) -> Result<(), VerifyError> {
        if self.dim != domain.dim() {
            return Err(invalid(format!(
                "test function has dimension {}, domain has {}",
                self.dim,
                domain.dim()
            )));
        }
        let d0 = domain.max_distance();
        let (lo, hi) = self.support_box();
        let margin = if d0.is_finite() {
            1e-3 * d0
        } else {
            1e-3 * (hi - lo).norm()
        };
        if !self.support_inside(domain, margin) {
            return Err(invalid("support is not compactly inside the domain"));
        }
        Ok(())
    }

    fn radial(&self, x: &Point, radius: f64) -> (f64, f64, Point) {
        let r = x - self.center;
        let s = r.norm() / radius;
        let dir = if s > 0.0 { r / (s * radius) } else { Point::zeros() };
        (eta(s), eta_prime(s) / radius, dir)
    }
}

impl ScalarField for TestFunction {
    fn value(&self, x: &Point) -> f64 {
        let v = match self.kind {
            TestFunctionKind::RadialBump { radius } => eta((x - self.center).norm() / radius),
            TestFunctionKind::TensorBump { half_widths } => (0..self.dim)
                .map(|i| eta((x[i] - self.center[i]) / half_widths[i]))
                .product(),
            TestFunctionKind::ShiftedBump { radius, tilt } => {
                let r = x - self.center;
                eta(r.norm() / radius) * (1.0 + tilt.dot(&r))
            }
        };
        self.amplitude * v
    }

    fn gradient(&self, x: &Point) -> Point {
        let g = match self.kind {
            TestFunctionKind::RadialBump { radius } => {
                let (_, d, dir) = self.radial(x, radius);
                dir * d
            }
            TestFunctionKind::TensorBump { half_widths } => {
                let s: Vec<f64> = (0..self.dim)
                    .map(|i| (x[i] - self.center[i]) / half_widths[i])
                    .collect();
                let mut g = Point::zeros();
                for i in 0..self.dim {
                    let mut prod = eta_prime(s[i]) / half_widths[i];
                    for (j, sj) in s.iter().enumerate() {
                        if j != i {
                            prod *= eta(*sj);
                        }
                    }
                    g[i] = prod;
                }
                g
            }
            TestFunctionKind::ShiftedBump { radius, tilt } => {
                let (e, d, dir) = self.radial(x, radius);
                let lin = 1.0 + tilt.dot(&(x - self.center));
                dir * (d * lin) + tilt * e
            }
        };
        g * self.amplitude
    }

    fn support_box(&self) -> (Point, Point) {
        let half = match self.kind {
            TestFunctionKind::RadialBump { radius } | TestFunctionKind::ShiftedBump { radius, .. } => {
                let mut h = Point::zeros();
                for i in 0..self.dim {
                    h[i] = radius;
                }
                h
            }
            TestFunctionKind::TensorBump { half_widths } => half_widths,
        };
        (self.center - half, self.center + half)
    }

    fn in_support(&self, x: &Point) -> bool {
        match self.kind {
            TestFunctionKind::RadialBump { radius } | TestFunctionKind::ShiftedBump { radius, .. } => {
                (x - self.center).norm() < radius
            }
            TestFunctionKind::TensorBump { half_widths } => {
                (0..self.dim).all(|i| (x[i] - self.center[i]).abs() < half_widths[i])
            }
        }
    }

    fn support_inside(&self, domain: &Domain, margin: f64) -> bool {
        match self.kind {
            TestFunctionKind::RadialBump { radius } | TestFunctionKind::ShiftedBump { radius, .. } => {
                domain.contains_ball(&self.center, radius, margin)
            }
            TestFunctionKind::TensorBump { .. } => {
                let (lo, hi) = self.support_box();
                domain.contains_box(&lo, &hi, margin)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn fd_gradient(u: &TestFunction, x: &Point) -> Point {
        let h = 1e-6;
        let mut g = Point::zeros();
        for i in 0..u.dim {
            let mut a = *x;
            let mut b = *x;
            a[i] += h;
            b[i] -= h;
            g[i] = (u.value(&a) - u.value(&b)) / (2.0 * h);
        }
        g
    }

    #[test]
    fn gradients_match_differences() {
        let us = [
            TestFunction::radial_bump(&[0.1, 0.2], 0.5).unwrap(),
            TestFunction::tensor_bump(&[0.1, -0.2, 0.3], &[0.4, 0.5, 0.6]).unwrap(),
            TestFunction::shifted_bump(&[0.0, 0.0], 0.7, &[0.5, -1.0]).unwrap(),
        ];
        let x = Point::new(0.2, 0.05, 0.1);
        for u in &us {
            let mut y = x;
            for i in u.dim..3 {
                y[i] = 0.0;
            }
            let g = u.gradient(&y);
            let f = fd_gradient(u, &y);
            assert!((g - f).norm() < 1e-7 * (1.0 + g.norm()), "{u:?}");
        }
    }

    #[test]
    fn bump_profile() {
        assert_eq!(eta(0.0), 1.0);
        assert_eq!(eta(1.0), 0.0);
        assert_eq!(eta(-1.5), 0.0);
        assert_relative_eq!(eta(0.5), (1.0f64 - 4.0 / 3.0).exp());
    }

    #[test]
    fn validation() {
        let ball = Domain::ball(&[0.0, 0.0], 1.0).unwrap();
        assert!(TestFunction::radial_bump(&[0.4, 0.0], 0.3).unwrap().validate(&ball).is_ok());
        assert!(TestFunction::radial_bump(&[0.8, 0.0], 0.3).unwrap().validate(&ball).is_err());
        assert!(TestFunction::radial_bump(&[0.0], 0.3).unwrap().validate(&ball).is_err());
    }

    #[test]
    fn spec_round_trip() {
        let json = r#"{"family": "shifted-bump", "center": [0.1, 0.2], "radius": 0.3, "tilt": [1.0, 0.0]}"#;
        let spec: TestFunctionSpec = serde_json::from_str(json).unwrap();
        let u = TestFunction::from_spec(&spec).unwrap();
        assert_eq!(u.amplitude, 1.0);
        assert_eq!(TestFunction::from_spec(&u.to_spec()).unwrap(), u);
    }
}
