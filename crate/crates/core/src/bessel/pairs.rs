use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{j0, j0_first_zero, j0_prime, lamb_constant, BesselError};

/// A scalar function of r on (0, R).
pub type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Which catalog family a pair belongs to.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum PairFamily {
    Power { p: f64, lambda: f64 },
    Lamb { lambda: f64, big_lambda: f64, radius: f64 },
    Log { p: f64, radius: f64 },
    Custom { name: String },
}

/// A p-Bessel pair (V, W) on (0, R) with a positive solution φ of
/// (V|φ′|^{p−2}φ′)′ + W φ^{p−1} = 0.
#[derive(Clone)]
pub struct BesselPair {
    p: f64,
    r_max: f64,
    v: ScalarFn,
    w: ScalarFn,
    phi: ScalarFn,
    phi_prime: ScalarFn,
    log_derivative: ScalarFn,
    phi_increasing: bool,
    phi_prime_constant_sign: bool,
    family: PairFamily,
}

impl fmt::Debug for BesselPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BesselPair")
            .field("p", &self.p)
            .field("r_max", &self.r_max)
            .field("family", &self.family)
            .finish_non_exhaustive()
    }
}

/// Sample points in (0, R): log-spaced, or (1e−3, 1e3) for R = ∞.
fn sample_radii(r_max: f64, n: usize) -> Vec<f64> {
    let (a, b) = if r_max.is_finite() {
        (1e-3 * r_max, r_max * (1.0 - 1e-6))
    } else {
        (1e-3, 1e3)
    };
    (0..n)
        .map(|k| a * (b / a).powf(k as f64 / (n - 1) as f64))
        .collect()
}

impl BesselPair {
    /// Builds a pair from evaluators. `log_derivative` defaults to φ′/φ;
    /// supply it when the closed form behaves better at the ends.
    #[allow(clippy::too_many_arguments)]
    pub fn custom(
        name: &str,
        p: f64,
        r_max: f64,
        v: ScalarFn,
        w: ScalarFn,
        phi: ScalarFn,
        phi_prime: ScalarFn,
        log_derivative: Option<ScalarFn>,
    ) -> Result<Self, BesselError> {
        Self::assemble(
            PairFamily::Custom { name: name.into() },
            p,
            r_max,
            v,
            w,
            phi,
            phi_prime,
            log_derivative,
        )
    }

    #[allow(clippy::too_many_arguments)]
    fn assemble(
        family: PairFamily,
        p: f64,
        r_max: f64,
        v: ScalarFn,
        w: ScalarFn,
        phi: ScalarFn,
        phi_prime: ScalarFn,
        log_derivative: Option<ScalarFn>,
    ) -> Result<Self, BesselError> {
        if !(p > 1.0 && p.is_finite()) {
            return Err(BesselError::ExponentOutOfRange { p });
        }
        if !(r_max > 0.0) {
            return Err(BesselError::InvalidRadius { r: r_max });
        }
        let log_derivative = log_derivative.unwrap_or_else(|| {
            let (phi, dphi) = (phi.clone(), phi_prime.clone());
            Arc::new(move |r| dphi(r) / phi(r))
        });
        let samples: Vec<f64> = sample_radii(r_max, 400).iter().map(|r| phi_prime(*r)).collect();
        let tiny = 1e-13 * samples.iter().fold(0.0f64, |m, s| m.max(s.abs()));
        let nonneg = samples.iter().all(|s| *s >= -tiny);
        let nonpos = samples.iter().all(|s| *s <= tiny);
        Ok(Self {
            p,
            r_max,
            v,
            w,
            phi,
            phi_prime,
            log_derivative,
            phi_increasing: nonneg,
            phi_prime_constant_sign: nonneg || nonpos,
            family,
        })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    /// Right end R of the interval of definition (may be `+∞`).
    pub fn r_max(&self) -> f64 {
        self.r_max
    }

    pub fn family(&self) -> &PairFamily {
        &self.family
    }

    pub fn phi_increasing(&self) -> bool {
        self.phi_increasing
    }

    pub fn phi_prime_constant_sign(&self) -> bool {
        self.phi_prime_constant_sign
    }

    pub fn v(&self, r: f64) -> f64 {
        (self.v)(r)
    }

    pub fn w(&self, r: f64) -> f64 {
        (self.w)(r)
    }

    pub fn phi(&self, r: f64) -> f64 {
        (self.phi)(r)
    }

    pub fn phi_prime(&self, r: f64) -> f64 {
        (self.phi_prime)(r)
    }

    /// φ′(r)/φ(r).
    pub fn log_derivative(&self, r: f64) -> f64 {
        (self.log_derivative)(r)
    }

    /// The weight V|φ′/φ|^{p−2}(φ′/φ) that multiplies |u|^p in boundary and
    /// distributional terms.
    pub fn boundary_weight(&self, r: f64) -> f64 {
        let q = self.log_derivative(r);
        let v = self.v(r);
        if q == 0.0 || v == 0.0 {
            return 0.0;
        }
        v * q.abs().powf(self.p - 2.0) * q
    }

    /// Derivative of [`BesselPair::boundary_weight`] by central differences.
    pub fn boundary_weight_derivative(&self, r: f64) -> f64 {
        let room = if self.r_max.is_finite() {
            r.min(self.r_max - r)
        } else {
            r
        };
        let h = 1e-5 * room.max(1e-300);
        (self.boundary_weight(r + h) - self.boundary_weight(r - h)) / (2.0 * h)
    }

    /// Whether φ′ vanishes at R, which keeps the boundary weight finite at
    /// the end of the interval.
    pub fn critical_at_end(&self) -> bool {
        if !self.r_max.is_finite() {
            return false;
        }
        let r = self.r_max;
        let scale = self.phi(r).abs() / r;
        self.phi_prime(r).abs() <= 1e-10 * scale.max(1e-300)
    }

    /// Whether the pair may be evaluated at `r` (strictly inside, or at a
    /// critical right end).
    pub fn admits(&self, r: f64) -> bool {
        r < self.r_max || (r <= self.r_max * (1.0 + 1e-12) && self.critical_at_end())
    }

    /// The pair with W replaced by `factor · W`, for residual-detector checks.
    pub fn with_scaled_w(&self, factor: f64) -> Self {
        let w = self.w.clone();
        let mut out = self.clone();
        out.w = Arc::new(move |r| factor * w(r));
        out.family = PairFamily::Custom {
            name: format!("{:?} with W scaled by {factor}", self.family),
        };
        out
    }

    /// (V|φ′|^{p−2}φ′)′(r) + W(r)φ(r)^{p−1}, with the derivative taken by
    /// central differences of step 1e−5·min(r, R−r).
    pub fn ode_residual(&self, r: f64) -> Result<f64, BesselError> {
        let eps = 1e-2;
        let inside = if self.r_max.is_finite() {
            r > eps * self.r_max && r < (1.0 - eps) * self.r_max
        } else {
            r > 0.0 && r.is_finite()
        };
        if !inside {
            return Err(BesselError::OutOfInterval { r });
        }
        let flux = |s: f64| {
            let d = self.phi_prime(s);
            self.v(s) * d.abs().powf(self.p - 2.0) * d
        };
        let room = if self.r_max.is_finite() {
            r.min(self.r_max - r)
        } else {
            r
        };
        let h = 1e-5 * room;
        let deriv = (flux(r + h) - flux(r - h)) / (2.0 * h);
        Ok(deriv + self.w(r) * self.phi(r).powf(self.p - 1.0))
    }

    /// [`BesselPair::ode_residual`] divided by max(|Wφ^{p−1}|, 1e−30).
    pub fn relative_ode_residual(&self, r: f64) -> Result<f64, BesselError> {
        let res = self.ode_residual(r)?;
        let scale = (self.w(r) * self.phi(r).powf(self.p - 1.0)).abs().max(1e-30);
        Ok(res / scale)
    }
}

/// V = r^{−λ}, W = |(p+λ−1)/p|^p r^{−λ−p}, φ = r^{(p+λ−1)/p} on (0, ∞).
pub fn power_pair(p: f64, lambda: f64) -> Result<BesselPair, BesselError> {
    if !(p > 1.0 && p.is_finite()) {
        return Err(BesselError::ExponentOutOfRange { p });
    }
    if (p + lambda - 1.0).abs() < 1e-14 {
        return Err(BesselError::DegenerateExponent { p, lambda });
    }
    let a = (p + lambda - 1.0) / p;
    let c = a.abs().powf(p);
    BesselPair::assemble(
        PairFamily::Power { p, lambda },
        p,
        f64::INFINITY,
        Arc::new(move |r: f64| r.powf(-lambda)),
        Arc::new(move |r: f64| c * r.powf(-lambda - p)),
        Arc::new(move |r: f64| r.powf(a)),
        Arc::new(move |r: f64| a * r.powf(a - 1.0)),
        Some(Arc::new(move |r: f64| a / r)),
    )
}

/// V = r^{−λ}, W = ((λ+1)/2)² r^{−λ−2} + (Λ²/R²) r^{−λ},
/// φ = r^{(λ+1)/2} J₀(Λr/R) on (0, R); p = 2.
pub fn lamb_pair(lambda: f64, big_lambda: f64, radius: f64) -> Result<BesselPair, BesselError> {
    let z0 = j0_first_zero();
    if !(big_lambda > 0.0 && big_lambda <= z0) {
        return Err(BesselError::LambdaOutOfRange {
            big_lambda,
            z0,
        });
    }
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(BesselError::InvalidRadius { r: radius });
    }
    let a = 0.5 * (lambda + 1.0);
    let k = big_lambda / radius;
    BesselPair::assemble(
        PairFamily::Lamb {
            lambda,
            big_lambda,
            radius,
        },
        2.0,
        radius,
        Arc::new(move |r: f64| r.powf(-lambda)),
        Arc::new(move |r: f64| a * a * r.powf(-lambda - 2.0) + k * k * r.powf(-lambda)),
        Arc::new(move |r: f64| r.powf(a) * j0(k * r)),
        Arc::new(move |r: f64| {
            a * r.powf(a - 1.0) * j0(k * r) + r.powf(a) * k * j0_prime(k * r)
        }),
        Some(Arc::new(move |r: f64| a / r + k * j0_prime(k * r) / j0(k * r))),
    )
}

/// The λ = 0 Lamb pair with Λ = λ₀, for which φ′(R) = 0.
pub fn critical_lamb_pair(radius: f64) -> Result<BesselPair, BesselError> {
    lamb_pair(0.0, lamb_constant(), radius)
}

/// V = r, W = c r^{1−p} L^{−p} + C r^{1−p} L^{1−p} with L = log(R/r),
/// c = (p−1)²/p^p, C = (2−p)/p^{p−1}; φ = L^{1/p}; 1 < p < 2.
pub fn log_pair(p: f64, radius: f64) -> Result<BesselPair, BesselError> {
    if !(p > 1.0 && p < 2.0) {
        return Err(BesselError::ExponentOutOfRange { p });
    }
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(BesselError::InvalidRadius { r: radius });
    }
    let c = (p - 1.0).powi(2) / p.powf(p);
    let cc = (2.0 - p) / p.powf(p - 1.0);
    let ell = move |r: f64| (radius / r).ln();
    BesselPair::assemble(
        PairFamily::Log { p, radius },
        p,
        radius,
        Arc::new(|r: f64| r),
        Arc::new(move |r: f64| {
            let l = ell(r);
            r.powf(1.0 - p) * (c * l.powf(-p) + cc * l.powf(1.0 - p))
        }),
        Arc::new(move |r: f64| ell(r).powf(1.0 / p)),
        Arc::new(move |r: f64| -ell(r).powf(1.0 / p - 1.0) / (p * r)),
        Some(Arc::new(move |r: f64| -1.0 / (p * r * ell(r)))),
    )
}

/// JSON pair selector:
/// `{"family": "power"|"lamb"|"log", "p": 2.0, "lambda": 0.0, "Lambda": 0.94, "R": 1.0}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairSpec {
    pub family: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    #[serde(default, rename = "Lambda", skip_serializing_if = "Option::is_none")]
    pub big_lambda: Option<f64>,
    #[serde(default, rename = "R", skip_serializing_if = "Option::is_none")]
    pub radius: Option<f64>,
}

impl PairSpec {
    /// Builds the pair. A missing `R` falls back to `default_radius`; a
    /// missing `Lambda` for the Lamb family means λ₀.
    pub fn build(&self, default_radius: Option<f64>) -> Result<BesselPair, BesselError> {
        let lambda = self.lambda.unwrap_or(0.0);
        let radius = || {
            self.radius
                .or(default_radius)
                .ok_or_else(|| BesselError::MissingField("R".into()))
        };
        match self.family.as_str() {
            "power" => {
                let p = self.p.ok_or_else(|| BesselError::MissingField("p".into()))?;
                power_pair(p, lambda)
            }
            "lamb" => {
                if let Some(p) = self.p {
                    if p != 2.0 {
                        return Err(BesselError::ExponentOutOfRange { p });
                    }
                }
                let big = self
                    .big_lambda
                    .unwrap_or_else(|| super::lamb_constant_for(lambda));
                lamb_pair(lambda, big, radius()?)
            }
            "log" => {
                let p = self.p.ok_or_else(|| BesselError::MissingField("p".into()))?;
                log_pair(p, radius()?)
            }
            other => Err(BesselError::UnknownFamily(other.into())),
        }
    }
}
