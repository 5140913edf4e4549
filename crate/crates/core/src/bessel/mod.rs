//! p-Bessel weight pairs and the special functions behind them.
//!
//! A pair (V, W) on (0, R) carries evaluators for V, W, a positive solution
//! φ of the p-Bessel equation and φ′. The catalog has three families:
//! [`power_pair`], [`lamb_pair`] and [`log_pair`].

mod cp;
mod j0;
mod pairs;

pub use cp::{cp, cp_first_form, cp_second_form, CpValue};
pub(crate) use cp::{cp_scalar, cp_vec3};
pub use j0::{j0, j0_first_zero, j0_prime, lamb_constant, lamb_constant_for};
pub use pairs::{
    critical_lamb_pair, lamb_pair, log_pair, power_pair, BesselPair, PairFamily, PairSpec, ScalarFn,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BesselError {
    #[error("exponent p = {p} is out of range")]
    ExponentOutOfRange { p: f64 },
    #[error("degenerate exponent: p + λ − 1 = 0 (p = {p}, λ = {lambda})")]
    DegenerateExponent { p: f64, lambda: f64 },
    #[error("Λ = {big_lambda} must lie in (0, z₀ = {z0}]")]
    LambdaOutOfRange { big_lambda: f64, z0: f64 },
    #[error("r = {r} is outside the residual window of the pair")]
    OutOfInterval { r: f64 },
    #[error("invalid interval end R = {r}")]
    InvalidRadius { r: f64 },
    #[error("missing pair field `{0}`")]
    MissingField(String),
    #[error("unknown pair family `{0}`")]
    UnknownFamily(String),
}
