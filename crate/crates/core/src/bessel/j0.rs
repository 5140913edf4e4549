use std::sync::OnceLock;

/// J₀(r) from its power series. Accurate to about 1e-13 for 0 ≤ r ≤ 10.
pub fn j0(r: f64) -> f64 {
    let q = 0.25 * r * r;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..200 {
        term *= -q / (k * k) as f64;
        sum += term;
        if term.abs() < 1e-16 * sum.abs().max(1e-300) && term.abs() < 1e-16 {
            break;
        }
    }
    sum
}

/// J₀′(r) = −J₁(r), by term-wise differentiation of the series.
pub fn j0_prime(r: f64) -> f64 {
    let q = 0.25 * r * r;
    let mut term = 0.5 * r;
    let mut sum = term;
    for k in 1..200 {
        term *= -q / (k * (k + 1)) as f64;
        sum += term;
        if term.abs() < 1e-16 {
            break;
        }
    }
    -sum
}

fn bisect(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let fa = f(a);
    assert!(fa * f(b) < 0.0, "bracket does not contain a sign change");
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        if f(m) * fa > 0.0 {
            a = m;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

/// First positive zero z₀ ≈ 2.4048 of J₀.
pub fn j0_first_zero() -> f64 {
    static Z0: OnceLock<f64> = OnceLock::new();
    *Z0.get_or_init(|| bisect(j0, 2.0, 3.0))
}

/// Lamb's constant λ₀ ≈ 0.9408: the first positive root of J₀(r) + 2rJ₀′(r).
pub fn lamb_constant() -> f64 {
    static L0: OnceLock<f64> = OnceLock::new();
    *L0.get_or_init(|| {
        let g = |r: f64| j0(r) + 2.0 * r * j0_prime(r);
        bisect(g, 0.5, 1.5)
    })
}

/// First positive zero of (r^{(1+λ)/2} J₀(r))′, i.e. of
/// ((1+λ)/2) J₀(r) + r J₀′(r). Equals [`lamb_constant`] for λ = 0.
///
/// # Panics
/// If λ ≤ −1, where the expression has no sign change on (0, z₀).
pub fn lamb_constant_for(lambda: f64) -> f64 {
    if lambda == 0.0 {
        return lamb_constant();
    }
    assert!(lambda > -1.0, "λ must exceed −1");
    let a = 0.5 * (1.0 + lambda);
    bisect(|r| a * j0(r) + r * j0_prime(r), 1e-12, j0_first_zero())
}
