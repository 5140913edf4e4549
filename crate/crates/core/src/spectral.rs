//! First Dirichlet eigenvalue by finite differences, and the lower bounds
//! N/(4μ²) and N/(4μ²) + 4Nλ₀²/D∞² it is compared with.

use serde::Serialize;
use thiserror::Error;

use crate::bessel::lamb_constant;
use crate::geometry::{Domain, DomainKind, Point};
use crate::mean_distance::{quasi_inradius, MeanDistanceError, SearchGrid, SphereQuadrature};

/// Fewest interior nodes allowed per axis.
pub const MIN_NODES: usize = 32;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectralError {
    #[error("grid has {nodes} interior nodes on an axis, at least {min} are needed")]
    GridTooCoarse { nodes: usize, min: usize },
    #[error("no eigenvalue solver for {0}")]
    UnsupportedDomain(String),
    #[error("essential diameter is infinite; only the first bound {davies} is available")]
    InfiniteEssentialDiameter { davies: f64 },
    #[error("bound ordering violated: {0}")]
    BoundViolation(String),
    #[error("inverse iteration did not converge (residual {residual})")]
    NoConvergence { residual: f64 },
    #[error(transparent)]
    MeanDistance(#[from] MeanDistanceError),
}

/// The 5-point (2N+1-point) Dirichlet Laplacian on the grid nodes inside Ω.
struct Stencil {
    neighbors: Vec<[usize; 6]>,
    inv_h2: [f64; 3],
    dim: usize,
}

const NONE: usize = usize::MAX;

impl Stencil {
    fn new(domain: &Domain, h: f64) -> Result<Self, SpectralError> {
        let (lo, hi) = domain
            .bounding_box()
            .ok_or_else(|| SpectralError::UnsupportedDomain(domain.variant_name().into()))?;
        let dim = domain.dim();
        let mut n = [1usize; 3];
        let mut hs = [1.0; 3];
        for a in 0..dim {
            let width = hi[a] - lo[a];
            n[a] = (width / h).round().max(1.0) as usize;
            hs[a] = width / n[a] as f64;
            if n[a] - 1 < MIN_NODES {
                return Err(SpectralError::GridTooCoarse {
                    nodes: n[a].saturating_sub(1),
                    min: MIN_NODES,
                });
            }
        }
        // Interior lattice indices 1..n-1 per axis.
        let m = [n[0] - 1, if dim > 1 { n[1] - 1 } else { 1 }, if dim > 2 { n[2] - 1 } else { 1 }];
        let lattice = |i: usize, j: usize, k: usize| i + m[0] * (j + m[1] * k);
        let mut index = vec![NONE; m[0] * m[1] * m[2]];
        let mut count = 0;
        for k in 0..m[2] {
            for j in 0..m[1] {
                for i in 0..m[0] {
                    let mut x = Point::zeros();
                    let ijk = [i, j, k];
                    for a in 0..dim {
                        x[a] = lo[a] + (ijk[a] + 1) as f64 * hs[a];
                    }
                    if domain.contains(&x) {
                        index[lattice(i, j, k)] = count;
                        count += 1;
                    }
                }
            }
        }
        let mut neighbors = vec![[NONE; 6]; count];
        for k in 0..m[2] {
            for j in 0..m[1] {
                for i in 0..m[0] {
                    let me = index[lattice(i, j, k)];
                    if me == NONE {
                        continue;
                    }
                    let ijk = [i as isize, j as isize, k as isize];
                    for a in 0..dim {
                        for (s, off) in [(0usize, -1isize), (1, 1)] {
                            let mut q = ijk;
                            q[a] += off;
                            if q[a] < 0 || q[a] >= m[a] as isize {
                                continue;
                            }
                            neighbors[me][2 * a + s] =
                                index[lattice(q[0] as usize, q[1] as usize, q[2] as usize)];
                        }
                    }
                }
            }
        }
        let mut inv_h2 = [0.0; 3];
        for a in 0..dim {
            inv_h2[a] = 1.0 / (hs[a] * hs[a]);
        }
        Ok(Self {
            neighbors,
            inv_h2,
            dim,
        })
    }

    fn len(&self) -> usize {
        self.neighbors.len()
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) {
        for (i, nb) in self.neighbors.iter().enumerate() {
            let mut s = 0.0;
            for a in 0..self.dim {
                let l = if nb[2 * a] == NONE { 0.0 } else { x[nb[2 * a]] };
                let r = if nb[2 * a + 1] == NONE { 0.0 } else { x[nb[2 * a + 1]] };
                s += self.inv_h2[a] * (2.0 * x[i] - l - r);
            }
            y[i] = s;
        }
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Conjugate gradients for A y = b starting from `y`.
fn cg(a: &Stencil, b: &[f64], y: &mut [f64], rel_tol: f64, max_iter: usize) {
    let n = b.len();
    let mut ay = vec![0.0; n];
    a.apply(y, &mut ay);
    let mut r: Vec<f64> = b.iter().zip(&ay).map(|(bi, ai)| bi - ai).collect();
    let mut p = r.clone();
    let mut rr = dot(&r, &r);
    let stop = rel_tol * rel_tol * dot(b, b);
    let mut ap = vec![0.0; n];
    for _ in 0..max_iter {
        if rr <= stop {
            break;
        }
        a.apply(&p, &mut ap);
        let alpha = rr / dot(&p, &ap);
        for i in 0..n {
            y[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
        }
        let rr_new = dot(&r, &r);
        let beta = rr_new / rr;
        rr = rr_new;
        for i in 0..n {
            p[i] = r[i] + beta * p[i];
        }
    }
}

/// Smallest eigenpair of the discrete Dirichlet Laplacian at one spacing.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteEigen {
    pub lambda: f64,
    pub vector: Vec<f64>,
    /// ‖(−Δ_h − λ)v‖/‖v‖.
    pub residual: f64,
    pub iterations: usize,
}

/// Inverse iteration with shift 0 and CG inner solves.
pub fn discrete_dirichlet_eigen(domain: &Domain, h: f64) -> Result<DiscreteEigen, SpectralError> {
    let a = Stencil::new(domain, h)?;
    let n = a.len();
    let mut x = vec![1.0 / (n as f64).sqrt(); n];
    let mut ax = vec![0.0; n];
    let mut lambda = 0.0;
    let mut residual = f64::INFINITY;
    let max_iter = 4 * (n as f64).sqrt() as usize + 200;
    for it in 1..=500 {
        a.apply(&x, &mut ax);
        lambda = dot(&x, &ax) / dot(&x, &x);
        let res2: f64 = ax.iter().zip(&x).map(|(p, q)| (p - lambda * q).powi(2)).sum();
        residual = (res2 / dot(&x, &x)).sqrt();
        if residual < 1e-10 * lambda {
            return Ok(DiscreteEigen {
                lambda,
                vector: x,
                residual,
                iterations: it,
            });
        }
        let mut y: Vec<f64> = x.iter().map(|v| v / lambda).collect();
        cg(&a, &x, &mut y, 1e-14, max_iter);
        let norm = dot(&y, &y).sqrt();
        x = y.into_iter().map(|v| v / norm).collect();
    }
    if residual < 1e-8 * lambda.max(1.0) {
        Ok(DiscreteEigen {
            lambda,
            vector: x,
            residual,
            iterations: 500,
        })
    } else {
        Err(SpectralError::NoConvergence { residual })
    }
}

/// Extrapolated first Dirichlet eigenvalue.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EigenResult {
    /// Richardson extrapolation of `lambda_h` and `lambda_h2`.
    pub lambda1: f64,
    pub h: f64,
    pub lambda_h: f64,
    pub lambda_h2: f64,
    /// Assumed convergence order: 2 on grid-aligned boxes, 1 on staircase
    /// approximations of curved or slanted boundaries.
    pub order: u32,
    pub iterations: usize,
    /// Eigen-equation residual of the finer solve.
    pub residual: f64,
}

fn extrapolation_order(domain: &Domain) -> Result<u32, SpectralError> {
    match domain.kind() {
        DomainKind::Interval { .. } | DomainKind::Rectangle { .. } => Ok(2),
        DomainKind::Ball { .. } | DomainKind::Annulus { .. } if domain.dim() == 2 => Ok(1),
        DomainKind::Polygon(_) => Ok(1),
        _ => Err(SpectralError::UnsupportedDomain(format!(
            "{} in dimension {}",
            domain.variant_name(),
            domain.dim()
        ))),
    }
}

/// Spacing used when none is given: 1/64 of the shortest side for grid
/// aligned boxes, 1/128 of it otherwise.
pub fn default_spacing(domain: &Domain) -> Option<f64> {
    let (lo, hi) = domain.bounding_box()?;
    let side = (0..domain.dim()).map(|a| hi[a] - lo[a]).fold(f64::INFINITY, f64::min);
    Some(match extrapolation_order(domain).ok()? {
        2 => side / 64.0,
        _ => side / 128.0,
    })
}

/// λ₁ of the Dirichlet Laplacian for an interval, rectangle, disk, planar
/// annulus or polygon, from solves at `h` and `h/2`.
pub fn first_dirichlet_eigenvalue(domain: &Domain, h: f64) -> Result<EigenResult, SpectralError> {
    let order = extrapolation_order(domain)?;
    let coarse = discrete_dirichlet_eigen(domain, h)?;
    let fine = discrete_dirichlet_eigen(domain, 0.5 * h)?;
    let lambda1 = match order {
        2 => (4.0 * fine.lambda - coarse.lambda) / 3.0,
        _ => 2.0 * fine.lambda - coarse.lambda,
    };
    Ok(EigenResult {
        lambda1,
        h,
        lambda_h: coarse.lambda,
        lambda_h2: fine.lambda,
        order,
        iterations: coarse.iterations + fine.iterations,
        residual: fine.residual,
    })
}

/// N/(4μ²).
pub fn davies_bound(domain: &Domain, sq: &SphereQuadrature, grid: SearchGrid) -> Result<f64, SpectralError> {
    let mu = quasi_inradius(domain, sq, grid)?;
    Ok(domain.dim() as f64 / (4.0 * mu * mu))
}

/// N/(4μ²) + 4Nλ₀²/D∞². Fails with the first bound attached when D∞ = ∞.
pub fn improved_bound(domain: &Domain, sq: &SphereQuadrature, grid: SearchGrid) -> Result<f64, SpectralError> {
    let davies = davies_bound(domain, sq, grid)?;
    let d_inf = domain.essential_diameter();
    if !d_inf.is_finite() {
        return Err(SpectralError::InfiniteEssentialDiameter { davies });
    }
    let l0 = lamb_constant();
    Ok(davies + 4.0 * domain.dim() as f64 * l0 * l0 / (d_inf * d_inf))
}

/// The two bounds next to λ₁.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub domain: String,
    pub dim: usize,
    pub mu: f64,
    pub d_inf: f64,
    pub davies: f64,
    /// Equals `davies` when `improvement_available` is false.
    pub improved: f64,
    pub improvement_available: bool,
    pub lambda1: Option<f64>,
    /// λ₁ − improved.
    pub margin: Option<f64>,
}

impl BoundReport {
    pub const CSV_HEADER: &'static str = "domain,N,mu,D_inf,davies,improved,lambda1,margin";

    /// One CSV row; floats in `{:.16e}` form, absent values empty.
    pub fn csv_row(&self) -> String {
        let opt = |v: Option<f64>| v.map(|x| format!("{x:.16e}")).unwrap_or_default();
        format!(
            "{},{},{:.16e},{:.16e},{:.16e},{:.16e},{},{}",
            self.domain,
            self.dim,
            self.mu,
            self.d_inf,
            self.davies,
            self.improved,
            opt(self.lambda1),
            opt(self.margin)
        )
    }
}

/// Relative slack allowed between the improved bound and λ₁.
pub const DISCRETIZATION_SLACK: f64 = 0.02;

/// Bounds and λ₁ with default resolutions, checking
/// davies < improved ≤ λ₁(1 + 2%).
pub fn bound_report(domain: &Domain) -> Result<BoundReport, SpectralError> {
    let sq = SphereQuadrature::default_for(domain.dim())?;
    bound_report_with(domain, &sq, SearchGrid::default(), default_spacing(domain))
}

pub fn bound_report_with(
    domain: &Domain,
    sq: &SphereQuadrature,
    grid: SearchGrid,
    spacing: Option<f64>,
) -> Result<BoundReport, SpectralError> {
    let mu = quasi_inradius(domain, sq, grid)?;
    let davies = domain.dim() as f64 / (4.0 * mu * mu);
    let d_inf = domain.essential_diameter();
    let (improved, available) = match improved_bound(domain, sq, grid) {
        Ok(v) => (v, true),
        Err(SpectralError::InfiniteEssentialDiameter { davies }) => (davies, false),
        Err(e) => return Err(e),
    };
    let lambda1 = match spacing {
        Some(h) if extrapolation_order(domain).is_ok() => Some(first_dirichlet_eigenvalue(domain, h)?.lambda1),
        _ => None,
    };
    if available && !(davies < improved) {
        return Err(SpectralError::BoundViolation(format!("davies {davies} ≥ improved {improved}")));
    }
    if let Some(l1) = lambda1 {
        if improved > l1 * (1.0 + DISCRETIZATION_SLACK) {
            return Err(SpectralError::BoundViolation(format!("improved {improved} > λ₁ {l1}")));
        }
    }
    Ok(BoundReport {
        domain: domain.variant_name().into(),
        dim: domain.dim(),
        mu,
        d_inf,
        davies,
        improved,
        improvement_available: available,
        lambda1,
        margin: lambda1.map(|l| l - improved),
    })
}
