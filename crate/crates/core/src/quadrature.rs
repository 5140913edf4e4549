//! Deterministic quadrature: Gauss–Legendre rules, compensated sums and a
//! tensor midpoint grid with local refinement near the cut locus.
//!
//! Parallel reductions always combine partial sums in index order, so a
//! result does not depend on the number of threads.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use rayon::prelude::*;

use crate::geometry::Point;

/// Neumaier-compensated running sum.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Compensated sum of a sequence, in order.
pub fn compensated_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut s = CompensatedSum::default();
    values.into_iter().for_each(|v| s.add(v));
    s.value()
}

fn sum_arrays<const K: usize>(parts: impl IntoIterator<Item = [f64; K]>) -> [f64; K] {
    let mut acc = [CompensatedSum::default(); K];
    for p in parts {
        for k in 0..K {
            acc[k].add(p[k]);
        }
    }
    acc.map(|a| a.value())
}

fn legendre_rule(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (z * p1 - p0) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    (x, w)
}

/// Gauss–Legendre nodes and weights on [−1, 1], cached per order.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    static CACHE: OnceLock<Mutex<HashMap<usize, (Vec<f64>, Vec<f64>)>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("quadrature cache poisoned");
    guard.entry(n).or_insert_with(|| legendre_rule(n)).clone()
}

/// Order of the per-panel rule used by [`integrate_1d`].
pub const PANEL_ORDER: usize = 10;

/// Composite Gauss–Legendre over consecutive breakpoints, with `panels`
/// equal panels between each pair.
pub fn integrate_1d(f: impl Fn(f64) -> f64, breakpoints: &[f64], panels: usize) -> f64 {
    let (x, w) = gauss_legendre(PANEL_ORDER);
    let mut s = CompensatedSum::default();
    for piece in breakpoints.windows(2) {
        let (a, b) = (piece[0], piece[1]);
        if b <= a {
            continue;
        }
        let h = (b - a) / panels as f64;
        for p in 0..panels {
            let c = a + (p as f64 + 0.5) * h;
            for (xi, wi) in x.iter().zip(&w) {
                s.add(0.5 * h * wi * f(c + 0.5 * h * xi));
            }
        }
    }
    s.value()
}

/// A tensor grid of equal cells over a box. In dimension 1 each cell is a
/// Gauss–Legendre panel; in dimension 2 and 3 each cell uses the midpoint
/// rule and may be subdivided recursively.
#[derive(Debug, Clone)]
pub struct Grid {
    dim: usize,
    lo: Point,
    h: Point,
    n: [usize; 3],
}

impl Grid {
    /// Covers `[lo, hi]` with about `cells` cells per axis, shifting the
    /// grid so that each given anchor coordinate falls on a cell face.
    pub fn new(dim: usize, lo: &Point, hi: &Point, cells: usize, anchors: [Option<f64>; 3]) -> Self {
        let mut g_lo = Point::zeros();
        let mut h = Point::zeros();
        let mut n = [1usize; 3];
        for i in 0..dim {
            let width = (hi[i] - lo[i]).max(f64::MIN_POSITIVE);
            let hi_i = width / cells as f64;
            let mut start = lo[i];
            if let Some(a) = anchors[i] {
                start = a - ((a - lo[i]) / hi_i).ceil() * hi_i;
            }
            h[i] = hi_i;
            g_lo[i] = start;
            n[i] = (((hi[i] - start) / hi_i) - 1e-9).ceil().max(1.0) as usize;
        }
        Self { dim, lo: g_lo, h, n }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn spacing(&self) -> Point {
        self.h
    }

    pub fn cell_count(&self) -> usize {
        self.n[..self.dim].iter().product()
    }

    /// Integrates `f` over the grid. `f` returns `None` at points to skip.
    /// A cell is split into 2^N children while `refine(center, half_widths)`
    /// holds, up to `max_depth` levels.
    pub fn integrate<const K: usize, F, R>(&self, refine: R, max_depth: usize, f: F) -> [f64; K]
    where
        F: Fn(&Point) -> Option<[f64; K]> + Sync,
        R: Fn(&Point, &Point) -> bool + Sync,
    {
        if self.dim == 1 {
            return self.integrate_1d_panels(&f);
        }
        let rows: Vec<[f64; K]> = (0..self.n[0])
            .into_par_iter()
            .map(|i| {
                let mut acc = [CompensatedSum::default(); K];
                let n2 = if self.dim == 3 { self.n[2] } else { 1 };
                for j in 0..self.n[1] {
                    for k in 0..n2 {
                        let mut c = self.lo;
                        c[0] += (i as f64 + 0.5) * self.h[0];
                        c[1] += (j as f64 + 0.5) * self.h[1];
                        if self.dim == 3 {
                            c[2] += (k as f64 + 0.5) * self.h[2];
                        }
                        let v = self.cell(&c, &(self.h * 0.5), 0, max_depth, &refine, &f);
                        for t in 0..K {
                            acc[t].add(v[t]);
                        }
                    }
                }
                acc.map(|a| a.value())
            })
            .collect();
        sum_arrays(rows)
    }

    fn cell<const K: usize, F, R>(
        &self,
        c: &Point,
        half: &Point,
        depth: usize,
        max_depth: usize,
        refine: &R,
        f: &F,
    ) -> [f64; K]
    where
        F: Fn(&Point) -> Option<[f64; K]>,
        R: Fn(&Point, &Point) -> bool,
    {
        if depth < max_depth && refine(c, half) {
            let q = half * 0.5;
            let mut parts = Vec::with_capacity(1 << self.dim);
            for mask in 0..(1usize << self.dim) {
                let mut cc = *c;
                for a in 0..self.dim {
                    cc[a] += if mask & (1 << a) == 0 { -q[a] } else { q[a] };
                }
                parts.push(self.cell(&cc, &q, depth + 1, max_depth, refine, f));
            }
            return sum_arrays(parts);
        }
        let vol: f64 = (0..self.dim).map(|a| 2.0 * half[a]).product();
        match f(c) {
            Some(v) => v.map(|x| x * vol),
            None => [0.0; K],
        }
    }

    fn integrate_1d_panels<const K: usize, F>(&self, f: &F) -> [f64; K]
    where
        F: Fn(&Point) -> Option<[f64; K]> + Sync,
    {
        let (x, w) = gauss_legendre(PANEL_ORDER);
        let h = self.h[0];
        let panels: Vec<[f64; K]> = (0..self.n[0])
            .into_par_iter()
            .map(|p| {
                let c = self.lo[0] + (p as f64 + 0.5) * h;
                let mut acc = [CompensatedSum::default(); K];
                for (xi, wi) in x.iter().zip(&w) {
                    let pt = Point::new(c + 0.5 * h * xi, 0.0, 0.0);
                    if let Some(v) = f(&pt) {
                        for t in 0..K {
                            acc[t].add(0.5 * h * wi * v[t]);
                        }
                    }
                }
                acc.map(|a| a.value())
            })
            .collect();
        sum_arrays(panels)
    }
}
