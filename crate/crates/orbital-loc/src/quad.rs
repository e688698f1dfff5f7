//! Quadrature rules and deterministic summation.
//!
//! Deterministic contract: for a fixed rule (order, panel count, seed) the
//! result is independent of evaluation order; accumulation uses pairwise
//! summation throughout.

use crate::error::{Error, Result};
use crate::linalg::symmetric_eigen;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Pairwise summation of real values.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    match xs.len() {
        0 => 0.0,
        1 => xs[0],
        2 => xs[0] + xs[1],
        n => {
            let mid = n / 2;
            pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
        }
    }
}

/// Pairwise summation of complex values.
pub fn pairwise_sum_c(xs: &[Complex64]) -> Complex64 {
    match xs.len() {
        0 => Complex64::new(0.0, 0.0),
        1 => xs[0],
        2 => xs[0] + xs[1],
        n => {
            let mid = n / 2;
            pairwise_sum_c(&xs[..mid]) + pairwise_sum_c(&xs[mid..])
        }
    }
}

/// Gauss-Legendre rule on [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    /// Nodes by Newton iteration on the Legendre recurrence.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..n {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            for _ in 0..100 {
                let (p, dp) = legendre_with_deriv(n, x);
                let dx = p / dp;
                x -= dx;
                if dx.abs() < 1e-15 {
                    break;
                }
            }
            let (_, dp) = legendre_with_deriv(n, x);
            nodes[n - 1 - i] = x;
            weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
        GaussLegendre { nodes, weights }
    }

    /// Integrate f over [a, b].
    pub fn integrate<F: Fn(f64) -> f64>(&self, a: f64, b: f64, f: F) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let terms: Vec<f64> = self
            .nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(mid + half * x))
            .collect();
        half * pairwise_sum(&terms)
    }

    /// Integrate a complex-valued f over [a, b].
    pub fn integrate_c<F: Fn(f64) -> Complex64>(&self, a: f64, b: f64, f: F) -> Complex64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let terms: Vec<Complex64> = self
            .nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| f(mid + half * x) * w)
            .collect();
        pairwise_sum_c(&terms) * half
    }

    /// Nodes and weights mapped to [a, b].
    pub fn mapped(&self, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        (
            self.nodes.iter().map(|&x| mid + half * x).collect(),
            self.weights.iter().map(|&w| w * half).collect(),
        )
    }
}

fn legendre_with_deriv(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Uniform rule on [0, 2pi), exact for trigonometric polynomials of degree
/// below the node count.
pub fn periodic_nodes(n: usize) -> (Vec<f64>, f64) {
    let h = 2.0 * PI / n as f64;
    ((0..n).map(|k| k as f64 * h).collect(), h)
}

/// Gauss-Hermite rule for the weight e^{-x^2} on the whole line, built by
/// Golub-Welsch on the Hermite Jacobi matrix.
#[derive(Debug, Clone)]
pub struct GaussHermite {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussHermite {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        let mut jac = vec![vec![0.0; n]; n];
        for k in 1..n {
            let b = (k as f64 / 2.0).sqrt();
            jac[k - 1][k] = b;
            jac[k][k - 1] = b;
        }
        let (vals, vecs) = symmetric_eigen(&jac);
        let mu0 = PI.sqrt();
        let weights: Vec<f64> = (0..n).map(|j| mu0 * vecs[0][j] * vecs[0][j]).collect();
        GaussHermite {
            nodes: vals,
            weights,
        }
    }

    /// Integrate g(x) e^{-c x^2 / 2} dx over the line, c > 0.
    pub fn integrate_gaussian_c<F: Fn(f64) -> Complex64>(&self, c: f64, g: F) -> Complex64 {
        // substitute x = y sqrt(2/c)
        let s = (2.0 / c).sqrt();
        let terms: Vec<Complex64> = self
            .nodes
            .iter()
            .zip(&self.weights)
            .map(|(&y, &w)| g(s * y) * w)
            .collect();
        pairwise_sum_c(&terms) * s
    }
}

/// Composite Gauss-Legendre with panel doubling until two successive
/// estimates differ by less than `tol`, capped at `max_nodes` total nodes.
pub fn adaptive_panels_c<F: Fn(f64) -> Complex64>(
    a: f64,
    b: f64,
    tol: f64,
    max_nodes: usize,
    f: F,
) -> Result<Complex64> {
    let rule = GaussLegendre::new(16);
    let mut panels = 1usize;
    let mut prev = composite_c(&rule, a, b, panels, &f);
    loop {
        panels *= 2;
        if panels * 16 > max_nodes {
            return Err(Error::QuadratureFailure(format!(
                "no convergence below {tol:.1e} within {max_nodes} nodes"
            )));
        }
        let cur = composite_c(&rule, a, b, panels, &f);
        if (cur - prev).norm() < tol {
            return Ok(cur);
        }
        prev = cur;
    }
}

fn composite_c<F: Fn(f64) -> Complex64>(
    rule: &GaussLegendre,
    a: f64,
    b: f64,
    panels: usize,
    f: &F,
) -> Complex64 {
    let h = (b - a) / panels as f64;
    let parts: Vec<Complex64> = (0..panels)
        .map(|k| rule.integrate_c(a + k as f64 * h, a + (k + 1) as f64 * h, f))
        .collect();
    pairwise_sum_c(&parts)
}
