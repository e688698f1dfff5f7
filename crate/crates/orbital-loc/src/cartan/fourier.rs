//! Rank-1 Fourier conventions and the local Fourier transform V.
//!
//! The one place where Fourier constants live. The forward transform is
//! F(Phi)(xi) = (2pi)^{-n} int Phi(X) e^{-i<xi,X>} dX with the inverse
//! Phi(X) = int e^{i<xi,X>} F(Phi)(xi) d xi, so that round-trips are exact
//! and the window identity F(int_M alpha) = i^n int alpha_red
//! e^{-i(xi,Omega)} vol_omega holds without stray constants.

use crate::error::{Error, Result};
use crate::quad::pairwise_sum_c;
use num_complex::Complex64;

/// Scale carried by the forward transform in rank n.
pub fn forward_scale(dim_g: usize) -> f64 {
    (2.0 * std::f64::consts::PI).powi(-(dim_g as i32))
}

/// Uniform grid xi_k = x0 + k h, k = 0..n-1.
#[derive(Debug, Clone, Copy)]
pub struct Grid1 {
    pub x0: f64,
    pub h: f64,
    pub n: usize,
}

impl Grid1 {
    pub fn symmetric(half_width: f64, n: usize) -> Self {
        let h = 2.0 * half_width / (n as f64 - 1.0);
        Grid1 {
            x0: -half_width,
            h,
            n,
        }
    }

    pub fn node(&self, k: usize) -> f64 {
        self.x0 + k as f64 * self.h
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.n).map(|k| self.node(k)).collect()
    }

    pub fn sample<F: Fn(f64) -> Complex64>(&self, f: F) -> Vec<Complex64> {
        self.nodes().iter().map(|&x| f(x)).collect()
    }
}

/// Forward transform of grid samples, evaluated at one frequency.
/// Assumes the samples decay to negligible size at the grid ends.
pub fn forward_on_grid(grid: &Grid1, samples: &[Complex64], xi: f64) -> Complex64 {
    let terms: Vec<Complex64> = samples
        .iter()
        .enumerate()
        .map(|(k, &s)| s * Complex64::new(0.0, -xi * grid.node(k)).exp())
        .collect();
    pairwise_sum_c(&terms) * grid.h * forward_scale(1)
}

/// Inverse transform of grid samples in xi, evaluated at one point.
pub fn inverse_on_grid(grid: &Grid1, samples: &[Complex64], x: f64) -> Complex64 {
    let terms: Vec<Complex64> = samples
        .iter()
        .enumerate()
        .map(|(k, &s)| s * Complex64::new(0.0, x * grid.node(k)).exp())
        .collect();
    pairwise_sum_c(&terms) * grid.h
}

/// Rank-1 polynomial-coefficient form on an open set of g*: the top-degree
/// data sum_a P_a(X) alpha_a(xi) d xi with alpha_a sampled on a grid.
pub struct PolyFormOnDual {
    pub grid: Grid1,
    /// (polynomial coefficients c_0..c_d, samples of alpha_a).
    pub terms: Vec<(Vec<f64>, Vec<Complex64>)>,
}

const MAX_POLY_DEGREE: usize = 6;

/// 9-point, 8th-order central first-derivative stencil (offsets -4..4).
const D1_STENCIL: [f64; 9] = [
    1.0 / 280.0,
    -4.0 / 105.0,
    1.0 / 5.0,
    -4.0 / 5.0,
    0.0,
    4.0 / 5.0,
    -1.0 / 5.0,
    4.0 / 105.0,
    -1.0 / 280.0,
];

fn derivative(samples: &[Complex64], h: f64) -> Vec<Complex64> {
    let n = samples.len();
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    for k in 0..n {
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, &c) in D1_STENCIL.iter().enumerate() {
            let off = j as isize - 4;
            let idx = k as isize + off;
            if (0..n as isize).contains(&idx) {
                acc += samples[idx as usize] * c;
            }
        }
        out[k] = acc / h;
    }
    out
}

fn apply_poly_of_iddxi(coeffs: &[f64], samples: &[Complex64], h: f64) -> Vec<Complex64> {
    // P(i d/dxi) alpha = sum_k c_k (i d/dxi)^k alpha
    let n = samples.len();
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    let mut current: Vec<Complex64> = samples.to_vec();
    for (k, &c) in coeffs.iter().enumerate() {
        if k > 0 {
            current = derivative(&current, h)
                .into_iter()
                .map(|v| v * Complex64::new(0.0, 1.0))
                .collect();
        }
        if c != 0.0 {
            for (o, &v) in out.iter_mut().zip(&current) {
                *o += v * c;
            }
        }
    }
    out
}

/// The local Fourier transform V(alpha) = (sum_a P_a(i d/dxi) alpha_a) dxi,
/// returned as grid samples of the density.
///
/// Errors with DegreeOverflow above degree 6 and GridTooCoarse when the
/// half-resolution evaluation disagrees beyond `tol`.
pub fn local_fourier_v(pf: &PolyFormOnDual, tol: f64) -> Result<Vec<Complex64>> {
    for (coeffs, _) in &pf.terms {
        if coeffs.len() > MAX_POLY_DEGREE + 1 {
            return Err(Error::DegreeOverflow(coeffs.len() - 1, MAX_POLY_DEGREE));
        }
    }
    let n = pf.grid.n;
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    for (coeffs, samples) in &pf.terms {
        let v = apply_poly_of_iddxi(coeffs, samples, pf.grid.h);
        for (o, x) in out.iter_mut().zip(&v) {
            *o += x;
        }
    }
    // error estimate: recompute on the even-index subgrid (step 2h) and
    // compare where both exist
    let mut worst: f64 = 0.0;
    for (coeffs, samples) in &pf.terms {
        if coeffs.len() <= 1 {
            continue; // degree 0 is exact on any grid
        }
        let coarse: Vec<Complex64> = samples.iter().step_by(2).copied().collect();
        let v_coarse = apply_poly_of_iddxi(coeffs, &coarse, 2.0 * pf.grid.h);
        let v_fine = apply_poly_of_iddxi(coeffs, samples, pf.grid.h);
        for (kc, vc) in v_coarse.iter().enumerate() {
            let kf = 2 * kc;
            // skip stencil-boundary nodes of the coarse grid
            if kc < 4 || kc + 4 >= coarse.len() {
                continue;
            }
            worst = worst.max((vc - v_fine[kf]).norm());
        }
    }
    if worst > tol {
        return Err(Error::GridTooCoarse { est: worst, tol });
    }
    Ok(out)
}

/// d_g of e^{i(xi,X)} q(X) b(xi) in the rank-1 dual model (trivial coadjoint
/// action), expressed in the polynomial-coefficient decomposition that V
/// consumes: the top part is e^{i xi x}[x q(x) (i b) + q(x) b'] d xi.
pub fn dual_model_d_g(
    grid: &Grid1,
    q: &[f64],
    b: &[Complex64],
    b_prime: &[Complex64],
) -> PolyFormOnDual {
    let mut xq = vec![0.0];
    xq.extend_from_slice(q);
    let ib: Vec<Complex64> = b.iter().map(|&v| v * Complex64::new(0.0, 1.0)).collect();
    PolyFormOnDual {
        grid: *grid,
        terms: vec![(xq, ib), (q.to_vec(), b_prime.to_vec())],
    }
}
