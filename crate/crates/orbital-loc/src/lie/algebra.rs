//! Explicit anti-Hermitian matrix models of u(1), su(2), su(3).

use super::roots::{build_root_system, CartanElement, RootFamily, RootSystem};
use crate::error::{Error, Result};
use crate::linalg::{
    cmat_commutator, cmat_zero, hermitian_eigenvalues, minus_trace_product, CMat,
};
use num_complex::Complex64;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CatalogGroup {
    U1,
    Su2,
    Su3,
}

impl CatalogGroup {
    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "u1" | "s1" | "circle" => Ok(CatalogGroup::U1),
            "su2" => Ok(CatalogGroup::Su2),
            "su3" => Ok(CatalogGroup::Su3),
            other => Err(Error::UnsupportedFamily(other.to_string())),
        }
    }

    pub fn rank(self) -> usize {
        match self {
            CatalogGroup::U1 => 1,
            CatalogGroup::Su2 => 1,
            CatalogGroup::Su3 => 2,
        }
    }
}

/// Matrix Lie algebra with an orthonormal anti-Hermitian basis under
/// <A,B> = -tr(AB).
pub struct MatrixAlgebra {
    pub group: CatalogGroup,
    pub dim: usize,
    pub matrix_size: usize,
    pub basis: Vec<CMat>,
    /// Indices of the Cartan subalgebra inside `basis`.
    pub cartan_indices: Vec<usize>,
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

impl MatrixAlgebra {
    pub fn new(group: CatalogGroup) -> Self {
        let inv_s2 = 1.0 / std::f64::consts::SQRT_2;
        match group {
            CatalogGroup::U1 => MatrixAlgebra {
                group,
                dim: 1,
                matrix_size: 1,
                basis: vec![vec![vec![c(0.0, 1.0)]]],
                cartan_indices: vec![0],
            },
            CatalogGroup::Su2 => {
                // E_k = i sigma_k / sqrt(2)
                let e1 = vec![vec![c(0.0, 0.0), c(0.0, inv_s2)], vec![c(0.0, inv_s2), c(0.0, 0.0)]];
                let e2 = vec![vec![c(0.0, 0.0), c(inv_s2, 0.0)], vec![c(-inv_s2, 0.0), c(0.0, 0.0)]];
                let e3 = vec![vec![c(0.0, inv_s2), c(0.0, 0.0)], vec![c(0.0, 0.0), c(0.0, -inv_s2)]];
                MatrixAlgebra {
                    group,
                    dim: 3,
                    matrix_size: 2,
                    basis: vec![e1, e2, e3],
                    cartan_indices: vec![2],
                }
            }
            CatalogGroup::Su3 => {
                // T_a = i lambda_a / sqrt(2) over the Gell-Mann basis
                let s3 = (3.0f64).sqrt();
                let mut basis = Vec::with_capacity(8);
                let mut push = |entries: &[(usize, usize, Complex64)]| {
                    let mut m = cmat_zero(3);
                    for &(i, j, v) in entries {
                        m[i][j] = v * c(0.0, inv_s2);
                    }
                    basis.push(m);
                };
                push(&[(0, 1, c(1.0, 0.0)), (1, 0, c(1.0, 0.0))]);
                push(&[(0, 1, c(0.0, -1.0)), (1, 0, c(0.0, 1.0))]);
                push(&[(0, 0, c(1.0, 0.0)), (1, 1, c(-1.0, 0.0))]);
                push(&[(0, 2, c(1.0, 0.0)), (2, 0, c(1.0, 0.0))]);
                push(&[(0, 2, c(0.0, -1.0)), (2, 0, c(0.0, 1.0))]);
                push(&[(1, 2, c(1.0, 0.0)), (2, 1, c(1.0, 0.0))]);
                push(&[(1, 2, c(0.0, -1.0)), (2, 1, c(0.0, 1.0))]);
                push(&[
                    (0, 0, c(1.0 / s3, 0.0)),
                    (1, 1, c(1.0 / s3, 0.0)),
                    (2, 2, c(-2.0 / s3, 0.0)),
                ]);
                MatrixAlgebra {
                    group,
                    dim: 8,
                    matrix_size: 3,
                    basis,
                    cartan_indices: vec![2, 7],
                }
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.cartan_indices.len()
    }

    /// Root system of the associated compact group; empty for the torus.
    pub fn root_system(&self) -> RootSystem {
        match self.group {
            CatalogGroup::U1 => RootSystem::torus(1),
            CatalogGroup::Su2 => build_root_system(RootFamily::A1, 1).unwrap(),
            CatalogGroup::Su3 => build_root_system(RootFamily::A2, 2).unwrap(),
        }
    }

    fn check_membership(&self, x: &CMat) -> Result<()> {
        let n = self.matrix_size;
        if x.len() != n {
            return Err(Error::NotInAlgebra(format!(
                "expected {n}x{n} matrix, got {}x{}",
                x.len(),
                x.first().map_or(0, Vec::len)
            )));
        }
        let mut trace = c(0.0, 0.0);
        for i in 0..n {
            trace += x[i][i];
            for j in 0..n {
                let residual = (x[i][j] + x[j][i].conj()).norm();
                if residual > 1e-10 {
                    return Err(Error::NotInAlgebra(format!(
                        "not anti-Hermitian: residual {residual:.3e} at ({i},{j})"
                    )));
                }
            }
        }
        if self.group != CatalogGroup::U1 && trace.norm() > 1e-10 {
            return Err(Error::NotInAlgebra(format!(
                "not traceless: |tr| = {:.3e}",
                trace.norm()
            )));
        }
        Ok(())
    }

    /// Matrix of ad X = [X, .] in the orthonormal basis; skew-symmetric.
    pub fn ad_matrix(&self, x: &CMat) -> Result<Vec<Vec<f64>>> {
        self.check_membership(x)?;
        let d = self.dim;
        let mut ad = vec![vec![0.0; d]; d];
        for (b, eb) in self.basis.iter().enumerate() {
            let bracket = cmat_commutator(x, eb);
            for (a, ea) in self.basis.iter().enumerate() {
                ad[a][b] = minus_trace_product(ea, &bracket);
            }
        }
        Ok(ad)
    }

    /// Element of t as a matrix, from orthonormal coordinates.
    pub fn cartan_matrix_from_coords(&self, coords: &[f64]) -> CMat {
        let n = self.matrix_size;
        let mut m = cmat_zero(n);
        for (k, &ci) in self.cartan_indices.iter().enumerate() {
            for i in 0..n {
                for j in 0..n {
                    m[i][j] += self.basis[ci][i][j] * coords[k];
                }
            }
        }
        m
    }

    /// Conjugates X into the closed dominant Cartan chamber by eigenvalue
    /// matching: the sorted spectrum of -iX determines the representative.
    pub fn cartan_representative(&self, x: &CMat) -> Result<CartanElement> {
        self.check_membership(x)?;
        let n = self.matrix_size;
        let mut h = cmat_zero(n);
        for i in 0..n {
            for j in 0..n {
                h[i][j] = x[i][j] * c(0.0, -1.0);
            }
        }
        let mut evals = hermitian_eigenvalues(&h);
        evals.reverse(); // descending
        let coords = match self.group {
            CatalogGroup::U1 => vec![evals[0]],
            CatalogGroup::Su2 => vec![std::f64::consts::SQRT_2 * evals[0]],
            CatalogGroup::Su3 => {
                let (d1, d2) = (evals[0], evals[1]);
                vec![
                    (d1 - d2) / std::f64::consts::SQRT_2,
                    (6.0f64).sqrt() * (d1 + d2) / 2.0,
                ]
            }
        };
        Ok(CartanElement::new(coords))
    }

    /// Random algebra element with independent N(0, scale^2) coordinates.
    pub fn random_element<R: rand::Rng>(&self, rng: &mut R, scale: f64) -> CMat {
        let n = self.matrix_size;
        let mut m = cmat_zero(n);
        for b in &self.basis {
            let coeff: f64 = {
                // Box-Muller keeps us off rand_distr for one distribution
                let u1: f64 = rng.gen_range(1e-12..1.0);
                let u2: f64 = rng.gen_range(0.0..1.0);
                (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
            };
            for i in 0..n {
                for j in 0..n {
                    m[i][j] += b[i][j] * (coeff * scale);
                }
            }
        }
        m
    }
}
