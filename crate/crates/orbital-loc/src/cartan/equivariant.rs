//! Equivariant differential forms and the Cartan coboundary.

use super::forms::Form;
use super::manifold::TorusSpace;
use super::scalar::ScalarField;
use crate::error::{Error, Result};
use num_complex::Complex64;

/// Real polynomial on the torus Lie algebra (rank 1 or 2).
#[derive(Debug, Clone)]
pub struct Poly {
    pub rank: usize,
    /// (exponents, coefficient) pairs.
    pub terms: Vec<(Vec<u32>, f64)>,
}

impl Poly {
    pub fn constant(rank: usize, c: f64) -> Self {
        Poly {
            rank,
            terms: if c == 0.0 { vec![] } else { vec![(vec![0; rank], c)] },
        }
    }

    pub fn one(rank: usize) -> Self {
        Poly::constant(rank, 1.0)
    }

    pub fn monomial(rank: usize, exps: Vec<u32>, c: f64) -> Self {
        assert_eq!(exps.len(), rank);
        Poly {
            rank,
            terms: vec![(exps, c)],
        }
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                c * e
                    .iter()
                    .zip(x)
                    .map(|(&k, &xi)| xi.powi(k as i32))
                    .product::<f64>()
            })
            .sum()
    }

    /// P(X) * x_i.
    pub fn mul_coord(&self, i: usize) -> Poly {
        Poly {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e = e.clone();
                    e[i] += 1;
                    (e, *c)
                })
                .collect(),
        }
    }

    pub fn scale(&self, s: f64) -> Poly {
        Poly {
            rank: self.rank,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * s)).collect(),
        }
    }

    pub fn degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|(e, _)| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }
}

/// Finite sum of polynomial coefficients times catalog forms,
/// X |-> sum_a P_a(X) omega_a.
#[derive(Debug, Clone)]
pub struct EquivariantForm {
    pub rank: usize,
    pub terms: Vec<(Poly, Form)>,
}

impl EquivariantForm {
    pub fn new(rank: usize, terms: Vec<(Poly, Form)>) -> Self {
        EquivariantForm { rank, terms }
    }

    pub fn constant_one(rank: usize, dim: usize) -> Self {
        EquivariantForm::new(
            rank,
            vec![(Poly::one(rank), Form::function(ScalarField::constant(dim, 1.0)))],
        )
    }

    /// The inhomogeneous form alpha(X).
    pub fn eval_at(&self, x: &[f64]) -> Form {
        assert_eq!(x.len(), self.rank);
        let dim = self.terms.first().map_or(0, |(_, f)| f.dim);
        let mut out = Form::zero(dim);
        for (p, omega) in &self.terms {
            out = out.add(&omega.scale(p.eval(x)));
        }
        out
    }

    pub fn add(&self, other: &EquivariantForm) -> EquivariantForm {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.clone());
        EquivariantForm::new(self.rank, terms)
    }

    pub fn scale(&self, s: f64) -> EquivariantForm {
        EquivariantForm::new(
            self.rank,
            self.terms.iter().map(|(p, f)| (p.scale(s), f.clone())).collect(),
        )
    }

    /// Cartan coboundary d_g alpha(X) = d(alpha(X)) - iota(X_M) alpha(X),
    /// closed on polynomial-coefficient forms: the result is again a finite
    /// sum of polynomials times catalog forms.
    pub fn d_g(&self, space: &TorusSpace) -> Result<EquivariantForm> {
        let mut terms: Vec<(Poly, Form)> = Vec::new();
        for (p, omega) in &self.terms {
            terms.push((p.clone(), omega.d()?));
            for (i, gen) in space.action.generators.iter().enumerate() {
                let contracted = omega.contract(gen);
                if !contracted.terms.is_empty() {
                    terms.push((p.mul_coord(i).scale(-1.0), contracted));
                }
            }
        }
        Ok(EquivariantForm::new(self.rank, terms))
    }
}

/// d_g alpha evaluated at X, as an inhomogeneous form.
pub fn d_g_at(space: &TorusSpace, alpha: &EquivariantForm, x: &[f64]) -> Result<Form> {
    Ok(alpha.d_g(space)?.eval_at(x))
}

/// int_M alpha(X): quadrature of the top-degree component with the chart
/// orientation.
pub fn equivariant_integral(
    space: &TorusSpace,
    alpha: &EquivariantForm,
    x: &[f64],
    tol: f64,
) -> Result<Complex64> {
    let form = alpha.eval_at(x);
    space
        .manifold
        .integrate_top_weighted(&form, |_| Complex64::new(1.0, 0.0), tol)
}

/// sigma_g = mu(X) + sigma as an equivariant form; equivariantly closed by
/// the moment-map property.
pub fn sigma_g(space: &TorusSpace) -> EquivariantForm {
    let rank = space.action.rank;
    let mut terms: Vec<(Poly, Form)> = Vec::new();
    for (i, f) in space.moment.components.iter().enumerate() {
        let mut exps = vec![0u32; rank];
        exps[i] = 1;
        terms.push((
            Poly::monomial(rank, exps, 1.0),
            Form::function(f.clone()),
        ));
    }
    terms.push((Poly::one(rank), space.manifold.sigma.clone()));
    EquivariantForm::new(rank, terms)
}

/// Report of the fixed-point dependence check.
#[derive(Debug, Clone)]
pub struct DependenceReport {
    pub closed_residual: f64,
    pub restriction_residual: f64,
    pub integral_difference: f64,
    pub pass: bool,
}

/// Checks that two closed equivariant forms agreeing on the torus fixed
/// set have equal integrals: closedness and restriction agreement are
/// verified at samples, then both integrals are compared to `tol`.
pub fn berline_vergne_dependence_check(
    space: &TorusSpace,
    alpha1: &EquivariantForm,
    alpha2: &EquivariantForm,
    x: &[f64],
    tol: f64,
) -> Result<DependenceReport> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x0BEC);
    let mut closed_residual: f64 = 0.0;
    for alpha in [alpha1, alpha2] {
        let da = alpha.d_g(space)?.eval_at(x);
        for _ in 0..25 {
            let p = space.manifold.random_point(&mut rng);
            closed_residual = closed_residual.max(da.max_abs_at(&p));
        }
    }
    if closed_residual > 1e-8 {
        return Err(Error::NotClosed(closed_residual));
    }
    let mut restriction_residual: f64 = 0.0;
    for fp in &space.action.fixed_points {
        let v1 = alpha1.eval_at(x).scalar_part_at(fp);
        let v2 = alpha2.eval_at(x).scalar_part_at(fp);
        restriction_residual = restriction_residual.max((v1 - v2).abs());
    }
    let i1 = equivariant_integral(space, alpha1, x, 1e-9)?;
    let i2 = equivariant_integral(space, alpha2, x, 1e-9)?;
    let integral_difference = (i1 - i2).norm();
    Ok(DependenceReport {
        closed_residual,
        restriction_residual,
        integral_difference,
        pass: integral_difference < tol,
    })
}
