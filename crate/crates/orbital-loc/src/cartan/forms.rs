//! Inhomogeneous differential forms on a chart, with analytic exterior
//! derivative and contraction.

use super::scalar::ScalarField;
use crate::error::{Error, Result};
use std::collections::BTreeMap;

/// Vector field in chart components.
pub type VectorField = Vec<ScalarField>;

/// Sum of coefficient functions times wedge monomials dx_I, indexed by
/// strictly increasing index tuples. Degree-0 parts use the empty tuple.
#[derive(Clone, Debug)]
pub struct Form {
    pub dim: usize,
    pub terms: BTreeMap<Vec<u8>, ScalarField>,
}

impl Form {
    pub fn zero(dim: usize) -> Self {
        Form {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn function(f: ScalarField) -> Self {
        let mut out = Form::zero(f.dim());
        out.add_term(&[], f);
        out
    }

    pub fn monomial(dim: usize, idx: &[u8], f: ScalarField) -> Self {
        let mut out = Form::zero(dim);
        out.add_term(idx, f);
        out
    }

    /// Adds coefficient * dx_idx, sorting the indices and tracking the sign
    /// of the permutation; repeated indices annihilate the term.
    pub fn add_term(&mut self, idx: &[u8], f: ScalarField) {
        if f.is_zero() {
            return;
        }
        let mut v = idx.to_vec();
        // bubble sort, counting swaps
        let mut sign = 1.0;
        let n = v.len();
        for i in 0..n {
            for j in 0..n.saturating_sub(1 + i) {
                if v[j] > v[j + 1] {
                    v.swap(j, j + 1);
                    sign = -sign;
                }
            }
        }
        if v.windows(2).any(|w| w[0] == w[1]) {
            return;
        }
        let addend = f.scale(sign);
        match self.terms.remove(&v) {
            Some(existing) => {
                let combined = existing.add(&addend);
                if !combined.is_zero() {
                    self.terms.insert(v, combined);
                }
            }
            None => {
                self.terms.insert(v, addend);
            }
        }
    }

    pub fn add(&self, other: &Form) -> Form {
        let mut out = self.clone();
        for (idx, f) in &other.terms {
            out.add_term(idx, f.clone());
        }
        out
    }

    pub fn scale(&self, c: f64) -> Form {
        let mut out = Form::zero(self.dim);
        for (idx, f) in &self.terms {
            out.add_term(idx, f.scale(c));
        }
        out
    }

    pub fn scale_field(&self, g: &ScalarField) -> Form {
        let mut out = Form::zero(self.dim);
        for (idx, f) in &self.terms {
            out.add_term(idx, f.mul(g));
        }
        out
    }

    pub fn wedge(&self, other: &Form) -> Form {
        let mut out = Form::zero(self.dim);
        for (ia, fa) in &self.terms {
            for (ib, fb) in &other.terms {
                let mut idx = ia.clone();
                idx.extend_from_slice(ib);
                out.add_term(&idx, fa.mul(fb));
            }
        }
        out
    }

    /// Exterior derivative from registered partials.
    pub fn d(&self) -> Result<Form> {
        let mut out = Form::zero(self.dim);
        for (idx, f) in &self.terms {
            let partials = f.partials().ok_or_else(|| {
                Error::UnregisteredDerivative(f.name().to_string())
            })?;
            for (k, df) in partials.iter().enumerate() {
                if df.is_zero() || idx.contains(&(k as u8)) {
                    continue;
                }
                let mut nidx = vec![k as u8];
                nidx.extend_from_slice(idx);
                out.add_term(&nidx, df.clone());
            }
        }
        Ok(out)
    }

    /// Contraction with a chart vector field.
    pub fn contract(&self, v: &VectorField) -> Form {
        let mut out = Form::zero(self.dim);
        for (idx, f) in &self.terms {
            for (pos, &i) in idx.iter().enumerate() {
                let comp = &v[i as usize];
                if comp.is_zero() {
                    continue;
                }
                let rest: Vec<u8> = idx
                    .iter()
                    .enumerate()
                    .filter(|(p, _)| *p != pos)
                    .map(|(_, &j)| j)
                    .collect();
                let sign = if pos % 2 == 0 { 1.0 } else { -1.0 };
                out.add_term(&rest, f.mul(comp).scale(sign));
            }
        }
        out
    }

    /// Evaluate all components at a chart point.
    pub fn eval(&self, p: &[f64]) -> BTreeMap<Vec<u8>, f64> {
        self.terms
            .iter()
            .map(|(idx, f)| (idx.clone(), f.eval(p)))
            .collect()
    }

    /// Largest |component| at a point, over all degrees.
    pub fn max_abs_at(&self, p: &[f64]) -> f64 {
        self.terms
            .values()
            .map(|f| f.eval(p).abs())
            .fold(0.0, f64::max)
    }

    /// Coefficient of dx_idx (must be sorted); zero field if absent.
    pub fn coefficient(&self, idx: &[u8]) -> ScalarField {
        self.terms
            .get(idx)
            .cloned()
            .unwrap_or_else(|| ScalarField::zero(self.dim))
    }

    /// Degree-0 part evaluated at a point.
    pub fn scalar_part_at(&self, p: &[f64]) -> f64 {
        self.terms.get(&Vec::new()).map_or(0.0, |f| f.eval(p))
    }
}
