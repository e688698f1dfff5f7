//! Exact scalar fields on a chart: closures bundled with registered
//! partial-derivative closures, so exterior derivatives are analytic
//! rather than finite differences.

use std::sync::Arc;

type EvalFn = Box<dyn Fn(&[f64]) -> f64 + Send + Sync>;

struct Inner {
    name: String,
    dim: usize,
    eval: EvalFn,
    partials: Option<Vec<ScalarField>>,
    is_zero: bool,
}

/// Scalar coefficient function with optional registered partials.
///
/// A field without registered partials can still be evaluated and
/// integrated; taking its exterior derivative is an error.
#[derive(Clone)]
pub struct ScalarField {
    inner: Arc<Inner>,
}

impl std::fmt::Debug for ScalarField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ScalarField({})", self.inner.name)
    }
}

impl ScalarField {
    pub fn custom(
        name: impl Into<String>,
        dim: usize,
        eval: impl Fn(&[f64]) -> f64 + Send + Sync + 'static,
        partials: Option<Vec<ScalarField>>,
    ) -> Self {
        if let Some(p) = &partials {
            assert_eq!(p.len(), dim, "need one partial per coordinate");
        }
        ScalarField {
            inner: Arc::new(Inner {
                name: name.into(),
                dim,
                eval: Box::new(eval),
                partials,
                is_zero: false,
            }),
        }
    }

    /// The zero field; terminates derivative chains.
    pub fn zero(dim: usize) -> Self {
        ScalarField {
            inner: Arc::new(Inner {
                name: "0".into(),
                dim,
                eval: Box::new(|_| 0.0),
                partials: None,
                is_zero: true,
            }),
        }
    }

    pub fn constant(dim: usize, c: f64) -> Self {
        if c == 0.0 {
            return ScalarField::zero(dim);
        }
        let partials = (0..dim).map(|_| ScalarField::zero(dim)).collect();
        ScalarField::custom(format!("{c}"), dim, move |_| c, Some(partials))
    }

    pub fn coord(dim: usize, i: usize) -> Self {
        let partials = (0..dim)
            .map(|j| ScalarField::constant(dim, f64::from(i == j)))
            .collect();
        ScalarField::custom(format!("x{i}"), dim, move |p| p[i], Some(partials))
    }

    /// Monomial in one chart coordinate.
    pub fn coord_pow(dim: usize, i: usize, k: u32) -> Self {
        if k == 0 {
            return ScalarField::constant(dim, 1.0);
        }
        if k == 1 {
            return ScalarField::coord(dim, i);
        }
        let partials = (0..dim)
            .map(|j| {
                if j == i {
                    ScalarField::coord_pow(dim, i, k - 1).scale(f64::from(k))
                } else {
                    ScalarField::zero(dim)
                }
            })
            .collect();
        ScalarField::custom(
            format!("x{i}^{k}"),
            dim,
            move |p| p[i].powi(k as i32),
            Some(partials),
        )
    }

    pub fn eval(&self, p: &[f64]) -> f64 {
        (self.inner.eval)(p)
    }

    pub fn dim(&self) -> usize {
        self.inner.dim
    }

    pub fn name(&self) -> &str {
        &self.inner.name
    }

    pub fn is_zero(&self) -> bool {
        self.inner.is_zero
    }

    /// Registered partials; zero fields differentiate to zero.
    pub fn partials(&self) -> Option<Vec<ScalarField>> {
        if self.inner.is_zero {
            return Some((0..self.dim()).map(|_| ScalarField::zero(self.dim())).collect());
        }
        self.inner.partials.clone()
    }

    pub fn add(&self, other: &ScalarField) -> ScalarField {
        assert_eq!(self.dim(), other.dim());
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let (a, b) = (self.clone(), other.clone());
        let partials = match (self.partials(), other.partials()) {
            (Some(pa), Some(pb)) => {
                Some(pa.iter().zip(&pb).map(|(x, y)| x.add(y)).collect::<Vec<_>>())
            }
            _ => None,
        };
        ScalarField::custom(
            format!("({} + {})", self.name(), other.name()),
            self.dim(),
            move |p| a.eval(p) + b.eval(p),
            partials,
        )
    }

    pub fn mul(&self, other: &ScalarField) -> ScalarField {
        assert_eq!(self.dim(), other.dim());
        if self.is_zero() || other.is_zero() {
            return ScalarField::zero(self.dim());
        }
        let (a, b) = (self.clone(), other.clone());
        let partials = match (self.partials(), other.partials()) {
            (Some(pa), Some(pb)) => Some(
                pa.iter()
                    .zip(&pb)
                    .map(|(da, db)| da.mul(other).add(&self.mul(db)))
                    .collect::<Vec<_>>(),
            ),
            _ => None,
        };
        ScalarField::custom(
            format!("({})*({})", self.name(), other.name()),
            self.dim(),
            move |p| a.eval(p) * b.eval(p),
            partials,
        )
    }

    pub fn scale(&self, c: f64) -> ScalarField {
        if c == 0.0 || self.is_zero() {
            return ScalarField::zero(self.dim());
        }
        if c == 1.0 {
            return self.clone();
        }
        let a = self.clone();
        let partials = self
            .partials()
            .map(|ps| ps.iter().map(|d| d.scale(c)).collect::<Vec<_>>());
        ScalarField::custom(
            format!("{c}*({})", self.name()),
            self.dim(),
            move |p| c * a.eval(p),
            partials,
        )
    }

    /// Smooth compactly supported bump in coordinate `i`: the classical
    /// exp(1 - 1/(1 - (x/a)^2)) profile on |x_i| < a, equal to 1 at the
    /// center, with first and second derivatives registered.
    pub fn bump(dim: usize, i: usize, a: f64) -> Self {
        let profile = move |x: f64| -> f64 {
            let s = x / a;
            if s.abs() >= 1.0 - 1e-12 {
                0.0
            } else {
                (1.0 - 1.0 / (1.0 - s * s)).exp()
            }
        };
        let gfun = move |x: f64| -> f64 {
            // g = b'/b
            let s = x / a;
            let denom = 1.0 - s * s;
            -2.0 * s / (a * denom * denom)
        };
        let gprime = move |x: f64| -> f64 {
            let s = x / a;
            let denom = 1.0 - s * s;
            -2.0 * (1.0 + 3.0 * s * s) / (a * a * denom * denom * denom)
        };
        let inside = move |x: f64| (x / a).abs() < 1.0 - 1e-12;

        let second = ScalarField::custom(
            format!("bump''_{a}(x{i})"),
            dim,
            move |p: &[f64]| {
                let x = p[i];
                if inside(x) {
                    profile(x) * (gfun(x) * gfun(x) + gprime(x))
                } else {
                    0.0
                }
            },
            None,
        );
        let first_partials = (0..dim)
            .map(|j| if j == i { second.clone() } else { ScalarField::zero(dim) })
            .collect();
        let first = ScalarField::custom(
            format!("bump'_{a}(x{i})"),
            dim,
            move |p: &[f64]| {
                let x = p[i];
                if inside(x) {
                    profile(x) * gfun(x)
                } else {
                    0.0
                }
            },
            Some(first_partials),
        );
        let partials = (0..dim)
            .map(|j| if j == i { first.clone() } else { ScalarField::zero(dim) })
            .collect();
        ScalarField::custom(
            format!("bump_{a}(x{i})"),
            dim,
            move |p| profile(p[i]),
            Some(partials),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fd_partial(f: &ScalarField, p: &[f64], i: usize) -> f64 {
        let h = 1e-6;
        let mut hi = p.to_vec();
        let mut lo = p.to_vec();
        hi[i] += h;
        lo[i] -= h;
        (f.eval(&hi) - f.eval(&lo)) / (2.0 * h)
    }

    #[test]
    fn product_rule_is_exact() {
        let z = ScalarField::coord(2, 0);
        let z2 = ScalarField::coord_pow(2, 0, 2);
        let f = z.mul(&z2).add(&ScalarField::constant(2, 3.0));
        let df = &f.partials().unwrap()[0];
        for &p in &[0.3, -0.8, 1.2] {
            let pt = [p, 0.5];
            assert!((df.eval(&pt) - 3.0 * p * p).abs() < 1e-12);
            assert!((df.eval(&pt) - fd_partial(&f, &pt, 0)).abs() < 1e-6);
        }
    }

    #[test]
    fn bump_derivatives_match_fd() {
        let b = ScalarField::bump(1, 0, 0.8);
        assert!((b.eval(&[0.0]) - 1.0).abs() < 1e-15);
        assert_eq!(b.eval(&[0.81]), 0.0);
        let db = &b.partials().unwrap()[0];
        let d2b = &db.partials().unwrap()[0];
        for &x in &[0.1, 0.3, -0.55, 0.7] {
            assert!((db.eval(&[x]) - fd_partial(&b, &[x], 0)).abs() < 1e-5);
            assert!((d2b.eval(&[x]) - fd_partial(db, &[x], 0)).abs() < 2e-4);
        }
    }

    #[test]
    fn zero_chain_terminates() {
        let c = ScalarField::constant(2, 4.0);
        let dz = &c.partials().unwrap()[0];
        assert!(dz.is_zero());
        let ddz = &dz.partials().unwrap()[0];
        assert!(ddz.is_zero());
    }
}
