//! Principal-circle-bundle catalog: the Hopf fibration and moment-level
//! circle bundles, with connection and curvature evaluation, the horizontal
//! projector, the Chern-Weil homomorphism and the reformulated localization
//! check.

use crate::cartan::{Form, ScalarField, VectorField};
use crate::error::{Error, Result};
use crate::quad::{pairwise_sum, periodic_nodes, GaussLegendre};
use crate::reduction::{theta0_reduced, AlphaChoice, ReductionLevel, SphereSpace, TestFunction, VOL_S1};
use num_complex::Complex64;
use std::f64::consts::PI;

const TWO_PI: f64 = 2.0 * PI;

/// sin/cos coefficient fields with derivative chains registered to finite
/// depth (two exterior derivatives are the deepest the checks go).
fn circular(dim: usize, axis: usize, quarter_turns: u8, depth: usize) -> ScalarField {
    let eval = move |p: &[f64]| match quarter_turns % 4 {
        0 => p[axis].sin(),
        1 => p[axis].cos(),
        2 => -p[axis].sin(),
        _ => -p[axis].cos(),
    };
    let name = ["sin", "cos", "-sin", "-cos"][usize::from(quarter_turns % 4)];
    let partials = if depth == 0 {
        None
    } else {
        Some(
            (0..dim)
                .map(|j| {
                    if j == axis {
                        circular(dim, axis, (quarter_turns + 1) % 4, depth - 1)
                    } else {
                        ScalarField::zero(dim)
                    }
                })
                .collect(),
        )
    };
    ScalarField::custom(format!("{name}(x{axis})"), dim, eval, partials)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BundleKind {
    /// S^3 -> S^2 in Euler coordinates (eta, phi, psi), psi of period 4pi.
    Hopf,
    /// Moment level circle {mu = c} of the sphere catalog, base a point.
    LevelCircle { c: f64 },
}

/// Principal S^1-bundle with a connection in explicit catalog coordinates.
pub struct BundleConnection {
    pub kind: BundleKind,
    pub total_dim: usize,
    /// Connection coefficient 1-form (the structure group is S^1, so the
    /// single component omega^1 carries everything).
    pub omega: Form,
    /// Curvature 2-form, basic by construction.
    pub curvature: Form,
    /// Fundamental vertical field, normalized so omega(X_P) = 1.
    pub vertical: VectorField,
    base_interval_axis: Option<(usize, f64, f64)>,
    base_periodic_axis: Option<usize>,
}

/// The round Hopf connection omega = (dpsi + cos(eta) dphi)/2 with
/// curvature Omega = -(1/2) sin(eta) deta ^ dphi, oriented so the Chern
/// number is -1.
pub fn hopf() -> BundleConnection {
    let dim = 3;
    let mut omega = Form::zero(dim);
    omega.add_term(&[2], ScalarField::constant(dim, 0.5));
    omega.add_term(&[1], circular(dim, 0, 1, 3).scale(0.5));
    let curvature = omega.d().expect("registered trig derivatives");
    let vertical: VectorField = vec![
        ScalarField::zero(dim),
        ScalarField::zero(dim),
        ScalarField::constant(dim, 2.0),
    ];
    BundleConnection {
        kind: BundleKind::Hopf,
        total_dim: dim,
        omega,
        curvature,
        vertical,
        base_interval_axis: Some((0, 0.0, PI)),
        base_periodic_axis: Some(1),
    }
}

/// Hopf connection perturbed by a basic 1-form a sin^2(eta) dphi; same
/// cohomology class, different curvature pointwise.
pub fn hopf_perturbed(a: f64) -> BundleConnection {
    let base = hopf();
    let dim = 3;
    let sin2 = circular(dim, 0, 0, 3).mul(&circular(dim, 0, 0, 3));
    let mut tau = Form::zero(dim);
    tau.add_term(&[1], sin2.scale(a));
    let omega = base.omega.add(&tau);
    let curvature = omega.d().expect("registered trig derivatives");
    BundleConnection {
        omega,
        curvature,
        ..base
    }
}

/// The level circle {mu = c} of the unit-sphere catalog: a circle over a
/// point base with flat connection d phi.
pub fn level_circle(space: &SphereSpace, level: &ReductionLevel) -> Result<BundleConnection> {
    let r2 = space.radius * space.radius;
    if level.c.abs() >= r2 - 1e-9 {
        return Err(Error::NonRegularLevel(format!("level {}", level.c)));
    }
    let dim = 1;
    let mut omega = Form::zero(dim);
    omega.add_term(&[0], ScalarField::constant(dim, 1.0));
    Ok(BundleConnection {
        kind: BundleKind::LevelCircle { c: level.c },
        total_dim: dim,
        omega,
        curvature: Form::zero(dim),
        vertical: vec![ScalarField::constant(dim, 1.0)],
        base_interval_axis: None,
        base_periodic_axis: None,
    })
}

impl BundleConnection {
    /// Curvature evaluated on a pair of tangent vectors at a point.
    pub fn curvature_on(&self, point: &[f64], v1: &[f64], v2: &[f64]) -> f64 {
        let vals = self.curvature.eval(point);
        let mut out = 0.0;
        for (idx, c) in vals {
            if idx.len() != 2 {
                continue;
            }
            let (i, j) = (idx[0] as usize, idx[1] as usize);
            out += c * (v1[i] * v2[j] - v1[j] * v2[i]);
        }
        out
    }

    /// Horizontal projector h = I - omega ^ iota(X_P), the rank-one case of
    /// the product formula.
    pub fn horizontal_project(&self, form: &Form) -> Form {
        let contracted = form.contract(&self.vertical);
        form.add(&self.omega.wedge(&contracted).scale(-1.0))
    }

    /// Integral of a basic 2-form over the base (Hopf only; the level
    /// circle has a point base where 2-forms vanish).
    pub fn integrate_base(&self, form: &Form) -> f64 {
        match self.kind {
            BundleKind::LevelCircle { .. } => 0.0,
            BundleKind::Hopf => {
                let (axis, lo, hi) = self.base_interval_axis.expect("hopf base");
                let per = self.base_periodic_axis.expect("hopf base");
                let gl = GaussLegendre::new(64);
                let (nodes, weights) = gl.mapped(lo, hi);
                let (pnodes, h) = periodic_nodes(32);
                let coef = form.coefficient(&[axis as u8, per as u8]);
                let mut terms = Vec::new();
                for (&x, &w) in nodes.iter().zip(&weights) {
                    for &p in &pnodes {
                        let mut pt = vec![0.0; self.total_dim];
                        pt[axis] = x;
                        pt[per] = p;
                        terms.push(coef.eval(&pt) * w * h);
                    }
                }
                pairwise_sum(&terms)
            }
        }
    }

    /// Chern-Weil image of a function given by Taylor coefficients at 0:
    /// W(Phi) = h(Phi(Omega)), with the wedge series truncated at half the
    /// base dimension (higher powers vanish identically).
    pub fn chern_weil_w(&self, taylor: &[f64]) -> Form {
        let base_half_dim = match self.kind {
            BundleKind::Hopf => 1,
            BundleKind::LevelCircle { .. } => 0,
        };
        let dim = self.total_dim;
        let mut acc = Form::function(ScalarField::constant(
            dim,
            taylor.first().copied().unwrap_or(0.0),
        ));
        let mut power = Form::function(ScalarField::constant(dim, 1.0));
        let mut factorial = 1.0;
        for (k, &c) in taylor.iter().enumerate().skip(1) {
            if k > base_half_dim {
                break;
            }
            factorial *= k as f64;
            power = power.wedge(&self.curvature);
            acc = acc.add(&power.scale(c / factorial));
        }
        self.horizontal_project(&acc)
    }

    pub fn chern_number(&self) -> f64 {
        self.integrate_base(&self.chern_weil_w(&[0.0, 1.0])) / TWO_PI
    }

    fn random_point<R: rand::Rng>(&self, rng: &mut R) -> Vec<f64> {
        match self.kind {
            BundleKind::Hopf => vec![
                rng.gen_range(0.2..PI - 0.2),
                rng.gen_range(0.0..TWO_PI),
                rng.gen_range(0.0..2.0 * TWO_PI),
            ],
            BundleKind::LevelCircle { .. } => vec![rng.gen_range(0.0..TWO_PI)],
        }
    }
}

/// Residuals of the two-route covariant-derivative identity hdh = d +
/// omega rho(E) on basic sections of the weight-k associated line bundle
/// over the Hopf base, plus the Leibniz rule, at random points.
///
/// Sections are represented by their equivariant functions
/// s(eta, phi, psi) = g(eta, phi) e^{-i k psi / 2}; derivatives are taken
/// by central differences, shared by both routes so the comparison tests
/// the projector algebra and the sign conventions.
pub struct CovariantReport {
    pub route_residual: f64,
    pub leibniz_residual: f64,
}

pub fn covariant_derivative_check(
    bundle: &BundleConnection,
    weight: i32,
    samples: usize,
    seed: u64,
) -> CovariantReport {
    use rand::SeedableRng;
    assert_eq!(bundle.kind, BundleKind::Hopf);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let k = f64::from(weight);
    // catalog section: g = (2 + cos eta) e^{i phi-ish analytic factor}
    let g = move |p: &[f64]| -> Complex64 {
        Complex64::new(2.0 + p[0].cos(), 0.3 * p[0].sin() * p[1].cos())
    };
    let section = move |p: &[f64]| -> Complex64 {
        g(p) * Complex64::new(0.0, -k * p[2] / 2.0).exp()
    };
    let scalar = move |p: &[f64]| -> Complex64 {
        Complex64::new(1.0 + 0.2 * p[0].cos(), 0.0)
    };
    let h_fd = 1e-5;
    let fd = |f: &dyn Fn(&[f64]) -> Complex64, p: &[f64], i: usize| -> Complex64 {
        let mut hi = p.to_vec();
        let mut lo = p.to_vec();
        hi[i] += h_fd;
        lo[i] -= h_fd;
        (f(&hi) - f(&lo)) / (2.0 * h_fd)
    };

    let mut route_residual: f64 = 0.0;
    let mut leibniz_residual: f64 = 0.0;
    for _ in 0..samples {
        let p = bundle.random_point(&mut rng);
        let omega_at = bundle.omega.eval(&p);
        let omega_comp = |i: u8| omega_at.get(&vec![i]).copied().unwrap_or(0.0);
        // d s by finite differences, as 1-form components
        let ds: Vec<Complex64> = (0..3).map(|i| fd(&section, &p, i)).collect();
        // hdh s = h(ds) since s is a function: ds - omega * iota(X_P) ds
        let iota_ds = ds[2] * 2.0; // X_P = 2 d/dpsi
        let hdh: Vec<Complex64> = (0..3)
            .map(|i| ds[i] - Complex64::new(omega_comp(i as u8), 0.0) * iota_ds)
            .collect();
        // nabla s = ds + i k omega s
        let s_val = section(&p);
        let nabla: Vec<Complex64> = (0..3)
            .map(|i| ds[i] + Complex64::new(0.0, k * omega_comp(i as u8)) * s_val)
            .collect();
        for i in 0..3 {
            route_residual = route_residual.max((hdh[i] - nabla[i]).norm());
        }
        // Leibniz: nabla(f s) = df s + f nabla s for a basic scalar f
        let fs = move |q: &[f64]| scalar(q) * section(q);
        let dfs: Vec<Complex64> = (0..3).map(|i| fd(&fs, &p, i)).collect();
        let f_val = scalar(&p);
        for i in 0..3 {
            let lhs = dfs[i] + Complex64::new(0.0, k * omega_comp(i as u8)) * fs(&p);
            let rhs = fd(&scalar, &p, i) * s_val + f_val * nabla[i];
            leibniz_residual = leibniz_residual.max((lhs - rhs).norm());
        }
    }
    CovariantReport {
        route_residual,
        leibniz_residual,
    }
}

/// Both sides of the reformulated localization identity at a regular level:
/// the deformation-limit pairing against (2 pi i)^{dim G} vol(G)
/// int_{M_red} alpha_red W(Phi).
pub struct MainTheoremReport {
    pub theta0: Complex64,
    pub chern_weil_side: Complex64,
    pub residual: f64,
}

pub fn main_theorem_check(
    space: &SphereSpace,
    level: &ReductionLevel,
    phi: &TestFunction,
    alpha: &AlphaChoice,
) -> Result<MainTheoremReport> {
    let bundle = level_circle(space, level)?;
    // W(Phi) on the point base is the degree-0 truncation Phi(0)
    let w_phi = bundle.chern_weil_w(&[phi.eval(0.0)]);
    let w_at_base = w_phi.scalar_part_at(&[0.0]);
    let alpha_red = alpha.scale;
    let chern_weil_side = Complex64::new(0.0, TWO_PI) * VOL_S1 * alpha_red * w_at_base;
    let theta0 = theta0_reduced(space, level, phi, alpha)?;
    Ok(MainTheoremReport {
        theta0,
        chern_weil_side,
        residual: (theta0 - chern_weil_side).norm(),
    })
}

/// DH consistency of the level-circle curvature: the derivative of the
/// reduced volume in the level equals minus the curvature integral (both
/// vanish for the flat Archimedes density).
pub fn level_curvature_dh_consistency(space: &SphereSpace, level: &ReductionLevel) -> Result<f64> {
    let bundle = level_circle(space, level)?;
    let curv_integral = bundle.integrate_base(&bundle.curvature);
    // reduced volume (pushforward density / fiber volume) at c +- delta
    let torus = &space.torus;
    let pf = crate::cartan::pushforward_density(torus, 64);
    let delta = (pf.edges[1] - pf.edges[0]) * 2.0;
    let density_at = |c: f64| -> f64 {
        let width = pf.edges[1] - pf.edges[0];
        let idx = (((c - pf.edges[0]) / width) as usize).min(pf.density.len() - 1);
        pf.density[idx] / TWO_PI
    };
    let dvol_dc = (density_at(level.c + delta) - density_at(level.c - delta)) / (2.0 * delta);
    Ok((curv_integral + dvol_dc).abs())
}

#[cfg(test)]
mod tests {
    use crate::quad::pairwise_sum_c;
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn hopf_connection_reproduces_generator() {
        let b = hopf();
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..50 {
            let p = b.random_point(&mut rng);
            let omega_vert = b.omega.contract(&b.vertical).scalar_part_at(&p);
            assert!((omega_vert - 1.0).abs() < 1e-12);
            // invariance: coefficients are psi-independent
            let mut q = p.clone();
            q[2] = (q[2] + 1.3).rem_euclid(2.0 * TWO_PI);
            for (idx, v) in b.omega.eval(&p) {
                assert!((v - b.omega.eval(&q)[&idx]).abs() < 1e-12);
            }
            // horizontality of the curvature
            let iota_curv = b.curvature.contract(&b.vertical);
            assert!(iota_curv.max_abs_at(&p) < 1e-12);
        }
    }

    #[test]
    fn curvature_is_antisymmetric_and_matches_formula() {
        let b = hopf();
        let p = [1.1, 0.7, 2.0];
        let v = [0.3, -0.2, 0.9];
        assert_eq!(b.curvature_on(&p, &v, &v), 0.0);
        let e1 = [1.0, 0.0, 0.0];
        let e2 = [0.0, 1.0, 0.0];
        let expect = -0.5 * (1.1f64).sin();
        assert!((b.curvature_on(&p, &e1, &e2) - expect).abs() < 1e-12);
        assert!((b.curvature_on(&p, &e2, &e1) + expect).abs() < 1e-12);
    }

    #[test]
    fn hopf_chern_number_is_minus_one() {
        let b = hopf();
        assert!((b.chern_number() + 1.0).abs() < 1e-9);
    }

    #[test]
    fn level_circle_chern_number_is_zero() {
        let space = SphereSpace::new(1.0);
        let level = ReductionLevel::at(&space, 0.0, 0.5).unwrap();
        let b = level_circle(&space, &level).unwrap();
        assert_eq!(b.chern_number(), 0.0);
    }

    #[test]
    fn projector_is_idempotent_and_kills_vertical() {
        let b = hopf();
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        let dim = 3;
        // mixed test form: f + g dpsi + curvature-term + omega itself
        let mut mixed = Form::zero(dim);
        mixed.add_term(&[], circular(dim, 0, 1, 2));
        mixed.add_term(&[2], circular(dim, 0, 0, 2).scale(0.7));
        mixed.add_term(&[1], ScalarField::constant(dim, 0.4));
        let mixed = mixed.add(&b.omega).add(&b.curvature);
        let h1 = b.horizontal_project(&mixed);
        let h2 = b.horizontal_project(&h1);
        for _ in 0..100 {
            let p = b.random_point(&mut rng);
            // h^2 = h
            let a = h1.eval(&p);
            let c = h2.eval(&p);
            for (idx, v) in &a {
                assert!((v - c[idx]).abs() < 1e-9);
            }
            // iota(X_P) h = 0
            let killed = h1.contract(&b.vertical);
            assert!(killed.max_abs_at(&p) < 1e-9);
        }
        // omega itself projects to zero, horizontal forms are fixed
        let h_omega = b.horizontal_project(&b.omega);
        let h_curv = b.horizontal_project(&b.curvature);
        let p = [0.9, 1.4, 3.3];
        assert!(h_omega.max_abs_at(&p) < 1e-12);
        for (idx, v) in b.curvature.eval(&p) {
            assert!((v - h_curv.eval(&p)[&idx]).abs() < 1e-12);
        }
    }

    #[test]
    fn chern_weil_constant_and_linear_and_quadratic() {
        let b = hopf();
        // Phi = 1: the constant function 1 on the base
        let w1 = b.chern_weil_w(&[1.0]);
        assert!((w1.scalar_part_at(&[1.0, 0.5, 0.0]) - 1.0).abs() < 1e-15);
        // Phi = x: W = Omega, first Chern class -1
        let wx = b.chern_weil_w(&[0.0, 1.0]);
        assert!((b.integrate_base(&wx) / TWO_PI + 1.0).abs() < 1e-9);
        // Phi = x^2: truncated to zero beyond half the base dimension
        let wx2 = b.chern_weil_w(&[0.0, 0.0, 1.0]);
        let p = [1.0, 2.0, 0.3];
        assert!(wx2.max_abs_at(&p) < 1e-15);
    }

    #[test]
    fn chern_weil_forms_are_closed() {
        let b = hopf();
        let w = b.chern_weil_w(&[0.3, 1.7]);
        let dw = w.d().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..50 {
            let p = b.random_point(&mut rng);
            assert!(dw.max_abs_at(&p) < 1e-12);
        }
    }

    #[test]
    fn class_is_connection_independent() {
        let round = hopf();
        let bent = hopf_perturbed(0.35);
        let mut rng = ChaCha8Rng::seed_from_u64(24);
        // curvatures differ pointwise
        let p = [1.0, 0.4, 1.0];
        let c_round = round.curvature.eval(&p)[&vec![0u8, 1u8]];
        let c_bent = bent.curvature.eval(&p)[&vec![0u8, 1u8]];
        assert!((c_round - c_bent).abs() > 1e-3);
        for taylor in [vec![0.0, 1.0], vec![0.5, -0.2, 0.9]] {
            let a = round.integrate_base(&round.chern_weil_w(&taylor));
            let b2 = bent.integrate_base(&bent.chern_weil_w(&taylor));
            assert!((a - b2).abs() < 1e-8, "{a} vs {b2}");
        }
        // the perturbed connection still reproduces the generator
        for _ in 0..10 {
            let p = bent.random_point(&mut rng);
            let v = bent.omega.contract(&bent.vertical).scalar_part_at(&p);
            assert!((v - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn covariant_routes_agree() {
        let b = hopf();
        // trivial weight: nabla = d exactly
        let r0 = covariant_derivative_check(&b, 0, 30, 7);
        assert!(r0.route_residual < 1e-10);
        // weight one and two
        for k in [1, 2] {
            let r = covariant_derivative_check(&b, k, 30, 8);
            assert!(r.route_residual < 1e-8, "k={k}: {}", r.route_residual);
            assert!(r.leibniz_residual < 1e-8, "k={k}: {}", r.leibniz_residual);
        }
    }

    #[test]
    fn main_theorem_reformulation() {
        let space = SphereSpace::new(1.0);
        let level = ReductionLevel::at(&space, 0.0, 0.5).unwrap();
        let phi = TestFunction::gaussian(1.0);
        for alpha in [AlphaChoice::one(), AlphaChoice::exp_sigma_g()] {
            let rep = main_theorem_check(&space, &level, &phi, &alpha).unwrap();
            assert!(rep.residual < 1e-6, "residual {}", rep.residual);
        }
        // Phi = 0: both sides vanish
        let rep = main_theorem_check(&space, &level, &TestFunction::zero(), &AlphaChoice::one())
            .unwrap();
        assert!(rep.theta0.norm() == 0.0 && rep.chern_weil_side.norm() == 0.0);
        // alpha scaled by 3 scales both sides by 3
        let base = main_theorem_check(&space, &level, &phi, &AlphaChoice::one()).unwrap();
        let tripled = AlphaChoice {
            kind: crate::reduction::AlphaKind::One,
            scale: 3.0,
        };
        let rep3 = main_theorem_check(&space, &level, &phi, &tripled).unwrap();
        assert!((rep3.theta0 - base.theta0 * 3.0).norm() < 1e-12);
        assert!((rep3.chern_weil_side - base.chern_weil_side * 3.0).norm() < 1e-12);
    }

    #[test]
    fn level_curvature_consistent_with_dh_derivative() {
        let space = SphereSpace::new(1.0);
        let level = ReductionLevel::at(&space, 0.0, 0.5).unwrap();
        let resid = level_curvature_dh_consistency(&space, &level).unwrap();
        assert!(resid < 1e-6, "residual {resid}");
    }

    #[test]
    fn rejects_non_regular_level() {
        let space = SphereSpace::new(1.0);
        let bad = ReductionLevel {
            c: 1.0,
            r: 0.1,
            critical_value: 0.2,
            eps_cut: 0.3,
        };
        assert!(matches!(
            level_circle(&space, &bad),
            Err(Error::NonRegularLevel(_))
        ));
    }

    #[test]
    fn complex_sum_helper_is_deterministic() {
        // anchor for the pairwise reduction order used across the module
        let xs: Vec<Complex64> = (0..1000)
            .map(|k| Complex64::new(1.0 / (k as f64 + 1.0), -0.5 / (k as f64 + 1.0)))
            .collect();
        let a = pairwise_sum_c(&xs);
        let b = pairwise_sum_c(&xs);
        assert_eq!(a, b);
    }
}
