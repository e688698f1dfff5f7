//! Hamiltonian catalog spaces, reduction levels, the deformation integrals
//! Theta(M,t) and Z(epsilon), and the two expressions for the localized
//! term Theta_0, each backed by brute-force nested quadrature.
//!
//! Quantitative verification runs on the S^1-on-sphere catalog; the
//! nonabelian su(2) entry is exercised through the structural identities
//! (orbit disintegration and Fourier inversion) rather than the full
//! oscillatory integral.

use crate::cartan::{s1_diagonal_product, s1_sphere, TorusSpace};
use crate::error::{Error, Result};
use crate::lie::{CatalogGroup, MatrixAlgebra, RootSystem};
use crate::linalg::{cmat_add_scaled, cmat_commutator, minus_trace_product, CMat};
use crate::orbits::{
    liouville_integral, make_orbit, plancherel_disintegration, QuadratureScheme,
};
use crate::quad::{pairwise_sum_c, GaussHermite, GaussLegendre};
use num_complex::Complex64;
use std::f64::consts::PI;

const TWO_PI: f64 = 2.0 * PI;

/// vol(S^1) with the generator normalized to period 2pi.
pub const VOL_S1: f64 = TWO_PI;

/// Gaussian-times-polynomial test function on the S^1 Lie algebra:
/// poly(x) e^{-x^2/(2 scale^2)}.
#[derive(Debug, Clone)]
pub struct TestFunction {
    pub scale: f64,
    pub poly: Vec<f64>,
}

impl TestFunction {
    pub fn gaussian(scale: f64) -> Self {
        TestFunction {
            scale,
            poly: vec![1.0],
        }
    }

    pub fn zero() -> Self {
        TestFunction {
            scale: 1.0,
            poly: vec![0.0],
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        let p: f64 = self
            .poly
            .iter()
            .enumerate()
            .map(|(k, c)| c * x.powi(k as i32))
            .sum();
        p * (-x * x / (2.0 * self.scale * self.scale)).exp()
    }

    pub fn scaled(&self, a: f64) -> TestFunction {
        TestFunction {
            scale: self.scale,
            poly: self.poly.iter().map(|c| c * a).collect(),
        }
    }
}

/// Closed equivariant integrands for the deformation integrals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AlphaKind {
    /// alpha = 1.
    One,
    /// alpha = e^{i sigma_g(X)}.
    ExpSigmaG,
}

#[derive(Debug, Clone, Copy)]
pub struct AlphaChoice {
    pub kind: AlphaKind,
    pub scale: f64,
}

impl AlphaChoice {
    pub fn one() -> Self {
        AlphaChoice {
            kind: AlphaKind::One,
            scale: 1.0,
        }
    }

    pub fn exp_sigma_g() -> Self {
        AlphaChoice {
            kind: AlphaKind::ExpSigmaG,
            scale: 1.0,
        }
    }
}

/// S^1 acting on the sphere of the given radius by rotation, with the round
/// metric: the quantitative reduction catalog entry.
pub struct SphereSpace {
    pub torus: TorusSpace,
    pub radius: f64,
}

impl SphereSpace {
    pub fn new(radius: f64) -> Self {
        SphereSpace {
            torus: s1_sphere(radius),
            radius,
        }
    }

    /// k(z) such that lambda^{M_O} = k(z) dphi: the Witten one-form of the
    /// level {mu = c} in the round metric, k(z) = (r z - c)(r^2 - z^2).
    fn witten_k(&self, c: f64) -> impl Fn(f64) -> f64 + '_ {
        let r = self.radius;
        move |z| (r * z - c) * (r * r - z * z)
    }

    fn witten_k_prime(&self, c: f64) -> impl Fn(f64) -> f64 + '_ {
        let r = self.radius;
        move |z| r * (r * r - z * z) + (r * z - c) * (-2.0 * z)
    }
}

/// Reduction data at the point orbit {c} in the S^1 dual.
#[derive(Debug, Clone)]
pub struct ReductionLevel {
    pub c: f64,
    /// Region parameter, strictly below the smallest positive critical
    /// value of ||mu_O||^2.
    pub r: f64,
    /// Smallest positive critical value R.
    pub critical_value: f64,
    /// Cutoff width for the chi_O bump.
    pub eps_cut: f64,
}

/// Smallest positive critical value of ||mu_O||^2 = (mu - c)^2 and the
/// location where it is attained: grid scan of the metric gradient norm
/// with Newton refinement.
pub fn critical_radius(space: &SphereSpace, c: f64) -> Result<(f64, f64)> {
    let r = space.radius;
    if c.abs() > r * r {
        return Err(Error::NoRegularLevel(format!(
            "mu range is [{:.3}, {:.3}], level {c} is empty",
            -r * r,
            r * r
        )));
    }
    // metric gradient norm^2 of f = (r z - c)^2 on the round sphere:
    // G(z) = [2 r (r z - c)]^2 (r^2 - z^2) / r^2
    let grad2 = |z: f64| (2.0 * r * (r * z - c)).powi(2) * (r * r - z * z) / (r * r);
    let dgrad2 = |z: f64| {
        let a = 2.0 * r * (r * z - c);
        let da = 2.0 * r * r;
        (2.0 * a * da * (r * r - z * z) + a * a * (-2.0 * z)) / (r * r)
    };
    let n = 20_001;
    let h = 2.0 * r / (n as f64 - 1.0);
    let mut candidates: Vec<f64> = Vec::new();
    for k in 0..n {
        let z = -r + k as f64 * h;
        let g = grad2(z);
        let left = if k > 0 { grad2(z - h) } else { f64::INFINITY };
        let right = if k + 1 < n { grad2(z + h) } else { f64::INFINITY };
        if g <= left && g <= right {
            // Newton on d(grad2)/dz, falling back to the grid point
            let mut zc = z;
            for _ in 0..60 {
                let d = dgrad2(zc);
                let d2 = (dgrad2(zc + 1e-7) - dgrad2(zc - 1e-7)) / 2e-7;
                if d2.abs() < 1e-300 {
                    break;
                }
                let step = d / d2;
                zc = (zc - step).clamp(-r, r);
                if step.abs() < 1e-14 {
                    break;
                }
            }
            if grad2(zc) > grad2(z) {
                zc = z;
            }
            if grad2(zc).sqrt() < 1e-8 {
                candidates.push(zc);
            }
        }
    }
    let mut best: Option<(f64, f64)> = None;
    for zc in candidates {
        let value = (r * zc - c).powi(2);
        if value > 1e-10 {
            match best {
                Some((v, _)) if v <= value => {}
                _ => best = Some((value, zc)),
            }
        }
    }
    best.ok_or_else(|| {
        Error::NoCriticalValue(format!("no positive critical value for level {c}"))
    })
}

impl ReductionLevel {
    /// Level at c with region parameter `fraction * R`.
    pub fn at(space: &SphereSpace, c: f64, fraction: f64) -> Result<ReductionLevel> {
        let r2 = space.radius * space.radius;
        if c.abs() >= r2 - 1e-9 {
            return Err(Error::NonRegularLevel(format!(
                "level {c} touches the critical set of the moment map"
            )));
        }
        let (critical_value, _) = critical_radius(space, c)?;
        assert!((0.0..1.0).contains(&fraction));
        Ok(ReductionLevel {
            c,
            r: fraction * critical_value,
            critical_value,
            eps_cut: (fraction * critical_value).sqrt(),
        })
    }

    /// Smooth cutoff in the moment distance d = |mu - c|: identically 1
    /// for d < eps_cut/2, identically 0 for d > eps_cut.
    pub fn chi(&self, dist: f64) -> f64 {
        let (lo, hi) = (self.eps_cut / 2.0, self.eps_cut);
        if dist <= lo {
            1.0
        } else if dist >= hi {
            0.0
        } else {
            let t = (dist - lo) / (hi - lo);
            let f = |s: f64| if s > 0.0 { (-1.0 / s).exp() } else { 0.0 };
            f(1.0 - t) / (f(1.0 - t) + f(t))
        }
    }

    fn with_eps_cut(&self, eps: f64) -> ReductionLevel {
        ReductionLevel {
            eps_cut: eps,
            ..self.clone()
        }
    }

    pub fn halved_cutoff(&self) -> ReductionLevel {
        self.with_eps_cut(self.eps_cut / 2.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    All,
    Inner,
    Outer,
}

/// z-intervals of a region for the sphere catalog.
fn region_intervals(space: &SphereSpace, level: &ReductionLevel, region: Region) -> Vec<(f64, f64)> {
    let r = space.radius;
    let half = level.r.sqrt();
    let lo = ((level.c - half) / r).max(-r);
    let hi = ((level.c + half) / r).min(r);
    match region {
        Region::All => vec![(-r, r)],
        Region::Inner => vec![(lo, hi)],
        Region::Outer => {
            let mut out = Vec::new();
            if lo > -r {
                out.push((-r, lo));
            }
            if hi < r {
                out.push((hi, r));
            }
            out
        }
    }
}

/// Gauss-Hermite pairing of the test function against e^{i x p}:
/// int poly(x) e^{-x^2/(2 s^2)} e^{i x p} dx.
///
/// The square is completed first (x = i s^2 p + sqrt(2) s y), so the rule
/// integrates a polynomial in y against e^{-y^2} and stays exact at every
/// phase; the raw oscillatory form would alias once s p exceeds the rule's
/// resolvable bandwidth.
fn paired_kernel(gh: &GaussHermite, phi: &TestFunction, p: f64) -> Complex64 {
    let s = phi.scale;
    let shift = Complex64::new(0.0, s * s * p);
    let damp = (-s * s * p * p / 2.0).exp();
    let terms: Vec<Complex64> = gh
        .nodes
        .iter()
        .zip(&gh.weights)
        .map(|(&y, &w)| {
            let x = shift + std::f64::consts::SQRT_2 * s * y;
            let mut val = Complex64::new(0.0, 0.0);
            let mut pow = Complex64::new(1.0, 0.0);
            for &c in &phi.poly {
                val += pow * c;
                pow *= x;
            }
            val * w
        })
        .collect();
    pairwise_sum_c(&terms) * (std::f64::consts::SQRT_2 * s * damp)
}

/// The deformation integral paired with the test function:
/// int_g Phi(X) int_region e^{-i t d_X lambda^{M_O}} alpha(X) dX.
///
/// Outer quadrature runs over the region of M (the angular direction
/// contributes its exact 2pi period); the inner integral over g is
/// Gauss-Hermite matched to the Gaussian test function.
pub fn theta_t(
    space: &SphereSpace,
    level: &ReductionLevel,
    region: Region,
    t: f64,
    phi: &TestFunction,
    alpha: &AlphaChoice,
) -> Result<Complex64> {
    let gh = GaussHermite::new(80);
    let k = space.witten_k(level.c);
    let kp = space.witten_k_prime(level.c);
    let r = space.radius;
    let mut total = Complex64::new(0.0, 0.0);
    for (a, b) in region_intervals(space, level, region) {
        if b - a < 1e-14 {
            continue;
        }
        let integrand = |z: f64| -> Complex64 {
            let (coef, phase) = match alpha.kind {
                AlphaKind::One => (t * kp(z), t * k(z)),
                AlphaKind::ExpSigmaG => (r + t * kp(z), r * z + t * k(z)),
            };
            paired_kernel(&gh, phi, phase) * coef
        };
        total += adaptive_gl_c(a, b, 1e-11, &integrand)?;
    }
    Ok(total * Complex64::new(0.0, TWO_PI * alpha.scale))
}

/// Composite Gauss-Legendre with panel doubling; kept local so theta_t can
/// drive tight tolerances on analytic integrands.
fn adaptive_gl_c<F: Fn(f64) -> Complex64>(
    a: f64,
    b: f64,
    tol: f64,
    f: &F,
) -> Result<Complex64> {
    let rule = GaussLegendre::new(32);
    let mut panels = 1usize;
    let mut prev: Option<Complex64> = None;
    loop {
        if panels * 32 > (1 << 20) {
            return Err(Error::QuadratureFailure(format!(
                "deformation integral did not reach {tol:.1e}"
            )));
        }
        let h = (b - a) / panels as f64;
        let parts: Vec<Complex64> = (0..panels)
            .map(|i| rule.integrate_c(a + i as f64 * h, a + (i + 1) as f64 * h, f))
            .collect();
        let cur = pairwise_sum_c(&parts);
        if let Some(p) = prev {
            if (cur - p).norm() < tol {
                return Ok(cur);
            }
        }
        prev = Some(cur);
        panels *= 2;
    }
}

/// chi_O-weighted variant of theta_t over the whole manifold, used for the
/// cutoff-robustness checks.
pub fn theta_t_cutoff(
    space: &SphereSpace,
    level: &ReductionLevel,
    t: f64,
    phi: &TestFunction,
    alpha: &AlphaChoice,
) -> Result<Complex64> {
    let gh = GaussHermite::new(80);
    let k = space.witten_k(level.c);
    let kp = space.witten_k_prime(level.c);
    let r = space.radius;
    let integrand = |z: f64| -> Complex64 {
        let chi = level.chi((r * z - level.c).abs());
        if chi == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        let (coef, phase) = match alpha.kind {
            AlphaKind::One => (t * kp(z), t * k(z)),
            AlphaKind::ExpSigmaG => (r + t * kp(z), r * z + t * k(z)),
        };
        paired_kernel(&gh, phi, phase) * (coef * chi)
    };
    let v = adaptive_gl_c(-r, r, 1e-11, &integrand)?;
    Ok(v * Complex64::new(0.0, TWO_PI * alpha.scale))
}

/// Runs theta_t(inner) along the t-ladder and reports the limit; declared
/// converged when successive values differ by less than 1e-5.
pub fn theta_limit(
    space: &SphereSpace,
    level: &ReductionLevel,
    phi: &TestFunction,
    alpha: &AlphaChoice,
) -> Result<(Complex64, Vec<(f64, Complex64)>)> {
    let ladder = [10.0, 20.0, 40.0];
    let mut trace = Vec::new();
    for &t in &ladder {
        let v = theta_t(space, level, Region::Inner, t, phi, alpha)?;
        trace.push((t, v));
    }
    let last = trace[trace.len() - 1].1;
    let prev = trace[trace.len() - 2].1;
    if (last - prev).norm() > 1e-5 {
        return Err(Error::ExtrapolationFailure(format!(
            "theta_t(inner) not converged on the t-ladder: |delta| = {:.3e}",
            (last - prev).norm()
        )));
    }
    Ok((last, trace))
}

/// Witten's regularized integral Z(eps) =
/// int_M int_g e^{i sigma_g(X)} beta(X) e^{-eps |X|^2/2} dX for polynomial
/// beta. The inner Gaussian integral has a completed-square closed form for
/// beta = 1 (`closed_inner` = true); Gauss-Hermite otherwise.
pub fn witten_z(
    space: &SphereSpace,
    beta_poly: &[f64],
    eps: f64,
    closed_inner: bool,
) -> Result<Complex64> {
    let r = space.radius;
    let inner: Box<dyn Fn(f64) -> Complex64> = if closed_inner {
        if beta_poly != [1.0] {
            return Err(Error::Usage(
                "closed-form inner integral is the beta = 1 fast path".into(),
            ));
        }
        Box::new(move |z: f64| {
            Complex64::new(
                (TWO_PI / eps).sqrt() * (-(r * z) * (r * z) / (2.0 * eps)).exp(),
                0.0,
            )
        })
    } else {
        let gh = GaussHermite::new(96);
        let poly = beta_poly.to_vec();
        Box::new(move |z: f64| {
            let poly = poly.clone();
            gh.integrate_gaussian_c(eps, move |x| {
                let v: f64 = poly
                    .iter()
                    .enumerate()
                    .map(|(k, c)| c * x.powi(k as i32))
                    .sum();
                Complex64::new(0.0, x * r * z).exp() * v
            })
        })
    };
    let v = adaptive_gl_c(-r, r, 1e-12, &|z| inner(z))?;
    Ok(v * Complex64::new(0.0, TWO_PI * r))
}

/// Leading localized term of Z(eps): (2 pi i) vol(S^1) beta(0) at the zero
/// level of the moment map.
pub fn witten_leading_term(beta_poly: &[f64]) -> Complex64 {
    Complex64::new(0.0, TWO_PI * VOL_S1 * beta_poly[0])
}

/// Aitken delta-squared extrapolation on the last three ladder values.
pub fn aitken_limit(values: &[Complex64]) -> Complex64 {
    assert!(values.len() >= 3);
    let n = values.len();
    let (x0, x1, x2) = (values[n - 3], values[n - 2], values[n - 1]);
    let d1 = x1 - x0;
    let d2 = x2 - x1;
    let denom = d2 - d1;
    if denom.norm() < 1e-300 {
        return x2;
    }
    x2 - d2 * d2 / denom
}

/// Least-squares slope of ln|N(eps)| against 1/eps: the fitted exponential
/// decay rate of the Witten remainder (positive = decaying like
/// e^{-rate/eps}).
pub fn remainder_decay_rate(ladder: &[f64], remainders: &[Complex64]) -> f64 {
    let xs: Vec<f64> = ladder.iter().map(|e| 1.0 / e).collect();
    let ys: Vec<f64> = remainders.iter().map(|n| n.norm().max(1e-300).ln()).collect();
    let n = xs.len() as f64;
    let sx: f64 = xs.iter().sum();
    let sy: f64 = ys.iter().sum();
    let sxx: f64 = xs.iter().map(|x| x * x).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| x * y).sum();
    let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    -slope
}

/// Localized term by fiber integration over the level circle:
/// (2 pi i)^{dim G} int_{P^O} alpha_red Phi(Omega) ^ vol_omega. On the
/// sphere catalog the reduced space is a point, the curvature vanishes and
/// the fiber has volume 2pi.
pub fn theta0_reduced(
    space: &SphereSpace,
    level: &ReductionLevel,
    phi: &TestFunction,
    alpha: &AlphaChoice,
) -> Result<Complex64> {
    let r2 = space.radius * space.radius;
    if level.c.abs() >= r2 - 1e-9 {
        return Err(Error::NonRegularLevel(format!("level {}", level.c)));
    }
    // alpha_red on the point base: e^{i(c Omega + sigma_red)} with Omega = 0
    // reduces to 1 for both catalog integrands
    let alpha_red = alpha.scale;
    let fiber_volume = TWO_PI;
    Ok(Complex64::new(0.0, TWO_PI) * fiber_volume * alpha_red * phi.eval(0.0))
}

/// Localized term through the orbit-method route: the tempered pairing
/// (2 pi i)^n (2 pi)^{-n} int_{P^O} alpha_red [ int dP(F) int_{O_F}
/// e^{-i(Omega,xi)} ( int_g e^{i<xi,X>} J^{-1/2} Phi(X) dX ) dbeta_F(xi) ]
/// vol_omega, evaluated with the orbits-module disintegration and Liouville
/// integrals. For S^1 the J-factor is 1, orbits are points and the bracket
/// collapses to Fourier inversion.
pub fn theta0_kirillov(
    space: &SphereSpace,
    level: &ReductionLevel,
    phi: &TestFunction,
    alpha: &AlphaChoice,
) -> Result<Complex64> {
    let r2 = space.radius * space.radius;
    if level.c.abs() >= r2 - 1e-9 {
        return Err(Error::NonRegularLevel(format!("level {}", level.c)));
    }
    let gh = GaussHermite::new(80);
    let density = plancherel_disintegration(CatalogGroup::U1);
    let rs = RootSystem::torus(1);
    // the curvature of the level bundle vanishes on the point base
    let omega_curv = 0.0;
    let l = 14.0 / phi.scale;
    let bracket = adaptive_gl_c(-l, l, 1e-10, &|xi| {
        let fw = rs.weight(vec![xi]);
        let orbit = make_orbit(CatalogGroup::U1, &fw).expect("torus weights are dominant");
        let g_of_xi = paired_kernel(&gh, phi, xi);
        let (v, _) = liouville_integral(
            &orbit,
            |p| Complex64::new(0.0, -omega_curv * p[0]).exp(),
            &QuadratureScheme::point_mass(),
        )
        .expect("point-mass scheme on a point orbit");
        v * g_of_xi * density.eval(&[xi])
    })?;
    let alpha_red = alpha.scale;
    let fiber_volume = TWO_PI;
    let scale = Complex64::new(0.0, TWO_PI) / TWO_PI; // (2 pi i)^n (2 pi)^{-n}, n = 1
    Ok(scale * fiber_volume * alpha_red * bracket)
}

/// The nonabelian structural identity behind the orbit-method route: for an
/// invariant Gaussian Phi on su(2) and a scalar curvature placeholder w0,
/// int dP(F) int_{O_F} e^{-i<xi, w0 H0>} ( int_g e^{i<xi,X>} Phi(X) dX )
/// dbeta_F(xi) = (2 pi)^3 Phi(w0 H0), with every factor on the left
/// evaluated by the orbits machinery.
pub fn su2_disintegrated_inversion(
    phi_scale: f64,
    omega0: f64,
    n_z: usize,
    n_chamber: usize,
) -> Result<(Complex64, f64)> {
    let alg = MatrixAlgebra::new(CatalogGroup::Su2);
    let rs = alg.root_system();
    let density = plancherel_disintegration(CatalogGroup::Su2);
    let s = phi_scale;
    // int_{su(2)} e^{i<xi,X>} e^{-|X|^2/(2 s^2)} dX, rotation-invariant
    let g_hat = move |norm_xi: f64| {
        (TWO_PI * s * s).powf(1.5) * (-s * s * norm_xi * norm_xi / 2.0).exp()
    };
    // H0: unit Cartan direction; the pairing <xi, w0 H0> = w0 * xi_3
    let l = 14.0 / s;
    let scheme = QuadratureScheme::su2_gauss_legendre(n_z, 16);
    let gl = GaussLegendre::new(n_chamber);
    let (nodes, weights) = gl.mapped(1e-9, l);
    let mut terms = Vec::new();
    for (&fval, &w) in nodes.iter().zip(&weights) {
        let fw = rs.weight(vec![fval]);
        let orbit = make_orbit(CatalogGroup::Su2, &fw)?;
        let (oi, _) = liouville_integral(
            &orbit,
            |p| {
                let norm = (p.iter().map(|x| x * x).sum::<f64>()).sqrt();
                Complex64::new(0.0, -omega0 * p[2]).exp() * g_hat(norm)
            },
            &scheme,
        )?;
        terms.push(oi * (w * density.eval(&[fval])));
    }
    let lhs = pairwise_sum_c(&terms);
    let rhs = TWO_PI.powi(3) * (-omega0 * omega0 / (2.0 * s * s)).exp();
    Ok((lhs, rhs))
}

/// Both sides of the window identity F(int_M alpha) = i^n int_{P^xi}
/// alpha_red e^{-i(xi,Omega)} vol_omega at a regular value xi of the moment
/// map.
pub struct JkWindowValue {
    pub numeric_ft: Complex64,
    pub fiber_side: Complex64,
}

/// Left side: mollified numerical Fourier transform in X of
/// x -> int_M alpha(x), each sample itself a quadrature over the sphere.
/// Right side: the fiber integral at the level xi.
pub fn jeffrey_kirwan_ft(
    space: &SphereSpace,
    xi: f64,
    alpha: &AlphaChoice,
) -> Result<JkWindowValue> {
    if alpha.kind != AlphaKind::ExpSigmaG {
        return Err(Error::Usage(
            "the window check pairs with alpha = e^{i sigma_g}".into(),
        ));
    }
    let r = space.radius;
    // int_M e^{i sigma_g(x)} = 2 pi i r int e^{i x r z} dz, sampled on a
    // wide grid and transformed against a Gaussian mollifier window; the
    // per-sample sphere quadrature order grows with the oscillation |x| r
    let window = 40.0;
    let half_width = 8.0 * window;
    let n = 48_001usize;
    let h = 2.0 * half_width / (n as f64 - 1.0);
    let rules: Vec<GaussLegendre> = [64, 128, 256, 512]
        .iter()
        .map(|&k| GaussLegendre::new(k))
        .collect();
    let pick_rule = |x: f64| -> &GaussLegendre {
        let cycles = (x.abs() * r) / TWO_PI;
        if cycles < 12.0 {
            &rules[0]
        } else if cycles < 25.0 {
            &rules[1]
        } else if cycles < 50.0 {
            &rules[2]
        } else {
            &rules[3]
        }
    };
    let mut terms = Vec::with_capacity(n);
    for k in 0..n {
        let x = -half_width + k as f64 * h;
        let pairing = pick_rule(x).integrate_c(-r, r, |z| Complex64::new(0.0, x * r * z).exp());
        let h_of_x = Complex64::new(0.0, TWO_PI * r * alpha.scale) * pairing;
        let moll = (-x * x / (2.0 * window * window)).exp();
        terms.push(h_of_x * moll * Complex64::new(0.0, -xi * x).exp() * h);
    }
    let numeric_ft = pairwise_sum_c(&terms) * crate::cartan::forward_scale(1);
    // fiber side: Omega = 0 on the point base, alpha_red = scale, fiber 2pi
    let in_window = xi.abs() < r * r;
    let fiber_side = if in_window {
        Complex64::new(0.0, 1.0) * TWO_PI * alpha.scale
    } else {
        Complex64::new(0.0, 0.0)
    };
    Ok(JkWindowValue {
        numeric_ft,
        fiber_side,
    })
}

/// The su(2) coadjoint-orbit Hamiltonian space (structural catalog entry):
/// the sphere of Liouville mass 2r in su(2)* with its KKS form, action by
/// conjugation, moment map the inclusion, and the ambient round metric.
pub struct Su2OrbitSpace {
    pub r: f64,
    alg: MatrixAlgebra,
}

impl Su2OrbitSpace {
    pub fn new(r: f64) -> Self {
        Su2OrbitSpace {
            r,
            alg: MatrixAlgebra::new(CatalogGroup::Su2),
        }
    }

    /// Chart (u, phi) -> ambient coordinates in su(2)*.
    pub fn embed(&self, u: f64, phi: f64) -> [f64; 3] {
        let rho = (2.0 * (self.r * self.r - u * u)).max(0.0).sqrt();
        let s2 = std::f64::consts::SQRT_2;
        [rho * phi.cos(), rho * phi.sin(), s2 * u]
    }

    fn coords_to_mat(&self, p: &[f64]) -> CMat {
        let mut m = crate::linalg::cmat_zero(2);
        for (c, b) in p.iter().zip(&self.alg.basis) {
            m = cmat_add_scaled(&m, b, Complex64::new(*c, 0.0));
        }
        m
    }

    /// Paper-sign action field X_M(f) = d/dt exp(-tX).f = [F, X] pushed to
    /// the chart: returns (du/dt, dphi/dt).
    pub fn action_field(&self, xi: &[f64; 3], p_chart: &[f64; 2]) -> (f64, f64) {
        let f = self.embed(p_chart[0], p_chart[1]);
        let fm = self.coords_to_mat(&f);
        let xm = self.coords_to_mat(xi);
        let v = cmat_commutator(&fm, &xm);
        let vc: Vec<f64> = self
            .alg
            .basis
            .iter()
            .map(|b| minus_trace_product(b, &v))
            .collect();
        let s2 = std::f64::consts::SQRT_2;
        let udot = vc[2] / s2;
        let rho2 = f[0] * f[0] + f[1] * f[1];
        let phidot = (f[0] * vc[1] - f[1] * vc[0]) / rho2;
        (udot, phidot)
    }

    /// sigma = dphi ^ du evaluated on two action fields.
    pub fn sigma_on(&self, xi: &[f64; 3], eta: &[f64; 3], p: &[f64; 2]) -> f64 {
        let (du1, dphi1) = self.action_field(xi, p);
        let (du2, dphi2) = self.action_field(eta, p);
        dphi1 * du2 - dphi2 * du1
    }

    /// <f(p), [eta, xi]>: the value sigma must take on the pair of action
    /// fields. The bracket order carries the sign of the X_M = d/dt exp(-tX)
    /// convention, which reverses the classical orientation.
    pub fn kks_pairing(&self, xi: &[f64; 3], eta: &[f64; 3], p: &[f64; 2]) -> f64 {
        let f = self.embed(p[0], p[1]);
        let xm = self.coords_to_mat(xi);
        let em = self.coords_to_mat(eta);
        let bracket = cmat_commutator(&em, &xm);
        let fm = self.coords_to_mat(&f);
        minus_trace_product(&fm, &bracket)
    }

    /// Ambient round-metric scalar product of two action fields.
    pub fn metric_on(&self, xi: &[f64; 3], eta: &[f64; 3], p: &[f64; 2]) -> f64 {
        // push chart tangents to R^3 through the embedding
        let h = 1e-6;
        let push = |du: f64, dphi: f64| -> [f64; 3] {
            let a = self.embed(p[0] + h * du, p[1] + h * dphi);
            let b = self.embed(p[0] - h * du, p[1] - h * dphi);
            [
                (a[0] - b[0]) / (2.0 * h),
                (a[1] - b[1]) / (2.0 * h),
                (a[2] - b[2]) / (2.0 * h),
            ]
        };
        let (du1, dphi1) = self.action_field(xi, p);
        let (du2, dphi2) = self.action_field(eta, p);
        let v1 = push(du1, dphi1);
        let v2 = push(du2, dphi2);
        v1.iter().zip(&v2).map(|(a, b)| a * b).sum()
    }
}

/// Structural catalog entry: the diagonal circle on S^2 x S^2 (checks are
/// inherited from the cartan layer; this constructor names the entry).
pub fn s1_diag_space(r1: f64, r2: f64) -> TorusSpace {
    s1_diagonal_product(r1, r2)
}

/// Samples of the positivity identity <f_lambda, mu_O> = |H_O|^2 >= 0 on
/// the sphere catalog.
pub fn witten_positivity_samples(
    space: &SphereSpace,
    level: &ReductionLevel,
    n: usize,
) -> Vec<f64> {
    let r = space.radius;
    let k = space.witten_k(level.c);
    (0..n)
        .map(|i| {
            let z = -r + (i as f64 + 0.5) * 2.0 * r / n as f64;
            // <f_lambda, mu_O> = k(z) (r z - c)
            k(z) * (r * z - level.c)
        })
        .collect()
}

/// Chevalley-restriction sanity for invariant test functions: a radial
/// Gaussian on su(2) restricted to the Cartan line is Weyl-invariant.
pub fn invariant_test_function_is_weyl_symmetric(scale: f64, samples: usize) -> f64 {
    let rs = crate::lie::build_root_system(crate::lie::RootFamily::A1, 1).unwrap();
    let mut worst: f64 = 0.0;
    for i in 0..samples {
        let x = -3.0 + 6.0 * (i as f64 + 0.5) / samples as f64;
        let phi = (-x * x / (2.0 * scale * scale)).exp();
        for w in &rs.weyl_elements {
            let wx = w.apply(&[x])[0];
            let phi_w = (-wx * wx / (2.0 * scale * scale)).exp();
            worst = worst.max((phi - phi_w).abs());
        }
    }
    worst
}
