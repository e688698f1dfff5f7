//! Coadjoint orbits of the catalog groups: Liouville-measure integration,
//! the closed-form orbit Fourier transform, and the disintegration of
//! Lebesgue measure on g* over the dominant chamber.
//!
//! Normalization: the Liouville measure is beta = sigma^d / (d! (2pi)^d)
//! on a 2d-dimensional orbit. With base points F = r * alpha this gives the
//! su(2)* sphere "radius r" total mass 2r, pushforward Lebesgue on [-r, r],
//! and makes the Harish-Chandra equality hold with no stray constants. That
//! single convention is pinned by the quadrature tests before anything else
//! relies on it.

use crate::error::{Error, Result};
use crate::lie::{CartanElement, CatalogGroup, MatrixAlgebra, RootSystem, Weight};
use crate::linalg::{cmat_adjoint, cmat_mul, cmat_zero, minus_trace_product, qr_unitary, CMat};
use crate::quad::{pairwise_sum_c, periodic_nodes, GaussLegendre};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

/// Orbit of the coadjoint action through a dominant base point.
pub struct CoadjointOrbit {
    pub group: CatalogGroup,
    pub base_point: Weight,
    /// Positive roots not orthogonal to the base point.
    pub p_f: Vec<Vec<f64>>,
    pub dim: usize,
    /// prod_{alpha in P_F} <F, alpha^vee> / 2pi.
    pub normalization_factor: f64,
    rs: RootSystem,
}

/// How an orbit integral is evaluated.
#[derive(Debug, Clone)]
pub enum SchemeKind {
    PointMass,
    /// Gauss-Legendre in the moment coordinate times a uniform rule in the
    /// fiber angle; deterministic.
    Su2GaussLegendre { n_z: usize, n_phi: usize },
    /// Haar-conjugation Monte Carlo with a fixed seed.
    HaarMc { samples: usize, seed: u64 },
}

#[derive(Debug, Clone)]
pub struct QuadratureScheme {
    pub kind: SchemeKind,
    /// When set, Monte-Carlo evaluation fails if the standard error
    /// exceeds this.
    pub requested_tol: Option<f64>,
}

impl QuadratureScheme {
    pub fn point_mass() -> Self {
        QuadratureScheme {
            kind: SchemeKind::PointMass,
            requested_tol: None,
        }
    }

    pub fn su2_gauss_legendre(n_z: usize, n_phi: usize) -> Self {
        QuadratureScheme {
            kind: SchemeKind::Su2GaussLegendre { n_z, n_phi },
            requested_tol: None,
        }
    }

    pub fn haar_mc(samples: usize, seed: u64) -> Self {
        QuadratureScheme {
            kind: SchemeKind::HaarMc { samples, seed },
            requested_tol: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FtMethod {
    ClosedForm,
    Quadrature,
}

#[derive(Debug, Clone)]
pub struct OrbitFourierValue {
    pub value: Complex64,
    pub at: CartanElement,
    pub method: FtMethod,
}

/// Orbit through the dominant base point F.
pub fn make_orbit(group: CatalogGroup, f: &Weight) -> Result<CoadjointOrbit> {
    let alg = MatrixAlgebra::new(group);
    let rs = alg.root_system();
    if f.coords.len() != rs.rank {
        return Err(Error::RankMismatch {
            expected: rs.rank,
            got: f.coords.len(),
        });
    }
    if !rs.is_dominant(&f.coords) {
        return Err(Error::NonDominant(format!("{:?}", f.coords)));
    }
    let p_f: Vec<Vec<f64>> = rs
        .positive_roots
        .iter()
        .filter(|a| {
            let x = CartanElement::new(f.coords.clone());
            rs.pair_root(a, &x).abs() > 1e-10
        })
        .cloned()
        .collect();
    let x = CartanElement::new(f.coords.clone());
    let normalization_factor = p_f
        .iter()
        .map(|a| rs.pair_root(&rs.coroot(a), &x) / (2.0 * PI))
        .product();
    Ok(CoadjointOrbit {
        group,
        base_point: f.clone(),
        dim: 2 * p_f.len(),
        p_f,
        normalization_factor,
        rs,
    })
}

impl CoadjointOrbit {
    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    /// Total Liouville mass of the orbit: prod_{alpha in P_F}
    /// <F,alpha>/<rho,alpha>, the X -> 0 limit of the orbit Fourier
    /// transform. Empty product for point orbits.
    pub fn liouville_mass(&self) -> f64 {
        let x = CartanElement::new(self.base_point.coords.clone());
        let rho_x = CartanElement::new(self.rs.rho.clone());
        self.p_f
            .iter()
            .map(|a| self.rs.pair_root(a, &x) / self.rs.pair_root(a, &rho_x))
            .product()
    }

    /// Base point embedded in the full orthonormal coordinates of g*.
    pub fn embedded_base(&self) -> Vec<f64> {
        embed_cartan(self.group, &self.base_point.coords)
    }
}

/// Embedding of t* coordinates into the orthonormal coordinates of g*.
pub fn embed_cartan(group: CatalogGroup, coords: &[f64]) -> Vec<f64> {
    let alg = MatrixAlgebra::new(group);
    let mut out = vec![0.0; alg.dim];
    for (k, &ci) in alg.cartan_indices.iter().enumerate() {
        out[ci] = coords[k];
    }
    out
}

/// Integral of f against the Liouville measure, with an error estimate
/// (rule-halving difference for deterministic schemes, standard error for
/// Monte Carlo).
pub fn liouville_integral<F>(
    orbit: &CoadjointOrbit,
    f: F,
    scheme: &QuadratureScheme,
) -> Result<(Complex64, f64)>
where
    F: Fn(&[f64]) -> Complex64,
{
    match &scheme.kind {
        SchemeKind::PointMass => {
            if orbit.dim != 0 {
                return Err(Error::SchemeMismatch(format!(
                    "point-mass scheme on a {}-dimensional orbit",
                    orbit.dim
                )));
            }
            Ok((f(&orbit.embedded_base()), 0.0))
        }
        SchemeKind::Su2GaussLegendre { n_z, n_phi } => {
            if orbit.group != CatalogGroup::Su2 || orbit.dim != 2 {
                return Err(Error::SchemeMismatch(
                    "cylindrical rule requires a 2-dimensional su(2)* orbit".into(),
                ));
            }
            if *n_z < 8 || *n_phi < 8 {
                return Err(Error::SchemeMismatch(format!(
                    "need n_z, n_phi >= 8, got ({n_z}, {n_phi})"
                )));
            }
            let full = su2_cylindrical(orbit, &f, *n_z, *n_phi);
            let half = su2_cylindrical(orbit, &f, (*n_z / 2).max(8), (*n_phi / 2).max(8));
            Ok((full, (full - half).norm()))
        }
        SchemeKind::HaarMc { samples, seed } => {
            if orbit.group != CatalogGroup::Su3 {
                return Err(Error::SchemeMismatch(
                    "Haar Monte Carlo is the su(3)* scheme".into(),
                ));
            }
            if orbit.dim == 0 {
                return Ok((f(&orbit.embedded_base()), 0.0));
            }
            if *samples < 1000 {
                return Err(Error::SchemeMismatch(format!(
                    "need at least 1000 Haar samples, got {samples}"
                )));
            }
            let (value, stderr) = su3_haar_mc(orbit, &f, *samples, *seed);
            if let Some(tol) = scheme.requested_tol {
                if stderr > tol {
                    return Err(Error::McVarianceOverflow { stderr, tol });
                }
            }
            Ok((value, stderr))
        }
    }
}

fn su2_cylindrical<F>(orbit: &CoadjointOrbit, f: &F, n_z: usize, n_phi: usize) -> Complex64
where
    F: Fn(&[f64]) -> Complex64,
{
    // orbit through F = r alpha: sphere of coordinate radius sqrt(2) r,
    // beta = (1/2pi) du ^ dphi with u in [-r, r] the moment coordinate
    let x = CartanElement::new(orbit.base_point.coords.clone());
    let r = orbit.rs.pair_root(&orbit.p_f[0], &x) / 2.0;
    let gl = GaussLegendre::new(n_z);
    let (u_nodes, u_weights) = gl.mapped(-r, r);
    let (phi_nodes, h_phi) = periodic_nodes(n_phi);
    let s2 = std::f64::consts::SQRT_2;
    let mut terms = Vec::with_capacity(n_z * n_phi);
    for (&u, &wu) in u_nodes.iter().zip(&u_weights) {
        let rho = (2.0 * (r * r - u * u)).max(0.0).sqrt();
        for &phi in &phi_nodes {
            let point = [rho * phi.cos(), rho * phi.sin(), s2 * u];
            terms.push(f(&point) * (wu * h_phi / (2.0 * PI)));
        }
    }
    pairwise_sum_c(&terms)
}

fn su3_haar_mc<F>(orbit: &CoadjointOrbit, f: &F, samples: usize, seed: u64) -> (Complex64, f64)
where
    F: Fn(&[f64]) -> Complex64,
{
    let alg = MatrixAlgebra::new(CatalogGroup::Su3);
    let f_mat = alg.cartan_matrix_from_coords(&orbit.base_point.coords);
    let mass = orbit.liouville_mass();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut terms = Vec::with_capacity(samples);
    for _ in 0..samples {
        let g = haar_unitary_3(&mut rng);
        let conj = cmat_mul(&cmat_mul(&g, &f_mat), &cmat_adjoint(&g));
        let coords: Vec<f64> = alg
            .basis
            .iter()
            .map(|e| minus_trace_product(e, &conj))
            .collect();
        terms.push(f(&coords));
    }
    let mean = pairwise_sum_c(&terms) / samples as f64;
    let var: f64 = terms.iter().map(|t| (t - mean).norm_sqr()).sum::<f64>()
        / (samples as f64 - 1.0);
    let stderr = mass * (var / samples as f64).sqrt();
    (mean * mass, stderr)
}

/// Haar unitary from a complex Ginibre matrix via sign-fixed QR. Unitaries
/// sampled from U(3) conjugate exactly like SU(3) does: the center acts
/// trivially by conjugation.
pub fn haar_unitary_3<R: Rng>(rng: &mut R) -> CMat {
    let mut g = cmat_zero(3);
    let mut gauss = || {
        let u1: f64 = rng.gen_range(1e-12..1.0);
        let u2: f64 = rng.gen_range(0.0..1.0);
        (-2.0 * u1.ln()).sqrt() * (2.0 * PI * u2).cos()
    };
    for i in 0..3 {
        for j in 0..3 {
            g[i][j] = Complex64::new(gauss(), gauss()) / std::f64::consts::SQRT_2;
        }
    }
    qr_unitary(&g)
}

/// Closed-form Fourier transform of the orbit Liouville measure at a
/// regular Cartan element.
///
/// For lambda regular the signed Weyl sum divided by prod (i<alpha,X>) is
/// used; in general the stabilizer-coset sum with per-coset denominators.
/// Compact-form pairings <alpha, X> are imaginary, which the real-covector
/// convention realizes as i times the real pairing.
pub fn harish_chandra_ft(
    rs: &RootSystem,
    lambda: &Weight,
    x: &CartanElement,
) -> Result<OrbitFourierValue> {
    rs.assert_regular(x)?;
    let regular = rs
        .all_roots
        .iter()
        .all(|a| rs.pair_root(a, &CartanElement::new(lambda.coords.clone())).abs() > 1e-10);
    let value = if regular && !rs.positive_roots.is_empty() {
        hc_signed_form(rs, lambda, x)
    } else {
        hc_coset_form(rs, lambda, x)
    };
    Ok(OrbitFourierValue {
        value,
        at: x.clone(),
        method: FtMethod::ClosedForm,
    })
}

/// prod <alpha,X>^{-1} sum_w eps(w) e^{i<w lambda, X>} with the i-convention
/// in the denominator. Requires lambda regular.
pub fn hc_signed_form(rs: &RootSystem, lambda: &Weight, x: &CartanElement) -> Complex64 {
    let mut num = Complex64::new(0.0, 0.0);
    for w in &rs.weyl_elements {
        let wl = w.apply(&lambda.coords);
        let phase: f64 = wl.iter().zip(&x.coords).map(|(a, b)| a * b).sum();
        num += Complex64::new(0.0, phase).exp() * f64::from(w.sign);
    }
    let mut den = Complex64::new(1.0, 0.0);
    for alpha in &rs.positive_roots {
        den *= Complex64::new(0.0, rs.pair_root(alpha, x));
    }
    num / den
}

/// Stabilizer-coset form, valid for every dominant lambda:
/// sum_{W/W_lambda} e^{i<w lambda,X>} / prod_{alpha in P_lambda} i<w alpha, X>.
pub fn hc_coset_form(rs: &RootSystem, lambda: &Weight, x: &CartanElement) -> Complex64 {
    let lam_x = CartanElement::new(lambda.coords.clone());
    let p_lambda: Vec<&Vec<f64>> = rs
        .positive_roots
        .iter()
        .filter(|a| rs.pair_root(a, &lam_x).abs() > 1e-10)
        .collect();
    // enumerate cosets by distinct images of lambda, canonical (shortest
    // word) representative first thanks to the BFS ordering
    let mut images: Vec<(Vec<f64>, &crate::lie::WeylElement)> = Vec::new();
    for w in &rs.weyl_elements {
        let img = w.apply(&lambda.coords);
        if !images
            .iter()
            .any(|(p, _)| p.iter().zip(&img).all(|(a, b)| (a - b).abs() < 1e-10))
        {
            images.push((img, w));
        }
    }
    let mut terms = Vec::with_capacity(images.len());
    for (img, w) in &images {
        let phase: f64 = img.iter().zip(&x.coords).map(|(a, b)| a * b).sum();
        let mut den = Complex64::new(1.0, 0.0);
        for alpha in &p_lambda {
            let wa = w.apply(alpha);
            let pa: f64 = wa.iter().zip(&x.coords).map(|(a, b)| a * b).sum();
            den *= Complex64::new(0.0, pa);
        }
        terms.push(Complex64::new(0.0, phase).exp() / den);
    }
    pairwise_sum_c(&terms)
}

/// Density of the disintegration of Lebesgue measure on g* over the
/// dominant chamber: p(F) = (2pi)^{|P|} prod_{alpha in P} <F, alpha>, so
/// that int_{g*} f = int_chamber p(F) [int_{O_F} f dbeta_F] dF.
pub struct PlancherelDensity {
    rs: RootSystem,
}

impl PlancherelDensity {
    pub fn new(group: CatalogGroup) -> Self {
        PlancherelDensity {
            rs: MatrixAlgebra::new(group).root_system(),
        }
    }

    pub fn eval(&self, f_coords: &[f64]) -> f64 {
        let x = CartanElement::new(f_coords.to_vec());
        let prod: f64 = self
            .rs
            .positive_roots
            .iter()
            .map(|a| self.rs.pair_root(a, &x))
            .product();
        (2.0 * PI).powi(self.rs.positive_roots.len() as i32) * prod
    }
}

pub fn plancherel_disintegration(group: CatalogGroup) -> PlancherelDensity {
    PlancherelDensity::new(group)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::build_root_system;
    use crate::lie::RootFamily;
    use crate::quad::pairwise_sum;

    fn su2_orbit(r: f64) -> CoadjointOrbit {
        let rs = build_root_system(RootFamily::A1, 1).unwrap();
        let alpha = rs.positive_roots[0].clone();
        let f = rs.weight(alpha.iter().map(|a| a * r).collect());
        make_orbit(CatalogGroup::Su2, &f).unwrap()
    }

    fn su3_orbit(coords: Vec<f64>) -> CoadjointOrbit {
        let rs = build_root_system(RootFamily::A2, 2).unwrap();
        let f = rs.weight(coords);
        make_orbit(CatalogGroup::Su3, &f).unwrap()
    }

    #[test]
    fn point_orbit_basics() {
        let rs = crate::lie::RootSystem::torus(1);
        let f = rs.weight(vec![0.7]);
        let orbit = make_orbit(CatalogGroup::U1, &f).unwrap();
        assert_eq!(orbit.dim, 0);
        let (v, e) =
            liouville_integral(&orbit, |p| Complex64::new(p[0] * p[0], 0.0), &QuadratureScheme::point_mass())
                .unwrap();
        assert_eq!(e, 0.0);
        assert!((v.re - 0.49).abs() < 1e-15);
    }

    #[test]
    fn su2_orbit_dimension_and_mass() {
        let orbit = su2_orbit(1.3);
        assert_eq!(orbit.dim, 2);
        assert!((orbit.liouville_mass() - 2.6).abs() < 1e-12);
        // normalization factor <F, alpha^vee>/2pi = 2r/2pi
        assert!((orbit.normalization_factor - 2.6 / (2.0 * PI)).abs() < 1e-12);
        // total mass via quadrature of f = 1: the disintegration oracle,
        // Lebesgue pushforward on [-r, r]
        let scheme = QuadratureScheme::su2_gauss_legendre(32, 16);
        let (v, _) = liouville_integral(&orbit, |_| Complex64::new(1.0, 0.0), &scheme).unwrap();
        assert!((v.re - 2.6).abs() < 1e-12);
    }

    #[test]
    fn non_dominant_is_rejected() {
        let rs = build_root_system(RootFamily::A1, 1).unwrap();
        let f = rs.weight(vec![-0.4]);
        assert!(matches!(
            make_orbit(CatalogGroup::Su2, &f),
            Err(Error::NonDominant(_))
        ));
    }

    #[test]
    fn su3_regular_orbit_is_six_dimensional() {
        let rs = build_root_system(RootFamily::A2, 2).unwrap();
        let orbit = su3_orbit(rs.rho.clone());
        assert_eq!(orbit.dim, 6);
        // mass = prod <rho,alpha>/<rho,alpha> = 1 (trivial representation)
        assert!((orbit.liouville_mass() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn su3_wall_orbit_mass_matches_coset_limit() {
        // orbit through c * omega_1 is four-dimensional; its mass c^2/2 is
        // the X -> 0 limit of the coset Fourier form
        let rs = build_root_system(RootFamily::A2, 2).unwrap();
        let c = 1.7;
        let omega1: Vec<f64> = rs.fundamental_weights()[0].iter().map(|v| v * c).collect();
        let orbit = su3_orbit(omega1.clone());
        assert_eq!(orbit.dim, 4);
        let mass = orbit.liouville_mass();
        assert!((mass - c * c / 2.0).abs() < 1e-12, "{mass} vs {}", c * c / 2.0);
        let lam = rs.weight(omega1);
        for t in [1e-2, 1e-3] {
            let x = CartanElement::new(vec![0.31 * t, 0.73 * t]);
            let v = hc_coset_form(&rs, &lam, &x);
            assert!(
                (v.re - mass).abs() < 20.0 * t + 1e-9,
                "t={t}: {} vs {mass}",
                v.re
            );
            assert!(v.im.abs() < 20.0 * t);
        }
    }

    #[test]
    fn su3_wall_orbit_coset_form_vs_haar_mc() {
        // with the mass pinned by the coset limit, the closed form must
        // agree with Haar quadrature on the wall orbit too
        let rs = build_root_system(RootFamily::A2, 2).unwrap();
        let c = 1.3;
        let omega1: Vec<f64> = rs.fundamental_weights()[0].iter().map(|v| v * c).collect();
        let orbit = su3_orbit(omega1);
        let scheme = QuadratureScheme::haar_mc(20000, 1234321);
        let x = CartanElement::new(vec![0.4, 0.75]);
        let x_emb = embed_cartan(CatalogGroup::Su3, &x.coords);
        let (mc, stderr) = liouville_integral(
            &orbit,
            |p| {
                let phase: f64 = p.iter().zip(&x_emb).map(|(a, b)| a * b).sum();
                Complex64::new(0.0, phase).exp()
            },
            &scheme,
        )
        .unwrap();
        let closed = harish_chandra_ft(&rs, &orbit.base_point, &x).unwrap();
        assert!(
            (mc - closed.value).norm() < 3.0 * stderr.max(1e-6),
            "mc {mc} vs closed {} (stderr {stderr:.2e})",
            closed.value
        );
    }

    #[test]
    fn hc_point_orbit_is_plane_wave() {
        let rs = crate::lie::RootSystem::torus(1);
        let lam = rs.weight(vec![0.0]);
        let x = CartanElement::new(vec![2.7]);
        let v = harish_chandra_ft(&rs, &lam, &x).unwrap();
        assert!((v.value - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        let lam_c = rs.weight(vec![0.9]);
        let v = harish_chandra_ft(&rs, &lam_c, &x).unwrap();
        let expect = Complex64::new(0.0, 0.9 * 2.7).exp();
        assert!((v.value - expect).norm() < 1e-15);
    }

    #[test]
    fn hc_su2_matches_archimedes() {
        // F(X) = 2 sin(r a)/a with a = <alpha, X>, the Fourier transform of
        // Lebesgue measure on [-r, r]
        let rs = build_root_system(RootFamily::A1, 1).unwrap();
        let r = 1.25;
        let lam = rs.weight(rs.positive_roots[0].iter().map(|v| v * r).collect());
        for xc in [0.3, 0.9, 2.1] {
            let x = CartanElement::new(vec![xc]);
            let a = rs.pair_root(&rs.positive_roots[0], &x);
            let v = harish_chandra_ft(&rs, &lam, &x).unwrap();
            let expect = 2.0 * (r * a).sin() / a;
            assert!((v.value.re - expect).abs() < 1e-12);
            assert!(v.value.im.abs() < 1e-12);
        }
    }

    #[test]
    fn hc_su2_closed_form_vs_quadrature() {
        let rs = build_root_system(RootFamily::A1, 1).unwrap();
        let orbit = su2_orbit(1.0);
        let scheme = QuadratureScheme::su2_gauss_legendre(48, 16);
        for xc in [0.4, 1.1, 3.0] {
            let x = CartanElement::new(vec![xc]);
            let x_emb = embed_cartan(CatalogGroup::Su2, &x.coords);
            let (quad, _) = liouville_integral(
                &orbit,
                |p| {
                    let phase: f64 = p.iter().zip(&x_emb).map(|(a, b)| a * b).sum();
                    Complex64::new(0.0, phase).exp()
                },
                &scheme,
            )
            .unwrap();
            let closed = harish_chandra_ft(&rs, &orbit.base_point, &x).unwrap();
            assert!((quad - closed.value).norm() < 1e-8, "x={xc}");
        }
    }

    #[test]
    fn hc_coset_equals_signed_form_for_regular_orbits() {
        let rs = build_root_system(RootFamily::A2, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        let lam = rs.weight(rs.rho.iter().map(|v| v * 2.3).collect());
        for _ in 0..50 {
            let x = CartanElement::new(vec![rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5)]);
            if !rs.is_regular(&x) {
                continue;
            }
            let a = hc_signed_form(&rs, &lam, &x);
            let b = hc_coset_form(&rs, &lam, &x);
            assert!((a - b).norm() < 1e-10, "{a} vs {b}");
        }
    }

    #[test]
    fn hc_symmetries() {
        let rs = build_root_system(RootFamily::A2, 2).unwrap();
        let lam = rs.weight(rs.rho.iter().map(|v| v * 1.8).collect());
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for _ in 0..20 {
            let x = CartanElement::new(vec![rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)]);
            if !rs.is_regular(&x) {
                continue;
            }
            let base = harish_chandra_ft(&rs, &lam, &x).unwrap().value;
            // F(-X) = conj F(X)
            let neg = CartanElement::new(x.coords.iter().map(|c| -c).collect());
            let v = harish_chandra_ft(&rs, &lam, &neg).unwrap().value;
            assert!((v - base.conj()).norm() < 1e-10);
            // Weyl invariance
            for w in &rs.weyl_elements {
                let wx = CartanElement::new(w.apply(&x.coords));
                let v = harish_chandra_ft(&rs, &lam, &wx).unwrap().value;
                assert!((v - base).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn hc_su3_against_haar_mc() {
        let rs = build_root_system(RootFamily::A2, 2).unwrap();
        let lam_coords: Vec<f64> = rs.rho.iter().map(|v| v * 2.0).collect();
        let orbit = su3_orbit(lam_coords);
        let scheme = QuadratureScheme::haar_mc(20000, 424242);
        let x = CartanElement::new(vec![0.35, 0.6]);
        let x_emb = embed_cartan(CatalogGroup::Su3, &x.coords);
        let (mc, stderr) = liouville_integral(
            &orbit,
            |p| {
                let phase: f64 = p.iter().zip(&x_emb).map(|(a, b)| a * b).sum();
                Complex64::new(0.0, phase).exp()
            },
            &scheme,
        )
        .unwrap();
        let closed = harish_chandra_ft(&rs, &orbit.base_point, &x).unwrap();
        assert!(
            (mc - closed.value).norm() < 3.0 * stderr.max(1e-6),
            "mc {mc} vs closed {} (stderr {stderr:.2e})",
            closed.value
        );
    }

    #[test]
    fn kirillov_identity_spot_checks() {
        use crate::characters::{kirillov_lhs, HighestWeight};
        // su(2): J^{1/2} chi = F_{m+rho} at theta = pi/2
        let rs = build_root_system(RootFamily::A1, 1).unwrap();
        let hw = HighestWeight::from_labels(&rs, &[1]).unwrap();
        let x = CartanElement::new(vec![std::f64::consts::SQRT_2 * std::f64::consts::FRAC_PI_2]);
        let lhs = kirillov_lhs(&rs, &hw, &x).unwrap();
        let lam = rs.weight(hw.shifted.clone());
        let rhs = harish_chandra_ft(&rs, &lam, &x).unwrap();
        assert!((lhs - rhs.value).norm() < 1e-9);

        // su(3), random dominant weights and regular points
        let rs3 = build_root_system(RootFamily::A2, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        for m1 in 0..3u32 {
            for m2 in 0..3u32 {
                let hw = HighestWeight::from_labels(&rs3, &[m1, m2]).unwrap();
                let lam = rs3.weight(hw.shifted.clone());
                for _ in 0..10 {
                    let x = CartanElement::new(vec![
                        rng.gen_range(-1.2..1.2),
                        rng.gen_range(-1.2..1.2),
                    ]);
                    if !rs3.is_regular(&x) {
                        continue;
                    }
                    let lhs = kirillov_lhs(&rs3, &hw, &x).unwrap();
                    let rhs = harish_chandra_ft(&rs3, &lam, &x).unwrap();
                    assert!(
                        (lhs - rhs.value).norm() < 1e-8,
                        "m=({m1},{m2}) X={:?}",
                        x.coords
                    );
                }
            }
        }
    }

    #[test]
    fn plancherel_su2_disintegration() {
        // int_{R^3} f = int_0^inf p(s e) [orbit integral] ds for a Gaussian,
        // against a 3-dimensional product-quadrature oracle
        let density = plancherel_disintegration(CatalogGroup::Su2);
        let rs = build_root_system(RootFamily::A1, 1).unwrap();
        let f = |p: &[f64]| (-0.5 * p.iter().map(|x| x * x).sum::<f64>()).exp();

        // oracle: 3-dim Lebesgue integral by tensor Gauss-Legendre
        let gl = GaussLegendre::new(40);
        let (nodes, weights) = gl.mapped(-8.0, 8.0);
        let mut oracle_terms = Vec::new();
        for (&x, &wx) in nodes.iter().zip(&weights) {
            for (&y, &wy) in nodes.iter().zip(&weights) {
                for (&z, &wz) in nodes.iter().zip(&weights) {
                    oracle_terms.push(wx * wy * wz * f(&[x, y, z]));
                }
            }
        }
        let oracle = pairwise_sum(&oracle_terms);

        // disintegrated side: chamber is the ray {s >= 0} in t*
        let gl_s = GaussLegendre::new(64);
        let (s_nodes, s_weights) = gl_s.mapped(0.0, 8.0);
        let scheme = QuadratureScheme::su2_gauss_legendre(32, 16);
        let mut terms = Vec::new();
        for (&s, &ws) in s_nodes.iter().zip(&s_weights) {
            let fw = rs.weight(vec![s]);
            let orbit = make_orbit(CatalogGroup::Su2, &fw).unwrap();
            let (orbit_int, _) = if orbit.dim == 0 {
                liouville_integral(&orbit, |p| Complex64::new(f(p), 0.0), &QuadratureScheme::point_mass())
                    .unwrap()
            } else {
                liouville_integral(&orbit, |p| Complex64::new(f(p), 0.0), &scheme).unwrap()
            };
            terms.push(ws * density.eval(&[s]) * orbit_int.re);
        }
        let disintegrated = pairwise_sum(&terms);
        let rel = (disintegrated - oracle).abs() / oracle.abs();
        assert!(rel < 1e-4, "relative error {rel:.2e}");
        // the analytic value (2pi)^{3/2} as a second anchor
        assert!((oracle - (2.0 * PI).powf(1.5)).abs() < 1e-8);
    }

    #[test]
    fn plancherel_su3_disintegration_mc() {
        // anisotropic Gaussian so orbit averages are nontrivial; oracle is
        // an 8-dimensional importance-sampled Lebesgue Monte Carlo
        let density = plancherel_disintegration(CatalogGroup::Su3);
        let cs: [f64; 8] = [1.0, 1.3, 0.8, 1.1, 0.9, 1.2, 1.05, 0.95];
        let f = move |p: &[f64]| {
            (-0.5 * p.iter().zip(&cs).map(|(x, c)| c * x * x).sum::<f64>()).exp()
        };
        let analytic: f64 = cs.iter().map(|c| (2.0 * PI / c).sqrt()).product();

        // oracle MC: sample from the standard normal, importance-correct
        let mut rng = ChaCha8Rng::seed_from_u64(777);
        let n_oracle = 200_000;
        let mut est = Vec::with_capacity(n_oracle);
        for _ in 0..n_oracle {
            let xi: Vec<f64> = (0..8)
                .map(|_| {
                    let u1: f64 = rng.gen_range(1e-12..1.0);
                    let u2: f64 = rng.gen_range(0.0..1.0);
                    (-2.0 * u1.ln()).sqrt() * (2.0 * PI * u2).cos()
                })
                .collect();
            let norm_sq: f64 = xi.iter().map(|x| x * x).sum();
            let density_std = (2.0 * PI).powi(-4) * (-0.5 * norm_sq).exp()
                / (2.0 * PI).powi(-4); // unnormalized cancels below
            let weight = (0.5 * norm_sq).exp() * (2.0 * PI).powi(4);
            let _ = density_std;
            est.push(f(&xi) * weight);
        }
        let oracle_mean = pairwise_sum(&est) / n_oracle as f64;
        let oracle_var = est
            .iter()
            .map(|v| (v - oracle_mean).powi(2))
            .sum::<f64>()
            / (n_oracle as f64 - 1.0);
        let oracle_stderr = (oracle_var / n_oracle as f64).sqrt();
        assert!(
            (oracle_mean - analytic).abs() < 4.0 * oracle_stderr,
            "oracle sanity: {oracle_mean} vs {analytic} +- {oracle_stderr:.2e}"
        );

        // disintegrated side: polar chamber quadrature x Haar MC batches
        let rs = build_root_system(RootFamily::A2, 2).unwrap();
        let gl_rad = GaussLegendre::new(24);
        let gl_ang = GaussLegendre::new(16);
        let (r_nodes, r_weights) = gl_rad.mapped(1e-6, 8.0);
        let (t_nodes, t_weights) = gl_ang.mapped(PI / 6.0, PI / 2.0);
        let n_batches = 8;
        let mut batch_totals = vec![Vec::new(); n_batches];
        for (b, totals) in batch_totals.iter_mut().enumerate() {
            let scheme = QuadratureScheme::haar_mc(1500, 9000 + b as u64);
            for (&rad, &wr) in r_nodes.iter().zip(&r_weights) {
                for (&ang, &wt) in t_nodes.iter().zip(&t_weights) {
                    let coords = vec![rad * ang.cos(), rad * ang.sin()];
                    if !rs.is_dominant(&coords) {
                        continue;
                    }
                    let fw = rs.weight(coords.clone());
                    let orbit = make_orbit(CatalogGroup::Su3, &fw).unwrap();
                    let (oi, _) = liouville_integral(
                        &orbit,
                        |p| Complex64::new(f(p), 0.0),
                        &scheme,
                    )
                    .unwrap();
                    totals.push(wr * wt * rad * density.eval(&coords) * oi.re);
                }
            }
        }
        let batch_means: Vec<f64> = batch_totals.iter().map(|t| pairwise_sum(t)).collect();
        let mean = pairwise_sum(&batch_means) / n_batches as f64;
        let var = batch_means
            .iter()
            .map(|m| (m - mean).powi(2))
            .sum::<f64>()
            / (n_batches as f64 - 1.0);
        let stderr = (var / n_batches as f64).sqrt();
        let combined = (stderr.powi(2) + oracle_stderr.powi(2)).sqrt().max(1e-4);
        assert!(
            (mean - oracle_mean).abs() < 3.0 * combined,
            "disintegrated {mean} vs oracle {oracle_mean}, 3 sigma = {:.3e}",
            3.0 * combined
        );
    }

    #[test]
    fn mc_variance_overflow_is_reported() {
        let rs = build_root_system(RootFamily::A2, 2).unwrap();
        let orbit = su3_orbit(rs.rho.iter().map(|v| v * 3.0).collect());
        let mut scheme = QuadratureScheme::haar_mc(1000, 5);
        scheme.requested_tol = Some(1e-12);
        let r = liouville_integral(
            &orbit,
            |p| Complex64::new(p[0], 0.0),
            &scheme,
        );
        assert!(matches!(r, Err(Error::McVarianceOverflow { .. })));
    }
}
