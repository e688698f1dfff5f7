//! Weyl character formula, dimension checks, and the Kirillov factors
//! J_g and J^{1/2} computed by two independent routes.
//!
//! The rho-shift is owned here: orbit comparisons always go through
//! lambda = m + rho, so the identity J^{1/2}(X) Tr T_lambda(e^X) = F_{M_lambda}(X)
//! holds verbatim with the orbit module's Fourier transform.

use crate::error::{Error, Result};
use crate::lie::{CartanElement, MatrixAlgebra, RootSystem};
use crate::linalg::CMat;
use num_complex::Complex64;

/// Dominant integral highest weight with its rho-shift.
#[derive(Debug, Clone)]
pub struct HighestWeight {
    /// Dynkin labels <m, alpha_i^vee>.
    pub labels: Vec<u32>,
    /// m as a covector in orthonormal coordinates.
    pub coords: Vec<f64>,
    /// lambda = m + rho, always regular.
    pub shifted: Vec<f64>,
}

impl HighestWeight {
    pub fn from_labels(rs: &RootSystem, labels: &[u32]) -> Result<Self> {
        if labels.len() != rs.rank {
            return Err(Error::RankMismatch {
                expected: rs.rank,
                got: labels.len(),
            });
        }
        let fw = rs.fundamental_weights();
        let mut coords = vec![0.0; rs.rank];
        for (mi, w) in labels.iter().zip(&fw) {
            for (c, wc) in coords.iter_mut().zip(w) {
                *c += f64::from(*mi) * wc;
            }
        }
        let shifted: Vec<f64> = coords.iter().zip(&rs.rho).map(|(a, b)| a + b).collect();
        Ok(HighestWeight {
            labels: labels.to_vec(),
            coords,
            shifted,
        })
    }
}

/// Character value at a regular Cartan element.
#[derive(Debug, Clone)]
pub struct CharacterValue {
    pub value: Complex64,
    pub at: CartanElement,
    pub hw: HighestWeight,
}

/// Weyl character formula,
/// Tr T_lambda(e^X) = sum_w eps(w) e^{i<w lambda, X>} / prod_alpha (e^{i<alpha,X>/2} - e^{-i<alpha,X>/2}).
pub fn weyl_character(
    rs: &RootSystem,
    hw: &HighestWeight,
    x: &CartanElement,
) -> Result<CharacterValue> {
    rs.assert_regular(x)?;
    let mut numerator = Complex64::new(0.0, 0.0);
    for w in &rs.weyl_elements {
        let wl = w.apply(&hw.shifted);
        let phase: f64 = wl.iter().zip(&x.coords).map(|(a, b)| a * b).sum();
        numerator += Complex64::new(0.0, phase).exp() * f64::from(w.sign);
    }
    let mut denominator = Complex64::new(1.0, 0.0);
    for alpha in &rs.positive_roots {
        let a = rs.pair_root(alpha, x);
        denominator *= Complex64::new(0.0, 2.0 * (a / 2.0).sin());
    }
    Ok(CharacterValue {
        value: numerator / denominator,
        at: x.clone(),
        hw: hw.clone(),
    })
}

/// Irreducible dimension as the X -> 0 limit of the character along
/// X = t * rho-dual, Richardson-extrapolated over a geometric ladder and
/// rounded; errors if the extrapolated value is not within 1e-6 of an
/// integer.
pub fn weyl_dimension(rs: &RootSystem, hw: &HighestWeight) -> Result<u64> {
    let ladder = [0.1, 0.05, 0.025, 0.0125];
    let rho_dir = CartanElement::new(rs.rho.clone());
    let mut values: Vec<f64> = Vec::with_capacity(ladder.len());
    for &t in &ladder {
        let xt = CartanElement::new(rho_dir.coords.iter().map(|c| c * t).collect());
        let ch = weyl_character(rs, hw, &xt)?;
        if ch.value.im.abs() > 1e-8 {
            return Err(Error::ExtrapolationFailure(format!(
                "character along rho-axis not real: im = {:.3e}",
                ch.value.im
            )));
        }
        values.push(ch.value.re);
    }
    // the character is even in t, so halving t divides the error by 4 per
    // extrapolation level
    let mut level = values;
    let mut factor = 4.0;
    while level.len() > 1 {
        level = level
            .windows(2)
            .map(|w| (factor * w[1] - w[0]) / (factor - 1.0))
            .collect();
        factor *= 4.0;
    }
    let est = level[0];
    let rounded = est.round();
    if (est - rounded).abs() > 1e-6 || rounded < 1.0 {
        return Err(Error::ExtrapolationFailure(format!(
            "dimension limit {est} not within 1e-6 of a positive integer"
        )));
    }
    Ok(rounded as u64)
}

/// J_g(X) = det(sinh(ad X/2) / (ad X/2)) from the spectrum of ad X.
///
/// The nonzero eigenvalues come in pairs +-i a, so the determinant is a
/// product of sin(a/2)/(a/2) over the spectrum of -(ad X)^2 with
/// multiplicity; zero modes contribute 1.
pub fn j_factor_matrix(alg: &MatrixAlgebra, x: &CMat) -> Result<f64> {
    let ad = alg.ad_matrix(x)?;
    let d = alg.dim;
    let mut m2 = vec![vec![0.0; d]; d];
    for i in 0..d {
        for j in 0..d {
            let mut acc = 0.0;
            for k in 0..d {
                acc -= ad[i][k] * ad[k][j];
            }
            m2[i][j] = acc;
        }
    }
    let (vals, _) = crate::linalg::symmetric_eigen(&m2);
    let mut prod = 1.0;
    for v in vals {
        if v > 1e-13 {
            let a = v.sqrt();
            prod *= sinc_half(a);
        }
    }
    Ok(prod)
}

/// sin(a/2)/(a/2) with the removable singularity at 0.
fn sinc_half(a: f64) -> f64 {
    let h = a / 2.0;
    if h.abs() < 1e-8 {
        1.0 - h * h / 6.0
    } else {
        h.sin() / h
    }
}

/// J^{1/2}_g(X) = prod_{alpha in P} sin(<alpha,X>/2) / (<alpha,X>/2),
/// the positive-root square root of J under the real-covector convention.
pub fn j_half(rs: &RootSystem, x: &CartanElement) -> f64 {
    rs.positive_roots
        .iter()
        .map(|alpha| sinc_half(rs.pair_root(alpha, x)))
        .product()
}

/// J^{1/2}(X) * Tr T_{m+rho}(e^X), the left side of the Kirillov identity.
pub fn kirillov_lhs(rs: &RootSystem, hw: &HighestWeight, x: &CartanElement) -> Result<Complex64> {
    let ch = weyl_character(rs, hw, x)?;
    Ok(ch.value * j_half(rs, x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{build_root_system, CatalogGroup, RootFamily};
    use rand::{Rng, SeedableRng};

    fn su2_x(theta: f64) -> CartanElement {
        CartanElement::new(vec![std::f64::consts::SQRT_2 * theta])
    }

    /// Trace of the explicit (m+1)-dimensional su(2) representation at
    /// X = theta diag(i, -i): sum of e^{i(m-2k)theta}.
    fn su2_trace_oracle(m: u32, theta: f64) -> Complex64 {
        (0..=m)
            .map(|k| Complex64::new(0.0, (f64::from(m) - 2.0 * f64::from(k)) * theta).exp())
            .sum()
    }

    /// Diagonal phases of the su(3) Cartan matrix with coordinates (x3, x8).
    fn su3_phases(x: &CartanElement) -> [f64; 3] {
        let s2 = std::f64::consts::SQRT_2;
        let s3 = (3.0f64).sqrt();
        let (x3, x8) = (x.coords[0], x.coords[1]);
        [
            (x3 + x8 / s3) / s2,
            (-x3 + x8 / s3) / s2,
            -2.0 * x8 / (s3 * s2),
        ]
    }

    #[test]
    fn su2_fundamental_at_pi_third() {
        let rs = build_root_system(RootFamily::A1, 1).unwrap();
        let hw = HighestWeight::from_labels(&rs, &[1]).unwrap();
        let ch = weyl_character(&rs, &hw, &su2_x(std::f64::consts::PI / 3.0)).unwrap();
        assert!((ch.value.re - 1.0).abs() < 1e-12);
        assert!(ch.value.im.abs() < 1e-12);
    }

    #[test]
    fn trivial_rep_is_one() {
        for f in [RootFamily::A1, RootFamily::A2, RootFamily::B2, RootFamily::G2] {
            let rs = build_root_system(f, f.rank()).unwrap();
            let hw = HighestWeight::from_labels(&rs, &vec![0; rs.rank]).unwrap();
            let x = CartanElement::new(rs.rho.iter().map(|c| c * 0.37).collect());
            let ch = weyl_character(&rs, &hw, &x).unwrap();
            assert!((ch.value.re - 1.0).abs() < 1e-10, "{f:?}");
            assert!(ch.value.im.abs() < 1e-10);
        }
    }

    #[test]
    fn su2_matches_trace_oracle() {
        let rs = build_root_system(RootFamily::A1, 1).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for m in 0..6u32 {
            let hw = HighestWeight::from_labels(&rs, &[m]).unwrap();
            for _ in 0..20 {
                let theta = rng.gen_range(0.05..1.4);
                let ch = weyl_character(&rs, &hw, &su2_x(theta)).unwrap();
                let oracle = su2_trace_oracle(m, theta);
                assert!((ch.value - oracle).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn su3_fundamental_matches_matrix_exponential_trace() {
        let rs = build_root_system(RootFamily::A2, 2).unwrap();
        let hw = HighestWeight::from_labels(&rs, &[1, 0]).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for _ in 0..50 {
            let x = CartanElement::new(vec![rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5)]);
            if !rs.is_regular(&x) {
                continue;
            }
            let ch = weyl_character(&rs, &hw, &x).unwrap();
            let oracle: Complex64 = su3_phases(&x)
                .iter()
                .map(|&d| Complex64::new(0.0, d).exp())
                .sum();
            assert!((ch.value - oracle).norm() < 1e-10);
        }
    }

    #[test]
    fn su3_adjoint_matches_root_weights() {
        // adjoint weights are the roots plus a double zero
        let rs = build_root_system(RootFamily::A2, 2).unwrap();
        let hw = HighestWeight::from_labels(&rs, &[1, 1]).unwrap();
        let x = CartanElement::new(vec![0.31, 0.73]);
        let ch = weyl_character(&rs, &hw, &x).unwrap();
        let mut oracle = Complex64::new(2.0, 0.0);
        for r in &rs.all_roots {
            oracle += Complex64::new(0.0, rs.pair_root(r, &x)).exp();
        }
        assert!((ch.value - oracle).norm() < 1e-9);
    }

    #[test]
    fn non_regular_point_is_rejected() {
        let rs = build_root_system(RootFamily::A1, 1).unwrap();
        let hw = HighestWeight::from_labels(&rs, &[2]).unwrap();
        let err = weyl_character(&rs, &hw, &CartanElement::new(vec![0.0]));
        assert!(matches!(err, Err(Error::NonRegularPoint { .. })));
    }

    #[test]
    fn dimensions() {
        let a1 = build_root_system(RootFamily::A1, 1).unwrap();
        for m in 0..8u32 {
            let hw = HighestWeight::from_labels(&a1, &[m]).unwrap();
            assert_eq!(weyl_dimension(&a1, &hw).unwrap(), u64::from(m) + 1);
        }
        let a2 = build_root_system(RootFamily::A2, 2).unwrap();
        let adj = HighestWeight::from_labels(&a2, &[1, 1]).unwrap();
        assert_eq!(weyl_dimension(&a2, &adj).unwrap(), 8);
        let fund = HighestWeight::from_labels(&a2, &[1, 0]).unwrap();
        assert_eq!(weyl_dimension(&a2, &fund).unwrap(), 3);
        let triv = HighestWeight::from_labels(&a2, &[0, 0]).unwrap();
        assert_eq!(weyl_dimension(&a2, &triv).unwrap(), 1);
        // Weyl dimension formula as an independent cross-check for su(3)
        for m1 in 0..4u32 {
            for m2 in 0..4u32 {
                let hw = HighestWeight::from_labels(&a2, &[m1, m2]).unwrap();
                let (p, q) = (f64::from(m1), f64::from(m2));
                let expect = ((p + 1.0) * (q + 1.0) * (p + q + 2.0) / 2.0).round() as u64;
                assert_eq!(weyl_dimension(&a2, &hw).unwrap(), expect);
            }
        }
    }

    #[test]
    fn j_half_su2_is_sinc() {
        let rs = build_root_system(RootFamily::A1, 1).unwrap();
        for theta in [0.0, 0.2, 0.9, 1.7] {
            let v = j_half(&rs, &su2_x(theta));
            let expect = if theta == 0.0 { 1.0 } else { theta.sin() / theta };
            assert!((v - expect).abs() < 1e-12);
        }
    }

    #[test]
    fn j_factor_at_zero_is_one() {
        for g in [CatalogGroup::U1, CatalogGroup::Su2, CatalogGroup::Su3] {
            let alg = MatrixAlgebra::new(g);
            let zero = crate::linalg::cmat_zero(alg.matrix_size);
            assert!((j_factor_matrix(&alg, &zero).unwrap() - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn j_factor_su2_closed_form() {
        let alg = MatrixAlgebra::new(CatalogGroup::Su2);
        let theta = 0.83;
        let mut x = crate::linalg::cmat_zero(2);
        x[0][0] = Complex64::new(0.0, theta);
        x[1][1] = Complex64::new(0.0, -theta);
        let v = j_factor_matrix(&alg, &x).unwrap();
        let expect = (theta.sin() / theta).powi(2);
        assert!((v - expect).abs() < 1e-12);
    }

    #[test]
    fn j_double_route_agreement() {
        // 100 random X per algebra: |j_half(X_t)^2 - J_matrix(X)| < 1e-10
        for g in [CatalogGroup::Su2, CatalogGroup::Su3] {
            let alg = MatrixAlgebra::new(g);
            let rs = alg.root_system();
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
            for _ in 0..100 {
                let x = alg.random_element(&mut rng, 0.7);
                let xt = alg.cartan_representative(&x).unwrap();
                let via_matrix = j_factor_matrix(&alg, &x).unwrap();
                let via_roots = j_half(&rs, &xt).powi(2);
                assert!(
                    (via_matrix - via_roots).abs() < 1e-10,
                    "{g:?}: {via_matrix} vs {via_roots}"
                );
            }
        }
    }

    #[test]
    fn character_weyl_invariance_and_conjugation() {
        let rs = build_root_system(RootFamily::A2, 2).unwrap();
        let hw = HighestWeight::from_labels(&rs, &[2, 1]).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(41);
        for _ in 0..25 {
            let x = CartanElement::new(vec![rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)]);
            if !rs.is_regular(&x) {
                continue;
            }
            let base = weyl_character(&rs, &hw, &x).unwrap().value;
            for w in &rs.weyl_elements {
                let wx = CartanElement::new(w.apply(&x.coords));
                let v = weyl_character(&rs, &hw, &wx).unwrap().value;
                assert!((v - base).norm() < 1e-10);
            }
            let neg = CartanElement::new(x.coords.iter().map(|c| -c).collect());
            let vneg = weyl_character(&rs, &hw, &neg).unwrap().value;
            assert!((vneg - base.conj()).norm() < 1e-10);
        }
    }

    #[test]
    fn self_conjugate_characters_are_real() {
        // su(2) all m, su(3) with m1 = m2
        let a1 = build_root_system(RootFamily::A1, 1).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(53);
        for m in 0..5u32 {
            let hw = HighestWeight::from_labels(&a1, &[m]).unwrap();
            for _ in 0..10 {
                let x = su2_x(rng.gen_range(0.05..1.5));
                let v = weyl_character(&a1, &hw, &x).unwrap().value;
                assert!(v.im.abs() < 1e-9);
            }
        }
        let a2 = build_root_system(RootFamily::A2, 2).unwrap();
        for m in 1..3u32 {
            let hw = HighestWeight::from_labels(&a2, &[m, m]).unwrap();
            for _ in 0..10 {
                let x = CartanElement::new(vec![rng.gen_range(0.1..1.0), rng.gen_range(0.1..1.0)]);
                if !a2.is_regular(&x) {
                    continue;
                }
                let v = weyl_character(&a2, &hw, &x).unwrap().value;
                assert!(v.im.abs() < 1e-9);
            }
        }
    }
}
