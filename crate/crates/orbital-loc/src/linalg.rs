//! Small dense linear algebra for the catalog groups.
//!
//! Everything here operates on matrices of dimension at most 64 (Golub-Welsch
//! tridiagonals) and usually 2, 3 or 8. No external solver is used; the
//! routines below are deterministic and allocation-light.

use num_complex::Complex64;

pub type CMat = Vec<Vec<Complex64>>;

/// Cyclic Jacobi eigen-decomposition of a real symmetric matrix.
///
/// Returns `(eigenvalues, eigenvectors)` with eigenvectors stored as columns,
/// sorted by ascending eigenvalue.
pub fn symmetric_eigen(a: &[Vec<f64>]) -> (Vec<f64>, Vec<Vec<f64>>) {
    let n = a.len();
    let mut m: Vec<Vec<f64>> = a.to_vec();
    let mut v = vec![vec![0.0; n]; n];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    let max_sweeps = 64;
    for _ in 0..max_sweeps {
        let mut off = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                off += m[i][j] * m[i][j];
            }
        }
        if off.sqrt() < 1e-14 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                if m[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (m[q][q] - m[p][p]) / (2.0 * m[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let mkp = m[k][p];
                    let mkq = m[k][q];
                    m[k][p] = c * mkp - s * mkq;
                    m[k][q] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let mpk = m[p][k];
                    let mqk = m[q][k];
                    m[p][k] = c * mpk - s * mqk;
                    m[q][k] = s * mpk + c * mqk;
                }
                for k in 0..n {
                    let vkp = v[k][p];
                    let vkq = v[k][q];
                    v[k][p] = c * vkp - s * vkq;
                    v[k][q] = s * vkp + c * vkq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[i][i].partial_cmp(&m[j][j]).unwrap());
    let values: Vec<f64> = order.iter().map(|&i| m[i][i]).collect();
    let mut vectors = vec![vec![0.0; n]; n];
    for (newcol, &oldcol) in order.iter().enumerate() {
        for r in 0..n {
            vectors[r][newcol] = v[r][oldcol];
        }
    }
    (values, vectors)
}

/// Eigenvalues of a 2x2 or 3x3 complex Hermitian matrix, ascending.
///
/// The 3x3 case uses the trigonometric solution of the characteristic cubic,
/// which is stable for Hermitian input.
pub fn hermitian_eigenvalues(a: &CMat) -> Vec<f64> {
    let n = a.len();
    match n {
        1 => vec![a[0][0].re],
        2 => {
            let tr = a[0][0].re + a[1][1].re;
            let det = a[0][0].re * a[1][1].re - a[0][1].norm_sqr();
            let disc = (tr * tr / 4.0 - det).max(0.0).sqrt();
            vec![tr / 2.0 - disc, tr / 2.0 + disc]
        }
        3 => {
            let p1 = a[0][1].norm_sqr() + a[0][2].norm_sqr() + a[1][2].norm_sqr();
            let q = (a[0][0].re + a[1][1].re + a[2][2].re) / 3.0;
            if p1 < 1e-30 {
                let mut d = vec![a[0][0].re, a[1][1].re, a[2][2].re];
                d.sort_by(|x, y| x.partial_cmp(y).unwrap());
                return d;
            }
            let p2 = (a[0][0].re - q).powi(2)
                + (a[1][1].re - q).powi(2)
                + (a[2][2].re - q).powi(2)
                + 2.0 * p1;
            let p = (p2 / 6.0).sqrt();
            let mut b = a.clone();
            for (i, row) in b.iter_mut().enumerate() {
                row[i] -= Complex64::new(q, 0.0);
                for x in row.iter_mut() {
                    *x /= Complex64::new(p, 0.0);
                }
            }
            let det_b = det3(&b).re;
            let r = (det_b / 2.0).clamp(-1.0, 1.0);
            let phi = r.acos() / 3.0;
            let e1 = q + 2.0 * p * (phi).cos();
            let e3 = q + 2.0 * p * (phi + 2.0 * std::f64::consts::PI / 3.0).cos();
            let e2 = 3.0 * q - e1 - e3;
            let mut d = vec![e1, e2, e3];
            d.sort_by(|x, y| x.partial_cmp(y).unwrap());
            d
        }
        _ => panic!("hermitian_eigenvalues supports n <= 3, got {n}"),
    }
}

fn det3(a: &CMat) -> Complex64 {
    a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
        - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
}

pub fn cmat_zero(n: usize) -> CMat {
    vec![vec![Complex64::new(0.0, 0.0); n]; n]
}

pub fn cmat_mul(a: &CMat, b: &CMat) -> CMat {
    let n = a.len();
    let mut c = cmat_zero(n);
    for i in 0..n {
        for k in 0..n {
            let aik = a[i][k];
            if aik.norm_sqr() == 0.0 {
                continue;
            }
            for j in 0..n {
                c[i][j] += aik * b[k][j];
            }
        }
    }
    c
}

pub fn cmat_adjoint(a: &CMat) -> CMat {
    let n = a.len();
    let mut c = cmat_zero(n);
    for i in 0..n {
        for j in 0..n {
            c[i][j] = a[j][i].conj();
        }
    }
    c
}

pub fn cmat_add_scaled(a: &CMat, b: &CMat, s: Complex64) -> CMat {
    let n = a.len();
    let mut c = a.clone();
    for i in 0..n {
        for j in 0..n {
            c[i][j] += s * b[i][j];
        }
    }
    c
}

pub fn cmat_commutator(a: &CMat, b: &CMat) -> CMat {
    let ab = cmat_mul(a, b);
    let ba = cmat_mul(b, a);
    cmat_add_scaled(&ab, &ba, Complex64::new(-1.0, 0.0))
}

/// -tr(AB), the invariant pairing used throughout: real for anti-Hermitian
/// A, B in the same algebra.
pub fn minus_trace_product(a: &CMat, b: &CMat) -> f64 {
    let n = a.len();
    let mut t = Complex64::new(0.0, 0.0);
    for i in 0..n {
        for k in 0..n {
            t += a[i][k] * b[k][i];
        }
    }
    -t.re
}

/// Unitary factor of the QR decomposition of a square complex matrix, with
/// the R diagonal phase fixed so the factorization is unique. Used for Haar
/// sampling of unitaries from complex Ginibre matrices.
pub fn qr_unitary(a: &CMat) -> CMat {
    let n = a.len();
    // columns of a
    let mut cols: Vec<Vec<Complex64>> = (0..n).map(|j| (0..n).map(|i| a[i][j]).collect()).collect();
    let mut rdiag = vec![Complex64::new(0.0, 0.0); n];
    for j in 0..n {
        // modified Gram-Schmidt with one re-orthogonalization pass
        for _ in 0..2 {
            for k in 0..j {
                let mut proj = Complex64::new(0.0, 0.0);
                for i in 0..n {
                    proj += cols[k][i].conj() * cols[j][i];
                }
                for i in 0..n {
                    let correction = proj * cols[k][i];
                    cols[j][i] -= correction;
                }
            }
        }
        let norm: f64 = cols[j].iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        rdiag[j] = Complex64::new(norm, 0.0);
        for i in 0..n {
            cols[j][i] /= norm;
        }
    }
    // sign-fix: multiply column j by phase of the original projection so the
    // effective R has positive real diagonal
    let mut q = cmat_zero(n);
    for j in 0..n {
        // phase of <q_j, a_j>
        let mut d = Complex64::new(0.0, 0.0);
        for i in 0..n {
            d += cols[j][i].conj() * a[i][j];
        }
        let phase = d / d.norm();
        for i in 0..n {
            q[i][j] = cols[j][i] * phase.conj();
        }
    }
    q
}
