//! Root-system combinatorics for the rank-1 and rank-2 catalog families.

use crate::error::{Error, Result};
use serde::Serialize;

/// |<alpha, X>| above this declares the pairing nonzero; borderline inputs
/// are rejected, never silently perturbed.
pub const REGULARITY_TOL: f64 = 1e-8;

const MATRIX_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RootFamily {
    A1,
    A2,
    B2,
    G2,
}

impl RootFamily {
    pub fn rank(self) -> usize {
        match self {
            RootFamily::A1 => 1,
            _ => 2,
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "a1" => Ok(RootFamily::A1),
            "a2" => Ok(RootFamily::A2),
            "b2" => Ok(RootFamily::B2),
            "g2" => Ok(RootFamily::G2),
            other => Err(Error::UnsupportedFamily(other.to_string())),
        }
    }
}

/// Element of the Weyl group as an orthogonal matrix on t* with its sign
/// and a reduced word in simple reflections.
#[derive(Debug, Clone, Serialize)]
pub struct WeylElement {
    pub matrix: Vec<Vec<f64>>,
    pub sign: i32,
    pub word: Vec<usize>,
}

impl WeylElement {
    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        self.matrix
            .iter()
            .map(|row| row.iter().zip(v).map(|(m, x)| m * x).sum())
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }
}

/// Point of the real Cartan subalgebra in orthonormal coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct CartanElement {
    pub coords: Vec<f64>,
}

impl CartanElement {
    pub fn new(coords: Vec<f64>) -> Self {
        CartanElement { coords }
    }
}

/// Covector on t in the same orthonormal coordinates.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Weight {
    pub coords: Vec<f64>,
    /// Whether lambda - rho lies in the weight lattice (integral pairings
    /// with all simple coroots within 1e-9).
    pub lattice_flag: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct RootSystem {
    pub family: RootFamily,
    pub rank: usize,
    pub simple_roots: Vec<Vec<f64>>,
    pub positive_roots: Vec<Vec<f64>>,
    pub all_roots: Vec<Vec<f64>>,
    pub rho: Vec<f64>,
    pub weyl_elements: Vec<WeylElement>,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn reflect(v: &[f64], alpha: &[f64]) -> Vec<f64> {
    let c = 2.0 * dot(v, alpha) / dot(alpha, alpha);
    v.iter().zip(alpha).map(|(x, a)| x - c * a).collect()
}

fn simple_roots_for(family: RootFamily) -> Vec<Vec<f64>> {
    let s2 = std::f64::consts::SQRT_2;
    match family {
        // single root of length sqrt(2), matching the ad-spectrum of the
        // su(2) catalog under <A,B> = -tr(AB)
        RootFamily::A1 => vec![vec![s2]],
        RootFamily::A2 => vec![vec![s2, 0.0], vec![-s2 / 2.0, (6.0f64).sqrt() / 2.0]],
        RootFamily::B2 => vec![vec![1.0, -1.0], vec![0.0, 1.0]],
        RootFamily::G2 => vec![vec![1.0, 0.0], vec![-1.5, (3.0f64).sqrt() / 2.0]],
    }
}

/// Constructs the full root system: roots by reflection closure from the
/// simple roots, positivity by simple-root coordinates, Weyl group by
/// breadth-first closure of simple reflections.
pub fn build_root_system(family: RootFamily, rank: usize) -> Result<RootSystem> {
    if rank != family.rank() {
        return Err(Error::UnsupportedFamily(format!(
            "{family:?} has rank {}, got {rank}",
            family.rank()
        )));
    }
    let simple = simple_roots_for(family);

    // close {simple roots} under simple reflections
    let mut roots: Vec<Vec<f64>> = simple.clone();
    loop {
        let mut added = false;
        let current = roots.clone();
        for r in &current {
            for s in &simple {
                let image = reflect(r, s);
                if !roots
                    .iter()
                    .any(|q| q.iter().zip(&image).all(|(a, b)| (a - b).abs() < MATRIX_TOL))
                {
                    roots.push(image);
                    added = true;
                }
            }
        }
        if !added {
            break;
        }
    }

    let mut positive: Vec<Vec<f64>> = Vec::new();
    for r in &roots {
        let coeffs = simple_coordinates(&simple, r);
        let all_nonneg = coeffs.iter().all(|&c| c > -MATRIX_TOL);
        let all_nonpos = coeffs.iter().all(|&c| c < MATRIX_TOL);
        debug_assert!(all_nonneg || all_nonpos, "root not signed: {r:?}");
        if all_nonneg {
            positive.push(r.clone());
        }
    }
    positive.sort_by(|a, b| a.partial_cmp(b).unwrap());

    let rho: Vec<f64> = (0..rank)
        .map(|i| positive.iter().map(|r| r[i]).sum::<f64>() / 2.0)
        .collect();

    let weyl_elements = enumerate_weyl(&simple, rank);

    Ok(RootSystem {
        family,
        rank,
        simple_roots: simple,
        positive_roots: positive,
        all_roots: roots,
        rho,
        weyl_elements,
    })
}

/// Coordinates of a vector in the simple-root basis.
fn simple_coordinates(simple: &[Vec<f64>], v: &[f64]) -> Vec<f64> {
    match simple.len() {
        1 => vec![dot(v, &simple[0]) / dot(&simple[0], &simple[0])],
        2 => {
            let (a, b) = (&simple[0], &simple[1]);
            let det = a[0] * b[1] - a[1] * b[0];
            vec![
                (v[0] * b[1] - v[1] * b[0]) / det,
                (a[0] * v[1] - a[1] * v[0]) / det,
            ]
        }
        _ => unreachable!(),
    }
}

fn mat_mul(a: &[Vec<f64>], b: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = a.len();
    let mut c = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                c[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    c
}

fn mat_det(a: &[Vec<f64>]) -> f64 {
    match a.len() {
        1 => a[0][0],
        2 => a[0][0] * a[1][1] - a[0][1] * a[1][0],
        _ => unreachable!(),
    }
}

fn mat_close(a: &[Vec<f64>], b: &[Vec<f64>]) -> bool {
    a.iter()
        .zip(b)
        .all(|(ra, rb)| ra.iter().zip(rb).all(|(x, y)| (x - y).abs() < MATRIX_TOL))
}

fn reflection_matrix(alpha: &[f64], rank: usize) -> Vec<Vec<f64>> {
    let n2 = dot(alpha, alpha);
    let mut m = vec![vec![0.0; rank]; rank];
    for i in 0..rank {
        for j in 0..rank {
            m[i][j] = if i == j { 1.0 } else { 0.0 };
            m[i][j] -= 2.0 * alpha[i] * alpha[j] / n2;
        }
    }
    m
}

/// Breadth-first closure of simple reflections; canonical ordering by
/// (word length, lexicographic word) for deterministic output.
fn enumerate_weyl(simple: &[Vec<f64>], rank: usize) -> Vec<WeylElement> {
    let gens: Vec<Vec<Vec<f64>>> = simple.iter().map(|a| reflection_matrix(a, rank)).collect();
    let ident: Vec<Vec<f64>> = (0..rank)
        .map(|i| (0..rank).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    let mut elements: Vec<WeylElement> = vec![WeylElement {
        matrix: ident,
        sign: 1,
        word: vec![],
    }];
    let mut frontier = elements.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for w in &frontier {
            for (gi, g) in gens.iter().enumerate() {
                let m = mat_mul(&w.matrix, g);
                if !elements.iter().any(|e| mat_close(&e.matrix, &m)) {
                    let mut word = w.word.clone();
                    word.push(gi);
                    let e = WeylElement {
                        sign: if mat_det(&m) > 0.0 { 1 } else { -1 },
                        matrix: m,
                        word,
                    };
                    elements.push(e.clone());
                    next.push(e);
                }
            }
        }
        frontier = next;
    }
    elements.sort_by(|a, b| (a.word.len(), &a.word).cmp(&(b.word.len(), &b.word)));
    elements
}

/// Complete Weyl group of the root system.
pub fn weyl_group(rs: &RootSystem) -> Vec<WeylElement> {
    rs.weyl_elements.clone()
}

/// Bilinear pairing between a covector and a Cartan element: the literal
/// dot product in the shared orthonormal coordinates.
pub fn pairing(lambda: &Weight, x: &CartanElement) -> Result<f64> {
    if lambda.coords.len() != x.coords.len() {
        return Err(Error::RankMismatch {
            expected: lambda.coords.len(),
            got: x.coords.len(),
        });
    }
    Ok(dot(&lambda.coords, &x.coords))
}

/// W_lambda = { w : w lambda = lambda within 1e-10 }.
pub fn stabilizer_subgroup(rs: &RootSystem, lambda: &Weight) -> Vec<WeylElement> {
    rs.weyl_elements
        .iter()
        .filter(|w| {
            w.apply(&lambda.coords)
                .iter()
                .zip(&lambda.coords)
                .all(|(a, b)| (a - b).abs() < 1e-10)
        })
        .cloned()
        .collect()
}

impl RootSystem {
    pub fn pair_root(&self, alpha: &[f64], x: &CartanElement) -> f64 {
        dot(alpha, &x.coords)
    }

    /// X regular iff <alpha, X> != 0 for all roots, within tolerance.
    pub fn is_regular(&self, x: &CartanElement) -> bool {
        self.all_roots
            .iter()
            .all(|a| dot(a, &x.coords).abs() > REGULARITY_TOL)
    }

    pub fn assert_regular(&self, x: &CartanElement) -> Result<()> {
        for a in &self.all_roots {
            let v = dot(a, &x.coords);
            if v.abs() <= REGULARITY_TOL {
                return Err(Error::NonRegularPoint {
                    root: a.clone(),
                    value: v,
                });
            }
        }
        Ok(())
    }

    /// Coroot 2 alpha / <alpha, alpha> in the self-dual coordinates.
    pub fn coroot(&self, alpha: &[f64]) -> Vec<f64> {
        let n2 = dot(alpha, alpha);
        alpha.iter().map(|a| 2.0 * a / n2).collect()
    }

    /// Fundamental weights: <omega_i, coroot(alpha_j)> = delta_ij.
    pub fn fundamental_weights(&self) -> Vec<Vec<f64>> {
        let coroots: Vec<Vec<f64>> = self.simple_roots.iter().map(|a| self.coroot(a)).collect();
        match self.rank {
            1 => vec![vec![1.0 / coroots[0][0]]],
            2 => {
                let det = coroots[0][0] * coroots[1][1] - coroots[0][1] * coroots[1][0];
                vec![
                    vec![coroots[1][1] / det, -coroots[1][0] / det],
                    vec![-coroots[0][1] / det, coroots[0][0] / det],
                ]
            }
            _ => unreachable!(),
        }
    }

    /// Weight from covector coordinates; the lattice flag records whether
    /// lambda - rho has integral pairings with all simple coroots.
    pub fn weight(&self, coords: Vec<f64>) -> Weight {
        let lattice_flag = self.simple_roots.iter().all(|a| {
            let c = self.coroot(a);
            let p = dot(&coords, &c) - dot(&self.rho, &c);
            (p - p.round()).abs() < 1e-9
        });
        Weight {
            coords,
            lattice_flag,
        }
    }

    /// Dominant: nonnegative pairing with every simple root.
    pub fn is_dominant(&self, coords: &[f64]) -> bool {
        self.simple_roots
            .iter()
            .all(|a| dot(a, coords) > -REGULARITY_TOL)
    }

    /// Rank-1 system with no roots and trivial Weyl group, used for tori.
    pub fn torus(rank: usize) -> RootSystem {
        let ident: Vec<Vec<f64>> = (0..rank)
            .map(|i| (0..rank).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
            .collect();
        RootSystem {
            family: RootFamily::A1, // placeholder; no roots are stored
            rank,
            simple_roots: vec![],
            positive_roots: vec![],
            all_roots: vec![],
            rho: vec![0.0; rank],
            weyl_elements: vec![WeylElement {
                matrix: ident,
                sign: 1,
                word: vec![],
            }],
        }
    }
}
