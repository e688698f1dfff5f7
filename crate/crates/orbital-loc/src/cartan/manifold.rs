//! Catalog manifolds, torus actions and moment data.
//!
//! Charts are global up to measure zero (cylindrical coordinates on
//! spheres, action-angle coordinates on the disk), which is all the
//! quadrature and pointwise sampling need.

use super::forms::{Form, VectorField};
use super::scalar::ScalarField;
use crate::error::{Error, Result};
use crate::quad::{pairwise_sum, pairwise_sum_c, periodic_nodes, GaussLegendre};
use num_complex::Complex64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ManifoldKind {
    Sphere2 { radius: f64 },
    ProductS2xS2 { r1: f64, r2: f64 },
    Disk2 { radius: f64 },
}

#[derive(Debug, Clone, Copy)]
pub struct CoordSpec {
    pub lo: f64,
    pub hi: f64,
    pub periodic: bool,
}

/// Catalog symplectic manifold in a fixed chart.
pub struct CatalogManifold {
    pub kind: ManifoldKind,
    pub dim: usize,
    pub coords: Vec<CoordSpec>,
    /// Sign relating the canonical chart orientation dx_0 ^ ... ^ dx_{n-1}
    /// to the orientation in which sigma^{n/2} integrates positively.
    pub orientation_sign: f64,
    pub sigma: Form,
    top_index: Vec<u8>,
    pub closed: bool,
}

const TWO_PI: f64 = 2.0 * std::f64::consts::PI;

impl CatalogManifold {
    pub fn sphere2(radius: f64) -> Self {
        let dim = 2;
        let mut sigma = Form::zero(dim);
        // sigma = r dphi ^ dz, oriented so the total area is 4 pi r^2
        sigma.add_term(&[1, 0], ScalarField::constant(dim, radius));
        CatalogManifold {
            kind: ManifoldKind::Sphere2 { radius },
            dim,
            coords: vec![
                CoordSpec { lo: -radius, hi: radius, periodic: false },
                CoordSpec { lo: 0.0, hi: TWO_PI, periodic: true },
            ],
            orientation_sign: -1.0,
            sigma,
            top_index: vec![0, 1],
            closed: true,
        }
    }

    pub fn disk2(radius: f64) -> Self {
        let dim = 2;
        let mut sigma = Form::zero(dim);
        // action-angle chart (u, phi), u = |x|^2/2: sigma = dphi ^ du
        sigma.add_term(&[1, 0], ScalarField::constant(dim, 1.0));
        CatalogManifold {
            kind: ManifoldKind::Disk2 { radius },
            dim,
            coords: vec![
                CoordSpec { lo: 0.0, hi: radius * radius / 2.0, periodic: false },
                CoordSpec { lo: 0.0, hi: TWO_PI, periodic: true },
            ],
            orientation_sign: -1.0,
            sigma,
            top_index: vec![0, 1],
            closed: false,
        }
    }

    pub fn product_s2xs2(r1: f64, r2: f64) -> Self {
        let dim = 4;
        let mut sigma = Form::zero(dim);
        sigma.add_term(&[1, 0], ScalarField::constant(dim, r1));
        sigma.add_term(&[3, 2], ScalarField::constant(dim, r2));
        CatalogManifold {
            kind: ManifoldKind::ProductS2xS2 { r1, r2 },
            dim,
            coords: vec![
                CoordSpec { lo: -r1, hi: r1, periodic: false },
                CoordSpec { lo: 0.0, hi: TWO_PI, periodic: true },
                CoordSpec { lo: -r2, hi: r2, periodic: false },
                CoordSpec { lo: 0.0, hi: TWO_PI, periodic: true },
            ],
            orientation_sign: 1.0,
            sigma,
            top_index: vec![0, 1, 2, 3],
            closed: true,
        }
    }

    /// sigma^{n/2} / (n/2)!, the Liouville volume form.
    pub fn liouville_volume(&self) -> Form {
        let half = self.dim / 2;
        let mut v = self.sigma.clone();
        let mut fact = 1.0;
        for k in 2..=half {
            v = v.wedge(&self.sigma);
            fact *= k as f64;
        }
        v.scale(1.0 / fact)
    }

    fn nodes_at(&self, n_interval: usize, n_periodic: usize) -> (Vec<Vec<f64>>, Vec<f64>) {
        let mut axes_nodes: Vec<Vec<f64>> = Vec::new();
        let mut axes_weights: Vec<Vec<f64>> = Vec::new();
        for c in &self.coords {
            if c.periodic {
                let (nodes, h) = periodic_nodes(n_periodic);
                axes_weights.push(vec![h; nodes.len()]);
                axes_nodes.push(nodes);
            } else {
                let gl = GaussLegendre::new(n_interval);
                let (nodes, weights) = gl.mapped(c.lo, c.hi);
                axes_nodes.push(nodes);
                axes_weights.push(weights);
            }
        }
        let mut points = vec![vec![]];
        let mut weights = vec![1.0];
        for (nodes, ws) in axes_nodes.iter().zip(&axes_weights) {
            let mut np = Vec::with_capacity(points.len() * nodes.len());
            let mut nw = Vec::with_capacity(points.len() * nodes.len());
            for (p, w) in points.iter().zip(&weights) {
                for (x, wx) in nodes.iter().zip(ws) {
                    let mut q = p.clone();
                    q.push(*x);
                    np.push(q);
                    nw.push(w * wx);
                }
            }
            points = np;
            weights = nw;
        }
        (points, weights)
    }

    /// Integral of the top-degree component of `form` against a pointwise
    /// complex weight, by tensor quadrature with panel doubling until two
    /// successive refinements differ by less than `tol`.
    pub fn integrate_top_weighted<W>(&self, form: &Form, weight: W, tol: f64) -> Result<Complex64>
    where
        W: Fn(&[f64]) -> Complex64,
    {
        let coef = form.coefficient(&self.top_index);
        if coef.is_zero() {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let max_nodes = 1usize << 20;
        let mut n_int = 16usize;
        let mut n_per = 16usize;
        let mut prev: Option<Complex64> = None;
        loop {
            let count: usize = self
                .coords
                .iter()
                .map(|c| if c.periodic { n_per } else { n_int })
                .product();
            if count > max_nodes {
                return Err(Error::QuadratureFailure(format!(
                    "no convergence below {tol:.1e} within {max_nodes} nodes"
                )));
            }
            let (points, weights) = self.nodes_at(n_int, n_per);
            let terms: Vec<Complex64> = points
                .iter()
                .zip(&weights)
                .map(|(p, w)| weight(p) * (coef.eval(p) * w * self.orientation_sign))
                .collect();
            let cur = pairwise_sum_c(&terms);
            if let Some(prev) = prev {
                if (cur - prev).norm() < tol {
                    return Ok(cur);
                }
            }
            prev = Some(cur);
            n_int *= 2;
            n_per *= 2;
        }
    }

    pub fn integrate_top(&self, form: &Form, tol: f64) -> Result<f64> {
        self.integrate_top_weighted(form, |_| Complex64::new(1.0, 0.0), tol)
            .map(|v| v.re)
    }

    pub fn random_point<R: rand::Rng>(&self, rng: &mut R) -> Vec<f64> {
        self.coords
            .iter()
            .map(|c| {
                if c.periodic {
                    rng.gen_range(0.0..TWO_PI)
                } else {
                    // keep away from chart-degenerate edges
                    let pad = 0.05 * (c.hi - c.lo);
                    rng.gen_range(c.lo + pad..c.hi - pad)
                }
            })
            .collect()
    }
}

/// Torus action in chart coordinates: generator fields, analytic flows and
/// the fixed-point set.
pub struct GroupAction {
    /// Rank of the acting torus.
    pub rank: usize,
    pub generators: Vec<VectorField>,
    pub fixed_points: Vec<Vec<f64>>,
    flows: Vec<Box<dyn Fn(f64, &[f64]) -> Vec<f64> + Send + Sync>>,
}

impl GroupAction {
    /// Flow of generator `i` for time t (the map exp(-t E_i) acting on m).
    pub fn flow(&self, i: usize, t: f64, p: &[f64]) -> Vec<f64> {
        (self.flows[i])(t, p)
    }

    /// X_M for X with torus coordinates x.
    pub fn contraction_field(&self, x: &[f64]) -> VectorField {
        let dim = self.generators[0].len();
        let mut out: VectorField = (0..dim).map(|_| ScalarField::zero(dim)).collect();
        for (gen, &xi) in self.generators.iter().zip(x) {
            for (o, g) in out.iter_mut().zip(gen) {
                *o = o.add(&g.scale(xi));
            }
        }
        out
    }
}

/// Moment-map data: the component functions f_{E_i} = <mu, E_i>.
pub struct MomentMapData {
    pub components: Vec<ScalarField>,
}

impl MomentMapData {
    /// f_X = <mu, X> for X with torus coordinates x.
    pub fn moment_of(&self, x: &[f64]) -> ScalarField {
        let dim = self.components[0].dim();
        let mut f = ScalarField::zero(dim);
        for (c, &xi) in self.components.iter().zip(x) {
            f = f.add(&c.scale(xi));
        }
        f
    }
}

/// Manifold + action + moment map, the context every equivariant operation
/// works in.
pub struct TorusSpace {
    pub manifold: CatalogManifold,
    pub action: GroupAction,
    pub moment: MomentMapData,
}

fn rotation_flow(phi_slot: usize) -> Box<dyn Fn(f64, &[f64]) -> Vec<f64> + Send + Sync> {
    Box::new(move |t, p| {
        let mut q = p.to_vec();
        q[phi_slot] = (q[phi_slot] + t).rem_euclid(TWO_PI);
        q
    })
}

/// S^1 rotating the sphere of the given radius about its axis; mu = r z.
pub fn s1_sphere(radius: f64) -> TorusSpace {
    let m = CatalogManifold::sphere2(radius);
    let dim = 2;
    let gen: VectorField = vec![ScalarField::zero(dim), ScalarField::constant(dim, 1.0)];
    let action = GroupAction {
        rank: 1,
        generators: vec![gen],
        fixed_points: vec![vec![radius, 0.0], vec![-radius, 0.0]],
        flows: vec![rotation_flow(1)],
    };
    let moment = MomentMapData {
        components: vec![ScalarField::coord(dim, 0).scale(radius)],
    };
    TorusSpace {
        manifold: m,
        action,
        moment,
    }
}

/// S^1 rotating the disk; mu = u = |x|^2/2.
pub fn s1_disk(radius: f64) -> TorusSpace {
    let m = CatalogManifold::disk2(radius);
    let dim = 2;
    let gen: VectorField = vec![ScalarField::zero(dim), ScalarField::constant(dim, 1.0)];
    let action = GroupAction {
        rank: 1,
        generators: vec![gen],
        fixed_points: vec![vec![0.0, 0.0]],
        flows: vec![rotation_flow(1)],
    };
    let moment = MomentMapData {
        components: vec![ScalarField::coord(dim, 0)],
    };
    TorusSpace {
        manifold: m,
        action,
        moment,
    }
}

fn product_fixed_points(r1: f64, r2: f64) -> Vec<Vec<f64>> {
    let mut out = Vec::new();
    for s1 in [r1, -r1] {
        for s2 in [r2, -r2] {
            out.push(vec![s1, 0.0, s2, 0.0]);
        }
    }
    out
}

/// Diagonal S^1 on S^2 x S^2; mu = r1 z1 + r2 z2.
pub fn s1_diagonal_product(r1: f64, r2: f64) -> TorusSpace {
    let m = CatalogManifold::product_s2xs2(r1, r2);
    let dim = 4;
    let gen: VectorField = vec![
        ScalarField::zero(dim),
        ScalarField::constant(dim, 1.0),
        ScalarField::zero(dim),
        ScalarField::constant(dim, 1.0),
    ];
    let action = GroupAction {
        rank: 1,
        generators: vec![gen],
        fixed_points: product_fixed_points(r1, r2),
        flows: vec![Box::new(move |t, p| {
            let mut q = p.to_vec();
            q[1] = (q[1] + t).rem_euclid(TWO_PI);
            q[3] = (q[3] + t).rem_euclid(TWO_PI);
            q
        })],
    };
    let moment = MomentMapData {
        components: vec![ScalarField::coord(dim, 0)
            .scale(r1)
            .add(&ScalarField::coord(dim, 2).scale(r2))],
    };
    TorusSpace {
        manifold: m,
        action,
        moment,
    }
}

/// Full torus T^2 on S^2 x S^2, one circle per factor; mu = (r1 z1, r2 z2).
pub fn t2_product(r1: f64, r2: f64) -> TorusSpace {
    let m = CatalogManifold::product_s2xs2(r1, r2);
    let dim = 4;
    let gen1: VectorField = vec![
        ScalarField::zero(dim),
        ScalarField::constant(dim, 1.0),
        ScalarField::zero(dim),
        ScalarField::zero(dim),
    ];
    let gen2: VectorField = vec![
        ScalarField::zero(dim),
        ScalarField::zero(dim),
        ScalarField::zero(dim),
        ScalarField::constant(dim, 1.0),
    ];
    let action = GroupAction {
        rank: 2,
        generators: vec![gen1, gen2],
        fixed_points: product_fixed_points(r1, r2),
        flows: vec![rotation_flow(1), rotation_flow(3)],
    };
    let moment = MomentMapData {
        components: vec![
            ScalarField::coord(dim, 0).scale(r1),
            ScalarField::coord(dim, 2).scale(r2),
        ],
    };
    TorusSpace {
        manifold: m,
        action,
        moment,
    }
}

/// Histogram density of the pushforward of the Liouville measure under an
/// S^1 moment component.
pub struct PushforwardDensity {
    pub edges: Vec<f64>,
    pub density: Vec<f64>,
    pub total_mass: f64,
}

/// Bins the sigma^{n/2}/(n/2)! measure by the value of the moment map.
///
/// The catalog coefficients and moment components are angle-independent,
/// so periodic axes contribute exact 2pi factors and the binning runs on
/// midpoint nodes aligned with the bin edges along the interval axes.
pub fn pushforward_density(space: &TorusSpace, n_bins: usize) -> PushforwardDensity {
    assert_eq!(space.action.rank, 1, "pushforward wants an S^1 component");
    let m = &space.manifold;
    let vol = m.liouville_volume();
    let coef = vol.coefficient(&(0..m.dim as u8).collect::<Vec<_>>());
    let mu = &space.moment.components[0];

    let interval_axes: Vec<usize> = (0..m.dim).filter(|&i| !m.coords[i].periodic).collect();
    let periodic_factor = TWO_PI.powi((m.dim - interval_axes.len()) as i32);
    // per-axis midpoint resolution, aligned with the bins in the
    // single-interval case
    let n_axis = if interval_axes.len() == 1 { n_bins * 128 } else { 384 };

    // tensor midpoint nodes over the interval axes; angles pinned to 0
    let mut points: Vec<Vec<f64>> = vec![vec![0.0; m.dim]];
    let mut weights: Vec<f64> = vec![periodic_factor];
    for &ax in &interval_axes {
        let spec = m.coords[ax];
        let h = (spec.hi - spec.lo) / n_axis as f64;
        let mut np = Vec::with_capacity(points.len() * n_axis);
        let mut nw = Vec::with_capacity(points.len() * n_axis);
        for (p, w) in points.iter().zip(&weights) {
            for k in 0..n_axis {
                let mut q = p.clone();
                q[ax] = spec.lo + (k as f64 + 0.5) * h;
                np.push(q);
                nw.push(w * h);
            }
        }
        points = np;
        weights = nw;
    }

    let mut mu_min = f64::INFINITY;
    let mut mu_max = f64::NEG_INFINITY;
    for p in &points {
        let v = mu.eval(p);
        mu_min = mu_min.min(v);
        mu_max = mu_max.max(v);
    }
    // widen to the exact chart range endpoints (midpoints stop h/2 short)
    let pad = (mu_max - mu_min) / (2.0 * n_axis as f64);
    mu_min -= pad;
    mu_max += pad;
    let width = (mu_max - mu_min) / n_bins as f64;
    let mut bins = vec![Vec::new(); n_bins];
    for (p, w) in points.iter().zip(&weights) {
        let v = mu.eval(p);
        let idx = (((v - mu_min) / width) as usize).min(n_bins - 1);
        bins[idx].push(coef.eval(p) * w * m.orientation_sign);
    }
    let masses: Vec<f64> = bins.iter().map(|b| pairwise_sum(b)).collect();
    let total_mass = pairwise_sum(&masses);
    let density = masses.iter().map(|&b| b / width).collect();
    let edges = (0..=n_bins).map(|k| mu_min + k as f64 * width).collect();
    PushforwardDensity {
        edges,
        density,
        total_mass,
    }
}
