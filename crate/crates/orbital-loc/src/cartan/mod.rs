//! Equivariant differential forms on the catalog manifolds: the Cartan
//! coboundary, equivariant integration, moment-map pushforwards and the
//! local Fourier transform on rank-1 duals.

pub mod equivariant;
pub mod forms;
pub mod fourier;
pub mod manifold;
pub mod scalar;

pub use equivariant::{
    berline_vergne_dependence_check, d_g_at, equivariant_integral, sigma_g, DependenceReport,
    EquivariantForm, Poly,
};
pub use forms::{Form, VectorField};
pub use fourier::{
    dual_model_d_g, forward_on_grid, forward_scale, inverse_on_grid, local_fourier_v, Grid1,
    PolyFormOnDual,
};
pub use manifold::{
    pushforward_density, s1_diagonal_product, s1_disk, s1_sphere, t2_product, CatalogManifold,
    CoordSpec, GroupAction, ManifoldKind, MomentMapData, PushforwardDensity, TorusSpace,
};
pub use scalar::ScalarField;
