//! Root systems, Weyl groups, Cartan pairings and explicit matrix algebras
//! for the catalog groups S^1, SU(2), SU(3).
//!
//! Roots and weights are stored as real covectors on the real Cartan
//! subalgebra t identified with R^rank through the orthonormal basis induced
//! by the invariant inner product <A,B> = -tr(AB). Compact-form pairings,
//! which are purely imaginary, are represented by the real number a with
//! e^{<alpha,X>/2} computed downstream as e^{ia/2}.

mod algebra;
mod roots;

pub use algebra::{CatalogGroup, MatrixAlgebra};
pub use roots::{
    build_root_system, pairing, stabilizer_subgroup, weyl_group, CartanElement, RootFamily,
    RootSystem, Weight, WeylElement, REGULARITY_TOL,
};
