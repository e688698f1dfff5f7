//! Numerical verification of localization identities at regular coadjoint
//! orbits, on desk-scale groups and manifolds.
//!
//! The crate cross-checks every closed-form identity it implements against
//! an independent brute-force oracle: character formulas against matrix
//! traces, orbit Fourier transforms against Liouville quadrature, the Cartan
//! coboundary against Stokes integrals, deformation limits against nested
//! oscillatory quadrature, and Chern-Weil forms against curvature
//! quadrature. The `orbital-loc` binary drives the suites and emits
//! machine-readable reports.

pub mod error;
pub mod cartan;
pub mod characters;
pub mod chern_weil;
pub mod lie;
pub mod orbits;
pub mod reduction;
pub mod linalg;
pub mod quad;

pub use error::{Error, Result};
