//! Discrete quantum square wells built on Chebyshev polynomials.
//!
//! The first-kind well `H^[T]` is a real tridiagonal, non-symmetric chain
//! Hamiltonian with a real spectrum `E_n = 2 cos((n + 1/2)π/N)`. This crate
//! builds it (and its Hermitian second-kind sibling), constructs the family of
//! metric operators `Θ` solving `HᵀΘ = ΘH`, and explores where those band
//! candidates stay positive definite.
//!
//! Module map:
//!
//! * [`chebpoly`] evaluates `T(n, x)`, `U(n, x)` and lists their zeros.
//! * [`lattice`] builds chain Hamiltonians and their closed-form eigensystems.
//! * [`numerics`] holds the dense/banded symmetric eigen-kernels and the SVD
//!   used for null spaces.
//! * [`metrics`] constructs spectral, diagonal, tridiagonal and pentadiagonal
//!   metrics and solves the band ansatz of the intertwining equation.
//! * [`analysis`] sweeps, classifies and scans the parameter space.
//! * [`export`] writes the deterministic CSV/JSON artefacts.
//! * [`checks`] bundles the end-to-end verification suite.

pub mod analysis;
pub mod band;
pub mod chebpoly;
pub mod checks;
pub mod error;
pub mod export;
pub mod lattice;
pub mod metrics;
pub mod numerics;

pub use band::BandSymmetricMatrix;
pub use error::{Error, Result};
pub use numerics::DenseMatrix;
