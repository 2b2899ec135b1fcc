//! Dense and banded symmetric kernels.
//!
//! Everything here is real arithmetic and deterministic: identical input
//! gives bit-identical output, which the sweep and scan exporters rely on.

mod dense;
mod eigen;
mod sturm;
mod svd;

pub use dense::DenseMatrix;
pub use eigen::{sym_eigs, tridiag_eigenvalues, EigenDecomposition};
pub use sturm::{inertia_banded, min_eig_banded, tridiagonalize, Inertia, SymTridiagonal};
pub use svd::{jacobi_svd, null_space, SingularSystem, DEFAULT_KERNEL_TOL};
