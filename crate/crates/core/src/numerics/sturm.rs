//! Sturm-sequence counts and bisection for symmetric tridiagonal matrices,
//! plus the orthogonal reduction that brings wider bands to that form.

use serde::{Deserialize, Serialize};

use super::eigen::tred2;
use super::DenseMatrix;
use crate::band::BandSymmetricMatrix;

const MAX_BISECTIONS: usize = 200;

/// Symmetric tridiagonal matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiagonal {
    pub diag: Vec<f64>,
    pub off: Vec<f64>,
}

/// Eigenvalue counts by sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Inertia {
    pub negative: usize,
    pub zero: usize,
    pub positive: usize,
}

impl SymTridiagonal {
    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    /// Number of eigenvalues strictly below `sigma`: the count of negative
    /// pivots in the LDLᵀ factorisation of `T - σI`.
    pub fn count_below(&self, sigma: f64) -> usize {
        let pivmin = f64::MIN_POSITIVE
            * self
                .off
                .iter()
                .fold(1.0_f64, |m, e| m.max(e * e));
        let mut count = 0;
        let mut q = 1.0;
        for (i, d) in self.diag.iter().enumerate() {
            let coupling = if i == 0 {
                0.0
            } else {
                self.off[i - 1] * self.off[i - 1] / q
            };
            q = d - sigma - coupling;
            if q.abs() < pivmin {
                q = -pivmin;
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// Gershgorin enclosure of the spectrum.
    pub fn gershgorin(&self) -> (f64, f64) {
        let n = self.dim();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let left = if i > 0 { self.off[i - 1].abs() } else { 0.0 };
            let right = if i + 1 < n { self.off[i].abs() } else { 0.0 };
            lo = lo.min(self.diag[i] - left - right);
            hi = hi.max(self.diag[i] + left + right);
        }
        let pad = f64::EPSILON * lo.abs().max(hi.abs()).max(1.0) * n as f64;
        (lo - pad, hi + pad)
    }

    /// The `k`-th smallest eigenvalue (zero based) by bisection to full
    /// double precision.
    pub fn eigenvalue(&self, k: usize) -> f64 {
        assert!(k < self.dim(), "eigenvalue index out of range");
        let (mut lo, mut hi) = self.gershgorin();
        for _ in 0..MAX_BISECTIONS {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.count_below(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalue(0)
    }

    /// Inertia with eigenvalues in `[-tau, tau)` counted as zero.
    pub fn inertia(&self, tau: f64) -> Inertia {
        let negative = self.count_below(-tau);
        let below_tau = self.count_below(tau);
        Inertia {
            negative,
            zero: below_tau - negative,
            positive: self.dim() - below_tau,
        }
    }
}

/// Orthogonally similar tridiagonal form of a symmetric band matrix.
/// Half-bandwidth 0 and 1 are read off directly; wider bands go through a
/// Householder reduction.
pub fn tridiagonalize(m: &BandSymmetricMatrix) -> SymTridiagonal {
    let n = m.dim();
    match m.half_bandwidth() {
        0 => SymTridiagonal {
            diag: m.band(0).to_vec(),
            off: vec![0.0; n - 1],
        },
        1 => SymTridiagonal {
            diag: m.band(0).to_vec(),
            off: m.band(1).to_vec(),
        },
        _ => {
            let mut v: DenseMatrix = m.to_dense();
            let mut d = vec![0.0; n];
            let mut e = vec![0.0; n];
            tred2(&mut v, &mut d, &mut e);
            SymTridiagonal {
                diag: d,
                off: e[1..].to_vec(),
            }
        }
    }
}

/// Smallest eigenvalue of a symmetric band matrix.
pub fn min_eig_banded(m: &BandSymmetricMatrix) -> f64 {
    tridiagonalize(m).min_eigenvalue()
}

/// Inertia of a symmetric band matrix with zero threshold `tau`.
pub fn inertia_banded(m: &BandSymmetricMatrix, tau: f64) -> Inertia {
    tridiagonalize(m).inertia(tau)
}
