//! Metric and pseudometric candidates `Θ` for the intertwining equation
//! `HᵀΘ = ΘH`.
//!
//! Three routes are provided: the spectral sum over left eigenvectors, the
//! closed band families (diagonal, `K(λ)`, `L(λ, μ)`), and a generic solver
//! that imposes a band ansatz on `Θ` and reads the solution space off the
//! null space of the resulting linear system.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::band::BandSymmetricMatrix;
use crate::error::{require_at_least, Error, Result};
use crate::lattice::{dot, ChainHamiltonian, EigenSystem};
use crate::numerics::{null_space, sym_eigs, DenseMatrix, DEFAULT_KERNEL_TOL};

/// Storage of a candidate matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum MetricMatrix {
    Band(BandSymmetricMatrix),
    Dense(DenseMatrix),
}

/// Which construction produced a candidate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MetricSource {
    Spectral,
    ClosedForm,
    SolverBasis,
}

/// A symmetric solution (or solution candidate) of `HᵀΘ = ΘH` together with
/// the named parameters it was built from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricCandidate {
    pub matrix: MetricMatrix,
    pub params: BTreeMap<String, f64>,
    pub source: MetricSource,
}

impl MetricCandidate {
    fn band(matrix: BandSymmetricMatrix, params: &[(&str, f64)], source: MetricSource) -> Self {
        Self {
            matrix: MetricMatrix::Band(matrix),
            params: params.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            source,
        }
    }

    pub fn dim(&self) -> usize {
        match &self.matrix {
            MetricMatrix::Band(b) => b.dim(),
            MetricMatrix::Dense(d) => d.rows(),
        }
    }

    pub fn to_dense(&self) -> DenseMatrix {
        match &self.matrix {
            MetricMatrix::Band(b) => b.to_dense(),
            MetricMatrix::Dense(d) => d.clone(),
        }
    }

    pub fn as_band(&self) -> Option<&BandSymmetricMatrix> {
        match &self.matrix {
            MetricMatrix::Band(b) => Some(b),
            MetricMatrix::Dense(_) => None,
        }
    }

    pub fn max_abs(&self) -> f64 {
        match &self.matrix {
            MetricMatrix::Band(b) => b.max_abs(),
            MetricMatrix::Dense(d) => d.max_abs(),
        }
    }

    pub fn param(&self, name: &str) -> Option<f64> {
        self.params.get(name).copied()
    }
}

/// `Θ = Σ_n l_n ν_n² l_nᵀ` over the left eigenvectors `l_n`.
pub fn spectral_metric(es: &EigenSystem, nu: &[f64]) -> Result<MetricCandidate> {
    let n = es.dim();
    if nu.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: nu.len(),
        });
    }
    if let Some(k) = nu.iter().position(|v| *v == 0.0 || !v.is_finite()) {
        return Err(Error::InvalidParameter {
            what: "nu",
            reason: format!("entry {k} must be finite and nonzero"),
        });
    }
    let mut theta = DenseMatrix::zeros(n, n);
    for (l, v) in es.left().iter().zip(nu) {
        let w = v * v;
        for i in 0..n {
            let li = w * l[i];
            for j in 0..n {
                theta[(i, j)] += li * l[j];
            }
        }
    }
    let params = nu
        .iter()
        .enumerate()
        .map(|(k, v)| (format!("nu_{k}"), *v))
        .collect();
    Ok(MetricCandidate {
        matrix: MetricMatrix::Dense(theta),
        params,
        source: MetricSource::Spectral,
    })
}

/// `diag(1/2, 1, ..., 1)`, normalised so that `Θ_{N,N} = 1`.
pub fn diagonal_metric(n: usize) -> Result<MetricCandidate> {
    require_at_least("dimension", n, 1)?;
    let mut d = vec![1.0; n];
    d[0] = 0.5;
    Ok(MetricCandidate::band(
        BandSymmetricMatrix::from_bands(vec![d])?,
        &[],
        MetricSource::ClosedForm,
    ))
}

/// Tridiagonal `K(λ)`: diagonal `(1/2, 1, ..., 1)`, every off-diagonal `λ`.
pub fn k_matrix(n: usize, lambda: f64) -> Result<MetricCandidate> {
    require_at_least("dimension", n, 2)?;
    let mut d = vec![1.0; n];
    d[0] = 0.5;
    Ok(MetricCandidate::band(
        BandSymmetricMatrix::from_bands(vec![d, vec![lambda; n - 1]])?,
        &[("lambda", lambda)],
        MetricSource::ClosedForm,
    ))
}

/// Pentadiagonal `L(λ, μ)`: second off-diagonal `μ`, first off-diagonal `λ`,
/// diagonal `(1/2, 1+μ, 1, ..., 1, 1-μ)`.
pub fn l_matrix(n: usize, lambda: f64, mu: f64) -> Result<MetricCandidate> {
    require_at_least("dimension", n, 3)?;
    let mut d = vec![1.0; n];
    d[0] = 0.5;
    d[1] = 1.0 + mu;
    d[n - 1] = 1.0 - mu;
    Ok(MetricCandidate::band(
        BandSymmetricMatrix::from_bands(vec![d, vec![lambda; n - 1], vec![mu; n - 2]])?,
        &[("lambda", lambda), ("mu", mu)],
        MetricSource::ClosedForm,
    ))
}

/// Free entries `(i, j)`, `i <= j <= i + b`, in row-major order.
fn band_unknowns(n: usize, b: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|i| (i..n.min(i + b + 1)).map(move |j| (i, j)))
        .collect()
}

/// Linear system whose kernel is the set of symmetric half-bandwidth-`b`
/// solutions of `HᵀΘ = ΘH`. Rows index the `N²` entries of the residual,
/// columns the free band entries.
pub fn intertwining_system(h: &ChainHamiltonian, b: usize) -> Result<DenseMatrix> {
    let n = h.dim();
    if b >= n {
        return Err(Error::InvalidParameter {
            what: "half_bandwidth",
            reason: format!("{b} must be below dimension {n}"),
        });
    }
    let unknowns = band_unknowns(n, b);
    let mut a = DenseMatrix::zeros(n * n, unknowns.len());
    for (col, &(p, q)) in unknowns.iter().enumerate() {
        // E = e_p e_qᵀ + e_q e_pᵀ (single entry when p == q):
        // (HᵀE)_{rc} = H_{pr} δ_{qc} + H_{qr} δ_{pc},  (EH)_{rc} = δ_{rp} H_{qc} + δ_{rq} H_{pc}
        let pairs: &[(usize, usize)] = if p == q { &[(p, p)] } else { &[(p, q), (q, p)] };
        for &(s, t) in pairs {
            for r in 0..n {
                a[(r * n + t, col)] += h.entry(s, r);
            }
            for c in 0..n {
                a[(s * n + c, col)] -= h.entry(t, c);
            }
        }
    }
    Ok(a)
}

/// Basis of all symmetric band metrics of half-bandwidth `b` for `h`.
///
/// Basis elements follow the descending singular-value order of the kernel
/// and are scaled so that `Θ_{N,N} = 1`, or the largest-magnitude entry is
/// `1` when the corner vanishes.
pub fn band_metric_basis(h: &ChainHamiltonian, b: usize) -> Result<Vec<MetricCandidate>> {
    let n = h.dim();
    let a = intertwining_system(h, b)?;
    let unknowns = band_unknowns(n, b);
    let kernel = null_space(&a, DEFAULT_KERNEL_TOL);
    if kernel.is_empty() {
        return Err(Error::EmptyKernel);
    }
    kernel
        .into_iter()
        .enumerate()
        .map(|(k, v)| {
            let mut m = BandSymmetricMatrix::zeros(n, b)?;
            for (&(i, j), x) in unknowns.iter().zip(&v) {
                m.set(i, j, *x);
            }
            let corner = m.get(n - 1, n - 1);
            let largest = m.max_abs();
            let pivot = if corner.abs() > 1e-12 * largest {
                corner
            } else {
                v.iter()
                    .copied()
                    .fold(0.0, |best: f64, x| if x.abs() > best.abs() { x } else { best })
            };
            Ok(MetricCandidate::band(
                m.scale(1.0 / pivot),
                &[("basis_index", k as f64)],
                MetricSource::SolverBasis,
            ))
        })
        .collect()
}

/// Largest entry of `target - P target`, where `P` projects onto the span
/// of `basis`.
pub fn span_fit_residual(target: &DenseMatrix, basis: &[MetricCandidate]) -> f64 {
    let mut ortho: Vec<Vec<f64>> = Vec::with_capacity(basis.len());
    for cand in basis {
        let mut v = cand.to_dense().as_slice().to_vec();
        // two passes of modified Gram-Schmidt
        for _ in 0..2 {
            for q in &ortho {
                let c = dot(q, &v);
                v.iter_mut().zip(q).for_each(|(x, y)| *x -= c * y);
            }
        }
        let norm = dot(&v, &v).sqrt();
        if norm > 1e-14 {
            ortho.push(v.into_iter().map(|x| x / norm).collect());
        }
    }
    let mut r = target.as_slice().to_vec();
    for q in &ortho {
        let c = dot(q, &r);
        r.iter_mut().zip(q).for_each(|(x, y)| *x -= c * y);
    }
    r.iter().fold(0.0, |m: f64, x| m.max(x.abs()))
}

/// The `Θ`-weighted bilinear form `aᵀ Θ b`.
pub fn s_inner_product(theta: &MetricCandidate, a: &[f64], b: &[f64]) -> Result<f64> {
    let n = theta.dim();
    for len in [a.len(), b.len()] {
        if len != n {
            return Err(Error::DimensionMismatch { expected: n, got: len });
        }
    }
    let tb = theta.to_dense().mul_vec(b)?;
    Ok(dot(a, &tb))
}

/// `max |HᵀΘ - ΘH|`.
pub fn intertwining_residual(h: &ChainHamiltonian, theta: &MetricCandidate) -> Result<f64> {
    let (lhs, rhs) = products(h, theta)?;
    Ok(lhs.sub(&rhs)?.max_abs())
}

fn products(h: &ChainHamiltonian, theta: &MetricCandidate) -> Result<(DenseMatrix, DenseMatrix)> {
    if h.dim() != theta.dim() {
        return Err(Error::DimensionMismatch {
            expected: h.dim(),
            got: theta.dim(),
        });
    }
    let hd = h.to_dense();
    let t = theta.to_dense();
    Ok((hd.transpose().matmul(&t)?, t.matmul(&hd)?))
}

/// Outcome of [`hermitize_check`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HermitizeReport {
    pub intertwining_residual: f64,
    /// `max |(ΘH) - (ΘH)ᵀ|`
    pub symmetry_defect: f64,
    pub min_eigenvalue: f64,
    /// `‖H‖_max · ‖Θ‖_max`, the natural scale for the two defects above.
    pub scale: f64,
}

impl HermitizeReport {
    /// Intertwining residual below `rel_tol` times the product scale.
    pub fn intertwines(&self, rel_tol: f64) -> bool {
        self.intertwining_residual <= rel_tol * self.scale.max(f64::MIN_POSITIVE)
    }

    pub fn is_positive_definite(&self) -> bool {
        self.min_eigenvalue > 0.0
    }
}

pub fn hermitize_check(h: &ChainHamiltonian, theta: &MetricCandidate) -> Result<HermitizeReport> {
    let (lhs, rhs) = products(h, theta)?;
    let t = theta.to_dense();
    let min_eigenvalue = sym_eigs(&t)?.values[0];
    Ok(HermitizeReport {
        intertwining_residual: lhs.sub(&rhs)?.max_abs(),
        symmetry_defect: rhs.symmetry_defect(),
        min_eigenvalue,
        scale: h.max_abs() * t.max_abs(),
    })
}
