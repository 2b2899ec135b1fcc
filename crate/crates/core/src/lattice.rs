//! Chain Hamiltonians of the discrete square wells and their closed-form
//! biorthogonal eigensystems.
//!
//! The second-kind well `H^[U]` is the zero-diagonal, unit off-diagonal
//! tridiagonal matrix. The first-kind well `H^[T]` differs only in entry
//! `(1, 2)`, which is `2`. Its right eigenvectors carry `T(α-1, x)` on site
//! `α` and its left eigenvectors are the same vectors with the first
//! component halved.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::chebpoly::{cheb_column, PolyKind};
use crate::error::{require_at_least, Error, Result};
use crate::numerics::{tridiag_eigenvalues, DenseMatrix};

/// Real tridiagonal `N x N` matrix: `diag` on the main diagonal, `sub` below
/// and `sup` above.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainHamiltonian {
    diag: Vec<f64>,
    sub: Vec<f64>,
    sup: Vec<f64>,
}

impl ChainHamiltonian {
    pub fn new(diag: Vec<f64>, sub: Vec<f64>, sup: Vec<f64>) -> Result<Self> {
        require_at_least("dimension", diag.len(), 1)?;
        let off = diag.len() - 1;
        for len in [sub.len(), sup.len()] {
            if len != off {
                return Err(Error::DimensionMismatch {
                    expected: off,
                    got: len,
                });
            }
        }
        Ok(Self { diag, sub, sup })
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn sub(&self) -> &[f64] {
        &self.sub
    }

    pub fn sup(&self) -> &[f64] {
        &self.sup
    }

    pub fn to_dense(&self) -> DenseMatrix {
        DenseMatrix::from_fn(self.dim(), self.dim(), |i, j| self.entry(i, j))
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        if i == j {
            self.diag[i]
        } else if j == i + 1 {
            self.sup[i]
        } else if i == j + 1 {
            self.sub[j]
        } else {
            0.0
        }
    }

    pub fn transpose(&self) -> Self {
        Self {
            diag: self.diag.clone(),
            sub: self.sup.clone(),
            sup: self.sub.clone(),
        }
    }

    /// `H v`.
    pub fn apply(&self, v: &[f64]) -> Result<Vec<f64>> {
        let n = self.dim();
        if v.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: v.len(),
            });
        }
        Ok((0..n)
            .map(|i| {
                let mut s = self.diag[i] * v[i];
                if i > 0 {
                    s += self.sub[i - 1] * v[i - 1];
                }
                if i + 1 < n {
                    s += self.sup[i] * v[i + 1];
                }
                s
            })
            .collect())
    }

    pub fn max_abs(&self) -> f64 {
        self.diag
            .iter()
            .chain(&self.sub)
            .chain(&self.sup)
            .fold(0.0, |m: f64, v| m.max(v.abs()))
    }

    /// Symmetric tridiagonal matrix similar to `H` via a positive diagonal
    /// scaling, when every product `sub_k * sup_k` is positive.
    pub fn symmetrized(&self) -> Option<(Vec<f64>, Vec<f64>)> {
        let off = self
            .sub
            .iter()
            .zip(&self.sup)
            .map(|(b, c)| (b * c > 0.0).then(|| (b * c).sqrt()))
            .collect::<Option<Vec<_>>>()?;
        Some((self.diag.clone(), off))
    }
}

/// The two square-well models.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ModelKind {
    /// `H^[U]`, Hermitian, eigenvectors built from `U(n, x)`.
    SecondKindWell,
    /// `H^[T]`, non-Hermitian, eigenvectors built from `T(n, x)`.
    FirstKindWell,
}

impl ModelKind {
    pub fn poly_kind(self) -> PolyKind {
        match self {
            ModelKind::SecondKindWell => PolyKind::SecondKind,
            ModelKind::FirstKindWell => PolyKind::FirstKind,
        }
    }
}

pub fn build_hamiltonian(kind: ModelKind, n: usize) -> Result<ChainHamiltonian> {
    require_at_least("dimension", n, 1)?;
    let mut sup = vec![1.0; n - 1];
    if kind == ModelKind::FirstKindWell && n >= 2 {
        sup[0] = 2.0;
    }
    ChainHamiltonian::new(vec![0.0; n], vec![1.0; n - 1], sup)
}

/// Closed-form energies in descending order.
///
/// `2cos((k+1)π/(N+1))` for the second-kind well and `2cos((k+1/2)π/N)` for
/// the first-kind well, each written as a sine of the complementary angle so
/// that the spectrum is exactly symmetric.
pub fn closed_form_energies(kind: ModelKind, n: usize) -> Result<Vec<f64>> {
    require_at_least("dimension", n, 1)?;
    let n_i = n as i64;
    Ok((0..n_i)
        .map(|k| {
            let angle = match kind {
                ModelKind::SecondKindWell => (n_i - 1 - 2 * k) as f64 * PI / (2 * (n_i + 1)) as f64,
                ModelKind::FirstKindWell => (n_i - 1 - 2 * k) as f64 * PI / (2 * n_i) as f64,
            };
            2.0 * angle.sin()
        })
        .collect())
}

/// Energies from a numerical eigensolve of the symmetrised chain,
/// descending. Requires every `sub_k * sup_k > 0`.
pub fn numerical_energies(h: &ChainHamiltonian) -> Result<Vec<f64>> {
    let (diag, off) = h.symmetrized().ok_or_else(|| Error::InvalidParameter {
        what: "hamiltonian",
        reason: "couplings are not sign-symmetric; no real symmetrisation".into(),
    })?;
    let mut values = tridiag_eigenvalues(&diag, &off)?;
    values.reverse();
    Ok(values)
}

/// Paired right/left eigenvectors with their shared real energies.
///
/// Vectors are kept unnormalised: entry `α` is the polynomial value on site
/// `α`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenSystem {
    energies: Vec<f64>,
    right: Vec<Vec<f64>>,
    left: Vec<Vec<f64>>,
}

impl EigenSystem {
    pub fn new(energies: Vec<f64>, right: Vec<Vec<f64>>, left: Vec<Vec<f64>>) -> Result<Self> {
        let n = energies.len();
        require_at_least("dimension", n, 1)?;
        for set in [&right, &left] {
            if set.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: set.len(),
                });
            }
            if let Some(v) = set.iter().find(|v| v.len() != n) {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: v.len(),
                });
            }
        }
        Ok(Self {
            energies,
            right,
            left,
        })
    }

    pub fn dim(&self) -> usize {
        self.energies.len()
    }

    /// Energies, descending.
    pub fn energies(&self) -> &[f64] {
        &self.energies
    }

    /// Right eigenvectors (kets).
    pub fn right(&self) -> &[Vec<f64>] {
        &self.right
    }

    /// Left eigenvectors (ketkets), eigenvectors of `Hᵀ`.
    pub fn left(&self) -> &[Vec<f64>] {
        &self.left
    }

    /// `⟨⟨ψ_n|ψ_n⟩`.
    pub fn binorm(&self, level: usize) -> f64 {
        dot(&self.left[level], &self.right[level])
    }
}

pub fn closed_form_eigensystem(kind: ModelKind, n: usize) -> Result<EigenSystem> {
    let energies = closed_form_energies(kind, n)?;
    let poly = kind.poly_kind();
    let right: Vec<Vec<f64>> = energies
        .iter()
        .map(|e| cheb_column(poly, n, 0.5 * e))
        .collect();
    let left = right
        .iter()
        .map(|r| {
            let mut l = r.clone();
            if kind == ModelKind::FirstKindWell {
                l[0] *= 0.5;
            }
            l
        })
        .collect();
    EigenSystem::new(energies, right, left)
}

/// Residuals of an eigensystem against a Hamiltonian, all in the
/// max-absolute-entry norm.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    /// `max_n |H r_n - E_n r_n|`
    pub right: f64,
    /// `max_n |Hᵀ l_n - E_n l_n|`
    pub left: f64,
    /// `max_{m≠n} |l_m · r_n|`
    pub biorthogonality: f64,
    /// `|I - Σ_n r_n l_nᵀ / (l_n · r_n)|`
    pub completeness: f64,
}

impl ResidualReport {
    pub fn max(&self) -> f64 {
        self.right
            .max(self.left)
            .max(self.biorthogonality)
            .max(self.completeness)
    }
}

pub fn verify_eigensystem(h: &ChainHamiltonian, es: &EigenSystem) -> Result<ResidualReport> {
    let n = h.dim();
    if es.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: es.dim(),
        });
    }
    let ht = h.transpose();
    let mut right_res: f64 = 0.0;
    let mut left_res: f64 = 0.0;
    for (k, e) in es.energies.iter().enumerate() {
        let hr = h.apply(&es.right[k])?;
        let hl = ht.apply(&es.left[k])?;
        right_res = right_res.max(max_deviation(&hr, &es.right[k], *e));
        left_res = left_res.max(max_deviation(&hl, &es.left[k], *e));
    }

    let mut bi: f64 = 0.0;
    let mut binorms = Vec::with_capacity(n);
    for m in 0..n {
        for k in 0..n {
            let d = dot(&es.left[m], &es.right[k]);
            if m == k {
                if d == 0.0 || !d.is_finite() {
                    return Err(Error::VanishingBinorm { level: m });
                }
                binorms.push(d);
            } else {
                bi = bi.max(d.abs());
            }
        }
    }

    let mut resolution = DenseMatrix::identity(n);
    for k in 0..n {
        for i in 0..n {
            let ri = es.right[k][i] / binorms[k];
            for j in 0..n {
                resolution[(i, j)] -= ri * es.left[k][j];
            }
        }
    }

    Ok(ResidualReport {
        right: right_res,
        left: left_res,
        biorthogonality: bi,
        completeness: resolution.max_abs(),
    })
}

fn max_deviation(hv: &[f64], v: &[f64], e: f64) -> f64 {
    hv.iter()
        .zip(v)
        .map(|(a, b)| (a - e * b).abs())
        .fold(0.0, f64::max)
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chebpoly::cheb_eval;
    use crate::numerics::sym_eigs;

    #[test]
    fn small_hamiltonians() {
        let t2 = build_hamiltonian(ModelKind::FirstKindWell, 2).unwrap();
        assert_eq!(t2.to_dense().to_rows(), vec![vec![0.0, 2.0], vec![1.0, 0.0]]);
        let u3 = build_hamiltonian(ModelKind::SecondKindWell, 3).unwrap();
        assert_eq!(
            u3.to_dense().to_rows(),
            vec![vec![0.0, 1.0, 0.0], vec![1.0, 0.0, 1.0], vec![0.0, 1.0, 0.0]]
        );
        let t1 = build_hamiltonian(ModelKind::FirstKindWell, 1).unwrap();
        assert_eq!(t1.to_dense().to_rows(), vec![vec![0.0]]);
        assert!(build_hamiltonian(ModelKind::FirstKindWell, 0).is_err());
    }

    #[test]
    fn closed_form_values() {
        let e4 = closed_form_energies(ModelKind::FirstKindWell, 4).unwrap();
        let expected = [1.8477590650, 0.7653668647, -0.7653668647, -1.8477590650];
        for (a, b) in e4.iter().zip(expected) {
            assert!((a - b).abs() < 1e-10);
        }
        assert_eq!(closed_form_energies(ModelKind::FirstKindWell, 1).unwrap(), vec![0.0]);
        let e2 = closed_form_energies(ModelKind::FirstKindWell, 2).unwrap();
        assert!((e2[0] - 2f64.sqrt()).abs() < 1e-15 && (e2[1] + 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn middle_level_vectors_at_three_sites() {
        let es = closed_form_eigensystem(ModelKind::FirstKindWell, 3).unwrap();
        assert_eq!(es.energies()[1], 0.0);
        assert_eq!(es.right()[1], vec![1.0, 0.0, -1.0]);
        assert_eq!(es.left()[1], vec![0.5, 0.0, -1.0]);
    }

    #[test]
    fn ketket_first_component_is_half() {
        for n in 1..12 {
            let es = closed_form_eigensystem(ModelKind::FirstKindWell, n).unwrap();
            assert!(es.left().iter().all(|l| l[0] == 0.5));
        }
        let u = closed_form_eigensystem(ModelKind::SecondKindWell, 2).unwrap();
        for (r, e) in u.right().iter().zip(u.energies()) {
            assert_eq!(r[0], 1.0);
            assert_eq!(r[1], *e);
        }
        assert_eq!(u.right(), u.left());
    }

    #[test]
    fn verify_closed_form_systems() {
        for (kind, n) in [(ModelKind::FirstKindWell, 6), (ModelKind::SecondKindWell, 5)] {
            let h = build_hamiltonian(kind, n).unwrap();
            let es = closed_form_eigensystem(kind, n).unwrap();
            let r = verify_eigensystem(&h, &es).unwrap();
            assert!(r.max() < 1e-12, "{kind:?}: {r:?}");
        }
        let h = build_hamiltonian(ModelKind::FirstKindWell, 1).unwrap();
        let es = closed_form_eigensystem(ModelKind::FirstKindWell, 1).unwrap();
        let r = verify_eigensystem(&h, &es).unwrap();
        assert_eq!(r.max(), 0.0);
    }

    #[test]
    fn unsymmetrisable_chain_rejected() {
        let h = ChainHamiltonian::new(vec![0.0, 0.0], vec![1.0], vec![-1.0]).unwrap();
        assert!(numerical_energies(&h).is_err());
    }

    #[test]
    fn verify_guards() {
        let h = build_hamiltonian(ModelKind::FirstKindWell, 3).unwrap();
        let es = closed_form_eigensystem(ModelKind::FirstKindWell, 4).unwrap();
        assert!(matches!(
            verify_eigensystem(&h, &es),
            Err(Error::DimensionMismatch { .. })
        ));
        let bad = EigenSystem::new(vec![1.0, -1.0], vec![vec![1.0, 0.0], vec![0.0, 1.0]], vec![
            vec![0.0, 1.0],
            vec![1.0, 0.0],
        ])
        .unwrap();
        let h2 = build_hamiltonian(ModelKind::SecondKindWell, 2).unwrap();
        assert!(matches!(
            verify_eigensystem(&h2, &bad),
            Err(Error::VanishingBinorm { level: 0 })
        ));
    }

    #[test]
    fn closed_form_matches_numerical_eigensolve() {
        for n in 1..=200 {
            for kind in [ModelKind::FirstKindWell, ModelKind::SecondKindWell] {
                let h = build_hamiltonian(kind, n).unwrap();
                let numeric = numerical_energies(&h).unwrap();
                let closed = closed_form_energies(kind, n).unwrap();
                for (a, b) in closed.iter().zip(&numeric) {
                    assert!((a - b).abs() < 1e-10, "{kind:?} n={n}");
                }
            }
        }
    }

    #[test]
    fn dense_solver_agrees_on_symmetrized_first_kind() {
        let n = 12;
        let h = build_hamiltonian(ModelKind::FirstKindWell, n).unwrap();
        // D H D⁻¹ with D = diag(√2, 1, ..., 1)
        let mut dense = h.to_dense();
        let s = 2f64.sqrt();
        dense[(0, 1)] /= s;
        dense[(1, 0)] *= s;
        let mut values = sym_eigs(&dense).unwrap().values;
        values.reverse();
        let closed = closed_form_energies(ModelKind::FirstKindWell, n).unwrap();
        for (a, b) in closed.iter().zip(values) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn secular_equation_and_symmetry() {
        for n in 1..60 {
            for kind in [ModelKind::FirstKindWell, ModelKind::SecondKindWell] {
                let e = closed_form_energies(kind, n).unwrap();
                for v in &e {
                    assert!(cheb_eval(kind.poly_kind(), n, 0.5 * v).abs() < 1e-10);
                }
                assert!(e.windows(2).all(|w| w[0] > w[1]));
                for k in 0..n {
                    assert_eq!(e[k], -e[n - 1 - k]);
                }
                assert_eq!(e.contains(&0.0), n % 2 == 1);
            }
        }
    }
}
