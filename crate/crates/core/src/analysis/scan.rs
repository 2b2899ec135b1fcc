use std::collections::VecDeque;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::signature::{classify_spectrum, zero_threshold};
use super::sweep::uniform_grid;
use crate::error::Result;
use crate::metrics::l_matrix;
use crate::numerics::{min_eig_banded, sym_eigs};

/// Classification of one grid point of a 2-D scan.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanRecord {
    pub lambda: f64,
    pub mu: f64,
    pub n_negative: usize,
    pub n_zero: usize,
    pub min_eig: f64,
}

impl ScanRecord {
    pub fn inside(&self) -> bool {
        self.n_negative == 0 && self.n_zero == 0
    }
}

/// Gridded 2-D scan; records are stored `λ`-major, record `(i, j)` sits at
/// `λ = lambda_axis[i]`, `μ = mu_axis[j]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scan2d {
    pub lambda_axis: Vec<f64>,
    pub mu_axis: Vec<f64>,
    pub records: Vec<ScanRecord>,
}

impl Scan2d {
    fn build(
        lambda_range: (f64, f64),
        mu_range: (f64, f64),
        steps_lambda: usize,
        steps_mu: usize,
        point: impl Fn(f64, f64) -> Result<ScanRecord> + Sync,
    ) -> Result<Self> {
        let lambda_axis = uniform_grid(lambda_range.0, lambda_range.1, steps_lambda)?;
        let mu_axis = uniform_grid(mu_range.0, mu_range.1, steps_mu)?;
        let records = (0..steps_lambda * steps_mu)
            .into_par_iter()
            .map(|k| point(lambda_axis[k / steps_mu], mu_axis[k % steps_mu]))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            lambda_axis,
            mu_axis,
            records,
        })
    }

    pub fn n_lambda(&self) -> usize {
        self.lambda_axis.len()
    }

    pub fn n_mu(&self) -> usize {
        self.mu_axis.len()
    }

    pub fn record(&self, i: usize, j: usize) -> &ScanRecord {
        &self.records[i * self.n_mu() + j]
    }

    pub fn inside(&self, i: usize, j: usize) -> bool {
        self.record(i, j).inside()
    }

    pub fn inside_count(&self) -> usize {
        self.records.iter().filter(|r| r.inside()).count()
    }

    /// Grid spacing `(Δλ, Δμ)`.
    pub fn cell_size(&self) -> (f64, f64) {
        let step = |axis: &[f64]| (axis[axis.len() - 1] - axis[0]) / (axis.len() - 1) as f64;
        (step(&self.lambda_axis), step(&self.mu_axis))
    }

    /// Nearest grid point to `(λ, μ)`.
    pub fn nearest(&self, lambda: f64, mu: f64) -> (usize, usize) {
        let near = |axis: &[f64], x: f64| {
            (0..axis.len())
                .min_by(|&a, &b| (axis[a] - x).abs().total_cmp(&(axis[b] - x).abs()))
                .unwrap_or(0)
        };
        (near(&self.lambda_axis, lambda), near(&self.mu_axis, mu))
    }

    /// Number of 4-connected components of the inside set.
    pub fn inside_components(&self) -> usize {
        let (nl, nm) = (self.n_lambda(), self.n_mu());
        let mut seen = vec![false; nl * nm];
        let mut components = 0;
        for start in 0..nl * nm {
            if seen[start] || !self.records[start].inside() {
                continue;
            }
            components += 1;
            seen[start] = true;
            let mut queue = VecDeque::from([start]);
            while let Some(k) = queue.pop_front() {
                let (i, j) = (k / nm, k % nm);
                let mut neighbours = Vec::with_capacity(4);
                if i > 0 {
                    neighbours.push(k - nm);
                }
                if i + 1 < nl {
                    neighbours.push(k + nm);
                }
                if j > 0 {
                    neighbours.push(k - 1);
                }
                if j + 1 < nm {
                    neighbours.push(k + 1);
                }
                for q in neighbours {
                    if !seen[q] && self.records[q].inside() {
                        seen[q] = true;
                        queue.push_back(q);
                    }
                }
            }
        }
        components
    }

    /// Grid points whose inside flag differs from the `λ → -λ` mirror point.
    /// Meaningful when the `λ` axis is symmetric about zero.
    pub fn lambda_mirror_mismatches(&self) -> usize {
        let (nl, nm) = (self.n_lambda(), self.n_mu());
        (0..nl)
            .flat_map(|i| (0..nm).map(move |j| (i, j)))
            .filter(|&(i, j)| self.inside(i, j) != self.inside(nl - 1 - i, j))
            .count()
    }
}

/// Classifies `L(λ, μ)` of dimension `n` on a uniform grid.
pub fn scan_2d(
    n: usize,
    lambda_range: (f64, f64),
    mu_range: (f64, f64),
    steps_lambda: usize,
    steps_mu: usize,
) -> Result<Scan2d> {
    l_matrix(n, 0.0, 0.0)?;
    Scan2d::build(lambda_range, mu_range, steps_lambda, steps_mu, |lambda, mu| {
        let dense = l_matrix(n, lambda, mu)?.to_dense();
        let values = sym_eigs(&dense)?.values;
        let sig = classify_spectrum(&values, zero_threshold(dense.max_abs()));
        Ok(ScanRecord {
            lambda,
            mu,
            n_negative: sig.n_negative,
            n_zero: sig.n_zero,
            min_eig: sig.min_eigenvalue,
        })
    })
}

/// Scan of an arbitrary scalar field: the region is `field > τ`, with
/// `τ = zero_threshold(1)`. Used for synthetic test regions.
pub fn scan_field(
    lambda_range: (f64, f64),
    mu_range: (f64, f64),
    steps_lambda: usize,
    steps_mu: usize,
    field: impl Fn(f64, f64) -> f64 + Sync,
) -> Result<Scan2d> {
    let tau = zero_threshold(1.0);
    Scan2d::build(lambda_range, mu_range, steps_lambda, steps_mu, |lambda, mu| {
        let f = field(lambda, mu);
        Ok(ScanRecord {
            lambda,
            mu,
            n_negative: usize::from(f < -tau),
            n_zero: usize::from(f.abs() <= tau),
            min_eig: f,
        })
    })
}

/// `(λ, μ) ↦ λ_min(L(λ, μ))`, the field whose zero set bounds the
/// positivity domain.
pub fn l_min_eig_field(n: usize) -> impl Fn(f64, f64) -> f64 + Sync {
    move |lambda, mu| match l_matrix(n, lambda, mu) {
        Ok(c) => c.as_band().map_or(f64::NAN, min_eig_banded),
        Err(_) => f64::NAN,
    }
}
