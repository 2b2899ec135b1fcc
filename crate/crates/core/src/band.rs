//! Symmetric band matrices, stored by upper diagonals.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::DenseMatrix;

/// Real symmetric `N x N` matrix with half-bandwidth `b`.
///
/// `bands[k][i]` is the entry `(i, i + k)` (and, by symmetry, `(i + k, i)`),
/// so `bands[0]` is the main diagonal and `bands[k]` has `N - k` entries.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BandSymmetricMatrix {
    dim: usize,
    bands: Vec<Vec<f64>>,
}

impl BandSymmetricMatrix {
    /// Zero matrix of the given size and half-bandwidth.
    pub fn zeros(dim: usize, half_bandwidth: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::TooSmall {
                what: "dimension",
                min: 1,
                got: 0,
            });
        }
        if half_bandwidth >= dim {
            return Err(Error::InvalidParameter {
                what: "half_bandwidth",
                reason: format!("{half_bandwidth} must be below dimension {dim}"),
            });
        }
        Ok(Self {
            dim,
            bands: (0..=half_bandwidth).map(|k| vec![0.0; dim - k]).collect(),
        })
    }

    /// Builds from explicit upper bands, `bands[k].len() == dim - k`.
    pub fn from_bands(bands: Vec<Vec<f64>>) -> Result<Self> {
        let dim = bands.first().map_or(0, Vec::len);
        let mut m = Self::zeros(dim, bands.len().saturating_sub(1))?;
        for (k, band) in bands.into_iter().enumerate() {
            if band.len() != dim - k {
                return Err(Error::DimensionMismatch {
                    expected: dim - k,
                    got: band.len(),
                });
            }
            m.bands[k] = band;
        }
        Ok(m)
    }

    /// Keeps the entries of a symmetric dense matrix within the band.
    pub fn from_dense(a: &DenseMatrix, half_bandwidth: usize) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::NotSquare {
                rows: a.rows(),
                cols: a.cols(),
            });
        }
        let mut m = Self::zeros(a.rows(), half_bandwidth)?;
        for k in 0..=half_bandwidth {
            for i in 0..a.rows() - k {
                m.bands[k][i] = a[(i, i + k)];
            }
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn half_bandwidth(&self) -> usize {
        self.bands.len() - 1
    }

    pub fn band(&self, k: usize) -> &[f64] {
        &self.bands[k]
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        let (lo, hi) = if i <= j { (i, j) } else { (j, i) };
        self.bands.get(hi - lo).map_or(0.0, |band| band[lo])
    }

    /// Sets `(i, j)` and `(j, i)`. Panics outside the band.
    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        let (lo, hi) = if i <= j { (i, j) } else { (j, i) };
        self.bands[hi - lo][lo] = value;
    }

    pub fn to_dense(&self) -> DenseMatrix {
        DenseMatrix::from_fn(self.dim, self.dim, |i, j| self.get(i, j))
    }

    pub fn max_abs(&self) -> f64 {
        self.bands
            .iter()
            .flatten()
            .fold(0.0, |m: f64, v| m.max(v.abs()))
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self {
            dim: self.dim,
            bands: self
                .bands
                .iter()
                .map(|b| b.iter().map(|v| v * factor).collect())
                .collect(),
        }
    }
}
