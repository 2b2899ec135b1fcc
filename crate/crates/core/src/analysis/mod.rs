//! Parameter-space exploration of the band metric families: 1-D eigenvalue
//! sweeps, inertia classification, horizon root-finding, asymptotic slopes
//! and 2-D positivity scans.

mod asymptotics;
mod boundary;
mod horizon;
mod scan;
mod signature;
mod sweep;

use serde::{Deserialize, Serialize};

use crate::band::BandSymmetricMatrix;
use crate::error::Result;
use crate::metrics::{k_matrix, l_matrix, MetricCandidate, MetricMatrix};

pub use asymptotics::{
    asymptotic_slopes, small_lambda_slopes, SmallLambdaStar, DEFAULT_ASYMPTOTIC_PROBE,
    DEFAULT_SMALL_STEP,
};
pub use boundary::{
    boundary_linearity_test, boundary_points, BoundaryPoint, LinearityReport, SegmentFit,
    DEFAULT_SEGMENT_TOL,
};
pub use horizon::{
    compare_horizon_formulas, horizon_roots_1d, horizon_roots_1d_with_grid, Crossing,
    DomainBoundary, HorizonComparison, HorizonForm, HORIZON_GRID_STEPS, HORIZON_MATCH_TOL,
};
pub use scan::{l_min_eig_field, scan_2d, scan_field, Scan2d, ScanRecord};
pub use signature::{
    classify, classify_spectrum, zero_threshold, SignatureLabel, SignatureReport,
};
pub use sweep::{sweep_1d, uniform_grid, SweepRecord};

/// One-parameter band family swept by the 1-D tools.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    /// `K(λ)`, parameter `λ`.
    K,
    /// `L(λ, μ)` at fixed `λ`, parameter `μ`.
    L { lambda: f64 },
}

impl Family {
    pub fn candidate(&self, n: usize, param: f64) -> Result<MetricCandidate> {
        match *self {
            Family::K => k_matrix(n, param),
            Family::L { lambda } => l_matrix(n, lambda, param),
        }
    }

    pub fn band(&self, n: usize, param: f64) -> Result<BandSymmetricMatrix> {
        match self.candidate(n, param)?.matrix {
            MetricMatrix::Band(b) => Ok(b),
            MetricMatrix::Dense(_) => unreachable!("closed-form families are banded"),
        }
    }

    pub fn half_bandwidth(&self) -> usize {
        match self {
            Family::K => 1,
            Family::L { .. } => 2,
        }
    }

    /// Name of the swept parameter.
    pub fn parameter_name(&self) -> &'static str {
        match self {
            Family::K => "lambda",
            Family::L { .. } => "mu",
        }
    }
}
