use serde::{Deserialize, Serialize};

use crate::error::{require_at_least, Error, Result};
use crate::metrics::k_matrix;
use crate::numerics::sym_eigs;

pub const DEFAULT_ASYMPTOTIC_PROBE: f64 = 1e6;
pub const DEFAULT_SMALL_STEP: f64 = 1e-6;

/// Eigenvalues of `K(λ)` divided by `λ` at a large probe value, ascending.
/// The error against the `λ → ∞` slopes is `O(1/λ)`.
pub fn asymptotic_slopes(n: usize, lambda_probe: f64) -> Result<Vec<f64>> {
    if !(lambda_probe >= 1e4) || !lambda_probe.is_finite() {
        return Err(Error::InvalidParameter {
            what: "lambda_probe",
            reason: format!("must be at least 1e4, got {lambda_probe}"),
        });
    }
    let values = sym_eigs(&k_matrix(n, lambda_probe)?.to_dense())?.values;
    Ok(values.into_iter().map(|v| v / lambda_probe).collect())
}

/// Finite-difference slopes of `K(λ)` eigenvalues at `λ = 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SmallLambdaStar {
    pub step: f64,
    /// `k_1(0)`, the isolated eigenvalue `1/2`.
    pub lowest_at_zero: f64,
    pub lowest_slope: f64,
    /// Slopes `(k_j(h) - k_j(0))/h` of the `N - 1` eigenvalues that start at
    /// `1`, ascending.
    pub star_slopes: Vec<f64>,
}

pub fn small_lambda_slopes(n: usize, step: f64) -> Result<SmallLambdaStar> {
    require_at_least("dimension", n, 2)?;
    if !(step > 0.0) {
        return Err(Error::InvalidParameter {
            what: "step",
            reason: format!("must be positive, got {step}"),
        });
    }
    let at_zero = sym_eigs(&k_matrix(n, 0.0)?.to_dense())?.values;
    let at_step = sym_eigs(&k_matrix(n, step)?.to_dense())?.values;
    let slopes: Vec<f64> = at_zero
        .iter()
        .zip(&at_step)
        .map(|(a, b)| (b - a) / step)
        .collect();
    Ok(SmallLambdaStar {
        step,
        lowest_at_zero: at_zero[0],
        lowest_slope: slopes[0],
        star_slopes: slopes[1..].to_vec(),
    })
}
