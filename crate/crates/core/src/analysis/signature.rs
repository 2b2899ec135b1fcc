use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::metrics::MetricCandidate;
use crate::numerics::sym_eigs;

/// Classification of a symmetric candidate by its inertia.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SignatureLabel {
    /// Positive definite: a genuine metric.
    Metric,
    /// Exactly one negative eigenvalue (Pontryagin-space pseudometric).
    PontryaginOneMinus,
    /// As many negative as positive eigenvalues (Krein-space pseudometric).
    KreinBalanced,
    /// Invertible, any other signature.
    Indefinite,
    /// At least one eigenvalue within the zero threshold.
    Singular,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SignatureReport {
    pub n_positive: usize,
    pub n_negative: usize,
    pub n_zero: usize,
    pub min_abs_eigenvalue: f64,
    pub min_eigenvalue: f64,
    pub label: SignatureLabel,
}

/// Zero threshold for inertia counts: `1e-9 · max(1, ‖Θ‖_max)`.
pub fn zero_threshold(max_abs: f64) -> f64 {
    1e-9 * max_abs.max(1.0)
}

/// Labels a spectrum. `Singular` wins over everything, then `Metric`; a
/// balanced signature is reported as `KreinBalanced` before the one-minus
/// check, which only matters for `N = 2`.
pub fn classify_spectrum(values: &[f64], tau: f64) -> SignatureReport {
    let n_negative = values.iter().filter(|v| **v < -tau).count();
    let n_positive = values.iter().filter(|v| **v > tau).count();
    let n_zero = values.len() - n_negative - n_positive;
    let label = if n_zero > 0 {
        SignatureLabel::Singular
    } else if n_negative == 0 {
        SignatureLabel::Metric
    } else if n_negative == n_positive {
        SignatureLabel::KreinBalanced
    } else if n_negative == 1 {
        SignatureLabel::PontryaginOneMinus
    } else {
        SignatureLabel::Indefinite
    };
    SignatureReport {
        n_positive,
        n_negative,
        n_zero,
        min_abs_eigenvalue: values.iter().fold(f64::INFINITY, |m, v| m.min(v.abs())),
        min_eigenvalue: values.iter().copied().fold(f64::INFINITY, f64::min),
        label,
    }
}

pub fn classify(theta: &MetricCandidate) -> Result<SignatureReport> {
    let dense = theta.to_dense();
    let values = sym_eigs(&dense)?.values;
    Ok(classify_spectrum(&values, zero_threshold(dense.max_abs())))
}
