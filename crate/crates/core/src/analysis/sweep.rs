use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::Family;
use crate::error::{require_at_least, Error, Result};
use crate::numerics::sym_eigs;

/// Full ascending spectrum of a candidate at one grid value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub param: f64,
    pub eigenvalues: Vec<f64>,
}

/// `steps` uniformly spaced values from `lo` to `hi`, both included.
pub fn uniform_grid(lo: f64, hi: f64, steps: usize) -> Result<Vec<f64>> {
    require_at_least("steps", steps, 2)?;
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::InvalidParameter {
            what: "range",
            reason: format!("need finite lo < hi, got [{lo}, {hi}]"),
        });
    }
    let last = (steps - 1) as f64;
    Ok((0..steps)
        .map(|i| {
            if i == steps - 1 {
                hi
            } else {
                lo + (hi - lo) * (i as f64 / last)
            }
        })
        .collect())
}

pub fn sweep_1d(n: usize, family: Family, lo: f64, hi: f64, steps: usize) -> Result<Vec<SweepRecord>> {
    let grid = uniform_grid(lo, hi, steps)?;
    // validate once so the parallel map cannot fail on shape
    family.candidate(n, lo)?;
    grid.into_par_iter()
        .map(|param| {
            let dense = family.candidate(n, param)?.to_dense();
            Ok(SweepRecord {
                param,
                eigenvalues: sym_eigs(&dense)?.values,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::zero_threshold;

    #[test]
    fn grid_is_inclusive() {
        let g = uniform_grid(-2.5, 2.5, 501).unwrap();
        assert_eq!(g.len(), 501);
        assert_eq!(g[0], -2.5);
        assert_eq!(g[250], 0.0);
        assert_eq!(g[500], 2.5);
        assert!(uniform_grid(1.0, 1.0, 4).is_err());
        assert!(uniform_grid(0.0, 1.0, 1).is_err());
    }

    #[test]
    fn k6_records() {
        let recs = sweep_1d(6, Family::K, -1.0, 1.0, 11).unwrap();
        assert_eq!(recs.len(), 11);
        let at_zero = &recs[5];
        assert_eq!(at_zero.param, 0.0);
        assert_eq!(at_zero.eigenvalues, vec![0.5, 1.0, 1.0, 1.0, 1.0, 1.0]);
        let at_06 = sweep_1d(6, Family::K, 0.6, 0.7, 2).unwrap();
        let negatives = at_06[0].eigenvalues.iter().filter(|v| **v < 0.0).count();
        assert_eq!(negatives, 1);
        assert!(recs.iter().all(|r| r.eigenvalues.windows(2).all(|w| w[0] <= w[1])));
    }

    #[test]
    fn l8_degeneracy_record() {
        let recs = sweep_1d(8, Family::L { lambda: 0.0 }, 0.5411961001, 0.6, 2).unwrap();
        assert!(recs[0].eigenvalues.iter().any(|v| v.abs() < 1e-8));
    }

    #[test]
    fn inertia_changes_only_near_small_eigenvalues() {
        // a fine sweep: n_negative may only change between points where
        // some eigenvalue is already small
        let steps = 4001;
        let recs = sweep_1d(6, Family::K, -2.5, 2.5, steps).unwrap();
        let cell = 5.0 / (steps - 1) as f64;
        let tau_crossing = 4.0 * cell;
        for w in recs.windows(2) {
            let neg = |r: &SweepRecord| {
                r.eigenvalues
                    .iter()
                    .filter(|v| **v < -zero_threshold(2.5))
                    .count()
            };
            if neg(&w[0]) != neg(&w[1]) {
                let small = w
                    .iter()
                    .flat_map(|r| &r.eigenvalues)
                    .fold(f64::INFINITY, |m, v| m.min(v.abs()));
                assert!(small < tau_crossing, "jump at {}", w[0].param);
            }
        }
    }
}
