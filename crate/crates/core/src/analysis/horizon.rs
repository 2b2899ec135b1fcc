//! Horizon root-finding: locating where a band family changes inertia.
//!
//! Crossings are detected as changes of the negative-eigenvalue count
//! between neighbouring points of a refinement grid and then bisected on
//! that count, so double zeros (two eigenvalues vanishing together, with no
//! sign change of the determinant) are found as reliably as simple ones.

use serde::{Deserialize, Serialize};

use super::Family;
use crate::chebpoly::{cheb_zeros, PolyKind};
use crate::error::{require_at_least, Error, Result};
use crate::numerics::{sym_eigs, tridiagonalize};

use super::sweep::uniform_grid;

/// Default number of refinement-grid points for [`horizon_roots_1d`].
pub const HORIZON_GRID_STEPS: usize = 2001;
/// Agreement required between a closed-form horizon and the bisected one.
pub const HORIZON_MATCH_TOL: f64 = 1e-8;

/// One inertia change.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Crossing {
    pub location: f64,
    pub negative_before: usize,
    pub negative_after: usize,
    /// Smallest `|eigenvalue|` at `location`; ~0 at a genuine crossing.
    pub min_abs_eigenvalue: f64,
}

/// Sorted inertia-change points of a family over a search interval.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DomainBoundary {
    pub n: usize,
    pub half_bandwidth: usize,
    pub family: Family,
    pub search: (f64, f64),
    pub grid_steps: usize,
    pub tol: f64,
    pub crossings: Vec<Crossing>,
}

impl DomainBoundary {
    pub fn points(&self) -> Vec<f64> {
        self.crossings.iter().map(|c| c.location).collect()
    }
}

pub fn horizon_roots_1d(n: usize, family: Family, lo: f64, hi: f64, tol: f64) -> Result<DomainBoundary> {
    horizon_roots_1d_with_grid(n, family, lo, hi, tol, HORIZON_GRID_STEPS)
}

pub fn horizon_roots_1d_with_grid(
    n: usize,
    family: Family,
    lo: f64,
    hi: f64,
    tol: f64,
    grid_steps: usize,
) -> Result<DomainBoundary> {
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter {
            what: "tol",
            reason: format!("must be positive, got {tol}"),
        });
    }
    let grid = uniform_grid(lo, hi, grid_steps)?;
    let negatives = |x: f64| -> Result<usize> { Ok(tridiagonalize(&family.band(n, x)?).count_below(0.0)) };

    let mut crossings = Vec::new();
    let mut prev = (grid[0], negatives(grid[0])?);
    for &x in &grid[1..] {
        let cur = (x, negatives(x)?);
        refine(prev, cur, tol, &negatives, &mut crossings)?;
        prev = cur;
    }
    if crossings.is_empty() {
        return Err(Error::NoCrossings { lo, hi });
    }
    for c in &mut crossings {
        let values = sym_eigs(&family.candidate(n, c.location)?.to_dense())?.values;
        c.min_abs_eigenvalue = values.iter().fold(f64::INFINITY, |m, v| m.min(v.abs()));
    }
    Ok(DomainBoundary {
        n,
        half_bandwidth: family.half_bandwidth(),
        family,
        search: (lo, hi),
        grid_steps,
        tol,
        crossings,
    })
}

fn refine(
    (a, ca): (f64, usize),
    (b, cb): (f64, usize),
    tol: f64,
    count: &dyn Fn(f64) -> Result<usize>,
    out: &mut Vec<Crossing>,
) -> Result<()> {
    if ca == cb {
        return Ok(());
    }
    let mid = 0.5 * (a + b);
    if b - a <= tol || mid <= a || mid >= b {
        out.push(Crossing {
            location: mid,
            negative_before: ca,
            negative_after: cb,
            min_abs_eigenvalue: f64::NAN,
        });
        return Ok(());
    }
    let cm = count(mid)?;
    refine((a, ca), (mid, cm), tol, count, out)?;
    refine((mid, cm), (b, cb), tol, count, out)
}

/// Closed forms offered for the `N = 2p` tridiagonal horizon.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HorizonForm {
    /// Upper end of the interval `(cos((p+1)π/(2p+1)), cos(pπ/(2p+1)))`.
    IntervalCosine,
    /// Twice the smallest positive zero of `T(2p, ·)`.
    DoubledFirstKindZero,
}

/// Numerical `K(λ)` positivity boundary at `N = 2p` against the two
/// closed-form candidates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HorizonComparison {
    pub p: usize,
    pub n: usize,
    pub numerical_boundary: f64,
    /// First crossing on the negative side, expected at `-numerical_boundary`.
    pub negative_boundary: f64,
    pub interval_cosine: f64,
    pub interval_cosine_deviation: f64,
    pub doubled_first_kind_zero: f64,
    pub doubled_first_kind_zero_deviation: f64,
    pub tolerance: f64,
    pub matches: Vec<HorizonForm>,
}

pub fn compare_horizon_formulas(p: usize) -> Result<HorizonComparison> {
    require_at_least("p", p, 2)?;
    let n = 2 * p;
    let tol = 1e-13;
    let positive = horizon_roots_1d(n, Family::K, 0.0, 2.5, tol)?;
    let negative = horizon_roots_1d(n, Family::K, -2.5, 0.0, tol)?;
    let numerical_boundary = positive.crossings[0].location;
    let negative_boundary = negative.crossings.last().map_or(f64::NAN, |c| c.location);

    let pf = p as f64;
    let interval_cosine = (pf * std::f64::consts::PI / (2.0 * pf + 1.0)).cos();
    let smallest_zero = cheb_zeros(PolyKind::FirstKind, n)?
        .into_iter()
        .filter(|z| *z > 0.0)
        .fold(f64::INFINITY, f64::min);
    let doubled_first_kind_zero = 2.0 * smallest_zero;

    let interval_cosine_deviation = (numerical_boundary - interval_cosine).abs();
    let doubled_first_kind_zero_deviation = (numerical_boundary - doubled_first_kind_zero).abs();
    let mut matches = Vec::new();
    if interval_cosine_deviation < HORIZON_MATCH_TOL {
        matches.push(HorizonForm::IntervalCosine);
    }
    if doubled_first_kind_zero_deviation < HORIZON_MATCH_TOL {
        matches.push(HorizonForm::DoubledFirstKindZero);
    }
    Ok(HorizonComparison {
        p,
        n,
        numerical_boundary,
        negative_boundary,
        interval_cosine,
        interval_cosine_deviation,
        doubled_first_kind_zero,
        doubled_first_kind_zero_deviation,
        tolerance: HORIZON_MATCH_TOL,
        matches,
    })
}
