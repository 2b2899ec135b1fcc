//! The verification suite behind `chebwell verify`.
//!
//! Each check measures one scalar, compares it with a fixed threshold and
//! records a short human-readable detail string. Sizes scale down with
//! [`VerifyOptions::max_n`]; fixed-dimension checks (N = 6, 8) always run.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::analysis::{
    asymptotic_slopes, boundary_linearity_test, classify, compare_horizon_formulas,
    horizon_roots_1d, l_min_eig_field, scan_2d, small_lambda_slopes, Family, LinearityReport,
    SignatureLabel, DEFAULT_ASYMPTOTIC_PROBE, DEFAULT_SEGMENT_TOL, DEFAULT_SMALL_STEP,
};
use crate::chebpoly::{cheb_zeros, PolyKind};
use crate::error::Result;
use crate::export::{csv_string, to_json, write_boundary_csv, write_scan_csv};
use crate::lattice::{
    build_hamiltonian, closed_form_eigensystem, closed_form_energies, numerical_energies,
    verify_eigensystem, ModelKind,
};
use crate::metrics::{
    band_metric_basis, hermitize_check, intertwining_residual, k_matrix, l_matrix,
    span_fit_residual, spectral_metric, MetricCandidate, MetricMatrix,
};

#[allow(clippy::approx_constant)]
pub const K6_THRESHOLDS: [f64; 3] = [0.5176380902, 0.7071067812, 1.9318516526];
pub const K6_ASYMPTOTIC_SLOPES: [f64; 3] = [1.801937736, 1.246979604, 0.4450418679];
pub const L8_DEGENERACIES: [f64; 2] = [0.5411961001, 1.306562965];
pub const SCAN_GRID: usize = 200;
pub const SCAN_LAMBDA_RANGE: (f64, f64) = (-1.0, 1.0);
pub const SCAN_MU_RANGE: (f64, f64) = (-1.5, 1.5);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyOptions {
    pub max_n: usize,
    /// Negative control: builds `K(λ)` with a wrong `(1,1)` corner.
    pub corrupt_k_corner: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            max_n: 200,
            corrupt_k_corner: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub id: u32,
    pub name: String,
    pub measured: f64,
    pub threshold: f64,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub options: VerifyOptions,
    pub passed: bool,
    pub checks: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn failures(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

struct Suite {
    opts: VerifyOptions,
    out: Vec<CheckOutcome>,
}

fn outcome(id: u32, name: &str, measured: f64, threshold: f64, extra_ok: bool, detail: String) -> CheckOutcome {
    CheckOutcome {
        id,
        name: name.to_string(),
        measured,
        threshold,
        passed: extra_ok && measured.is_finite() && measured < threshold,
        detail,
    }
}

fn errored(id: u32, name: &str, threshold: f64, e: crate::Error) -> CheckOutcome {
    CheckOutcome {
        id,
        name: name.to_string(),
        measured: f64::NAN,
        threshold,
        passed: false,
        detail: format!("error: {e}"),
    }
}

impl Suite {
    fn cap(&self, n: usize) -> usize {
        n.min(self.opts.max_n)
    }

    fn k(&self, n: usize, lambda: f64) -> Result<MetricCandidate> {
        let mut c = k_matrix(n, lambda)?;
        if self.opts.corrupt_k_corner {
            if let MetricMatrix::Band(b) = &mut c.matrix {
                b.set(0, 0, 1.0);
            }
        }
        Ok(c)
    }

    fn push(&mut self, id: u32, name: &str, threshold: f64, r: Result<(f64, bool, String)>) {
        self.out.push(match r {
            Ok((m, ok, detail)) => outcome(id, name, m, threshold, ok, detail),
            Err(e) => errored(id, name, threshold, e),
        });
    }
}

fn max_dev(a: &[f64], b: &[f64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn closed_form_spectra(s: &Suite) -> Result<(f64, bool, String)> {
    let top = s.cap(200);
    let mut worst = 0.0f64;
    for kind in [ModelKind::FirstKindWell, ModelKind::SecondKindWell] {
        for n in 1..=top {
            let closed = closed_form_energies(kind, n)?;
            let numeric = numerical_energies(&build_hamiltonian(kind, n)?)?;
            worst = worst.max(max_dev(&closed, &numeric));
        }
    }
    Ok((worst, true, format!("N = 1..={top}, both models")))
}

fn biorthogonal_completeness(s: &Suite) -> Result<(f64, bool, String)> {
    let top = s.cap(40);
    let mut worst = 0.0f64;
    for n in 2..=top {
        let h = build_hamiltonian(ModelKind::FirstKindWell, n)?;
        let es = closed_form_eigensystem(ModelKind::FirstKindWell, n)?;
        worst = worst.max(verify_eigensystem(&h, &es)?.max());
    }
    Ok((worst, true, format!("N = 2..={top}")))
}

fn ketket_structure(s: &Suite) -> Result<(f64, bool, String)> {
    let top = s.cap(40);
    let mut worst = 0.0f64;
    let mut exact = true;
    for n in 1..=top {
        let h = build_hamiltonian(ModelKind::FirstKindWell, n)?;
        let es = closed_form_eigensystem(ModelKind::FirstKindWell, n)?;
        for (r, l) in es.right().iter().zip(es.left()) {
            exact &= l[0] == 0.5 * r[0] && l[1..] == r[1..];
        }
        let rep = verify_eigensystem(&h, &es)?;
        worst = worst.max(rep.right).max(rep.left);
    }
    let detail = format!("N = 1..={top}, halved-first-component exact: {exact}");
    Ok((worst, exact, detail))
}

fn spectral_metric_check(s: &Suite) -> Result<(f64, bool, String)> {
    let top = s.cap(12);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0004);
    let mut worst = 0.0f64;
    let mut all_positive = true;
    let mut trials = 0;
    for n in 1..=top {
        let h = build_hamiltonian(ModelKind::FirstKindWell, n)?;
        let es = closed_form_eigensystem(ModelKind::FirstKindWell, n)?;
        for _ in 0..50 {
            let nu: Vec<f64> = (0..n).map(|_| rng.gen_range(0.2..3.0)).collect();
            let rep = hermitize_check(&h, &spectral_metric(&es, &nu)?)?;
            worst = worst.max(rep.intertwining_residual / rep.scale);
            all_positive &= rep.is_positive_definite();
            trials += 1;
        }
    }
    let detail = format!("{trials} draws, N = 1..={top}, all positive definite: {all_positive}");
    Ok((worst, all_positive, detail))
}

fn n6_thresholds(s: &Suite) -> Result<(f64, bool, String)> {
    let roots = horizon_roots_1d(6, Family::K, 0.0, 2.5, 1e-13)?.points();
    let dev = max_dev(&roots, &K6_THRESHOLDS);
    let mut labels_ok = true;
    let mut seen = Vec::new();
    for (lambda, want) in [
        (0.1, SignatureLabel::Metric),
        (0.6, SignatureLabel::PontryaginOneMinus),
        (2.0, SignatureLabel::KreinBalanced),
    ] {
        let got = classify(&s.k(6, lambda)?)?.label;
        labels_ok &= got == want;
        seen.push(format!("{lambda}: {got:?}"));
    }
    let detail = format!("roots {roots:?}; labels [{}]", seen.join(", "));
    Ok((dev, labels_ok, detail))
}

fn first_threshold_identity(_: &Suite) -> Result<(f64, bool, String)> {
    let first = horizon_roots_1d(6, Family::K, 0.0, 2.5, 1e-14)?.crossings[0].location;
    let zero = cheb_zeros(PolyKind::FirstKind, 6)?
        .into_iter()
        .filter(|z| *z > 0.0)
        .fold(f64::INFINITY, f64::min);
    let dev = (first - 2.0 * zero).abs();
    Ok((dev, true, format!("boundary {first:.12}, 2 x zero {:.12}", 2.0 * zero)))
}

fn asymptotic_slope_check(_: &Suite) -> Result<(f64, bool, String)> {
    let mut slopes = asymptotic_slopes(6, DEFAULT_ASYMPTOTIC_PROBE)?;
    slopes.sort_by(f64::total_cmp);
    let mut printed: Vec<f64> = K6_ASYMPTOTIC_SLOPES
        .iter()
        .flat_map(|v| [*v, -*v])
        .collect();
    printed.sort_by(f64::total_cmp);
    let mut second_kind: Vec<f64> = cheb_zeros(PolyKind::SecondKind, 6)?
        .into_iter()
        .map(|z| 2.0 * z)
        .collect();
    second_kind.sort_by(f64::total_cmp);
    let a = max_dev(&slopes, &printed);
    let b = max_dev(&slopes, &second_kind);
    Ok((a.max(b), true, format!("vs printed {a:.3e}, vs 2 x U zeros {b:.3e}")))
}

fn small_lambda_star(_: &Suite) -> Result<(f64, bool, String)> {
    let star = small_lambda_slopes(6, DEFAULT_SMALL_STEP)?;
    let r3 = 3f64.sqrt();
    let expected = [-r3, -1.0, 0.0, 1.0, r3];
    let dev = max_dev(&star.star_slopes, &expected);
    let exact = star.lowest_at_zero == 0.5;
    Ok((dev, exact, format!("k_1(0) = {}", star.lowest_at_zero)))
}

fn l8_boundary(_: &Suite) -> Result<crate::analysis::DomainBoundary> {
    horizon_roots_1d(8, Family::L { lambda: 0.0 }, 0.0, 2.0, 1e-13)
}

fn pentadiagonal_degeneracies(s: &Suite) -> Result<(f64, bool, String)> {
    let b = l8_boundary(s)?;
    let pts = b.points();
    let dev = max_dev(&pts, &L8_DEGENERACIES);
    Ok((dev, true, format!("crossings {pts:?}")))
}

fn band_basis(s: &Suite) -> Result<(f64, bool, String)> {
    let top = s.cap(10);
    let mut dims_ok = true;
    let mut worst = 0.0f64;
    for n in 4..=top {
        let h = build_hamiltonian(ModelKind::FirstKindWell, n)?;
        for b in 0..=2 {
            let basis = band_metric_basis(&h, b)?;
            dims_ok &= basis.len() == b + 1;
            if b == 1 {
                worst = worst.max(span_fit_residual(&s.k(n, 0.37)?.to_dense(), &basis));
            }
            if b == 2 {
                let l = l_matrix(n, 0.37, -0.21)?.to_dense();
                worst = worst.max(span_fit_residual(&l, &basis));
            }
        }
    }
    Ok((worst, dims_ok, format!("N = 4..={top}, b = 0..=2, dimensions b+1: {dims_ok}")))
}

fn k_intertwining(s: &Suite) -> Result<(f64, bool, String)> {
    let mut worst = 0.0f64;
    for n in 2..=s.cap(12).max(2) {
        let h = build_hamiltonian(ModelKind::FirstKindWell, n)?;
        for lambda in [-1.3, 0.3, 2.0] {
            let k = s.k(n, lambda)?;
            worst = worst.max(intertwining_residual(&h, &k)? / k.max_abs());
        }
    }
    Ok((worst, true, "K(λ) against the first-kind chain".into()))
}

fn horizon_adjudication(_: &Suite) -> Result<(f64, bool, String)> {
    let c = compare_horizon_formulas(3)?;
    let json = to_json(&c)?;
    let dev = (c.numerical_boundary - K6_THRESHOLDS[0]).abs();
    let ok = !json.trim().is_empty() && c.interval_cosine_deviation.is_finite();
    let detail = format!(
        "boundary {:.10}, interval-cosine deviation {:.10}, doubled-zero deviation {:.3e}",
        c.numerical_boundary, c.interval_cosine_deviation, c.doubled_first_kind_zero_deviation
    );
    Ok((dev, ok, detail))
}

/// The 200 x 200 `L^(8)` scan with its linearity report.
pub fn positivity_domain() -> Result<(crate::analysis::Scan2d, LinearityReport)> {
    let scan = scan_2d(8, SCAN_LAMBDA_RANGE, SCAN_MU_RANGE, SCAN_GRID, SCAN_GRID)?;
    let field = l_min_eig_field(8);
    let report = boundary_linearity_test(&scan, &field, DEFAULT_SEGMENT_TOL)?;
    Ok((scan, report))
}

fn positivity_domain_check(scan: &crate::analysis::Scan2d, rep: &LinearityReport) -> (f64, bool, String) {
    let (i, j) = scan.nearest(0.0, 0.0);
    let contains_origin = scan.inside(i, j);
    let components = scan.inside_components();
    let mirror = scan.lambda_mirror_mismatches();
    let ok = contains_origin && components == 1 && mirror == 0 && rep.linear;
    let detail = format!(
        "origin inside: {contains_origin}, components: {components}, mirror mismatches: {mirror}, \
         segments: {}, max deviation {:.3e} vs {:.3e}",
        rep.segments.len(),
        rep.max_deviation,
        rep.threshold
    );
    (rep.max_deviation / rep.threshold, ok, detail)
}

/// Serialised outputs of criteria 5, 9 and 12, compared byte-for-byte.
fn artifacts(s: &Suite) -> Result<Vec<String>> {
    let k6 = horizon_roots_1d(6, Family::K, 0.0, 2.5, 1e-13)?;
    let l8 = l8_boundary(s)?;
    let (scan, rep) = positivity_domain()?;
    Ok(vec![
        csv_string(|b| write_boundary_csv(b, &k6))?,
        to_json(&k6)?,
        csv_string(|b| write_boundary_csv(b, &l8))?,
        csv_string(|b| write_scan_csv(b, &scan))?,
        to_json(&rep)?,
    ])
}

pub fn run_all(opts: VerifyOptions) -> VerifyReport {
    let mut s = Suite { opts, out: Vec::new() };
    let r = closed_form_spectra(&s);
    s.push(1, "closed_form_spectra", 1e-10, r);
    let r = biorthogonal_completeness(&s);
    s.push(2, "biorthogonal_completeness", 1e-10, r);
    let r = ketket_structure(&s);
    s.push(3, "ketket_structure", 1e-12, r);
    let r = spectral_metric_check(&s);
    s.push(4, "spectral_metric", 1e-10, r);
    let r = n6_thresholds(&s);
    s.push(5, "n6_horizon_thresholds", 1e-8, r);
    let r = first_threshold_identity(&s);
    s.push(6, "first_threshold_identity", 1e-10, r);
    let r = asymptotic_slope_check(&s);
    s.push(7, "asymptotic_slopes", 1e-5, r);
    let r = small_lambda_star(&s);
    s.push(8, "small_lambda_star", 1e-4, r);
    let r = pentadiagonal_degeneracies(&s);
    s.push(9, "pentadiagonal_degeneracies", 1e-8, r);
    let r = band_basis(&s);
    s.push(10, "band_basis_dimensions", 1e-10, r);
    let r = horizon_adjudication(&s);
    s.push(11, "horizon_formula_adjudication", 1e-8, r);
    let domain = positivity_domain();
    match &domain {
        Ok((scan, rep)) => {
            let (m, ok, d) = positivity_domain_check(scan, rep);
            s.out.push(outcome(12, "positivity_domain", m, 1.0, ok, d));
        }
        Err(e) => s.out.push(errored(12, "positivity_domain", 1.0, e.clone())),
    }
    let r = artifacts(&s).and_then(|a| {
        let b = artifacts(&s)?;
        let differing = a.iter().zip(&b).filter(|(x, y)| x != y).count();
        Ok((differing as f64, true, format!("{} artifacts compared", a.len())))
    });
    s.push(13, "determinism", 0.5, r);
    let r = k_intertwining(&s);
    s.push(14, "k_intertwining", 1e-12, r);

    let passed = s.out.iter().all(|c| c.passed);
    VerifyReport {
        options: opts,
        passed,
        checks: s.out,
    }
}
