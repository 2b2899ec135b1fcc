//! Boundary extraction and straight-segment testing for 2-D scans.
//!
//! Boundary points are bisected along every grid edge that joins an inside
//! and an outside point. Each point carries the unit normal of the field
//! there; walking the points in angular order around the inside centroid, a
//! new segment starts wherever the normal turns by more than `segment_tol`
//! radians. Every segment is then fitted with a total-least-squares line.
//! A straight-edged polygon splits at its corners into segments of tiny
//! deviation; a smooth curved boundary never splits and fails the fit.

use serde::{Deserialize, Serialize};

use super::scan::Scan2d;
use crate::error::{Error, Result};

/// Default normal-turn threshold between consecutive boundary points.
pub const DEFAULT_SEGMENT_TOL: f64 = 0.3;
const EDGE_BISECTIONS: usize = 60;
const GRADIENT_STEP: f64 = 1e-6;
const MIN_SEGMENT_POINTS: usize = 3;
/// Allowed deviation, in grid cells.
const LINEARITY_CELLS: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundaryPoint {
    pub lambda: f64,
    pub mu: f64,
    /// Unit gradient of the field, pointing into the region.
    pub normal: (f64, f64),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SegmentFit {
    pub n_points: usize,
    pub centroid: (f64, f64),
    /// Unit direction of the fitted line.
    pub direction: (f64, f64),
    pub max_deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearityReport {
    pub n_boundary_points: usize,
    pub segment_tol: f64,
    pub cell_size: f64,
    pub threshold: f64,
    /// Largest deviation over segments with at least three points.
    pub max_deviation: f64,
    pub segments: Vec<SegmentFit>,
    /// Segments too short to test (one or two points), kept in `segments`
    /// but excluded from `max_deviation`. A coarse grid can land only a
    /// couple of points on a short edge.
    pub short_segments: usize,
    /// Requires every fitted segment within `threshold` and at least half of
    /// the boundary points in fitted segments.
    pub linear: bool,
}

/// Boundary points of the scan's inside set, bisected against `field`
/// (positive inside), in grid-edge order.
pub fn boundary_points(scan: &Scan2d, field: &(dyn Fn(f64, f64) -> f64 + Sync)) -> Vec<BoundaryPoint> {
    let (nl, nm) = (scan.n_lambda(), scan.n_mu());
    let mut out = Vec::new();
    for i in 0..nl {
        for j in 0..nm {
            let here = scan.inside(i, j);
            let p = (scan.lambda_axis[i], scan.mu_axis[j]);
            if i + 1 < nl && scan.inside(i + 1, j) != here {
                out.extend(bisect_edge(field, p, (scan.lambda_axis[i + 1], p.1)));
            }
            if j + 1 < nm && scan.inside(i, j + 1) != here {
                out.extend(bisect_edge(field, p, (p.0, scan.mu_axis[j + 1])));
            }
        }
    }
    out
}

fn bisect_edge(
    field: &(dyn Fn(f64, f64) -> f64 + Sync),
    a: (f64, f64),
    b: (f64, f64),
) -> Option<BoundaryPoint> {
    let side = |p: (f64, f64)| field(p.0, p.1) > 0.0;
    let (mut lo, mut hi) = (a, b);
    let lo_side = side(lo);
    if lo_side == side(hi) {
        return None;
    }
    for _ in 0..EDGE_BISECTIONS {
        let mid = (0.5 * (lo.0 + hi.0), 0.5 * (lo.1 + hi.1));
        if side(mid) == lo_side {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let (lambda, mu) = (0.5 * (lo.0 + hi.0), 0.5 * (lo.1 + hi.1));
    let h = GRADIENT_STEP;
    let gx = (field(lambda + h, mu) - field(lambda - h, mu)) / (2.0 * h);
    let gy = (field(lambda, mu + h) - field(lambda, mu - h)) / (2.0 * h);
    let norm = gx.hypot(gy);
    let normal = if norm > 0.0 && norm.is_finite() {
        (gx / norm, gy / norm)
    } else {
        (0.0, 0.0)
    };
    Some(BoundaryPoint { lambda, mu, normal })
}

pub fn boundary_linearity_test(
    scan: &Scan2d,
    field: &(dyn Fn(f64, f64) -> f64 + Sync),
    segment_tol: f64,
) -> Result<LinearityReport> {
    if !(segment_tol > 0.0) {
        return Err(Error::InvalidParameter {
            what: "segment_tol",
            reason: format!("must be positive, got {segment_tol}"),
        });
    }
    let inside: Vec<(f64, f64)> = scan
        .records
        .iter()
        .filter(|r| r.inside())
        .map(|r| (r.lambda, r.mu))
        .collect();
    if inside.is_empty() || inside.len() == scan.records.len() {
        return Err(Error::InsufficientBoundary(
            "scan needs both inside and outside points".into(),
        ));
    }
    let centre = mean(&inside);

    let mut points = boundary_points(scan, field);
    if points.len() < MIN_SEGMENT_POINTS {
        return Err(Error::InsufficientBoundary(format!(
            "{} boundary points found",
            points.len()
        )));
    }
    points.sort_by(|p, q| {
        let ap = (p.mu - centre.1).atan2(p.lambda - centre.0);
        let aq = (q.mu - centre.1).atan2(q.lambda - centre.0);
        ap.total_cmp(&aq)
    });

    let turned = |p: &BoundaryPoint, q: &BoundaryPoint| {
        let c = p.normal.0 * q.normal.0 + p.normal.1 * q.normal.1;
        c.clamp(-1.0, 1.0).acos() > segment_tol
    };
    let mut groups: Vec<Vec<BoundaryPoint>> = vec![vec![points[0]]];
    for w in points.windows(2) {
        if turned(&w[0], &w[1]) {
            groups.push(Vec::new());
        }
        groups.last_mut().expect("non-empty").push(w[1]);
    }
    if groups.len() > 1 && !turned(&points[points.len() - 1], &points[0]) {
        let mut tail = groups.pop().expect("non-empty");
        tail.append(&mut groups[0]);
        groups[0] = tail;
    }

    let segments: Vec<SegmentFit> = groups.iter().map(|g| fit_line(g)).collect();
    let fitted = || segments.iter().filter(|s| s.n_points >= MIN_SEGMENT_POINTS);
    let short_segments = segments.len() - fitted().count();
    let fitted_points: usize = fitted().map(|s| s.n_points).sum();

    let (dl, dm) = scan.cell_size();
    let cell_size = dl.min(dm);
    let threshold = LINEARITY_CELLS * cell_size;
    let max_deviation = fitted().fold(0.0, |m: f64, s| m.max(s.max_deviation));
    Ok(LinearityReport {
        n_boundary_points: points.len(),
        segment_tol,
        cell_size,
        threshold,
        max_deviation,
        linear: max_deviation < threshold && 2 * fitted_points >= points.len(),
        segments,
        short_segments,
    })
}

fn mean(points: &[(f64, f64)]) -> (f64, f64) {
    let n = points.len() as f64;
    let (sx, sy) = points
        .iter()
        .fold((0.0, 0.0), |(a, b), (x, y)| (a + x, b + y));
    (sx / n, sy / n)
}

fn fit_line(points: &[BoundaryPoint]) -> SegmentFit {
    let xy: Vec<(f64, f64)> = points.iter().map(|p| (p.lambda, p.mu)).collect();
    let c = mean(&xy);
    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for (x, y) in &xy {
        let (dx, dy) = (x - c.0, y - c.1);
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    // principal axis of the 2x2 scatter matrix
    let theta = 0.5 * (2.0 * sxy).atan2(sxx - syy);
    let direction = (theta.cos(), theta.sin());
    let normal = (-direction.1, direction.0);
    let max_deviation = xy
        .iter()
        .map(|(x, y)| ((x - c.0) * normal.0 + (y - c.1) * normal.1).abs())
        .fold(0.0, f64::max);
    SegmentFit {
        n_points: points.len(),
        centroid: c,
        direction,
        max_deviation,
    }
}
