//! One-sided (Hestenes) Jacobi SVD. Singular values come out to high
//! relative accuracy, which matters here: the intertwining systems are
//! exactly singular and the kernel is read off the smallest values.

use super::DenseMatrix;

/// Default relative threshold separating kernel directions.
pub const DEFAULT_KERNEL_TOL: f64 = 1e-10;
const MAX_SWEEPS: usize = 80;

/// Singular values and right singular vectors, ordered by descending
/// singular value.
#[derive(Debug, Clone, PartialEq)]
pub struct SingularSystem {
    pub values: Vec<f64>,
    /// `right[k]` pairs with `values[k]`.
    pub right: Vec<Vec<f64>>,
}

pub fn jacobi_svd(a: &DenseMatrix) -> SingularSystem {
    let (m, n) = (a.rows(), a.cols());
    let mut u: Vec<Vec<f64>> = (0..n).map(|j| a.column(j)).collect();
    let mut v: Vec<Vec<f64>> = (0..n)
        .map(|j| {
            let mut e = vec![0.0; n];
            e[j] = 1.0;
            e
        })
        .collect();

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let (mut alpha, mut beta, mut gamma) = (0.0, 0.0, 0.0);
                for i in 0..m {
                    alpha += u[p][i] * u[p][i];
                    beta += u[q][i] * u[q][i];
                    gamma += u[p][i] * u[q][i];
                }
                if gamma == 0.0 || gamma.abs() <= f64::EPSILON * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                rotate(&mut u, p, q, c, s);
                rotate(&mut v, p, q, c, s);
            }
        }
        if !rotated {
            break;
        }
    }

    let norms: Vec<f64> = u
        .iter()
        .map(|col| col.iter().map(|x| x * x).sum::<f64>().sqrt())
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| norms[j].total_cmp(&norms[i]).then(i.cmp(&j)));
    SingularSystem {
        values: order.iter().map(|&k| norms[k]).collect(),
        right: order.into_iter().map(|k| v[k].clone()).collect(),
    }
}

fn rotate(cols: &mut [Vec<f64>], p: usize, q: usize, c: f64, s: f64) {
    let (head, tail) = cols.split_at_mut(q);
    let (cp, cq) = (&mut head[p], &mut tail[0]);
    for (x, y) in cp.iter_mut().zip(cq.iter_mut()) {
        let (xp, yq) = (*x, *y);
        *x = c * xp - s * yq;
        *y = s * xp + c * yq;
    }
}

/// Orthonormal basis of the kernel of `a`: right singular vectors whose
/// singular value is below `tol * σ_max`, in descending singular-value order.
pub fn null_space(a: &DenseMatrix, tol: f64) -> Vec<Vec<f64>> {
    let svd = jacobi_svd(a);
    let sigma_max = svd.values.first().copied().unwrap_or(0.0);
    svd.values
        .iter()
        .zip(svd.right)
        .filter(|(s, _)| sigma_max == 0.0 || **s < tol * sigma_max)
        .map(|(_, v)| v)
        .collect()
}
