//! Chebyshev polynomials of the first and second kind.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{require_at_least, Result};

/// Which Chebyshev family: `T(n, x)` or `U(n, x)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PolyKind {
    FirstKind,
    SecondKind,
}

/// Evaluates `T(n, x)` or `U(n, x)` with the three-term recurrence
/// `p_{k+1} = 2x p_k - p_{k-1}`.
pub fn cheb_eval(kind: PolyKind, n: usize, x: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = match kind {
        PolyKind::FirstKind => x,
        PolyKind::SecondKind => 2.0 * x,
    };
    for _ in 1..n {
        let next = 2.0 * x * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Values `p_0(x), ..., p_{len-1}(x)` of one family at a single point.
pub fn cheb_column(kind: PolyKind, len: usize, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(len);
    let seed = match kind {
        PolyKind::FirstKind => x,
        PolyKind::SecondKind => 2.0 * x,
    };
    for k in 0..len {
        let v = match k {
            0 => 1.0,
            1 => seed,
            _ => 2.0 * x * out[k - 1] - out[k - 2],
        };
        out.push(v);
    }
    out
}

/// Zeros of `T(n, ·)` or `U(n, ·)` in descending order.
///
/// The closed forms `cos((2k-1)π/(2n))` and `cos(kπ/(n+1))` are evaluated as
/// sines of the complementary angle, so the zero set is exactly symmetric
/// about the origin and contains an exact `0.0` for odd `n`.
pub fn cheb_zeros(kind: PolyKind, n: usize) -> Result<Vec<f64>> {
    require_at_least("polynomial degree", n, 1)?;
    let zeros = (1..=n)
        .map(|k| {
            // cos(a) == sin(π/2 - a) with an integer numerator
            let (num, den) = match kind {
                PolyKind::FirstKind => (n as i64 + 1 - 2 * k as i64, 2 * n),
                PolyKind::SecondKind => (n as i64 + 1 - 2 * k as i64, 2 * (n + 1)),
            };
            (num as f64 * PI / den as f64).sin()
        })
        .collect();
    Ok(zeros)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn seeds_and_low_orders() {
        assert_eq!(cheb_eval(PolyKind::FirstKind, 0, 0.37), 1.0);
        assert_eq!(cheb_eval(PolyKind::FirstKind, 2, 0.5), -0.5);
        assert_eq!(cheb_eval(PolyKind::SecondKind, 2, 0.5), 0.0);
        assert_eq!(cheb_eval(PolyKind::SecondKind, 1, 0.3), 0.6);
    }

    #[test]
    fn column_matches_eval() {
        for kind in [PolyKind::FirstKind, PolyKind::SecondKind] {
            let col = cheb_column(kind, 9, 0.41);
            for (k, v) in col.iter().enumerate() {
                assert_eq!(*v, cheb_eval(kind, k, 0.41));
            }
        }
    }

    #[test]
    #[allow(clippy::approx_constant)]
    fn first_kind_sextic_zeros() {
        let z = cheb_zeros(PolyKind::FirstKind, 6).unwrap();
        // the published largest zero 0.9659258265 is cos(π/12) = 0.96592582629 with
        // the last two digits off, hence the looser bound
        let expected = [(0.9659258265, 5e-10), (0.7071067812, 1e-10), (0.2588190451, 1e-10)];
        for (e, tol) in expected {
            assert!(z.iter().any(|v| (v - e).abs() < tol), "{e}");
            assert!(z.iter().any(|v| (v + e).abs() < tol), "-{e}");
        }
    }

    #[test]
    fn second_kind_sextic_zeros() {
        let z = cheb_zeros(PolyKind::SecondKind, 6).unwrap();
        for e in [0.9009688679, 0.6234898019, 0.2225209340] {
            assert!(z.iter().any(|v| (v - e).abs() < 1e-10));
            assert!(z.iter().any(|v| (v + e).abs() < 1e-10));
        }
        for v in &z {
            assert!(cheb_eval(PolyKind::SecondKind, 6, *v).abs() < 1e-12);
        }
    }

    #[test]
    fn degree_one_and_zero() {
        assert_eq!(cheb_zeros(PolyKind::FirstKind, 1).unwrap(), vec![0.0]);
        assert!(cheb_zeros(PolyKind::FirstKind, 0).is_err());
        assert!(cheb_zeros(PolyKind::SecondKind, 0).is_err());
    }

    #[test]
    fn recurrence_matches_trigonometric_form() {
        for n in 0..=64 {
            for i in 0..=200 {
                let x = -1.0 + 2.0 * i as f64 / 200.0;
                let closed = (n as f64 * x.acos()).cos();
                let rec = cheb_eval(PolyKind::FirstKind, n, x);
                assert!((rec - closed).abs() < 1e-10, "n={n} x={x}");
            }
        }
    }

    #[test]
    fn zeros_vanish_decrease_and_interlace() {
        for kind in [PolyKind::FirstKind, PolyKind::SecondKind] {
            for n in 1..40 {
                let z = cheb_zeros(kind, n).unwrap();
                assert_eq!(z.len(), n);
                assert!(z.windows(2).all(|w| w[0] > w[1]));
                assert!(z.iter().all(|v| v.abs() < 1.0));
                for v in &z {
                    assert!(cheb_eval(kind, n, *v).abs() < 1e-12, "{kind:?} n={n}");
                }
                let next = cheb_zeros(kind, n + 1).unwrap();
                for k in 0..n {
                    assert!(next[k] > z[k] && z[k] > next[k + 1]);
                }
            }
        }
    }

    proptest! {
        #[test]
        fn parity(n in 0usize..50, x in -1.0f64..1.0) {
            for kind in [PolyKind::FirstKind, PolyKind::SecondKind] {
                let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                let lhs = cheb_eval(kind, n, -x);
                let rhs = sign * cheb_eval(kind, n, x);
                prop_assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + rhs.abs()));
            }
        }
    }
}
