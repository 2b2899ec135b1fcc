use chebwell::analysis::{
    classify_spectrum, horizon_roots_1d, sweep_1d, Family, SignatureLabel,
};
use chebwell::export::{csv_string, write_sweep_csv};
use chebwell::lattice::{build_hamiltonian, closed_form_eigensystem, ModelKind};
use chebwell::metrics::{band_metric_basis, hermitize_check, k_matrix, l_matrix};
use chebwell::numerics::{min_eig_banded, sym_eigs};
use chebwell::DenseMatrix;
use proptest::prelude::*;

fn model() -> impl Strategy<Value = ModelKind> {
    prop_oneof![Just(ModelKind::FirstKindWell), Just(ModelKind::SecondKindWell)]
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn eigensystem_invariants(kind in model(), n in 1usize..80) {
        let h = build_hamiltonian(kind, n).unwrap();
        let hd = h.to_dense();
        let ht = hd.transpose();
        let es = closed_form_eigensystem(kind, n).unwrap();
        let e = es.energies();
        prop_assert!(e.windows(2).all(|w| w[0] > w[1]));
        let tol = 1e-10 * hd.max_abs().max(1.0);
        for k in 0..n {
            let (r, l) = (&es.right()[k], &es.left()[k]);
            let hr = hd.mul_vec(r).unwrap();
            let hl = ht.mul_vec(l).unwrap();
            for i in 0..n {
                prop_assert!((hr[i] - e[k] * r[i]).abs() < tol);
                prop_assert!((hl[i] - e[k] * l[i]).abs() < tol);
            }
            let norm = dot(l, r);
            for (m, rm) in es.right().iter().enumerate() {
                if m != k {
                    prop_assert!((dot(l, rm) / norm).abs() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn sym_eigs_invariants(n in 1usize..24, seed in proptest::collection::vec(-5.0f64..5.0, 24 * 24)) {
        let a = DenseMatrix::from_fn(n, n, |i, j| seed[i.min(j) * 24 + i.max(j)]);
        let d = sym_eigs(&a).unwrap();
        prop_assert!(d.values.windows(2).all(|w| w[0] <= w[1]));
        let scale = a.max_abs().max(1.0);
        for k in 0..n {
            let v = d.vectors.column(k);
            let av = a.mul_vec(&v).unwrap();
            for i in 0..n {
                prop_assert!((av[i] - d.values[k] * v[i]).abs() < 1e-10 * scale * n as f64);
            }
            for j in 0..n {
                let o = dot(&v, &d.vectors.column(j));
                prop_assert!((o - f64::from(u8::from(j == k))).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn closed_form_candidates_are_banded_and_intertwine(
        n in 3usize..30,
        lambda in -3.0f64..3.0,
        mu in -3.0f64..3.0,
    ) {
        let h = build_hamiltonian(ModelKind::FirstKindWell, n).unwrap();
        for (c, b) in [(k_matrix(n, lambda).unwrap(), 1), (l_matrix(n, lambda, mu).unwrap(), 2)] {
            let d = c.to_dense();
            prop_assert_eq!(d.symmetry_defect(), 0.0);
            for i in 0..n {
                for j in 0..n {
                    if i.abs_diff(j) > b {
                        prop_assert_eq!(d[(i, j)], 0.0);
                    }
                }
            }
            let rep = hermitize_check(&h, &c).unwrap();
            prop_assert!(rep.intertwines(1e-10), "{rep:?}");
            let band_min = min_eig_banded(c.as_band().unwrap());
            prop_assert!((band_min - rep.min_eigenvalue).abs() < 1e-9 * d.max_abs().max(1.0));
        }
    }

    #[test]
    fn signature_label_rules(values in proptest::collection::vec(-2.0f64..2.0, 1..16)) {
        let r = classify_spectrum(&values, 1e-9);
        prop_assert_eq!(r.n_positive + r.n_negative + r.n_zero, values.len());
        match r.label {
            SignatureLabel::Singular => prop_assert!(r.n_zero > 0),
            SignatureLabel::Metric => prop_assert!(r.n_negative == 0 && r.n_zero == 0),
            SignatureLabel::KreinBalanced => prop_assert!(r.n_zero == 0 && r.n_positive == r.n_negative),
            SignatureLabel::PontryaginOneMinus => prop_assert!(r.n_zero == 0 && r.n_negative == 1),
            SignatureLabel::Indefinite => prop_assert!(r.n_zero == 0 && r.n_negative > 1 && r.n_positive != r.n_negative),
        }
    }

    #[test]
    fn sweep_records_sorted_and_reproducible(n in 3usize..12, lo in -3.0f64..0.0, width in 0.1f64..3.0, steps in 2usize..40) {
        let family = Family::L { lambda: 0.25 };
        let a = sweep_1d(n, family, lo, lo + width, steps).unwrap();
        prop_assert_eq!(a.len(), steps);
        for r in &a {
            prop_assert_eq!(r.eigenvalues.len(), n);
            prop_assert!(r.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
        }
        let b = sweep_1d(n, family, lo, lo + width, steps).unwrap();
        let sa = csv_string(|w| write_sweep_csv(w, family, &a)).unwrap();
        let sb = csv_string(|w| write_sweep_csv(w, family, &b)).unwrap();
        prop_assert_eq!(sa, sb);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn crossings_sit_on_a_zero_eigenvalue(n in 2usize..11) {
        let b = horizon_roots_1d(n, Family::K, -2.5, 2.5, 1e-13).unwrap();
        for c in &b.crossings {
            prop_assert!(c.negative_before != c.negative_after);
            let values = sym_eigs(&k_matrix(n, c.location).unwrap().to_dense()).unwrap().values;
            let nearest = values.iter().map(|v| v.abs()).fold(f64::INFINITY, f64::min);
            prop_assert!(nearest < 1e-9, "N={} at {}: {:?}", n, c.location, values);
        }
    }

    #[test]
    fn solver_basis_elements_intertwine(n in 2usize..10, b in 0usize..5) {
        prop_assume!(b < n);
        let h = build_hamiltonian(ModelKind::FirstKindWell, n).unwrap();
        let basis = band_metric_basis(&h, b).unwrap();
        prop_assert_eq!(basis.len(), b + 1);
        for c in &basis {
            prop_assert!(hermitize_check(&h, c).unwrap().intertwines(1e-10));
        }
    }
}
