mod common;

use common::*;
use proptest::prelude::*;
use vandermat::linalg::condition_number;
use vandermat::scalar::root_of_unity;
use vandermat::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn coefficients_follow_vieta(seed in any::<u64>(), n in 1usize..=6) {
        let mut g = rng(seed);
        let lambdas: Vec<C64> = (0..n).map(|_| in_disk(&mut g, 1.5)).collect();
        let coeffs = charpoly_coeffs(&ComplexMatrix::diag(&lambdas));
        for k in 0..=n {
            let e = esp_classic(&lambdas, n - k);
            let want = if (n - k) % 2 == 0 { e } else { -e };
            let scale = want.norm().max(esp_magnitude(&lambdas, n - k));
            prop_assert!((coeffs.c[k] - want).norm() <= 1e-9 * scale, "k={} {} vs {}", k, coeffs.c[k], want);
        }
    }

    #[test]
    fn adjugate_times_matrix_is_det_identity(seed in any::<u64>(), n in 1usize..=6, rank_drop in 0usize..=2) {
        let mut g = rng(seed);
        let mut a = random_matrix(&mut g, n);
        // copy rows to force rank deficiency
        for k in 0..rank_drop.min(n - 1) {
            for j in 0..n {
                a[(k + 1, j)] = a[(0, j)];
            }
        }
        let adj = adjugate_fourier(&a);
        let lhs = &adj * &a;
        let rhs = ComplexMatrix::scalar(n, det_lu(&a));
        let scale = a.frobenius_norm().max(1.0).powi(n as i32);
        prop_assert!(abs_err(&lhs, &rhs) <= 1e-10 * scale);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn three_inverses_agree(seed in any::<u64>(), n in 1usize..=6) {
        let a = random_matrix(&mut rng(seed), n);
        let gauss = inverse_gauss(&a).unwrap();
        let kappa = condition_number(&a).unwrap();
        let fourier = inverse_fourier(&a).unwrap();
        let charpoly = inverse_charpoly(&a).unwrap();
        let bound = 1e-8 * kappa * gauss.frobenius_norm();
        prop_assert!(abs_err(&fourier, &gauss) <= bound);
        prop_assert!(abs_err(&charpoly, &gauss) <= bound);
        prop_assert!(abs_err(&fourier, &charpoly) <= bound);
    }
}

#[test]
fn roots_of_unity_are_orthonormal() {
    for n in 0..=12 {
        let m = n + 1;
        for k in 0..=n {
            for l in 0..=n {
                let sum: C64 = (0..m)
                    .map(|j| root_of_unity::<f64>((j * k) as i64, m) * root_of_unity::<f64>(-((j * l) as i64), m))
                    .sum::<C64>()
                    / m as f64;
                let want = if k == l { r(1.0) } else { r(0.0) };
                assert!((sum - want).norm() < 1e-12, "n={n} k={k} l={l}");
            }
        }
    }
}

#[test]
fn singular_input_is_reported() {
    let a = ComplexMatrix::from_real_rows(&[[1.0, 2.0], [2.0, 4.0]]).unwrap();
    assert!(matches!(inverse_fourier(&a), Err(Error::Singular { .. })));
    assert!(matches!(inverse_charpoly(&a), Err(Error::Singular { .. })));
}

/// Accuracy of the two closed-form inverses relative to elimination; printed, not asserted.
#[test]
fn inverse_path_accuracy_report() {
    let mut g = rng(17);
    for n in 1..=8 {
        let (mut fourier, mut charpoly) = (0.0f64, 0.0f64);
        for _ in 0..50 {
            let a = random_matrix(&mut g, n);
            let kappa = condition_number(&a).unwrap();
            fourier = fourier.max(identity_residual(&a, &inverse_fourier(&a).unwrap()) / kappa);
            charpoly = charpoly.max(identity_residual(&a, &inverse_charpoly(&a).unwrap()) / kappa);
        }
        println!("n={n}: max residual/kappa fourier={fourier:.2e} charpoly={charpoly:.2e}");
    }
}
