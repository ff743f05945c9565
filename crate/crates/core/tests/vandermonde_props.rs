mod common;

use common::*;
use proptest::prelude::*;
use vandermat::eigen::multiplicity_partitions;
use vandermat::linalg::condition_number;
use vandermat::vandermonde::{build_vandermonde_single_term, RegisterMap};
use vandermat::*;

/// Kronecker-sum form of the inverse register, with `b` limited to `μ_a`.
fn kronecker_inverse_register(v: usize, mus: &[usize]) -> (usize, usize) {
    let (mut alpha, mut beta) = (0, 0);
    let mut offset = 0;
    for (a, &mu) in mus.iter().enumerate() {
        for b in 0..mu {
            let hit = usize::from(offset + b == v);
            alpha += a * hit;
            beta += b * hit;
        }
        offset += mu;
    }
    (alpha, beta)
}

fn random_partition(seed: u64, n: usize) -> Vec<usize> {
    let parts = multiplicity_partitions(n);
    parts[(seed as usize) % parts.len()].clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn inverse_round_trips_both_sides(seed in any::<u64>(), n in 1usize..=6) {
        let mus = random_partition(seed, n);
        let spectrum = random_spectrum(&mut rng(seed), &mus, 0.1, 1.0);
        let v = build_vandermonde(&spectrum);
        let kappa = condition_number(&v.matrix).unwrap();
        let inv = vinv_general(&v).unwrap();
        prop_assert!(identity_residual(&v.matrix, &inv) <= 1e-8 * kappa);
        prop_assert!(identity_residual(&inv, &v.matrix) <= 1e-8 * kappa);
    }

    #[test]
    fn element_forms_are_bit_identical(seed in any::<u64>(), n in 1usize..=8) {
        let mus = random_partition(seed, n);
        let spectrum = random_spectrum(&mut rng(seed), &mus, 0.1, 1.5);
        let piecewise = build_vandermonde(&spectrum);
        let single = build_vandermonde_single_term(&spectrum);
        prop_assert_eq!(&piecewise.matrix, &single.matrix);
        prop_assert_eq!(vinv_general(&piecewise), vinv_general(&single));
        prop_assert_eq!(inverse_fourier(&single.matrix), inverse_fourier(&piecewise.matrix));
    }

    #[test]
    fn register_inverts_and_matches_kronecker_form(mus in prop::collection::vec(1usize..=4, 1..=5)) {
        let map = RegisterMap::new(&mus).unwrap();
        for v in 0..map.n() {
            let (alpha, beta) = inverse_register(v, &mus).unwrap();
            prop_assert_eq!(register(alpha, beta, &mus).unwrap(), v);
            prop_assert_eq!((alpha, beta), kronecker_inverse_register(v, &mus));
        }
        prop_assert!(inverse_register(map.n(), &mus).is_err());
    }

    #[test]
    fn symmetric_polynomial_routes_agree(seed in any::<u64>(), m in 1usize..=8) {
        let mut g = rng(seed);
        let x: Vec<C64> = (0..m).map(|_| in_disk(&mut g, 1.5)).collect();
        for j in 0..=m {
            let classic = esp_classic(&x, j);
            let scale = classic.norm().max(esp_magnitude(&x, j));
            prop_assert!((esp_fourier(&x, j).unwrap() - classic).norm() <= 1e-10 * scale);
            prop_assert!((esp_detform(&x, j).unwrap() - classic).norm() <= 1e-10 * scale);
        }
    }

    #[test]
    fn fourier_symmetric_polynomial_is_real_for_real_input(seed in any::<u64>(), m in 1usize..=8) {
        let mut g = rng(seed);
        let x: Vec<C64> = (0..m).map(|_| r(in_disk(&mut g, 1.0).re)).collect();
        for j in 0..=m {
            prop_assert!(esp_fourier(&x, j).unwrap().im.abs() < 1e-10);
        }
    }
}

#[test]
fn closed_forms_match_general_route() {
    let mut g = rng(99);
    for n in 1..=8 {
        for _ in 0..10 {
            let spectrum = random_spectrum(&mut g, &vec![1; n], 0.1, 1.0);
            let v = build_vandermonde(&spectrum);
            let kappa = condition_number(&v.matrix).unwrap();
            let special = vinv_distinct(&spectrum).unwrap();
            assert!(special.is_clean());
            let general = vinv_general(&v).unwrap();
            let diff = (&special.value - &general).max_abs();
            assert!(diff <= 1e-9 * kappa * general.max_abs(), "distinct n={n}: {diff:e}");

            let spectrum = Spectrum::degenerate(in_disk(&mut g, 1.0), n).unwrap();
            let v = build_vandermonde(&spectrum);
            let kappa = condition_number(&v.matrix).unwrap();
            let special = vinv_degenerate(&spectrum).unwrap();
            let general = vinv_general(&v).unwrap();
            let diff = (&special - &general).max_abs();
            assert!(diff <= 1e-9 * kappa * general.max_abs(), "degenerate n={n}: {diff:e}");
        }
    }
}

#[test]
fn near_confluent_distinct_spectrum_warns() {
    let spectrum = Spectrum::distinct(vec![r(1.0), r(1.0 + 1e-7), r(-1.0)]).unwrap();
    let got = vinv_distinct(&spectrum).unwrap();
    assert!(matches!(got.warnings[0], Warning::NearConfluent { .. }));
}
