#![allow(clippy::type_complexity)]

mod common;

use common::*;
use proptest::prelude::*;
use vandermat::eigen::multiplicity_partitions;
use vandermat::matfunc::{apply_function_with, eval_coefficients, CoeffSolver};
use vandermat::*;

fn random_case(seed: u64, n: usize) -> (ComplexMatrix, Spectrum) {
    let mut g = rng(seed);
    let parts = multiplicity_partitions(n);
    let mus = &parts[(seed as usize) % parts.len()];
    let spectrum = random_spectrum(&mut g, mus, 0.25, 1.0);
    (defective_matrix(&mut g, &spectrum), spectrum)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn exponential_matches_taylor_oracle(seed in any::<u64>(), n in 1usize..=6, t in (-2.0..2.0f64, -2.0..2.0f64)) {
        let (a, spectrum) = random_case(seed, n);
        let t = c(t.0, t.1);
        let got = expm(&a, t, &spectrum).unwrap();
        prop_assert!(rel_err(&got, &expm_taylor(&a, t)) <= 1e-8);
    }

    #[test]
    fn exponential_is_a_semigroup(seed in any::<u64>(), n in 1usize..=6) {
        let (a, spectrum) = random_case(seed, n);
        let mut g = rng(seed ^ 0x5eed);
        let (t1, t2) = (in_disk(&mut g, 1.0), in_disk(&mut g, 1.0));
        let whole = expm(&a, t1 + t2, &spectrum).unwrap();
        let parts = &expm(&a, t1, &spectrum).unwrap() * &expm(&a, t2, &spectrum).unwrap();
        prop_assert!(rel_err(&parts, &whole) <= 1e-8);
    }

    #[test]
    fn exponential_derivative(seed in any::<u64>(), n in 1usize..=6) {
        let (a, spectrum) = random_case(seed, n);
        let t = in_disk(&mut rng(seed ^ 0xd1ff), 1.0);
        let h = 1e-5;
        let fd = (&expm(&a, t + h, &spectrum).unwrap() - &expm(&a, t - h, &spectrum).unwrap()).scale(r(0.5 / h));
        let exact = &a * &expm(&a, t, &spectrum).unwrap();
        prop_assert!(rel_err(&fd, &exact) <= 1e-6);
    }

    #[test]
    fn alternative_route_matches(seed in any::<u64>(), n in 1usize..=5, k in 0usize..=7) {
        let (a, spectrum) = random_case(seed, n);
        let v = build_vandermonde(&spectrum).matrix;
        let kappa = v.frobenius_norm() * inverse_gauss(&v).unwrap().frobenius_norm();
        let monomial = Monomial { power: k };
        let direct = apply_function(&a, &monomial, &spectrum).unwrap();
        let alt = apply_function_alt(&a, &monomial, &spectrum).unwrap();
        prop_assert!(abs_err(&alt, &direct) <= 1e-9 * kappa * (1.0 + direct.frobenius_norm()));

        let exp = Exp::new(in_disk(&mut rng(seed), 1.0));
        let direct = apply_function(&a, &exp, &spectrum).unwrap();
        let alt = apply_function_alt(&a, &exp, &spectrum).unwrap();
        prop_assert!(abs_err(&alt, &direct) <= 1e-9 * kappa * (1.0 + direct.frobenius_norm()));
    }

    #[test]
    fn elimination_solver_matches(seed in any::<u64>(), n in 1usize..=6) {
        let (a, spectrum) = random_case(seed, n);
        let f = Exp::new(r(0.7));
        let explicit = apply_function(&a, &f, &spectrum).unwrap();
        let elim = apply_function_with(&a, &f, &spectrum, CoeffSolver::Elimination).unwrap();
        prop_assert!(rel_err(&elim, &explicit) <= 1e-9);
    }

    #[test]
    fn special_exponentials_match_general(seed in any::<u64>(), n in 1usize..=6) {
        let mut g = rng(seed);
        let t = in_disk(&mut g, 1.5);
        let spectrum = random_spectrum(&mut g, &vec![1; n], 0.2, 1.0);
        let a = defective_matrix(&mut g, &spectrum);
        let general = expm(&a, t, &spectrum).unwrap();
        prop_assert!(rel_err(&expm_distinct(&a, t, &spectrum).unwrap(), &general) <= 1e-9);

        let spectrum = Spectrum::degenerate(in_disk(&mut g, 1.0), n).unwrap();
        let a = defective_matrix(&mut g, &spectrum);
        let general = expm(&a, t, &spectrum).unwrap();
        prop_assert!(rel_err(&expm_degenerate(&a, t, &spectrum).unwrap(), &general) <= 1e-9);
    }

    #[test]
    fn conjugation_matches_triple_product(seed in any::<u64>(), n in 1usize..=4) {
        let (a, spectrum) = random_case(seed, n);
        let mut g = rng(seed ^ 0xbc);
        let b = random_matrix(&mut g, n);
        let s = in_disk(&mut g, 1.0);
        let got = bch_conjugate(&a, &b, s, &spectrum).unwrap();
        let triple = &(&expm(&a, s, &spectrum).unwrap() * &b) * &expm(&a, -s, &spectrum).unwrap();
        prop_assert!(rel_err(&got, &triple) <= 1e-8);
    }
}

#[test]
fn worked_low_dimension_fixtures() {
    let mut g = rng(41);
    for _ in 0..50 {
        let t = in_disk(&mut g, 1.5);
        let cases: [(Vec<usize>, fn(&[C64], C64) -> Vec<C64>); 5] = [
            (vec![1, 1], |l, t| worked::distinct2(l[0], l[1], t)),
            (vec![2], |l, t| worked::double2(l[0], t)),
            (vec![1, 1, 1], |l, t| worked::distinct3(l[0], l[1], l[2], t)),
            (vec![1, 2], |l, t| worked::simple_double3(l[0], l[1], t)),
            (vec![3], |l, t| worked::triple3(l[0], t)),
        ];
        for (mus, fixture) in cases {
            let spectrum = random_spectrum(&mut g, &mus, 0.1, 1.0);
            let a = defective_matrix(&mut g, &spectrum);
            let want = eval_coefficients(&a, &fixture(spectrum.lambdas(), t));
            let got = expm(&a, t, &spectrum).unwrap();
            assert!(abs_err(&got, &want) <= 1e-9 * (1.0 + want.frobenius_norm()), "{mus:?}");
        }
    }
}

#[test]
fn defective_degenerate_does_not_collapse() {
    let lambda = c(0.3, -0.2);
    let spectrum = Spectrum::degenerate(lambda, 3).unwrap();
    let a = jordan_matrix(&spectrum);
    let t = r(0.9);
    let got = expm_degenerate(&a, t, &spectrum).unwrap();
    let scalar = ComplexMatrix::scalar(3, (lambda * t).exp());
    assert!(abs_err(&got, &scalar) > 0.5);
    assert!(rel_err(&got, &expm_taylor(&a, t)) < 1e-12);
}
