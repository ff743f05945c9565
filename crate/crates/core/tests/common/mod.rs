#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vandermat::{inverse_gauss, ComplexMatrix, Spectrum, C64};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn r(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// Uniform point in the disk of the given radius.
pub fn in_disk(rng: &mut ChaCha8Rng, radius: f64) -> C64 {
    let rad = radius * rng.gen::<f64>().sqrt();
    C64::from_polar(rad, rng.gen_range(0.0..std::f64::consts::TAU))
}

pub fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, |_, _| in_disk(rng, 1.0))
}

pub fn random_hermitian(rng: &mut ChaCha8Rng, n: usize, scale: f64) -> ComplexMatrix {
    let a = random_matrix(rng, n);
    (&a + &a.adjoint()).scale(r(0.5 * scale))
}

/// `m` points in the disk with pairwise distance at least `min_sep`.
pub fn separated_points(rng: &mut ChaCha8Rng, m: usize, min_sep: f64, radius: f64) -> Vec<C64> {
    loop {
        let mut pts: Vec<C64> = Vec::with_capacity(m);
        for _ in 0..m * 200 {
            if pts.len() == m {
                break;
            }
            let z = in_disk(rng, radius);
            if pts.iter().all(|p| (p - z).norm() >= min_sep) {
                pts.push(z);
            }
        }
        if pts.len() == m {
            return pts;
        }
    }
}

pub fn random_spectrum(rng: &mut ChaCha8Rng, mus: &[usize], min_sep: f64, radius: f64) -> Spectrum {
    let lambdas = separated_points(rng, mus.len(), min_sep, radius);
    Spectrum::new(lambdas, mus.to_vec()).unwrap()
}

/// Jordan form with a single block per distinct eigenvalue.
pub fn jordan_matrix(spectrum: &Spectrum) -> ComplexMatrix {
    let n = spectrum.n();
    let mut j = ComplexMatrix::zeros(n);
    let mut row = 0;
    for (&lambda, &mu) in spectrum.lambdas().iter().zip(spectrum.mus()) {
        for k in 0..mu {
            j[(row + k, row + k)] = lambda;
            if k + 1 < mu {
                j[(row + k, row + k + 1)] = r(1.0);
            }
        }
        row += mu;
    }
    j
}

/// `P J P⁻¹` with `P = I + 0.3 R`, `R` random in the unit disk entrywise.
pub fn defective_matrix(rng: &mut ChaCha8Rng, spectrum: &Spectrum) -> ComplexMatrix {
    let n = spectrum.n();
    let p = &ComplexMatrix::identity(n) + &random_matrix(rng, n).scale(r(0.3 / (n as f64).sqrt()));
    let pinv = inverse_gauss(&p).unwrap();
    &(&p * &jordan_matrix(spectrum)) * &pinv
}

pub fn rel_err(got: &ComplexMatrix, want: &ComplexMatrix) -> f64 {
    (got - want).frobenius_norm() / want.frobenius_norm().max(f64::MIN_POSITIVE)
}

pub fn abs_err(got: &ComplexMatrix, want: &ComplexMatrix) -> f64 {
    (got - want).frobenius_norm()
}

pub fn identity_residual(a: &ComplexMatrix, inv: &ComplexMatrix) -> f64 {
    abs_err(&(a * inv), &ComplexMatrix::identity(a.dim()))
}

pub fn unitarity(u: &ComplexMatrix) -> f64 {
    abs_err(&(&u.adjoint() * u), &ComplexMatrix::identity(u.dim()))
}

/// `e_j(|x_1|, …, |x_m|)`, an upper bound on `|e_j(x)|` used as a scale.
pub fn esp_magnitude(x: &[C64], j: usize) -> f64 {
    let mut e = vec![0.0; j + 1];
    e[0] = 1.0;
    for z in x {
        for k in (1..=j).rev() {
            e[k] += e[k - 1] * z.norm();
        }
    }
    e[j]
}

/// Exponential coefficient vectors `b` with `e^{tA} = Σ b_k A^k`, written out
/// by hand for each multiplicity structure with `n ≤ 3`.
pub mod worked {
    use super::C64;

    pub fn distinct2(l1: C64, l2: C64, t: C64) -> Vec<C64> {
        let (e1, e2) = ((l1 * t).exp(), (l2 * t).exp());
        let d = l1 - l2;
        vec![(l1 * e2 - l2 * e1) / d, -(e2 - e1) / d]
    }

    pub fn double2(l1: C64, t: C64) -> Vec<C64> {
        let e1 = (l1 * t).exp();
        vec![e1 * (1.0 - l1 * t), e1 * t]
    }

    pub fn distinct3(l1: C64, l2: C64, l3: C64, t: C64) -> Vec<C64> {
        let (e1, e2, e3) = ((l1 * t).exp(), (l2 * t).exp(), (l3 * t).exp());
        let d = (l1 - l2) * (l1 - l3) * (l2 - l3);
        let c0 = l1 * l2 * (l1 - l2) * e3 - l1 * l3 * (l1 - l3) * e2 + l2 * l3 * (l2 - l3) * e1;
        let c1 = -(l1 * l1 - l2 * l2) * e3 + (l1 * l1 - l3 * l3) * e2 - (l2 * l2 - l3 * l3) * e1;
        let c2 = (l1 - l2) * e3 - (l1 - l3) * e2 + (l2 - l3) * e1;
        vec![c0 / d, c1 / d, c2 / d]
    }

    /// `l1` simple, `l2` double.
    pub fn simple_double3(l1: C64, l2: C64, t: C64) -> Vec<C64> {
        let (e1, e2) = ((l1 * t).exp(), (l2 * t).exp());
        let d = l1 - l2;
        let dd = d * d;
        let c0 = l1 * ((l1 - 2.0 * l2) - l2 * d * t) * e2 + l2 * l2 * e1;
        let c1 = (2.0 * l2 + (l1 * l1 - l2 * l2) * t) * e2 - 2.0 * l2 * e1;
        let c2 = -(1.0 + d * t) * e2 + e1;
        vec![c0 / dd, c1 / dd, c2 / dd]
    }

    pub fn triple3(l1: C64, t: C64) -> Vec<C64> {
        let e1 = (l1 * t).exp();
        let lt = l1 * t;
        vec![e1 * (1.0 - lt + 0.5 * lt * lt), e1 * (1.0 - lt) * t, e1 * 0.5 * t * t]
    }
}
