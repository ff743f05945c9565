//! Characteristic-polynomial coefficients, the adjugate as a polynomial in
//! the matrix, and the two closed-form inverses built on it.
//!
//! The coefficients `c_k` of `det(λI - A) = Σ c_k λ^k` are recovered by a
//! discrete Fourier transform of the characteristic polynomial sampled at
//! the `(n+1)`-th roots of unity, so only determinants are needed. The
//! trace-based alternative ([`inverse_charpoly`]) uses Newton's identities
//! written as determinants of the lower-Hessenberg power-sum matrix
//! ([`q_matrix`]) and has no complex exponentials at all.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{det_lu, singularity_threshold, Matrix};
use crate::scalar::{factorial, from_usize, root_of_unity, to_f64, Real};

/// Coefficients `c_0..c_n` of `det(λI - A)` in ascending powers of `λ`.
#[derive(Clone, Debug, PartialEq)]
pub struct CharPolyCoeffs<T: Real = f64> {
    pub c: Vec<Complex<T>>,
}

impl<T: Real> CharPolyCoeffs<T> {
    pub fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    /// Horner evaluation of `p(λ)`.
    pub fn eval(&self, lambda: Complex<T>) -> Complex<T> {
        self.c.iter().rev().fold(Complex::zero(), |acc, &ck| acc * lambda + ck)
    }

    /// Coefficients divided by the leading one.
    pub fn monic(&self) -> Vec<Complex<T>> {
        let lead = *self.c.last().expect("characteristic polynomial has a leading term");
        self.c.iter().map(|&ck| ck / lead).collect()
    }
}

/// `c_k = 1/(n+1) Σ_{j=0}^{n} e^{i2πjk/(n+1)} det(e^{-i2πj/(n+1)} I - A)`.
///
/// Real input yields coefficients with roundoff-level imaginary parts; they
/// are kept as computed.
pub fn charpoly_coeffs<T: Real>(a: &Matrix<T>) -> CharPolyCoeffs<T> {
    let n = a.dim();
    let samples = n + 1;
    let dets: Vec<Complex<T>> = (0..samples)
        .map(|j| {
            let w = root_of_unity::<T>(-(j as i64), samples);
            det_lu(&(&Matrix::scalar(n, w) - a))
        })
        .collect();
    let norm = from_usize::<T>(samples);
    let c = (0..samples)
        .map(|k| {
            let sum = dets.iter().enumerate().fold(Complex::zero(), |acc, (j, &d)| {
                acc + root_of_unity::<T>((j * k) as i64, samples) * d
            });
            sum / norm
        })
        .collect();
    CharPolyCoeffs { c }
}

/// `adj(A) = (-1)^{n+1} Σ_{k=1}^{n} c_k A^{k-1}`; valid for singular `A` too.
pub fn adjugate_fourier<T: Real>(a: &Matrix<T>) -> Matrix<T> {
    let coeffs = charpoly_coeffs(a);
    adjugate_from_coeffs(a, &coeffs)
}

fn adjugate_from_coeffs<T: Real>(a: &Matrix<T>, coeffs: &CharPolyCoeffs<T>) -> Matrix<T> {
    let n = a.dim();
    let mut adj = Matrix::zeros(n);
    let mut power = Matrix::identity(n);
    for k in 1..=n {
        adj.add_scaled(coeffs.c[k], &power);
        if k < n {
            power = &power * a;
        }
    }
    if n.is_multiple_of(2) {
        // (-1)^{n+1} = -1
        adj = -&adj;
    }
    adj
}

pub(crate) fn checked_det<T: Real>(a: &Matrix<T>) -> Result<Complex<T>> {
    let det = det_lu(a);
    let threshold = singularity_threshold(a);
    if det.norm() <= threshold {
        return Err(Error::Singular {
            det: to_f64(det.norm()),
            threshold: to_f64(threshold),
            hint: None,
        });
    }
    Ok(det)
}

/// Closed-form inverse `adj(A)/det(A)` with the Fourier adjugate.
pub fn inverse_fourier<T: Real>(a: &Matrix<T>) -> Result<Matrix<T>> {
    let det = checked_det(a)?;
    let inv_det = Complex::<T>::one() / det;
    Ok(adjugate_fourier(a).scale(inv_det))
}

/// `p_q(x) = Σ_c x_c^q`.
pub fn power_sum<T: Real>(x: &[Complex<T>], q: usize) -> Result<Complex<T>> {
    if q == 0 {
        return Err(Error::domain("power sum order must be at least 1"));
    }
    Ok(x.iter()
        .map(|&xc| crate::scalar::cpowi(xc, q))
        .fold(Complex::zero(), |a, b| a + b))
}

/// `p_q(X) = tr(X^q)`.
pub fn power_sum_matrix<T: Real>(x: &Matrix<T>, q: usize) -> Result<Complex<T>> {
    if q == 0 {
        return Err(Error::domain("power sum order must be at least 1"));
    }
    Ok(x.pow(q).trace())
}

/// `[tr(X), tr(X²), …, tr(X^count)]` with incrementally accumulated powers.
pub fn power_sums_matrix<T: Real>(x: &Matrix<T>, count: usize) -> Vec<Complex<T>> {
    let mut out = Vec::with_capacity(count);
    let mut power = Matrix::identity(x.dim());
    for _ in 0..count {
        power = &power * x;
        out.push(power.trace());
    }
    out
}

fn power_sums_vec<T: Real>(x: &[Complex<T>], count: usize) -> Vec<Complex<T>> {
    let mut out = vec![Complex::zero(); count];
    for &xc in x {
        let mut p = Complex::<T>::one();
        for slot in out.iter_mut() {
            p *= xc;
            *slot += p;
        }
    }
    out
}

/// The `j x j` Newton matrix: power sums `p_1` on the diagonal, `p_2` on the
/// first subdiagonal and so on, with `1, 2, …, j-1` on the superdiagonal.
/// Its determinant divided by `j!` is `e_j`.
pub fn q_matrix<T: Real>(p: &[Complex<T>], j: usize) -> Result<Matrix<T>> {
    if p.len() < j {
        return Err(Error::domain(format!(
            "q_matrix of size {j} needs {j} power sums, got {}",
            p.len()
        )));
    }
    Ok(Matrix::from_fn(j, |row, col| {
        if col == row + 1 {
            Complex::new(from_usize::<T>(row + 1), T::zero())
        } else if col <= row {
            p[row - col]
        } else {
            Complex::zero()
        }
    }))
}

/// `e_j(x) = det(Q^[j](x)) / j!`, for `0 ≤ j ≤ m`.
pub fn esp_detform<T: Real>(x: &[Complex<T>], j: usize) -> Result<Complex<T>> {
    if j > x.len() {
        return Err(Error::domain(format!("esp_detform order {j} outside 0..={}", x.len())));
    }
    let p = power_sums_vec(x, j);
    let q = q_matrix(&p, j)?;
    Ok(det_lu(&q) / factorial::<T>(j))
}

/// Trace-based inverse `X⁻¹ = det(X)⁻¹ Σ_{k=1}^{m} det(Q^[m-k](X))/(m-k)! · (-X)^{k-1}`.
pub fn inverse_charpoly<T: Real>(x: &Matrix<T>) -> Result<Matrix<T>> {
    let m = x.dim();
    let det = checked_det(x)?;
    let p = power_sums_matrix(x, m.saturating_sub(1));
    let neg_x = -x;
    let mut acc = Matrix::zeros(m);
    let mut power = Matrix::identity(m);
    for k in 1..=m {
        let order = m - k;
        let q = q_matrix(&p, order)?;
        let e = det_lu(&q) / factorial::<T>(order);
        acc.add_scaled(e, &power);
        if k < m {
            power = &power * &neg_x;
        }
    }
    Ok(acc.scale(Complex::<T>::one() / det))
}
