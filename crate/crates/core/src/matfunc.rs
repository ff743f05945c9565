//! Analytic functions of matrices from eigenvalues alone.
//!
//! For an `n x n` matrix `A` with spectrum `(λ, μ)`, any analytic `f`
//! satisfies `f(A) = Σ_k b_k A^{k-1}` where `b = V⁻¹ f̃`, `V` is the
//! confluent Vandermonde matrix of the spectrum and `f̃[c(α,β)] = f^{(β)}(λ_α)`.
//! No eigenvectors are involved, so defective matrices are handled the same
//! way as diagonalizable ones.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::charpoly::checked_det;
use crate::eigen::Spectrum;
use crate::error::{Error, Result};
use crate::linalg::{det_lu, powers, solve, Matrix};
use crate::scalar::{cpowi, creal, factorial, from_usize, lit, root_of_unity, Real};
use crate::vandermonde::{build_vandermonde, esp_classic, vinv_general};

/// A scalar function together with its derivatives at complex points.
pub trait AnalyticFunction<T: Real> {
    /// `f^{(order)}(x)`, or `None` when that derivative order is not provided.
    fn derivative(&self, order: usize, x: Complex<T>) -> Option<Complex<T>>;

    fn value(&self, x: Complex<T>) -> Option<Complex<T>> {
        self.derivative(0, x)
    }
}

/// `x ↦ e^{t x}`, with derivatives `t^m e^{t x}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Exp<T: Real> {
    pub t: Complex<T>,
}

impl<T: Real> Exp<T> {
    pub fn new(t: Complex<T>) -> Self {
        Exp { t }
    }
}

impl<T: Real> AnalyticFunction<T> for Exp<T> {
    fn derivative(&self, order: usize, x: Complex<T>) -> Option<Complex<T>> {
        Some(cpowi(self.t, order) * (self.t * x).exp())
    }
}

/// `x ↦ x^power`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Monomial {
    pub power: usize,
}

impl<T: Real> AnalyticFunction<T> for Monomial {
    fn derivative(&self, order: usize, x: Complex<T>) -> Option<Complex<T>> {
        if order > self.power {
            return Some(Complex::zero());
        }
        let falling = factorial::<T>(self.power) / factorial::<T>(self.power - order);
        Some(cpowi(x, self.power - order) * falling)
    }
}

/// Finite power series `Σ_j a_j x^j`.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerSeries<T: Real> {
    pub coeffs: Vec<Complex<T>>,
}

impl<T: Real> AnalyticFunction<T> for PowerSeries<T> {
    fn derivative(&self, order: usize, x: Complex<T>) -> Option<Complex<T>> {
        let mut acc = Complex::zero();
        for (j, &a) in self.coeffs.iter().enumerate().skip(order).rev() {
            let falling = factorial::<T>(j) / factorial::<T>(j - order);
            acc = acc * x + a * falling;
        }
        // Horner over j ≥ order collects powers x^{j-order}
        Some(acc)
    }
}

/// User-supplied function with its own derivative rule.
pub struct WithDerivatives<F>(pub F);

impl<T: Real, F> AnalyticFunction<T> for WithDerivatives<F>
where
    F: Fn(usize, Complex<T>) -> Option<Complex<T>>,
{
    fn derivative(&self, order: usize, x: Complex<T>) -> Option<Complex<T>> {
        (self.0)(order, x)
    }
}

/// `f̃`: derivative values indexed by register rows.
#[derive(Clone, Debug, PartialEq)]
pub struct FTildeVector<T: Real = f64> {
    pub values: Vec<Complex<T>>,
}

/// Polynomial coefficients `b` with `f(A) = Σ b_k A^{k-1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoeffVector<T: Real = f64> {
    pub b: Vec<Complex<T>>,
}

/// How `b = V⁻¹ f̃` is obtained.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CoeffSolver {
    /// Multiply by the explicit Fourier-adjugate inverse of `V`.
    #[default]
    ExplicitInverse,
    /// Solve `V b = f̃` by Gaussian elimination (better conditioned near confluence).
    Elimination,
}

/// Evaluates `f̃[c(α,β)] = f^{(β)}(λ_α)`.
pub fn ftilde<T: Real>(f: &dyn AnalyticFunction<T>, spectrum: &Spectrum<T>) -> Result<FTildeVector<T>> {
    let mut values = Vec::with_capacity(spectrum.n());
    for (&lambda, &mu) in spectrum.lambdas().iter().zip(spectrum.mus()) {
        for beta in 0..mu {
            values.push(f.derivative(beta, lambda).ok_or(Error::Capability { order: beta })?);
        }
    }
    Ok(FTildeVector { values })
}

pub fn coeff_vector<T: Real>(
    f: &dyn AnalyticFunction<T>,
    spectrum: &Spectrum<T>,
    solver: CoeffSolver,
) -> Result<CoeffVector<T>> {
    let ft = ftilde(f, spectrum)?;
    let v = build_vandermonde(spectrum);
    let b = match solver {
        CoeffSolver::ExplicitInverse => vinv_general(&v)?.mul_vec(&ft.values),
        CoeffSolver::Elimination => solve(&v.matrix, &ft.values)?,
    };
    Ok(CoeffVector { b })
}

/// `Σ_k b_k A^{k-1}` with incrementally accumulated powers.
pub fn eval_coefficients<T: Real>(a: &Matrix<T>, b: &[Complex<T>]) -> Matrix<T> {
    let n = a.dim();
    let mut out = Matrix::zeros(n);
    let mut power = Matrix::identity(n);
    for (k, &bk) in b.iter().enumerate() {
        out.add_scaled(bk, &power);
        if k + 1 < b.len() {
            power = &power * a;
        }
    }
    out
}

fn check_spectrum<T: Real>(a: &Matrix<T>, spectrum: &Spectrum<T>) -> Result<()> {
    if a.dim() != spectrum.n() {
        return Err(Error::domain(format!(
            "spectrum describes dimension {} but matrix is {}x{}",
            spectrum.n(),
            a.dim(),
            a.dim()
        )));
    }
    Ok(())
}

/// `f(A)` from the spectrum of `A` via the explicit inverse of `V`.
pub fn apply_function<T: Real>(
    a: &Matrix<T>,
    f: &dyn AnalyticFunction<T>,
    spectrum: &Spectrum<T>,
) -> Result<Matrix<T>> {
    apply_function_with(a, f, spectrum, CoeffSolver::ExplicitInverse)
}

pub fn apply_function_with<T: Real>(
    a: &Matrix<T>,
    f: &dyn AnalyticFunction<T>,
    spectrum: &Spectrum<T>,
    solver: CoeffSolver,
) -> Result<Matrix<T>> {
    check_spectrum(a, spectrum)?;
    let coeffs = coeff_vector(f, spectrum, solver)?;
    Ok(eval_coefficients(a, &coeffs.b))
}

/// `V⁻¹ = Σ_l q_l V^{l-1}` with `q = W d`, where `W` is an `n x (n+1)` block of
/// the unitary DFT and `d` holds the scaled characteristic-polynomial samples.
#[derive(Clone, Debug, PartialEq)]
pub struct WdDecomposition<T: Real = f64> {
    /// Row-major `n x (n+1)`.
    pub w: Vec<Vec<Complex<T>>>,
    pub d: Vec<Complex<T>>,
    pub q: Vec<Complex<T>>,
}

impl<T: Real> WdDecomposition<T> {
    pub fn of(v: &Matrix<T>) -> Result<Self> {
        let n = v.dim();
        let samples = n + 1;
        let det_v = checked_det(v)?;
        let root_n1 = from_usize::<T>(samples).sqrt();
        let w: Vec<Vec<Complex<T>>> = (1..=n)
            .map(|l| {
                (0..samples)
                    .map(|m| root_of_unity::<T>((l * m) as i64, samples) / root_n1)
                    .collect()
            })
            .collect();
        let sign = if (n + 1).is_multiple_of(2) { T::one() } else { -T::one() };
        let prefactor = Complex::<T>::one() * sign / (det_v * root_n1);
        let d: Vec<Complex<T>> = (0..samples)
            .map(|m| {
                let z = root_of_unity::<T>(-(m as i64), samples);
                prefactor * det_lu(&(&Matrix::scalar(n, z) - v))
            })
            .collect();
        let q = w
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&d)
                    .fold(Complex::zero(), |acc, (&wl, &dm)| acc + wl * dm)
            })
            .collect();
        Ok(WdDecomposition { w, d, q })
    }

    /// Reassembles `V⁻¹ = Σ_l q_l V^{l-1}`.
    pub fn inverse(&self, v: &Matrix<T>) -> Matrix<T> {
        eval_coefficients(v, &self.q)
    }
}

/// `f(A)` through the `W`/`d` decomposition: the coefficients are
/// `b_k = Σ_l q_l (V^{l-1} f̃)_k`, so `V⁻¹` itself is never formed.
pub fn apply_function_alt<T: Real>(
    a: &Matrix<T>,
    f: &dyn AnalyticFunction<T>,
    spectrum: &Spectrum<T>,
) -> Result<Matrix<T>> {
    check_spectrum(a, spectrum)?;
    let n = a.dim();
    let ft = ftilde(f, spectrum)?;
    let v = build_vandermonde(spectrum).matrix;
    let wd = WdDecomposition::of(&v)?;
    let mut b = vec![Complex::zero(); n];
    let mut y = ft.values;
    for (l, &ql) in wd.q.iter().enumerate() {
        for (bk, &yk) in b.iter_mut().zip(&y) {
            *bk += ql * yk;
        }
        if l + 1 < n {
            y = v.mul_vec(&y);
        }
    }
    Ok(eval_coefficients(a, &b))
}

/// Route used by [`expm_with`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ExpmMethod {
    #[default]
    General,
    Distinct,
    Degenerate,
    /// Scaling-and-squaring Taylor series; ignores the spectrum.
    Oracle,
}

/// `e^{tA}` from the spectrum of `A`.
pub fn expm<T: Real>(a: &Matrix<T>, t: Complex<T>, spectrum: &Spectrum<T>) -> Result<Matrix<T>> {
    apply_function(a, &Exp::new(t), spectrum)
}

pub fn expm_with<T: Real>(
    a: &Matrix<T>,
    t: Complex<T>,
    spectrum: Option<&Spectrum<T>>,
    method: ExpmMethod,
) -> Result<Matrix<T>> {
    let need = || spectrum.ok_or_else(|| Error::domain("this exponential route needs the spectrum"));
    match method {
        ExpmMethod::General => expm(a, t, need()?),
        ExpmMethod::Distinct => expm_distinct(a, t, need()?),
        ExpmMethod::Degenerate => expm_degenerate(a, t, need()?),
        ExpmMethod::Oracle => Ok(expm_taylor(a, t)),
    }
}

/// All-distinct closed form:
/// `e^{tA} = Σ_k A^{k-1} Σ_α (-1)^{n-k} e_{n-k}(λ \ λ_α) / Π_{c≠α}(λ_α - λ_c) · e^{λ_α t}`.
pub fn expm_distinct<T: Real>(a: &Matrix<T>, t: Complex<T>, spectrum: &Spectrum<T>) -> Result<Matrix<T>> {
    check_spectrum(a, spectrum)?;
    if !spectrum.is_all_distinct() {
        return Err(Error::domain(
            "distinct-eigenvalue exponential needs every multiplicity equal to one",
        ));
    }
    let lambdas = spectrum.lambdas();
    let n = lambdas.len();
    let mut b = vec![Complex::zero(); n];
    for (alpha, &la) in lambdas.iter().enumerate() {
        let others: Vec<Complex<T>> = lambdas
            .iter()
            .enumerate()
            .filter(|&(c, _)| c != alpha)
            .map(|(_, &l)| l)
            .collect();
        let denom = others.iter().fold(Complex::<T>::one(), |acc, &l| acc * (la - l));
        let weight = (la * t).exp() / denom;
        for (k, bk) in b.iter_mut().enumerate() {
            let order = n - 1 - k;
            let e = esp_classic(&others, order);
            *bk += if order.is_multiple_of(2) {
                e * weight
            } else {
                -e * weight
            };
        }
    }
    Ok(eval_coefficients(a, &b))
}

/// Single-eigenvalue closed form
/// `e^{tA} = e^{λt} Σ_{k<n} (tA)^k/k! Σ_{β<n-k} (-λt)^β/β!`.
///
/// Collapses to `e^{λt} I` only when `A` is numerically `λI`; a defective
/// `A` keeps the full sum.
pub fn expm_degenerate<T: Real>(a: &Matrix<T>, t: Complex<T>, spectrum: &Spectrum<T>) -> Result<Matrix<T>> {
    check_spectrum(a, spectrum)?;
    if !spectrum.is_fully_degenerate() {
        return Err(Error::domain(
            "degenerate exponential needs exactly one distinct eigenvalue",
        ));
    }
    let n = a.dim();
    let lambda = spectrum.lambdas()[0];
    let scalar = (lambda * t).exp();
    let deviation = (a - &Matrix::scalar(n, lambda)).frobenius_norm();
    if deviation <= lit::<T>(1e-12) * (T::one() + lambda.norm()) {
        return Ok(Matrix::scalar(n, scalar));
    }
    let ta = a.scale(t);
    let neg_lt = -lambda * t;
    let mut out = Matrix::zeros(n);
    let mut power = Matrix::identity(n);
    for k in 0..n {
        let inner = (0..n - k).fold(Complex::<T>::zero(), |acc, beta| {
            acc + cpowi(neg_lt, beta) / factorial::<T>(beta)
        });
        out.add_scaled(inner / factorial::<T>(k), &power);
        if k + 1 < n {
            power = &power * &ta;
        }
    }
    Ok(out.scale(scalar))
}

/// Reference exponential: Taylor series of degree 30 on `tA / 2^s` with
/// `‖tA‖_F / 2^s ≤ 1/2`, followed by `s` squarings.
pub fn expm_taylor<T: Real>(a: &Matrix<T>, t: Complex<T>) -> Matrix<T> {
    const DEGREE: usize = 30;
    let x = a.scale(t);
    let norm = x.frobenius_norm();
    let half = lit::<T>(0.5);
    let mut squarings = 0u32;
    let mut scaled_norm = norm;
    while scaled_norm > half {
        scaled_norm *= half;
        squarings += 1;
    }
    let x = x.scale(creal(T::one() / lit::<T>(2.0).powi(squarings as i32)));
    let n = a.dim();
    // Horner: I + X(I + X/2(I + X/3(...)))
    let mut acc = Matrix::identity(n);
    for k in (1..=DEGREE).rev() {
        let mut next = &x * &acc;
        next = next.scale(creal(T::one() / from_usize::<T>(k)));
        acc = &Matrix::identity(n) + &next;
    }
    for _ in 0..squarings {
        acc = &acc * &acc;
    }
    acc
}

/// `Σ_{a=0}^{m} z^a/a! Σ_{b=0}^{m-a} (-z)^b/b!`, identically one for every `m`.
pub fn exp_identity_check<T: Real>(z: Complex<T>, m: usize) -> Complex<T> {
    let mut total = Complex::zero();
    for a in 0..=m {
        let inner = (0..=m - a).fold(Complex::<T>::zero(), |acc, b| acc + cpowi(-z, b) / factorial::<T>(b));
        total += cpowi(z, a) / factorial::<T>(a) * inner;
    }
    total
}

/// `e^{sA} B e^{-sA}` as the finite double sum
/// `Σ_{k,k'} b_k(s) b_{k'}(-s) A^{k-1} B A^{k'-1}` over the exponential
/// coefficients of `A`; no nested commutators are formed.
pub fn bch_conjugate<T: Real>(
    a: &Matrix<T>,
    b: &Matrix<T>,
    s: Complex<T>,
    spectrum: &Spectrum<T>,
) -> Result<Matrix<T>> {
    check_spectrum(a, spectrum)?;
    a.check_same_dim(b, "bch_conjugate")?;
    let n = a.dim();
    let v = build_vandermonde(spectrum);
    let vinv = vinv_general(&v)?;
    let forward = vinv.mul_vec(&ftilde(&Exp::new(s), spectrum)?.values);
    let backward = vinv.mul_vec(&ftilde(&Exp::new(-s), spectrum)?.values);
    let pows = powers(a, n);
    let mut out = Matrix::zeros(n);
    for (k, pk) in pows.iter().enumerate() {
        let left = pk * b;
        for (kp, pkp) in pows.iter().enumerate() {
            out.add_scaled(forward[k] * backward[kp], &(&left * pkp));
        }
    }
    Ok(out)
}

/// Truncated commutator series `Σ_{k≤K} s^k/k! ad_A^k(B)`.
pub fn bch_series_oracle<T: Real>(a: &Matrix<T>, b: &Matrix<T>, s: Complex<T>, order: usize) -> Result<Matrix<T>> {
    a.check_same_dim(b, "bch_series_oracle")?;
    let mut term = b.clone();
    let mut out = b.clone();
    let mut weight = Complex::<T>::one();
    for k in 1..=order {
        term = a.commutator(&term);
        weight = weight * s / from_usize::<T>(k);
        out.add_scaled(weight, &term);
    }
    Ok(out)
}
