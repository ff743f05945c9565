//! Confluent Vandermonde matrices and their inverses.
//!
//! Row `c(α, β)` of `V` is the `β`-th derivative of the power row
//! `(1, λ, λ², …, λ^{n-1})` evaluated at `λ_α`. The register map turns the
//! (eigenvalue, derivative order) pair into that flat row index and back.
//! All indices are 0-based: `register(α, β) = Σ_{j<α} μ_j + β`.
//!
//! Three inverse routes are provided:
//! * [`vinv_general`]: the Fourier-adjugate inverse, any multiplicity structure;
//! * [`vinv_distinct`]: closed form when every `μ = 1`;
//! * [`vinv_degenerate`]: closed form when there is a single eigenvalue.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::charpoly::{checked_det, inverse_fourier};
use crate::eigen::Spectrum;
use crate::error::{Diagnosed, Error, Result, Warning};
use crate::linalg::Matrix;
use crate::scalar::{cpowi, factorial, from_usize, lit, root_of_unity, to_f64, Real};

/// Below this eigenvalue separation the distinct-case formula raises a warning.
pub const NEAR_CONFLUENT_SEPARATION: f64 = 1e-6;

/// Bijection between `(α, β)` pairs and row indices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegisterMap {
    mus: Vec<usize>,
    offsets: Vec<usize>,
    backward: Vec<(usize, usize)>,
}

impl RegisterMap {
    pub fn new(mus: &[usize]) -> Result<Self> {
        if mus.is_empty() || mus.contains(&0) {
            return Err(Error::domain(
                "multiplicities must be a non-empty list of positive integers",
            ));
        }
        let mut offsets = Vec::with_capacity(mus.len());
        let mut backward = Vec::with_capacity(mus.iter().sum());
        let mut acc = 0;
        for (alpha, &mu) in mus.iter().enumerate() {
            offsets.push(acc);
            backward.extend((0..mu).map(|beta| (alpha, beta)));
            acc += mu;
        }
        Ok(RegisterMap {
            mus: mus.to_vec(),
            offsets,
            backward,
        })
    }

    pub fn n(&self) -> usize {
        self.backward.len()
    }

    pub fn mus(&self) -> &[usize] {
        &self.mus
    }

    /// Row index of `(alpha, beta)`.
    pub fn forward(&self, alpha: usize, beta: usize) -> Result<usize> {
        match self.mus.get(alpha) {
            None => Err(Error::domain(format!(
                "eigenvalue index {alpha} out of range 0..{}",
                self.mus.len()
            ))),
            Some(&mu) if beta >= mu => Err(Error::domain(format!(
                "derivative order {beta} exceeds multiplicity {mu} of eigenvalue {alpha}"
            ))),
            Some(_) => Ok(self.offsets[alpha] + beta),
        }
    }

    /// `(alpha, beta)` owning row `v`.
    pub fn backward(&self, v: usize) -> Result<(usize, usize)> {
        self.backward
            .get(v)
            .copied()
            .ok_or_else(|| Error::domain(format!("row index {v} out of range 0..{}", self.n())))
    }

    /// Iterates `(row, alpha, beta)` in row order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.backward.iter().enumerate().map(|(v, &(a, b))| (v, a, b))
    }
}

/// Row index `c(α, β) = Σ_{j<α} μ_j + β` (0-based).
pub fn register(alpha: usize, beta: usize, mus: &[usize]) -> Result<usize> {
    RegisterMap::new(mus)?.forward(alpha, beta)
}

/// Inverse register function: the `(α, β)` with `register(α, β) = v`.
pub fn inverse_register(v: usize, mus: &[usize]) -> Result<(usize, usize)> {
    RegisterMap::new(mus)?.backward(v)
}

/// A confluent Vandermonde matrix together with the spectrum and register
/// map it was built from.
#[derive(Clone, Debug, PartialEq)]
pub struct ConfluentVandermonde<T: Real = f64> {
    pub matrix: Matrix<T>,
    pub spectrum: Spectrum<T>,
    pub register: RegisterMap,
}

/// Element `V[c(α,β), d] = d!/(d-β)! · λ_α^{d-β}` for `d ≥ β`, zero otherwise.
fn element_piecewise<T: Real>(lambda: Complex<T>, beta: usize, d: usize) -> Complex<T> {
    if d < beta {
        Complex::zero()
    } else {
        cpowi(lambda, d - beta) * (factorial::<T>(d) / factorial::<T>(d - beta))
    }
}

/// Step function `S(z, y)`: one for `z ≥ y`, zero otherwise.
fn step(z: usize, y: usize) -> usize {
    usize::from(z >= y)
}

/// Single-term element formula with no case split: the factorial argument
/// and the power are both multiplied by the step so that every index pair
/// is admissible.
fn element_single_term<T: Real>(lambda: Complex<T>, beta: usize, d: usize) -> Complex<T> {
    let s = step(d, beta);
    let shift = d.wrapping_sub(beta).wrapping_mul(s);
    cpowi(lambda, shift) * (factorial::<T>(d) * from_usize::<T>(s) / factorial::<T>(shift))
}

/// `V` built row by row from the register map (piecewise element form).
pub fn build_vandermonde<T: Real>(spectrum: &Spectrum<T>) -> ConfluentVandermonde<T> {
    let register = RegisterMap::new(spectrum.mus()).expect("spectrum multiplicities are valid");
    let n = register.n();
    let mut matrix = Matrix::zeros(n);
    for (row, alpha, beta) in register.iter() {
        let lambda = spectrum.lambdas()[alpha];
        for d in 0..n {
            matrix[(row, d)] = element_piecewise(lambda, beta, d);
        }
    }
    ConfluentVandermonde {
        matrix,
        spectrum: spectrum.clone(),
        register,
    }
}

/// `V` built elementwise from `(q, d)` alone through the inverse register
/// function and the single-term element formula.
pub fn build_vandermonde_single_term<T: Real>(spectrum: &Spectrum<T>) -> ConfluentVandermonde<T> {
    let register = RegisterMap::new(spectrum.mus()).expect("spectrum multiplicities are valid");
    let n = register.n();
    let matrix = Matrix::from_fn(n, |q, d| {
        let (alpha, beta) = register.backward(q).expect("row within range");
        element_single_term(spectrum.lambdas()[alpha], beta, d)
    });
    ConfluentVandermonde {
        matrix,
        spectrum: spectrum.clone(),
        register,
    }
}

/// Diagonal scales with `V = D_r W D_c`, `D_r = diag(β! ρ^{-β})`,
/// `D_c = diag(ρ^d)` and `ρ = max|λ|`, so that `W[c(α,β), d]` is the
/// binomial `C(d, β) (λ_α/ρ)^{d-β}`.
pub fn equilibration_scales<T: Real>(v: &ConfluentVandermonde<T>) -> (Vec<T>, Vec<T>) {
    let rho = v.spectrum.lambdas().iter().map(|l| l.norm()).fold(T::zero(), T::max);
    let rho = if rho > T::zero() { rho } else { T::one() };
    let rows = v
        .register
        .iter()
        .map(|(_, _, beta)| factorial::<T>(beta) / rho.powi(beta as i32))
        .collect();
    let cols = (0..v.register.n()).map(|d| rho.powi(d as i32)).collect();
    (rows, cols)
}

/// Binomial shift `T(σ)[k, d] = C(d, k) σ^{d-k}`, upper triangular, with
/// `V(λ) = V(λ - σ) T(σ)` and `T(σ)⁻¹ = T(-σ)`.
pub fn taylor_shift<T: Real>(n: usize, sigma: Complex<T>) -> Matrix<T> {
    Matrix::from_fn(n, |k, d| {
        if d < k {
            Complex::zero()
        } else {
            let binom = factorial::<T>(d) / (factorial::<T>(k) * factorial::<T>(d - k));
            cpowi(sigma, d - k) * binom
        }
    })
}

/// `V⁻¹` through the Fourier-adjugate inverse; valid for every multiplicity structure.
///
/// The spectrum is first centred on its multiplicity-weighted mean `σ`, the
/// Vandermonde matrix of the centred nodes is equilibrated as in
/// [`equilibration_scales`], and the adjugate inverse of that `W` is mapped
/// back with `V⁻¹ = T(-σ) D_c⁻¹ W⁻¹ D_r⁻¹`, followed by one Newton
/// refinement step against `V`. The transformations are exact; without them
/// the `β!` row growth and off-centre node clusters swamp the
/// characteristic-polynomial samples on the unit circle. The unmodified
/// closed form is [`inverse_fourier`] applied to `v.matrix`.
pub fn vinv_general<T: Real>(v: &ConfluentVandermonde<T>) -> Result<Matrix<T>> {
    let spectrum = &v.spectrum;
    let n = spectrum.n();
    let sigma = spectrum
        .lambdas()
        .iter()
        .zip(spectrum.mus())
        .fold(Complex::<T>::zero(), |acc, (&l, &mu)| acc + l * from_usize::<T>(mu))
        / from_usize::<T>(n.max(1));
    let centred = Spectrum::new(
        spectrum.lambdas().iter().map(|&l| l - sigma).collect(),
        spectrum.mus().to_vec(),
    )?;
    let with_hint = |e: Error| match e {
        Error::Singular { det, threshold, .. } => Error::Singular {
            det,
            threshold,
            hint: Some("eigenvalues nearly coincide for this multiplicity split; re-cluster the spectrum"),
        },
        other => other,
    };
    checked_det(&v.matrix).map_err(with_hint)?;
    let vc = build_vandermonde(&centred);
    let (rows, cols) = equilibration_scales(&vc);
    let w = Matrix::from_fn(n, |i, j| vc.matrix[(i, j)] / (rows[i] * cols[j]));
    let w_inv = inverse_fourier(&w).map_err(with_hint)?;
    let centred_inv = Matrix::from_fn(n, |i, j| w_inv[(i, j)] / (cols[i] * rows[j]));
    let x = &taylor_shift(n, -sigma) * &centred_inv;
    // one Newton step X + X(I - VX)
    let residual = &Matrix::identity(n) - &(&v.matrix * &x);
    Ok(&x + &(&x * &residual))
}

/// Closed form for all-distinct spectra:
/// `V⁻¹[a, b] = (-1)^{n-1-a} e_{n-1-a}(λ \ λ_b) / Π_{c≠b}(λ_b - λ_c)`.
///
/// Separations below [`NEAR_CONFLUENT_SEPARATION`] are reported as a warning.
pub fn vinv_distinct<T: Real>(spectrum: &Spectrum<T>) -> Result<Diagnosed<Matrix<T>>> {
    if !spectrum.is_all_distinct() {
        return Err(Error::domain(
            "distinct-eigenvalue inverse needs every multiplicity equal to one",
        ));
    }
    let lambdas = spectrum.lambdas();
    let n = lambdas.len();
    let mut inv = Matrix::zeros(n);
    for b in 0..n {
        let others: Vec<Complex<T>> = lambdas
            .iter()
            .enumerate()
            .filter(|&(c, _)| c != b)
            .map(|(_, &l)| l)
            .collect();
        let denom = others
            .iter()
            .fold(Complex::<T>::one(), |acc, &l| acc * (lambdas[b] - l));
        for a in 0..n {
            let order = n - 1 - a;
            let sign = if order.is_multiple_of(2) { T::one() } else { -T::one() };
            inv[(a, b)] = esp_classic(&others, order) * sign / denom;
        }
    }
    let mut warnings = Vec::new();
    let sep = spectrum.min_separation();
    if sep < lit(NEAR_CONFLUENT_SEPARATION) {
        warnings.push(Warning::NearConfluent {
            min_separation: to_f64(sep),
        });
    }
    Ok(Diagnosed::new(inv, warnings))
}

/// Closed form for a single eigenvalue of multiplicity `n`:
/// `V⁻¹[a, b] = (-λ)^{b-a} / ((b-a)! a!)` for `b ≥ a`, zero below the diagonal.
pub fn vinv_degenerate<T: Real>(spectrum: &Spectrum<T>) -> Result<Matrix<T>> {
    if !spectrum.is_fully_degenerate() {
        return Err(Error::domain(
            "degenerate inverse needs exactly one distinct eigenvalue",
        ));
    }
    let neg_lambda = -spectrum.lambdas()[0];
    let n = spectrum.n();
    Ok(Matrix::from_fn(n, |a, b| {
        if b < a {
            Complex::zero()
        } else {
            cpowi(neg_lambda, b - a) / (factorial::<T>(b - a) * factorial::<T>(a))
        }
    }))
}

/// Elementary symmetric polynomial as the sum over strictly increasing
/// index subsets of size `j`; `e_0 = 1` and `e_j = 0` for `j > m`.
pub fn esp_classic<T: Real>(x: &[Complex<T>], j: usize) -> Complex<T> {
    let m = x.len();
    if j == 0 {
        return Complex::one();
    }
    if j > m {
        return Complex::zero();
    }
    let mut idx: Vec<usize> = (0..j).collect();
    let mut total = Complex::zero();
    loop {
        total += idx.iter().fold(Complex::<T>::one(), |acc, &k| acc * x[k]);
        // advance to the next increasing tuple
        let mut pos = j;
        loop {
            if pos == 0 {
                return total;
            }
            pos -= 1;
            if idx[pos] < m - j + pos {
                idx[pos] += 1;
                for p in pos + 1..j {
                    idx[p] = idx[p - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Elementary symmetric polynomial from the roots-of-unity sum
/// `(-1)^j/(m+1) Σ_k e^{i2πk(m-j)/(m+1)} Π_l (e^{-i2πk/(m+1)} - x_l)`.
///
/// Real input gives a roundoff-level imaginary residue, which is returned as is.
pub fn esp_fourier<T: Real>(x: &[Complex<T>], j: usize) -> Result<Complex<T>> {
    let m = x.len();
    if j > m {
        return Err(Error::domain(format!("esp_fourier order {j} outside 0..={m}")));
    }
    let samples = m + 1;
    let mut total = Complex::zero();
    for k in 0..samples {
        let w = root_of_unity::<T>(-(k as i64), samples);
        let prod = x.iter().fold(Complex::<T>::one(), |acc, &xl| acc * (w - xl));
        total += root_of_unity::<T>((k * (m - j)) as i64, samples) * prod;
    }
    let sign = if j.is_multiple_of(2) { T::one() } else { -T::one() };
    Ok(total * sign / from_usize::<T>(samples))
}
