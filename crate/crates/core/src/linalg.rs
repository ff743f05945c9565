//! Dense complex matrices and the determinant machinery.
//!
//! [`det_levicivita`] is the unconstrained-index permutation sum over `n^n`
//! index tuples; it is kept as an oracle for the production kernel
//! [`det_lu`].

use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{creal, is_finite, lit, Real};

/// Largest dimension accepted by [`det_levicivita`].
pub const LEVI_CIVITA_MAX_DIM: usize = 8;

/// Dense square complex matrix stored row-major.
///
/// The `0 x 0` matrix is allowed and has determinant one.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T: Real = f64> {
    n: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> Matrix<T> {
    /// Builds an `n x n` matrix from row-major entries, rejecting non-finite values.
    pub fn new(n: usize, data: Vec<Complex<T>>) -> Result<Self> {
        if data.len() != n * n {
            return Err(Error::domain(format!(
                "expected {} entries for a {n}x{n} matrix, got {}",
                n * n,
                data.len()
            )));
        }
        if let Some(pos) = data.iter().position(|z| !is_finite(*z)) {
            return Err(Error::domain(format!(
                "non-finite entry at ({}, {})",
                pos / n.max(1),
                pos % n.max(1)
            )));
        }
        Ok(Matrix { n, data })
    }

    pub fn from_rows(rows: Vec<Vec<Complex<T>>>) -> Result<Self> {
        let n = rows.len();
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
            return Err(Error::domain(format!(
                "row {i} has {} entries, expected {n} (matrix must be square)",
                r.len()
            )));
        }
        Self::new(n, rows.into_iter().flatten().collect())
    }

    /// Convenience constructor from real rows.
    pub fn from_real_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.as_ref().iter().map(|&x| creal(lit(x))).collect())
                .collect(),
        )
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Complex<T>) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Matrix { n, data }
    }

    pub fn zeros(n: usize) -> Self {
        Matrix {
            n,
            data: vec![Complex::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, Complex::one())
    }

    /// `c * I`.
    pub fn scalar(n: usize, c: Complex<T>) -> Self {
        Self::from_fn(n, |i, j| if i == j { c } else { Complex::zero() })
    }

    pub fn diag(d: &[Complex<T>]) -> Self {
        Self::from_fn(d.len(), |i, j| if i == j { d[i] } else { Complex::zero() })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn as_slice(&self) -> &[Complex<T>] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Complex<T>] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Complex<T>]> {
        // chunks(0) panics, the empty matrix has no rows anyway
        self.data.chunks(self.n.max(1))
    }

    pub fn diagonal(&self) -> Vec<Complex<T>> {
        (0..self.n).map(|i| self[(i, i)]).collect()
    }

    pub fn map(&self, f: impl Fn(Complex<T>) -> Complex<T>) -> Self {
        Matrix {
            n: self.n,
            data: self.data.iter().map(|&z| f(z)).collect(),
        }
    }

    pub fn scale(&self, c: Complex<T>) -> Self {
        self.map(|z| z * c)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.n, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self[(j, i)])
    }

    pub fn trace(&self) -> Complex<T> {
        (0..self.n).map(|i| self[(i, i)]).fold(Complex::zero(), |a, b| a + b)
    }

    pub fn frobenius_norm(&self) -> T {
        self.data
            .iter()
            .map(|z| z.norm_sqr())
            .fold(T::zero(), |a, b| a + b)
            .sqrt()
    }

    pub fn max_abs(&self) -> T {
        self.data.iter().map(|z| z.norm()).fold(T::zero(), T::max)
    }

    /// Largest singular value, by power iteration on `M† M`.
    pub fn spectral_norm(&self) -> T {
        if self.n == 0 {
            return T::zero();
        }
        let gram = &self.adjoint() * self;
        let mut v: Vec<Complex<T>> = (0..self.n)
            .map(|k| Complex::new(T::one(), lit::<T>(0.1) * lit::<T>(k as f64)))
            .collect();
        let mut estimate = T::zero();
        for _ in 0..500 {
            let w = gram.mul_vec(&v);
            let norm = w.iter().map(|z| z.norm_sqr()).fold(T::zero(), |a, b| a + b).sqrt();
            if norm == T::zero() {
                return T::zero();
            }
            v = w.into_iter().map(|z| z / norm).collect();
            let converged = (norm - estimate).abs() <= T::epsilon() * lit(16.0) * norm;
            estimate = norm;
            if converged {
                break;
            }
        }
        estimate.sqrt()
    }

    pub fn mul_vec(&self, v: &[Complex<T>]) -> Vec<Complex<T>> {
        assert_eq!(v.len(), self.n, "vector length must match matrix dimension");
        self.rows()
            .take(self.n)
            .map(|r| r.iter().zip(v).fold(Complex::zero(), |acc, (&a, &b)| acc + a * b))
            .collect()
    }

    /// `[A, B] = AB - BA`.
    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    /// `‖H - H†‖_F`.
    pub fn hermitian_deviation(&self) -> T {
        (self - &self.adjoint()).frobenius_norm()
    }

    /// `B^k` by repeated squaring, with `B^0 = I`.
    pub fn pow(&self, k: usize) -> Self {
        mat_pow(self, k)
    }

    pub(crate) fn check_same_dim(&self, other: &Self, what: &str) -> Result<()> {
        if self.n != other.n {
            return Err(Error::domain(format!(
                "{what}: dimension mismatch ({} vs {})",
                self.n, other.n
            )));
        }
        Ok(())
    }
}

impl<T: Real> Index<(usize, usize)> for Matrix<T> {
    type Output = Complex<T>;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        &self.data[i * self.n + j]
    }
}

impl<T: Real> IndexMut<(usize, usize)> for Matrix<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        &mut self.data[i * self.n + j]
    }
}

impl<'a, T: Real> Mul<&'a Matrix<T>> for &'a Matrix<T> {
    type Output = Matrix<T>;

    fn mul(self, rhs: &'a Matrix<T>) -> Matrix<T> {
        assert_eq!(self.n, rhs.n, "matrix product dimension mismatch");
        let n = self.n;
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        out
    }
}

impl<'a, T: Real> Add<&'a Matrix<T>> for &'a Matrix<T> {
    type Output = Matrix<T>;

    fn add(self, rhs: &'a Matrix<T>) -> Matrix<T> {
        assert_eq!(self.n, rhs.n, "matrix sum dimension mismatch");
        Matrix {
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| a + b).collect(),
        }
    }
}

impl<'a, T: Real> Sub<&'a Matrix<T>> for &'a Matrix<T> {
    type Output = Matrix<T>;

    fn sub(self, rhs: &'a Matrix<T>) -> Matrix<T> {
        assert_eq!(self.n, rhs.n, "matrix difference dimension mismatch");
        Matrix {
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| a - b).collect(),
        }
    }
}

impl<'a, T: Real> AddAssign<&'a Matrix<T>> for Matrix<T> {
    fn add_assign(&mut self, rhs: &'a Matrix<T>) {
        assert_eq!(self.n, rhs.n, "matrix sum dimension mismatch");
        for (a, &b) in self.data.iter_mut().zip(&rhs.data) {
            *a += b;
        }
    }
}

impl<T: Real> Neg for &Matrix<T> {
    type Output = Matrix<T>;

    fn neg(self) -> Matrix<T> {
        self.map(|z| -z)
    }
}

impl<T: Real> Matrix<T> {
    /// `self += c * other`, the accumulation step of every power-series sum here.
    pub fn add_scaled(&mut self, c: Complex<T>, other: &Self) {
        assert_eq!(self.n, other.n, "matrix sum dimension mismatch");
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a += c * b;
        }
    }
}

/// `B^k` with `B^0 = I`, by repeated squaring.
pub fn mat_pow<T: Real>(b: &Matrix<T>, k: usize) -> Matrix<T> {
    let mut acc = Matrix::identity(b.dim());
    let mut base = b.clone();
    let mut e = k;
    while e > 0 {
        if e & 1 == 1 {
            acc = &acc * &base;
        }
        e >>= 1;
        if e > 0 {
            base = &base * &base;
        }
    }
    acc
}

/// Successive powers `I, B, B², …, B^{count-1}`.
pub fn powers<T: Real>(b: &Matrix<T>, count: usize) -> Vec<Matrix<T>> {
    let mut out: Vec<Matrix<T>> = Vec::with_capacity(count);
    if count == 0 {
        return out;
    }
    out.push(Matrix::identity(b.dim()));
    for k in 1..count {
        let next = &out[k - 1] * b;
        out.push(next);
    }
    out
}

/// Levi-Civita symbol of a tuple of 0-based indices, each in `0..k.len()`:
/// the product of `sign(k_b - k_a)` over all ordered pairs `a < b`.
pub fn levi_civita(k: &[usize]) -> Result<i8> {
    let n = k.len();
    if let Some(&bad) = k.iter().find(|&&x| x >= n) {
        return Err(Error::domain(format!("Levi-Civita index {bad} out of range 0..{n}")));
    }
    Ok(levi_civita_unchecked(k))
}

fn levi_civita_unchecked(k: &[usize]) -> i8 {
    let mut sign = 1i8;
    for a in 0..k.len() {
        for b in a + 1..k.len() {
            match k[b].cmp(&k[a]) {
                std::cmp::Ordering::Less => sign = -sign,
                std::cmp::Ordering::Equal => return 0,
                std::cmp::Ordering::Greater => {}
            }
        }
    }
    sign
}

/// Determinant as the sum over all `n^n` index tuples of
/// `ε_{k_1…k_n} Π_q B_{q,k_q}`.
///
/// Costs `O(n^n · n²)`; restricted to `n ≤ 8` and meant as an oracle.
pub fn det_levicivita<T: Real>(b: &Matrix<T>) -> Result<Complex<T>> {
    let n = b.dim();
    if n > LEVI_CIVITA_MAX_DIM {
        return Err(Error::TooLarge {
            operation: "det_levicivita",
            n,
            max: LEVI_CIVITA_MAX_DIM,
        });
    }
    if n == 0 {
        return Ok(Complex::one());
    }
    let mut idx = vec![0usize; n];
    let mut total = Complex::zero();
    loop {
        let eps = levi_civita_unchecked(&idx);
        if eps != 0 {
            let prod = idx
                .iter()
                .enumerate()
                .fold(Complex::one(), |acc, (q, &kq)| acc * b[(q, kq)]);
            if eps > 0 {
                total += prod;
            } else {
                total -= prod;
            }
        }
        // odometer increment over 0..n in every slot
        let mut pos = n;
        loop {
            if pos == 0 {
                return Ok(total);
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < n {
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// LU factorization with partial pivoting, packed in place.
#[derive(Clone, Debug)]
pub struct Lu<T: Real> {
    lu: Matrix<T>,
    perm: Vec<usize>,
    sign: i8,
    singular: bool,
}

impl<T: Real> Lu<T> {
    pub fn factor(a: &Matrix<T>) -> Self {
        let n = a.dim();
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut sign = 1i8;
        let mut singular = false;
        for k in 0..n {
            let (p, pmax) = (k..n)
                .map(|i| (i, lu[(i, k)].norm()))
                .fold(
                    (k, T::neg_infinity()),
                    |best, cur| if cur.1 > best.1 { cur } else { best },
                );
            if pmax == T::zero() {
                singular = true;
                continue;
            }
            if p != k {
                for j in 0..n {
                    lu.data.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
                sign = -sign;
            }
            let pivot = lu[(k, k)];
            for i in k + 1..n {
                let factor = lu[(i, k)] / pivot;
                lu[(i, k)] = factor;
                if factor.is_zero() {
                    continue;
                }
                for j in k + 1..n {
                    let u = lu[(k, j)];
                    lu[(i, j)] -= factor * u;
                }
            }
        }
        Lu {
            lu,
            perm,
            sign,
            singular,
        }
    }

    pub fn det(&self) -> Complex<T> {
        if self.singular {
            return Complex::zero();
        }
        let prod = self.lu.diagonal().into_iter().fold(Complex::one(), |a, b| a * b);
        if self.sign < 0 {
            -prod
        } else {
            prod
        }
    }

    pub fn is_singular(&self) -> bool {
        self.singular
    }

    /// Solves `A x = b`.
    pub fn solve(&self, b: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
        let n = self.lu.dim();
        if b.len() != n {
            return Err(Error::domain(format!(
                "right-hand side has length {}, expected {n}",
                b.len()
            )));
        }
        if self.singular {
            return Err(Error::Singular {
                det: 0.0,
                threshold: 0.0,
                hint: Some("zero pivot in elimination"),
            });
        }
        let mut x: Vec<Complex<T>> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            for j in 0..i {
                let l = self.lu[(i, j)];
                let xj = x[j];
                x[i] -= l * xj;
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                let u = self.lu[(i, j)];
                let xj = x[j];
                x[i] -= u * xj;
            }
            x[i] /= self.lu[(i, i)];
        }
        Ok(x)
    }

    pub fn inverse(&self) -> Result<Matrix<T>> {
        let n = self.lu.dim();
        let mut inv = Matrix::zeros(n);
        for j in 0..n {
            let mut e = vec![Complex::zero(); n];
            e[j] = Complex::one();
            let col = self.solve(&e)?;
            for (i, v) in col.into_iter().enumerate() {
                inv[(i, j)] = v;
            }
        }
        Ok(inv)
    }
}

/// Determinant by partially pivoted LU factorization.
pub fn det_lu<T: Real>(b: &Matrix<T>) -> Complex<T> {
    Lu::factor(b).det()
}

/// Inverse by Gaussian elimination; the independent reference route for
/// the closed-form inverses.
pub fn inverse_gauss<T: Real>(a: &Matrix<T>) -> Result<Matrix<T>> {
    Lu::factor(a).inverse()
}

/// Solves `A x = b` by Gaussian elimination.
pub fn solve<T: Real>(a: &Matrix<T>, b: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
    Lu::factor(a).solve(b)
}

/// Frobenius-norm condition number `‖A‖_F ‖A⁻¹‖_F`, with the inverse taken by elimination.
pub fn condition_number<T: Real>(a: &Matrix<T>) -> Result<T> {
    let inv = inverse_gauss(a)?;
    Ok(a.frobenius_norm() * inv.frobenius_norm())
}

/// `|det| ≤ 1e-12 · Π_i ‖row_i‖` counts as singular for the closed-form
/// inverses. The row-norm product is Hadamard's bound on `|det|`, so the
/// test is insensitive to row scaling.
pub fn singularity_threshold<T: Real>(a: &Matrix<T>) -> T {
    let bound = a
        .rows()
        .map(|r| r.iter().map(|z| z.norm_sqr()).fold(T::zero(), |x, y| x + y).sqrt())
        .fold(T::one(), |acc, x| acc * x);
    lit::<T>(1e-12) * bound
}
