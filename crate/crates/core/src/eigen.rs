//! Eigenvalues, multiplicity structure and the partition count.
//!
//! Eigenvalues are the roots of the characteristic polynomial from
//! [`charpoly_coeffs`], found with the Weierstrass (Durand–Kerner)
//! simultaneous iteration. Nearby roots are then grouped into a
//! [`Spectrum`] of distinct values with multiplicities.
//!
//! Multiple roots are ill-conditioned: a `μ`-fold root is only resolved to
//! roughly `ε^{1/μ}`, so the default clustering tolerance is meant for
//! multiplicities up to two. Pass an explicit tolerance (or a known
//! [`Spectrum`]) for anything more degenerate.

use std::cmp::Ordering;

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::charpoly::charpoly_coeffs;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{from_usize, is_finite, lit, to_f64, Real};

/// Distinct eigenvalues `λ_1..λ_M` with multiplicities `μ_1..μ_M`, `Σ μ = n`.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum<T: Real = f64> {
    lambdas: Vec<Complex<T>>,
    mus: Vec<usize>,
}

impl<T: Real> Spectrum<T> {
    /// Validates and keeps the caller's order (row order of the Vandermonde
    /// matrix follows it). Use [`Spectrum::canonical`] for the sorted form.
    pub fn new(lambdas: Vec<Complex<T>>, mus: Vec<usize>) -> Result<Self> {
        if lambdas.is_empty() {
            return Err(Error::domain("spectrum needs at least one eigenvalue"));
        }
        if lambdas.len() != mus.len() {
            return Err(Error::domain(format!(
                "{} eigenvalues but {} multiplicities",
                lambdas.len(),
                mus.len()
            )));
        }
        if mus.contains(&0) {
            return Err(Error::domain("multiplicities must be positive"));
        }
        if lambdas.iter().any(|&l| !is_finite(l)) {
            return Err(Error::domain("eigenvalues must be finite"));
        }
        for a in 0..lambdas.len() {
            for b in a + 1..lambdas.len() {
                if lambdas[a] == lambdas[b] {
                    return Err(Error::domain(format!(
                        "eigenvalues {a} and {b} coincide; merge them into one entry with summed multiplicity"
                    )));
                }
            }
        }
        Ok(Spectrum { lambdas, mus })
    }

    /// All multiplicities one.
    pub fn distinct(lambdas: Vec<Complex<T>>) -> Result<Self> {
        let mus = vec![1; lambdas.len()];
        Self::new(lambdas, mus)
    }

    /// A single eigenvalue of multiplicity `n`.
    pub fn degenerate(lambda: Complex<T>, n: usize) -> Result<Self> {
        Self::new(vec![lambda], vec![n])
    }

    /// Same spectrum in canonical order: descending real part, ties by
    /// descending imaginary part.
    pub fn canonical(mut self) -> Self {
        let mut pairs: Vec<(Complex<T>, usize)> = self.lambdas.drain(..).zip(self.mus.drain(..)).collect();
        pairs.sort_by(|a, b| canonical_cmp(a.0, b.0));
        let (lambdas, mus) = pairs.into_iter().unzip();
        Spectrum { lambdas, mus }
    }

    pub fn lambdas(&self) -> &[Complex<T>] {
        &self.lambdas
    }

    pub fn mus(&self) -> &[usize] {
        &self.mus
    }

    /// Total dimension `Σ μ`.
    pub fn n(&self) -> usize {
        self.mus.iter().sum()
    }

    /// Number of distinct eigenvalues.
    pub fn m(&self) -> usize {
        self.lambdas.len()
    }

    pub fn max_multiplicity(&self) -> usize {
        self.mus.iter().copied().max().unwrap_or(0)
    }

    pub fn is_all_distinct(&self) -> bool {
        self.mus.iter().all(|&m| m == 1)
    }

    pub fn is_fully_degenerate(&self) -> bool {
        self.lambdas.len() == 1
    }

    /// The full multiset `λ'` with repetitions, in register order.
    pub fn expanded(&self) -> Vec<Complex<T>> {
        self.lambdas
            .iter()
            .zip(&self.mus)
            .flat_map(|(&l, &m)| std::iter::repeat_n(l, m))
            .collect()
    }

    /// Smallest distance between two distinct eigenvalues (`∞` if `M = 1`).
    pub fn min_separation(&self) -> T {
        let mut best = T::infinity();
        for a in 0..self.lambdas.len() {
            for b in a + 1..self.lambdas.len() {
                best = best.min((self.lambdas[a] - self.lambdas[b]).norm());
            }
        }
        best
    }

    pub fn is_canonical(&self) -> bool {
        self.lambdas
            .windows(2)
            .all(|w| canonical_cmp(w[0], w[1]) != Ordering::Greater)
    }
}

fn canonical_cmp<T: Real>(a: Complex<T>, b: Complex<T>) -> Ordering {
    b.re.partial_cmp(&a.re)
        .unwrap_or(Ordering::Equal)
        .then_with(|| b.im.partial_cmp(&a.im).unwrap_or(Ordering::Equal))
}

/// Root-finding and clustering controls.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenOptions<T: Real = f64> {
    /// Absolute clustering distance; `None` means `1e-8 · (1 + max|root|)`.
    pub cluster_tol: Option<T>,
    pub root_iters: usize,
    /// Accepted residual is `root_tol · (1 + ‖A‖_F)^n`.
    pub root_tol: T,
}

impl<T: Real> Default for EigenOptions<T> {
    fn default() -> Self {
        EigenOptions {
            cluster_tol: None,
            root_iters: 500,
            root_tol: lit(1e-10),
        }
    }
}

impl<T: Real> EigenOptions<T> {
    pub fn with_cluster_tol(mut self, tol: T) -> Self {
        self.cluster_tol = Some(tol);
        self
    }
}

/// Default clustering distance for a set of roots.
pub fn default_cluster_tol<T: Real>(roots: &[Complex<T>]) -> T {
    let biggest = roots.iter().map(|z| z.norm()).fold(T::zero(), T::max);
    lit::<T>(1e-8) * (T::one() + biggest)
}

/// All `n` eigenvalues of `a` (with repetition), as roots of its
/// characteristic polynomial.
pub fn eigenvalues<T: Real>(a: &Matrix<T>, opts: &EigenOptions<T>) -> Result<Vec<Complex<T>>> {
    let n = a.dim();
    if n == 0 {
        return Ok(Vec::new());
    }
    let coeffs = charpoly_coeffs(a).monic();
    let scale = (T::one() + a.frobenius_norm()).powi(n as i32);
    durand_kerner(&coeffs, opts.root_iters, opts.root_tol * scale)
}

/// Weierstrass iteration on monic `coeffs` (ascending, last entry one).
/// Succeeds when every residual `|p(z)|` is at most `accept`.
pub fn durand_kerner<T: Real>(coeffs: &[Complex<T>], max_iters: usize, accept: T) -> Result<Vec<Complex<T>>> {
    let n = coeffs.len().saturating_sub(1);
    if n == 0 {
        return Ok(Vec::new());
    }
    let eval = |z: Complex<T>| coeffs.iter().rev().fold(Complex::<T>::zero(), |acc, &c| acc * z + c);
    let radius = T::one() + coeffs[..n].iter().map(|c| c.norm()).fold(T::zero(), T::max);
    // angle offset keeps the starting points off the real axis
    let offset = lit::<T>(0.4);
    let mut z: Vec<Complex<T>> = (0..n)
        .map(|k| {
            let theta = T::TAU() * from_usize::<T>(k) / from_usize::<T>(n) + offset;
            Complex::from_polar(radius, theta)
        })
        .collect();

    let stagnation = lit::<T>(4.0) * T::epsilon();
    let mut iterations = 0;
    while iterations < max_iters {
        iterations += 1;
        let mut settled = true;
        for k in 0..n {
            let mut den = Complex::<T>::one();
            for j in 0..n {
                if j != k {
                    den *= z[k] - z[j];
                }
            }
            if den.is_zero() {
                // coincident iterates: nudge apart and retry next sweep
                z[k] += Complex::new(stagnation * radius, stagnation * radius);
                settled = false;
                continue;
            }
            let delta = eval(z[k]) / den;
            if !is_finite(delta) {
                continue;
            }
            z[k] -= delta;
            if delta.norm() > stagnation * (T::one() + z[k].norm()) {
                settled = false;
            }
        }
        if settled {
            break;
        }
    }

    let residuals: Vec<T> = z.iter().map(|&zk| eval(zk).norm()).collect();
    if residuals.iter().any(|&r| !(r <= accept)) {
        return Err(Error::NoConvergence {
            iterations,
            residuals: residuals.into_iter().map(to_f64).collect(),
        });
    }
    Ok(z)
}

/// Groups roots by single linkage at distance `tol`; each group's
/// representative is its mean. Output is in canonical order.
pub fn cluster_spectrum<T: Real>(roots: &[Complex<T>], tol: T) -> Result<Spectrum<T>> {
    if !(tol >= T::zero()) {
        return Err(Error::domain("clustering tolerance must be non-negative"));
    }
    if roots.is_empty() {
        return Err(Error::domain("cannot cluster an empty root set"));
    }
    let n = roots.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for a in 0..n {
        for b in a + 1..n {
            if (roots[a] - roots[b]).norm() <= tol {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra != rb {
                    parent[rb.max(ra)] = ra.min(rb);
                }
            }
        }
    }

    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut slot_of_root = vec![usize::MAX; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        if slot_of_root[r] == usize::MAX {
            slot_of_root[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[slot_of_root[r]].push(i);
    }

    let mut lambdas = Vec::with_capacity(groups.len());
    let mut mus = Vec::with_capacity(groups.len());
    for members in &groups {
        let mut diameter = T::zero();
        for (pos, &a) in members.iter().enumerate() {
            for &b in &members[pos + 1..] {
                diameter = diameter.max((roots[a] - roots[b]).norm());
            }
        }
        if diameter > lit::<T>(10.0) * tol {
            return Err(Error::Clustering {
                diameter: to_f64(diameter),
                tol: to_f64(tol),
            });
        }
        // mean as anchor + averaged offsets, so identical members give the anchor exactly
        let anchor = roots[members[0]];
        let offset = members
            .iter()
            .fold(Complex::<T>::zero(), |acc, &i| acc + (roots[i] - anchor));
        lambdas.push(anchor + offset / from_usize::<T>(members.len()));
        mus.push(members.len());
    }

    let spectrum = Spectrum::new(lambdas, mus)
        .map_err(|_| Error::Clustering {
            diameter: 0.0,
            tol: to_f64(tol),
        })?
        .canonical();
    if spectrum.m() > 1 && !(spectrum.min_separation() > tol) {
        return Err(Error::Clustering {
            diameter: to_f64(spectrum.min_separation()),
            tol: to_f64(tol),
        });
    }
    assert_eq!(spectrum.n(), n, "multiplicities must account for every root");
    Ok(spectrum)
}

/// Spectrum of `a`: exact shortcut for numerically scalar matrices, otherwise
/// [`eigenvalues`] followed by [`cluster_spectrum`].
pub fn spectrum_of<T: Real>(a: &Matrix<T>, opts: &EigenOptions<T>) -> Result<Spectrum<T>> {
    let n = a.dim();
    if n == 0 {
        return Err(Error::domain("empty matrix has no spectrum"));
    }
    let mean = a.trace() / from_usize::<T>(n);
    let off_scalar = (a - &Matrix::scalar(n, mean)).frobenius_norm();
    if off_scalar <= lit::<T>(1e-12) * (T::one() + mean.norm()) {
        return Spectrum::degenerate(mean, n);
    }
    let roots = eigenvalues(a, opts)?;
    let tol = opts.cluster_tol.unwrap_or_else(|| default_cluster_tol(&roots));
    cluster_spectrum(&roots, tol)
}

/// Number of integer partitions of `n` by Euler's pentagonal recursion,
/// with `p(0) = 1` and `p(n) = 0` for negative `n`.
///
/// Fails only when the value no longer fits in `u128`.
pub fn partition_count(n: i64) -> Result<u128> {
    if n < 0 {
        return Ok(0);
    }
    let n = n as usize;
    let mut p: Vec<i128> = vec![0; n + 1];
    p[0] = 1;
    let at = |p: &[i128], idx: i64| if idx < 0 { 0 } else { p[idx as usize] };
    for m in 1..=n {
        let mut total: i128 = 0;
        for k in 1..=m as i64 {
            let plus = m as i64 - k * (3 * k + 1) / 2;
            let minus = m as i64 - k * (3 * k - 1) / 2;
            if minus < 0 {
                break;
            }
            let term = at(&p, plus).checked_add(at(&p, minus)).ok_or_else(|| overflow(m))?;
            total = if k % 2 == 1 {
                total.checked_add(term)
            } else {
                total.checked_sub(term)
            }
            .ok_or_else(|| overflow(m))?;
        }
        p[m] = total;
    }
    Ok(p[n] as u128)
}

fn overflow(m: usize) -> Error {
    Error::domain(format!("partition count p({m}) overflows 128-bit integers"))
}

/// All multiplicity vectors `μ` (partitions of `n`, parts in non-increasing order).
pub fn multiplicity_partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(remaining: usize, max_part: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if remaining == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=remaining.min(max_part)).rev() {
            prefix.push(part);
            rec(remaining - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(n, n, &mut Vec::new(), &mut out);
    }
    out
}
