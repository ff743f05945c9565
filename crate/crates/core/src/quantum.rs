//! Time-evolution operators `U(t, t0)` for the Schrödinger equation
//! `iħ ∂_t U = H U`.
//!
//! Three regimes are covered: constant `H`, time-dependent `H` that commutes
//! with itself at different times (exponentiate `∫H`), and general `H(t)` via
//! a first-order left-growing Trotter product. Two-level systems also get the
//! closed-form `[[a, b], [-b*, a*]]` parametrization.

use num_complex::Complex;
use num_traits::One;

use crate::eigen::{cluster_spectrum, default_cluster_tol, spectrum_of, EigenOptions, Spectrum};
use crate::error::{Diagnosed, Error, Result, Warning};
use crate::linalg::Matrix;
use crate::matfunc::expm;
use crate::quadrature::integrate_matrix_default;
use crate::scalar::{cplx, creal, from_usize, lit, to_f64, Real};

/// `t ↦ H(t)`.
pub type TimeFn<T> = Box<dyn Fn(T) -> Matrix<T> + Send + Sync>;
/// `(t, t0) ↦ ∫_{t0}^{t} H`.
pub type IntegralFn<T> = Box<dyn Fn(T, T) -> Matrix<T> + Send + Sync>;

pub const HERMITIAN_TOL: f64 = 1e-10;
pub const COMMUTING_TOL: f64 = 1e-8;
const COMMUTING_SAMPLES: usize = 16;
pub const DEFAULT_BLOCH_SAMPLES: usize = 512;

pub enum HamiltonianKind<T: Real = f64> {
    Constant(Matrix<T>),
    /// `[H(t), H(t')] = 0`; the integral is optional and otherwise obtained by quadrature.
    Commuting {
        h: TimeFn<T>,
        integral: Option<IntegralFn<T>>,
    },
    General(TimeFn<T>),
}

pub struct HamiltonianSpec<T: Real = f64> {
    pub kind: HamiltonianKind<T>,
    pub hbar: T,
}

impl<T: Real> HamiltonianSpec<T> {
    pub fn constant(h: Matrix<T>) -> Self {
        HamiltonianSpec {
            kind: HamiltonianKind::Constant(h),
            hbar: T::one(),
        }
    }

    pub fn commuting(h: impl Fn(T) -> Matrix<T> + Send + Sync + 'static) -> Self {
        HamiltonianSpec {
            kind: HamiltonianKind::Commuting {
                h: Box::new(h),
                integral: None,
            },
            hbar: T::one(),
        }
    }

    pub fn commuting_with_integral(
        h: impl Fn(T) -> Matrix<T> + Send + Sync + 'static,
        integral: impl Fn(T, T) -> Matrix<T> + Send + Sync + 'static,
    ) -> Self {
        HamiltonianSpec {
            kind: HamiltonianKind::Commuting {
                h: Box::new(h),
                integral: Some(Box::new(integral)),
            },
            hbar: T::one(),
        }
    }

    pub fn general(h: impl Fn(T) -> Matrix<T> + Send + Sync + 'static) -> Self {
        HamiltonianSpec {
            kind: HamiltonianKind::General(Box::new(h)),
            hbar: T::one(),
        }
    }

    pub fn with_hbar(mut self, hbar: T) -> Self {
        self.hbar = hbar;
        self
    }

    /// `H(t)`.
    pub fn at(&self, t: T) -> Matrix<T> {
        match &self.kind {
            HamiltonianKind::Constant(h) => h.clone(),
            HamiltonianKind::Commuting { h, .. } | HamiltonianKind::General(h) => h(t),
        }
    }

    fn check_hbar(&self) -> Result<()> {
        if !(self.hbar > T::zero()) || !self.hbar.is_finite() {
            return Err(Error::domain(format!("hbar must be positive, got {}", self.hbar)));
        }
        Ok(())
    }
}

/// Uniform grid `t_r = t0 + r Δt_N`, `Δt_N = (t - t0) / N`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TrotterPlan<T: Real = f64> {
    t0: T,
    t: T,
    n_steps: usize,
}

impl<T: Real> TrotterPlan<T> {
    pub fn new(t0: T, t: T, n_steps: usize) -> Result<Self> {
        if n_steps == 0 {
            return Err(Error::domain("Trotter plan needs at least one step"));
        }
        if !(t > t0) {
            return Err(Error::domain(format!("Trotter plan needs t > t0, got t0={t0}, t={t}")));
        }
        Ok(TrotterPlan { t0, t, n_steps })
    }

    pub fn t0(&self) -> T {
        self.t0
    }

    pub fn t(&self) -> T {
        self.t
    }

    pub fn n_steps(&self) -> usize {
        self.n_steps
    }

    pub fn dt(&self) -> T {
        (self.t - self.t0) / from_usize::<T>(self.n_steps)
    }

    pub fn t_r(&self, r: usize) -> T {
        self.t0 + from_usize::<T>(r) * self.dt()
    }
}

/// Two-level parameters: `Δ_H = (H11 - H22)/2`, `ω_H = √(Δ_H² + |H12|²)/ħ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QubitParams<T: Real = f64> {
    pub omega_h: T,
    pub delta_h: T,
    pub h12: Complex<T>,
}

fn check_qubit<T: Real>(h: &Matrix<T>) -> Result<()> {
    if h.dim() != 2 {
        return Err(Error::domain(format!(
            "expected a 2x2 Hamiltonian, got {}x{}",
            h.dim(),
            h.dim()
        )));
    }
    Ok(())
}

pub fn qubit_params<T: Real>(h: &Matrix<T>, hbar: T) -> Result<QubitParams<T>> {
    check_qubit(h)?;
    let delta_h = (h[(0, 0)].re - h[(1, 1)].re) * lit::<T>(0.5);
    let h12 = h[(0, 1)];
    let omega_h = (delta_h * delta_h + h12.norm_sqr()).sqrt() / hbar;
    Ok(QubitParams { omega_h, delta_h, h12 })
}

/// Real eigenvalues `(λ1, λ2)` of a 2x2 Hermitian matrix with `λ1 ≥ λ2`.
pub fn qubit_eigenvalues<T: Real>(h: &Matrix<T>) -> Result<(T, T)> {
    let p = qubit_params(h, T::one())?;
    let half_trace = (h[(0, 0)].re + h[(1, 1)].re) * lit::<T>(0.5);
    // (tr/2)² - det reduces to Δ_H² + |H12|² for Hermitian input
    Ok((half_trace + p.omega_h, half_trace - p.omega_h))
}

/// The pair `(a, b)` with `U = e^{-iΔt(H11+H22)/(2ħ)} [[a, b], [-b*, a*]]`.
pub fn qubit_ab<T: Real>(p: &QubitParams<T>, dt: T, hbar: T) -> (Complex<T>, Complex<T>) {
    let guard = if p.omega_h == T::zero() { T::one() } else { T::zero() };
    let denom = hbar * p.omega_h + guard;
    let (sin, cos) = (p.omega_h * dt).sin_cos();
    let a = cplx(cos, -p.delta_h / denom * sin);
    let b = cplx(T::zero(), -T::one()) * p.h12 * (sin / denom);
    (a, b)
}

/// Closed-form two-level evolution operator for constant Hermitian `H`.
pub fn qubit_u_const<T: Real>(h: &Matrix<T>, t0: T, t: T, hbar: T) -> Result<Matrix<T>> {
    let p = qubit_params(h, hbar)?;
    let dt = t - t0;
    let (a, b) = qubit_ab(&p, dt, hbar);
    let mean = (h[(0, 0)].re + h[(1, 1)].re) * lit::<T>(0.5);
    let phase = Complex::from_polar(T::one(), -dt * mean / hbar);
    Matrix::from_rows(vec![
        vec![a * phase, b * phase],
        vec![-b.conj() * phase, a.conj() * phase],
    ])
}

fn non_hermitian<T: Real>(h: &Matrix<T>, time: Option<T>) -> Option<Warning> {
    let deviation = h.hermitian_deviation();
    (deviation > lit::<T>(HERMITIAN_TOL) * (T::one() + h.frobenius_norm())).then(|| Warning::NonHermitian {
        time: time.map(to_f64),
        deviation: to_f64(deviation),
    })
}

/// Spectrum of a (nominally) Hermitian matrix. Two-level input uses the
/// explicit eigenvalue pair; larger input goes through root finding, after
/// which the roundoff imaginary parts are dropped when `h` is Hermitian.
pub fn hermitian_spectrum<T: Real>(h: &Matrix<T>, opts: &EigenOptions<T>) -> Result<Spectrum<T>> {
    let hermitian = h.hermitian_deviation() <= lit::<T>(HERMITIAN_TOL) * (T::one() + h.frobenius_norm());
    if h.dim() == 2 && hermitian {
        let (l1, l2) = qubit_eigenvalues(h)?;
        let roots = [creal(l1), creal(l2)];
        if l1 == l2 {
            return Spectrum::degenerate(roots[0], 2);
        }
        let tol = opts.cluster_tol.unwrap_or_else(|| default_cluster_tol(&roots));
        return cluster_spectrum(&roots, tol);
    }
    let spec = spectrum_of(h, opts)?;
    if !hermitian {
        return Ok(spec);
    }
    let lambdas = spec.lambdas().iter().map(|l| creal(l.re)).collect();
    Spectrum::new(lambdas, spec.mus().to_vec())
}

/// `U = e^{-i(t - t0)H/ħ}` from the spectrum of `H`. Non-Hermitian `H` is
/// still exponentiated and flagged.
pub fn evolve_const<T: Real>(
    h: &Matrix<T>,
    spectrum: &Spectrum<T>,
    t0: T,
    t: T,
    hbar: T,
) -> Result<Diagnosed<Matrix<T>>> {
    let u = expm(h, cplx(T::zero(), -(t - t0) / hbar), spectrum)?;
    Ok(Diagnosed::new(u, non_hermitian(h, None).into_iter().collect()))
}

fn chebyshev_times<T: Real>(t0: T, t: T, count: usize) -> Vec<T> {
    let half = lit::<T>(0.5);
    (0..count)
        .map(|k| {
            let x = (T::PI() * from_usize::<T>(2 * k + 1) / from_usize::<T>(2 * count)).cos();
            (t0 + t) * half + (t - t0) * half * x
        })
        .collect()
}

/// Commutator and Hermiticity checks of `h` at Chebyshev-distributed samples in `[t0, t]`.
pub fn sample_commutation<T: Real>(h: &dyn Fn(T) -> Matrix<T>, t0: T, t: T) -> Vec<Warning> {
    let times = chebyshev_times(t0, t, COMMUTING_SAMPLES);
    let mats: Vec<Matrix<T>> = times.iter().map(|&s| h(s)).collect();
    let mut warnings: Vec<Warning> = mats
        .iter()
        .zip(&times)
        .filter_map(|(m, &s)| non_hermitian(m, Some(s)))
        .collect();
    for k in 0..COMMUTING_SAMPLES {
        let j = (k + 5) % COMMUTING_SAMPLES;
        let norm = mats[k].commutator(&mats[j]).frobenius_norm();
        let bound = lit::<T>(COMMUTING_TOL) * mats[k].frobenius_norm() * mats[j].frobenius_norm();
        if norm > bound {
            warnings.push(Warning::NonCommuting {
                t1: to_f64(times[k]),
                t2: to_f64(times[j]),
                norm: to_f64(norm),
            });
        }
    }
    warnings
}

/// `U = e^{-(i/ħ) ∫_{t0}^{t} H}` for a self-commuting `H(t)`. The spectrum of
/// the integrated Hamiltonian is recomputed for every `(t0, t)`.
pub fn evolve_commuting<T: Real>(
    spec: &HamiltonianSpec<T>,
    t0: T,
    t: T,
    opts: &EigenOptions<T>,
) -> Result<Diagnosed<Matrix<T>>> {
    spec.check_hbar()?;
    let (integrated, warnings) = match &spec.kind {
        HamiltonianKind::Constant(h) => (h.scale(creal(t - t0)), non_hermitian(h, None).into_iter().collect()),
        HamiltonianKind::Commuting { h, integral } => {
            let warnings = sample_commutation(h.as_ref(), t0, t);
            let integrated = match integral {
                Some(integral) => integral(t, t0),
                None => integrate_matrix_default(h.as_ref(), t0, t)?,
            };
            (integrated, warnings)
        }
        HamiltonianKind::General(_) => {
            return Err(Error::domain("general time-dependent Hamiltonians need evolve_trotter"))
        }
    };
    let spectrum = hermitian_spectrum(&integrated, opts)?;
    let u = expm(&integrated, cplx(T::zero(), -T::one() / spec.hbar), &spectrum)?;
    Ok(Diagnosed::new(u, warnings))
}

/// Single Trotter factor `e^{-iΔt_N H(t_r)/ħ}`.
pub fn trotter_factor<T: Real>(
    spec: &HamiltonianSpec<T>,
    plan: &TrotterPlan<T>,
    r: usize,
    opts: &EigenOptions<T>,
) -> Result<Diagnosed<Matrix<T>>> {
    let time = plan.t_r(r);
    let h = spec.at(time);
    let spectrum = hermitian_spectrum(&h, opts)?;
    let u = expm(&h, cplx(T::zero(), -plan.dt() / spec.hbar), &spectrum)?;
    Ok(Diagnosed::new(u, non_hermitian(&h, Some(time)).into_iter().collect()))
}

/// `U ≈ U'(t_N, t_{N-1}) ⋯ U'(t_1, t_0)`, each factor frozen at `H(t_r)`.
/// Later factors multiply from the left.
pub fn evolve_trotter<T: Real>(
    spec: &HamiltonianSpec<T>,
    plan: &TrotterPlan<T>,
    opts: &EigenOptions<T>,
) -> Result<Diagnosed<Matrix<T>>> {
    spec.check_hbar()?;
    let n = spec.at(plan.t0()).dim();
    let mut u = Matrix::identity(n);
    let mut warnings = Vec::new();
    for r in 0..plan.n_steps() {
        let factor = trotter_factor(spec, plan, r, opts)?;
        warnings.extend(factor.warnings);
        u = &factor.value * &u;
    }
    Ok(Diagnosed { value: u, warnings })
}

/// `‖(U(t+h) - U(t-h))/(2h) + (i/ħ) H(t) U(t)‖_F`.
pub fn seteo_residual<T: Real>(
    u: &dyn Fn(T) -> Result<Matrix<T>>,
    h: &dyn Fn(T) -> Matrix<T>,
    t: T,
    hbar: T,
    h_step: T,
) -> Result<T> {
    if !(h_step > T::zero()) {
        return Err(Error::domain("finite-difference step must be positive"));
    }
    let forward = u(t + h_step)?;
    let backward = u(t - h_step)?;
    let mut residual = (&forward - &backward).scale(creal(T::one() / (h_step + h_step)));
    let rhs = &h(t) * &u(t)?;
    residual.add_scaled(cplx(T::zero(), T::one() / hbar), &rhs);
    Ok(residual.frobenius_norm())
}

/// `(x, y, z)` of a qubit state after rotating away the phase of its first component.
pub fn bloch_point<T: Real>(psi: &[Complex<T>]) -> Result<(T, T, T)> {
    if psi.len() != 2 {
        return Err(Error::domain(format!(
            "Bloch coordinates need a 2-component state, got {}",
            psi.len()
        )));
    }
    let fixed = Complex::from_polar(T::one(), -psi[0].arg());
    let x1 = (psi[0] * fixed).re;
    let second = psi[1] * fixed;
    let two = lit::<T>(2.0);
    Ok((two * x1 * second.re, two * x1 * second.im, two * x1 * x1 - T::one()))
}

/// Samples `(t, x, y, z)`.
#[derive(Clone, Debug, PartialEq)]
pub struct BlochPath<T: Real = f64> {
    pub samples: Vec<(T, T, T, T)>,
}

impl<T: Real> BlochPath<T> {
    /// Largest `|x² + y² + z² - 1|` over the path.
    pub fn max_sphere_deviation(&self) -> T {
        self.samples
            .iter()
            .map(|&(_, x, y, z)| (x * x + y * y + z * z - T::one()).abs())
            .fold(T::zero(), T::max)
    }

    pub fn last(&self) -> Option<(T, T, T, T)> {
        self.samples.last().copied()
    }
}

/// `samples` uniform times from `t0` to `t` inclusive.
pub fn uniform_times<T: Real>(t0: T, t: T, samples: usize) -> Vec<T> {
    match samples {
        0 => Vec::new(),
        1 => vec![t],
        _ => {
            let step = (t - t0) / from_usize::<T>(samples - 1);
            (0..samples)
                .map(|k| {
                    if k + 1 == samples {
                        t
                    } else {
                        t0 + from_usize::<T>(k) * step
                    }
                })
                .collect()
        }
    }
}

/// Bloch coordinates of `U(t) ψ0` at each sample time.
pub fn bloch_path<T: Real>(
    psi0: &[Complex<T>],
    u: &dyn Fn(T) -> Result<Matrix<T>>,
    times: &[T],
) -> Result<BlochPath<T>> {
    if psi0.len() != 2 {
        return Err(Error::domain(format!(
            "initial state must have 2 components, got {}",
            psi0.len()
        )));
    }
    let norm = psi0.iter().map(|z| z.norm_sqr()).fold(T::zero(), |a, b| a + b).sqrt();
    if (norm - T::one()).abs() > lit::<T>(1e-10) {
        return Err(Error::domain(format!("initial state has norm {norm}, expected 1")));
    }
    let mut samples = Vec::with_capacity(times.len());
    for &t in times {
        let psi = u(t)?.mul_vec(psi0);
        let (x, y, z) = bloch_point(&psi)?;
        samples.push((t, x, y, z));
    }
    Ok(BlochPath { samples })
}

/// `‖e^{iφ} U - target‖_F` with `φ = arg tr(U† target)`.
pub fn phase_adjusted_distance<T: Real>(u: &Matrix<T>, target: &Matrix<T>) -> Result<T> {
    u.check_same_dim(target, "phase_adjusted_distance")?;
    let overlap = (&u.adjoint() * target).trace();
    let phase = if overlap.norm() == T::zero() {
        Complex::one()
    } else {
        Complex::from_polar(T::one(), overlap.arg())
    };
    Ok((&u.scale(phase) - target).frobenius_norm())
}

/// Distance, up to global phase, between `target` and the evolution under
/// constant `h` from `t0` to `t`.
pub fn gate_design_check<T: Real>(target: &Matrix<T>, h: &Matrix<T>, t0: T, t: T, hbar: T) -> Result<T> {
    let unitarity = (&(&target.adjoint() * target) - &Matrix::identity(target.dim())).frobenius_norm();
    if unitarity > lit::<T>(1e-8) {
        return Err(Error::domain(format!(
            "target is not unitary (deviation {:e})",
            to_f64(unitarity)
        )));
    }
    let spectrum = hermitian_spectrum(h, &EigenOptions::default())?;
    let u = evolve_const(h, &spectrum, t0, t, hbar)?.into_value();
    phase_adjusted_distance(&u, target)
}

pub fn hadamard<T: Real>() -> Matrix<T> {
    let s = T::FRAC_1_SQRT_2();
    Matrix::from_rows(vec![vec![creal(s), creal(s)], vec![creal(s), creal(-s)]]).expect("2x2")
}

/// `diag(1, e^{iφ})`.
pub fn phase_gate<T: Real>(phi: T) -> Matrix<T> {
    Matrix::diag(&[Complex::one(), Complex::from_polar(T::one(), phi)])
}

/// `ħ [[1, 1], [1, -1]]`, which yields the Hadamard gate at `t0 + (π/2 + 2πk)/√2`.
pub fn hadamard_hamiltonian<T: Real>(hbar: T) -> Matrix<T> {
    let h = creal(hbar);
    Matrix::from_rows(vec![vec![h, h], vec![h, -h]]).expect("2x2")
}

pub fn hadamard_time<T: Real>(t0: T, k: usize) -> T {
    t0 + (T::FRAC_PI_2() + T::TAU() * from_usize::<T>(k)) * T::FRAC_1_SQRT_2()
}

/// `ħ diag(Δ, -Δ)`, which yields `diag(1, e^{iφ})` up to phase at `t0 + φ/(2Δ)`.
pub fn phase_gate_hamiltonian<T: Real>(delta: T, hbar: T) -> Matrix<T> {
    Matrix::diag(&[creal(hbar * delta), creal(-hbar * delta)])
}

pub fn phase_gate_time<T: Real>(t0: T, phi: T, delta: T) -> T {
    t0 + phi / (delta + delta)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    fn r(x: f64) -> Complex<f64> {
        c(x, 0.0)
    }

    fn close(a: &Matrix<f64>, b: &Matrix<f64>, tol: f64) {
        let d = (a - b).frobenius_norm();
        assert!(d <= tol, "difference {d:e}\n{a:?}\n{b:?}");
    }

    fn unitarity(u: &Matrix<f64>) -> f64 {
        (&(&u.adjoint() * u) - &Matrix::identity(u.dim())).frobenius_norm()
    }

    fn opts() -> EigenOptions<f64> {
        EigenOptions::default()
    }

    #[test]
    fn evolve_const_examples() {
        let z = Matrix::zeros(2);
        let s = Spectrum::degenerate(r(0.0), 2).unwrap();
        close(
            &evolve_const(&z, &s, 0.0, 3.0, 1.0).unwrap().value,
            &Matrix::identity(2),
            1e-15,
        );

        let h11 = 0.7;
        let h = Matrix::scalar(3, r(h11));
        let s = Spectrum::degenerate(r(h11), 3).unwrap();
        let got = evolve_const(&h, &s, 1.0, 2.5, 1.0).unwrap();
        assert!(got.is_clean());
        close(&got.value, &Matrix::scalar(3, c(0.0, -1.5 * h11).exp()), 1e-14);

        let h = hadamard_hamiltonian(1.0);
        let s = hermitian_spectrum(&h, &opts()).unwrap();
        let u = evolve_const(&h, &s, 0.0, std::f64::consts::PI / (2.0 * 2f64.sqrt()), 1.0)
            .unwrap()
            .value;
        assert!(unitarity(&u) < 1e-8);
        assert!(phase_adjusted_distance(&u, &hadamard()).unwrap() < 1e-12);
    }

    #[test]
    fn evolve_const_flags_non_hermitian() {
        let h = Matrix::from_real_rows(&[[0.0, 1.0], [0.0, 0.0]]).unwrap();
        let s = Spectrum::degenerate(r(0.0), 2).unwrap();
        let got = evolve_const(&h, &s, 0.0, 1.0, 1.0).unwrap();
        assert!(matches!(got.warnings[0], Warning::NonHermitian { .. }));
    }

    #[test]
    fn qubit_eigenvalue_examples() {
        let d = Matrix::diag(&[r(1.0), r(2.0)]);
        assert_eq!(qubit_eigenvalues(&d).unwrap(), (2.0, 1.0));
        assert_eq!(qubit_eigenvalues(&Matrix::<f64>::identity(2)).unwrap(), (1.0, 1.0));
        let sx = Matrix::from_real_rows(&[[0.0, 1.0], [1.0, 0.0]]).unwrap();
        assert_eq!(qubit_eigenvalues(&sx).unwrap(), (1.0, -1.0));
        assert!(qubit_eigenvalues(&Matrix::<f64>::identity(3)).is_err());
    }

    #[test]
    fn qubit_params_and_closed_form() {
        let p = qubit_params(&hadamard_hamiltonian(1.0), 1.0).unwrap();
        assert_eq!(p.delta_h, 1.0);
        assert!((p.omega_h - 2f64.sqrt()).abs() < 1e-15);

        let h11 = -0.4;
        let h = Matrix::scalar(2, r(h11));
        let p = qubit_params(&h, 1.0).unwrap();
        assert_eq!(p.omega_h, 0.0);
        let (a, b) = qubit_ab(&p, 2.0, 1.0);
        assert_eq!((a, b), (r(1.0), r(0.0)));
        close(
            &qubit_u_const(&h, 0.0, 2.0, 1.0).unwrap(),
            &Matrix::scalar(2, c(0.0, -2.0 * h11).exp()),
            1e-15,
        );
    }

    #[test]
    fn phase_gate_design() {
        let phi = 0.85 * std::f64::consts::TAU;
        let delta = 0.6;
        let h = phase_gate_hamiltonian(delta, 1.0);
        let t = phase_gate_time(0.5, phi, delta);
        assert!(gate_design_check(&phase_gate(phi), &h, 0.5, t, 1.0).unwrap() < 1e-9);
        let u = qubit_u_const(&h, 0.5, t, 1.0).unwrap();
        assert!(phase_adjusted_distance(&u, &phase_gate(phi)).unwrap() < 1e-12);
    }

    #[test]
    fn gate_design_examples() {
        let t = hadamard_time(0.0, 0);
        assert!(gate_design_check(&hadamard(), &hadamard_hamiltonian(1.0), 0.0, t, 1.0).unwrap() < 1e-9);
        let t = hadamard_time(2.0, 3);
        assert!(gate_design_check(&hadamard(), &hadamard_hamiltonian(1.0), 2.0, t, 1.0).unwrap() < 1e-9);
        assert!(gate_design_check(&Matrix::identity(2), &Matrix::zeros(2), 0.0, 4.2, 1.0).unwrap() < 1e-15);
        let not_unitary = Matrix::scalar(2, r(2.0));
        assert!(gate_design_check(&not_unitary, &Matrix::zeros(2), 0.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn commuting_examples() {
        let ramp = HamiltonianSpec::commuting(|t: f64| Matrix::diag(&[r(t), r(-t)]));
        let u = evolve_commuting(&ramp, 0.0, 1.0, &opts()).unwrap();
        assert!(u.is_clean());
        close(&u.value, &Matrix::diag(&[c(0.0, -0.5).exp(), c(0.0, 0.5).exp()]), 1e-10);

        let h = hadamard_hamiltonian(1.0);
        let constant = HamiltonianSpec::constant(h.clone());
        let got = evolve_commuting(&constant, 0.2, 1.1, &opts()).unwrap().value;
        let s = hermitian_spectrum(&h, &opts()).unwrap();
        close(&got, &evolve_const(&h, &s, 0.2, 1.1, 1.0).unwrap().value, 1e-9);

        let scalar = HamiltonianSpec::commuting_with_integral(
            |t: f64| Matrix::scalar(2, r(t.cos())),
            |t: f64, t0: f64| Matrix::scalar(2, r(t.sin() - t0.sin())),
        )
        .with_hbar(2.0);
        let got = evolve_commuting(&scalar, 0.0, 1.3, &opts()).unwrap().value;
        close(&got, &Matrix::scalar(2, c(0.0, -(1.3f64).sin() / 2.0).exp()), 1e-13);
    }

    #[test]
    fn commuting_warns_on_non_commuting_input() {
        let driven = HamiltonianSpec::commuting(|t: f64| Matrix::from_real_rows(&[[1.0, t], [t, -1.0]]).unwrap());
        let got = evolve_commuting(&driven, 0.0, 1.0, &opts()).unwrap();
        assert!(got.warnings.iter().any(|w| matches!(w, Warning::NonCommuting { .. })));
    }

    #[test]
    fn trotter_plan_grid() {
        let plan = TrotterPlan::new(1.0, 3.0, 4).unwrap();
        assert_eq!(plan.dt(), 0.5);
        assert_eq!(plan.t_r(0), 1.0);
        assert_eq!(plan.t_r(3), 2.5);
        assert!(TrotterPlan::new(1.0, 1.0, 4).is_err());
        assert!(TrotterPlan::new(0.0, 1.0, 0).is_err());
    }

    #[test]
    fn trotter_constant_matches_exact() {
        let h = Matrix::from_rows(vec![vec![r(0.3), c(0.2, -0.5)], vec![c(0.2, 0.5), r(-0.1)]]).unwrap();
        let spec = HamiltonianSpec::constant(h.clone());
        let plan = TrotterPlan::new(0.0, 2.0, 7).unwrap();
        let got = evolve_trotter(&spec, &plan, &opts()).unwrap().value;
        close(&got, &qubit_u_const(&h, 0.0, 2.0, 1.0).unwrap(), 1e-12);
    }

    #[test]
    fn trotter_is_left_growing() {
        let sx = Matrix::from_real_rows(&[[0.0, 1.0], [1.0, 0.0]]).unwrap();
        let sz = Matrix::diag(&[r(1.0), r(-1.0)]);
        let (a, b) = (sx.clone(), sz.clone());
        let spec = HamiltonianSpec::general(move |t: f64| if t < 0.5 { a.clone() } else { b.clone() });
        let plan = TrotterPlan::new(0.0, 1.0, 2).unwrap();
        let got = evolve_trotter(&spec, &plan, &opts()).unwrap().value;
        let first = qubit_u_const(&sx, 0.0, 0.5, 1.0).unwrap();
        let second = qubit_u_const(&sz, 0.0, 0.5, 1.0).unwrap();
        close(&got, &(&second * &first), 1e-13);
    }

    #[test]
    fn seteo_examples() {
        let h = hadamard_hamiltonian(1.0);
        let s = hermitian_spectrum(&h, &opts()).unwrap();
        let u = |t: f64| evolve_const(&h, &s, 0.0, t, 1.0).map(|d| d.value);
        let hf = |_: f64| h.clone();
        let res = seteo_residual(&u, &hf, 0.7, 1.0, 1e-5).unwrap();
        assert!(res <= 1e-8 * h.frobenius_norm().powi(2), "{res:e}");
        assert!(seteo_residual(&u, &hf, 0.7, 1.0, 0.0).is_err());
    }

    #[test]
    fn bloch_examples() {
        let (x, y, z) = bloch_point(&[r(1.0), r(0.0)]).unwrap();
        assert_eq!((x, y, z), (0.0, 0.0, 1.0));
        let (x, y, z) = bloch_point(&[r(0.0), r(1.0)]).unwrap();
        assert_eq!((x, y, z), (0.0, 0.0, -1.0));
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let (x, y, z) = bloch_point(&[r(s), r(s)]).unwrap();
        assert!((x - 1.0).abs() < 1e-15 && y.abs() < 1e-15 && z.abs() < 1e-15);
        // global phase drops out
        let g = c(0.0, 1.3).exp();
        let (x2, y2, z2) = bloch_point(&[g * c(0.6, 0.0), g * c(0.0, 0.8)]).unwrap();
        let (x1, y1, z1) = bloch_point(&[c(0.6, 0.0), c(0.0, 0.8)]).unwrap();
        assert!((x1 - x2).abs() < 1e-15 && (y1 - y2).abs() < 1e-15 && (z1 - z2).abs() < 1e-15);
    }

    #[test]
    fn bloch_path_rejects_unnormalized_state() {
        let u = |_: f64| Ok(Matrix::identity(2));
        let times = uniform_times(0.0, 1.0, 4);
        assert!(matches!(
            bloch_path(&[r(1.0), r(1.0)], &u, &times),
            Err(Error::Domain(_))
        ));
        let path = bloch_path(&[r(1.0), r(0.0)], &u, &times).unwrap();
        assert_eq!(path.samples.len(), 4);
        assert_eq!(path.last().unwrap().0, 1.0);
    }
}
