//! Analytic functions of square complex matrices computed from their
//! eigenvalues alone.
//!
//! `f(A) = Σ_k b_k A^{k-1}` with `b = V⁻¹ f̃`, where `V` is the confluent
//! Vandermonde matrix of the spectrum of `A`. The inverse of `V` is built
//! from characteristic-polynomial samples at roots of unity, so neither
//! eigenvectors nor a Jordan form are ever needed.
//!
//! ```
//! use vandermat::{expm, ComplexMatrix, Spectrum, C64};
//!
//! let a = ComplexMatrix::from_real_rows(&[[0.0, 1.0], [0.0, 0.0]]).unwrap();
//! let spectrum = Spectrum::degenerate(C64::new(0.0, 0.0), 2).unwrap();
//! let e = expm(&a, C64::new(1.0, 0.0), &spectrum).unwrap();
//! assert!((e[(0, 1)] - C64::new(1.0, 0.0)).norm() < 1e-14);
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod charpoly;
pub mod eigen;
pub mod error;
pub mod io;
pub mod linalg;
pub mod matfunc;
pub mod quadrature;
pub mod quantum;
pub mod scalar;
pub mod vandermonde;

pub use charpoly::{
    adjugate_fourier, charpoly_coeffs, esp_detform, inverse_charpoly, inverse_fourier, power_sum, power_sum_matrix,
    q_matrix, CharPolyCoeffs,
};
pub use eigen::{cluster_spectrum, eigenvalues, partition_count, spectrum_of, EigenOptions, Spectrum};
pub use error::{Diagnosed, Error, Result, Warning};
pub use linalg::{det_levicivita, det_lu, inverse_gauss, levi_civita, mat_pow, Matrix};
pub use matfunc::{
    apply_function, apply_function_alt, bch_conjugate, bch_series_oracle, coeff_vector, expm, expm_degenerate,
    expm_distinct, expm_taylor, expm_with, ftilde, AnalyticFunction, Exp, ExpmMethod, Monomial, PowerSeries,
    WdDecomposition, WithDerivatives,
};
pub use quantum::{
    bloch_path, evolve_commuting, evolve_const, evolve_trotter, gate_design_check, qubit_eigenvalues, qubit_u_const,
    seteo_residual, BlochPath, HamiltonianSpec, QubitParams, TrotterPlan,
};
pub use scalar::Real;
pub use vandermonde::{
    build_vandermonde, esp_classic, esp_fourier, inverse_register, register, vinv_degenerate, vinv_distinct,
    vinv_general, ConfluentVandermonde,
};

pub type C64 = num_complex::Complex<f64>;
pub type C32 = num_complex::Complex<f32>;
pub type ComplexMatrix = Matrix<f64>;
pub type ComplexMatrix32 = Matrix<f32>;
pub type Spectrum64 = Spectrum<f64>;
pub type Spectrum32 = Spectrum<f32>;
