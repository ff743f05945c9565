use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Argument outside the operation's domain (bad index, wrong shape, ...).
    #[error("domain error: {0}")]
    Domain(String),

    #[error("dimension {n} exceeds the limit of {max} for {operation}; use det_lu instead")]
    TooLarge {
        operation: &'static str,
        n: usize,
        max: usize,
    },

    #[error("matrix is singular to working precision (|det| = {det:e}, threshold {threshold:e}){}", hint.map(|h| format!("; {h}")).unwrap_or_default())]
    Singular {
        det: f64,
        threshold: f64,
        hint: Option<&'static str>,
    },

    #[error("root iteration did not converge after {iterations} iterations (largest residual {:e})", residuals.iter().cloned().fold(0.0, f64::max))]
    NoConvergence { iterations: usize, residuals: Vec<f64> },

    #[error("ambiguous eigenvalue cluster of diameter {diameter:e} at tolerance {tol:e}; choose a different clustering tolerance")]
    Clustering { diameter: f64, tol: f64 },

    #[error("analytic function does not provide derivative order {order}")]
    Capability { order: usize },

    #[error("quadrature did not reach tolerance {tol:e} within depth {max_depth} on [{a}, {b}]")]
    Integration { a: f64, b: f64, tol: f64, max_depth: usize },

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

/// Non-fatal condition reported alongside a computed value.
#[derive(Debug, Clone, PartialEq)]
pub enum Warning {
    /// Two distinct eigenvalues are closer than the distinct-case formula
    /// can resolve reliably.
    NearConfluent { min_separation: f64 },
    /// Input expected to be Hermitian deviates by `deviation` (Frobenius norm of `H - H†`).
    NonHermitian { time: Option<f64>, deviation: f64 },
    /// Sampled commutator `[H(t1), H(t2)]` exceeded the time-commuting tolerance.
    NonCommuting { t1: f64, t2: f64, norm: f64 },
}

impl std::fmt::Display for Warning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Warning::NearConfluent { min_separation } => {
                write!(
                    f,
                    "eigenvalues only {min_separation:e} apart; the distinct-case inverse may be inaccurate"
                )
            }
            Warning::NonHermitian {
                time: Some(t),
                deviation,
            } => {
                write!(f, "Hamiltonian at t = {t} is not Hermitian (deviation {deviation:e})")
            }
            Warning::NonHermitian { time: None, deviation } => {
                write!(f, "Hamiltonian is not Hermitian (deviation {deviation:e})")
            }
            Warning::NonCommuting { t1, t2, norm } => {
                write!(f, "H({t1}) and H({t2}) do not commute (commutator norm {norm:e})")
            }
        }
    }
}

/// A value together with the warnings raised while computing it.
#[derive(Debug, Clone, PartialEq)]
pub struct Diagnosed<V> {
    pub value: V,
    pub warnings: Vec<Warning>,
}

impl<V> Diagnosed<V> {
    pub fn new(value: V, warnings: Vec<Warning>) -> Self {
        for w in &warnings {
            log::warn!("{w:?}");
        }
        Diagnosed { value, warnings }
    }

    pub fn clean(value: V) -> Self {
        Diagnosed {
            value,
            warnings: Vec::new(),
        }
    }

    pub fn into_value(self) -> V {
        self.value
    }

    pub fn is_clean(&self) -> bool {
        self.warnings.is_empty()
    }
}
