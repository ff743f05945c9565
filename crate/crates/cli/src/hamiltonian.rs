use std::cell::RefCell;
use std::path::Path;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::ValueEnum;
use num_complex::Complex;
use vandermat::quantum::{hadamard_hamiltonian, hermitian_spectrum, phase_gate_hamiltonian};
use vandermat::{
    evolve_commuting, evolve_const, evolve_trotter, ComplexMatrix, Diagnosed, EigenOptions, HamiltonianSpec, Spectrum,
    TrotterPlan,
};

/// Detuning of the `phase` builtin.
pub const PHASE_DELTA: f64 = 0.75;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Constant,
    Commuting,
    Trotter,
}

type Source = Arc<dyn Fn(f64) -> ComplexMatrix + Send + Sync>;

fn m2(a: f64, b: f64, c: f64, d: f64) -> ComplexMatrix {
    let z = |x: f64| Complex::new(x, 0.0);
    ComplexMatrix::from_rows(vec![vec![z(a), z(b)], vec![z(c), z(d)]]).expect("2x2")
}

/// `H(t)` for `builtin:NAME` or a constant matrix file.
pub fn source(spec: &str, hbar: f64) -> Result<Source> {
    let Some(name) = spec.strip_prefix("builtin:") else {
        let h = crate::read_matrix(Path::new(spec))?;
        return Ok(Arc::new(move |_| h.clone()));
    };
    let src: Source = match name {
        "hadamard" => {
            let h = hadamard_hamiltonian(hbar);
            Arc::new(move |_| h.clone())
        }
        "phase" => {
            let h = phase_gate_hamiltonian(PHASE_DELTA, hbar);
            Arc::new(move |_| h.clone())
        }
        "ramp" => Arc::new(|t| m2(0.0, t, t, 0.0)),
        "driven" => Arc::new(|t| m2(1.0, t, t, -1.0)),
        "scalar-cos" => Arc::new(|t: f64| m2(0.0, t.cos(), t.cos(), 0.0)),
        other => bail!("unknown builtin Hamiltonian `{other}` (hadamard, phase, ramp, driven, scalar-cos)"),
    };
    Ok(src)
}

pub struct Evolution {
    kind: Kind,
    h: Source,
    t0: f64,
    n_steps: usize,
    hbar: f64,
    spectrum: Option<Spectrum>,
    opts: EigenOptions<f64>,
    reported: RefCell<Vec<String>>,
}

impl Evolution {
    pub fn new(
        kind: Kind,
        h: &str,
        t0: f64,
        n_steps: usize,
        hbar: f64,
        spectrum: Option<Spectrum>,
        opts: EigenOptions<f64>,
    ) -> Result<Self> {
        if spectrum.is_some() && kind != Kind::Constant {
            bail!("--spectrum only applies to --kind constant");
        }
        if kind == Kind::Trotter && n_steps == 0 {
            bail!("--N must be at least 1");
        }
        let h = source(h, hbar).with_context(|| format!("--H {h}"))?;
        let dim = h(t0).dim();
        if let Some(s) = &spectrum {
            if s.n() != dim {
                bail!("spectrum has {} eigenvalues but H is {dim}x{dim}", s.n());
            }
        }
        Ok(Evolution {
            kind,
            h,
            t0,
            n_steps,
            hbar,
            spectrum,
            opts,
            reported: RefCell::new(Vec::new()),
        })
    }

    /// `U(t, t0)`.
    pub fn operator(&self, t: f64) -> Result<ComplexMatrix> {
        let dim = (self.h)(self.t0).dim();
        if t == self.t0 {
            return Ok(ComplexMatrix::identity(dim));
        }
        let result = match self.kind {
            Kind::Constant => {
                let h = (self.h)(self.t0);
                let spectrum = match &self.spectrum {
                    Some(s) => s.clone(),
                    None => hermitian_spectrum(&h, &self.opts)?,
                };
                evolve_const(&h, &spectrum, self.t0, t, self.hbar)?
            }
            Kind::Commuting => {
                let h = self.h.clone();
                let spec = HamiltonianSpec::commuting(move |s| h(s)).with_hbar(self.hbar);
                evolve_commuting(&spec, self.t0, t, &self.opts)?
            }
            Kind::Trotter => {
                let h = self.h.clone();
                let spec = HamiltonianSpec::general(move |s| h(s)).with_hbar(self.hbar);
                let plan = TrotterPlan::new(self.t0, t, self.n_steps)?;
                evolve_trotter(&spec, &plan, &self.opts)?
            }
        };
        Ok(self.report(result))
    }

    fn report(&self, d: Diagnosed<ComplexMatrix>) -> ComplexMatrix {
        let mut seen = self.reported.borrow_mut();
        for w in d.warnings {
            let line = w.to_string();
            if !seen.contains(&line) {
                eprintln!("warning: {line}");
                seen.push(line);
            }
        }
        d.value
    }
}
