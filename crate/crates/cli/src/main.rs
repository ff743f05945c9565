#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex;
use vandermat::io::{format_complex, parse_complex, parse_matrix, parse_spectrum};
use vandermat::{
    build_vandermonde, esp_classic, esp_detform, esp_fourier, expm_with, inverse_charpoly, inverse_fourier,
    inverse_gauss, partition_count, spectrum_of, vinv_degenerate, vinv_distinct, vinv_general, ComplexMatrix,
    Diagnosed, EigenOptions, ExpmMethod, Spectrum,
};

mod hamiltonian;
mod plot;

use hamiltonian::{Evolution, Kind};

#[derive(Parser)]
#[command(
    name = "vandermat",
    version,
    about = "Matrix functions from eigenvalues via the confluent Vandermonde inverse"
)]
struct Cli {
    /// Write the result here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Inverse of a square matrix.
    Inverse {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long, value_enum, default_value_t = InverseMethod::Fourier)]
        method: InverseMethod,
    },
    /// Exponential e^{tA}.
    Expm {
        #[arg(long)]
        matrix: PathBuf,
        /// `RE` or `RE,IM`.
        #[arg(long, allow_hyphen_values = true)]
        t: String,
        #[arg(long)]
        spectrum: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = ExpmRoute::General)]
        method: ExpmRoute,
    },
    /// Confluent Vandermonde matrix of a spectrum and its inverse.
    Vinv {
        #[arg(long)]
        spectrum: PathBuf,
        #[arg(long, value_enum, default_value_t = VinvMethod::Auto)]
        method: VinvMethod,
    },
    /// Time-evolution operator U(t, t0).
    Evolve(EvolveArgs),
    /// Bloch-sphere path of U(s, t0) psi0 for s in [t0, t].
    Bloch {
        #[command(flatten)]
        evolve: EvolveArgs,
        /// Two complex amplitudes, whitespace separated.
        #[arg(long)]
        psi0: PathBuf,
        #[arg(long, default_value_t = vandermat::quantum::DEFAULT_BLOCH_SAMPLES)]
        samples: usize,
        #[arg(long, value_enum, default_value_t = PlotFormat::Csv)]
        out: PlotFormat,
    },
    /// Elementary symmetric polynomial e_j(x).
    Esp {
        /// Comma-separated complex entries.
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long)]
        j: usize,
        #[arg(long, value_enum, default_value_t = EspMethod::Classic)]
        method: EspMethod,
    },
    /// Number of integer partitions of n.
    Partition { n: i64 },
}

#[derive(Args)]
struct EvolveArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    /// Matrix file or `builtin:NAME` (hadamard, phase, ramp, driven, scalar-cos).
    #[arg(long = "H")]
    h: String,
    #[arg(long, allow_hyphen_values = true)]
    t0: f64,
    #[arg(long, allow_hyphen_values = true)]
    t: f64,
    /// Trotter steps.
    #[arg(long = "N", default_value_t = 100)]
    n_steps: usize,
    #[arg(long, default_value_t = 1.0)]
    hbar: f64,
    /// Spectrum of a constant Hamiltonian.
    #[arg(long)]
    spectrum: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum InverseMethod {
    Fourier,
    Charpoly,
    Gauss,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExpmRoute {
    General,
    Distinct,
    Degenerate,
    Oracle,
}

#[derive(Clone, Copy, ValueEnum)]
enum VinvMethod {
    General,
    Distinct,
    Degenerate,
    Auto,
}

#[derive(Clone, Copy, ValueEnum)]
enum EspMethod {
    Classic,
    Fourier,
    Detform,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum PlotFormat {
    Csv,
    Svg,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let chain: Vec<String> = e.chain().map(|c| c.to_string()).collect();
            eprintln!("error: {}", chain.join(": ").replace('\n', " "));
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<()> {
    let text = match &cli.command {
        Command::Inverse { matrix, method } => {
            let a = read_matrix(matrix)?;
            let inv = match method {
                InverseMethod::Fourier => inverse_fourier(&a),
                InverseMethod::Charpoly => inverse_charpoly(&a),
                InverseMethod::Gauss => inverse_gauss(&a),
            }
            .with_context(|| format!("inverting {}", matrix.display()))?;
            format_matrix(&inv)
        }
        Command::Expm {
            matrix,
            t,
            spectrum,
            method,
        } => {
            let a = read_matrix(matrix)?;
            let t = parse_time(t)?;
            let method = match method {
                ExpmRoute::General => ExpmMethod::General,
                ExpmRoute::Distinct => ExpmMethod::Distinct,
                ExpmRoute::Degenerate => ExpmMethod::Degenerate,
                ExpmRoute::Oracle => ExpmMethod::Oracle,
            };
            let spectrum = match (spectrum, method) {
                (_, ExpmMethod::Oracle) => None,
                (Some(path), _) => Some(read_spectrum(path)?),
                (None, _) => Some(spectrum_of(&a, &eigen_options()?).context("eigenvalues of --matrix")?),
            };
            format_matrix(&expm_with(&a, t, spectrum.as_ref(), method)?)
        }
        Command::Vinv { spectrum, method } => {
            let s = read_spectrum(spectrum)?;
            let v = build_vandermonde(&s);
            let inv = match method {
                VinvMethod::General => vinv_general(&v)?,
                VinvMethod::Degenerate => vinv_degenerate(&s)?,
                VinvMethod::Distinct => report(vinv_distinct(&s)?),
                VinvMethod::Auto if s.is_all_distinct() => report(vinv_distinct(&s)?),
                VinvMethod::Auto if s.is_fully_degenerate() => vinv_degenerate(&s)?,
                VinvMethod::Auto => vinv_general(&v)?,
            };
            format!("# V\n{}# V^-1\n{}", format_matrix(&v.matrix), format_matrix(&inv))
        }
        Command::Evolve(args) => {
            let evolution = evolution(args)?;
            format_matrix(&evolution.operator(args.t)?)
        }
        Command::Bloch {
            evolve,
            psi0,
            samples,
            out,
        } => {
            let psi0 = read_state(psi0)?;
            let evolution = evolution(evolve)?;
            let times = vandermat::quantum::uniform_times(evolve.t0, evolve.t, *samples);
            let path = vandermat::bloch_path(&psi0, &|s| evolution.operator(s).map_err(to_core), &times)?;
            match out {
                PlotFormat::Csv => plot::csv(&path),
                PlotFormat::Svg => plot::svg(&path),
            }
        }
        Command::Esp { x, j, method } => {
            let x = x
                .split(',')
                .map(|s| parse_complex(s).with_context(|| format!("--x entry `{}`", s.trim())))
                .collect::<Result<Vec<_>>>()?;
            let value = match method {
                EspMethod::Classic => {
                    if *j > x.len() {
                        bail!("--j {j} exceeds the number of entries {}", x.len());
                    }
                    esp_classic(&x, *j)
                }
                EspMethod::Fourier => esp_fourier(&x, *j)?,
                EspMethod::Detform => esp_detform(&x, *j)?,
            };
            let floor = 1e-14 * value.norm();
            let clean = |x: f64| if x.abs() <= floor { 0.0 } else { x };
            format!("{}\n", format_complex(Complex::new(clean(value.re), clean(value.im))))
        }
        Command::Partition { n } => format!("{}\n", partition_count(*n)?),
    };
    match &cli.output {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn report(d: Diagnosed<ComplexMatrix>) -> ComplexMatrix {
    for w in d.warnings {
        eprintln!("warning: {w}");
    }
    d.value
}

/// Matrix text with components below `1e-14 · max|entry|` printed as zero.
fn format_matrix(m: &ComplexMatrix) -> String {
    let floor = 1e-14 * m.max_abs();
    let clean = |x: f64| if x.abs() <= floor { 0.0 } else { x };
    let tidy = ComplexMatrix::from_fn(m.dim(), |i, j| Complex::new(clean(m[(i, j)].re), clean(m[(i, j)].im)));
    vandermat::io::format_matrix(&tidy)
}

fn to_core(e: anyhow::Error) -> vandermat::Error {
    vandermat::Error::Domain(e.to_string())
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

pub fn read_matrix(path: &Path) -> Result<ComplexMatrix> {
    parse_matrix(&read(path)?).with_context(|| format!("matrix file {}", path.display()))
}

pub fn read_spectrum(path: &Path) -> Result<Spectrum> {
    parse_spectrum(&read(path)?).with_context(|| format!("spectrum file {}", path.display()))
}

fn read_state(path: &Path) -> Result<Vec<Complex<f64>>> {
    let text = read(path)?;
    let psi = text
        .split_whitespace()
        .map(parse_complex)
        .collect::<vandermat::Result<Vec<_>>>()
        .with_context(|| format!("state file {}", path.display()))?;
    if psi.len() != 2 {
        bail!("state file {} has {} amplitudes, expected 2", path.display(), psi.len());
    }
    Ok(psi)
}

fn parse_time(t: &str) -> Result<Complex<f64>> {
    let parts: Vec<&str> = t.split(',').map(str::trim).collect();
    let num = |s: &str| s.parse::<f64>().map_err(|_| anyhow!("--t: invalid number `{s}`"));
    match parts.as_slice() {
        [re] => Ok(Complex::new(num(re)?, 0.0)),
        [re, im] => Ok(Complex::new(num(re)?, num(im)?)),
        _ => bail!("--t expects RE or RE,IM, got `{t}`"),
    }
}

pub fn eigen_options() -> Result<EigenOptions<f64>> {
    let opts = EigenOptions::default();
    match std::env::var("VANDERMAT_TOL") {
        Ok(raw) => {
            let tol: f64 = raw
                .trim()
                .parse()
                .map_err(|_| anyhow!("VANDERMAT_TOL: invalid number `{raw}`"))?;
            if !(tol >= 0.0) || !tol.is_finite() {
                bail!("VANDERMAT_TOL must be a non-negative number, got `{raw}`");
            }
            Ok(opts.with_cluster_tol(tol))
        }
        Err(_) => Ok(opts),
    }
}

fn evolution(args: &EvolveArgs) -> Result<Evolution> {
    if !(args.hbar > 0.0) {
        bail!("--hbar must be positive, got {}", args.hbar);
    }
    let spectrum = args.spectrum.as_deref().map(read_spectrum).transpose()?;
    Evolution::new(
        args.kind,
        &args.h,
        args.t0,
        args.n_steps,
        args.hbar,
        spectrum,
        eigen_options()?,
    )
}
