//! Text and JSON formats for matrices and spectra.
//!
//! Matrix text: one row per line, whitespace-separated entries of the form
//! `a`, `a+bi`, `a-bi`, `bi`, `i` or `-i`. Matrix JSON:
//! `{"n": 2, "re": [[..], [..]], "im": [[..], [..]]}`. Spectrum JSON:
//! `{"lambdas": [[re, im], ...], "mus": [...]}`.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::eigen::Spectrum;
use crate::error::{Error, Result};
use crate::linalg::Matrix;

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    n: usize,
    re: Vec<Vec<f64>>,
    im: Vec<Vec<f64>>,
}

#[derive(Serialize, Deserialize)]
struct SpectrumJson {
    lambdas: Vec<[f64; 2]>,
    mus: Vec<usize>,
}

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn parse_real(s: &str, whole: &str) -> Result<f64> {
    let v: f64 = s.parse().map_err(|_| parse_err(format!("invalid number `{whole}`")))?;
    if !v.is_finite() {
        return Err(parse_err(format!("non-finite entry `{whole}`")));
    }
    Ok(v)
}

/// Parses one complex entry.
pub fn parse_complex(token: &str) -> Result<Complex<f64>> {
    let s = token.trim();
    if s.is_empty() {
        return Err(parse_err("empty entry"));
    }
    let Some(body) = s.strip_suffix('i') else {
        return Ok(Complex::new(parse_real(s, token)?, 0.0));
    };
    // split at the last sign that is not the leading one or part of an exponent
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (parse_real(&body[..k], token)?, &body[k..]),
        None => (0.0, body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        other => parse_real(other, token)?,
    };
    Ok(Complex::new(re, im))
}

/// Parses a matrix in text or JSON form (JSON is recognised by a leading `{`).
pub fn parse_matrix(input: &str) -> Result<Matrix<f64>> {
    if input.trim_start().starts_with('{') {
        return parse_matrix_json(input);
    }
    let rows: Vec<Vec<Complex<f64>>> = input
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| l.split_whitespace().map(parse_complex).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    if rows.is_empty() {
        return Err(parse_err("matrix has no rows"));
    }
    let n = rows.len();
    if let Some((k, row)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
        return Err(parse_err(format!(
            "row {} has {} entries, expected {n} for a square matrix",
            k + 1,
            row.len()
        )));
    }
    Matrix::from_rows(rows).map_err(|e| parse_err(e.to_string()))
}

fn parse_matrix_json(input: &str) -> Result<Matrix<f64>> {
    let raw: MatrixJson = serde_json::from_str(input).map_err(|e| parse_err(format!("matrix JSON: {e}")))?;
    let n = raw.n;
    let shape_ok = |rows: &[Vec<f64>]| rows.len() == n && rows.iter().all(|r| r.len() == n);
    if n == 0 || !shape_ok(&raw.re) || !shape_ok(&raw.im) {
        return Err(parse_err(format!("matrix JSON: `re` and `im` must both be {n}x{n}")));
    }
    let data = raw
        .re
        .iter()
        .flatten()
        .zip(raw.im.iter().flatten())
        .map(|(&re, &im)| Complex::new(re, im))
        .collect();
    Matrix::new(n, data).map_err(|e| parse_err(e.to_string()))
}

pub fn parse_spectrum(input: &str) -> Result<Spectrum<f64>> {
    let raw: SpectrumJson = serde_json::from_str(input).map_err(|e| parse_err(format!("spectrum JSON: {e}")))?;
    let lambdas = raw.lambdas.iter().map(|&[re, im]| Complex::new(re, im)).collect();
    Spectrum::new(lambdas, raw.mus)
}

pub fn spectrum_to_json(s: &Spectrum<f64>) -> String {
    let raw = SpectrumJson {
        lambdas: s.lambdas().iter().map(|z| [z.re, z.im]).collect(),
        mus: s.mus().to_vec(),
    };
    serde_json::to_string(&raw).expect("spectrum serializes")
}

pub fn matrix_to_json(m: &Matrix<f64>) -> String {
    let raw = MatrixJson {
        n: m.dim(),
        re: m.rows().map(|r| r.iter().map(|z| z.re).collect()).collect(),
        im: m.rows().map(|r| r.iter().map(|z| z.im).collect()).collect(),
    };
    serde_json::to_string(&raw).expect("matrix serializes")
}

/// `%.12g`-style real formatting.
pub fn format_real(x: f64) -> String {
    const DIGITS: i32 = 12;
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.*e}", (DIGITS - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..DIGITS).contains(&exp) {
        let mantissa = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (DIGITS - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Complex entry in the text format; the imaginary part is omitted when it is exactly zero.
pub fn format_complex(z: Complex<f64>) -> String {
    if z.im == 0.0 {
        return format_real(z.re);
    }
    let im = format_real(z.im.abs());
    let sign = if z.im < 0.0 { '-' } else { '+' };
    if z.re == 0.0 {
        let lead = if z.im < 0.0 { "-" } else { "" };
        return format!("{lead}{im}i");
    }
    format!("{}{sign}{im}i", format_real(z.re))
}

pub fn format_matrix(m: &Matrix<f64>) -> String {
    let mut out = String::new();
    for row in m.rows() {
        let cells: Vec<String> = row.iter().map(|&z| format_complex(z)).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}
