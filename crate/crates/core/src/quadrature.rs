//! Adaptive Simpson quadrature for matrix-valued integrands.

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{creal, lit, to_f64, Real};

pub const DEFAULT_ABS_TOL: f64 = 1e-10;
pub const DEFAULT_MAX_DEPTH: usize = 40;

/// `∫_a^b f(t) dt` entrywise, refining every entry on a shared panel set
/// until the largest entrywise Simpson error estimate drops below `tol`.
pub fn integrate_matrix<T: Real>(
    f: &dyn Fn(T) -> Matrix<T>,
    a: T,
    b: T,
    tol: T,
    max_depth: usize,
) -> Result<Matrix<T>> {
    let fa = f(a);
    let fb = f(b);
    let m = mid(a, b);
    let fm = f(m);
    let whole = simpson(a, b, &fa, &fm, &fb);
    let fail = || Error::Integration {
        a: to_f64(a),
        b: to_f64(b),
        tol: to_f64(tol),
        max_depth,
    };
    refine(f, a, b, &fa, &fm, &fb, whole, tol, max_depth).ok_or_else(fail)
}

/// [`integrate_matrix`] with absolute tolerance `1e-10` and depth 40.
pub fn integrate_matrix_default<T: Real>(f: &dyn Fn(T) -> Matrix<T>, a: T, b: T) -> Result<Matrix<T>> {
    integrate_matrix(f, a, b, lit(DEFAULT_ABS_TOL), DEFAULT_MAX_DEPTH)
}

fn mid<T: Real>(a: T, b: T) -> T {
    a + (b - a) * lit::<T>(0.5)
}

fn simpson<T: Real>(a: T, b: T, fa: &Matrix<T>, fm: &Matrix<T>, fb: &Matrix<T>) -> Matrix<T> {
    let mut s = fa + fb;
    s.add_scaled(creal(lit(4.0)), fm);
    s.scale(creal((b - a) / lit::<T>(6.0)))
}

#[allow(clippy::too_many_arguments)]
fn refine<T: Real>(
    f: &dyn Fn(T) -> Matrix<T>,
    a: T,
    b: T,
    fa: &Matrix<T>,
    fm: &Matrix<T>,
    fb: &Matrix<T>,
    whole: Matrix<T>,
    tol: T,
    depth: usize,
) -> Option<Matrix<T>> {
    let m = mid(a, b);
    let lm = mid(a, m);
    let rm = mid(m, b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(a, m, fa, &flm, fm);
    let right = simpson(m, b, fm, &frm, fb);
    let both = &left + &right;
    let delta = &both - &whole;
    if delta.max_abs() <= lit::<T>(15.0) * tol {
        let mut out = both;
        out.add_scaled(creal(T::one() / lit::<T>(15.0)), &delta);
        return Some(out);
    }
    if depth == 0 {
        return None;
    }
    let half = tol * lit::<T>(0.5);
    let l = refine(f, a, m, fa, &flm, fm, left, half, depth - 1)?;
    let r = refine(f, m, b, fm, &frm, fb, right, half, depth - 1)?;
    Some(&l + &r)
}
