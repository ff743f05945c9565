//! Scalar abstraction shared by every module.
//!
//! All math in this crate is written against [`Real`], so the same code runs
//! on `f64` (the reference precision, against which every tolerance in the
//! test suite is stated) and on `f32`.

use std::fmt::{Debug, Display};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

/// Real floating-point scalar backing the complex arithmetic.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + NumAssign + Default + Debug + Display + Send + Sync + 'static
{
}

impl<T> Real for T where
    T: Float + FloatConst + FromPrimitive + ToPrimitive + NumAssign + Default + Debug + Display + Send + Sync + 'static
{
}

/// Converts an `f64` literal into `T`.
#[inline]
pub fn lit<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("f64 literal representable in scalar type")
}

/// Converts a count into `T`.
#[inline]
pub fn from_usize<T: Real>(n: usize) -> T {
    T::from_usize(n).expect("integer representable in scalar type")
}

#[inline]
pub fn to_f64<T: Real>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

#[inline]
pub fn cplx<T: Real>(re: T, im: T) -> Complex<T> {
    Complex::new(re, im)
}

#[inline]
pub fn creal<T: Real>(re: T) -> Complex<T> {
    Complex::new(re, T::zero())
}

#[inline]
pub fn is_finite<T: Real>(z: Complex<T>) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// `e^{i 2π num / den}`, with the angle reduced modulo `den` before the
/// trigonometric call so large index products keep full accuracy.
pub fn root_of_unity<T: Real>(num: i64, den: usize) -> Complex<T> {
    let den_i = den as i64;
    let r = num.rem_euclid(den_i) as usize;
    let angle = T::TAU() * from_usize::<T>(r) / from_usize::<T>(den);
    Complex::from_polar(T::one(), angle)
}

/// `m!` as a scalar (exact in `f64` up to `22!`).
pub fn factorial<T: Real>(m: usize) -> T {
    (2..=m).fold(T::one(), |acc, k| acc * from_usize::<T>(k))
}

/// Integer power of a complex number with `z^0 = 1` (also for `z = 0`).
pub fn cpowi<T: Real>(z: Complex<T>, k: usize) -> Complex<T> {
    let mut acc = Complex::new(T::one(), T::zero());
    let mut base = z;
    let mut e = k;
    while e > 0 {
        if e & 1 == 1 {
            acc *= base;
        }
        base = base * base;
        e >>= 1;
    }
    acc
}
