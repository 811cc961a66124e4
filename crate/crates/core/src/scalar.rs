//! Scalar fields the 2x2 algebra is generic over.
//!
//! Three coefficient types are used throughout: `f64` for real synthesis,
//! `Complex64` for the complex constructions, and `BigRational` for exact
//! identity verification. `Coeff` captures the shared ring operations;
//! `FloatCoeff` adds the norm/phase structure the numeric paths need.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Signed, ToPrimitive, Zero};
use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Which field a scalar type models, used for dispatch in synthesis and JSON.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldKind {
    Real,
    Complex,
}

impl Display for FieldKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FieldKind::Real => write!(f, "real"),
            FieldKind::Complex => write!(f, "complex"),
        }
    }
}

/// Ring operations shared by every coefficient type.
pub trait Coeff:
    Clone
    + PartialEq
    + Debug
    + Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    const FIELD: FieldKind;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero_val(&self) -> bool;
    /// |x| as an f64, the only norm the tolerance checks ever need.
    fn modulus(&self) -> f64;
    fn conj(&self) -> Self;
    fn is_finite_val(&self) -> bool;
}

/// Numeric coefficient types (`f64`, `Complex64`) used on the synthesis path.
pub trait FloatCoeff: Coeff + Copy {
    /// Unit-modulus factor `u` with `self = u * modulus()`; `1` for zero.
    fn phase(self) -> Self;
    /// Exact multiplication by a power of two.
    fn mul_pow2(self, e: i32) -> Self;
    fn from_f64(x: f64) -> Self;
    /// Universal numeric view; real scalars embed with zero imaginary part.
    fn as_c64(self) -> Complex64;
    /// Inverse of `as_c64`. Real scalars keep the real part only; callers
    /// guarantee the imaginary part is negligible on that path.
    fn from_c64(z: Complex64) -> Self;
    /// Signed value in the real case, modulus in the complex case; this is
    /// the scalar the closure predicates compare.
    fn spectral_scalar(self) -> f64;
}

impl Coeff for f64 {
    const FIELD: FieldKind = FieldKind::Real;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn is_zero_val(&self) -> bool {
        *self == 0.0
    }
    fn modulus(&self) -> f64 {
        self.abs()
    }
    fn conj(&self) -> Self {
        *self
    }
    fn is_finite_val(&self) -> bool {
        self.is_finite()
    }
}

impl FloatCoeff for f64 {
    fn phase(self) -> Self {
        if self < 0.0 {
            -1.0
        } else {
            1.0
        }
    }
    fn mul_pow2(self, e: i32) -> Self {
        ldexp(self, e)
    }
    fn from_f64(x: f64) -> Self {
        x
    }
    fn as_c64(self) -> Complex64 {
        Complex64::new(self, 0.0)
    }
    fn from_c64(z: Complex64) -> Self {
        z.re
    }
    fn spectral_scalar(self) -> f64 {
        self
    }
}

impl Coeff for Complex64 {
    const FIELD: FieldKind = FieldKind::Complex;

    fn zero() -> Self {
        Complex64::ZERO
    }
    fn one() -> Self {
        Complex64::ONE
    }
    fn is_zero_val(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn modulus(&self) -> f64 {
        self.norm()
    }
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
    fn is_finite_val(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

impl FloatCoeff for Complex64 {
    fn phase(self) -> Self {
        let n = self.norm();
        if n == 0.0 {
            Complex64::ONE
        } else {
            self / n
        }
    }
    fn mul_pow2(self, e: i32) -> Self {
        Complex64::new(ldexp(self.re, e), ldexp(self.im, e))
    }
    fn from_f64(x: f64) -> Self {
        Complex64::new(x, 0.0)
    }
    fn as_c64(self) -> Complex64 {
        self
    }
    fn from_c64(z: Complex64) -> Self {
        z
    }
    fn spectral_scalar(self) -> f64 {
        self.norm()
    }
}

impl Coeff for BigRational {
    const FIELD: FieldKind = FieldKind::Real;

    fn zero() -> Self {
        <BigRational as Zero>::zero()
    }
    fn one() -> Self {
        <BigRational as num_traits::One>::one()
    }
    fn is_zero_val(&self) -> bool {
        Zero::is_zero(self)
    }
    fn modulus(&self) -> f64 {
        self.abs().to_f64().unwrap_or(f64::INFINITY)
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn is_finite_val(&self) -> bool {
        true
    }
}

/// Exact rational from an f64 (every finite f64 is a dyadic rational).
pub fn rat_from_f64(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite float")
}

/// Shorthand for small rational constants in tests and built-in systems.
pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(n: i64) -> BigRational {
    BigRational::from_i64(n).expect("integer rational")
}

/// x * 2^e without intermediate overflow for |e| beyond the f64 range.
pub fn ldexp(x: f64, e: i32) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    let mut out = x;
    let mut rem = e;
    // Powers of two below DBL_MAX_EXP are exact; chunk to stay in range.
    while rem > 1000 {
        out *= 2f64.powi(1000);
        rem -= 1000;
        if !out.is_finite() {
            return out;
        }
    }
    while rem < -1000 {
        out *= 2f64.powi(-1000);
        rem += 1000;
        if out == 0.0 {
            return out;
        }
    }
    out * 2f64.powi(rem)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ldexp_matches_powers() {
        assert_eq!(ldexp(1.0, 10), 1024.0);
        assert_eq!(ldexp(3.0, -2), 0.75);
        assert_eq!(ldexp(1.0, -1100), 0.0);
        assert!(ldexp(1.0, 1100).is_infinite());
    }

    #[test]
    fn phases_are_unit() {
        assert_eq!((-2.5f64).phase(), -1.0);
        let z = Complex64::new(3.0, -4.0);
        assert!((z.phase().norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rational_from_float_is_exact() {
        assert_eq!(rat_from_f64(0.375), rat(3, 8));
    }
}
