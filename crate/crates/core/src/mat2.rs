//! 2x2 matrices over a scalar field and linear fractional transformations
//! modulo nonzero scalars, together with the determinant/sigma functionals
//! and the metrics every approximation claim is stated against.

use crate::error::{Error, Result};
use crate::scalar::{Coeff, FieldKind, FloatCoeff};

/// Relative singularity threshold: |det| <= TAU_DET * ||m||_F^2 is singular.
pub const TAU_DET: f64 = 1e-12;
/// Relative floor below which the delta entry counts as zero for det/sigma.
pub const TAU_DEN: f64 = 1e-300;

/// A raw 2x2 matrix; the algebraic object before any quotient is taken.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2<T> {
    pub m11: T,
    pub m12: T,
    pub m21: T,
    pub m22: T,
}

impl<T: Coeff> Mat2<T> {
    pub fn new(m11: T, m12: T, m21: T, m22: T) -> Self {
        Mat2 { m11, m12, m21, m22 }
    }

    pub fn identity() -> Self {
        Mat2::new(T::one(), T::zero(), T::zero(), T::one())
    }

    pub fn entries(&self) -> [T; 4] {
        [
            self.m11.clone(),
            self.m12.clone(),
            self.m21.clone(),
            self.m22.clone(),
        ]
    }

    pub fn det(&self) -> T {
        self.m11.clone() * self.m22.clone() - self.m12.clone() * self.m21.clone()
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Mat2::new(
            self.m11.clone() * rhs.m11.clone() + self.m12.clone() * rhs.m21.clone(),
            self.m11.clone() * rhs.m12.clone() + self.m12.clone() * rhs.m22.clone(),
            self.m21.clone() * rhs.m11.clone() + self.m22.clone() * rhs.m21.clone(),
            self.m21.clone() * rhs.m12.clone() + self.m22.clone() * rhs.m22.clone(),
        )
    }

    pub fn scale(&self, s: &T) -> Self {
        Mat2::new(
            self.m11.clone() * s.clone(),
            self.m12.clone() * s.clone(),
            self.m21.clone() * s.clone(),
            self.m22.clone() * s.clone(),
        )
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Mat2::new(
            self.m11.clone() - rhs.m11.clone(),
            self.m12.clone() - rhs.m12.clone(),
            self.m21.clone() - rhs.m21.clone(),
            self.m22.clone() - rhs.m22.clone(),
        )
    }

    pub fn all_finite(&self) -> bool {
        self.entries().iter().all(|e| e.is_finite_val())
    }

    /// Largest entry modulus.
    pub fn max_modulus(&self) -> f64 {
        self.entries()
            .iter()
            .map(|e| e.modulus())
            .fold(0.0, f64::max)
    }

    pub fn fro_norm(&self) -> f64 {
        self.entries()
            .iter()
            .map(|e| e.modulus().powi(2))
            .sum::<f64>()
            .sqrt()
    }

    /// Exact projective equality: true iff self = lambda * rhs for some
    /// nonzero scalar. All cross products are compared, so this is exact
    /// over rationals and rounding-free over floats.
    pub fn proportional(&self, rhs: &Self) -> bool {
        let a = self.entries();
        let b = rhs.entries();
        let a_zero = a.iter().all(|e| e.is_zero_val());
        let b_zero = b.iter().all(|e| e.is_zero_val());
        if a_zero || b_zero {
            return a_zero && b_zero;
        }
        for i in 0..4 {
            for j in (i + 1)..4 {
                if a[i].clone() * b[j].clone() != a[j].clone() * b[i].clone() {
                    return false;
                }
            }
        }
        // Proportionality of cross ratios plus matching zero patterns.
        (0..4).all(|i| a[i].is_zero_val() == b[i].is_zero_val())
    }
}

impl<T: FloatCoeff> Mat2<T> {
    /// First entry of largest modulus; the scalar canonicalization divides out.
    pub(crate) fn pivot_value(&self) -> T {
        self.entries()[self.pivot_index()]
    }

    /// Index of the first entry of largest modulus, in (m11, m12, m21, m22) order.
    fn pivot_index(&self) -> usize {
        let e = self.entries();
        let mut best = 0;
        for (i, v) in e.iter().enumerate() {
            if v.modulus() > e[best].modulus() {
                best = i;
            }
        }
        best
    }
}

/// What happens on the boundary of the projective line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Point<T> {
    Finite(T),
    Infinity,
}

impl<T: FloatCoeff> Point<T> {
    pub fn finite(self) -> Option<T> {
        match self {
            Point::Finite(x) => Some(x),
            Point::Infinity => None,
        }
    }
}

/// An LFT: a matrix up to nonzero scalar, stored as a canonical
/// representative with max entry modulus 1 and the first largest-modulus
/// entry positive (real) or of zero phase (complex).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjectiveMap<T> {
    rep: Mat2<T>,
}

/// det and sigma of the delta-normalized form (alpha x + beta)/(gamma x + delta),
/// defined only when delta is nonzero. Complex maps report moduli.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct SpectralData {
    pub det_norm: f64,
    pub sigma: f64,
    pub defined: bool,
}

/// Log-space spectral view used by the closure predicates; immune to the
/// overflow that plagues det/sigma when delta is tiny.
#[derive(Debug, Clone, Copy)]
pub(crate) struct SpectralLog {
    /// Sign of det_norm in the real case (+1/-1); +1 for complex maps.
    pub det_sign: f64,
    pub log_abs_det: f64,
    pub log_sigma: f64,
}

pub fn canonicalize<T: FloatCoeff>(m: &Mat2<T>) -> Result<ProjectiveMap<T>> {
    let norm = m.fro_norm();
    let det = m.det().modulus();
    if !m.all_finite() || norm == 0.0 || det <= TAU_DET * norm * norm {
        return Err(Error::SingularMatrix {
            det,
            threshold: TAU_DET * norm * norm,
        });
    }
    Ok(ProjectiveMap::from_rep(normalize_rep(m)))
}

/// Scale to max modulus 1 and apply the sign/phase convention. Dividing by
/// the pivot value directly (rather than multiplying by a reciprocal) makes
/// the pivot exactly 1 and the normalization idempotent bit-for-bit. Does
/// not check invertibility; evaluation paths that tolerate degenerate
/// limits call this directly.
pub(crate) fn normalize_rep<T: FloatCoeff>(m: &Mat2<T>) -> Mat2<T> {
    let pivot = m.entries()[m.pivot_index()];
    Mat2::new(m.m11 / pivot, m.m12 / pivot, m.m21 / pivot, m.m22 / pivot)
}

impl<T: FloatCoeff> ProjectiveMap<T> {
    pub(crate) fn from_rep(rep: Mat2<T>) -> Self {
        ProjectiveMap { rep }
    }

    pub fn identity() -> Self {
        ProjectiveMap {
            rep: Mat2::identity(),
        }
    }

    /// Canonical representative (max entry modulus 1).
    pub fn rep(&self) -> &Mat2<T> {
        &self.rep
    }

    /// Map from the coefficients of (alpha x + beta)/(gamma x + delta).
    pub fn from_coeffs(alpha: T, beta: T, gamma: T, delta: T) -> Result<Self> {
        canonicalize(&Mat2::new(alpha, beta, gamma, delta))
    }

    pub fn compose(&self, rhs: &Self) -> Self {
        ProjectiveMap::from_rep(normalize_rep(&self.rep.mul(&rhs.rep)))
    }

    /// Moebius action with projective conventions: the pole maps to
    /// infinity and infinity maps to alpha/gamma (or infinity if gamma = 0).
    pub fn apply(&self, x: Point<T>) -> Point<T> {
        let m = &self.rep;
        match x {
            Point::Infinity => {
                if m.m21.is_zero_val() {
                    Point::Infinity
                } else {
                    Point::Finite(m.m11 / m.m21)
                }
            }
            Point::Finite(x) => {
                let den = m.m21 * x + m.m22;
                if den.is_zero_val() {
                    Point::Infinity
                } else {
                    Point::Finite((m.m11 * x + m.m12) / den)
                }
            }
        }
    }

    /// det/sigma of the delta-normalized form, or `defined = false` when the
    /// delta entry vanishes relative to the matrix scale.
    pub fn spectral_data(&self) -> SpectralData {
        match self.spectral_log() {
            None => SpectralData {
                det_norm: 0.0,
                sigma: 0.0,
                defined: false,
            },
            Some(s) => SpectralData {
                det_norm: s.det_sign * s.log_abs_det.exp(),
                sigma: s.log_sigma.exp(),
                defined: true,
            },
        }
    }

    pub(crate) fn spectral_log(&self) -> Option<SpectralLog> {
        let m = &self.rep;
        let delta = m.m22.modulus();
        if delta <= TAU_DEN * m.fro_norm() {
            return None;
        }
        let det = m.det();
        let det_sign = if T::FIELD == FieldKind::Real && det.spectral_scalar() < 0.0 {
            -1.0
        } else {
            1.0
        };
        Some(SpectralLog {
            det_sign,
            log_abs_det: det.modulus().ln() - 2.0 * delta.ln(),
            log_sigma: 2.0 * (m.m11.modulus().ln() - delta.ln()),
        })
    }
}

/// Projective distance: the chordal metric on Frobenius-normalized
/// coefficient vectors, quotiented by sign (real) or phase (complex). The
/// optimal unit scalar is the phase of the inner product, so the distance
/// is computed as a direct difference and vanishes exactly for equal maps.
pub fn proj_distance<T: FloatCoeff>(f: &ProjectiveMap<T>, g: &ProjectiveMap<T>) -> f64 {
    let fn_ = T::from_f64(f.rep.fro_norm());
    let gn = T::from_f64(g.rep.fro_norm());
    let mut inner = T::zero();
    for (a, b) in f.rep.entries().iter().zip(g.rep.entries().iter()) {
        inner = inner + *a * b.conj();
    }
    let phase = inner.phase();
    let mut sum = 0.0;
    for (a, b) in f.rep.entries().iter().zip(g.rep.entries().iter()) {
        let diff = *a / fn_ - *b * phase / gn;
        let m = diff.modulus();
        sum += m * m;
    }
    sum.sqrt()
}

/// Absolute and relative Frobenius distance between raw matrices.
pub fn mat_distance<T: FloatCoeff>(x: &Mat2<T>, y: &Mat2<T>) -> (f64, f64) {
    let abs = x.sub(y).fro_norm();
    let rel = abs / x.fro_norm().max(y.fro_norm()).max(TAU_DEN);
    (abs, rel)
}
