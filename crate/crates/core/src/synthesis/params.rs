//! Parameter formulas for the two-generator complex example: given r > 3,
//! the four generator constants are chosen so that A B A^3 B A equals the
//! scaling matrix C exactly. The printed formulas are branch-ambiguous, so
//! principal branches are tried first and the 5 x 2 fifth-root/square-root
//! combinations enumerated on failure.

use crate::error::{Error, Result};
use crate::mat2::Mat2;
use num_complex::Complex64;

#[derive(Debug, Clone, Copy)]
pub struct Exc2Params {
    pub r: f64,
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub u: Complex64,
    /// |c|^2, which must match the closed form and lie in (0, 1).
    pub c_norm_sq: f64,
    /// Frobenius residual of the construction identity A B A^3 B A = C.
    pub identity_residual: f64,
}

/// Closed form for |c|^2, evaluated through the rationalized equivalent
/// 2r / (r(r^2-3) + (r^2-1) sqrt(r^2-4)) to avoid the cancellation the
/// printed difference form suffers at large r.
pub(crate) fn c_norm_sq_closed_form(r: f64) -> f64 {
    let s = (r * r - 4.0).sqrt();
    2.0 * r / (r * (r * r - 3.0) + (r * r - 1.0) * s)
}

fn construction_residual(a: Complex64, b: Complex64, c: Complex64, u: Complex64) -> f64 {
    let one = Complex64::ONE;
    let zero = Complex64::ZERO;
    let ma = Mat2::new(u, a, one, zero);
    let mb = Mat2::new(one, zero, zero, b);
    let p = ma.mul(&mb).mul(&ma).mul(&ma).mul(&ma).mul(&mb).mul(&ma);
    let c_mat = Mat2::new(c, zero, zero, one);
    p.sub(&c_mat).fro_norm()
}

pub fn exc2_params(r: f64) -> Result<Exc2Params> {
    if !(r > 3.0) {
        return Err(Error::Domain(format!("parameter r = {r} must exceed 3")));
    }
    let b = Complex64::new(0.0, r);
    let two = Complex64::new(2.0, 0.0);
    let mut best_residual = f64::INFINITY;
    let mut best: Option<Exc2Params> = None;
    for sqrt_branch in [1.0, -1.0] {
        let s = (Complex64::new(4.0, 0.0) + b * b).sqrt() * sqrt_branch;
        let c = (two + b * b + s - b - b * s) / 2.0;
        let radicand = (Complex64::new(8.0, 0.0) + b * 2.0 + b * b + s * 4.0 + b * s) / (b * 2.0);
        let principal_fifth = radicand.powf(0.2);
        for j in 0..5 {
            let rot = Complex64::from_polar(1.0, std::f64::consts::TAU * j as f64 / 5.0);
            let u = -(principal_fifth * rot);
            let a = u * u * (-two - b + s) / (b * 2.0);
            let residual = construction_residual(a, b, c, u);
            if residual < best_residual {
                best_residual = residual;
                best = Some(Exc2Params {
                    r,
                    a,
                    b,
                    c,
                    u,
                    c_norm_sq: c.norm_sqr(),
                    identity_residual: residual,
                });
            }
        }
    }
    let params = best.expect("ten branches evaluated");
    if params.identity_residual >= 1e-10 {
        return Err(Error::BranchInconsistency(params.identity_residual));
    }
    let closed = c_norm_sq_closed_form(r);
    let diff = (params.c_norm_sq - closed).abs();
    if diff > 1e-12 {
        return Err(Error::IdentityFailure {
            name: "|c|^2 closed form".into(),
            residual: diff,
        });
    }
    if !(params.c_norm_sq > 0.0 && params.c_norm_sq < 1.0) {
        return Err(Error::IdentityFailure {
            name: "|c|^2 in (0,1)".into(),
            residual: params.c_norm_sq,
        });
    }
    Ok(params)
}
