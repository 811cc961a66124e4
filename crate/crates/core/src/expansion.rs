//! Greedy series expansions of scalars into sums of integer powers of a
//! base b > 1 (real) or b = r*i with r > 1 (complex), the engine behind
//! realizing T_s as a limit of generator words.
//!
//! Repeated exponents are allowed: greedy-with-repeats contracts the
//! remainder by (1 - 1/b) per term for every b > 1, which the
//! distinct-exponent variant does not once b > 2.

use crate::error::{Error, Result};
use num_complex::Complex64;

/// A truncated expansion: target ~ sum of base^exponent over `exponents`.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct Expansion {
    /// Exponent list; non-increasing in the real case, grouped by residue
    /// class mod 4 (descending within each merge) in the complex case.
    pub exponents: Vec<i64>,
    /// |target - reconstructed sum|, summed largest-to-smallest.
    pub residual: f64,
    #[serde(skip)]
    pub base: Complex64,
}

impl Expansion {
    /// Sum of base^exponent, largest exponent first for float stability.
    pub fn reconstruct(&self) -> Complex64 {
        let mut sorted = self.exponents.clone();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        let mut sum = Complex64::ZERO;
        for e in sorted {
            sum += complex_pow(self.base, e);
        }
        sum
    }
}

fn complex_pow(b: Complex64, e: i64) -> Complex64 {
    if b.im == 0.0 {
        return Complex64::new(b.re.powi(e as i32), 0.0);
    }
    // Purely imaginary base r*i: r^e * i^e with i^e cycling mod 4.
    let r = b.im;
    let mag = r.powi(e as i32);
    match e.rem_euclid(4) {
        0 => Complex64::new(mag, 0.0),
        1 => Complex64::new(0.0, mag),
        2 => Complex64::new(-mag, 0.0),
        _ => Complex64::new(0.0, -mag),
    }
}

/// Largest integer alpha with b^alpha <= r, nudged against float rounding.
fn greedy_exponent(r: f64, b: f64) -> i64 {
    let mut alpha = (r.ln() / b.ln()).floor() as i64;
    while b.powi(alpha as i32) > r {
        alpha -= 1;
    }
    while b.powi((alpha + 1) as i32) <= r {
        alpha += 1;
    }
    alpha
}

/// Greedy expansion of t >= 0 in base b > 1: at each step take the largest
/// integer power not exceeding the remainder. The remainder contracts by a
/// factor of at most (1 - 1/b) per term.
pub fn greedy_expand_real(t: f64, b: f64, eps: f64, max_terms: u32) -> Result<Expansion> {
    if t < 0.0 || !t.is_finite() {
        return Err(Error::Domain(format!("expansion target {t} must be >= 0")));
    }
    if !(b > 1.0) {
        return Err(Error::Domain("expansion base must exceed 1".into()));
    }
    if !(eps > 0.0) {
        return Err(Error::Domain("expansion tolerance must be positive".into()));
    }
    let mut exponents = Vec::new();
    let mut remainder = t;
    while remainder > eps {
        if exponents.len() as u32 >= max_terms {
            return Err(Error::BudgetExceeded(format!(
                "expansion needs more than {max_terms} terms for eps {eps:.3e}"
            )));
        }
        let alpha = greedy_exponent(remainder, b);
        let p = b.powi(alpha as i32);
        exponents.push(alpha);
        if p == remainder {
            break;
        }
        remainder -= p;
    }
    let exp = Expansion {
        exponents,
        residual: 0.0,
        base: Complex64::new(b, 0.0),
    };
    let residual = (exp.reconstruct().re - t).abs();
    Ok(Expansion { residual, ..exp })
}

/// Greedy expansion of a complex target over the purely imaginary base
/// b = r*i with r > 1. Each component expands over its residue class mod 4:
/// exponents 0 mod 4 hit positive reals, 2 mod 4 negative reals, 1 mod 4
/// positive imaginaries and 3 mod 4 negative imaginaries; each class runs a
/// greedy expansion in base r^4.
pub fn greedy_expand_complex(
    t: Complex64,
    b: Complex64,
    eps: f64,
    max_terms: u32,
) -> Result<Expansion> {
    if b.re.abs() > 1e-12 * b.norm() || !(b.im > 1.0) {
        return Err(Error::Domain(
            "complex expansion base must be r*i with r > 1".into(),
        ));
    }
    if !(eps > 0.0) {
        return Err(Error::Domain("expansion tolerance must be positive".into()));
    }
    if !t.re.is_finite() || !t.im.is_finite() {
        return Err(Error::Domain("expansion target must be finite".into()));
    }
    let r = b.im;
    let mut exponents: Vec<i64> = Vec::new();
    let mut budget = max_terms;
    let mut expand_component = |value: f64, class_pos: i64, class_neg: i64| -> Result<()> {
        if value == 0.0 {
            return Ok(());
        }
        let class = if value > 0.0 { class_pos } else { class_neg };
        let target = value.abs();
        let mut remainder = target;
        // Component budget: each component may use what is left.
        while remainder > eps / 2.0 {
            if budget == 0 {
                return Err(Error::BudgetExceeded(format!(
                    "complex expansion exceeds {max_terms} terms for eps {eps:.3e}"
                )));
            }
            budget -= 1;
            // Largest alpha = class (mod 4) with r^alpha <= remainder.
            let raw = greedy_exponent(remainder, r);
            let mut alpha = class + 4 * ((raw - class).div_euclid(4));
            while r.powi(alpha as i32) > remainder {
                alpha -= 4;
            }
            let p = r.powi(alpha as i32);
            exponents.push(alpha);
            if p == remainder {
                break;
            }
            remainder -= p;
        }
        Ok(())
    };
    expand_component(t.re, 0, 2)?;
    expand_component(t.im, 1, 3)?;
    let exp = Expansion {
        exponents,
        residual: 0.0,
        base: b,
    };
    let residual = (exp.reconstruct() - t).norm();
    Ok(Expansion { residual, ..exp })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hand_example_base_two() {
        // 5.75 = 4 + 1 + 0.5 + 0.25.
        let e = greedy_expand_real(5.75, 2.0, 1e-12, 32).unwrap();
        assert_eq!(e.exponents, vec![2, 0, -1, -2]);
        assert_eq!(e.residual, 0.0);
    }

    #[test]
    fn zero_and_single_power() {
        let e = greedy_expand_real(0.0, 3.0, 1e-9, 8).unwrap();
        assert!(e.exponents.is_empty());
        assert_eq!(e.residual, 0.0);

        let b = 2.7f64;
        let e = greedy_expand_real(b.powi(7), b, 1e-9, 8).unwrap();
        assert_eq!(e.exponents, vec![7]);
        assert_eq!(e.residual, 0.0);
    }

    #[test]
    fn budget_and_domain_errors() {
        assert!(matches!(
            greedy_expand_real(-1.0, 2.0, 1e-6, 10),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            greedy_expand_real(std::f64::consts::PI, 1.5, 1e-12, 3),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn real_exponents_non_increasing_and_contracting() {
        let mut state = 0.37f64;
        for _ in 0..500 {
            state = (state * 9301.0 + 49297.0) % 233280.0 / 233280.0;
            let t = state * 1e6;
            let b = 1.01 + state * 8.99;
            let e = greedy_expand_real(t, b, 1e-6 * t.max(1.0), 4000).unwrap();
            for w in e.exponents.windows(2) {
                assert!(w[0] >= w[1]);
            }
            // Contraction: after k terms the remainder is <= t (1 - 1/b)^k.
            let mut remainder = t;
            for (k, alpha) in e.exponents.iter().enumerate() {
                remainder -= b.powi(*alpha as i32);
                let bound = t * (1.0 - 1.0 / b).powi(k as i32 + 1);
                assert!(remainder.abs() <= bound + 1e-9 * t.max(1.0), "term {k}");
            }
            assert!((e.reconstruct().re - t).abs() <= 1e-6 * t.max(1.0));
        }
    }

    #[test]
    fn complex_single_power_and_zero() {
        let b = Complex64::new(0.0, 2.0);
        let e = greedy_expand_complex(b, b, 1e-12, 16).unwrap();
        assert_eq!(e.exponents, vec![1]);
        assert_eq!(e.residual, 0.0);

        let e = greedy_expand_complex(Complex64::ZERO, b, 1e-12, 16).unwrap();
        assert!(e.exponents.is_empty());
    }

    #[test]
    fn complex_negative_real_uses_class_two() {
        // -1 with r = 2: b^-2 = -1/4, four copies.
        let b = Complex64::new(0.0, 2.0);
        let e = greedy_expand_complex(Complex64::new(-1.0, 0.0), b, 1e-12, 16).unwrap();
        assert_eq!(e.exponents, vec![-2, -2, -2, -2]);
        assert_eq!(e.residual, 0.0);
    }

    #[test]
    fn complex_residue_class_purity() {
        let b = Complex64::new(0.0, 3.0);
        let mut state = 0.11f64;
        for _ in 0..200 {
            state = (state * 9301.0 + 49297.0) % 233280.0 / 233280.0;
            let s2 = (state * 7919.0).fract();
            let t = Complex64::new((state - 0.5) * 100.0, (s2 - 0.5) * 100.0);
            let e = greedy_expand_complex(t, b, 1e-8, 4000).unwrap();
            for alpha in &e.exponents {
                let class = alpha.rem_euclid(4);
                let term = complex_pow(b, *alpha);
                match class {
                    0 => assert!(term.re > 0.0 && t.re > 0.0),
                    2 => assert!(term.re < 0.0 && t.re < 0.0),
                    1 => assert!(term.im > 0.0 && t.im > 0.0),
                    _ => assert!(term.im < 0.0 && t.im < 0.0),
                }
            }
            assert!((e.reconstruct() - t).norm() <= 1e-8 + 1e-12 * t.norm());
        }
    }
}
