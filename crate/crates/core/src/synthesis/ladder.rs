//! The word ladder: inversion and scaling stages, T_s via greedy base
//! expansion, and the five-factor composite realizing (alpha x + beta)/(gamma x + 1).
//!
//! Stage depths are chosen adaptively by doubling with the final error
//! measured on the evaluated word; nothing relies on a-priori Lipschitz
//! bounds, so a returned word always certifies its own accuracy.

use super::SynthesisBudget;
use crate::error::{Error, Result};
use crate::expansion::{greedy_expand_complex, greedy_expand_real};
use crate::mat2::{normalize_rep, proj_distance, Mat2, ProjectiveMap};
use crate::scalar::{FieldKind, FloatCoeff};
use crate::words::{evaluate, GeneratorSystem, Word};

/// S^m R S^m, the word converging to the inversion x -> a/x at rate b^-m.
pub fn word_inversion<T: FloatCoeff>(m: u32, sys: &GeneratorSystem<T>) -> Result<Word> {
    let roles = sys.roles()?;
    if m < 1 {
        return Err(Error::Domain("inversion depth must be at least 1".into()));
    }
    let mut w = Word::empty();
    w.push(roles.s_sym.clone(), m * roles.step);
    w.push(roles.r_sym.clone(), 1);
    w.push(roles.s_sym.clone(), m * roles.step);
    Ok(w)
}

/// S^m R S^(l+m) R, approximating the stage map b^l x / (1 + (u/a) x) with
/// error of order b^-m.
pub fn word_scale_stage<T: FloatCoeff>(l: i64, m: u32, sys: &GeneratorSystem<T>) -> Result<Word> {
    let roles = sys.roles()?;
    let n = l + i64::from(m);
    if n < 0 {
        return Err(Error::Domain(format!(
            "stage needs l + m >= 0, got l = {l}, m = {m}"
        )));
    }
    if n > u32::MAX as i64 / roles.step as i64 {
        return Err(Error::BudgetExceeded("stage exponent overflow".into()));
    }
    let mut w = Word::empty();
    w.push(roles.s_sym.clone(), m * roles.step);
    w.push(roles.r_sym.clone(), 1);
    if n > 0 {
        w.push(roles.s_sym.clone(), n as u32 * roles.step);
    }
    w.push(roles.r_sym.clone(), 1);
    Ok(w)
}

/// Stage word followed by an S-trail: approximates the pure scaling
/// b^alpha x with error O(b^(alpha - l)) + O(b^-m). Requires l >= alpha.
pub fn word_power<T: FloatCoeff>(
    alpha: i64,
    l: i64,
    m: u32,
    sys: &GeneratorSystem<T>,
) -> Result<Word> {
    let roles = sys.roles()?;
    if l < alpha {
        return Err(Error::Domain(format!(
            "power stage needs l >= alpha, got l = {l}, alpha = {alpha}"
        )));
    }
    if l - alpha > u32::MAX as i64 / roles.step as i64 {
        return Err(Error::BudgetExceeded("power trail overflow".into()));
    }
    let mut w = word_scale_stage(l, m, sys)?;
    w.push(roles.s_sym.clone(), (l - alpha) as u32 * roles.step);
    Ok(w)
}

/// Scaling word for b^alpha at uniform depth. The stage depth grows with
/// -alpha so the additive b^-m truncation terms stay a factor b^-d below
/// the scale of the target coefficients.
pub(crate) fn scaling_word<T: FloatCoeff>(
    alpha: i64,
    depth: u32,
    sys: &GeneratorSystem<T>,
) -> Result<Word> {
    let d = i64::from(depth.max(1));
    let l = alpha + d;
    let m = (d + (-alpha).max(0)).max(1) as u32;
    word_power(alpha, l, m, sys)
}

/// The T_s coefficient matrix [[1, 0], [s, 1]] as a projective map.
pub(crate) fn t_map<T: FloatCoeff>(s: T) -> ProjectiveMap<T> {
    ProjectiveMap::from_rep(normalize_rep(&Mat2::new(T::one(), T::zero(), s, T::one())))
}

/// Build the inductive ladder word realizing
/// x / ((b^a1 + ... + b^ak)(u/a) x + 1) at the given uniform depth.
pub(crate) fn ladder_word<T: FloatCoeff>(
    exponents: &[i64],
    depth: u32,
    sys: &GeneratorSystem<T>,
) -> Result<Word> {
    if exponents.is_empty() {
        return Ok(Word::empty());
    }
    let d = i64::from(depth.max(1));
    let first = exponents[0];
    let mut w = scaling_word(first, depth, sys)?;
    let mut prev = first;
    for j in 1..=exponents.len() {
        let next = if j < exponents.len() { exponents[j] } else { 0 };
        let l = next - prev;
        // The stage truncation terms b^-m enter the running state next to
        // coefficients of scale b^prev and b^next, so the depth grows with
        // the most negative exponent in play to keep the relative stage
        // error at b^-d throughout.
        let m = (d + (-prev).max(0).max(-next)).max(1) as u32;
        let stage = word_scale_stage(l, m, sys)?;
        w = stage.concat(&w);
        prev = next;
    }
    Ok(w)
}

/// Word approximating T_s(x) = x/(sx + 1) to the requested tolerance via
/// the greedy expansion of s a / u in the system base. s = 0 yields the
/// empty word; depths double until the measured error passes.
pub fn word_t<T: FloatCoeff>(
    s: T,
    eps: f64,
    sys: &GeneratorSystem<T>,
    budget: &SynthesisBudget,
) -> Result<Word> {
    let roles = sys.roles()?.clone();
    if T::FIELD == FieldKind::Real && s.spectral_scalar() < 0.0 {
        return Err(Error::Domain("real T_s requires s >= 0".into()));
    }
    if s.is_zero_val() {
        return Ok(Word::empty());
    }
    let target = t_map(s);
    let t_val = s * roles.a / roles.u;
    let scale = t_val.modulus();
    let a_over_u = (roles.a / roles.u).modulus();
    let mut depth = 4u32;
    loop {
        let eps_exp = (eps * a_over_u / 4.0)
            .min(scale * 0.5f64.powi(depth as i32))
            .max(scale * 1e-16)
            .max(1e-290);
        let expansion = match T::FIELD {
            FieldKind::Real => greedy_expand_real(
                t_val.as_c64().re,
                roles.b.as_c64().re,
                eps_exp,
                budget.max_terms,
            )?,
            FieldKind::Complex => {
                greedy_expand_complex(t_val.as_c64(), roles.b.as_c64(), eps_exp, budget.max_terms)?
            }
        };
        let mut exps = expansion.exponents;
        exps.sort_unstable_by(|x, y| y.cmp(x));
        let w = ladder_word(&exps, depth, sys)?;
        let e = evaluate(&w, sys)?;
        if proj_distance(&e.projective, &target) <= eps {
            return Ok(w);
        }
        if depth >= budget.max_depth {
            return Err(Error::BudgetExceeded(format!(
                "T_s ladder depth cap {} reached for eps {eps:.3e}",
                budget.max_depth
            )));
        }
        depth = (depth * 2).min(budget.max_depth);
    }
}

/// Parameters of the target (alpha x + beta)/(gamma x + 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FTriple<T> {
    pub alpha: T,
    pub beta: T,
    pub gamma: T,
}

impl<T: FloatCoeff> FTriple<T> {
    pub fn new(alpha: T, beta: T, gamma: T) -> Self {
        FTriple { alpha, beta, gamma }
    }

    pub fn d(&self) -> T {
        self.alpha - self.beta * self.gamma
    }

    pub(crate) fn target(&self) -> ProjectiveMap<T> {
        ProjectiveMap::from_rep(normalize_rep(&Mat2::new(
            self.alpha,
            self.beta,
            self.gamma,
            T::one(),
        )))
    }

    fn scale(&self) -> f64 {
        self.alpha
            .modulus()
            .max(self.beta.modulus())
            .max(self.gamma.modulus())
            .max(1.0)
    }

    /// Constraint check for the real construction: alpha, beta, gamma >= 0
    /// and 0 <= alpha - beta gamma <= min(1, alpha^2).
    fn validate_real(&self) -> Result<()> {
        let slack = 1e-11 * self.scale().powi(2);
        let (a, b, g) = (
            self.alpha.spectral_scalar(),
            self.beta.spectral_scalar(),
            self.gamma.spectral_scalar(),
        );
        if a < -slack || b < -slack || g < -slack {
            return Err(Error::Domain(
                "triple must have nonnegative components".into(),
            ));
        }
        let d = self.d().spectral_scalar();
        if d < -slack {
            return Err(Error::Domain(format!(
                "constraint 0 <= alpha - beta gamma violated (d = {d:.3e})"
            )));
        }
        let cap = 1f64.min(a * a);
        if d > cap + slack {
            return Err(Error::Domain(format!(
                "constraint alpha - beta gamma <= min(1, alpha^2) violated (d = {d:.3e}, cap = {cap:.3e})"
            )));
        }
        Ok(())
    }
}

fn sqrt_coeff<T: FloatCoeff>(x: T) -> T {
    T::from_c64(x.as_c64().sqrt())
}

/// One fixed-depth attempt at the five-factor composite
/// T_u I T_{v/a} I T_w; exposed for the best-effort synthesizer.
pub(crate) fn word_f_attempt<T: FloatCoeff>(
    u: T,
    v: T,
    w: T,
    stage_tol: f64,
    m_inv: u32,
    sys: &GeneratorSystem<T>,
    budget: &SynthesisBudget,
) -> Result<Word> {
    let roles = sys.roles()?.clone();
    let w_u = word_t(u, stage_tol, sys, budget)?;
    let w_mid = word_t(v / roles.a, stage_tol, sys, budget)?;
    let w_w = word_t(w, stage_tol, sys, budget)?;
    let inv = word_inversion(m_inv, sys)?;
    Ok(w_u.concat(&inv).concat(&w_mid).concat(&inv).concat(&w_w))
}

/// The Eq-style parameters (u, v, w) for a triple with d = alpha - beta gamma:
/// u = (1 - sqrt d)/beta, v = beta/sqrt d, w = (alpha - sqrt d)/beta.
pub(crate) fn f_parameters<T: FloatCoeff>(t: &FTriple<T>) -> (T, T, T) {
    let sq = sqrt_coeff(t.d());
    let mut u = (T::one() - sq) / t.beta;
    let v = t.beta / sq;
    let mut w = (t.alpha - sq) / t.beta;
    if T::FIELD == FieldKind::Real {
        // Boundary values d = 1 or d = alpha^2 give exact zeros; clamp the
        // float noise so the nonnegative precondition of word_t holds.
        if u.spectral_scalar() < 0.0 && u.modulus() < 1e-9 * t.scale() {
            u = T::zero();
        }
        if w.spectral_scalar() < 0.0 && w.modulus() < 1e-9 * t.scale() {
            w = T::zero();
        }
    }
    (u, v, w)
}

/// Word approximating F(alpha, beta, gamma) = (alpha x + beta)/(gamma x + 1)
/// via the composite T_u I T_{v/a} I T_w with per-stage tolerances summing
/// below eps. Boundary triples (beta = 0 or d = 0) are replaced by an
/// admissible triple within eps/2 and synthesized to eps/2.
pub fn word_f<T: FloatCoeff>(
    t: &FTriple<T>,
    eps: f64,
    sys: &GeneratorSystem<T>,
    budget: &SynthesisBudget,
) -> Result<Word> {
    word_f_inner(t, eps, sys, budget, true)
}

fn word_f_inner<T: FloatCoeff>(
    t: &FTriple<T>,
    eps: f64,
    sys: &GeneratorSystem<T>,
    budget: &SynthesisBudget,
    allow_perturb: bool,
) -> Result<Word> {
    if T::FIELD == FieldKind::Real {
        t.validate_real()?;
    }
    let target = t.target();
    let scale = t.scale();
    let beta_zero = t.beta.modulus() <= 1e-13 * scale;
    let d_zero = t.d().modulus() <= 1e-13 * scale * scale;

    if beta_zero && T::FIELD == FieldKind::Real {
        // Admissible real triples with beta = 0 force alpha = 1: the target
        // is T_gamma itself.
        let w = word_t(t.gamma, eps * 0.9, sys, budget)?;
        let e = evaluate(&w, sys)?;
        if proj_distance(&e.projective, &target) <= eps {
            return Ok(w);
        }
        return Err(Error::Domain(
            "beta = 0 with alpha away from 1 is outside the construction".into(),
        ));
    }

    if beta_zero || d_zero {
        if !allow_perturb {
            return Err(Error::Domain("degenerate triple after perturbation".into()));
        }
        let perturbed = perturb_triple(t, eps, beta_zero)?;
        let w = word_f_inner(&perturbed, eps * 0.5, sys, budget, false)?;
        let e = evaluate(&w, sys)?;
        let err = proj_distance(&e.projective, &target);
        if err <= eps {
            return Ok(w);
        }
        return Err(Error::BudgetExceeded(format!(
            "perturbed synthesis landed at {err:.3e} > {eps:.3e}"
        )));
    }

    let (u, v, w_par) = f_parameters(t);
    let b_mod = sys.roles()?.b.modulus();
    let c_est = 16.0 * (1.0 + sys.roles()?.a.modulus()) * (1.0 + sys.roles()?.u.modulus());
    for attempt in 0..12u32 {
        let stage_tol = eps / 5.0 * 0.5f64.powi(attempt as i32);
        let m_inv = (((c_est / stage_tol).ln() / b_mod.ln()).ceil() as i64)
            .clamp(2, 4 * i64::from(budget.max_depth)) as u32
            + 2 * attempt;
        let word = word_f_attempt(u, v, w_par, stage_tol, m_inv, sys, budget)?;
        let e = evaluate(&word, sys)?;
        if proj_distance(&e.projective, &target) <= eps {
            return Ok(word);
        }
    }
    Err(Error::BudgetExceeded(format!(
        "composite stage refinement exhausted for eps {eps:.3e}"
    )))
}

/// Replace a boundary triple by an admissible one within eps/2 in the
/// projective metric.
fn perturb_triple<T: FloatCoeff>(t: &FTriple<T>, eps: f64, beta_zero: bool) -> Result<FTriple<T>> {
    let target = t.target();
    let scale = t.scale();
    let mut delta = (eps / 4.0).min(0.25);
    for _ in 0..60 {
        let cand = if beta_zero {
            FTriple::new(t.alpha, T::from_f64(delta * scale), t.gamma)
        } else {
            // d = 0: push alpha up, d becomes delta * alpha.
            FTriple::new(t.alpha * T::from_f64(1.0 + delta), t.beta, t.gamma)
        };
        let admissible = T::FIELD != FieldKind::Real || cand.validate_real().is_ok();
        if admissible
            && cand.beta.modulus() > 1e-13 * scale
            && cand.d().modulus() > 1e-13 * scale * scale
            && proj_distance(&cand.target(), &target) <= eps / 2.0
        {
            return Ok(cand);
        }
        delta *= 0.25;
        if delta < 1e-120 {
            break;
        }
    }
    Err(Error::Domain(
        "boundary triple not reachable by admissible perturbation".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mat2::canonicalize;
    use crate::systems;
    use num_complex::Complex64;

    fn lft2() -> GeneratorSystem<f64> {
        systems::lft2(1.0, 2.0).unwrap()
    }

    fn dist_to(word: &Word, sys: &GeneratorSystem<f64>, m: Mat2<f64>) -> f64 {
        let e = evaluate(word, sys).unwrap();
        proj_distance(&e.projective, &canonicalize(&m).unwrap())
    }

    #[test]
    fn inversion_examples() {
        let sys = lft2();
        // m = 1 gives 1/b + a/x exactly: ((1/b) x + a) / x.
        let w = word_inversion(1, &sys).unwrap();
        assert_eq!(dist_to(&w, &sys, Mat2::new(0.5, 1.0, 1.0, 0.0)), 0.0);

        // m = 20 is within 2^-19 of a/x, and deeper is strictly better.
        let target = Mat2::new(0.0, 1.0, 1.0, 0.0);
        let d20 = dist_to(&word_inversion(20, &sys).unwrap(), &sys, target);
        assert!(d20 < 2f64.powi(-19));
        let mut prev = f64::INFINITY;
        for m in 1..=12 {
            let d = dist_to(&word_inversion(m, &sys).unwrap(), &sys, target);
            assert!(d < prev, "m = {m}");
            prev = d;
        }
    }

    #[test]
    fn scale_stage_examples() {
        let sys = lft2();
        // n = l + m = 0: S^m R R with exact value b^-m (a + x + a x)/(x + a).
        let w = word_scale_stage(-8, 8, &sys).unwrap();
        assert_eq!(w.to_string(), "S^8 R^2");
        let exact = Mat2::new(1.0 + 1.0, 1.0, 2f64.powi(8), 2f64.powi(8));
        assert!(dist_to(&w, &sys, exact) < 1e-14);

        // l = 3, m = 30: within 1e-8 of 8x/(1+x) = 8x a/(x + a), a = 1.
        let w = word_scale_stage(3, 30, &sys).unwrap();
        assert!(dist_to(&w, &sys, Mat2::new(8.0, 0.0, 1.0, 1.0)) < 1e-8);

        assert!(word_scale_stage(-9, 8, &sys).is_err());
    }

    #[test]
    fn power_examples() {
        let sys = lft2();
        // alpha = 0, l = m = 25: near the identity.
        let w = word_power(0, 25, 25, &sys).unwrap();
        assert!(dist_to(&w, &sys, Mat2::identity()) < 1e-6);

        // alpha = -5: x/32.
        let w = word_power(-5, 20, 25, &sys).unwrap();
        assert!(dist_to(&w, &sys, Mat2::new(1.0, 0.0, 0.0, 32.0)) < 1e-5);

        // alpha = l: degenerate trail, word is the bare stage.
        let w = word_power(7, 7, 9, &sys).unwrap();
        assert_eq!(w, word_scale_stage(7, 9, &sys).unwrap());

        assert!(word_power(8, 7, 9, &sys).is_err());
    }

    #[test]
    fn t_words_real() {
        let sys = lft2();
        let budget = SynthesisBudget::default();
        assert!(word_t(0.0, 1e-9, &sys, &budget).unwrap().is_empty());

        let w = word_t(2.0, 1e-6, &sys, &budget).unwrap();
        assert!(dist_to(&w, &sys, Mat2::new(1.0, 0.0, 2.0, 1.0)) <= 1e-6);

        assert!(word_t(-0.5, 1e-6, &sys, &budget).is_err());
    }

    #[test]
    fn t_words_complex() {
        // Complex ladder over the two-generator pair with r = 2.
        let sys = systems::lft2_complex(
            Complex64::new(1.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 2.0),
        )
        .unwrap();
        let budget = SynthesisBudget::default();
        let s = Complex64::new(0.0, 1.0);
        let w = word_t(s, 1e-5, &sys, &budget).unwrap();
        let e = evaluate(&w, &sys).unwrap();
        assert!(proj_distance(&e.projective, &t_map(s)) <= 1e-5);
    }

    #[test]
    fn f_words() {
        let sys = lft2();
        let budget = SynthesisBudget::default();

        // Identity as the boundary triple (1, 0, 0).
        let w = word_f(&FTriple::new(1.0, 0.0, 0.0), 1e-4, &sys, &budget).unwrap();
        let e = evaluate(&w, &sys).unwrap();
        assert!(proj_distance(&e.projective, &ProjectiveMap::identity()) <= 1e-4);

        // Interior admissible triple.
        let t = FTriple::new(0.8, 0.5, 1.0);
        let w = word_f(&t, 1e-5, &sys, &budget).unwrap();
        assert!(dist_to(&w, &sys, Mat2::new(0.8, 0.5, 1.0, 1.0)) <= 1e-5);

        // d = 1.5 > 1 violates the constraint.
        assert!(matches!(
            word_f(&FTriple::new(2.0, 1.0, 0.5), 1e-4, &sys, &budget),
            Err(Error::Domain(_))
        ));
    }
}
