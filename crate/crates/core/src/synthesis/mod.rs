//! Constructive synthesis: generator words approximating target
//! transformations and matrices, with adaptive truncation depths and
//! self-certifying reports.

pub(crate) mod ladder;
mod matrix;
mod params;

pub use ladder::{word_f, word_inversion, word_power, word_scale_stage, word_t, FTriple};
pub use matrix::{
    word_matrix_complex, word_matrix_nonneg, word_matrix_real, word_scalar_matrix,
    word_scalar_matrix_complex,
};
pub use params::{exc2_params, Exc2Params};

use crate::diophantine::{solve_ratio_log, RatioBounds};
use crate::error::{Error, Result};
use crate::mat2::{normalize_rep, proj_distance, Mat2, ProjectiveMap};
use crate::orbits::in_u;
use crate::scalar::{Coeff, FloatCoeff};
use crate::words::{evaluate, EvaluatedWord, GeneratorSystem, Word};
use num_complex::Complex64;
use std::collections::BTreeMap;
use std::time::{Duration, Instant};

/// Search and depth caps shared by the synthesis operations; the seed feeds
/// the randomized factorization fallback.
#[derive(Debug, Clone, Copy)]
pub struct SynthesisBudget {
    /// Cap on the doubling ladder depth.
    pub max_depth: u32,
    /// Cap on greedy expansion terms.
    pub max_terms: u32,
    /// Bounds for the (k, l) ratio search.
    pub ratio_bounds: RatioBounds,
    /// Bound on n for the simultaneous approximation search.
    pub simul_bound: i64,
    pub seed: u64,
}

impl Default for SynthesisBudget {
    fn default() -> Self {
        SynthesisBudget {
            max_depth: 64,
            max_terms: 600,
            ratio_bounds: RatioBounds::default(),
            simul_bound: 60_000_000,
            seed: 0,
        }
    }
}

/// What a synthesis run was aiming at.
#[derive(Debug, Clone)]
pub enum TargetKind<T> {
    Projective(ProjectiveMap<T>),
    Matrix(Mat2<T>),
}

/// Result of a synthesis run. Re-evaluating `word` over the same system
/// reproduces `achieved` exactly; `error` is the measured distance to the
/// target (projective metric or relative Frobenius per target kind).
#[derive(Debug, Clone)]
pub struct ApproxReport<T> {
    pub word: Word,
    pub achieved: EvaluatedWord<T>,
    pub target: TargetKind<T>,
    pub error: f64,
    pub depths: BTreeMap<String, i64>,
    pub elapsed: Duration,
}

/// Single-letter (or empty) word matching the target exactly, if any.
fn exact_projective_match<T: FloatCoeff>(
    target: &ProjectiveMap<T>,
    sys: &GeneratorSystem<T>,
) -> Option<Word> {
    if proj_distance(target, &ProjectiveMap::identity()) == 0.0 {
        return Some(Word::empty());
    }
    for sym in sys.symbols() {
        let m = sys.matrix(sym).ok()?;
        let p = ProjectiveMap::from_rep(normalize_rep(m));
        if proj_distance(target, &p) == 0.0 {
            return Some(Word::from_letters([(sym.to_string(), 1u32)]));
        }
    }
    None
}

/// delta-normalized coefficients (alpha, beta, gamma) of a canonical
/// representative, or None when the delta entry vanishes.
fn delta_coeffs<T: FloatCoeff>(rep: &Mat2<T>) -> Option<(T, T, T)> {
    if rep.m22.modulus() <= 1e-250 * rep.fro_norm() {
        return None;
    }
    Some((rep.m11 / rep.m22, rep.m12 / rep.m22, rep.m21 / rep.m22))
}

/// Approximate a real projective target over a ladder system. Over a
/// two-generator system only closure members are reachable and membership
/// is checked first; with a third scaling generator every invertible
/// nonnegative-coefficient target is admissible. Negative-determinant
/// targets route through composition with the inversion.
pub fn word_lft(
    target: &ProjectiveMap<f64>,
    eps: f64,
    sys: &GeneratorSystem<f64>,
    budget: &SynthesisBudget,
) -> Result<ApproxReport<f64>> {
    let start = Instant::now();
    let mut depths = BTreeMap::new();
    let word = lft_real_word(target, eps, sys, budget, &mut depths)?;
    finish_projective(word, target, sys, start, depths)
}

fn finish_projective<T: FloatCoeff>(
    word: Word,
    target: &ProjectiveMap<T>,
    sys: &GeneratorSystem<T>,
    start: Instant,
    depths: BTreeMap<String, i64>,
) -> Result<ApproxReport<T>> {
    let achieved = evaluate(&word, sys)?;
    let error = proj_distance(&achieved.projective, target);
    Ok(ApproxReport {
        word,
        achieved,
        target: TargetKind::Projective(*target),
        error,
        depths,
        elapsed: start.elapsed(),
    })
}

fn lft_real_word(
    target: &ProjectiveMap<f64>,
    eps: f64,
    sys: &GeneratorSystem<f64>,
    budget: &SynthesisBudget,
    depths: &mut BTreeMap<String, i64>,
) -> Result<Word> {
    if let Some(w) = exact_projective_match(target, sys) {
        return Ok(w);
    }
    let roles = sys.roles()?.clone();
    let rep = *target.rep();
    let scale = rep.fro_norm();
    if rep.entries().iter().any(|e| *e < -1e-9 * scale) {
        return Err(Error::Domain(
            "real synthesis needs nonnegative coefficients".into(),
        ));
    }

    let mirror_needed = match delta_coeffs(&rep) {
        None => true,
        Some(_) => rep.det() < 0.0,
    };
    if mirror_needed {
        // target = G o I with G = target o I (I is an involution); G has
        // positive determinant and a nonzero delta entry.
        let inv_mat = Mat2::new(0.0, roles.a, 1.0, 0.0);
        let g = ProjectiveMap::from_rep(normalize_rep(&rep.mul(&inv_mat)));
        if delta_coeffs(g.rep()).is_none() || g.rep().det() < 0.0 {
            let d = target.spectral_data();
            return Err(Error::NegativeDet(d.det_norm));
        }
        for attempt in 0..8u32 {
            let part = eps * 0.4 * 0.5f64.powi(attempt as i32);
            let w_g = lft_real_word(&g, part, sys, budget, depths)?;
            let m_inv = inversion_depth(roles.b, part) + 2 * attempt;
            let w = w_g.concat(&word_inversion(m_inv, sys)?);
            let e = evaluate(&w, sys)?;
            if proj_distance(&e.projective, target) <= eps {
                depths.insert("mirror_inversion_m".into(), i64::from(m_inv));
                return Ok(w);
            }
        }
        return Err(Error::BudgetExceeded(
            "inversion-mirror refinement exhausted".into(),
        ));
    }

    let (alpha, beta, gamma) = delta_coeffs(&rep).expect("mirror handled above");
    let clamp = |x: f64| if x < 0.0 { 0.0 } else { x };
    let (alpha, beta, gamma) = (clamp(alpha), clamp(beta), clamp(gamma));
    let beta_zero = beta <= 1e-13 * scale;
    let gamma_zero = gamma <= 1e-13 * scale;

    if beta_zero && gamma_zero {
        return scaling_synthesis(alpha, target, eps, sys, budget, depths);
    }
    if beta_zero {
        // alpha T_gamma: scaling composed with a T word.
        return compose_with_scaling(
            alpha,
            |part| word_t(gamma, part, sys, budget),
            target,
            eps,
            sys,
            budget,
            depths,
        );
    }
    if gamma_zero {
        // alpha (x + beta/alpha): scaling composed with a translation.
        if alpha <= 1e-13 {
            return Err(Error::Domain("degenerate target (alpha = 0)".into()));
        }
        return compose_with_scaling(
            alpha,
            |part| word_f(&FTriple::new(1.0, beta / alpha, 0.0), part, sys, budget),
            target,
            eps,
            sys,
            budget,
            depths,
        );
    }

    // f in U_k synthesizes over the two-generator subsystem directly.
    if let Ok(verdict) = in_u(target, roles.b, 256) {
        if verdict.in_closure {
            let k = verdict.witness_k.expect("witness accompanies membership");
            depths.insert("witness_k".into(), k);
            return u_member_synthesis(alpha, beta, gamma, k, target, eps, sys, budget, depths);
        }
        if roles.c.is_none() {
            return Err(Error::NotInDomain(format!(
                "target outside the closure (margin {:.3e}) and no scaling generator available",
                verdict.margin
            )));
        }
    } else if roles.c.is_none() {
        return Err(Error::NotInDomain(
            "membership undecidable over the two-generator system".into(),
        ));
    }

    theorem2_synthesis(alpha, beta, gamma, target, eps, sys, budget, depths)
}

fn inversion_depth(b: f64, tol: f64) -> u32 {
    (((64.0 / tol).ln() / b.ln()).ceil() as i64).clamp(2, 4096) as u32
}

/// Realize a pure scaling alpha x: over a three-generator system via the
/// ratio search b^k c^-l -> alpha; over two generators only integer powers
/// of b are reachable.
fn scaling_synthesis(
    alpha: f64,
    target: &ProjectiveMap<f64>,
    eps: f64,
    sys: &GeneratorSystem<f64>,
    budget: &SynthesisBudget,
    depths: &mut BTreeMap<String, i64>,
) -> Result<Word> {
    if alpha <= 0.0 {
        return Err(Error::Domain("scaling target must be positive".into()));
    }
    let roles = sys.roles()?.clone();
    let ln_b = roles.b.ln();
    match roles.c {
        None => {
            let k = (alpha.ln() / ln_b).round() as i64;
            for attempt in 0..6u32 {
                let depth = (8 << attempt).min(budget.max_depth * 4);
                let w = ladder::scaling_word(k, depth, sys)?;
                let e = evaluate(&w, sys)?;
                if proj_distance(&e.projective, target) <= eps {
                    depths.insert("power_k".into(), k);
                    depths.insert("depth".into(), i64::from(depth));
                    return Ok(w);
                }
            }
            Err(Error::NotInDomain(format!(
                "scaling {alpha} is not an integer power of b = {}",
                roles.b
            )))
        }
        Some(c_role) => {
            for attempt in 0..8u32 {
                let tol = eps * 0.2 * 0.5f64.powi(attempt as i32);
                let max_exp = u32::MAX as i64 / i64::from(roles.step);
                let sol = solve_ratio_log(
                    alpha.ln(),
                    roles.b,
                    c_role,
                    tol,
                    budget.ratio_bounds,
                    |k, l| l <= max_exp && k.abs() <= max_exp,
                )?;
                depths.insert("ratio_k".into(), sol.k);
                depths.insert("ratio_l".into(), sol.l);
                let depth = (8 << attempt).min(budget.max_depth * 4);
                let mut w = ladder::scaling_word(sol.k, depth, sys)?;
                w.push(
                    roles.c_sym.clone().expect("c role present"),
                    sol.l as u32 * roles.step,
                );
                let e = evaluate(&w, sys)?;
                if proj_distance(&e.projective, target) <= eps {
                    depths.insert("depth".into(), i64::from(depth));
                    return Ok(w);
                }
            }
            Err(Error::BudgetExceeded("scaling refinement exhausted".into()))
        }
    }
}

/// target = Scale_alpha o inner; synthesize both parts and refine until the
/// measured composite error passes.
fn compose_with_scaling(
    alpha: f64,
    inner: impl Fn(f64) -> Result<Word>,
    target: &ProjectiveMap<f64>,
    eps: f64,
    sys: &GeneratorSystem<f64>,
    budget: &SynthesisBudget,
    depths: &mut BTreeMap<String, i64>,
) -> Result<Word> {
    let scaling_target = ProjectiveMap::from_rep(normalize_rep(&Mat2::new(alpha, 0.0, 0.0, 1.0)));
    for attempt in 0..8u32 {
        let part = eps * 0.4 * 0.5f64.powi(attempt as i32);
        let w_inner = inner(part)?;
        let w_scale = scaling_synthesis(alpha, &scaling_target, part, sys, budget, depths)?;
        let w = w_scale.concat(&w_inner);
        let e = evaluate(&w, sys)?;
        if proj_distance(&e.projective, target) <= eps {
            return Ok(w);
        }
    }
    Err(Error::BudgetExceeded(
        "scaled composite refinement exhausted".into(),
    ))
}

/// Synthesis of a member of the stratum with witness k: shift to the
/// admissible set by b^-k, build the composite there, and prepend the
/// scaling word.
#[allow(clippy::too_many_arguments)]
fn u_member_synthesis(
    alpha: f64,
    beta: f64,
    gamma: f64,
    k: i64,
    target: &ProjectiveMap<f64>,
    eps: f64,
    sys: &GeneratorSystem<f64>,
    budget: &SynthesisBudget,
    depths: &mut BTreeMap<String, i64>,
) -> Result<Word> {
    let roles = sys.roles()?.clone();
    let shift = (-(k as f64) * roles.b.ln()).exp();
    let triple = FTriple::new(alpha * shift, beta * shift, gamma);
    for attempt in 0..8u32 {
        let part = eps * 0.4 * 0.5f64.powi(attempt as i32);
        let w_f = word_f(&triple, part, sys, budget)?;
        let depth = (8 << attempt).min(budget.max_depth * 4);
        let w_scale = ladder::scaling_word(k, depth, sys)?;
        let w = w_scale.concat(&w_f);
        let e = evaluate(&w, sys)?;
        if proj_distance(&e.projective, target) <= eps {
            depths.insert("depth".into(), i64::from(depth));
            return Ok(w);
        }
    }
    Err(Error::BudgetExceeded(
        "stratum-member refinement exhausted".into(),
    ))
}

/// The three-generator route: find (k, l) with b^k c^-l near alpha such that
/// the c^l-scaled triple satisfies the stratum inequality with 10% of its
/// margin to spare, then emit C^l . Scale_{b^k} . composite.
#[allow(clippy::too_many_arguments)]
fn theorem2_synthesis(
    alpha: f64,
    beta: f64,
    gamma: f64,
    target: &ProjectiveMap<f64>,
    eps: f64,
    sys: &GeneratorSystem<f64>,
    budget: &SynthesisBudget,
    depths: &mut BTreeMap<String, i64>,
) -> Result<Word> {
    let roles = sys.roles()?.clone();
    let c_role = roles.c.expect("caller checked the scaling generator");
    let c_sym = roles.c_sym.clone().expect("c role present");
    let d = alpha - beta * gamma;
    if d <= 0.0 {
        return Err(Error::Domain("positive determinant required here".into()));
    }
    let rho = d / alpha;
    debug_assert!(rho < 1.0, "beta gamma > 0 here");
    let headroom = (1.0 - 0.1 * (1.0 - rho)).ln();
    let ln_b = roles.b.ln();
    let ln_c = c_role.ln();
    let hook = |k: i64, l: i64| -> bool {
        let lc = l as f64 * ln_c;
        if lc.abs() > 500.0 || (k as f64 * ln_b).abs() > 500.0 {
            return false;
        }
        let ln_scaled_d = lc + d.ln();
        let b1 = k as f64 * ln_b;
        let b2 = -(k as f64) * ln_b + 2.0 * (lc + alpha.ln());
        ln_scaled_d <= b1.min(b2) + headroom
    };
    let tol = (0.45 * (1.0 - rho) / rho).min(0.4);
    let sol = solve_ratio_log(alpha.ln(), roles.b, c_role, tol, budget.ratio_bounds, hook)?;
    depths.insert("ratio_k".into(), sol.k);
    depths.insert("ratio_l".into(), sol.l);
    let c_pow = (sol.l as f64 * ln_c).exp();
    let shift = (-(sol.k as f64) * ln_b).exp();
    let triple = FTriple::new(alpha * c_pow * shift, beta * c_pow * shift, gamma);
    for attempt in 0..8u32 {
        let part = eps * 0.4 * 0.5f64.powi(attempt as i32);
        let w_f = word_f(&triple, part, sys, budget)?;
        let depth = (8 << attempt).min(budget.max_depth * 4);
        let w_scale = ladder::scaling_word(sol.k, depth, sys)?;
        let mut w = Word::from_letters([(c_sym.clone(), sol.l as u32 * roles.step)]);
        w = w.concat(&w_scale).concat(&w_f);
        let e = evaluate(&w, sys)?;
        if proj_distance(&e.projective, target) <= eps {
            depths.insert("depth".into(), i64::from(depth));
            return Ok(w);
        }
    }
    Err(Error::BudgetExceeded(
        "three-generator refinement exhausted".into(),
    ))
}

/// Complex projective synthesis: the composite parameters are always
/// solvable (after boundary perturbation), no ratio search is needed.
pub(crate) fn lft_complex_word(
    target: &ProjectiveMap<Complex64>,
    eps: f64,
    sys: &GeneratorSystem<Complex64>,
    budget: &SynthesisBudget,
) -> Result<Word> {
    if let Some(w) = exact_projective_match(target, sys) {
        return Ok(w);
    }
    let roles = sys.roles()?.clone();
    let rep = *target.rep();
    match delta_coeffs(&rep) {
        Some((alpha, beta, gamma)) => {
            let w = word_f(&FTriple::new(alpha, beta, gamma), eps, sys, budget)?;
            Ok(w)
        }
        None => {
            // delta = 0: synthesize target o I and append the inversion.
            let inv_mat = Mat2::new(Complex64::ZERO, roles.a, Complex64::ONE, Complex64::ZERO);
            let g = ProjectiveMap::from_rep(normalize_rep(&rep.mul(&inv_mat)));
            let (alpha, beta, gamma) =
                delta_coeffs(g.rep()).ok_or_else(|| Error::Domain("degenerate target".into()))?;
            for attempt in 0..8u32 {
                let part = eps * 0.4 * 0.5f64.powi(attempt as i32);
                let w_g = word_f(&FTriple::new(alpha, beta, gamma), part, sys, budget)?;
                let m_inv = inversion_depth(roles.b.modulus(), part) + 2 * attempt;
                let w = w_g.concat(&word_inversion(m_inv, sys)?);
                let e = evaluate(&w, sys)?;
                if proj_distance(&e.projective, target) <= eps {
                    return Ok(w);
                }
            }
            Err(Error::BudgetExceeded(
                "complex inversion-mirror refinement exhausted".into(),
            ))
        }
    }
}

/// Complex counterpart of [`word_lft`].
pub fn word_lft_complex(
    target: &ProjectiveMap<Complex64>,
    eps: f64,
    sys: &GeneratorSystem<Complex64>,
    budget: &SynthesisBudget,
) -> Result<ApproxReport<Complex64>> {
    let start = Instant::now();
    let depths = BTreeMap::new();
    let word = lft_complex_word(target, eps, sys, budget)?;
    finish_projective(word, target, sys, start, depths)
}

/// Fixed-depth best-effort synthesis toward an arbitrary positive-sector
/// target: the nearest stratum member is synthesized at the given depth and
/// the distance to the original target reported. Used to demonstrate that
/// rejected targets stay bounded away from the semigroup.
pub fn word_lft_best_effort(
    target: &ProjectiveMap<f64>,
    depth: u32,
    sys: &GeneratorSystem<f64>,
    budget: &SynthesisBudget,
) -> Result<(Word, f64)> {
    let roles = sys.roles()?.clone();
    let rep = *target.rep();
    let (alpha, beta, gamma) =
        delta_coeffs(&rep).ok_or_else(|| Error::NotInDomain("delta entry is zero".into()))?;
    if beta <= 0.0 {
        return Err(Error::Domain("best-effort path expects beta > 0".into()));
    }
    // Nearest admissible k from the closed-form interval.
    let verdict = in_u(target, roles.b, 256)?;
    let k = verdict.witness_k.unwrap_or_else(|| {
        let s = target.spectral_data();
        (s.det_norm.ln() / roles.b.ln()).round() as i64
    });
    let shift = (-(k as f64) * roles.b.ln()).exp();
    let (sa, sb, sg) = (alpha * shift, beta * shift, gamma);
    // Clamp into the admissible set by raising gamma if needed.
    let cap = 1f64.min(sa * sa);
    let d = sa - sb * sg;
    let sg = if d > cap { (sa - 0.999 * cap) / sb } else { sg };
    let triple = FTriple::new(sa, sb, sg.max(0.0));
    let stage_tol = 2f64.powi(-(depth as i32));
    let (u, v, w_par) = ladder::f_parameters(&triple);
    let w_f = ladder::word_f_attempt(u, v, w_par, stage_tol, depth.max(2), sys, budget)?;
    let w_scale = ladder::scaling_word(k, depth, sys)?;
    let w = w_scale.concat(&w_f);
    let e = evaluate(&w, sys)?;
    let err = proj_distance(&e.projective, target);
    Ok((w, err))
}
