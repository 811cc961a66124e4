//! Kronecker-type approximation solvers: the (k, l) ratio search behind the
//! three-generator density theorem, simultaneous inhomogeneous approximation
//! for the complex scalar construction, and bounded-height rational
//! independence certificates.
//!
//! Solvers are brute-force-first with explicit bounds; every returned
//! solution can be re-verified in exact arithmetic via [`verify_ratio`].

use crate::error::{Error, Result};
use crate::par;
use crate::scalar::rat_from_f64;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

/// Absolute threshold separating float noise from genuine height-bounded
/// integer relations.
pub const TAU_REL: f64 = 1e-9;

/// Integers k, l with b^k c^(-l) within `rel_err` of the target.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct RatioSolution {
    pub k: i64,
    pub l: i64,
    pub achieved: f64,
    pub rel_err: f64,
}

#[derive(Debug, Clone, Copy)]
pub struct RatioBounds {
    pub max_k: i64,
    pub max_l: i64,
}

impl Default for RatioBounds {
    fn default() -> Self {
        RatioBounds {
            max_k: 100_000,
            max_l: 20_000,
        }
    }
}

/// Search for b^k c^(-l) ~ target over l in [1, max_l], k the nearest
/// integer. Returns the smallest-l solution with relative error <= tol.
pub fn solve_ratio(
    target: f64,
    b: f64,
    c: f64,
    tol: f64,
    bounds: RatioBounds,
) -> Result<RatioSolution> {
    if !(target > 0.0) {
        return Err(Error::Domain("ratio target must be positive".into()));
    }
    solve_ratio_log(target.ln(), b, c, tol, bounds, |_, _| true)
}

/// Log-target variant with an acceptance hook; the hook is how callers
/// impose side constraints (positivity of k, closure-membership headroom).
pub fn solve_ratio_log<H>(
    log_target: f64,
    b: f64,
    c: f64,
    tol: f64,
    bounds: RatioBounds,
    hook: H,
) -> Result<RatioSolution>
where
    H: Fn(i64, i64) -> bool + Sync,
{
    if !(b > 1.0) {
        return Err(Error::Domain("ratio base b must exceed 1".into()));
    }
    if !(c > 0.0) || c == 1.0 {
        return Err(Error::Domain(
            "ratio base c must be positive and not 1".into(),
        ));
    }
    let ln_b = b.ln();
    let ln_c = c.ln();
    let hit = |l: i64| -> Option<RatioSolution> {
        let k_real = (log_target + l as f64 * ln_c) / ln_b;
        let k = k_real.round() as i64;
        if k.abs() > bounds.max_k {
            return None;
        }
        let delta = k as f64 * ln_b - l as f64 * ln_c - log_target;
        let rel_err = (delta.exp() - 1.0).abs();
        if rel_err <= tol && hook(k, l) {
            Some(RatioSolution {
                k,
                l,
                achieved: (log_target + delta).exp(),
                rel_err,
            })
        } else {
            None
        }
    };
    par::first_hit(1, bounds.max_l + 1, 512, hit).ok_or_else(|| {
        Error::NotFound(format!(
            "(k <= {}, l <= {}) for ratio target",
            bounds.max_k, bounds.max_l
        ))
    })
}

/// Sequential ratio solver used as the benchmark baseline.
#[doc(hidden)]
pub fn solve_ratio_seq(
    target: f64,
    b: f64,
    c: f64,
    tol: f64,
    bounds: RatioBounds,
) -> Result<RatioSolution> {
    if !(target > 0.0) {
        return Err(Error::Domain("ratio target must be positive".into()));
    }
    let ln_b = b.ln();
    let ln_c = c.ln();
    let log_target = target.ln();
    par::first_hit_seq(1, bounds.max_l + 1, |l| {
        let k = ((log_target + l as f64 * ln_c) / ln_b).round() as i64;
        if k.abs() > bounds.max_k {
            return None;
        }
        let delta = k as f64 * ln_b - l as f64 * ln_c - log_target;
        let rel_err = (delta.exp() - 1.0).abs();
        (rel_err <= tol).then_some(RatioSolution {
            k,
            l,
            achieved: (log_target + delta).exp(),
            rel_err,
        })
    })
    .ok_or_else(|| Error::NotFound("ratio bounds exhausted".into()))
}

/// Exact re-verification of a ratio solution: |b^k c^(-l) - target| / target
/// evaluated in rational arithmetic over the exact dyadic values of b and c.
pub fn verify_ratio(sol: &RatioSolution, target: f64, b: f64, c: f64) -> f64 {
    let pow = |x: f64, e: i64| -> BigRational {
        let base = rat_from_f64(x);
        let p = base.pow(e.unsigned_abs() as u32 as i32);
        if e >= 0 {
            p
        } else {
            p.recip()
        }
    };
    let value = pow(b, sol.k) * pow(c, -sol.l);
    let t = rat_from_f64(target);
    ((value - t.clone()) / t)
        .abs()
        .to_f64()
        .unwrap_or(f64::INFINITY)
}

/// n, m, L satisfying the pair of inhomogeneous Kronecker inequalities
/// |n theta1 - phi1 + L| < eps and |n theta2 - phi2 + m| < eps.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct SimultaneousSolution {
    pub n: i64,
    pub m: i64,
    pub big_l: i64,
    pub err1: f64,
    pub err2: f64,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SimultaneousOpts {
    /// Skip candidates below this n (used to force scale truncation depth).
    pub min_n: i64,
    /// Reject candidates whose m integer part is below 1; the matrix scalar
    /// construction needs positive powers.
    pub require_positive_m: bool,
}

pub fn solve_simultaneous(
    theta1: f64,
    theta2: f64,
    phi1: f64,
    phi2: f64,
    eps: f64,
    bound: i64,
) -> Result<SimultaneousSolution> {
    solve_simultaneous_opts(
        theta1,
        theta2,
        phi1,
        phi2,
        eps,
        bound,
        SimultaneousOpts::default(),
    )
}

pub fn solve_simultaneous_opts(
    theta1: f64,
    theta2: f64,
    phi1: f64,
    phi2: f64,
    eps: f64,
    bound: i64,
    opts: SimultaneousOpts,
) -> Result<SimultaneousSolution> {
    if !(eps > 0.0) {
        return Err(Error::Domain("eps must be positive".into()));
    }
    let lo = opts.min_n.max(1);
    let hit = |n: i64| -> Option<SimultaneousSolution> {
        let r1 = n as f64 * theta1 - phi1;
        let r2 = n as f64 * theta2 - phi2;
        let big_l = -r1.round();
        let m = -r2.round();
        let err1 = (r1 + big_l).abs();
        let err2 = (r2 + m).abs();
        if err1 < eps && err2 < eps && (!opts.require_positive_m || m >= 1.0) {
            Some(SimultaneousSolution {
                n,
                m: m as i64,
                big_l: big_l as i64,
                err1,
                err2,
            })
        } else {
            None
        }
    };
    par::first_hit(lo, bound + 1, 4096, hit)
        .ok_or_else(|| Error::NotFound(format!("n <= {bound} for simultaneous approximation")))
}

/// Verdict of a bounded-height search for an integer relation
/// A + B theta1 + C theta2 = 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum IndependenceVerdict {
    NoRelationUpToHeight,
    RelationFound { a: i64, b: i64, c: i64 },
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct IndependenceCertificate {
    pub theta1: f64,
    pub theta2: f64,
    pub height: i64,
    pub verdict: IndependenceVerdict,
}

/// Exhaustive scan over integer triples of height <= h. For each (B, C) only
/// the nearest integer A can fall within TAU_REL, so the quadratic scan is
/// equivalent to the cubic one. Reports the minimal-height near-relation.
pub fn independence_certificate(
    theta1: f64,
    theta2: f64,
    h: i64,
) -> Result<IndependenceCertificate> {
    if !(1..=10_000).contains(&h) {
        return Err(Error::Domain(format!("height {h} outside guard [1, 10^4]")));
    }
    // Candidates ordered by (height, B, C); the minimum is the verdict.
    let best = par::min_hit(0, h + 1, 64, |bb| {
        let mut local: Option<(i64, i64, i64, i64)> = None;
        let c_range: Vec<i64> = if bb == 0 {
            (1..=h).collect()
        } else {
            (-h..=h).collect()
        };
        for cc in c_range {
            let r = bb as f64 * theta1 + cc as f64 * theta2;
            let a = -r.round();
            if (r + a).abs() < TAU_REL && (a.abs() as i64) <= h {
                let height = (a as i64).abs().max(bb.abs()).max(cc.abs());
                let cand = (height, bb, cc, a as i64);
                if local.map_or(true, |cur| cand < cur) {
                    local = Some(cand);
                }
            }
        }
        local
    });
    let verdict = match best {
        None => IndependenceVerdict::NoRelationUpToHeight,
        Some((_, bb, cc, a)) => IndependenceVerdict::RelationFound { a, b: bb, c: cc },
    };
    Ok(IndependenceCertificate {
        theta1,
        theta2,
        height: h,
        verdict,
    })
}

/// Sequential certificate used as the benchmark baseline.
#[doc(hidden)]
pub fn independence_certificate_seq(
    theta1: f64,
    theta2: f64,
    h: i64,
) -> Result<IndependenceCertificate> {
    if !(1..=10_000).contains(&h) {
        return Err(Error::Domain(format!("height {h} outside guard [1, 10^4]")));
    }
    let best = par::min_hit_seq(0, h + 1, |bb| {
        let mut local: Option<(i64, i64, i64, i64)> = None;
        let c_iter: Box<dyn Iterator<Item = i64>> = if bb == 0 {
            Box::new(1..=h)
        } else {
            Box::new(-h..=h)
        };
        for cc in c_iter {
            let r = bb as f64 * theta1 + cc as f64 * theta2;
            let a = -r.round();
            if (r + a).abs() < TAU_REL && (a.abs() as i64) <= h {
                let cand = (
                    (a as i64).abs().max(bb.abs()).max(cc.abs()),
                    bb,
                    cc,
                    a as i64,
                );
                if local.map_or(true, |cur| cand < cur) {
                    local = Some(cand);
                }
            }
        }
        local
    });
    let verdict = match best {
        None => IndependenceVerdict::NoRelationUpToHeight,
        Some((_, bb, cc, a)) => IndependenceVerdict::RelationFound { a, b: bb, c: cc },
    };
    Ok(IndependenceCertificate {
        theta1,
        theta2,
        height: h,
        verdict,
    })
}

/// Minimal q in [1, h] with q * theta within TAU_REL of an integer p;
/// the bounded-height rationality test behind generator preconditions.
pub fn rational_relation(theta: f64, h: i64) -> Option<(i64, i64)> {
    (1..=h).find_map(|q| {
        let p = (q as f64 * theta).round();
        ((q as f64 * theta - p).abs() < TAU_REL).then_some((p as i64, q))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent brute-force double loop over (k, l).
    fn brute_force_ratio(
        target: f64,
        b: f64,
        c: f64,
        tol: f64,
        max_k: i64,
        max_l: i64,
    ) -> Option<RatioSolution> {
        for l in 1..=max_l {
            for k in -max_k..=max_k {
                let v = (k as f64 * b.ln() - l as f64 * c.ln()).exp();
                let rel = (v - target).abs() / target;
                if rel <= tol {
                    return Some(RatioSolution {
                        k,
                        l,
                        achieved: v,
                        rel_err: rel,
                    });
                }
            }
        }
        None
    }

    #[test]
    fn ratio_finds_known_instances() {
        // b = 2, c = 3, target = 8, tol 1e-3.
        let s = solve_ratio(8.0, 2.0, 3.0, 1e-3, RatioBounds::default()).unwrap();
        assert!(s.rel_err <= 1e-3);
        assert!(verify_ratio(&s, 8.0, 2.0, 3.0) <= 1.0000001e-3);

        // b = 2, c = 3, target = 5, tol 0.05: a solution exists with l <= 60.
        let s = solve_ratio(5.0, 2.0, 3.0, 0.05, RatioBounds::default()).unwrap();
        assert!(s.l <= 60, "l = {}", s.l);
        assert!(s.rel_err <= 0.05);
    }

    #[test]
    fn ratio_matches_brute_force_on_random_instances() {
        // Deterministic pseudo-random instances.
        let mut x = 0.7f64;
        for _ in 0..100 {
            x = (x * 9301.0 + 49297.0) % 233280.0 / 233280.0;
            let target = 0.5 + 4.0 * x;
            let tol = 0.02;
            let bounds = RatioBounds {
                max_k: 200,
                max_l: 120,
            };
            let ours = solve_ratio(target, 2.0, 3.0, tol, bounds);
            let brute = brute_force_ratio(target, 2.0, 3.0, tol, 200, 120);
            match (ours, brute) {
                (Ok(a), Some(b)) => {
                    assert!(a.rel_err <= tol);
                    // Same l (both smallest) implies same quality.
                    assert_eq!(a.l, b.l);
                }
                (Err(_), None) => {}
                (a, b) => panic!("solver disagreement: {a:?} vs {b:?}"),
            }
        }
    }

    #[test]
    fn ratio_monotone_in_tolerance() {
        let mut prev = f64::INFINITY;
        for tol in [0.2, 0.1, 0.05, 0.01, 0.001] {
            let s = solve_ratio(5.0, 2.0, 3.0, tol, RatioBounds::default()).unwrap();
            assert!(s.rel_err <= prev + 1e-15, "tol {tol}");
            prev = s.rel_err;
        }
    }

    #[test]
    fn ratio_rejects_bad_domains() {
        assert!(solve_ratio(-1.0, 2.0, 3.0, 0.1, RatioBounds::default()).is_err());
        assert!(solve_ratio(1.0, 0.5, 3.0, 0.1, RatioBounds::default()).is_err());
        let tight = RatioBounds { max_k: 3, max_l: 3 };
        assert!(matches!(
            solve_ratio(5.0, 2.0, 3.0, 1e-6, tight),
            Err(Error::NotFound(_))
        ));
    }

    #[test]
    fn simultaneous_examples() {
        // Homogeneous case: phi = 0 admits solutions for any eps.
        let s = solve_simultaneous(
            0.61803398875,
            std::f64::consts::SQRT_2,
            0.0,
            0.0,
            0.05,
            1_000_000,
        )
        .unwrap();
        assert!(s.err1 < 0.05 && s.err2 < 0.05);

        // Golden ratio and sqrt(2) with offsets.
        let s = solve_simultaneous(
            0.61803398875,
            std::f64::consts::SQRT_2,
            0.5,
            0.25,
            0.01,
            1_000_000,
        )
        .unwrap();
        assert!(s.err1 < 0.01 && s.err2 < 0.01);

        // Half-width tolerance: n = 1 is always valid.
        let s = solve_simultaneous(0.3181, 0.7415, 0.9, 0.2, 0.51, 10).unwrap();
        assert_eq!(s.n, 1);
    }

    #[test]
    fn certificate_finds_rational_and_equality_relations() {
        let c = independence_certificate(0.5, std::f64::consts::SQRT_2, 10).unwrap();
        assert_eq!(
            c.verdict,
            IndependenceVerdict::RelationFound { a: -1, b: 2, c: 0 }
        );

        let theta = 0.123456789;
        let c = independence_certificate(theta, theta, 10).unwrap();
        assert_eq!(
            c.verdict,
            IndependenceVerdict::RelationFound { a: 0, b: 1, c: -1 }
        );
    }

    #[test]
    fn certificate_clears_log_ratio() {
        let theta1 = 2f64.ln() / 3f64.ln();
        let c = independence_certificate(theta1, std::f64::consts::E, 100).unwrap();
        assert_eq!(c.verdict, IndependenceVerdict::NoRelationUpToHeight);
        let seq = independence_certificate_seq(theta1, std::f64::consts::E, 100).unwrap();
        assert_eq!(c, seq);
    }

    #[test]
    fn certificate_guard() {
        assert!(independence_certificate(0.1, 0.2, 20_000).is_err());
    }

    #[test]
    fn rationality_test() {
        assert_eq!(rational_relation(0.75, 10), Some((3, 4)));
        assert_eq!(rational_relation(2f64.ln() / 3f64.ln(), 1000), None);
    }
}
