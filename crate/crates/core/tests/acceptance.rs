//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line. Run with `cargo test --test acceptance -- --nocapture` to see the
//! lines for passing criteria too.

use moebius_dense::diophantine::{
    independence_certificate, solve_ratio, verify_ratio, IndependenceVerdict, RatioBounds,
};
use moebius_dense::mat2::{canonicalize, mat_distance, proj_distance, Mat2, Point, ProjectiveMap};
use moebius_dense::orbits::{dense_orbit_sample, in_u, orbit_closure_contains, OrbitRegionQuery};
use moebius_dense::scalar::{rat, rat_int};
use moebius_dense::synthesis::{
    exc2_params, word_lft, word_lft_best_effort, word_matrix_complex, word_matrix_nonneg,
    word_matrix_real, SynthesisBudget,
};
use moebius_dense::systems;
use moebius_dense::words::{enumerate_words, evaluate, evaluate_exact, parse_word, Word};
use num_complex::Complex64;
use num_rational::BigRational;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn report(criterion: u32, name: &str, pass: bool, detail: &str) {
    println!(
        "criterion {criterion:02} [{}] {name}: {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {criterion} failed: {detail}");
}

fn rat_mat(
    m11: BigRational,
    m12: BigRational,
    m21: BigRational,
    m22: BigRational,
) -> Mat2<BigRational> {
    Mat2::new(m11, m12, m21, m22)
}

/// Exact rational T_u I T_{v/a} I T_w as a matrix product.
fn composite_exact(
    u: &BigRational,
    v: &BigRational,
    w: &BigRational,
    a: &BigRational,
) -> Mat2<BigRational> {
    let one = || rat_int(1);
    let zero = || rat_int(0);
    let t = |s: BigRational| rat_mat(one(), zero(), s, one());
    let inv = rat_mat(zero(), a.clone(), one(), zero());
    t(u.clone())
        .mul(&inv)
        .mul(&t(v.clone() / a.clone()))
        .mul(&inv)
        .mul(&t(w.clone()))
}

fn small_rat(rng: &mut StdRng, lo: i64, hi: i64, den_hi: i64) -> BigRational {
    let num = rng.gen_range(lo..=hi);
    let den = rng.gen_range(1..=den_hi);
    rat(num, den)
}

#[test]
fn criterion_01_exact_identity() {
    let sys = systems::exr_exact();
    let w = parse_word("A B A^3 B A").unwrap();
    let m = evaluate_exact(&w, &sys).unwrap();
    let c = rat_mat(rat(-2, 9), rat_int(0), rat_int(0), rat_int(1));
    let distance_is_zero = m == c;
    report(
        1,
        "exact identity A B A^3 B A = [[-2/9,0],[0,1]]",
        distance_is_zero,
        if distance_is_zero {
            "distance exactly 0"
        } else {
            "product differs"
        },
    );
}

#[test]
fn criterion_02_composite_identity() {
    let mut rng = StdRng::seed_from_u64(0x5eed_0002);
    let mut checked = 0;
    while checked < 100 {
        let u = small_rat(&mut rng, 0, 8, 6);
        let v = small_rat(&mut rng, 1, 8, 6);
        let w = small_rat(&mut rng, 0, 8, 6);
        let a = small_rat(&mut rng, 1, 5, 4);
        let lhs = composite_exact(&u, &v, &w, &a);
        // ((1 + vw) x + v) / ((u + w + uvw) x + (1 + uv))
        let rhs = rat_mat(
            rat_int(1) + v.clone() * w.clone(),
            v.clone(),
            u.clone() + w.clone() + u.clone() * v.clone() * w.clone(),
            rat_int(1) + u.clone() * v.clone(),
        );
        if !lhs.proportional(&rhs) {
            report(
                2,
                "composite identity",
                false,
                &format!("mismatch at u={u} v={v} w={w} a={a}"),
            );
        }
        checked += 1;
    }
    report(
        2,
        "composite identity (100 rational triples)",
        true,
        "all exact",
    );
}

#[test]
fn criterion_03_parameter_round_trip() {
    let mut rng = StdRng::seed_from_u64(0x5eed_0003);
    let mut checked = 0;
    while checked < 100 {
        // d = s^2 a perfect square; alpha = d + beta gamma keeps everything
        // admissible and the square root rational.
        let s = small_rat(&mut rng, 1, 6, 7);
        if s > rat_int(1) {
            continue;
        }
        let beta = small_rat(&mut rng, 1, 6, 5);
        let extra = small_rat(&mut rng, 0, 4, 5);
        let gamma = (s.clone() * (rat_int(1) - s.clone()) + extra) / beta.clone();
        let alpha = s.clone() * s.clone() + beta.clone() * gamma.clone();
        let a = small_rat(&mut rng, 1, 5, 4);
        let u = (rat_int(1) - s.clone()) / beta.clone();
        let v = beta.clone() / s.clone();
        let w = (alpha.clone() - s.clone()) / beta.clone();
        let lhs = composite_exact(&u, &v, &w, &a);
        let rhs = rat_mat(alpha.clone(), beta.clone(), gamma.clone(), rat_int(1));
        if !lhs.proportional(&rhs) {
            report(
                3,
                "parameter round trip",
                false,
                &format!("mismatch at s={s} beta={beta} gamma={gamma}"),
            );
        }
        checked += 1;
    }
    report(
        3,
        "parameter formulas reproduce the target (100 rational triples)",
        true,
        "all exact",
    );
}

#[test]
fn criterion_04_closure_oracle() {
    let sys = systems::lft2(1.0, 2.0).unwrap();
    let mut tested = 0usize;
    let mut counterexamples = 0usize;
    for w in enumerate_words(&sys, 12, 1 << 20).unwrap() {
        let r_count: u64 = w
            .letters()
            .iter()
            .filter(|l| l.symbol == "R")
            .map(|l| u64::from(l.exponent))
            .sum();
        if r_count % 2 != 0 {
            continue;
        }
        let e = evaluate(&w, &sys).unwrap();
        let s = e.projective.spectral_data();
        if !s.defined {
            continue;
        }
        tested += 1;
        let ok = s.det_norm >= 0.0
            && in_u(&e.projective, 2.0, 64)
                .map(|v| v.in_closure)
                .unwrap_or(false);
        if !ok {
            counterexamples += 1;
        }
    }
    report(
        4,
        "every even-R word of length <= 12 passes membership",
        counterexamples == 0 && tested > 1000,
        &format!("{tested} words tested, {counterexamples} counterexamples"),
    );
}

#[test]
fn criterion_05_negative_control() {
    let s = 2f64.sqrt();
    let target = canonicalize(&Mat2::new(s, 1.0, s - 1.2, 1.0)).unwrap();
    let verdict = in_u(&target, 2.0, 64).unwrap();
    let rejected = !verdict.in_closure && verdict.margin > 0.05;
    let sys = systems::lft2(1.0, 2.0).unwrap();
    let budget = SynthesisBudget::default();
    let mut min_err = f64::INFINITY;
    for depth in [4u32, 8, 16, 24, 32] {
        let (_, err) = word_lft_best_effort(&target, depth, &sys, &budget).unwrap();
        min_err = min_err.min(err);
    }
    report(
        5,
        "rejected map stays unreachable",
        rejected && min_err > 0.05,
        &format!(
            "margin {:.3}, min synthesis error {:.3}",
            verdict.margin, min_err
        ),
    );
}

fn random_in_u_target(rng: &mut StdRng) -> ProjectiveMap<f64> {
    let b = 2f64;
    let k: i32 = rng.gen_range(-3..=3);
    let alpha: f64 = rng.gen_range(0.1..2.0);
    let cap = 1f64.min(alpha * alpha);
    let d: f64 = rng.gen_range(0.1 * cap..0.9 * cap);
    let beta: f64 = rng.gen_range(0.05..2.0);
    let gamma = (alpha - d) / beta;
    let scale = b.powi(k);
    canonicalize(&Mat2::new(alpha * scale, beta * scale, gamma, 1.0)).unwrap()
}

#[test]
fn criterion_06_synthesis_convergence() {
    let sys = systems::lft2(1.0, 2.0).unwrap();
    let budget = SynthesisBudget::default();
    let mut rng = StdRng::seed_from_u64(0x5eed_0006);
    let targets: Vec<_> = (0..50).map(|_| random_in_u_target(&mut rng)).collect();
    let mut worst: f64 = 0.0;
    for t in &targets {
        let r = word_lft(t, 1e-6, &sys, &budget).unwrap();
        worst = worst.max(r.error);
    }
    // Median error under doubling of the global depth parameter.
    let mut medians = Vec::new();
    for depth in [8u32, 16, 32] {
        let mut errors: Vec<f64> = targets
            .iter()
            .map(|t| word_lft_best_effort(t, depth, &sys, &budget).unwrap().1)
            .collect();
        errors.sort_by(|a, b| a.partial_cmp(b).unwrap());
        medians.push(errors[errors.len() / 2]);
    }
    let monotone = medians.windows(2).all(|w| w[1] <= w[0] + 1e-12);
    report(
        6,
        "50 closure members synthesized to 1e-6 with monotone medians",
        worst <= 1e-6 && monotone,
        &format!("worst error {:.2e}, medians {:?}", worst, medians),
    );
}

#[test]
fn criterion_07_three_generator_density() {
    let sys = systems::lft3(1.0, 2.0, 3.0).unwrap();
    let budget = SynthesisBudget::default();
    let mut rng = StdRng::seed_from_u64(0x5eed_0007);
    let mut done = 0;
    let mut worst: f64 = 0.0;
    while done < 25 {
        let m = Mat2::new(
            rng.gen_range(0.05..3.0),
            rng.gen_range(0.05..3.0),
            rng.gen_range(0.05..3.0),
            rng.gen_range(0.05..3.0),
        );
        if m.det().abs() < 0.1 {
            continue;
        }
        let target = canonicalize(&m).unwrap();
        let r = word_lft(&target, 1e-4, &sys, &budget).unwrap();
        worst = worst.max(r.error);
        done += 1;
    }
    report(
        7,
        "25 nonnegative targets over three generators at 1e-4",
        worst <= 1e-4,
        &format!("worst error {:.2e}", worst),
    );
}

#[test]
fn criterion_08_matrix_density() {
    let budget = SynthesisBudget::default();
    let plus = systems::mat3_plus(1.0, 8.0 / 3.0, 2.0 / 9.0).unwrap();
    let r1 = word_matrix_nonneg(&Mat2::new(1.0, 2.0, 3.0, 4.0), 1e-2, &plus, &budget).unwrap();
    let exr = systems::exr().unwrap();
    let r2 = word_matrix_real(&Mat2::new(1.0, 1.0, 1.0, -1.0), 5e-2, &exr, &budget).unwrap();
    report(
        8,
        "matrix targets over MAT3+ and the explicit pair",
        r1.error <= 1e-2 && r2.error <= 5e-2,
        &format!("nonneg rel {:.2e}, signed rel {:.2e}", r1.error, r2.error),
    );
}

/// This criterion pins the example radius r = 4, which turns out to lie in
/// the countable excluded set of the parametrized family: at r = 4 the
/// entry ratio im(c)/re(c) equals 2 + sqrt(3) = tan 75 degrees exactly, so
/// arg(c)/2pi = -7/24 is rational and the certificate (correctly) reports
/// the integer relation (7, 0, 24). The identity and |c|^2 clauses hold,
/// and the synthesis machinery passes at admissible radii (see the
/// companion test below), but the criterion as stated cannot pass at r = 4.
#[test]
fn criterion_09_complex_case() {
    let p = exc2_params(4.0).unwrap();
    let identity_ok = p.identity_residual < 1e-10;
    let c_sq_ok = p.c_norm_sq > 0.0 && p.c_norm_sq < 1.0;
    let theta1 = p.c.norm().ln() / p.b.norm().ln();
    let theta2 = p.c.arg() / std::f64::consts::TAU;
    let cert = independence_certificate(theta1, theta2, 100).unwrap();
    let independent = cert.verdict == IndependenceVerdict::NoRelationUpToHeight;
    let sys = systems::exc2(4.0).unwrap();
    let budget = SynthesisBudget::default();
    let target = Mat2::new(
        Complex64::new(0.0, 1.0),
        Complex64::ZERO,
        Complex64::ZERO,
        Complex64::new(0.0, 1.0),
    );
    let synthesis = word_matrix_complex(&target, 1e-2, &sys, &budget);
    let synthesis_detail = match &synthesis {
        Ok(r) => format!("synthesis rel {:.2e}", r.error),
        Err(e) => format!("synthesis refused: {e}"),
    };
    let synthesis_ok = synthesis.map(|r| r.error <= 1e-2).unwrap_or(false);
    report(
        9,
        "complex example parameters and i*Identity synthesis at r = 4",
        identity_ok && c_sq_ok && independent && synthesis_ok,
        &format!(
            "identity residual {:.1e} (ok: {identity_ok}), |c|^2 {:.4} in (0,1) (ok: {c_sq_ok}), \
             certificate {:?}; arg(c)/2pi = -7/24 exactly at r = 4 (im/re = 2 + sqrt(3) = tan 75deg), \
             so r = 4 lies in the countable excluded set of the family; {synthesis_detail}",
            p.identity_residual, p.c_norm_sq, cert.verdict
        ),
    );
}

/// Companion to criterion 9: the same checks and synthesis succeed at an
/// admissible radius.
#[test]
fn complex_case_at_admissible_radius() {
    let r_param = 4.1;
    let p = exc2_params(r_param).unwrap();
    assert!(p.identity_residual < 1e-10);
    assert!(p.c_norm_sq > 0.0 && p.c_norm_sq < 1.0);
    let theta1 = p.c.norm().ln() / p.b.norm().ln();
    let theta2 = p.c.arg() / std::f64::consts::TAU;
    let cert = independence_certificate(theta1, theta2, 100).unwrap();
    assert_eq!(cert.verdict, IndependenceVerdict::NoRelationUpToHeight);
    let sys = systems::exc2(r_param).unwrap();
    let budget = SynthesisBudget::default();
    let target = Mat2::new(
        Complex64::new(0.0, 1.0),
        Complex64::ZERO,
        Complex64::ZERO,
        Complex64::new(0.0, 1.0),
    );
    let r = word_matrix_complex(&target, 1e-2, &sys, &budget).unwrap();
    println!(
        "companion 09a [PASS] complex synthesis at r = {r_param}: rel error {:.2e}",
        r.error
    );
    assert!(r.error <= 1e-2);
}

#[test]
fn criterion_10_orbit_closure() {
    let sys = systems::lft2(1.0, 2.0).unwrap();
    let q = OrbitRegionQuery {
        x: 2.0,
        y: 1.0,
        a: 1.0,
        b: 2.0,
    };
    let mut rng = StdRng::seed_from_u64(0x5eed_0010);
    let mut violations = 0usize;
    for _ in 0..10_000 {
        let len = rng.gen_range(1..=15);
        let mut w = Word::empty();
        for _ in 0..len {
            w.push(if rng.gen_bool(0.5) { "R" } else { "S" }, 1);
        }
        let f = evaluate(&w, &sys).unwrap().projective;
        let (Some(u), Some(v)) = (
            f.apply(Point::Finite(2.0)).finite(),
            f.apply(Point::Finite(1.0)).finite(),
        ) else {
            violations += 1;
            continue;
        };
        if !orbit_closure_contains(u, v, &q).unwrap().contains {
            violations += 1;
        }
    }
    let outside = !orbit_closure_contains(10.0, 1.0, &q).unwrap().contains;
    report(
        10,
        "10^4 word images stay in the orbit closure; (10,1) rejected",
        violations == 0 && outside,
        &format!("{violations} violations"),
    );
}

#[test]
fn criterion_11_dense_orbit_sampler() {
    let edge = dense_orbit_sample(1.0, 2.0, 24, 21, (0.0, 1.0)).unwrap();
    let diag = dense_orbit_sample(1.0, 2.0, 24, 21, (0.0, 0.0)).unwrap();
    report(
        11,
        "perimeter start covers the square, diagonal start does not",
        edge.coverage <= 0.05 && diag.coverage >= 0.2,
        &format!(
            "edge coverage {:.4} ({} points), diagonal coverage {:.4}",
            edge.coverage, edge.points_visited, diag.coverage
        ),
    );
}

#[test]
fn criterion_12_diophantine() {
    let mut all_ok = true;
    let mut details = String::new();
    for tol in [0.05, 0.02, 0.01] {
        let s = solve_ratio(5.0, 2.0, 3.0, tol, RatioBounds::default()).unwrap();
        let exact = verify_ratio(&s, 5.0, 2.0, 3.0);
        all_ok &= s.rel_err <= tol && exact <= tol * (1.0 + 1e-9);
        details.push_str(&format!(
            "tol {tol}: (k={}, l={}) exact rel {:.3e}; ",
            s.k, s.l, exact
        ));
    }
    report(
        12,
        "ratio solutions re-verify in exact arithmetic",
        all_ok,
        &details,
    );
}

/// Self-certification: re-evaluating a report's word reproduces the
/// achieved map bit-identically.
#[test]
fn reports_are_self_certifying() {
    let sys = systems::lft3(1.0, 2.0, 3.0).unwrap();
    let budget = SynthesisBudget::default();
    let target = canonicalize(&Mat2::new(3.0, 1.0, 1.0, 2.0)).unwrap();
    let r = word_lft(&target, 1e-4, &sys, &budget).unwrap();
    let again = evaluate(&r.word, &sys).unwrap();
    assert_eq!(again.projective.rep(), r.achieved.projective.rep());
    assert_eq!(again.log_scale, r.achieved.log_scale);
    let err = proj_distance(&again.projective, &target);
    assert!((err - r.error).abs() <= 1e-14);
}

/// The antidiagonal scalar construction: cross-check the synthesized word
/// for d = 3 against the direct matrix target.
#[test]
fn scalar_word_cross_check() {
    let sys = systems::mat3_plus(1.0, 8.0 / 3.0, 2.0 / 9.0).unwrap();
    let budget = SynthesisBudget::default();
    let w = moebius_dense::synthesis::word_scalar_matrix(3.0, 1e-3, &sys, &budget).unwrap();
    let e = evaluate(&w, &sys).unwrap();
    let m = e.projective.rep().scale(&(e.phase * e.log_scale.exp()));
    let (abs, _) = mat_distance(&m, &Mat2::identity().scale(&3.0));
    assert!(abs <= 1e-3, "absolute distance {abs}");
}
