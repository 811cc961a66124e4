//! Property-based invariants over the projective algebra, word evaluation
//! and the solvers.

use moebius_dense::diophantine::{solve_ratio, verify_ratio, RatioBounds};
use moebius_dense::expansion::greedy_expand_real;
use moebius_dense::mat2::{canonicalize, proj_distance, Mat2};
use moebius_dense::synthesis::{word_f, FTriple, SynthesisBudget};
use moebius_dense::systems;
use moebius_dense::words::{evaluate, Word};
use num_complex::Complex64;
use proptest::prelude::*;

prop_compose! {
    fn arb_invertible()(e in prop::array::uniform4(-3.0f64..3.0)) -> Mat2<f64> {
        let mut m = Mat2::new(e[0], e[1], e[2], e[3]);
        // Nudge towards invertibility; rejected later if still singular.
        if m.det().abs() < 0.05 {
            m.m11 += 1.0;
        }
        m
    }
}

prop_compose! {
    fn arb_nonneg_triple()(alpha in 0.05f64..2.0, frac in 0.05f64..0.95, beta in 0.05f64..2.0)
        -> (f64, f64, f64) {
        // Inside the admissible set: d = frac * min(1, alpha^2).
        let d = frac * 1f64.min(alpha * alpha);
        let gamma = (alpha - d) / beta;
        (alpha, beta, gamma.max(0.0))
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn canonicalize_idempotent_and_scale_invariant(m in arb_invertible(), lambda in 0.01f64..100.0, neg: bool) {
        prop_assume!(m.det().abs() > 0.05);
        let lambda = if neg { -lambda } else { lambda };
        let p = canonicalize(&m).unwrap();
        let q = canonicalize(&m.scale(&lambda)).unwrap();
        // Scalar invariance up to float division rounding.
        prop_assert!(proj_distance(&p, &q) < 1e-14);
        // Idempotence is exact: the pivot is 1 and divisions are by 1.
        let again = canonicalize(p.rep()).unwrap();
        prop_assert_eq!(again.rep(), p.rep());
    }

    #[test]
    fn compose_is_associative(a in arb_invertible(), b in arb_invertible(), c in arb_invertible()) {
        prop_assume!(a.det().abs() > 0.05 && b.det().abs() > 0.05 && c.det().abs() > 0.05);
        let (pa, pb, pc) = (
            canonicalize(&a).unwrap(),
            canonicalize(&b).unwrap(),
            canonicalize(&c).unwrap(),
        );
        let left = pa.compose(&pb).compose(&pc);
        let right = pa.compose(&pb.compose(&pc));
        prop_assert!(proj_distance(&left, &right) < 1e-12);
    }

    #[test]
    fn det_is_multiplicative(a in arb_invertible(), b in arb_invertible()) {
        let prod = a.mul(&b);
        let lhs = prod.det();
        let rhs = a.det() * b.det();
        prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.abs().max(1.0));
    }

    #[test]
    fn displayed_product_determinant_formula(
        alpha in 0.1f64..2.0, beta in 0.0f64..2.0, gamma in 0.0f64..2.0,
        u in 0.1f64..2.0, v in 0.0f64..2.0, w in 0.0f64..2.0,
    ) {
        // det(fg) = (alpha - beta gamma)(u - v w) / (gamma v + 1)^2 for
        // delta-normalized f and g.
        prop_assume!((alpha - beta * gamma).abs() > 1e-3);
        prop_assume!((u - v * w).abs() > 1e-3);
        let f = canonicalize(&Mat2::new(alpha, beta, gamma, 1.0)).unwrap();
        let g = canonicalize(&Mat2::new(u, v, w, 1.0)).unwrap();
        let fg = f.compose(&g);
        let s = fg.spectral_data();
        prop_assume!(s.defined);
        let expected = (alpha - beta * gamma) * (u - v * w) / (gamma * v + 1.0).powi(2);
        prop_assert!((s.det_norm - expected).abs() <= 1e-12 * expected.abs().max(1.0));
    }

    #[test]
    fn proj_distance_zero_iff_equal(m in arb_invertible(), lambda in 0.5f64..2.0, bump in 1e-3f64..1e-1) {
        prop_assume!(m.det().abs() > 0.05);
        let p = canonicalize(&m).unwrap();
        let q = canonicalize(&m.scale(&lambda)).unwrap();
        if p.rep() == q.rep() {
            prop_assert_eq!(proj_distance(&p, &q), 0.0);
        } else {
            prop_assert!(proj_distance(&p, &q) < 1e-14);
        }
        let mut shifted = m;
        shifted.m12 += bump * m.fro_norm();
        if let Ok(r) = canonicalize(&shifted) {
            if r.rep() != p.rep() {
                prop_assert!(proj_distance(&p, &r) > 0.0);
            }
        }
    }

    #[test]
    fn triangle_inequality(a in arb_invertible(), b in arb_invertible(), c in arb_invertible()) {
        prop_assume!(a.det().abs() > 0.05 && b.det().abs() > 0.05 && c.det().abs() > 0.05);
        let (pa, pb, pc) = (
            canonicalize(&a).unwrap(),
            canonicalize(&b).unwrap(),
            canonicalize(&c).unwrap(),
        );
        prop_assert!(proj_distance(&pa, &pc) <= proj_distance(&pa, &pb) + proj_distance(&pb, &pc) + 1e-12);
    }

    #[test]
    fn complex_phase_quotient(m in prop::array::uniform4(-2.0f64..2.0), phi in 0.0f64..std::f64::consts::TAU) {
        let z = |x: f64, y: f64| Complex64::new(x, y);
        let mat = Mat2::new(z(m[0], m[1]), z(m[2], m[3]), z(m[1], -m[0]), z(1.0, 0.5));
        prop_assume!(mat.det().norm() > 0.05);
        let p = canonicalize(&mat).unwrap();
        let rot = Complex64::from_polar(1.0, phi);
        let q = canonicalize(&mat.scale(&rot)).unwrap();
        prop_assert!(proj_distance(&p, &q) < 1e-13);
    }

    #[test]
    fn evaluation_is_homomorphic(letters in prop::collection::vec((0u8..2, 1u32..4), 1..25), split in 0usize..24) {
        let sys = systems::lft2(1.0, 2.0).unwrap();
        let to_word = |ls: &[(u8, u32)]| {
            let mut w = Word::empty();
            for (s, e) in ls {
                w.push(if *s == 0 { "R" } else { "S" }, *e);
            }
            w
        };
        let split = split.min(letters.len());
        let u = to_word(&letters[..split]);
        let v = to_word(&letters[split..]);
        let uv = u.concat(&v);
        let e_uv = evaluate(&uv, &sys).unwrap();
        let composed = evaluate(&u, &sys).unwrap().compose(&evaluate(&v, &sys).unwrap());
        prop_assert!(proj_distance(&e_uv.projective, &composed.projective) < 1e-10);
        let denom = composed.log_scale.abs().max(1.0);
        prop_assert!((e_uv.log_scale - composed.log_scale).abs() / denom < 1e-10);
    }

    #[test]
    fn evaluation_reconstructs_raw_product(letters in prop::collection::vec((0u8..2, 1u32..6), 1..40)) {
        let sys = systems::lft2(1.0, 2.0).unwrap();
        let mut w = Word::empty();
        for (s, e) in &letters {
            w.push(if *s == 0 { "R" } else { "S" }, *e);
        }
        prop_assume!(w.total_length() <= 120);
        let e = evaluate(&w, &sys).unwrap();
        let mut raw = Mat2::identity();
        for l in w.letters() {
            let m = sys.matrix(&l.symbol).unwrap();
            for _ in 0..l.exponent {
                raw = raw.mul(m);
            }
        }
        prop_assume!(raw.all_finite() && raw.max_modulus() < 1e200);
        let scale = e.phase * e.log_scale.exp();
        let rec = e.projective.rep().scale(&scale);
        let (_, rel) = moebius_dense::mat2::mat_distance(&rec, &raw);
        prop_assert!(rel < 1e-10);
    }

    #[test]
    fn greedy_expansion_reconstructs(t in 1e-3f64..1e5, b in 1.01f64..10.0) {
        let eps = 1e-9 * t.max(1.0);
        let e = greedy_expand_real(t, b, eps, 4000).unwrap();
        prop_assert!(e.residual <= eps);
        prop_assert!((e.reconstruct().re - t).abs() <= eps * (1.0 + 1e-6));
        for w in e.exponents.windows(2) {
            prop_assert!(w[0] >= w[1]);
        }
    }

    #[test]
    fn ratio_solutions_reverify_exactly(target in 0.3f64..6.0) {
        let bounds = RatioBounds { max_k: 300, max_l: 200 };
        if let Ok(s) = solve_ratio(target, 2.0, 3.0, 0.05, bounds) {
            let exact = verify_ratio(&s, target, 2.0, 3.0);
            prop_assert!(exact <= 0.05 * (1.0 + 1e-9));
            prop_assert!((exact - s.rel_err).abs() <= 1e-9);
        }
    }
}

/// Stage budgets: the composite word for 200 random admissible triples uses
/// per-stage tolerances eps/5 (three T stages plus two inversions sum to
/// eps) and the measured final error respects eps.
#[test]
fn composite_stage_budgets() {
    let sys = systems::lft2(1.0, 2.0).unwrap();
    let budget = SynthesisBudget::default();
    let eps = 1e-5;
    let mut state = 0.42f64;
    let mut next = move || {
        state = (state * 9301.0 + 49297.0) % 233280.0 / 233280.0;
        state
    };
    let mut done = 0;
    while done < 200 {
        let alpha = 0.05 + 1.95 * next();
        let frac = 0.05 + 0.9 * next();
        let beta = 0.05 + 1.95 * next();
        let d = frac * 1f64.min(alpha * alpha);
        let gamma = ((alpha - d) / beta).max(0.0);
        let t = FTriple::new(alpha, beta, gamma);
        let w = word_f(&t, eps, &sys, &budget).unwrap();
        let e = evaluate(&w, &sys).unwrap();
        let target = canonicalize(&Mat2::new(alpha, beta, gamma, 1.0)).unwrap();
        let err = proj_distance(&e.projective, &target);
        assert!(err <= eps, "triple ({alpha}, {beta}, {gamma}): error {err}");
        done += 1;
    }
}

/// The trivial part of the budget invariant: three T-stage tolerances plus
/// two inversion tolerances at eps/5 each sum to eps.
#[test]
fn stage_tolerances_sum_to_eps() {
    let eps = 1e-4f64;
    let per_stage = eps / 5.0;
    assert!((5.0 * per_stage - eps).abs() < f64::EPSILON);
}

/// The coefficient metric tracks pointwise convergence: maps at tiny
/// projective distance agree pointwise on a sample of the half-line, and
/// maps separated in the metric disagree somewhere on it.
#[test]
fn metric_matches_pointwise_convergence() {
    use moebius_dense::mat2::Point;
    let mut state = 0.2f64;
    let mut next = move || {
        state = (state * 9301.0 + 49297.0) % 233280.0 / 233280.0;
        state
    };
    let sample: Vec<f64> = vec![0.1, 0.5, 1.0, 2.0, 7.0];
    for _ in 0..200 {
        let m = Mat2::new(
            0.1 + 2.0 * next(),
            2.0 * next(),
            2.0 * next(),
            0.1 + 2.0 * next(),
        );
        if m.det().abs() < 0.05 {
            continue;
        }
        let f = canonicalize(&m).unwrap();
        // A small coefficient perturbation: pointwise values track it.
        let mut bumped = m;
        bumped.m12 += 1e-9 * m.fro_norm();
        let g = canonicalize(&bumped).unwrap();
        let d = proj_distance(&f, &g);
        assert!(d < 1e-7);
        for &x in &sample {
            let (Some(fx), Some(gx)) = (
                f.apply(Point::Finite(x)).finite(),
                g.apply(Point::Finite(x)).finite(),
            ) else {
                continue;
            };
            if fx.abs() < 1e3 {
                assert!(
                    (fx - gx).abs() < 1e-4,
                    "pointwise jump under tiny metric step"
                );
            }
        }
        // A far map differs somewhere on the sample.
        let far = canonicalize(&Mat2::new(m.m11 + 1.0, m.m12, m.m21, m.m22 + 2.0)).unwrap();
        if proj_distance(&f, &far) > 0.1 {
            let separated = sample.iter().any(|&x| {
                match (
                    f.apply(Point::Finite(x)).finite(),
                    far.apply(Point::Finite(x)).finite(),
                ) {
                    (Some(a), Some(b)) => (a - b).abs() > 1e-4,
                    _ => true,
                }
            });
            assert!(separated, "metric separation without pointwise separation");
        }
    }
}
