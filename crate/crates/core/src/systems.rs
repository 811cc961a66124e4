//! Built-in generator systems. Every construction in scope is reachable by
//! name: LFT2(a,b) and LFT3(a,b,c) for transformations on [0, infinity),
//! MAT3+/MAT3- for matrix semigroups, EXR for the explicit real pair, CPLX3
//! and EXC2(r) for the complex case.
//!
//! Construction validates each system's defining conditions; irrationality and
//! independence conditions are certified at bounded height.

use crate::diophantine::{independence_certificate, rational_relation, IndependenceVerdict};
use crate::error::{Error, Result};
use crate::mat2::Mat2;
use crate::scalar::{rat, rat_from_f64, Coeff};
use crate::words::{parse_word, GeneratorSystem, LadderRoles};
use num_complex::Complex64;
use num_rational::BigRational;
use std::collections::BTreeMap;

/// Height used for construction-time irrationality/independence checks.
pub const PRECONDITION_HEIGHT: i64 = 100;

fn check_irrational_log_ratio(c: f64, b: f64) -> Result<()> {
    let theta = c.ln() / b.ln();
    if let Some((p, q)) = rational_relation(theta, PRECONDITION_HEIGHT) {
        return Err(Error::IndependenceSuspect {
            height: PRECONDITION_HEIGHT,
            a: -p,
            b: q,
            c: 0,
        });
    }
    Ok(())
}

/// LFT2(a, b): R(x) = 1 + a/x and S(x) = x/b with a > 0, b > 1.
pub fn lft2(a: f64, b: f64) -> Result<GeneratorSystem<f64>> {
    if !(a > 0.0) || !(b > 1.0) {
        return Err(Error::Domain("LFT2 requires a > 0 and b > 1".into()));
    }
    let symbols = vec![
        ("R".to_string(), Mat2::new(1.0, a, 1.0, 0.0)),
        ("S".to_string(), Mat2::new(1.0, 0.0, 0.0, b)),
    ];
    let params = BTreeMap::from([("a".to_string(), a), ("b".to_string(), b)]);
    Ok(
        GeneratorSystem::new("LFT2", symbols, params)?.with_roles(LadderRoles {
            r_sym: "R".into(),
            s_sym: "S".into(),
            c_sym: None,
            step: 1,
            a,
            u: 1.0,
            b,
            c: None,
        }),
    )
}

/// Exact-rational LFT2 for identity verification.
pub fn lft2_exact(a: BigRational, b: BigRational) -> Result<GeneratorSystem<BigRational>> {
    let one = <BigRational as Coeff>::one();
    let zero = <BigRational as Coeff>::zero();
    let symbols = vec![
        (
            "R".to_string(),
            Mat2::new(one.clone(), a.clone(), one.clone(), zero.clone()),
        ),
        (
            "S".to_string(),
            Mat2::new(one.clone(), zero.clone(), zero, b.clone()),
        ),
    ];
    let params = BTreeMap::from([("a".to_string(), a), ("b".to_string(), b)]);
    GeneratorSystem::new("LFT2", symbols, params)
}

/// LFT3(a, b, c): adds C(x) = x/c to LFT2; requires ln c / ln b irrational
/// (certified at bounded height).
pub fn lft3(a: f64, b: f64, c: f64) -> Result<GeneratorSystem<f64>> {
    if !(a > 0.0) || !(b > 1.0) || !(c > 0.0) || c == 1.0 {
        return Err(Error::Domain(
            "LFT3 requires a, c > 0, b > 1, c != 1".into(),
        ));
    }
    check_irrational_log_ratio(c, b)?;
    let symbols = vec![
        ("R".to_string(), Mat2::new(1.0, a, 1.0, 0.0)),
        ("S".to_string(), Mat2::new(1.0, 0.0, 0.0, b)),
        ("C".to_string(), Mat2::new(1.0, 0.0, 0.0, c)),
    ];
    let params = BTreeMap::from([
        ("a".to_string(), a),
        ("b".to_string(), b),
        ("c".to_string(), c),
    ]);
    Ok(
        GeneratorSystem::new("LFT3", symbols, params)?.with_roles(LadderRoles {
            r_sym: "R".into(),
            s_sym: "S".into(),
            c_sym: Some("C".into()),
            step: 1,
            a,
            u: 1.0,
            b,
            c: Some(c),
        }),
    )
}

/// MAT3+(a, b, c): the nonnegative matrix triple
/// C = [[c,0],[0,1]], B = [[1,0],[0,b]], A = [[1,a],[1,0]]
/// with a > 0, b > 1 > c > 0 and ln c / ln b irrational. Projectively A, B
/// and C act as R, x/b and x/(1/c).
pub fn mat3_plus(a: f64, b: f64, c: f64) -> Result<GeneratorSystem<f64>> {
    if !(a > 0.0) || !(b > 1.0) || !(c > 0.0) || !(c < 1.0) {
        return Err(Error::Domain(
            "MAT3+ requires a > 0 and b > 1 > c > 0".into(),
        ));
    }
    check_irrational_log_ratio(c, b)?;
    let symbols = vec![
        ("A".to_string(), Mat2::new(1.0, a, 1.0, 0.0)),
        ("B".to_string(), Mat2::new(1.0, 0.0, 0.0, b)),
        ("C".to_string(), Mat2::new(c, 0.0, 0.0, 1.0)),
    ];
    let params = BTreeMap::from([
        ("a".to_string(), a),
        ("b".to_string(), b),
        ("c".to_string(), c),
    ]);
    Ok(
        GeneratorSystem::new("MAT3+", symbols, params)?.with_roles(LadderRoles {
            r_sym: "A".into(),
            s_sym: "B".into(),
            c_sym: Some("C".into()),
            step: 1,
            a,
            u: 1.0,
            b,
            c: Some(1.0 / c),
        }),
    )
}

/// MAT3-(a, b, c): the signed triple
/// C = [[-c,0],[0,1]], B = [[1,0],[0,-b]], A = [[1,a],[1,0]].
/// Squares of B and C are nonnegative, so the ladder runs on even powers
/// (role step 2 with projective bases b^2 and 1/c^2).
pub fn mat3_pm(a: f64, b: f64, c: f64) -> Result<GeneratorSystem<f64>> {
    if !(a > 0.0) || !(b > 1.0) || !(c > 0.0) || !(c < 1.0) {
        return Err(Error::Domain(
            "MAT3- requires a > 0 and b > 1 > c > 0".into(),
        ));
    }
    check_irrational_log_ratio(c, b)?;
    let symbols = vec![
        ("A".to_string(), Mat2::new(1.0, a, 1.0, 0.0)),
        ("B".to_string(), Mat2::new(1.0, 0.0, 0.0, -b)),
        ("C".to_string(), Mat2::new(-c, 0.0, 0.0, 1.0)),
    ];
    let params = BTreeMap::from([
        ("a".to_string(), a),
        ("b".to_string(), b),
        ("c".to_string(), c),
    ]);
    Ok(
        GeneratorSystem::new("MAT3-", symbols, params)?.with_roles(LadderRoles {
            r_sym: "A".into(),
            s_sym: "B".into(),
            c_sym: Some("C".into()),
            step: 2,
            a,
            u: 1.0,
            b: b * b,
            c: Some(1.0 / (c * c)),
        }),
    )
}

/// EXR: the explicit real pair A = [[1, 1/2], [1, 0]], B = [[1, 0], [0, -8/3]]
/// with the derived symbol C = A B A^3 B A = [[-2/9, 0], [0, 1]]. Words leave
/// the library with every C expanded, so results use two generators only.
pub fn exr() -> Result<GeneratorSystem<f64>> {
    let sys = mat3_pm(0.5, 8.0 / 3.0, 2.0 / 9.0)?;
    let mut sys = GeneratorSystem {
        name: "EXR".into(),
        ..sys
    };
    sys = sys.with_derived("C", parse_word("A B A^3 B A").expect("static word"));
    Ok(sys)
}

/// Exact-rational EXR over the base pair only (A, B).
pub fn exr_exact() -> GeneratorSystem<BigRational> {
    let symbols = vec![
        (
            "A".to_string(),
            Mat2::new(rat(1, 1), rat(1, 2), rat(1, 1), rat(0, 1)),
        ),
        (
            "B".to_string(),
            Mat2::new(rat(1, 1), rat(0, 1), rat(0, 1), rat(-8, 3)),
        ),
    ];
    let params = BTreeMap::from([
        ("a".to_string(), rat(1, 2)),
        ("b".to_string(), rat(8, 3)),
        ("c".to_string(), rat(2, 9)),
    ]);
    GeneratorSystem::new("EXR", symbols, params)
        .expect("static system")
        .with_derived("C", parse_word("A B A^3 B A").expect("static word"))
}

/// Exact EXR including the derived C as an explicit symbol.
pub fn exr_exact_with_c() -> GeneratorSystem<BigRational> {
    let base = exr_exact();
    let mut symbols: Vec<(String, Mat2<BigRational>)> = vec![
        ("A".to_string(), base.matrix("A").unwrap().clone()),
        ("B".to_string(), base.matrix("B").unwrap().clone()),
        (
            "C".to_string(),
            Mat2::new(rat(-2, 9), rat(0, 1), rat(0, 1), rat(1, 1)),
        ),
    ];
    let params = base.params.clone();
    let sys =
        GeneratorSystem::new("EXR", std::mem::take(&mut symbols), params).expect("static system");
    sys.with_derived("C", parse_word("A B A^3 B A").expect("static word"))
}

/// Two-generator complex pair R(x) = u + a/x, S(x) = x/b with b = r i,
/// r > 1 and a, u nonzero: the projective ladder needs nothing else.
pub fn lft2_complex(
    a: Complex64,
    u: Complex64,
    b: Complex64,
) -> Result<GeneratorSystem<Complex64>> {
    if a.is_zero_val() || u.is_zero_val() {
        return Err(Error::Domain("complex pair requires a, u nonzero".into()));
    }
    if b.re.abs() > 1e-12 * b.norm() || !(b.im > 1.0) {
        return Err(Error::Domain(
            "complex pair requires b = r*i purely imaginary with r > 1".into(),
        ));
    }
    let one = Complex64::ONE;
    let zero = Complex64::ZERO;
    let symbols = vec![
        ("R".to_string(), Mat2::new(u, a, one, zero)),
        ("S".to_string(), Mat2::new(one, zero, zero, b)),
    ];
    let params = BTreeMap::from([
        ("a".to_string(), a),
        ("b".to_string(), b),
        ("u".to_string(), u),
    ]);
    Ok(
        GeneratorSystem::new("LFT2C", symbols, params)?.with_roles(LadderRoles {
            r_sym: "R".into(),
            s_sym: "S".into(),
            c_sym: None,
            step: 1,
            a,
            u,
            b,
            c: None,
        }),
    )
}

/// CPLX3(a, b, c, u): C = [[c,0],[0,1]], B = [[1,0],[0,b]], A = [[u,a],[1,0]]
/// with a, u nonzero, b = r i purely imaginary with r > 1 > |c|, and
/// (1, ln|c|/ln|b|, arg(c)/2pi) rationally independent at bounded height.
pub fn cplx3(
    a: Complex64,
    b: Complex64,
    c: Complex64,
    u: Complex64,
) -> Result<GeneratorSystem<Complex64>> {
    if a.is_zero_val() || u.is_zero_val() {
        return Err(Error::Domain("CPLX3 requires a, u nonzero".into()));
    }
    if b.re.abs() > 1e-12 * b.norm() || !(b.im > 1.0) {
        return Err(Error::Domain(
            "CPLX3 requires b = r*i purely imaginary with r > 1".into(),
        ));
    }
    if !(c.norm() < 1.0) || c.is_zero_val() {
        return Err(Error::Domain("CPLX3 requires 0 < |c| < 1".into()));
    }
    let theta1 = c.norm().ln() / b.norm().ln();
    let theta2 = c.arg() / std::f64::consts::TAU;
    let cert = independence_certificate(theta1, theta2, PRECONDITION_HEIGHT)?;
    if let IndependenceVerdict::RelationFound { a, b, c } = cert.verdict {
        return Err(Error::IndependenceSuspect {
            height: PRECONDITION_HEIGHT,
            a,
            b,
            c,
        });
    }
    let one = Complex64::ONE;
    let zero = Complex64::ZERO;
    let symbols = vec![
        ("A".to_string(), Mat2::new(u, a, one, zero)),
        ("B".to_string(), Mat2::new(one, zero, zero, b)),
        ("C".to_string(), Mat2::new(c, zero, zero, one)),
    ];
    let params = BTreeMap::from([
        ("a".to_string(), a),
        ("b".to_string(), b),
        ("c".to_string(), c),
        ("u".to_string(), u),
    ]);
    Ok(
        GeneratorSystem::new("CPLX3", symbols, params)?.with_roles(LadderRoles {
            r_sym: "A".into(),
            s_sym: "B".into(),
            c_sym: Some("C".into()),
            step: 1,
            a,
            u,
            b,
            c: Some(one / c),
        }),
    )
}

/// EXC2(r): the two-generator complex pair of the parametrized example,
/// with the derived symbol C = A B A^3 B A = [[c,0],[0,1]]. Parameters come
/// from [`crate::synthesis::exc2_params`]. Construction checks r > 3 and
/// the defining identities; the rational-independence condition holds only
/// for cocountably many r and is certified where it is actually needed
/// (the matrix-density synthesis), not here.
pub fn exc2(r: f64) -> Result<GeneratorSystem<Complex64>> {
    let p = crate::synthesis::exc2_params(r)?;
    let one = Complex64::ONE;
    let zero = Complex64::ZERO;
    let symbols = vec![
        ("A".to_string(), Mat2::new(p.u, p.a, one, zero)),
        ("B".to_string(), Mat2::new(one, zero, zero, p.b)),
        ("C".to_string(), Mat2::new(p.c, zero, zero, one)),
    ];
    let params = BTreeMap::from([
        ("a".to_string(), p.a),
        ("b".to_string(), p.b),
        ("c".to_string(), p.c),
        ("u".to_string(), p.u),
        ("r".to_string(), Complex64::new(r, 0.0)),
    ]);
    let sys = GeneratorSystem::new("EXC2", symbols, params)?.with_roles(LadderRoles {
        r_sym: "A".into(),
        s_sym: "B".into(),
        c_sym: Some("C".into()),
        step: 1,
        a: p.a,
        u: p.u,
        b: p.b,
        c: Some(one / p.c),
    });
    Ok(sys.with_derived("C", parse_word("A B A^3 B A").expect("static word")))
}

/// Exact MAT3- style system over rationals for symbolic checks.
pub fn mat3_plus_exact(
    a: BigRational,
    b: BigRational,
    c: BigRational,
) -> Result<GeneratorSystem<BigRational>> {
    let one = <BigRational as Coeff>::one();
    let zero = <BigRational as Coeff>::zero();
    let symbols = vec![
        (
            "A".to_string(),
            Mat2::new(one.clone(), a.clone(), one.clone(), zero.clone()),
        ),
        (
            "B".to_string(),
            Mat2::new(one.clone(), zero.clone(), zero.clone(), b.clone()),
        ),
        (
            "C".to_string(),
            Mat2::new(c.clone(), zero.clone(), zero, one),
        ),
    ];
    let params = BTreeMap::from([
        ("a".to_string(), a),
        ("b".to_string(), b),
        ("c".to_string(), c),
    ]);
    GeneratorSystem::new("MAT3+", symbols, params)
}

/// Float system re-expressed over exact rationals (entries are dyadic).
pub fn to_exact(sys: &GeneratorSystem<f64>) -> GeneratorSystem<BigRational> {
    let symbols = sys
        .symbols()
        .map(|s| {
            let m = sys.matrix(s).unwrap();
            (
                s.to_string(),
                Mat2::new(
                    rat_from_f64(m.m11),
                    rat_from_f64(m.m12),
                    rat_from_f64(m.m21),
                    rat_from_f64(m.m22),
                ),
            )
        })
        .collect();
    let params = sys
        .params
        .iter()
        .map(|(k, v)| (k.clone(), rat_from_f64(*v)))
        .collect();
    GeneratorSystem::new(sys.name.clone(), symbols, params).expect("invertible by construction")
}

/// Look up a built-in real system by name with parameters.
pub fn by_name_real(name: &str, params: &BTreeMap<String, f64>) -> Result<GeneratorSystem<f64>> {
    let get = |k: &str| -> Result<f64> {
        params
            .get(k)
            .copied()
            .ok_or_else(|| Error::Domain(format!("system {name} requires parameter `{k}`")))
    };
    match name {
        "LFT2" => lft2(get("a")?, get("b")?),
        "LFT3" => lft3(get("a")?, get("b")?, get("c")?),
        "MAT3+" => mat3_plus(get("a")?, get("b")?, get("c")?),
        "MAT3-" | "MAT3±" => mat3_pm(get("a")?, get("b")?, get("c")?),
        "EXR" => exr(),
        _ => Err(Error::Domain(format!("unknown real system `{name}`"))),
    }
}

/// Look up a built-in complex system by name with parameters.
pub fn by_name_complex(
    name: &str,
    params: &BTreeMap<String, Complex64>,
) -> Result<GeneratorSystem<Complex64>> {
    let get = |k: &str| -> Result<Complex64> {
        params
            .get(k)
            .copied()
            .ok_or_else(|| Error::Domain(format!("system {name} requires parameter `{k}`")))
    };
    match name {
        "CPLX3" => cplx3(get("a")?, get("b")?, get("c")?, get("u")?),
        "EXC2" => {
            let r = get("r")?;
            if r.im.abs() > 1e-12 {
                return Err(Error::Domain("EXC2 parameter r must be real".into()));
            }
            exc2(r.re)
        }
        _ => Err(Error::Domain(format!("unknown complex system `{name}`"))),
    }
}
