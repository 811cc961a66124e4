//! Generator systems, words over them, and deterministic word evaluation
//! with overflow-safe renormalization.
//!
//! Raw letter products routinely span thousands of orders of magnitude
//! (powers like S^m carry b^m), so evaluation runs on matrices whose entries
//! carry an explicit binary exponent next to an f64 mantissa. The final
//! collapse extracts one positive scalar (as `log_scale`) plus a unit phase
//! and leaves a canonical max-modulus-1 representative; entries more than a
//! thousand orders below the pivot underflow to zero harmlessly.

use crate::error::{Error, Result};
use crate::mat2::{Mat2, ProjectiveMap, TAU_DET};
use crate::scalar::{Coeff, FloatCoeff};
use num_rational::BigRational;
use std::collections::BTreeMap;
use std::fmt;

/// One run of a word: a generator symbol raised to a positive exponent.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Letter {
    pub symbol: String,
    pub exponent: u32,
}

/// A finite product of generators in run-length canonical form: exponents
/// are at least 1 and adjacent letters carry distinct symbols. The empty
/// word is the identity. The leftmost letter is applied last, so the word
/// `[f, g]` denotes f o g with matrix product M_f * M_g.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    pub fn from_letters<I, S>(letters: I) -> Self
    where
        I: IntoIterator<Item = (S, u32)>,
        S: Into<String>,
    {
        let mut w = Word::empty();
        for (s, e) in letters {
            w.push(s.into(), e);
        }
        w
    }

    /// Append `symbol^exponent`, merging with the trailing run.
    pub fn push(&mut self, symbol: impl Into<String>, exponent: u32) {
        if exponent == 0 {
            return;
        }
        let symbol = symbol.into();
        if let Some(last) = self.letters.last_mut() {
            if last.symbol == symbol {
                last.exponent += exponent;
                return;
            }
        }
        self.letters.push(Letter { symbol, exponent });
    }

    pub fn concat(&self, rhs: &Word) -> Word {
        let mut out = self.clone();
        for l in &rhs.letters {
            out.push(l.symbol.clone(), l.exponent);
        }
        out
    }

    pub fn pow(&self, k: u32) -> Word {
        let mut out = Word::empty();
        for _ in 0..k {
            out = out.concat(self);
        }
        out
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Total letter count (sum of exponents).
    pub fn total_length(&self) -> u64 {
        self.letters.iter().map(|l| u64::from(l.exponent)).sum()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            if l.exponent == 1 {
                write!(f, "{}", l.symbol)?;
            } else {
                write!(f, "{}^{}", l.symbol, l.exponent)?;
            }
        }
        Ok(())
    }
}

/// Parse the `SYM` / `SYM^k` whitespace-separated grammar, k >= 1.
pub fn parse_word(s: &str) -> Result<Word> {
    let mut w = Word::empty();
    let mut pos = 0usize;
    for token in s.split_whitespace() {
        // Recover the byte position of this token for error reporting.
        let at = s[pos..].find(token).map(|p| p + pos).unwrap_or(pos);
        pos = at + token.len();
        let (sym, exp) = match token.split_once('^') {
            None => (token, 1u32),
            Some((sym, e)) => {
                let exp: u32 = e.parse().map_err(|_| Error::Syntax {
                    position: at,
                    message: format!("invalid exponent `{e}`"),
                })?;
                if exp == 0 {
                    return Err(Error::Syntax {
                        position: at,
                        message: "exponent must be at least 1".into(),
                    });
                }
                (sym, exp)
            }
        };
        if sym.is_empty() || !sym.chars().all(|c| c.is_alphanumeric() || c == '_') {
            return Err(Error::Syntax {
                position: at,
                message: format!("invalid symbol `{sym}`"),
            });
        }
        w.push(sym, exp);
    }
    Ok(w)
}

impl std::str::FromStr for Word {
    type Err = Error;
    fn from_str(s: &str) -> Result<Word> {
        parse_word(s)
    }
}

/// Homomorphic symbol replacement followed by run-length recanonicalization.
pub fn substitute(w: &Word, table: &BTreeMap<String, Word>) -> Result<Word> {
    for (sym, rep) in table {
        if rep.is_empty() {
            return Err(Error::Domain(format!(
                "replacement for `{sym}` must be nonempty"
            )));
        }
    }
    let mut out = Word::empty();
    for l in &w.letters {
        match table.get(&l.symbol) {
            None => out.push(l.symbol.clone(), l.exponent),
            Some(rep) => out = out.concat(&rep.pow(l.exponent)),
        }
    }
    Ok(out)
}

/// Role assignment that lets the synthesis ladder run over any system whose
/// generators act projectively as u + a/x, x/b and (optionally) x/c. The
/// `step` multiplier maps one ladder exponent to `step` letters, which is how
/// the signed matrix systems expose their nonnegative squares.
#[derive(Debug, Clone)]
pub struct LadderRoles<T> {
    pub r_sym: String,
    pub s_sym: String,
    pub c_sym: Option<String>,
    pub step: u32,
    pub a: T,
    pub u: T,
    pub b: T,
    pub c: Option<T>,
}

/// Named generator symbols bound to matrices, plus the scalar parameters
/// that define them.
#[derive(Debug, Clone)]
pub struct GeneratorSystem<T> {
    pub name: String,
    pub(crate) symbols: Vec<(String, Mat2<T>)>,
    pub params: BTreeMap<String, T>,
    pub(crate) roles: Option<LadderRoles<T>>,
    /// Derived symbol expanded into base letters before words leave the
    /// library (Example-style two-generator systems).
    pub(crate) derived: Option<(String, Word)>,
}

impl<T: Coeff> GeneratorSystem<T> {
    pub fn new(
        name: impl Into<String>,
        symbols: Vec<(String, Mat2<T>)>,
        params: BTreeMap<String, T>,
    ) -> Result<Self> {
        let sys = GeneratorSystem {
            name: name.into(),
            symbols,
            params,
            roles: None,
            derived: None,
        };
        for (sym, m) in &sys.symbols {
            let norm = m.fro_norm();
            if m.det().modulus() <= TAU_DET * norm * norm {
                return Err(Error::Domain(format!("generator `{sym}` is singular")));
            }
        }
        Ok(sys)
    }

    pub(crate) fn with_roles(mut self, roles: LadderRoles<T>) -> Self {
        self.roles = Some(roles);
        self
    }

    pub(crate) fn with_derived(mut self, symbol: impl Into<String>, expansion: Word) -> Self {
        self.derived = Some((symbol.into(), expansion));
        self
    }

    pub fn symbols(&self) -> impl Iterator<Item = &str> {
        self.symbols.iter().map(|(s, _)| s.as_str())
    }

    pub fn symbol_count(&self) -> usize {
        self.symbols.len()
    }

    pub fn matrix(&self, symbol: &str) -> Result<&Mat2<T>> {
        self.symbols
            .iter()
            .find(|(s, _)| s == symbol)
            .map(|(_, m)| m)
            .ok_or_else(|| Error::UnknownSymbol(symbol.to_string()))
    }

    pub(crate) fn roles(&self) -> Result<&LadderRoles<T>> {
        self.roles
            .as_ref()
            .ok_or_else(|| Error::Domain(format!("system `{}` has no ladder roles", self.name)))
    }

    /// Substitution table expanding the derived symbol, if the system has one.
    pub fn derived_table(&self) -> BTreeMap<String, Word> {
        let mut t = BTreeMap::new();
        if let Some((sym, w)) = &self.derived {
            t.insert(sym.clone(), w.clone());
        }
        t
    }
}

// ---------------------------------------------------------------------------
// Scaled evaluation
// ---------------------------------------------------------------------------

/// An entry m * 2^e; the mantissa is kept within 2^(+/-64) of unity.
#[derive(Debug, Clone, Copy)]
struct Scaled<T> {
    m: T,
    e: i64,
}

impl<T: FloatCoeff> Scaled<T> {
    fn zero() -> Self {
        Scaled { m: T::zero(), e: 0 }
    }

    fn from_val(v: T) -> Self {
        Scaled { m: v, e: 0 }.renorm()
    }

    fn renorm(mut self) -> Self {
        let mag = self.m.modulus();
        if mag == 0.0 {
            return Scaled::zero();
        }
        let sh = mag.log2().floor();
        if sh.abs() >= 64.0 {
            let sh = sh as i32;
            self.m = self.m.mul_pow2(-sh);
            self.e += i64::from(sh);
        }
        self
    }

    fn mul(self, o: Self) -> Self {
        Scaled {
            m: self.m * o.m,
            e: self.e + o.e,
        }
        .renorm()
    }

    fn add(self, o: Self) -> Self {
        if self.m.is_zero_val() {
            return o;
        }
        if o.m.is_zero_val() {
            return self;
        }
        let (hi, lo) = if self.e >= o.e { (self, o) } else { (o, self) };
        let gap = hi.e - lo.e;
        if gap > 2200 {
            return hi;
        }
        Scaled {
            m: hi.m + lo.m.mul_pow2(-(gap as i32)),
            e: hi.e,
        }
        .renorm()
    }

    /// log2 of the modulus, -inf for zero.
    fn log2_mod(&self) -> f64 {
        if self.m.is_zero_val() {
            f64::NEG_INFINITY
        } else {
            self.m.modulus().log2() + self.e as f64
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct SMat2<T> {
    e: [Scaled<T>; 4],
}

impl<T: FloatCoeff> SMat2<T> {
    fn identity() -> Self {
        SMat2 {
            e: [
                Scaled::from_val(T::one()),
                Scaled::zero(),
                Scaled::zero(),
                Scaled::from_val(T::one()),
            ],
        }
    }

    fn from_mat(m: &Mat2<T>) -> Self {
        SMat2 {
            e: [
                Scaled::from_val(m.m11),
                Scaled::from_val(m.m12),
                Scaled::from_val(m.m21),
                Scaled::from_val(m.m22),
            ],
        }
    }

    fn mul(&self, o: &Self) -> Self {
        let a = &self.e;
        let b = &o.e;
        SMat2 {
            e: [
                a[0].mul(b[0]).add(a[1].mul(b[2])),
                a[0].mul(b[1]).add(a[1].mul(b[3])),
                a[2].mul(b[0]).add(a[3].mul(b[2])),
                a[2].mul(b[1]).add(a[3].mul(b[3])),
            ],
        }
    }

    fn pow(&self, mut k: u32) -> Self {
        let mut base = *self;
        let mut acc = SMat2::identity();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    fn is_finite(&self) -> bool {
        self.e.iter().all(|s| s.m.is_finite_val())
    }

    fn is_zero(&self) -> bool {
        self.e.iter().all(|s| s.m.is_zero_val())
    }

    /// Extract (canonical representative, log_scale, phase) with
    /// raw = phase * exp(log_scale) * rep.
    fn collapse(&self) -> (Mat2<T>, f64, T) {
        let mut pivot = 0;
        for i in 1..4 {
            if self.e[i].log2_mod() > self.e[pivot].log2_mod() {
                pivot = i;
            }
        }
        let p = self.e[pivot];
        let phase = p.m.phase();
        let log_scale = p.m.modulus().ln() + (p.e as f64) * std::f64::consts::LN_2;
        let entry = |i: usize| -> T {
            let s = self.e[i];
            if s.m.is_zero_val() {
                return T::zero();
            }
            let gap = s.e - p.e;
            if gap < -2200 {
                return T::zero();
            }
            (s.m / p.m).mul_pow2(gap as i32)
        };
        let rep = Mat2::new(entry(0), entry(1), entry(2), entry(3));
        (rep, log_scale, phase)
    }
}

/// A word product split into projective content and extracted scale:
/// `phase * exp(log_scale) * projective.rep()` reconstructs the raw product
/// of the generator matrices.
#[derive(Debug, Clone, Copy)]
pub struct EvaluatedWord<T> {
    pub projective: ProjectiveMap<T>,
    pub log_scale: f64,
    pub phase: T,
}

impl<T: FloatCoeff> EvaluatedWord<T> {
    pub fn identity() -> Self {
        EvaluatedWord {
            projective: ProjectiveMap::identity(),
            log_scale: 0.0,
            phase: T::one(),
        }
    }

    /// Composition tracking the extracted scales, so that log_scales add.
    pub fn compose(&self, rhs: &Self) -> Self {
        let raw = self.projective.rep().mul(rhs.projective.rep());
        let (rep, ls, ph) = SMat2::from_mat(&raw).collapse();
        EvaluatedWord {
            projective: ProjectiveMap::from_rep(rep),
            log_scale: self.log_scale + rhs.log_scale + ls,
            phase: self.phase * rhs.phase * ph,
        }
    }
}

/// Deterministic left-to-right evaluation (leftmost letter applied last):
/// the running product is renormalized after every multiplication, with the
/// positive factor accumulated in `log_scale` and the unit factor in `phase`.
pub fn evaluate<T: FloatCoeff>(w: &Word, sys: &GeneratorSystem<T>) -> Result<EvaluatedWord<T>> {
    let mut running = SMat2::identity();
    for (i, l) in w.letters.iter().enumerate() {
        let m = sys.matrix(&l.symbol)?;
        running = running.mul(&SMat2::from_mat(m).pow(l.exponent));
        if !running.is_finite() || running.is_zero() {
            return Err(Error::SingularProduct { letter: i });
        }
    }
    let (rep, log_scale, phase) = running.collapse();
    Ok(EvaluatedWord {
        projective: ProjectiveMap::from_rep(rep),
        log_scale,
        phase,
    })
}

/// Exact word product over rational matrices; no renormalization is needed.
pub fn evaluate_exact(w: &Word, sys: &GeneratorSystem<BigRational>) -> Result<Mat2<BigRational>> {
    let mut running: Mat2<BigRational> = Mat2::identity();
    for l in w.letters.iter() {
        let m = sys.matrix(&l.symbol)?;
        let mut base = m.clone();
        let mut k = l.exponent;
        let mut acc: Mat2<BigRational> = Mat2::identity();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        running = running.mul(&acc);
    }
    Ok(running)
}

// ---------------------------------------------------------------------------
// Exhaustive enumeration
// ---------------------------------------------------------------------------

/// Number of symbol sequences of length 1..=max_len over k symbols.
pub fn word_count(k: usize, max_len: u32) -> u128 {
    let mut total: u128 = 0;
    let mut pow: u128 = 1;
    for _ in 0..max_len {
        pow = pow.saturating_mul(k as u128);
        total = total.saturating_add(pow);
    }
    total
}

/// Iterator over every word of total letter count <= max_len, each exactly
/// once, in length-lexicographic order (symbol order as listed in the system).
pub struct WordEnumerator {
    symbols: Vec<String>,
    max_len: u32,
    state: Vec<usize>,
    done: bool,
}

impl Iterator for WordEnumerator {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        if self.done {
            return None;
        }
        // Advance the odometer: lengths grow, digits cycle lexicographically.
        if self.state.is_empty() {
            self.state.push(0);
        } else {
            let mut i = self.state.len();
            loop {
                if i == 0 {
                    self.state = vec![0; self.state.len() + 1];
                    if self.state.len() as u32 > self.max_len {
                        self.done = true;
                        return None;
                    }
                    break;
                }
                i -= 1;
                self.state[i] += 1;
                if self.state[i] < self.symbols.len() {
                    break;
                }
                self.state[i] = 0;
            }
        }
        let mut w = Word::empty();
        for &d in &self.state {
            w.push(self.symbols[d].clone(), 1);
        }
        Some(w)
    }
}

pub fn enumerate_words<T: Coeff>(
    sys: &GeneratorSystem<T>,
    max_len: u32,
    cap: u128,
) -> Result<WordEnumerator> {
    if max_len > 24 {
        return Err(Error::Domain(format!("max_len {max_len} exceeds guard 24")));
    }
    let count = word_count(sys.symbol_count(), max_len);
    if count > cap {
        return Err(Error::BudgetExceeded(format!(
            "enumeration would yield {count} words, cap is {cap}"
        )));
    }
    Ok(WordEnumerator {
        symbols: sys.symbols().map(String::from).collect(),
        max_len,
        state: Vec::new(),
        done: max_len == 0,
    })
}
