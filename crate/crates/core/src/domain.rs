//! Points of the universal cover of ℂ∖{0,1}, path words in the free group
//! on the loops `c0`, `c1`, and the sheet-function basis `M_α[k]`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{DomainError, Error, Result};
use crate::numkernel::{c64, c_alpha, hankel_pow, principal_log, Order, TWO_PI};

/// Default clearance from the branch points and the cut.
pub const DEFAULT_EPS_CUT: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    /// Loop around 0.
    C0,
    /// Loop around 1.
    C1,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub generator: Generator,
    pub exponent: i64,
}

impl Letter {
    pub fn new(generator: Generator, exponent: i64) -> Self {
        Letter {
            generator,
            exponent,
        }
    }
}

/// Reduced word in `c0^{±1}`, `c1^{±1}`. The empty word is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct PathWord {
    letters: Vec<Letter>,
}

impl PathWord {
    pub fn identity() -> Self {
        PathWord::default()
    }

    /// Builds the reduced word for an arbitrary letter sequence.
    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if l.exponent == 0 {
                continue;
            }
            match out.last_mut() {
                Some(last) if last.generator == l.generator => {
                    last.exponent += l.exponent;
                    if last.exponent == 0 {
                        out.pop();
                    }
                }
                _ => out.push(l),
            }
        }
        PathWord { letters: out }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// Number of letters (not the sum of exponents).
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        PathWord {
            letters: self
                .letters
                .iter()
                .rev()
                .map(|l| Letter::new(l.generator, -l.exponent))
                .collect(),
        }
    }

    /// Word product `self · other` (reduced).
    pub fn concat(&self, other: &PathWord) -> Self {
        PathWord::from_letters(self.letters.iter().chain(other.letters.iter()).copied())
    }
}

/// Free reduction. Words built through [`PathWord`] constructors are already
/// reduced, so this is the identity on them; it exists for letter sequences
/// assembled by hand.
pub fn reduce_word(w: &PathWord) -> PathWord {
    PathWord::from_letters(w.letters.iter().copied())
}

impl fmt::Display for PathWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for l in &self.letters {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            let g = match l.generator {
                Generator::C0 => "c0",
                Generator::C1 => "c1",
            };
            if l.exponent == 1 {
                f.write_str(g)?;
            } else {
                write!(f, "{g}^{}", l.exponent)?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordParseError(pub String);

impl fmt::Display for WordParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid path word: {}", self.0)
    }
}

impl std::error::Error for WordParseError {}

impl FromStr for PathWord {
    type Err = WordParseError;

    /// Parses `c1 c0^-2 c1^3`; the empty string is the identity.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let mut letters = Vec::new();
        for tok in s.split_whitespace() {
            let (gen, exp) = match tok.split_once('^') {
                Some((g, e)) => {
                    let e: i64 = e
                        .parse()
                        .map_err(|_| WordParseError(format!("bad exponent in `{tok}`")))?;
                    (g, e)
                }
                None => (tok, 1),
            };
            let generator = match gen {
                "c0" => Generator::C0,
                "c1" => Generator::C1,
                _ => return Err(WordParseError(format!("unknown generator `{gen}`"))),
            };
            if exp == 0 {
                return Err(WordParseError(format!("zero exponent in `{tok}`")));
            }
            letters.push(Letter::new(generator, exp));
        }
        Ok(PathWord::from_letters(letters))
    }
}

/// A point `z` together with the homotopy class of a path from the base
/// point, recorded as the word of loops traversed before the straight path
/// to `z` in the cut plane.
#[derive(Debug, Clone, PartialEq)]
pub struct CoverPoint {
    z: Complex64,
    word: PathWord,
}

impl CoverPoint {
    pub fn new(z: Complex64, word: PathWord) -> Result<Self> {
        Self::with_clearance(z, word, DEFAULT_EPS_CUT)
    }

    pub fn with_clearance(z: Complex64, word: PathWord, eps_cut: f64) -> Result<Self> {
        if !(z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::domain("cover point must be finite"));
        }
        if z.norm() <= eps_cut || (z - 1.0).norm() <= eps_cut {
            return Err(DomainError::BranchPoint.into());
        }
        Ok(CoverPoint { z, word })
    }

    pub fn z(&self) -> Complex64 {
        self.z
    }

    pub fn word(&self) -> &PathWord {
        &self.word
    }
}

/// `λ·Li_α + Σ_k μ_k·M_α[k]`, sparse in `k`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct BranchVector {
    li_coeff: Complex64,
    m_coeffs: BTreeMap<i64, Complex64>,
}

impl BranchVector {
    /// The principal branch `Li_α` itself.
    pub fn identity() -> Self {
        BranchVector {
            li_coeff: c64(1.0, 0.0),
            m_coeffs: BTreeMap::new(),
        }
    }

    pub fn new(li_coeff: Complex64, m: impl IntoIterator<Item = (i64, Complex64)>) -> Self {
        let mut v = BranchVector {
            li_coeff,
            m_coeffs: BTreeMap::new(),
        };
        for (k, c) in m {
            v.add_m(k, c);
        }
        v
    }

    pub fn li_coeff(&self) -> Complex64 {
        self.li_coeff
    }

    pub fn set_li_coeff(&mut self, c: Complex64) {
        self.li_coeff = c;
    }

    /// Coefficient of `M_α[k]`, zero when absent.
    pub fn m_coeff(&self, k: i64) -> Complex64 {
        self.m_coeffs.get(&k).copied().unwrap_or_default()
    }

    pub fn m_coeffs(&self) -> &BTreeMap<i64, Complex64> {
        &self.m_coeffs
    }

    pub fn set_m(&mut self, k: i64, c: Complex64) {
        if c.norm() > 0.0 {
            self.m_coeffs.insert(k, c);
        } else {
            self.m_coeffs.remove(&k);
        }
    }

    pub fn add_m(&mut self, k: i64, c: Complex64) {
        let cur = self.m_coeff(k);
        self.set_m(k, cur + c);
    }

    /// Rebuilds the `M` coefficients under the index map `k ↦ k + shift`.
    pub fn shift_m(&mut self, shift: i64) {
        let old = std::mem::take(&mut self.m_coeffs);
        self.m_coeffs = old.into_iter().map(|(k, c)| (k + shift, c)).collect();
    }

    /// Largest coefficientwise distance to `other`.
    pub fn max_coeff_distance(&self, other: &BranchVector) -> f64 {
        let mut d = (self.li_coeff - other.li_coeff).norm();
        for k in self.m_coeffs.keys().chain(other.m_coeffs.keys()) {
            d = d.max((self.m_coeff(*k) - other.m_coeff(*k)).norm());
        }
        d
    }
}

/// Which backend produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Method {
    Series,
    Appell,
    Hankel,
    MittagLeffler,
    ZetaSeries,
    NegIntClosed,
    CoverTransport,
}

impl Method {
    pub fn name(&self) -> &'static str {
        match self {
            Method::Series => "Series",
            Method::Appell => "Appell",
            Method::Hankel => "Hankel",
            Method::MittagLeffler => "MittagLeffler",
            Method::ZetaSeries => "ZetaSeries",
            Method::NegIntClosed => "NegIntClosed",
            Method::CoverTransport => "CoverTransport",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let m = match s.to_ascii_lowercase().as_str() {
            "series" => Method::Series,
            "appell" => Method::Appell,
            "hankel" => Method::Hankel,
            "mittagleffler" | "mittag-leffler" | "ml" => Method::MittagLeffler,
            "zetaseries" | "zeta-series" | "zeta" => Method::ZetaSeries,
            "negintclosed" | "negint" | "closed" => Method::NegIntClosed,
            _ => return Err(format!("unknown method `{s}`")),
        };
        Ok(m)
    }
}

/// A value with the error bound claimed by the backend that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult {
    pub value: Complex64,
    pub err_estimate: f64,
    pub method: Method,
}

impl EvalResult {
    pub fn new(value: Complex64, err_estimate: f64, method: Method) -> Self {
        EvalResult {
            value,
            err_estimate,
            method,
        }
    }
}

/// `M_α[k](z) = C_α (log z + 2πik)^{α−1}`.
///
/// `log z` is the principal logarithm; the power is taken with
/// `arg ∈ [0, 2π)` ([`hankel_pow`]), so that `M_α[0]` is analytic on
/// ℂ∖((−∞,0] ∪ [1,∞)) like the principal branch of `Li_α`, and jumps across
/// `(1, ∞)` by the factor `e^{2πiα}`.
pub fn m_alpha_k(a: Order, z: Complex64, k: i64) -> Result<Complex64> {
    let c = c_alpha(a)?;
    let arg = principal_log(z)? + c64(0.0, TWO_PI * k as f64);
    if arg.re == 0.0 && arg.im == 0.0 {
        return Err(DomainError::BranchPoint.into());
    }
    Ok(c * hankel_pow(arg, a.alpha() - 1.0)?)
}

/// Evaluates the sheet function `v` at `z` given the principal value of `Li_α(z)`.
pub fn branch_value(
    a: Order,
    v: &BranchVector,
    z: Complex64,
    principal: EvalResult,
) -> Result<EvalResult> {
    let mut value = v.li_coeff() * principal.value;
    let mut err = v.li_coeff().norm() * principal.err_estimate;
    for (&k, &mu) in v.m_coeffs() {
        let m = m_alpha_k(a, z, k)?;
        let term = mu * m;
        value += term;
        // closed-form term: a few ulps relative
        err += 8.0 * f64::EPSILON * term.norm();
    }
    let method = if v == &BranchVector::identity() {
        principal.method
    } else {
        Method::CoverTransport
    };
    Ok(EvalResult::new(value, err, method))
}
