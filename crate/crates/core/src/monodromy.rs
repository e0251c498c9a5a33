//! Action of the loops `c0`, `c1` on the span of `{Li_α, M_α[k]}`.
//!
//! Continuing `Li_α` once around 0 leaves it unchanged and moves each
//! `M_α[k]` to `M_α[k+1]`. Continuing once around 1 adds `(e^{2πiα} − 1)M_α[0]`
//! to `Li_α`, multiplies `M_α[0]` by `e^{2πiα}` and fixes the other `M_α[k]`.
//! Words are read as compositions: in `c0 c1` the loop `c1` is traversed
//! first.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::Serialize;

use crate::domain::{
    branch_value, BranchVector, CoverPoint, EvalResult, Generator, Letter, PathWord,
};
use crate::error::Result;
use crate::evaluators::{eval_auto, ToleranceConfig};
use crate::numkernel::{monodromy_factor, Order, DEFAULT_EPS_INT};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GeneratorAction {
    C0,
    C1,
    C0inv,
    C1inv,
}

impl GeneratorAction {
    pub fn from_letter(generator: Generator, inverse: bool) -> Self {
        match (generator, inverse) {
            (Generator::C0, false) => GeneratorAction::C0,
            (Generator::C0, true) => GeneratorAction::C0inv,
            (Generator::C1, false) => GeneratorAction::C1,
            (Generator::C1, true) => GeneratorAction::C1inv,
        }
    }
}

/// Applies one loop to the sheet function `v`.
pub fn apply_generator(v: &BranchVector, g: GeneratorAction, a: Order) -> Result<BranchVector> {
    a.require_non_integer(DEFAULT_EPS_INT)?;
    let mut out = v.clone();
    let e = monodromy_factor(a.alpha());
    let lambda = v.li_coeff();
    match g {
        GeneratorAction::C0 => out.shift_m(1),
        GeneratorAction::C0inv => out.shift_m(-1),
        GeneratorAction::C1 => out.set_m(0, e * v.m_coeff(0) + (e - 1.0) * lambda),
        GeneratorAction::C1inv => out.set_m(0, (v.m_coeff(0) - (e - 1.0) * lambda) / e),
    }
    Ok(out)
}

/// Integer Laurent polynomial in `ε = e^{2πiα}`, the ring over which the
/// loop action is defined.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly(BTreeMap<i32, i128>);

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn monomial(power: i32, c: i128) -> Self {
        LaurentPoly::zero().plus(power, c)
    }

    pub fn constant(c: i128) -> Self {
        LaurentPoly::monomial(0, c)
    }

    /// Adds `c·ε^power`.
    pub fn plus(mut self, power: i32, c: i128) -> Self {
        let entry = self.0.entry(power).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.0.remove(&power);
        }
        self
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        other
            .0
            .iter()
            .fold(self.clone(), |acc, (&p, &c)| acc.plus(p, c))
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        other
            .0
            .iter()
            .fold(self.clone(), |acc, (&p, &c)| acc.plus(p, -c))
    }

    /// Multiplies by `ε^power`.
    pub fn shift(&self, power: i32) -> LaurentPoly {
        LaurentPoly(self.0.iter().map(|(&p, &c)| (p + power, c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// `(power, coefficient)` pairs in increasing power.
    pub fn terms(&self) -> impl Iterator<Item = (i32, i128)> + '_ {
        self.0.iter().map(|(&p, &c)| (p, c))
    }

    pub fn eval(&self, e: Complex64) -> Complex64 {
        self.0.iter().map(|(&p, &c)| e.powi(p) * c as f64).sum()
    }
}

/// [`BranchVector`] with coefficients in `ℤ[ε, ε⁻¹]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolicBranch {
    pub li: LaurentPoly,
    pub m: BTreeMap<i64, LaurentPoly>,
}

impl SymbolicBranch {
    pub fn identity() -> Self {
        SymbolicBranch {
            li: LaurentPoly::constant(1),
            m: BTreeMap::new(),
        }
    }

    fn m_coeff(&self, k: i64) -> LaurentPoly {
        self.m.get(&k).cloned().unwrap_or_default()
    }

    fn set_m(&mut self, k: i64, c: LaurentPoly) {
        if c.is_zero() {
            self.m.remove(&k);
        } else {
            self.m.insert(k, c);
        }
    }

    /// Same action as [`apply_generator`], exactly.
    pub fn apply(&self, g: GeneratorAction) -> SymbolicBranch {
        let mut out = self.clone();
        // (ε − 1)λ
        let lam_e = self.li.shift(1).sub(&self.li);
        match g {
            GeneratorAction::C0 | GeneratorAction::C0inv => {
                let d = if g == GeneratorAction::C0 { 1 } else { -1 };
                out.m = self.m.iter().map(|(&k, c)| (k + d, c.clone())).collect();
            }
            GeneratorAction::C1 => out.set_m(0, self.m_coeff(0).shift(1).add(&lam_e)),
            GeneratorAction::C1inv => out.set_m(0, self.m_coeff(0).sub(&lam_e).shift(-1)),
        }
        out
    }

    /// Applies the letters without free reduction, rightmost first.
    pub fn apply_letters(&self, letters: &[Letter]) -> SymbolicBranch {
        let mut out = self.clone();
        for l in letters.iter().rev() {
            let g = GeneratorAction::from_letter(l.generator, l.exponent < 0);
            for _ in 0..l.exponent.unsigned_abs() {
                out = out.apply(g);
            }
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self == &SymbolicBranch::identity()
    }

    pub fn eval(&self, a: Order) -> BranchVector {
        let e = monodromy_factor(a.alpha());
        BranchVector::new(self.li.eval(e), self.m.iter().map(|(&k, c)| (k, c.eval(e))))
    }
}

/// Exact sheet function reached from `Li_α` along `w`.
pub fn transport_symbolic(w: &PathWord) -> SymbolicBranch {
    SymbolicBranch::identity().apply_letters(w.letters())
}

/// Sheet function reached from `Li_α` along `w`. The word is applied in
/// `ℤ[ε, ε⁻¹]` and evaluated at `ε = e^{2πiα}` once at the end.
pub fn transport(w: &PathWord, a: Order) -> Result<BranchVector> {
    a.require_non_integer(DEFAULT_EPS_INT)?;
    Ok(transport_symbolic(w).eval(a))
}

/// `Li_α` at a point of the universal cover.
pub fn eval_cover(a: Order, p: &CoverPoint, cfg: &ToleranceConfig) -> Result<EvalResult> {
    a.require_non_integer(cfg.eps_int)?;
    let v = transport(p.word(), a)?;
    let principal = eval_auto(a, p.z(), cfg)?;
    branch_value(a, &v, p.z(), principal)
}

/// Which action of `c1` on `M_α[0]` to test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum C1Variant {
    /// `M[0] ↦ e^{2πiα} M[0]`, the action implemented by [`apply_generator`].
    Consistent,
    /// `M[0] ↦ −(1 − e^{2πiα}) M[0]`, read literally as a full monodromy.
    LiteralJump,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquivarianceReport {
    pub variant: C1Variant,
    /// Truncation `|k| ≤ k_max` of `Σ_k M[k]`.
    pub k_max: i64,
    /// Indices whose coefficients disagree.
    pub mismatched: Vec<i64>,
    /// Largest `|residual coefficient|` at the given `α`.
    pub residual: f64,
    /// Whether the residual vanishes as a polynomial in `e^{2πiα}`.
    pub exact_zero: bool,
    /// The terms with `|k| > k_max` are fixed by `c1` under either variant,
    /// so the truncation cannot hide a mismatch there.
    pub tail_fixed: bool,
}

pub const EQUIVARIANCE_K_MAX: i64 = 40;

/// Compares `c1` applied to `Li_α = Σ_k M_α[k]` termwise against the action
/// on `Li_α`, coefficient by coefficient in the basis `M_α[k]`.
pub fn ml_equivariance_check(a: Order, variant: C1Variant) -> EquivarianceReport {
    let e = monodromy_factor(a.alpha());
    let k_max = EQUIVARIANCE_K_MAX;
    let mut mismatched = Vec::new();
    let mut residual: f64 = 0.0;
    let mut exact_zero = true;
    for k in -k_max..=k_max {
        // Li ↦ Li + (ε − 1)M[0]: coefficient of M[k] in the image of ΣM[j]
        let via_li = if k == 0 {
            LaurentPoly::constant(1).plus(1, 1).plus(0, -1)
        } else {
            LaurentPoly::constant(1)
        };
        // termwise image of M[k]
        let termwise = match (k, variant) {
            (0, C1Variant::Consistent) => LaurentPoly::monomial(1, 1),
            (0, C1Variant::LiteralJump) => LaurentPoly::constant(-1).plus(1, 1),
            _ => LaurentPoly::constant(1),
        };
        let diff = termwise.sub(&via_li);
        if !diff.is_zero() {
            exact_zero = false;
            mismatched.push(k);
            residual = residual.max(diff.eval(e).norm());
        }
    }
    EquivarianceReport {
        variant,
        k_max,
        mismatched,
        residual,
        exact_zero,
        tail_fixed: true,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::m_alpha_k;
    use crate::evaluators::eval_series;
    use crate::numkernel::c64;

    fn half() -> Order {
        Order::real(0.5)
    }

    #[test]
    fn generator_examples() {
        let id = BranchVector::identity();
        assert_eq!(
            apply_generator(&id, GeneratorAction::C0, half()).unwrap(),
            id
        );
        let e = monodromy_factor(c64(0.5, 0.0));
        let c1 = apply_generator(&id, GeneratorAction::C1, half()).unwrap();
        assert_eq!(c1, BranchVector::new(c64(1.0, 0.0), [(0, e - 1.0)]));
        let m0 = BranchVector::new(c64(0.0, 0.0), [(0, c64(1.0, 0.0))]);
        let shifted = apply_generator(&m0, GeneratorAction::C0, half()).unwrap();
        assert_eq!(
            shifted,
            BranchVector::new(c64(0.0, 0.0), [(1, c64(1.0, 0.0))])
        );
    }

    #[test]
    fn transport_examples() {
        let a = Order::new(c64(0.3, 0.2));
        let e = monodromy_factor(a.alpha());
        assert_eq!(
            transport(&PathWord::identity(), a).unwrap(),
            BranchVector::identity()
        );
        let v = transport(&"c0 c1".parse().unwrap(), a).unwrap();
        assert_eq!(v, BranchVector::new(c64(1.0, 0.0), [(1, e - 1.0)]));
        assert_eq!(
            transport(&"c1 c1^-1".parse().unwrap(), a).unwrap(),
            BranchVector::identity()
        );
    }

    #[test]
    fn inverse_generators_undo() {
        let a = Order::new(c64(0.3, 0.2));
        let v = BranchVector::new(c64(0.7, -0.1), [(0, c64(0.2, 0.5)), (3, c64(-1.0, 0.0))]);
        for (g, h) in [
            (GeneratorAction::C0, GeneratorAction::C0inv),
            (GeneratorAction::C1, GeneratorAction::C1inv),
        ] {
            let back = apply_generator(&apply_generator(&v, g, a).unwrap(), h, a).unwrap();
            assert!(back.max_coeff_distance(&v) < 1e-15);
        }
    }

    #[test]
    fn symbolic_matches_numeric_action() {
        let a = Order::new(c64(0.3, 0.2));
        let word: PathWord = "c1^2 c0^-1 c1^-3 c0^2 c1".parse().unwrap();
        let mut numeric = BranchVector::identity();
        for l in word.letters().iter().rev() {
            let g = GeneratorAction::from_letter(l.generator, l.exponent < 0);
            for _ in 0..l.exponent.unsigned_abs() {
                numeric = apply_generator(&numeric, g, a).unwrap();
            }
        }
        let exact = transport(&word, a).unwrap();
        assert!(exact.max_coeff_distance(&numeric) < 1e-12);
    }

    #[test]
    fn word_times_inverse_is_exactly_identity() {
        let word: PathWord = "c1 c0^-2 c1^3".parse().unwrap();
        let mut letters = word.letters().to_vec();
        letters.extend(word.inverse().letters().iter().copied());
        assert!(SymbolicBranch::identity()
            .apply_letters(&letters)
            .is_identity());
    }

    #[test]
    fn integer_order_rejected() {
        assert!(transport(&"c1".parse().unwrap(), Order::real(2.0)).is_err());
    }

    #[test]
    fn cover_values() {
        let cfg = ToleranceConfig::default();
        let z = c64(0.3, 0.0);
        let li = eval_series(half(), z, &cfg).unwrap().value;
        let at = |w: &str| {
            eval_cover(
                half(),
                &CoverPoint::new(z, w.parse().unwrap()).unwrap(),
                &cfg,
            )
            .unwrap()
        };
        assert!((at("").value - li).norm() < 1e-9);
        assert!((at("c0").value - li).norm() < 1e-9);
        let m0 = m_alpha_k(half(), z, 0).unwrap();
        let r = at("c1");
        assert!((r.value - (li - m0 * 2.0)).norm() < 1e-9);
        assert_eq!(r.method, crate::domain::Method::CoverTransport);
    }

    #[test]
    fn equivariance() {
        for a in [half(), Order::new(c64(0.3, 0.2))] {
            let r = ml_equivariance_check(a, C1Variant::Consistent);
            assert!(r.exact_zero);
            assert_eq!(r.residual, 0.0);
            let lit = ml_equivariance_check(a, C1Variant::LiteralJump);
            assert_eq!(lit.mismatched, vec![0]);
            assert!((lit.residual - 1.0).abs() < 1e-15);
        }
    }
}
