//! Principal-branch evaluators for `Li_α(z)` and the dispatcher over them.
//!
//! Every backend returns an [`EvalResult`] carrying the error bound it
//! claims; cross-validation between backends relies on those bounds being
//! honest rather than tight.

mod appell;
mod closed_form;
mod dispatch;
mod hankel;
mod mittag_leffler;
mod series;
mod zeta_series;

use std::f64::consts::FRAC_PI_4;

use num_complex::Complex64;

use crate::domain::DEFAULT_EPS_CUT;
use crate::error::{DomainError, Error, Result};
use crate::numkernel::DEFAULT_EPS_INT;

pub use appell::eval_appell;
pub use closed_form::{asymptotic_leading, eval_negint_closed};
pub use dispatch::{eval_auto, eval_method, eval_on_cut, CutSide};
pub use hankel::{eval_hankel, hankel_contour_integral, ContourIntegral};
pub use mittag_leffler::eval_mittag_leffler;
pub use series::eval_series;
pub use zeta_series::eval_zeta_series;

pub(crate) use crate::domain::{EvalResult, Method};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToleranceConfig {
    /// Absolute error each backend aims for.
    pub target_abs_err: f64,
    pub max_series_terms: usize,
    /// Refinement levels (tanh-sinh) or bisection depth (Gauss–Kronrod).
    pub quad_max_depth: usize,
    /// Largest ray angle of the Hankel contour, radians in (0, π/2).
    pub hankel_angle: f64,
    /// Largest radius of the circular arc of the Hankel contour.
    pub hankel_radius_cap: f64,
    /// Terms `M_α[k]`, `|k| ≤ K`, summed directly in the Mittag-Leffler sum.
    pub ml_direct_terms: usize,
    /// Offset `δ` from the cut used by side-limit extrapolation.
    pub cut_offset: f64,
    pub eps_int: f64,
    pub eps_cut: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        ToleranceConfig {
            target_abs_err: 1e-10,
            max_series_terms: 10_000_000,
            quad_max_depth: 12,
            hankel_angle: FRAC_PI_4,
            hankel_radius_cap: 1.0,
            ml_direct_terms: 64,
            cut_offset: 1e-7,
            eps_int: DEFAULT_EPS_INT,
            eps_cut: DEFAULT_EPS_CUT,
        }
    }
}

impl ToleranceConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("target_abs_err", self.target_abs_err),
            ("hankel_angle", self.hankel_angle),
            ("hankel_radius_cap", self.hankel_radius_cap),
            ("cut_offset", self.cut_offset),
            ("eps_int", self.eps_int),
            ("eps_cut", self.eps_cut),
        ];
        for (name, v) in positive {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::domain(format!(
                    "{name} must be positive and finite, got {v}"
                )));
            }
        }
        if self.max_series_terms == 0 || self.quad_max_depth == 0 || self.ml_direct_terms == 0 {
            return Err(Error::domain(
                "max_series_terms, quad_max_depth and ml_direct_terms must be positive",
            ));
        }
        if self.hankel_angle >= std::f64::consts::FRAC_PI_2 {
            return Err(Error::domain("hankel_angle must lie in (0, pi/2)"));
        }
        Ok(())
    }

    /// Copy with a tighter (never looser) absolute target.
    pub fn tightened(&self, target: f64) -> Self {
        ToleranceConfig {
            target_abs_err: self.target_abs_err.min(target),
            ..*self
        }
    }
}

/// Distance from `z` to the ray `[1, ∞)`.
pub(crate) fn cut_distance(z: Complex64) -> f64 {
    if z.re >= 1.0 {
        z.im.abs()
    } else {
        (z - 1.0).norm()
    }
}

pub(crate) fn require_off_cut(z: Complex64, eps_cut: f64) -> Result<()> {
    if (z - 1.0).norm() <= eps_cut {
        return Err(DomainError::BranchPoint.into());
    }
    if cut_distance(z) <= eps_cut {
        return Err(DomainError::OnBranchCut.into());
    }
    Ok(())
}

pub(crate) fn require_finite(z: Complex64, what: &str) -> Result<()> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("{what} must be finite")))
    }
}

/// Neumaier-compensated complex accumulator.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct CompensatedSum {
    re: f64,
    re_c: f64,
    im: f64,
    im_c: f64,
    abs_sum: f64,
}

fn neumaier(sum: &mut f64, comp: &mut f64, x: f64) {
    let t = *sum + x;
    if sum.abs() >= x.abs() {
        *comp += (*sum - t) + x;
    } else {
        *comp += (x - t) + *sum;
    }
    *sum = t;
}

impl CompensatedSum {
    pub fn add(&mut self, z: Complex64) {
        neumaier(&mut self.re, &mut self.re_c, z.re);
        neumaier(&mut self.im, &mut self.im_c, z.im);
        self.abs_sum += z.norm();
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re + self.re_c, self.im + self.im_c)
    }

    /// Sum of the moduli of everything added so far.
    pub fn abs_sum(&self) -> f64 {
        self.abs_sum
    }
}
