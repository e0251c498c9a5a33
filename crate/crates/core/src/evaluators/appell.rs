use std::f64::consts::{FRAC_PI_4, PI};

use num_complex::Complex64;

use super::{cut_distance, require_finite, EvalResult, Method, ToleranceConfig};
use crate::error::{DomainError, Error, Result};
use crate::numkernel::{c64, gamma, principal_log, Order};
use crate::quadrature::{gauss_kronrod, tanh_sinh};

/// `e^{−q} − 1` without cancellation for small `|q|`.
#[inline]
fn exp_m1_neg(q: Complex64) -> Complex64 {
    let decay = (-q.re).exp_m1();
    let half_sin = (0.5 * q.im).sin();
    let re = decay * q.im.cos() - 2.0 * half_sin * half_sin;
    let im = -(-q.re).exp() * q.im.sin();
    c64(re, im)
}

/// `z / (e^q − z)` written as `z e^{−q} / (1 − z e^{−q})`, stable for large
/// `Re q`; the denominator is formed as `(1 − z) − z(e^{−q} − 1)` so that it
/// keeps full relative accuracy near `q = 0` when `z` is close to 1.
#[inline]
pub(super) fn geometric_kernel(z: Complex64, q: Complex64) -> Complex64 {
    let w = z * (-q).exp();
    w / ((1.0 - z) - z * exp_m1_neg(q))
}

/// Bound on `∫_Q^∞ s^{a−1} e^{−c s} ds`, or `None` when the simple bound does not apply.
pub(super) fn gamma_tail_bound(a: f64, c: f64, q: f64) -> Option<f64> {
    let lead = ((a - 1.0) * q.ln() - c * q).exp();
    if a <= 1.0 {
        Some(lead / c)
    } else {
        let denom = c - (a - 1.0) / q;
        (denom > 0.0).then(|| lead / denom)
    }
}

/// Appell's integral `Li_α(z) = (1/Γ(α)) ∫_0^∞ q^{α−1} z/(e^q − z) dq`, `Re α > 0`.
///
/// Valid on the whole cut plane ℂ∖[1,∞), and at `z = 1` when `Re α > 1`.
/// The piece `[0, 1]` uses tanh-sinh (algebraic singularity at `q = 0`), the
/// rest adaptive Gauss–Kronrod, truncated at `Q` with an analytic tail bound.
/// When the pole `q = log z` sits close to the positive axis the integration
/// ray is rotated to the opposite side of the axis, which sweeps no pole.
pub fn eval_appell(a: Order, z: Complex64, cfg: &ToleranceConfig) -> Result<EvalResult> {
    require_finite(z, "z")?;
    let alpha = a.alpha();
    if alpha.re <= 0.0 {
        return Err(Error::domain("Appell's integral needs Re(alpha) > 0"));
    }
    if z.norm() == 0.0 {
        return Ok(EvalResult::new(Complex64::default(), 0.0, Method::Appell));
    }
    let at_one = (z - 1.0).norm() <= cfg.eps_cut;
    if at_one {
        if alpha.re <= 1.0 {
            return Err(Error::Domain(DomainError::BranchPoint));
        }
    } else if cut_distance(z) <= cfg.eps_cut {
        return Err(DomainError::OnBranchCut.into());
    }
    let z = if at_one { c64(1.0, 0.0) } else { z };

    let log_z = principal_log(z)?;
    let phi = ray_angle(log_z);
    let rot = c64(0.0, phi).exp();
    let cos_phi = phi.cos();
    let gamma_alpha = gamma(alpha)?;
    let raw_tol = cfg.target_abs_err * gamma_alpha.norm();

    let alpha_m1 = alpha - 1.0;
    // phase of q^{α−1} along the ray
    let ray_phase = (alpha_m1 * c64(0.0, phi)).exp();
    let integrand = |s: f64| -> Complex64 {
        let q = rot * s;
        let power = (alpha_m1 * s.ln()).exp() * ray_phase;
        power * geometric_kernel(z, q) * rot
    };

    // truncation point
    let zmod = z.norm();
    let phase_growth = (alpha.im * phi).abs().exp();
    let mut q_max = 40.0_f64.max(2.0 * cfg.target_abs_err.ln().abs());
    q_max = q_max.max((zmod.ln() + 40.0) / cos_phi);
    let tail = loop {
        let decay = zmod * (-q_max * cos_phi).exp();
        if decay < 0.5 {
            if let Some(b) = gamma_tail_bound(alpha.re, cos_phi, q_max) {
                let t = phase_growth * zmod / (1.0 - decay) * b;
                if t <= 0.25 * raw_tol || q_max > 1e4 {
                    break t;
                }
            }
        }
        q_max *= 1.5;
    };

    let split = 1.0_f64.min(q_max);
    let head = tanh_sinh(integrand, 0.0, split, 0.25 * raw_tol, cfg.quad_max_depth)?;
    let body = gauss_kronrod(integrand, split, q_max, 0.25 * raw_tol, cfg.quad_max_depth)?;
    let raw = head.value + body.value;
    let value = raw / gamma_alpha;
    let err =
        (head.error + body.error + tail) / gamma_alpha.norm() + 8.0 * f64::EPSILON * value.norm();
    Ok(EvalResult::new(value, err, Method::Appell))
}

/// Angle of the integration ray from `0` to `∞`.
///
/// The poles of the integrand are `log z + 2πik`. Only `log z` itself can
/// approach the positive real axis; if it lies within `π/4` of it the ray is
/// tilted to the other side, by less than half the angle of the nearest pole
/// on that side, so the rotation crosses no pole.
fn ray_angle(log_z: Complex64) -> f64 {
    if log_z.re <= 0.0 || log_z.im.abs() >= log_z.re {
        return 0.0;
    }
    let side = if log_z.im > 0.0 { -1.0 } else { 1.0 };
    // nearest pole on the far side has |Im| ≥ 2π − |Im log z| ≥ π
    let far_im = 2.0 * PI - log_z.im.abs();
    let far_angle = (far_im / log_z.re).atan();
    side * FRAC_PI_4.min(0.5 * far_angle)
}
