use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;

use super::appell::{gamma_tail_bound, geometric_kernel};
use super::{require_finite, require_off_cut, EvalResult, Method, ToleranceConfig};
use crate::error::{Error, Result};
use crate::numkernel::{c64, c_alpha, hankel_pow, principal_log, Order, TWO_PI};
use crate::quadrature::gauss_kronrod;

/// Raw value of `∫_γ q^{α−1} z/(e^q − z) dq` over the Hankel contour, before
/// the `C_α / 2πi` normalisation, with the contour geometry actually used.
#[derive(Debug, Clone, PartialEq)]
pub struct ContourIntegral {
    pub value: Complex64,
    pub error: f64,
    /// Ray angle `η`: upper ray at `arg = η`, lower ray at `arg = 2π − η`.
    pub ray_angle: f64,
    /// Radius `r` of the arc around the origin.
    pub radius: f64,
    /// Truncation radius `S` of both rays.
    pub ray_length: f64,
    /// Poles `log z + 2πik` lying between the real axis and a ray; their
    /// residues are included in `value`.
    pub swept_poles: Vec<Complex64>,
}

const ANGLE_SHRINK: f64 = 0.75;
const ANGLE_STEPS: usize = 120;

/// Chooses `η` with every pole either more than `2η` or less than `η/2` away
/// from the positive axis in angle. Returns `(η, swept poles)`.
fn choose_ray_angle(log_z: Complex64, max_angle: f64) -> Option<(f64, Vec<Complex64>)> {
    if log_z.re <= 0.0 {
        // every pole lies in the closed left half plane
        return Some((max_angle, Vec::new()));
    }
    let mut eta = max_angle;
    for _ in 0..ANGLE_STEPS {
        let wide = 2.0 * eta;
        if wide < FRAC_PI_2 {
            let reach = log_z.re * wide.tan() * (1.0 + 1e-9);
            let k_lo = ((-reach - log_z.im) / TWO_PI).ceil() as i64;
            let k_hi = ((reach - log_z.im) / TWO_PI).floor() as i64;
            let mut swept = Vec::new();
            let mut blocked = false;
            for k in k_lo..=k_hi {
                let q = log_z + c64(0.0, TWO_PI * k as f64);
                let theta = q.im.abs().atan2(q.re);
                if theta < 0.5 * eta {
                    swept.push(q);
                } else if theta <= wide {
                    blocked = true;
                    break;
                }
            }
            if !blocked {
                return Some((eta, swept));
            }
        }
        eta *= ANGLE_SHRINK;
    }
    None
}

/// Breakpoints along a ray: geometric from `r` up to 1, then steps of 8,
/// plus the radii of poles close to the ray direction.
fn ray_breakpoints(r: f64, s_max: f64, pole_radii: &[f64]) -> Vec<f64> {
    let mut pts = vec![r];
    let mut s = r;
    while s * 4.0 < 1.0_f64.min(s_max) {
        s *= 4.0;
        pts.push(s);
    }
    if s_max > 1.0 && r < 1.0 {
        pts.push(1.0);
    }
    let mut s = pts.last().copied().unwrap_or(r).max(1.0);
    while s + 8.0 < s_max {
        s += 8.0;
        pts.push(s);
    }
    pts.extend(pole_radii.iter().copied().filter(|&p| p > r && p < s_max));
    pts.push(s_max);
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    pts.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * b.abs());
    pts
}

/// Evaluates the raw Hankel contour integral for `z ∉ [1, ∞)`.
///
/// The contour is a lower ray at assigned argument `2π − η` from `S` in to
/// `r`, a clockwise arc of radius `r` from argument `2π − η` down to `η`, and
/// an upper ray at argument `η` from `r` out to `S`; the phase of `q^{α−1}`
/// follows the assigned argument continuously. `r` is kept below `0.4·|q_k|`
/// for every pole `q_k = log z + 2πik`. Poles near the positive axis (only
/// possible for `|z| > 1`) that fall inside the ray sector are swept across
/// and their residues `2πi·q_k^{α−1}` added, with `arg q_k ∈ [0, 2π)`.
pub fn hankel_contour_integral(
    a: Order,
    z: Complex64,
    cfg: &ToleranceConfig,
) -> Result<ContourIntegral> {
    require_finite(z, "z")?;
    a.require_non_integer(cfg.eps_int)?;
    require_off_cut(z, cfg.eps_cut)?;
    let alpha = a.alpha();
    if z.norm() == 0.0 {
        return Ok(ContourIntegral {
            value: Complex64::default(),
            error: 0.0,
            ray_angle: cfg.hankel_angle,
            radius: cfg.hankel_radius_cap,
            ray_length: 0.0,
            swept_poles: Vec::new(),
        });
    }
    let log_z = principal_log(z)?;

    let nearest_pole = (-1..=1)
        .map(|k| (log_z + c64(0.0, TWO_PI * k as f64)).norm())
        .fold(f64::INFINITY, f64::min);
    let r = cfg.hankel_radius_cap.min(0.4 * nearest_pole);
    let (eta, swept) = choose_ray_angle(log_z, cfg.hankel_angle)
        .ok_or_else(|| Error::domain(format!("no Hankel contour clears the poles for z = {z}")))?;

    let c_norm = c_alpha(a)?.norm();
    let raw_tol = cfg.target_abs_err * TWO_PI / c_norm;

    // ray length from the exponential tail bound
    let cos_eta = eta.cos();
    let zmod = z.norm();
    let phase_growth = (TWO_PI * alpha.im.abs()).exp();
    let mut s_max = (40.0 + zmod.ln().max(0.0)) / cos_eta;
    let tail = loop {
        let decay = zmod * (-s_max * cos_eta).exp();
        if decay < 0.5 {
            if let Some(b) = gamma_tail_bound(alpha.re, cos_eta, s_max) {
                let t = 2.0 * phase_growth * zmod / (1.0 - decay) * b;
                if t <= 0.125 * raw_tol || s_max > 1e4 {
                    break t;
                }
            }
        }
        s_max *= 1.5;
    };
    let s_max = s_max.max(4.0 * r);

    let alpha_m1 = alpha - 1.0;
    let ray = |angle: f64, assigned: f64| {
        let dir = c64(0.0, angle).exp();
        let phase = (alpha_m1 * c64(0.0, assigned)).exp();
        move |s: f64| -> Complex64 {
            let q = dir * s;
            (alpha_m1 * s.ln()).exp() * phase * geometric_kernel(z, q) * dir
        }
    };
    let upper = ray(eta, eta);
    let lower = ray(-eta, TWO_PI - eta);
    let arc = |theta: f64| -> Complex64 {
        let q = c64(0.0, theta).exp() * r;
        let power = (alpha_m1 * c64(r.ln(), theta)).exp();
        power * geometric_kernel(z, q) * c64(0.0, 1.0) * q
    };

    let pole_radii: Vec<f64> = (-2..=2)
        .map(|k| log_z + c64(0.0, TWO_PI * k as f64))
        .filter(|q| q.re > 0.0 && q.im.abs().atan2(q.re) < eta + 0.5)
        .map(|q| q.norm())
        .collect();
    let pts = ray_breakpoints(r, s_max, &pole_radii);
    let panel_tol = 0.25 * raw_tol / (pts.len() - 1) as f64;

    let mut value = Complex64::default();
    let mut error = tail;
    for w in pts.windows(2) {
        let up = gauss_kronrod(upper, w[0], w[1], panel_tol, cfg.quad_max_depth)?;
        let down = gauss_kronrod(lower, w[0], w[1], panel_tol, cfg.quad_max_depth)?;
        // lower ray runs inward
        value += up.value - down.value;
        error += up.error + down.error;
    }
    let arc_panels = 4;
    let span = TWO_PI - 2.0 * eta;
    for j in 0..arc_panels {
        let t0 = eta + span * j as f64 / arc_panels as f64;
        let t1 = eta + span * (j + 1) as f64 / arc_panels as f64;
        let piece = gauss_kronrod(
            arc,
            t0,
            t1,
            0.25 * raw_tol / arc_panels as f64,
            cfg.quad_max_depth,
        )?;
        // arc runs from 2π − η down to η
        value -= piece.value;
        error += piece.error;
    }
    for q in &swept {
        let residue = c64(0.0, TWO_PI) * hankel_pow(*q, alpha_m1)?;
        error += 8.0 * f64::EPSILON * residue.norm();
        value += residue;
    }
    Ok(ContourIntegral {
        value,
        error,
        ray_angle: eta,
        radius: r,
        ray_length: s_max,
        swept_poles: swept,
    })
}

/// `Li_α(z) = (C_α / 2πi) ∫_γ q^{α−1} z/(e^q − z) dq` for non-integer `α`
/// and `z ∉ [1, ∞)`.
pub fn eval_hankel(a: Order, z: Complex64, cfg: &ToleranceConfig) -> Result<EvalResult> {
    let contour = hankel_contour_integral(a, z, cfg)?;
    let scale = c_alpha(a)? / c64(0.0, TWO_PI);
    let value = scale * contour.value;
    let err = scale.norm() * contour.error + 8.0 * f64::EPSILON * value.norm();
    Ok(EvalResult::new(value, err, Method::Hankel))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::DomainError;

    fn cfg() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    #[test]
    fn agrees_with_series_inside_disk() {
        let h = eval_hankel(Order::real(0.5), c64(0.5, 0.0), &cfg()).unwrap();
        let s = crate::evaluators::eval_series(Order::real(0.5), c64(0.5, 0.0), &cfg()).unwrap();
        assert!((h.value - s.value).norm() <= h.err_estimate + s.err_estimate + 1e-9);
    }

    #[test]
    fn contour_geometry_large_z() {
        let c = hankel_contour_integral(Order::real(0.5), c64(1.5, 0.8), &cfg()).unwrap();
        let q0 = principal_log(c64(1.5, 0.8)).unwrap();
        let theta = q0.im.atan2(q0.re);
        assert!(theta > 2.0 * c.ray_angle || theta < 0.5 * c.ray_angle);
        assert!(q0.norm() > 2.0 * c.radius);
    }

    #[test]
    fn sweeps_pole_near_cut() {
        let c = hankel_contour_integral(Order::real(0.5), c64(2.0, 1e-7), &cfg()).unwrap();
        assert_eq!(c.swept_poles.len(), 1);
        let log_z = principal_log(c64(2.0, 1e-7)).unwrap();
        for k in -3..=3 {
            let q = log_z + c64(0.0, TWO_PI * k as f64);
            let theta = q.im.abs().atan2(q.re);
            assert!(
                theta > 2.0 * c.ray_angle || theta < 0.5 * c.ray_angle,
                "k={k}"
            );
        }
        // the value is the limit from above of the principal branch
        let v = eval_hankel(Order::real(0.5), c64(2.0, 1e-7), &cfg()).unwrap();
        assert!(v.value.im > 0.0);
    }

    #[test]
    fn integer_order_rejected() {
        assert!(matches!(
            eval_hankel(Order::real(2.0), c64(0.5, 0.0), &cfg()),
            Err(Error::Domain(DomainError::IntegerOrder { nearest: 2 }))
        ));
        assert!(matches!(
            eval_hankel(Order::real(0.5), c64(2.0, 0.0), &cfg()),
            Err(Error::Domain(DomainError::OnBranchCut))
        ));
    }
}
