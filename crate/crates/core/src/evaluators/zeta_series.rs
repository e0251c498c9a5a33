use num_complex::Complex64;

use super::{require_finite, CompensatedSum, EvalResult, Method, ToleranceConfig};
use crate::error::{Error, Result};
use crate::numkernel::{c64, c_alpha, gamma, hankel_pow, riemann_zeta, Order, TWO_PI};

const MAX_TERMS: usize = 100_000;

/// `Li_α(e^w) = C_α w^{α−1} + Σ_{n≥0} ζ(α−n) wⁿ/n!` for `Re α < 0`,
/// non-integer `α`, `Re w < 0` and `|w| < 2π`.
///
/// The coefficients come from the functional equation,
/// `ζ(α−n)/n! = 2(2π)^{α−n−1} sin(π(α−n)/2) Γ(1−α+n)/n! · ζ(1−α+n)`,
/// with `Γ(1−α+n)/n!` built by recurrence. Since `|ζ(s)| ≤ ζ(Re s)` and
/// `|sin(π(α−n)/2)|` alternates between two values, the moduli are dominated
/// by a series with ratio at most `|w|/2π · (1 + |α|/(N+2))`, which gives
/// the tail bound used to stop.
pub fn eval_zeta_series(a: Order, w: Complex64, cfg: &ToleranceConfig) -> Result<EvalResult> {
    require_finite(w, "w")?;
    a.require_non_integer(cfg.eps_int)?;
    let alpha = a.alpha();
    if alpha.re >= 0.0 {
        return Err(Error::domain("zeta series needs Re(alpha) < 0"));
    }
    let modulus = w.norm();
    if !(w.re < 0.0 && modulus < TWO_PI) {
        return Err(Error::domain(format!(
            "zeta series needs Re w < 0 and |w| < 2pi, got w = {w}"
        )));
    }

    let head = c_alpha(a)? * hankel_pow(w, alpha - 1.0)?;
    let half_pi = 0.5 * std::f64::consts::PI;
    let sin_bound = (alpha * half_pi)
        .sin()
        .norm()
        .max((alpha * half_pi).cos().norm());
    let prefactor = 2.0 * (c64(TWO_PI, 0.0).ln() * (alpha - 1.0)).exp();
    let ratio0 = modulus / TWO_PI;

    let mut sum = CompensatedSum::default();
    sum.add(head);
    let mut g = gamma(1.0 - alpha)?;
    let mut scale = c64(1.0, 0.0); // (w/2π)^n
    let mut bound = f64::INFINITY;
    let cap = cfg.max_series_terms.min(MAX_TERMS);
    for n in 0..cap {
        if n > 0 {
            g *= (n as f64 - alpha) / n as f64;
            scale *= w / TWO_PI;
        }
        let s = 1.0 - alpha + n as f64;
        let sine = (c64(half_pi, 0.0) * (alpha - n as f64)).sin();
        sum.add(prefactor * sine * g * riemann_zeta(s)? * scale);

        // majorant of the next term, then geometric tail
        let next = n + 1;
        let g_next = g.norm() * ((next as f64 - alpha).norm() / next as f64);
        let zeta_next = riemann_zeta(c64(s.re + 1.0, 0.0))?.re;
        let lead = prefactor.norm() * sin_bound * g_next * zeta_next * ratio0.powi(next as i32);
        let ratio = ratio0 * (1.0 + alpha.norm() / (next as f64 + 1.0));
        if ratio < 1.0 {
            bound = lead / (1.0 - ratio);
            if bound <= 0.5 * cfg.target_abs_err {
                let err = bound + 8.0 * f64::EPSILON * sum.abs_sum();
                return Ok(EvalResult::new(sum.value(), err, Method::ZetaSeries));
            }
        }
    }
    Err(Error::Convergence {
        method: "zeta-series",
        detail: format!("tail bound not met within {cap} terms"),
        achieved: bound,
    })
}
