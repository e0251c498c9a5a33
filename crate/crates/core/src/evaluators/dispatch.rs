use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use super::{
    eval_appell, eval_hankel, eval_mittag_leffler, eval_negint_closed, eval_series,
    eval_zeta_series, require_finite, require_off_cut, EvalResult, Method, ToleranceConfig,
};
use crate::error::{Error, Result};
use crate::numkernel::{c64, principal_log, Order};

/// Which side of the cut `(1, ∞)` a boundary value is taken from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CutSide {
    /// Limit from `Im z > 0`.
    Above,
    /// Limit from `Im z < 0`.
    Below,
}

impl CutSide {
    fn sign(self) -> f64 {
        match self {
            CutSide::Above => 1.0,
            CutSide::Below => -1.0,
        }
    }
}

impl fmt::Display for CutSide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CutSide::Above => "above",
            CutSide::Below => "below",
        })
    }
}

impl FromStr for CutSide {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "above" | "+" => Ok(CutSide::Above),
            "below" | "-" => Ok(CutSide::Below),
            other => Err(format!("unknown side '{other}', expected above or below")),
        }
    }
}

/// Principal-branch `Li_α(z)`, picking a backend by region:
///
/// 1. `α` a non-positive integer: rational closed form;
/// 2. `|z| ≤ 1/2`: power series;
/// 3. `Re α < 0` and `log z` in the left half of the disc `|w| < 5`: zeta series;
/// 4. other non-integer `α`: Hankel contour;
/// 5. positive integer `α` with `|z| < 1`: Appell's integral.
///
/// Positive integer orders outside the unit disc are `Unsupported`.
pub fn eval_auto(a: Order, z: Complex64, cfg: &ToleranceConfig) -> Result<EvalResult> {
    cfg.validate()?;
    require_finite(z, "z")?;
    require_off_cut(z, cfg.eps_cut)?;
    let alpha = a.alpha();

    if a.is_integer(cfg.eps_int) && a.nearest_integer() <= 0 {
        return eval_negint_closed((-a.nearest_integer()) as u32, z);
    }
    if z.norm() <= 0.5 {
        return eval_series(a, z, cfg);
    }
    let non_integer = !a.is_integer(cfg.eps_int);
    if non_integer && alpha.re < 0.0 {
        let w = principal_log(z)?;
        if w.re < 0.0 && w.norm() < 5.0 {
            return eval_zeta_series(a, w, cfg);
        }
    }
    if non_integer {
        return eval_hankel(a, z, cfg);
    }
    if alpha.re > 0.0 && z.norm() < 1.0 {
        return eval_appell(a, z, cfg);
    }
    Err(Error::Unsupported(format!(
        "no backend for integer order {} at |z| = {}",
        a.nearest_integer(),
        z.norm()
    )))
}

/// Principal-branch `Li_α(z)` through one named backend.
///
/// `ZetaSeries` is fed `w = log z`; `NegIntClosed` needs `α` within
/// `eps_int` of a non-positive integer.
pub fn eval_method(
    method: Method,
    a: Order,
    z: Complex64,
    cfg: &ToleranceConfig,
) -> Result<EvalResult> {
    cfg.validate()?;
    require_finite(z, "z")?;
    match method {
        Method::Series => eval_series(a, z, cfg),
        Method::Appell => eval_appell(a, z, cfg),
        Method::Hankel => eval_hankel(a, z, cfg),
        Method::MittagLeffler => eval_mittag_leffler(a, z, cfg),
        Method::ZetaSeries => {
            require_off_cut(z, cfg.eps_cut)?;
            if z.norm() == 0.0 {
                return Err(Error::domain("zeta series needs z != 0"));
            }
            eval_zeta_series(a, principal_log(z)?, cfg)
        }
        Method::NegIntClosed => {
            let n = a.nearest_integer();
            if !a.is_integer(cfg.eps_int) || n > 0 {
                return Err(Error::domain(
                    "closed form needs a non-positive integer order",
                ));
            }
            eval_negint_closed((-n) as u32, z)
        }
        Method::CoverTransport => Err(Error::Unsupported(
            "CoverTransport is not a principal-branch backend".into(),
        )),
    }
}

/// One-sided boundary value `lim_{ε→0+} Li_α(x ± iε)` for real `x > 1`.
///
/// Evaluates at offsets `δ` and `2δ` (`δ = cut_offset`) and extrapolates
/// linearly, `2f(δ) − f(2δ)`. The error adds both backend errors and the
/// size of the linear correction scaled by `δ/(x − 1)` as an estimate of the
/// remaining curvature term.
pub fn eval_on_cut(a: Order, x: f64, side: CutSide, cfg: &ToleranceConfig) -> Result<EvalResult> {
    cfg.validate()?;
    if !x.is_finite() {
        return Err(Error::domain("x must be finite"));
    }
    let delta = cfg.cut_offset;
    if x - 1.0 <= 100.0 * delta {
        return Err(Error::domain(format!(
            "side limits need x > 1 + 100*cut_offset, got x = {x}"
        )));
    }
    let sign = side.sign();
    let at = |d: f64| -> Result<EvalResult> {
        let z = c64(x, sign * d);
        if a.is_integer(cfg.eps_int) {
            let n = a.nearest_integer();
            if n <= 0 {
                eval_negint_closed((-n) as u32, z)
            } else {
                eval_appell(a, z, cfg)
            }
        } else {
            eval_hankel(a, z, cfg)
        }
    };
    let f1 = at(delta)?;
    let f2 = at(2.0 * delta)?;
    let value = f1.value * 2.0 - f2.value;
    let curvature = (f1.value - f2.value).norm() * delta / (x - 1.0);
    let err = 2.0 * f1.err_estimate + f2.err_estimate + curvature;
    Ok(EvalResult::new(value, err, f1.method))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::Method;
    use crate::error::DomainError;

    fn cfg() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    #[test]
    fn routing() {
        let m =
            |alpha: f64, z: Complex64| eval_auto(Order::real(alpha), z, &cfg()).map(|r| r.method);
        assert_eq!(m(-2.0, c64(3.0, 1.0)).unwrap(), Method::NegIntClosed);
        assert_eq!(m(0.5, c64(0.3, 0.1)).unwrap(), Method::Series);
        assert_eq!(m(-0.5, c64(0.8, 0.0)).unwrap(), Method::ZetaSeries);
        assert_eq!(m(0.5, c64(-5.0, 0.0)).unwrap(), Method::Hankel);
        assert_eq!(m(2.0, c64(0.0, 0.9)).unwrap(), Method::Appell);
        assert!(matches!(m(2.0, c64(-3.0, 0.0)), Err(Error::Unsupported(_))));
    }

    #[test]
    fn cut_rejected() {
        assert!(matches!(
            eval_auto(Order::real(0.5), c64(2.0, 0.0), &cfg()),
            Err(Error::Domain(DomainError::OnBranchCut))
        ));
        assert!(matches!(
            eval_auto(Order::real(0.5), c64(1.0, 0.0), &cfg()),
            Err(Error::Domain(DomainError::BranchPoint))
        ));
    }

    #[test]
    fn log_jump_on_cut() {
        let a = Order::real(1.0);
        let up = eval_on_cut(a, 3.0, CutSide::Above, &cfg()).unwrap();
        let down = eval_on_cut(a, 3.0, CutSide::Below, &cfg()).unwrap();
        let expected = c64(0.0, 2.0 * std::f64::consts::PI);
        assert!((up.value - down.value - expected).norm() < 1e-8);
        assert!((up.value.re + (2.0f64).ln()).abs() < 1e-8);
    }

    #[test]
    fn side_parse() {
        assert_eq!("above".parse::<CutSide>().unwrap(), CutSide::Above);
        assert!("left".parse::<CutSide>().is_err());
    }
}
