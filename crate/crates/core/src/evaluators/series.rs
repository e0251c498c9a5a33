use num_complex::Complex64;

use super::{require_finite, CompensatedSum, EvalResult, Method, ToleranceConfig};
use crate::error::{Error, Result};
use crate::numkernel::Order;

/// `Σ_{n≥1} z^n / n^α` for `|z| < 1`, any complex `α`.
///
/// Since `|n^{−α}| = n^{−Re α}` for positive integers `n`, the tail after `N`
/// terms is bounded by `|z|^{N+1} (N+1)^{−Re α} / (1 − ρ)` with
/// `ρ = |z| · max(1, ((N+2)/(N+1))^{−Re α})`; summation stops at the first
/// `N` where this bound meets the target. Once it does, summation carries on
/// to rounding level for at most as many terms again.
pub fn eval_series(a: Order, z: Complex64, cfg: &ToleranceConfig) -> Result<EvalResult> {
    require_finite(z, "z")?;
    let modulus = z.norm();
    if modulus >= 1.0 {
        return Err(Error::domain(format!(
            "power series needs |z| < 1, got |z| = {modulus}"
        )));
    }
    if modulus == 0.0 {
        return Ok(EvalResult::new(Complex64::default(), 0.0, Method::Series));
    }
    let alpha = a.alpha();
    let re_alpha = alpha.re;
    let ln_modulus = modulus.ln();
    let target = cfg.target_abs_err;

    let mut sum = CompensatedSum::default();
    let mut zpow = Complex64::new(1.0, 0.0);
    let mut bound = f64::INFINITY;
    let mut n: usize = 0;
    let mut stop_by: Option<usize> = None;
    while n < cfg.max_series_terms {
        n += 1;
        zpow *= z;
        let ln_n = (n as f64).ln();
        sum.add(zpow * (-alpha * ln_n).exp());

        let next = (n + 1) as f64;
        let growth = ((next + 1.0) / next).powf(-re_alpha).max(1.0);
        let ratio = modulus * growth;
        if ratio < 1.0 {
            let lead = (next * ln_modulus - re_alpha * next.ln()).exp();
            bound = lead / (1.0 - ratio);
            if bound <= 0.5 * target {
                let limit = *stop_by.get_or_insert(2 * n);
                if bound <= f64::EPSILON * sum.value().norm() || n >= limit {
                    let rounding = 4.0 * f64::EPSILON * sum.abs_sum();
                    return Ok(EvalResult::new(
                        sum.value(),
                        bound + rounding,
                        Method::Series,
                    ));
                }
            }
        }
    }
    if stop_by.is_some() {
        let rounding = 4.0 * f64::EPSILON * sum.abs_sum();
        return Ok(EvalResult::new(
            sum.value(),
            bound + rounding,
            Method::Series,
        ));
    }
    Err(Error::Convergence {
        method: "series",
        detail: format!("tail bound not met within {} terms", cfg.max_series_terms),
        achieved: bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::c64;

    fn cfg() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    #[test]
    fn closed_forms() {
        let r = eval_series(Order::real(1.0), c64(0.5, 0.0), &cfg()).unwrap();
        assert!((r.value.re - std::f64::consts::LN_2).abs() < 1e-10);
        assert!(r.value.im == 0.0);
        let r = eval_series(Order::real(-1.0), c64(0.5, 0.0), &cfg()).unwrap();
        assert!((r.value.re - 2.0).abs() < 1e-10);
    }

    #[test]
    fn zero_is_zero() {
        let r = eval_series(Order::real(0.5), c64(0.0, 0.0), &cfg()).unwrap();
        assert_eq!(r.value, c64(0.0, 0.0));
    }

    #[test]
    fn rejects_outside_disk() {
        assert!(eval_series(Order::real(0.5), c64(1.0, 0.0), &cfg())
            .unwrap_err()
            .is_domain());
        assert!(eval_series(Order::real(0.5), c64(0.0, -1.5), &cfg()).is_err());
    }

    #[test]
    fn term_cap_is_convergence_error() {
        let c = ToleranceConfig {
            max_series_terms: 10,
            ..cfg()
        };
        let e = eval_series(Order::real(0.5), c64(0.9, 0.0), &c).unwrap_err();
        assert!(e.is_convergence());
    }

    #[test]
    fn bound_covers_doubling() {
        // re-summing with a much tighter target must stay within the first bound
        for (alpha, z) in [
            (c64(0.5, 0.0), c64(0.7, 0.2)),
            (c64(-1.5, 0.0), c64(0.8, 0.0)),
            (c64(0.3, 2.0), c64(-0.6, 0.5)),
        ] {
            let loose = eval_series(Order::new(alpha), z, &cfg()).unwrap();
            let tight = eval_series(Order::new(alpha), z, &cfg().tightened(1e-15)).unwrap();
            assert!((loose.value - tight.value).norm() <= loose.err_estimate);
        }
    }
}
