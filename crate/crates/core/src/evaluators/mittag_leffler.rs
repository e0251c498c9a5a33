use num_complex::Complex64;

use super::{require_finite, require_off_cut, CompensatedSum, EvalResult, Method, ToleranceConfig};
use crate::error::{Error, Result};
use crate::numkernel::{
    bernoulli_over_factorial, c64, c_alpha, hankel_pow, principal_log, Order, TWO_PI,
};

/// Euler–Maclaurin corrections `B_2 … B_6`; the `B_8` term is the error estimate.
const EM_ORDER: usize = 3;

/// `Σ_{k>K} (L + σ·2πik)^{α−1}` for `σ = ±1`, with its error estimate.
///
/// `f(t) = (L + σ·2πit)^{α−1}` stays in one open half plane for `t ≥ K ≥ 1`,
/// so the branch `arg ∈ [0, 2π)` is analytic along the whole tail and
/// `∫_K^∞ f = −(L + σ·2πiK)^α / (σ·2πi·α)` because `Re α < 0`.
fn tail_sum(alpha: Complex64, log_z: Complex64, k0: usize, sigma: f64) -> Result<(Complex64, f64)> {
    let step = c64(0.0, sigma * TWO_PI);
    let base = log_z + step * k0 as f64;
    let integral = -hankel_pow(base, alpha)? / (step * alpha);
    let f_k = hankel_pow(base, alpha - 1.0)?;
    let mut total = integral - f_k * 0.5;

    let coeffs = bernoulli_over_factorial();
    // f^{(m)}(K) = (α−1)(α−2)…(α−m) · step^m · base^{α−1−m}
    let mut falling = c64(1.0, 0.0);
    let mut step_pow = c64(1.0, 0.0);
    let mut estimate = 0.0;
    for (j, coeff) in coeffs.iter().enumerate().take(EM_ORDER + 1) {
        let m = 2 * j + 1;
        // advance the falling factorial and step power to order m
        let prev = if j == 0 { 0 } else { 2 * j - 1 };
        for i in prev + 1..=m {
            falling *= alpha - i as f64;
            step_pow *= step;
        }
        let deriv = falling * step_pow * hankel_pow(base, alpha - 1.0 - m as f64)?;
        let term = deriv * *coeff;
        if j < EM_ORDER {
            total -= term;
        } else {
            estimate = term.norm();
        }
    }
    Ok((total, estimate))
}

/// Mittag-Leffler sum `Li_α(z) = Σ_{k∈ℤ} M_α[k](z)` for `Re α < 0`.
///
/// The symmetric block `|k| ≤ K` is summed directly; each one-sided tail is
/// replaced by its closed-form integral plus Euler–Maclaurin corrections.
/// The reported error is twice the first omitted correction on each side,
/// plus rounding.
pub fn eval_mittag_leffler(a: Order, z: Complex64, cfg: &ToleranceConfig) -> Result<EvalResult> {
    require_finite(z, "z")?;
    a.require_non_integer(cfg.eps_int)?;
    let alpha = a.alpha();
    if alpha.re >= 0.0 {
        return Err(Error::domain("Mittag-Leffler sum needs Re(alpha) < 0"));
    }
    if z.norm() == 0.0 {
        return Err(Error::domain("Mittag-Leffler sum is undefined at z = 0"));
    }
    require_off_cut(z, cfg.eps_cut)?;
    let log_z = principal_log(z)?;
    let big_k = cfg.ml_direct_terms;

    let mut sum = CompensatedSum::default();
    sum.add(hankel_pow(log_z, alpha - 1.0)?);
    for k in 1..=big_k {
        let shift = c64(0.0, TWO_PI * k as f64);
        sum.add(hankel_pow(log_z + shift, alpha - 1.0)?);
        sum.add(hankel_pow(log_z - shift, alpha - 1.0)?);
    }
    let (up, up_err) = tail_sum(alpha, log_z, big_k, 1.0)?;
    let (down, down_err) = tail_sum(alpha, log_z, big_k, -1.0)?;
    sum.add(up);
    sum.add(down);

    let c = c_alpha(a)?;
    let value = c * sum.value();
    let err = c.norm() * (2.0 * (up_err + down_err) + 8.0 * f64::EPSILON * sum.abs_sum());
    Ok(EvalResult::new(value, err, Method::MittagLeffler))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evaluators::eval_series;

    fn cfg() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    #[test]
    fn matches_series_inside_disk() {
        let a = Order::real(-0.5);
        let z = c64(0.3, 0.0);
        let ml = eval_mittag_leffler(a, z, &cfg()).unwrap();
        let s = eval_series(a, z, &cfg()).unwrap();
        assert!((ml.value - s.value).norm() < 1e-8, "{ml:?} {s:?}");
    }

    #[test]
    fn real_for_real_inputs() {
        let r = eval_mittag_leffler(Order::real(-0.5), c64(0.5, 0.0), &cfg()).unwrap();
        assert!(r.value.im.abs() < 1e-10);
    }

    #[test]
    fn few_direct_terms_still_honest() {
        let a = Order::real(-0.5);
        let z = c64(0.3, 0.0);
        let reference = eval_series(a, z, &cfg().tightened(1e-15)).unwrap();
        for k in [1, 2, 4, 8] {
            let c = ToleranceConfig {
                ml_direct_terms: k,
                ..cfg()
            };
            let r = eval_mittag_leffler(a, z, &c).unwrap();
            let measured = (r.value - reference.value).norm();
            assert!(
                measured <= r.err_estimate + reference.err_estimate,
                "K={k}: {measured} > {}",
                r.err_estimate
            );
        }
    }

    #[test]
    fn rejects_nonnegative_order() {
        assert!(eval_mittag_leffler(Order::real(0.5), c64(0.3, 0.0), &cfg()).is_err());
        assert!(eval_mittag_leffler(Order::real(-2.0), c64(0.3, 0.0), &cfg()).is_err());
    }
}
