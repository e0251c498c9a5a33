use num_complex::Complex64;

use super::{cut_distance, require_finite, EvalResult, Method};
use crate::domain::DEFAULT_EPS_CUT;
use crate::error::{DomainError, Error, Result};
use crate::numkernel::{c64, gamma, principal_log, principal_pow};

/// Largest `m` whose numerator coefficients fit in `i128`.
pub const NEGINT_MAX_ORDER: u32 = 30;

/// Coefficients of `P_m` (index = power of `z`) in
/// `Li_{−m}(z) = P_m(z) / (1 − z)^{m+1}`, from `P_0 = z` and
/// `P_{m+1} = z(1 − z) P_m' + (m + 1) z P_m`.
fn numerator(m: u32) -> Vec<i128> {
    let mut p: Vec<i128> = vec![0, 1];
    for j in 0..m {
        let mut next = vec![0i128; p.len() + 1];
        for (i, &c) in p.iter().enumerate() {
            let i_c = i as i128 * c;
            next[i] += i_c;
            next[i + 1] += (j as i128 + 1) * c - i_c;
        }
        p = next;
    }
    p
}

/// `Li_{−m}(z)` for integer `m ≥ 0`, as a rational function of `z`.
pub fn eval_negint_closed(m: u32, z: Complex64) -> Result<EvalResult> {
    require_finite(z, "z")?;
    if m > NEGINT_MAX_ORDER {
        return Err(Error::Unsupported(format!(
            "closed form limited to m <= {NEGINT_MAX_ORDER}, got {m}"
        )));
    }
    let one_minus = c64(1.0, 0.0) - z;
    if one_minus.norm() <= DEFAULT_EPS_CUT {
        return Err(DomainError::Pole {
            func: "Li_{-m}",
            at: 1,
        }
        .into());
    }
    let coeffs = numerator(m);
    let zmod = z.norm();
    let mut num = Complex64::default();
    let mut abs_num = 0.0;
    for &c in coeffs.iter().rev() {
        num = num * z + c as f64;
        abs_num = abs_num * zmod + (c as f64).abs();
    }
    let den = one_minus.powu(m + 1);
    let value = num / den;
    let deg = coeffs.len() as f64;
    let err =
        f64::EPSILON * (4.0 * (deg + 2.0) * abs_num / den.norm() + (m as f64 + 4.0) * value.norm());
    Ok(EvalResult::new(value, err, Method::NegIntClosed))
}

/// Leading large-`|z|` term `−(log z)^α / Γ(α + 1)` for `Re α > 0`,
/// `|z| > e`, off the cut.
pub fn asymptotic_leading(alpha: Complex64, z: Complex64) -> Result<Complex64> {
    require_finite(z, "z")?;
    if alpha.re <= 0.0 {
        return Err(Error::domain("asymptotic form needs Re(alpha) > 0"));
    }
    if z.norm() <= std::f64::consts::E {
        return Err(Error::domain("asymptotic form needs |z| > e"));
    }
    if cut_distance(z) <= DEFAULT_EPS_CUT {
        return Err(DomainError::OnBranchCut.into());
    }
    let log_z = principal_log(z)?;
    Ok(-principal_pow(log_z, alpha)? / gamma(alpha + 1.0)?)
}
