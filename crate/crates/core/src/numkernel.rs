//! Complex elementary and special functions with fixed branch conventions.
//!
//! Logs and powers use the principal branch with `arg ∈ (−π, π]`, closed at
//! `+π`: a point on the negative real axis always gets `arg = +π`, including
//! when its imaginary part is a negative zero.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{DomainError, Error, Result};

/// Distance below which a value is treated as an integer.
pub const DEFAULT_EPS_INT: f64 = 1e-9;

/// Largest modulus accepted by [`gamma`]; beyond it `Γ` leaves the f64 range.
pub const GAMMA_MAX_MODULUS: f64 = 170.0;

/// Bound on `|Im s|` and `−Re s` accepted by [`riemann_zeta`].
pub const ZETA_MAX_IMAG: f64 = 50.0;
pub const ZETA_MIN_REAL: f64 = -50.0;

pub(crate) const TWO_PI: f64 = 2.0 * PI;

#[inline]
pub(crate) fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub(crate) fn is_finite(z: Complex64) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// The complex order `α` together with its distance to the nearest integer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Order {
    alpha: Complex64,
    integer_distance: f64,
}

impl Order {
    pub fn new(alpha: Complex64) -> Self {
        let nearest = alpha.re.round();
        let integer_distance = (alpha - nearest).norm();
        Order {
            alpha,
            integer_distance,
        }
    }

    pub fn real(alpha: f64) -> Self {
        Self::new(c64(alpha, 0.0))
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    pub fn integer_distance(&self) -> f64 {
        self.integer_distance
    }

    pub fn nearest_integer(&self) -> i64 {
        self.alpha.re.round() as i64
    }

    pub fn is_integer(&self, eps_int: f64) -> bool {
        self.integer_distance < eps_int
    }

    /// Rejects orders within `eps_int` of an integer.
    pub fn require_non_integer(&self, eps_int: f64) -> Result<()> {
        if self.is_integer(eps_int) {
            return Err(DomainError::IntegerOrder {
                nearest: self.nearest_integer(),
            }
            .into());
        }
        Ok(())
    }

    /// The order shifted by an integer, e.g. `α − 1` for the derivative ladder.
    pub fn shifted(&self, by: i64) -> Order {
        Order::new(self.alpha + by as f64)
    }
}

/// `ln|z| + i·arg z` with `arg z ∈ (−π, π]`.
pub fn principal_log(z: Complex64) -> Result<Complex64> {
    if z.re == 0.0 && z.im == 0.0 {
        return Err(Error::domain("logarithm of zero"));
    }
    if !is_finite(z) {
        return Err(Error::domain("logarithm of a non-finite value"));
    }
    let arg = if z.im == 0.0 && z.re < 0.0 {
        PI
    } else {
        z.im.atan2(z.re)
    };
    Ok(c64(z.norm().ln(), arg))
}

/// `exp(s · principal_log(w))`, with `0^s = 0` for `Re s > 0`.
pub fn principal_pow(w: Complex64, s: Complex64) -> Result<Complex64> {
    if w.re == 0.0 && w.im == 0.0 {
        if s.re > 0.0 {
            return Ok(c64(0.0, 0.0));
        }
        return Err(Error::domain("zero raised to a power with Re(s) <= 0"));
    }
    Ok((s * principal_log(w)?).exp())
}

/// `w^s` with `arg w ∈ [0, 2π)`.
///
/// The branch cut runs along the positive real axis, which is the argument
/// bookkeeping of a Hankel contour wrapped around `[0, ∞)`: the upper edge
/// carries `arg = 0`, the lower edge `arg = 2π`. Points on the positive axis
/// take `arg = 0`.
pub fn hankel_pow(w: Complex64, s: Complex64) -> Result<Complex64> {
    if w.re == 0.0 && w.im == 0.0 {
        if s.re > 0.0 {
            return Ok(c64(0.0, 0.0));
        }
        return Err(Error::domain("zero raised to a power with Re(s) <= 0"));
    }
    if !is_finite(w) {
        return Err(Error::domain("power of a non-finite value"));
    }
    let mut arg = w.im.atan2(w.re);
    if arg < 0.0 {
        arg += TWO_PI;
    }
    Ok((s * c64(w.norm().ln(), arg)).exp())
}

const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

fn lanczos_series(x: Complex64) -> Complex64 {
    let mut acc = c64(LANCZOS_COEFFS[0], 0.0);
    for (i, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    acc
}

/// Complex Gamma function.
///
/// Lanczos approximation (g = 7, nine terms) on `Re s ≥ 1/2`, reflection
/// formula elsewhere. Rejects points within [`DEFAULT_EPS_INT`] of a pole.
pub fn gamma(s: Complex64) -> Result<Complex64> {
    if !is_finite(s) || s.norm() > GAMMA_MAX_MODULUS {
        return Err(Error::domain(format!(
            "gamma argument {s} outside the supported range |s| <= {GAMMA_MAX_MODULUS}"
        )));
    }
    let nearest = s.re.round();
    if nearest <= 0.0 && (s - nearest).norm() < DEFAULT_EPS_INT {
        return Err(DomainError::Pole {
            func: "gamma",
            at: nearest as i64,
        }
        .into());
    }
    let value = if s.re < 0.5 {
        let denom = (s * PI).sin() * gamma_right(1.0 - s);
        PI / denom
    } else {
        gamma_right(s)
    };
    if !is_finite(value) {
        return Err(Error::domain(format!("gamma({s}) is not representable")));
    }
    Ok(value)
}

fn gamma_right(s: Complex64) -> Complex64 {
    let x = s - 1.0;
    let t = x + LANCZOS_G + 0.5;
    let log_part = (x + 0.5) * t.ln() - t;
    (2.0 * PI).sqrt() * log_part.exp() * lanczos_series(x)
}

/// Bernoulli numbers `B_2, B_4, …, B_30`.
pub(crate) const BERNOULLI_EVEN: [f64; 15] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
];

/// `B_{2j} / (2j)!` for `j = 1..=15`.
pub(crate) fn bernoulli_over_factorial() -> [f64; 15] {
    let mut out = [0.0; 15];
    let mut fact = 1.0_f64;
    let mut n = 0u32;
    for (j, b) in BERNOULLI_EVEN.iter().enumerate() {
        let target = 2 * (j as u32 + 1);
        while n < target {
            n += 1;
            fact *= n as f64;
        }
        out[j] = b / fact;
    }
    out
}

const ZETA_DIRECT_TERMS: usize = 20;

/// Riemann zeta function.
///
/// Euler–Maclaurin summation (20 direct terms, corrections through `B_30`)
/// for `Re s ≥ 1/2`; the functional equation
/// `ζ(s) = 2^s π^{s−1} sin(πs/2) Γ(1−s) ζ(1−s)` for `Re s < 1/2`, except in a
/// small disk around `s = 0` where the Euler–Maclaurin formula is used
/// directly (the functional equation has a removable `0 · ∞` there).
pub fn riemann_zeta(s: Complex64) -> Result<Complex64> {
    if !is_finite(s) || s.im.abs() > ZETA_MAX_IMAG || s.re < ZETA_MIN_REAL {
        return Err(Error::domain(format!(
            "zeta argument {s} outside the supported range (|Im s| <= {ZETA_MAX_IMAG}, Re s >= {ZETA_MIN_REAL})"
        )));
    }
    if (s - 1.0).norm() < DEFAULT_EPS_INT {
        return Err(DomainError::Pole {
            func: "zeta",
            at: 1,
        }
        .into());
    }
    // trivial zeros
    if s.im == 0.0 && s.re < 0.0 && s.re % 2.0 == 0.0 {
        return Ok(c64(0.0, 0.0));
    }
    if s.re >= 0.5 || s.norm() < 0.25 {
        return Ok(zeta_euler_maclaurin(s));
    }
    let one_minus = 1.0 - s;
    let factor = (s * 2.0_f64.ln() + (s - 1.0) * PI.ln()).exp() * (s * (PI / 2.0)).sin();
    let value = factor * gamma(one_minus)? * zeta_euler_maclaurin(one_minus);
    if !is_finite(value) {
        return Err(Error::domain(format!("zeta({s}) is not representable")));
    }
    Ok(value)
}

fn zeta_euler_maclaurin(s: Complex64) -> Complex64 {
    // more direct terms when |Im s| is large keeps the B_30 remainder small
    let n_direct = ZETA_DIRECT_TERMS.max(s.im.abs().ceil() as usize + 10);
    let mut sum = c64(0.0, 0.0);
    for n in 1..n_direct {
        sum += (-s * (n as f64).ln()).exp();
    }
    let n = n_direct as f64;
    let ln_n = n.ln();
    let n_pow = (-s * ln_n).exp();
    sum += n_pow * n / (s - 1.0);
    sum += n_pow * 0.5;
    // s (s+1) … (s+2j−2) N^{−s−2j+1}
    let coeffs = bernoulli_over_factorial();
    let mut rising = s;
    let mut power = n_pow / n;
    for (j, c) in coeffs.iter().enumerate() {
        let term = rising * power * *c;
        sum += term;
        let k = 2.0 * j as f64 + 1.0;
        rising *= (s + k) * (s + k + 1.0);
        power /= n * n;
    }
    sum
}

/// `C_α = e^{πi(−α−1)} Γ(1−α)`.
pub fn c_alpha(a: Order) -> Result<Complex64> {
    a.require_non_integer(DEFAULT_EPS_INT)?;
    let alpha = a.alpha();
    let phase = (c64(0.0, PI) * (-alpha - 1.0)).exp();
    Ok(phase * gamma(1.0 - alpha)?)
}

/// `e^{2πiα}`, the local monodromy factor of `(log z)^{α−1}` around `z = 1`.
pub fn monodromy_factor(alpha: Complex64) -> Complex64 {
    (c64(0.0, TWO_PI) * alpha).exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol * b.norm().max(1.0)
    }

    #[test]
    fn log_examples() {
        assert_eq!(principal_log(c64(1.0, 0.0)).unwrap(), c64(0.0, 0.0));
        assert_eq!(principal_log(c64(-1.0, 0.0)).unwrap(), c64(0.0, PI));
        assert_eq!(principal_log(c64(-1.0, -0.0)).unwrap(), c64(0.0, PI));
        let v = principal_log(c64((-0.5f64).exp(), 0.0)).unwrap();
        assert!((v.re + 0.5).abs() < 1e-16 && v.im == 0.0);
        assert!(principal_log(c64(0.0, 0.0)).is_err());
    }

    #[test]
    fn pow_examples() {
        assert!(close(
            principal_pow(c64(4.0, 0.0), c64(0.5, 0.0)).unwrap(),
            c64(2.0, 0.0),
            1e-15
        ));
        assert!(close(
            principal_pow(c64(-1.0, 0.0), c64(-1.5, 0.0)).unwrap(),
            c64(0.0, 1.0),
            1e-15
        ));
        let e = std::f64::consts::E;
        assert!(close(
            principal_pow(c64(e, 0.0), c64(0.0, PI)).unwrap(),
            c64(-1.0, 0.0),
            1e-15
        ));
        assert_eq!(
            principal_pow(c64(0.0, 0.0), c64(0.5, 0.0)).unwrap(),
            c64(0.0, 0.0)
        );
        assert!(principal_pow(c64(0.0, 0.0), c64(-0.5, 1.0)).is_err());
    }

    #[test]
    fn hankel_pow_branch() {
        let s = c64(-0.5, 0.0);
        // upper half plane and negative axis agree with the principal branch
        for w in [c64(0.3, 0.4), c64(-2.0, 0.0), c64(-1.0, 1e-3)] {
            assert!((hankel_pow(w, s).unwrap() - principal_pow(w, s).unwrap()).norm() < 1e-15);
        }
        // lower half plane picks up e^{2πis}
        let w = c64(0.3, -0.4);
        let expected = principal_pow(w, s).unwrap() * (c64(0.0, TWO_PI) * s).exp();
        assert!((hankel_pow(w, s).unwrap() - expected).norm() < 1e-15);
        assert_eq!(
            hankel_pow(c64(4.0, 0.0), c64(0.5, 0.0)).unwrap(),
            c64(2.0, 0.0)
        );
    }

    #[test]
    fn gamma_examples() {
        assert!(close(
            gamma(c64(0.5, 0.0)).unwrap(),
            c64(PI.sqrt(), 0.0),
            1e-15
        ));
        assert!(close(gamma(c64(5.0, 0.0)).unwrap(), c64(24.0, 0.0), 1e-14));
        assert!(close(
            gamma(c64(-0.5, 0.0)).unwrap(),
            c64(-2.0 * PI.sqrt(), 0.0),
            1e-14
        ));
    }

    #[test]
    fn gamma_pole_reports_integer() {
        match gamma(c64(-3.0, 1e-12)) {
            Err(Error::Domain(DomainError::Pole { at, .. })) => assert_eq!(at, -3),
            other => panic!("expected pole, got {other:?}"),
        }
        assert!(gamma(c64(0.0, 0.0)).is_err());
    }

    #[test]
    fn gamma_out_of_range_rejected() {
        assert!(gamma(c64(200.0, 0.0)).is_err());
    }

    #[test]
    fn zeta_examples() {
        let z2 = riemann_zeta(c64(2.0, 0.0)).unwrap();
        assert!(close(z2, c64(PI * PI / 6.0, 0.0), 1e-14));
        let zm1 = riemann_zeta(c64(-1.0, 0.0)).unwrap();
        assert!(close(zm1, c64(-1.0 / 12.0, 0.0), 1e-14));
        let z0 = riemann_zeta(c64(0.0, 0.0)).unwrap();
        assert!(close(z0, c64(-0.5, 0.0), 1e-14));
        assert_eq!(riemann_zeta(c64(-4.0, 0.0)).unwrap(), c64(0.0, 0.0));
    }

    #[test]
    fn zeta_pole() {
        assert!(matches!(
            riemann_zeta(c64(1.0, 0.0)),
            Err(Error::Domain(DomainError::Pole { at: 1, .. }))
        ));
    }

    #[test]
    fn zeta_functional_equation_residual() {
        let s = c64(-1.5, 0.0);
        let lhs = riemann_zeta(s).unwrap();
        let rhs = c64(2.0, 0.0).powc(s)
            * c64(PI, 0.0).powc(s - 1.0)
            * (s * PI / 2.0).sin()
            * gamma(1.0 - s).unwrap()
            * riemann_zeta(1.0 - s).unwrap();
        assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn c_alpha_examples() {
        let sp = PI.sqrt();
        assert!(close(
            c_alpha(Order::real(0.5)).unwrap(),
            c64(0.0, sp),
            1e-15
        ));
        assert!(close(
            c_alpha(Order::real(-0.5)).unwrap(),
            c64(0.0, -sp / 2.0),
            1e-15
        ));
        assert!(c_alpha(Order::real(2.0)).is_err());
    }

    #[test]
    fn reflection_identity_at_sample_point() {
        let alpha = c64(0.3, 0.2);
        let lhs = 1.0 / ((1.0 - monodromy_factor(alpha)) * gamma(alpha).unwrap());
        let rhs = c_alpha(Order::new(alpha)).unwrap() / c64(0.0, TWO_PI);
        assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn order_integer_distance() {
        let o = Order::new(c64(2.9, 0.4));
        assert!((o.integer_distance() - (0.01f64 + 0.16).sqrt()).abs() < 1e-15);
        assert_eq!(o.nearest_integer(), 3);
        assert!(Order::real(-2.0)
            .require_non_integer(DEFAULT_EPS_INT)
            .is_err());
    }
}
