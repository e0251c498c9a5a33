//! Cross-backend comparisons and identity checks, packaged as reports.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::domain::{m_alpha_k, BranchVector, EvalResult, Generator, Letter, Method, PathWord};
use crate::error::{Error, Result};
use crate::evaluators::{
    asymptotic_leading, eval_appell, eval_auto, eval_hankel, eval_method, eval_negint_closed,
    eval_on_cut, eval_series, eval_zeta_series, hankel_contour_integral, require_off_cut, CutSide,
    ToleranceConfig,
};
use crate::literal::format_complex;
use crate::monodromy::{ml_equivariance_check, transport, C1Variant, SymbolicBranch};
use crate::numkernel::{c64, c_alpha, gamma, monodromy_factor, riemann_zeta, Order, TWO_PI};

/// Outcome of one check. `passed` is `measured <= bound`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub inputs: String,
    pub measured: f64,
    pub bound: f64,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckReport {
    /// Fixes `bound`, then runs `measure`. A failed measurement is recorded
    /// as `measured = ∞` with the error as note.
    pub fn run(
        name: impl Into<String>,
        inputs: impl Into<String>,
        bound: f64,
        measure: impl FnOnce() -> Result<f64>,
    ) -> Self {
        let (measured, note) = match measure() {
            Ok(m) => (m, None),
            Err(e) => (f64::INFINITY, Some(e.to_string())),
        };
        CheckReport {
            name: name.into(),
            inputs: inputs.into(),
            measured,
            bound,
            passed: measured <= bound,
            note,
        }
    }

    fn failed(name: impl Into<String>, inputs: impl Into<String>, err: &Error) -> Self {
        CheckReport::run(name, inputs, 0.0, || Err(err.clone()))
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serialises")
    }
}

/// Backends tried by [`crosscheck_point`].
pub const BACKENDS: [Method; 6] = [
    Method::Series,
    Method::Appell,
    Method::Hankel,
    Method::MittagLeffler,
    Method::ZetaSeries,
    Method::NegIntClosed,
];

/// Slack added to pairwise comparison bounds.
pub const PAIR_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Skipped {
    pub method: Method,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Crosscheck {
    pub reports: Vec<CheckReport>,
    pub skipped: Vec<Skipped>,
    /// Backends that produced a value.
    pub ran: Vec<Method>,
}

fn show(a: Order, z: Complex64) -> String {
    format!(
        "alpha={} z={}",
        format_complex(a.alpha()),
        format_complex(z)
    )
}

/// Runs every backend whose preconditions hold at `(α, z)` and compares all
/// pairs within `err₁ + err₂ + 1e−9`.
pub fn crosscheck_point(a: Order, z: Complex64, cfg: &ToleranceConfig) -> Crosscheck {
    crosscheck_with_floor(a, z, cfg, 0.0, "crosscheck")
}

fn crosscheck_with_floor(
    a: Order,
    z: Complex64,
    cfg: &ToleranceConfig,
    floor: f64,
    prefix: &str,
) -> Crosscheck {
    let inputs = show(a, z);
    let mut out = Crosscheck {
        reports: Vec::new(),
        skipped: Vec::new(),
        ran: Vec::new(),
    };
    if let Err(e) = require_off_cut(z, cfg.eps_cut) {
        let reason = match e {
            Error::Domain(crate::error::DomainError::BranchPoint) => "BranchPoint",
            _ => "OnCut",
        };
        out.skipped = BACKENDS
            .iter()
            .map(|&method| Skipped {
                method,
                reason: reason.to_string(),
            })
            .collect();
        return out;
    }
    let mut values: Vec<EvalResult> = Vec::new();
    for &m in &BACKENDS {
        match eval_method(m, a, z, cfg) {
            Ok(r) => {
                values.push(r);
                out.ran.push(m);
            }
            Err(Error::Convergence { .. }) => {
                let e = eval_method(m, a, z, cfg).unwrap_err();
                out.reports.push(CheckReport::failed(
                    format!("{prefix}/{inputs}/{m}"),
                    inputs.clone(),
                    &e,
                ));
            }
            Err(e) => out.skipped.push(Skipped {
                method: m,
                reason: e.to_string(),
            }),
        }
    }
    for i in 0..values.len() {
        for j in i + 1..values.len() {
            let (p, q) = (values[i], values[j]);
            let bound = floor.max(p.err_estimate + q.err_estimate + PAIR_SLACK);
            out.reports.push(CheckReport::run(
                format!("{prefix}/{inputs}/{}~{}", p.method, q.method),
                inputs.clone(),
                bound,
                || Ok((p.value - q.value).norm()),
            ));
        }
    }
    out
}

/// Relative bound used by [`ladder_check`].
pub const LADDER_REL_BOUND: f64 = 1e-5;

/// `z·d/dz Li_α(z)` by central difference against `Li_{α−1}(z)`.
///
/// With `backend = None` values come from [`eval_auto`]; otherwise from the
/// named backend at both orders.
pub fn ladder_check(
    a: Order,
    z: Complex64,
    h: f64,
    cfg: &ToleranceConfig,
    backend: Option<Method>,
) -> CheckReport {
    let tight = cfg.tightened(1e-13);
    let eval = |order: Order, at: Complex64| match backend {
        Some(m) => eval_method(m, order, at, &tight),
        None => eval_auto(order, at, &tight),
    };
    let lower = Order::new(a.alpha() - 1.0);
    let tag = backend.map_or("auto".to_string(), |m| m.to_string());
    let name = format!("ladder/{}/{tag}", show(a, z));
    let inputs = format!("{} h={h:e}", show(a, z));
    let pieces = (|| -> Result<(EvalResult, EvalResult, EvalResult)> {
        Ok((eval(a, z + h)?, eval(a, z - h)?, eval(lower, z)?))
    })();
    let (fp, fm, rhs) = match pieces {
        Ok(p) => p,
        Err(e) => return CheckReport::failed(name, inputs, &e),
    };
    let scale = rhs.value.norm().max(f64::MIN_POSITIVE);
    let propagated =
        (z.norm() * (fp.err_estimate + fm.err_estimate) / (2.0 * h) + rhs.err_estimate) / scale;
    CheckReport::run(name, inputs, LADDER_REL_BOUND.max(propagated), || {
        let deriv = (fp.value - fm.value) / (2.0 * h);
        Ok((z * deriv - rhs.value).norm() / scale)
    })
}

/// `(α, z)` pairs of the agreement grid.
pub fn probe_grid() -> Vec<(Order, Complex64)> {
    let text = include_str!("../fixtures/probe_grid.txt");
    let mut alphas = Vec::new();
    let mut zs = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parts: Vec<&str> = line.split_whitespace().collect();
        let num = |i: usize| parts[i].parse::<f64>().expect("probe grid number");
        let v = c64(num(1), num(2));
        match parts[0] {
            "alpha" => alphas.push(Order::new(v)),
            "z" => zs.push(v),
            other => panic!("unknown probe grid tag {other}"),
        }
    }
    alphas
        .iter()
        .flat_map(|&a| zs.iter().map(move |&z| (a, z)))
        .collect()
}

/// Group-law sample: `(word, α)` from a fixed seed.
pub fn random_words(count: usize, max_len: usize, seed: u64) -> Vec<PathWord> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let len = rng.gen_range(1..=max_len);
            let letters = (0..len).map(|_| {
                let g = if rng.gen_bool(0.5) {
                    Generator::C0
                } else {
                    Generator::C1
                };
                let mut e: i64 = rng.gen_range(1..=3);
                if rng.gen_bool(0.5) {
                    e = -e;
                }
                Letter::new(g, e)
            });
            PathWord::from_letters(letters)
        })
        .collect()
}

type Check = Box<dyn Fn(&ToleranceConfig) -> Vec<CheckReport> + Send + Sync>;

fn pair_bound(floor: f64, p: &EvalResult, q: &EvalResult) -> f64 {
    floor.max(p.err_estimate + q.err_estimate)
}

fn compare(
    name: String,
    inputs: String,
    floor: f64,
    p: Result<EvalResult>,
    q: Result<EvalResult>,
) -> CheckReport {
    match (p, q) {
        (Ok(p), Ok(q)) => CheckReport::run(name, inputs, pair_bound(floor, &p, &q), || {
            Ok((p.value - q.value).norm())
        }),
        (Err(e), _) | (_, Err(e)) => CheckReport::failed(name, inputs, &e),
    }
}

fn representation(cfg: &ToleranceConfig) -> Vec<CheckReport> {
    let mut out = Vec::new();
    let mut pairs = 0usize;
    for (a, z) in probe_grid() {
        let c = crosscheck_with_floor(a, z, cfg, 0.0, "representation");
        pairs += c.reports.iter().filter(|r| r.name.contains('~')).count();
        out.extend(c.reports);
    }
    out.push(CheckReport::run(
        "representation/pairs_executed",
        format!("pairs={pairs} required=20"),
        0.0,
        || Ok(20usize.saturating_sub(pairs) as f64),
    ));
    out
}

fn special_values(cfg: &ToleranceConfig) -> Vec<CheckReport> {
    [1.5, 2.5]
        .iter()
        .map(|&s| {
            let name = format!("special_value/Li_{s}(1)=zeta({s})");
            let a = Order::real(s);
            let z = c64(1.0, 0.0);
            let oracle = riemann_zeta(c64(s, 0.0)).map(|v| EvalResult::new(v, 0.0, Method::Series));
            compare(name, show(a, z), 1e-8, eval_appell(a, z, cfg), oracle)
        })
        .collect()
}

fn ml_vs_series(cfg: &ToleranceConfig) -> Vec<CheckReport> {
    let mut out = Vec::new();
    for alpha in [-0.5, -1.5] {
        for z in [c64(0.3, 0.0), Complex64::from_polar(0.6, PI / 3.0)] {
            let a = Order::real(alpha);
            out.push(compare(
                format!("ml_vs_series/{}", show(a, z)),
                show(a, z),
                1e-8,
                eval_method(Method::MittagLeffler, a, z, cfg),
                eval_series(a, z, cfg),
            ));
        }
    }
    out
}

fn zeta_expansion(cfg: &ToleranceConfig) -> Vec<CheckReport> {
    [(-1.5, -0.5), (-0.5, -1.0)]
        .iter()
        .map(|&(alpha, w)| {
            let a = Order::real(alpha);
            let w = c64(w, 0.0);
            compare(
                format!("zeta_expansion/alpha={alpha} w={}", w.re),
                format!("alpha={alpha} w={}", w.re),
                1e-8,
                eval_zeta_series(a, w, cfg),
                eval_series(a, w.exp(), cfg),
            )
        })
        .collect()
}

/// Measured jump `Li(x + i0) − Li(x − i0)`.
pub fn measured_jump(a: Order, x: f64, cfg: &ToleranceConfig) -> Result<EvalResult> {
    let up = eval_on_cut(a, x, CutSide::Above, cfg)?;
    let down = eval_on_cut(a, x, CutSide::Below, cfg)?;
    Ok(EvalResult::new(
        up.value - down.value,
        up.err_estimate + down.err_estimate,
        up.method,
    ))
}

/// `(2πi/Γ(α)) (log x)^{α−1}` for real `x > 1`.
pub fn jump_closed_form(alpha: Complex64, x: f64) -> Result<Complex64> {
    let log_x = c64(x.ln(), 0.0);
    Ok(c64(0.0, TWO_PI) / gamma(alpha)? * (log_x.ln() * (alpha - 1.0)).exp())
}

fn jumps(cfg: &ToleranceConfig) -> Vec<CheckReport> {
    let mut out = Vec::new();
    for alpha in [0.5, 1.5] {
        for x in [2.0, 10.0] {
            let a = Order::real(alpha);
            let name = format!("jump/alpha={alpha} x={x}");
            let inputs = name.clone();
            let pieces =
                measured_jump(a, x, cfg).and_then(|j| Ok((j, jump_closed_form(a.alpha(), x)?)));
            out.push(match pieces {
                Ok((j, exact)) => {
                    let bound = 1e-5_f64.max(j.err_estimate / exact.norm());
                    CheckReport::run(name, inputs, bound, || {
                        Ok((j.value - exact).norm() / exact.norm())
                    })
                }
                Err(e) => CheckReport::failed(name, inputs, &e),
            });
        }
    }
    let a = Order::real(0.5);
    let name = "jump/monodromy_consistency alpha=0.5 x=2".to_string();
    let pieces = measured_jump(a, 2.0, cfg).and_then(|j| {
        let m0 = m_alpha_k(a, c64(2.0, 0.0), 0)?;
        Ok((j, (1.0 - monodromy_factor(a.alpha())) * m0))
    });
    out.push(match pieces {
        Ok((j, exact)) => {
            CheckReport::run(name.clone(), name, 1e-6_f64.max(j.err_estimate), || {
                Ok((j.value - exact).norm())
            })
        }
        Err(e) => CheckReport::failed(name.clone(), name, &e),
    });
    out
}

fn ladders(cfg: &ToleranceConfig) -> Vec<CheckReport> {
    let mut out: Vec<CheckReport> = [
        (0.5, c64(0.4, 0.0)),
        (1.5, c64(-2.0, 0.0)),
        (-0.5, c64(0.3, 0.0)),
    ]
    .iter()
    .map(|&(alpha, z)| ladder_check(Order::real(alpha), z, 1e-5 * z.norm(), cfg, None))
    .collect();
    let z = c64(-3.0, 0.0);
    out.push(ladder_check(
        Order::real(0.5),
        z,
        1e-5 * z.norm(),
        cfg,
        Some(Method::Hankel),
    ));
    out
}

fn link_identity(cfg: &ToleranceConfig) -> Vec<CheckReport> {
    let a = Order::real(0.5);
    let z = c64(0.3, 0.0);
    let name = "link_identity/appell_vs_raw_hankel".to_string();
    let inputs = show(a, z);
    let pieces = (|| -> Result<(Complex64, f64, Complex64, f64)> {
        let ap = eval_appell(a, z, cfg)?;
        let factor = gamma(a.alpha())? * (1.0 - monodromy_factor(a.alpha()));
        let raw = hankel_contour_integral(a, z, cfg)?;
        Ok((
            ap.value * factor,
            ap.err_estimate * factor.norm(),
            raw.value,
            raw.error,
        ))
    })();
    vec![match pieces {
        Ok((lhs, e1, rhs, e2)) => CheckReport::run(name, inputs, 1e-8_f64.max(e1 + e2), || {
            Ok((lhs - rhs).norm())
        }),
        Err(e) => CheckReport::failed(name, inputs, &e),
    }]
}

fn monodromy_checks(_cfg: &ToleranceConfig) -> Vec<CheckReport> {
    let mut out = Vec::new();
    let words = random_words(100, 12, 0x5eed);
    for alpha in [c64(0.5, 0.0), c64(0.3, 0.2)] {
        let a = Order::new(alpha);
        let inputs = format!("alpha={} words=100 max_len=12", format_complex(alpha));
        out.push(CheckReport::run(
            format!("monodromy/group_law alpha={}", format_complex(alpha)),
            inputs,
            1e-13,
            || {
                let mut worst: f64 = 0.0;
                for w in &words {
                    let mut letters = w.letters().to_vec();
                    letters.extend(w.inverse().letters().iter().copied());
                    let v = SymbolicBranch::identity().apply_letters(&letters).eval(a);
                    worst = worst.max(v.max_coeff_distance(&BranchVector::identity()));
                }
                Ok(worst)
            },
        ));
        out.push(CheckReport::run(
            format!("monodromy/c0_shift alpha={}", format_complex(alpha)),
            "n=-3..3 applied to c1",
            0.0,
            || {
                let base = transport(&"c1".parse().expect("word"), a)?;
                let mut worst: f64 = 0.0;
                for n in -3..=3i64 {
                    let w = PathWord::from_letters([
                        Letter::new(Generator::C0, n),
                        Letter::new(Generator::C1, 1),
                    ]);
                    let v = transport(&w, a)?;
                    let mut expected = base.clone();
                    expected.shift_m(n);
                    worst = worst.max(v.max_coeff_distance(&expected));
                }
                Ok(worst)
            },
        ));
        let consistent = ml_equivariance_check(a, C1Variant::Consistent);
        out.push(CheckReport::run(
            format!("monodromy/equivariance alpha={}", format_complex(alpha)),
            format!("k_max={}", consistent.k_max),
            0.0,
            || {
                Ok(if consistent.exact_zero {
                    consistent.residual
                } else {
                    f64::INFINITY
                })
            },
        ));
        let literal = ml_equivariance_check(a, C1Variant::LiteralJump);
        out.push(CheckReport::run(
            format!(
                "monodromy/equivariance_literal_variant alpha={}",
                format_complex(alpha)
            ),
            "expected residual magnitude 1",
            1e-14,
            || Ok((literal.residual - 1.0).abs()),
        ));
    }
    out
}

fn asymptotics(cfg: &ToleranceConfig) -> Vec<CheckReport> {
    let a = Order::real(0.5);
    let deviation = |x: f64| -> Result<f64> {
        let z = c64(x, 0.0);
        let v = eval_hankel(a, z, cfg)?;
        Ok((v.value / asymptotic_leading(a.alpha(), z)? - 1.0).norm())
    };
    vec![
        CheckReport::run("asymptotic/ratio z=-1e6", "alpha=0.5 z=-1e6", 0.3, || {
            deviation(-1e6)
        }),
        CheckReport::run(
            "asymptotic/decreasing",
            "deviation(z=-1e6) / deviation(z=-1e3)",
            1.0 - 1e-3,
            || Ok(deviation(-1e6)? / deviation(-1e3)?),
        ),
    ]
}

fn kernel_checks(_cfg: &ToleranceConfig) -> Vec<CheckReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xa1fa);
    let mut alphas = Vec::new();
    while alphas.len() < 100 {
        let alpha = c64(rng.gen_range(-4.0..4.0), rng.gen_range(-2.0..2.0));
        if Order::new(alpha).integer_distance() > 1e-3 {
            alphas.push(alpha);
        }
    }
    let reflection = |alphas: &[Complex64]| -> Result<f64> {
        let mut worst: f64 = 0.0;
        for &alpha in alphas {
            let lhs = 1.0 / ((1.0 - monodromy_factor(alpha)) * gamma(alpha)?);
            let rhs = c_alpha(Order::new(alpha))? / c64(0.0, TWO_PI);
            worst = worst.max((lhs - rhs).norm() / rhs.norm().max(1.0));
            let lhs = gamma(alpha)? * gamma(1.0 - alpha)? * (alpha * PI).sin();
            worst = worst.max((lhs - PI).norm() / PI);
        }
        Ok(worst)
    };
    let zeta_at =
        |s: f64, exact: f64| -> Result<f64> { Ok((riemann_zeta(c64(s, 0.0))? - exact).norm()) };
    vec![
        CheckReport::run("kernel/gamma_reflection", "100 seeded alpha", 1e-12, || {
            reflection(&alphas)
        }),
        CheckReport::run("kernel/zeta(2)", "s=2", 1e-12, || {
            zeta_at(2.0, PI * PI / 6.0)
        }),
        CheckReport::run("kernel/zeta(-1)", "s=-1", 1e-12, || {
            zeta_at(-1.0, -1.0 / 12.0)
        }),
        CheckReport::run("kernel/zeta_functional_equation", "s=-1.5", 1e-12, || {
            let s = c64(-1.5, 0.0);
            let rhs = 2.0
                * (c64(TWO_PI, 0.0).ln() * (s - 1.0)).exp()
                * (s * (PI / 2.0)).sin()
                * gamma(1.0 - s)?
                * riemann_zeta(1.0 - s)?;
            let lhs = riemann_zeta(s)?;
            Ok((lhs - rhs).norm() / rhs.norm().max(1.0))
        }),
    ]
}

fn real_valued(cfg: &ToleranceConfig) -> Vec<CheckReport> {
    let zs: Vec<f64> = (0..9).map(|j| 0.1 + 0.8 * (j as f64 + 0.5) / 9.0).collect();
    let mut out = Vec::new();
    for alpha in [0.5, -0.5, 1.5, -1.5] {
        let a = Order::real(alpha);
        for m in [
            Method::Series,
            Method::Appell,
            Method::Hankel,
            Method::MittagLeffler,
            Method::ZetaSeries,
        ] {
            let results: Vec<Result<EvalResult>> = zs
                .iter()
                .map(|&x| eval_method(m, a, c64(x, 0.0), cfg))
                .collect();
            if results.iter().all(|r| matches!(r, Err(Error::Domain(_)))) {
                continue;
            }
            let name = format!("real_valued/alpha={alpha}/{m}");
            let inputs = "z = 0.1 + 0.8 (j + 1/2)/9, j = 0..8".to_string();
            let collected: Result<Vec<EvalResult>> = results.into_iter().collect();
            out.push(match collected {
                Ok(rs) => {
                    let bound = rs.iter().map(|r| r.err_estimate).fold(1e-10, f64::max);
                    CheckReport::run(name, inputs, bound, || {
                        Ok(rs.iter().map(|r| r.value.im.abs()).fold(0.0, f64::max))
                    })
                }
                Err(e) => CheckReport::failed(name, inputs, &e),
            });
        }
    }
    out
}

fn negint_closed(cfg: &ToleranceConfig) -> Vec<CheckReport> {
    let mut out = Vec::new();
    for m in 1..=3u32 {
        for x in [0.5, -0.5, 0.9] {
            let z = c64(x, 0.0);
            let name = format!("negint_closed/m={m} z={x}");
            let pieces = eval_negint_closed(m, z).and_then(|c| {
                let tight = cfg.tightened(1e-15 * c.value.norm().max(1.0));
                Ok((c, eval_series(Order::real(-(m as f64)), z, &tight)?))
            });
            out.push(match pieces {
                Ok((c, s)) => {
                    let scale = c.value.norm().max(f64::MIN_POSITIVE);
                    let bound = 1e-12_f64.max((c.err_estimate + s.err_estimate) / scale);
                    CheckReport::run(name.clone(), name, bound, || {
                        Ok((c.value - s.value).norm() / scale)
                    })
                }
                Err(e) => CheckReport::failed(name.clone(), name, &e),
            });
        }
    }
    out
}

/// All checks, sorted by name. Deterministic for a given `cfg`.
pub fn run_selfcheck(cfg: &ToleranceConfig) -> Vec<CheckReport> {
    let checks: Vec<Check> = vec![
        Box::new(representation),
        Box::new(special_values),
        Box::new(ml_vs_series),
        Box::new(zeta_expansion),
        Box::new(jumps),
        Box::new(ladders),
        Box::new(link_identity),
        Box::new(monodromy_checks),
        Box::new(asymptotics),
        Box::new(kernel_checks),
        Box::new(real_valued),
        Box::new(negint_closed),
    ];
    if let Err(e) = cfg.validate() {
        return vec![CheckReport::failed("config", format!("{cfg:?}"), &e)];
    }
    let mut reports: Vec<CheckReport> = checks.par_iter().flat_map(|c| c(cfg)).collect();
    reports.sort_by(|a, b| a.name.cmp(&b.name));
    reports
}
