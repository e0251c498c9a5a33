//! Fractional polylogarithm `Li_α(z)` for non-integer complex order `α`.
//!
//! Several independent representations of the principal branch are provided
//! (power series, Appell's integral, a Hankel contour integral, the
//! Mittag-Leffler sum over `M_α[k]`, and an expansion in zeta values), along
//! with the exact action of the loops around 0 and 1 on the span of
//! `{Li_α, M_α[k]}`, which evaluates `Li_α` on any sheet of the universal
//! cover of ℂ∖{0,1}.
//!
//! ```
//! use fracpolylog::{eval_auto, Order, ToleranceConfig};
//! use num_complex::Complex64;
//!
//! let r = eval_auto(Order::real(0.5), Complex64::new(-5.0, 0.0), &ToleranceConfig::default()).unwrap();
//! assert!(r.err_estimate < 1e-9);
//! ```

pub mod domain;
pub mod error;
pub mod evaluators;
pub mod literal;
pub mod monodromy;
pub mod numkernel;
pub mod quadrature;
pub mod validation;

pub use domain::{
    branch_value, m_alpha_k, reduce_word, BranchVector, CoverPoint, EvalResult, Generator, Letter,
    Method, PathWord,
};
pub use error::{DomainError, Error, Result};
pub use evaluators::{
    asymptotic_leading, eval_appell, eval_auto, eval_hankel, eval_method, eval_mittag_leffler,
    eval_negint_closed, eval_on_cut, eval_series, eval_zeta_series, hankel_contour_integral,
    CutSide, ToleranceConfig,
};
pub use monodromy::{
    apply_generator, eval_cover, ml_equivariance_check, transport, C1Variant, EquivarianceReport,
    GeneratorAction, LaurentPoly, SymbolicBranch,
};
pub use numkernel::{c_alpha, gamma, principal_log, principal_pow, riemann_zeta, Order};
