//! Exact closed forms for Abel-summable series, each paired with numerical
//! oracles that do not share code with the symbolic engine.
//!
//! Closed forms are rational combinations of the atoms `1, γ, π, ln p,
//! ln sin(πj/p), π·cot(πl/p)` ([`SymbolicValue`]), extended by exact cosine
//! weights where a cosine is irrational ([`ClosedForm`]). The oracles
//! (accelerated summation, Abel limits, tanh-sinh quadrature) work in MPFR
//! arithmetic at a caller-chosen precision.
//!
//! ```
//! use abelsum_core::{closed_form_sum, eval_numeric, num_equal, pi_cot, series_numeric, PeriodicCoefficients, Rational};
//!
//! // 1 − 1/2 + 1/4 − 1/5 + … = π/(3√3)
//! let c: PeriodicCoefficients = "1,-1,0".parse().unwrap();
//! let closed = closed_form_sum(&c).unwrap();
//! let expected = pi_cot(1, 3).unwrap().scale(&Rational::new(1, 3));
//! assert!(num_equal(&closed, &expected, 256));
//!
//! let oracle = series_numeric(&c, 128).unwrap();
//! assert!(oracle.value.abs_diff_f64(eval_numeric(&closed, 128).value()) < 1e-30);
//! ```

pub mod error;
pub mod numeric;
pub mod rational;
pub mod symbolic;
pub mod oracle;
pub mod digamma;
pub mod periodic;
pub mod alternating;
pub mod characters;
pub mod classics;
pub mod verify;

pub use alternating::{
    cot_csc_integrals, i_closed, i_functional_check, i_numeric, i_value, i_via_digamma, series_pq, LambdaArg,
};
pub use characters::{
    jacobi_symbol, l1, legendre_l1_check, legendre_l1_rhs, legendre_symbol, real_characters, validate,
    validate_from_one, DirichletCharacter, L1Values,
};
pub use classics::*;
pub use digamma::{
    digamma_integral_numeric, digamma_rational, digamma_series_numeric, digamma_shift, gauss_fourier_check,
};
pub use error::{Error, Result};
pub use numeric::{Complex, NumericValue, DEFAULT_PRECISION, GUARD_BITS, MIN_PRECISION};
pub use oracle::{
    abel_limit, abel_limit_with, accelerated_sum, accelerated_sum_complex, cauchy_product_check,
    euler_gamma_estimate, quadrature, quadrature_complex, AbelOptions, AbelReport, CoefficientStream,
    ComplexOracleResult, OracleResult, QuadNode, Upper,
};
pub use periodic::{
    alt_path_sum, alt_path_sum_complex, closed_form_sum, cos_kernel_sum, exp_kernel_sum, partial_fraction,
    partial_fraction_complex, root_integral, series_numeric, sine_product, weighted_sine_sum,
    weighted_sine_sum_direct, PeriodicCoefficients, ResidueTerm, RootIntegral, ScaledSqrt, SineProduct,
};
pub use rational::Rational;
pub use symbolic::{eval_numeric, ln_sin, normalize_atom, num_equal, pi_cot, Atom, ClosedForm, Evaluate, SymbolicValue};
pub use verify::{run_suite, Check, SuiteReport};
