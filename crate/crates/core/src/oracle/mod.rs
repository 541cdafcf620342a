//! Numerical oracles, independent of the symbolic engine: Abel limits,
//! accelerated summation, double-exponential quadrature.
//!
//! Every function here is a pure function of its inputs. Summation order is
//! fixed, so identical inputs give bit-identical outputs.

mod abel;
mod accel;
mod quad;
mod stream;

use rug::Float;
use serde::{Deserialize, Serialize};

pub use abel::{abel_limit, abel_limit_with, AbelOptions, AbelReport, AbelStep};
pub use accel::{accelerated_sum, accelerated_sum_complex, extrapolate, richardson_extrapolate, Basis};
pub use quad::{quadrature, quadrature_complex, QuadNode, Upper};
pub use stream::CoefficientStream;

use crate::error::{Error, Result};
use crate::numeric::{Complex, NumericValue};

/// A real oracle value with its heuristic error.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleResult {
    pub value: NumericValue,
    #[serde(rename = "error")]
    pub error_estimate: NumericValue,
    #[serde(rename = "terms")]
    pub terms_used: u64,
    pub converged: bool,
}

impl OracleResult {
    pub fn new(value: &Float, error: &Float, terms_used: u64, converged: bool, precision_bits: u32) -> Self {
        OracleResult {
            value: NumericValue::new(value, precision_bits),
            error_estimate: NumericValue::new(&Float::with_val(precision_bits, error.abs_ref()), precision_bits),
            terms_used,
            converged,
        }
    }
}

/// A complex oracle value; the error bounds the larger of the two parts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexOracleResult {
    pub re: NumericValue,
    pub im: NumericValue,
    #[serde(rename = "error")]
    pub error_estimate: NumericValue,
    #[serde(rename = "terms")]
    pub terms_used: u64,
    pub converged: bool,
}

impl ComplexOracleResult {
    pub fn new(value: &Complex, error: &Float, terms_used: u64, converged: bool, precision_bits: u32) -> Self {
        ComplexOracleResult {
            re: NumericValue::new(&value.re, precision_bits),
            im: NumericValue::new(&value.im, precision_bits),
            error_estimate: NumericValue::new(&Float::with_val(precision_bits, error.abs_ref()), precision_bits),
            terms_used,
            converged,
        }
    }

    pub fn value(&self) -> Complex {
        Complex::new(self.re.value().clone(), self.im.value().clone())
    }

    pub fn real_part(self) -> OracleResult {
        OracleResult {
            value: self.re,
            error_estimate: self.error_estimate,
            terms_used: self.terms_used,
            converged: self.converged,
        }
    }
}

/// `H_N − ln N − 1/(2N)`, a midpoint-corrected approximation of γ whose
/// error is about `1/(12N²)`.
pub fn euler_gamma_estimate(n: u64) -> Result<NumericValue> {
    if n < 2 {
        return Err(Error::ArgOutOfRange(format!("euler_gamma_estimate needs N >= 2, got {n}")));
    }
    let prec = 128;
    let mut h = Float::new(prec);
    for k in 1..=n {
        h += Float::with_val(prec, 1u32) / k;
    }
    let ln_n = Float::with_val(prec, n).ln();
    let corr = Float::with_val(prec, 1u32) / (2 * n);
    Ok(NumericValue::new(&(h - ln_n - corr), prec))
}

/// Term budget for the explicitly convolved stream in [`cauchy_product_check`].
pub const CAUCHY_MAX_TERMS: u64 = 1 << 15;

/// Abel's product theorem as an executable check: returns `(A, B, C)` where
/// `C` is the Abel limit of the explicit Cauchy product `cₙ = Σ a_k b_{n−k}`.
///
/// The convolution costs `O(n²)`, so the product stream runs with a term
/// budget of [`CAUCHY_MAX_TERMS`]; `C` is therefore only as accurate as the
/// schedule reachable within that budget at the requested precision.
pub fn cauchy_product_check(
    a: &CoefficientStream,
    b: &CoefficientStream,
    precision_bits: u32,
) -> Result<(NumericValue, NumericValue, NumericValue)> {
    let opts = AbelOptions::default();
    let ra = abel_limit_with(a, precision_bits, &opts)?.result;
    let rb = abel_limit_with(b, precision_bits, &opts)?.result;
    let c = CoefficientStream::cauchy_product(a, b)
        .ok_or_else(|| Error::Domain("Cauchy products are defined for real streams".into()))?;
    let copts = AbelOptions { max_terms: CAUCHY_MAX_TERMS, ..opts };
    let rc = abel_limit_with(&c, precision_bits, &copts)?.result;
    Ok((ra.value, rb.value, rc.value))
}
