//! `I(λ) = Σ_{n≥0} (−1)ⁿ/(λn + 1)` and Euler's cot/csc integrals.

use std::fmt;
use std::str::FromStr;

use rug::Float;

use crate::digamma::{digamma_series_numeric, digamma_shift};
use crate::error::{Error, Result};
use crate::numeric::{self, check_precision, pow2_neg, powf, Complex, NumericValue, GUARD_BITS};
use crate::oracle::{accelerated_sum, quadrature, CoefficientStream, OracleResult, QuadNode, Upper};
use crate::periodic::{horner, quotient_integral};
use crate::rational::Rational;
use crate::symbolic::{gcd, ln_integer, ln_sin, pi_cot, ClosedForm, SymbolicValue};

/// Term budget for [`series_pq`]'s oracle.
pub const SERIES_MAX_TERMS: u64 = 1 << 20;

/// The argument of `I`: an exact ratio `p/q` or a real number.
#[derive(Debug, Clone, PartialEq)]
pub enum LambdaArg {
    /// `p/q` in lowest terms, `p ≥ 0`, `q > 0`.
    Ratio { p: u64, q: u64 },
    Real(Float),
}

impl LambdaArg {
    pub fn ratio(p: u64, q: u64) -> Result<Self> {
        if q == 0 {
            return Err(Error::ArgOutOfRange("λ = p/q needs q > 0".into()));
        }
        let g = gcd(p, q).max(1);
        Ok(LambdaArg::Ratio { p: p / g, q: q / g })
    }

    pub fn to_float(&self, prec: u32) -> Float {
        match self {
            LambdaArg::Ratio { p, q } => Float::with_val(prec, *p) / *q,
            LambdaArg::Real(x) => Float::with_val(prec, x),
        }
    }
}

impl FromStr for LambdaArg {
    type Err = Error;

    /// `"3/2"` gives a ratio; anything else is parsed as a real.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some((a, b)) = s.split_once('/') {
            let p = a.trim().parse().map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
            let q = b.trim().parse().map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
            return Self::ratio(p, q);
        }
        let v = Float::parse(s).map_err(|e| Error::Parse(format!("{s:?}: {e}")))?;
        let x = Float::with_val(numeric::STORED_CONSTANT_BITS, v);
        if !x.is_finite() {
            return Err(Error::Parse(format!("λ must be finite, got {s:?}")));
        }
        Ok(LambdaArg::Real(x))
    }
}

impl fmt::Display for LambdaArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LambdaArg::Ratio { p, q } => write!(f, "{p}/{q}"),
            LambdaArg::Real(x) => f.write_str(&numeric::format_float(x, 20)),
        }
    }
}

/// `I(λ) = ∫₀¹ dt/(1 + t^λ)` for `λ > 0`; `I(0) = 1/2` exactly.
pub fn i_numeric(lambda: &Float, precision_bits: u32) -> Result<OracleResult> {
    check_precision(precision_bits)?;
    if lambda.is_nan() || *lambda < 0 {
        return Err(Error::Domain("I(λ) by quadrature needs λ >= 0".into()));
    }
    let work = precision_bits + GUARD_BITS;
    if lambda.is_zero() {
        let half = Float::with_val(work, 0.5f64);
        return Ok(OracleResult::new(&half, &Float::new(work), 0, true, precision_bits));
    }
    let lam = Float::with_val(work, lambda);
    quadrature(
        move |node: &QuadNode| {
            let prec = node.x.prec();
            Float::with_val(prec, 1u32) / (powf(&node.from_lo, &lam) + 1u32)
        },
        &Float::new(work),
        &Upper::Finite(Float::with_val(work, 1u32)),
        precision_bits,
    )
}

/// `I(p/q)` for `0 < q < p`:
///
/// `(qπ/p)/(2 sin(qπ/p)) − (2q/p) Σ_{j=0}^{⌊p/2⌋−1} cos((2j+1)qπ/p)·ln sin((2j+1)π/(2p))`
///
/// The first term is exact via `π·csc(x) = π·cot(x/2) − π·cot(x)`.
pub fn i_closed(p: u64, q: u64) -> Result<ClosedForm> {
    if q == 0 || q >= p {
        return Err(Error::ArgOutOfRange(format!("I(p/q) in closed form needs 0 < q < p, got p = {p}, q = {q}")));
    }
    let g = gcd(p, q);
    let (p, q) = (p / g, q / g);
    let pi_csc = pi_cot(q, 2 * p)?.sub(&pi_cot(q, p)?);
    let mut out = ClosedForm::from(pi_csc.scale(&Rational::new(q as i64, 2 * p as i64)));
    let c = Rational::new(-2 * q as i64, p as i64);
    for j in 0..p / 2 {
        let k = 2 * j + 1;
        let turns = Rational::new((k * q) as i64, 2 * p as i64);
        out.add_cos_times(&c, &turns, &ln_sin(k, 2 * p)?);
    }
    Ok(out)
}

/// `Σ (−1)ⁿ/(pn + q) = I(p/q)/q`, exactly and by the series oracle.
///
/// For `q < p` the closed form is [`i_closed`]; `q = p` gives `ln 2/p`; for
/// `q > p` it comes from `(ψ((q+p)/2p) − ψ(q/2p))/(2p)`.
pub fn series_pq(p: u64, q: u64, precision_bits: u32) -> Result<(ClosedForm, OracleResult)> {
    check_precision(precision_bits)?;
    if p == 0 || q == 0 {
        return Err(Error::ArgOutOfRange(format!("series_pq needs p, q > 0, got p = {p}, q = {q}")));
    }
    let exact = if q < p {
        i_closed(p, q)?.scale(&Rational::new(1, q as i64))
    } else if q == p {
        ClosedForm::from(ln_integer(2)?.scale(&Rational::new(1, p as i64)))
    } else {
        let hi = digamma_shift(&Rational::new((q + p) as i64, 2 * p as i64))?;
        let lo = digamma_shift(&Rational::new(q as i64, 2 * p as i64))?;
        let inv = Rational::new(1, 2 * p as i64);
        let mut d = hi.scale(&inv);
        d.add_assign_scaled(&lo, &-&inv);
        d
    };
    let stream = CoefficientStream::real(move |n, prec| {
        let v = Float::with_val(prec, 1u32) / (p * n + q);
        if n % 2 == 0 {
            v
        } else {
            -v
        }
    })
    .with_period(2);
    let oracle = accelerated_sum(&stream, SERIES_MAX_TERMS, precision_bits)?;
    Ok((exact, oracle))
}

fn check_not_pole(lambda: &Float, precision_bits: u32) -> Result<()> {
    if lambda.is_zero() {
        return Err(Error::Pole("I has a pole at λ = 0".into()));
    }
    if *lambda < 0 {
        let work = lambda.prec().max(precision_bits);
        let r = Float::with_val(work, lambda.recip_ref());
        let k = Float::with_val(work, -&r).round();
        let dist = Float::with_val(work, &r + &k).abs();
        if k >= 1 && dist <= pow2_neg(precision_bits.saturating_sub(8), work) * &k {
            return Err(Error::Pole(format!("I has a pole at λ = -1/{}", numeric::format_float(&k, 20))));
        }
    }
    Ok(())
}

/// `I(λ) = (ψ(1/2 + 1/(2λ)) − ψ(1/(2λ)))/(2λ)`, defined off `{0, −1, −1/2, …}`.
pub fn i_via_digamma(lambda: &Float, precision_bits: u32) -> Result<NumericValue> {
    check_precision(precision_bits)?;
    check_not_pole(lambda, precision_bits)?;
    let work = precision_bits + GUARD_BITS;
    let two_lam = Float::with_val(work, lambda * 2u32);
    let a = Float::with_val(work, two_lam.recip_ref());
    let b = Float::with_val(work, &a + 0.5f64);
    let psi_b = digamma_series_numeric(&Complex::real(b), work)?;
    let psi_a = digamma_series_numeric(&Complex::real(a), work)?;
    let v = (psi_b.re - psi_a.re) / two_lam;
    Ok(NumericValue::new(&v, precision_bits))
}

/// `I(λ)` on its whole real domain: quadrature for `λ ≥ 0`, digamma otherwise.
pub fn i_value(lambda: &Float, precision_bits: u32) -> Result<NumericValue> {
    if *lambda >= 0 {
        Ok(i_numeric(lambda, precision_bits)?.value)
    } else {
        i_via_digamma(lambda, precision_bits)
    }
}

/// `(1 − λ)·I(λ) + I(λ/(1 − λ))`, which equals `1`. Returns `(lhs, 1)`.
pub fn i_functional_check(lambda: &Float, precision_bits: u32) -> Result<(NumericValue, NumericValue)> {
    check_precision(precision_bits)?;
    if *lambda == 1 {
        return Err(Error::Domain("the functional equation is undefined at λ = 1".into()));
    }
    let work = precision_bits + GUARD_BITS;
    let lam = Float::with_val(work, lambda);
    let one_minus = Float::with_val(work, 1u32 - &lam);
    let mu = Float::with_val(work, &lam / &one_minus);
    let a = i_value(&lam, work)?;
    let b = i_value(&mu, work)?;
    let lhs = one_minus * a.value() + b.value();
    Ok((NumericValue::new(&lhs, precision_bits), NumericValue::new(&Float::with_val(precision_bits, 1u32), precision_bits)))
}

/// Both sides of Euler's integrals for `0 < q < p`:
///
/// `∫₀¹ (t^{q−1} − t^{p−q−1})/(1 − tᵖ) dt = (π/p)·cot(qπ/p)` and
/// `∫₀^∞ t^{q−1}/(1 + tᵖ) dt = (π/p)/sin(qπ/p)`,
///
/// the second integral folded onto `(0, 1]` by `t = 1/s`.
pub fn cot_csc_integrals(
    p: u64,
    q: u64,
    precision_bits: u32,
) -> Result<(NumericValue, SymbolicValue, NumericValue, SymbolicValue)> {
    check_precision(precision_bits)?;
    if q == 0 || q >= p {
        return Err(Error::ArgOutOfRange(format!("cot_csc_integrals needs 0 < q < p, got p = {p}, q = {q}")));
    }
    let n = p as usize;
    let mut num = vec![Rational::zero(); n];
    num[(q - 1) as usize] += &Rational::one();
    num[(p - q - 1) as usize] += &Rational::from_int(-1);
    let cot_lhs = quotient_integral(&num, n, precision_bits)?.value;

    let work = precision_bits + GUARD_BITS;
    let mut top = vec![Float::new(work); n];
    top[(q - 1) as usize] += 1u32;
    top[(p - q - 1) as usize] += 1u32;
    let mut bottom = vec![Float::new(work); n + 1];
    bottom[0] += 1u32;
    bottom[n] += 1u32;
    let csc_lhs = quadrature(
        |node: &QuadNode| horner(&top, &node.x) / horner(&bottom, &node.x),
        &Float::new(work),
        &Upper::Finite(Float::with_val(work, 1u32)),
        precision_bits,
    )?
    .value;

    let g = gcd(p, q);
    let (pr, qr) = (p / g, q / g);
    let inv_p = Rational::new(1, p as i64);
    let cot_rhs = pi_cot(qr, pr)?.scale(&inv_p);
    let csc_rhs = pi_cot(qr, 2 * pr)?.sub(&pi_cot(qr, pr)?).scale(&inv_p);
    Ok((cot_lhs, cot_rhs, csc_lhs, csc_rhs))
}
