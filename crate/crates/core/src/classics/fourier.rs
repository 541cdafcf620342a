use std::sync::{Arc, Mutex};

use rug::Float;

use crate::error::{Error, Result};
use crate::numeric::{self, check_precision, pow2_neg, Complex, GUARD_BITS};
use crate::oracle::{accelerated_sum, accelerated_sum_complex, CoefficientStream, OracleResult};
use crate::rational::Rational;
use crate::symbolic::{ln_integer, ln_sin, SymbolicValue};

const SERIES_MAX_TERMS: u64 = 1 << 20;
const BINOMIAL_MAX_TERMS: u64 = 1 << 18;

/// Closed forms of a cosine series and its companion sine series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FourierSums {
    pub cos_sum: SymbolicValue,
    pub sin_sum: SymbolicValue,
}

fn angle_parts(theta_over_pi: &Rational) -> Result<(i64, i64)> {
    theta_over_pi
        .to_i64_pair()
        .ok_or_else(|| Error::Domain(format!("angle {theta_over_pi}·π is too large to handle")))
}

/// `Σ cos(nθ)/n = −ln 2 − ln sin(|θ|/2)` and `Σ sin(nθ)/n = −arg(1 − e^{iθ})`
/// for `θ = π·theta_over_pi`, `0 < |θ| ≤ π`.
///
/// The sine sum is `(π − θ)/2` for `θ ∈ (0, π]` and `−(π + θ)/2` for `θ < 0`.
pub fn fourier_log_sums(theta_over_pi: &Rational) -> Result<FourierSums> {
    let (a, b) = angle_parts(theta_over_pi)?;
    if a == 0 || a.abs() > b {
        return Err(Error::Domain(format!("the log Fourier sums need 0 < |θ| <= π, got θ = {theta_over_pi}·π")));
    }
    let mut cos_sum = ln_integer(2)?.neg();
    cos_sum.add_assign(&ln_sin(a.unsigned_abs(), 2 * b as u64)?.neg());
    let im = (Rational::one() - theta_over_pi.abs()) * Rational::new(a.signum(), 2);
    Ok(FourierSums { cos_sum, sin_sum: SymbolicValue::pi().scale(&im) })
}

/// [`fourier_log_sums`] at an arbitrary real `0 < |θ| ≤ π`, numerically.
pub fn fourier_log_sums_numeric(theta: &Float) -> Result<(Float, Float)> {
    let prec = theta.prec();
    let pi = numeric::pi(prec);
    let t = Float::with_val(prec, theta.abs_ref());
    if theta.is_zero() || t > pi || theta.is_nan() {
        return Err(Error::Domain("the log Fourier sums need 0 < |θ| <= π".into()));
    }
    let c = -(Float::with_val(prec, &t / 2u32).sin() * 2u32).ln();
    let mut s = (pi - t) / 2u32;
    if *theta < 0 {
        s = -s;
    }
    Ok((c, s))
}

/// `n ↦ sign(n)·trig(nπa/b)/n` streams, `n ≥ 1`, with exact angle reduction.
fn trig_stream(a: i64, b: i64, alternate: bool, sine: bool) -> CoefficientStream {
    let two_b = 2 * b as i128;
    CoefficientStream::real(move |k, prec| {
        let n = k + 1;
        let r = (n as i128 * a as i128).rem_euclid(two_b);
        let angle = numeric::pi(prec) * Float::with_val(prec, r as i64) / b;
        let mut v = if sine { angle.sin() } else { angle.cos() } / n;
        if alternate && n % 2 == 0 {
            v = -v;
        }
        v
    })
    .with_period(2 * b as u64)
}

/// The four trigonometric series handled by [`fourier_series_oracle`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FourierSeries {
    /// `Σ cos(nθ)/n`
    Cos,
    /// `Σ sin(nθ)/n`
    Sin,
    /// `Σ (−1)^{n+1} cos(nθ)/n`
    AltCos,
    /// `Σ (−1)^{n+1} sin(nθ)/n`
    AltSin,
}

/// One of the series summed with acceleration at `θ = π·theta_over_pi`.
///
/// The cosine series diverge where their terms reduce to a harmonic series:
/// `Cos` at `θ ∈ 2πℤ` and `AltCos` at `θ ∈ π + 2πℤ`.
pub fn fourier_series_oracle(kind: FourierSeries, theta_over_pi: &Rational, precision_bits: u32) -> Result<OracleResult> {
    check_precision(precision_bits)?;
    let (a, b) = angle_parts(theta_over_pi)?;
    // θ/π = a/b; θ ∈ 2πℤ iff b = 1 and a even.
    let diverges = match kind {
        FourierSeries::Cos => b == 1 && a % 2 == 0,
        FourierSeries::AltCos => b == 1 && a % 2 != 0,
        _ => false,
    };
    if diverges {
        return Err(Error::Domain(format!("{kind:?} series diverges at θ = {theta_over_pi}·π")));
    }
    let (alternate, sine) = match kind {
        FourierSeries::Cos => (false, false),
        FourierSeries::Sin => (false, true),
        FourierSeries::AltCos => (true, false),
        FourierSeries::AltSin => (true, true),
    };
    accelerated_sum(&trig_stream(a, b, alternate, sine), SERIES_MAX_TERMS, precision_bits)
}

/// Oracle values of `Σ cos(nθ)/n` and `Σ sin(nθ)/n`.
pub fn fourier_log_oracle(theta_over_pi: &Rational, precision_bits: u32) -> Result<(OracleResult, OracleResult)> {
    Ok((
        fourier_series_oracle(FourierSeries::Cos, theta_over_pi, precision_bits)?,
        fourier_series_oracle(FourierSeries::Sin, theta_over_pi, precision_bits)?,
    ))
}

/// `Σ (−1)^{n+1} cos(nθ)/n = ln(2 cos(θ/2))` and `Σ (−1)^{n+1} sin(nθ)/n = θ/2`
/// for `|θ| < π`. At `θ = ±π` the sine series is `0` while `θ/2 → ±π/2`, so
/// the boundary is a domain error.
pub fn alt_fourier_sums(theta_over_pi: &Rational) -> Result<FourierSums> {
    let (a, b) = angle_parts(theta_over_pi)?;
    if a.abs() >= b {
        return Err(Error::Domain(format!("the alternating Fourier sums need |θ| < π, got θ = {theta_over_pi}·π")));
    }
    // 2 cos(θ/2) = 2 sin(π/2 − |θ|/2) = 2 sin(π(b − |a|)/(2b))
    let mut cos_sum = ln_integer(2)?;
    cos_sum.add_assign(&ln_sin((b - a.abs()) as u64, 2 * b as u64)?);
    let sin_sum = SymbolicValue::pi().scale(&(theta_over_pi * &Rational::new(1, 2)));
    Ok(FourierSums { cos_sum, sin_sum })
}

/// Oracle values of the two alternating series.
pub fn alt_fourier_oracle(theta_over_pi: &Rational, precision_bits: u32) -> Result<(OracleResult, OracleResult)> {
    Ok((
        fourier_series_oracle(FourierSeries::AltCos, theta_over_pi, precision_bits)?,
        fourier_series_oracle(FourierSeries::AltSin, theta_over_pi, precision_bits)?,
    ))
}

/// Cached `C(α, n)` by the recurrence `C(α, n) = C(α, n−1)·(α − n + 1)/n`.
struct Binomials {
    prec: u32,
    alpha: Complex,
    values: Vec<Complex>,
}

impl Binomials {
    fn get(&mut self, n: u64, prec: u32) -> Complex {
        if prec != self.prec {
            self.prec = prec;
            self.values = vec![Complex::one(prec)];
        }
        while self.values.len() as u64 <= n {
            let m = self.values.len() as u64;
            let f = Complex::new(
                Float::with_val(prec, &self.alpha.re - (m - 1)),
                Float::with_val(prec, &self.alpha.im),
            );
            let next = self.values[m as usize - 1].mul_ref(&f).scale(&(Float::with_val(prec, m).recip()));
            self.values.push(next);
        }
        self.values[n as usize].clone()
    }
}

/// `Σ C(α, n)·e^{inθ}` summed, and `(2 cos(θ/2))^α·e^{iαθ/2}`.
///
/// Needs `Re α > −1` and `|θ| < π`, or `Re α > 0` at `|θ| = π`.
pub fn binomial_fourier_check(alpha: &Complex, theta: &Float, precision_bits: u32) -> Result<(Complex, Complex)> {
    check_precision(precision_bits)?;
    let work = precision_bits + GUARD_BITS;
    let pi = numeric::pi(work);
    let t_abs = Float::with_val(work, theta.abs_ref());
    // θ = ±π is recognised up to the rounding of π at the caller's precision.
    let slack = pow2_neg(theta.prec().min(precision_bits).saturating_sub(4), work);
    let gap = Float::with_val(work, &t_abs - &pi);
    if alpha.re <= -1 || gap > slack {
        return Err(Error::Domain("the binomial series needs Re α > -1 and |θ| <= π".into()));
    }
    let boundary = gap.abs() <= slack;
    if boundary && alpha.re <= 0 {
        return Err(Error::Domain("at |θ| = π the binomial series needs Re α > 0".into()));
    }
    let cache = Arc::new(Mutex::new(Binomials { prec: 0, alpha: alpha.clone(), values: Vec::new() }));
    let th = Float::with_val(work, theta);
    let stream = CoefficientStream::complex(move |n, prec| {
        let c = cache.lock().unwrap_or_else(|e| e.into_inner()).get(n, prec);
        let phase = Complex::cis(&Float::with_val(prec, &th * n));
        c.mul_ref(&phase)
    });
    let series = accelerated_sum_complex(&stream, BINOMIAL_MAX_TERMS, precision_bits)?.value();

    let closed = if boundary {
        Complex::zero(work)
    } else {
        let half = Float::with_val(work, theta / 2u32);
        let base = Float::with_val(work, half.cos_ref()) * 2u32;
        let modulus = Complex::pow_real_base(&base, &alpha.with_prec(work));
        let phase = alpha.with_prec(work).mul_ref(&Complex::new(Float::new(work), half)).exp();
        modulus.mul_ref(&phase)
    };
    Ok((series, closed.with_prec(precision_bits)))
}
