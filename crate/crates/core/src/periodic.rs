//! Sums `Σ aₙ/(n+1)` with `p`-periodic coefficients.
//!
//! Three independent evaluations are offered: the closed form over the atom
//! basis ([`closed_form_sum`]), an oracle that both sums the series and
//! integrates `∫₀¹ P(t)/(1−tᵖ) dt` ([`series_numeric`]), and a partial
//! fraction expansion over the roots of unity ([`alt_path_sum`]).

use std::fmt;
use std::str::FromStr;

use rug::Float;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{self, check_precision, pow2_neg, Complex, NumericValue, GUARD_BITS};
use crate::oracle::{accelerated_sum, quadrature, CoefficientStream, OracleResult, QuadNode, Upper};
use crate::rational::Rational;
use crate::symbolic::{ln_integer, ln_sin, pi_cot, ClosedForm, SymbolicValue};

/// Term budget for the series half of [`series_numeric`].
pub const SERIES_MAX_TERMS: u64 = 1 << 20;

/// One period `a₀ … a_{p−1}` of a periodic coefficient sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Rational>", into = "Vec<Rational>")]
pub struct PeriodicCoefficients {
    coeffs: Vec<Rational>,
}

impl PeriodicCoefficients {
    pub fn new(coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::ArgOutOfRange("a period needs at least one coefficient".into()));
        }
        Ok(PeriodicCoefficients { coeffs })
    }

    pub fn from_ints(coeffs: &[i64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Rational::from_int(c)).collect())
    }

    pub fn period(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn sum(&self) -> Rational {
        self.coeffs.iter().fold(Rational::zero(), |acc, c| acc + c)
    }

    pub fn require_zero_sum(&self) -> Result<()> {
        let s = self.sum();
        if s.is_zero() {
            Ok(())
        } else {
            Err(Error::NonZeroSum(s.to_string()))
        }
    }

    /// The real coefficient stream `n ↦ aₙ/(n+1)`, with the period as hint.
    pub fn harmonic_stream(&self) -> CoefficientStream {
        let coeffs = self.coeffs.clone();
        let p = coeffs.len() as u64;
        CoefficientStream::real(move |n, prec| {
            let c = &coeffs[(n % p) as usize];
            if c.is_zero() {
                Float::new(prec)
            } else {
                c.to_float(prec) / (n + 1)
            }
        })
        .with_period(p)
    }
}

impl TryFrom<Vec<Rational>> for PeriodicCoefficients {
    type Error = Error;
    fn try_from(v: Vec<Rational>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<PeriodicCoefficients> for Vec<Rational> {
    fn from(c: PeriodicCoefficients) -> Self {
        c.coeffs
    }
}

impl FromStr for PeriodicCoefficients {
    type Err = Error;

    /// Comma-separated rationals, e.g. `"1,-1,0"` or `"1/2,-1/2"`.
    fn from_str(s: &str) -> Result<Self> {
        let coeffs = s.split(',').map(|t| t.parse()).collect::<Result<Vec<Rational>>>()?;
        Self::new(coeffs)
    }
}

impl fmt::Display for PeriodicCoefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|c| if c.is_integer() { c.numer().to_string() } else { c.to_string() })
            .collect();
        f.write_str(&parts.join(","))
    }
}

/// Theorem-3 closed form of `Σ_{n≥0} aₙ/(n+1)`:
///
/// `Σ_{l=1}^{p−1} (a_{l−1}/p)·[ln(2p) + (π/2)cot(πl/p) − 2 Σ_{j=1}^{⌊(p+1)/2⌋−1} cos(2πlj/p)·ln sin(πj/p)]`
pub fn closed_form_sum(c: &PeriodicCoefficients) -> Result<ClosedForm> {
    c.require_zero_sum()?;
    let p = c.period() as u64;
    let mut out = ClosedForm::zero();
    if p == 1 {
        return Ok(out);
    }
    let ln_2p = ln_integer(2 * p)?;
    let sines: Vec<SymbolicValue> = (1..(p + 1) / 2).map(|j| ln_sin(j, p)).collect::<Result<_>>()?;
    let half = Rational::new(1, 2);
    let minus_two = Rational::from_int(-2);
    for l in 1..p {
        let a = &c.coeffs()[(l - 1) as usize];
        if a.is_zero() {
            continue;
        }
        let mut bracket = ClosedForm::from(ln_2p.clone());
        bracket.add_symbolic(&pi_cot(l, p)?, &half);
        for (j, s) in (1..).zip(&sines) {
            bracket.add_cos_times(&minus_two, &Rational::new((l * j) as i64, p as i64), s);
        }
        out.add_assign_scaled(&bracket, &(a / &Rational::from_int(p as i64)));
    }
    Ok(out)
}

/// Coefficients of `R` with `P(t) = (1 − t)·R(t)`; requires `P(1) = 0`.
fn divide_by_one_minus_t(p: &[Rational]) -> Vec<Rational> {
    let mut r = Vec::with_capacity(p.len().saturating_sub(1));
    let mut acc = Rational::zero();
    for a in &p[..p.len().saturating_sub(1)] {
        acc += a;
        r.push(acc.clone());
    }
    r
}

pub(crate) fn horner(coeffs: &[Float], t: &Float) -> Float {
    let mut acc = Float::new(t.prec());
    for c in coeffs.iter().rev() {
        acc *= t;
        acc += c;
    }
    acc
}

/// `∫₀¹ P(t)/(1 − tᵖ) dt` by quadrature of `R(t)/(1 + t + ⋯ + t^{p−1})`,
/// where `P = (1 − t)·R`. Requires `P(1) = 0` and `deg P < p`.
pub(crate) fn quotient_integral(p_coeffs: &[Rational], p: usize, precision_bits: u32) -> Result<OracleResult> {
    let work = precision_bits + GUARD_BITS;
    let mut padded = p_coeffs.to_vec();
    padded.resize(p.max(p_coeffs.len()), Rational::zero());
    let r: Vec<Float> = divide_by_one_minus_t(&padded).iter().map(|x| x.to_float(work)).collect();
    let q: Vec<Float> = (0..p).map(|_| Float::with_val(work, 1u32)).collect();
    if r.iter().all(|x| x.is_zero()) {
        return Ok(OracleResult::new(&Float::new(work), &Float::new(work), 0, true, precision_bits));
    }
    quadrature(
        |node: &QuadNode| horner(&r, &node.x) / horner(&q, &node.x),
        &Float::new(work),
        &Upper::Finite(Float::with_val(work, 1u32)),
        precision_bits,
    )
}

/// Oracle value of `Σ aₙ/(n+1)`.
///
/// Integrates `∫₀¹ R(t)/(1 + t + ⋯ + t^{p−1}) dt`, the integrand of
/// `P(t)/(1 − tᵖ)` with the removable singularity at `t = 1` divided out,
/// and independently sums the series with acceleration. The quadrature
/// value is returned; a disagreement beyond the combined error estimates is
/// reported as [`Error::PathDisagreement`].
pub fn series_numeric(c: &PeriodicCoefficients, precision_bits: u32) -> Result<OracleResult> {
    check_precision(precision_bits)?;
    c.require_zero_sum()?;
    let work = precision_bits + GUARD_BITS;
    let quad = quotient_integral(c.coeffs(), c.period(), precision_bits)?;
    let series = accelerated_sum(&c.harmonic_stream(), SERIES_MAX_TERMS, precision_bits)?;
    let diff = Float::with_val(work, quad.value.value() - series.value.value()).abs();
    let allowed = Float::with_val(work, quad.error_estimate.value() + series.error_estimate.value()) * 4u32
        + pow2_neg(precision_bits / 2, work);
    if diff > allowed {
        return Err(Error::PathDisagreement(format!(
            "quadrature {} vs series {} (|diff| = {})",
            quad.value,
            series.value,
            numeric::format_float(&diff, 6)
        )));
    }
    Ok(OracleResult {
        terms_used: quad.terms_used + series.terms_used,
        converged: quad.converged && series.converged,
        ..quad
    })
}

/// A simple pole `residue/(t − root)` of `P(t)/(1 − tᵖ)`.
#[derive(Debug, Clone)]
pub struct ResidueTerm {
    /// `root = e^{2πij/p}`.
    pub j: u64,
    pub p: u64,
    pub root: Complex,
    pub residue: Complex,
}

fn check_degree(len: usize, p: usize, highest_nonzero: Option<usize>) -> Result<()> {
    if let Some(d) = highest_nonzero {
        if d >= p {
            return Err(Error::Degree { degree: d, period: p });
        }
    }
    let _ = len;
    Ok(())
}

/// Partial fractions of `P(t)/(1 − tᵖ)` over the `p − 1` roots of
/// `1 + t + ⋯ + t^{p−1}`, with residue `−ωʲ·P(ωʲ)/p` at `ωʲ = e^{2πij/p}`.
///
/// Roots are computed from the exact angle `2πj/p`, never by repeated
/// multiplication.
pub fn partial_fraction(p_coeffs: &[Rational], p: u64, precision_bits: u32) -> Result<Vec<ResidueTerm>> {
    check_precision(precision_bits)?;
    if p == 0 {
        return Err(Error::ArgOutOfRange("period must be positive".into()));
    }
    check_degree(p_coeffs.len(), p as usize, p_coeffs.iter().rposition(|c| !c.is_zero()))?;
    let sum = p_coeffs.iter().fold(Rational::zero(), |acc, c| acc + c);
    if !sum.is_zero() {
        return Err(Error::NonZeroSum(sum.to_string()));
    }
    let work = precision_bits + GUARD_BITS;
    let coeffs: Vec<Complex> = p_coeffs.iter().map(|c| Complex::real(c.to_float(work))).collect();
    Ok(partial_fraction_complex(&coeffs, p, precision_bits))
}

/// [`partial_fraction`] for complex coefficients. Validation is the caller's.
pub fn partial_fraction_complex(coeffs: &[Complex], p: u64, precision_bits: u32) -> Vec<ResidueTerm> {
    let work = precision_bits + GUARD_BITS;
    if coeffs.iter().all(|c| c.is_zero()) {
        return Vec::new();
    }
    let p_inv = Float::with_val(work, 1u32) / p;
    (1..p)
        .map(|j| {
            let mut value = Complex::zero(work);
            for (l, a) in coeffs.iter().enumerate() {
                if !a.is_zero() {
                    let w = Complex::root_of_unity((j * l as u64) as i64, p as i64, work);
                    value = &value + &a.mul_ref(&w);
                }
            }
            let root = Complex::root_of_unity(j as i64, p as i64, work);
            let residue = -root.mul_ref(&value).scale(&p_inv);
            ResidueTerm { j, p, root: root.with_prec(precision_bits), residue: residue.with_prec(precision_bits) }
        })
        .collect()
}

/// `∫₀¹ dt/(t − e^{iθ})` for `θ = π·a/b`, as exact real and imaginary parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootIntegral {
    pub re: SymbolicValue,
    pub im: SymbolicValue,
}

/// `∫₀¹ dt/(t − e^{iθ}) = ln 2 + ln sin(|θ|/2) + i·arg(1 − e^{−iθ})` with
/// `θ = π·theta_over_pi`, `0 < |θ| < π`.
///
/// The argument is `(π − θ)/2` for `θ > 0` and `−(π + θ)/2` for `θ < 0`.
pub fn root_integral(theta_over_pi: &Rational) -> Result<RootIntegral> {
    let s = theta_over_pi.signum();
    let mag = theta_over_pi.abs();
    if s == 0 || mag >= Rational::one() {
        return Err(Error::Domain(format!("root_integral needs 0 < |θ| < π, got θ = {theta_over_pi}·π")));
    }
    let (a, b) = mag.to_i64_pair().ok_or_else(|| Error::Domain("angle denominator too large".into()))?;
    let mut re = ln_integer(2)?;
    re.add_assign(&ln_sin(a as u64, 2 * b as u64)?);
    let im_coeff = (Rational::one() - &mag) * Rational::new(s as i64, 2);
    Ok(RootIntegral { re, im: SymbolicValue::pi().scale(&im_coeff) })
}

/// Numeric `∫₀¹ dt/(t − e^{2πij/p})`, from the same closed form as
/// [`root_integral`] but evaluated directly.
fn root_integral_value(j: u64, p: u64, work: u32) -> Complex {
    let pi = numeric::pi(work);
    if 2 * j == p {
        return Complex::real(Float::with_val(work, 2u32).ln());
    }
    // θ = 2πj/p folded into (−π, π).
    let (num, sign) = if 2 * j < p { (2 * j, 1) } else { (2 * (p - j), -1) };
    let theta_abs = Float::with_val(work, &pi * num) / p;
    let half = Float::with_val(work, &theta_abs / 2u32);
    let re = Float::with_val(work, half.sin() * 2u32).ln();
    let im = Float::with_val(work, &pi - &theta_abs) / 2u32 * sign;
    Complex::new(re, im)
}

/// `∫₀¹ P(t)/(1 − tᵖ) dt` as `Σ residue·∫₀¹ dt/(t − root)`.
///
/// Shares nothing with [`closed_form_sum`] beyond the value of the root
/// integrals.
pub fn alt_path_sum(c: &PeriodicCoefficients, precision_bits: u32) -> Result<NumericValue> {
    let terms = partial_fraction(c.coeffs(), c.period() as u64, precision_bits)?;
    let v = sum_residues(&terms, precision_bits);
    Ok(NumericValue::new(&v.re, precision_bits))
}

/// [`alt_path_sum`] for complex coefficients (numeric only).
pub fn alt_path_sum_complex(coeffs: &[Complex], precision_bits: u32) -> Result<Complex> {
    check_precision(precision_bits)?;
    let p = coeffs.len();
    let work = precision_bits + GUARD_BITS;
    let mut s = Complex::zero(work);
    for c in coeffs {
        s = &s + c;
    }
    if s.max_abs() > pow2_neg(precision_bits - 8, work) {
        return Err(Error::NonZeroSum(s.display(10)));
    }
    let terms = partial_fraction_complex(coeffs, p as u64, precision_bits);
    Ok(sum_residues(&terms, precision_bits))
}

fn sum_residues(terms: &[ResidueTerm], precision_bits: u32) -> Complex {
    let work = precision_bits + GUARD_BITS;
    let mut acc = Complex::zero(work);
    for t in terms {
        let i = root_integral_value(t.j, t.p, work);
        acc = &acc + &t.residue.with_prec(work).mul_ref(&i);
    }
    acc.with_prec(precision_bits)
}

fn check_angle(theta: &Float) -> Result<()> {
    let prec = theta.prec();
    let s = Float::with_val(prec, theta / 2u32).sin().abs();
    if s < pow2_neg(prec.saturating_sub(8).max(8), prec) {
        return Err(Error::Domain("θ is a multiple of 2π".into()));
    }
    Ok(())
}

/// `Σ_{j=1}^{k} cos(jθ) = sin(kθ/2)·cos((k+1)θ/2)/sin(θ/2)`.
pub fn cos_kernel_sum(k: u64, theta: &Float) -> Result<Float> {
    check_angle(theta)?;
    let prec = theta.prec();
    let num = Float::with_val(prec, theta * k) / 2u32;
    let num = num.sin() * (Float::with_val(prec, theta * (k + 1)) / 2u32).cos();
    Ok(num / Float::with_val(prec, theta / 2u32).sin())
}

/// `Σ_{j=1}^{k} e^{ijθ}` in closed form, with the uniform bound `1/|sin(θ/2)|`.
pub fn exp_kernel_sum(k: u64, theta: &Float) -> Result<(Complex, Float)> {
    check_angle(theta)?;
    let prec = theta.prec();
    let e = Complex::cis(theta);
    let ek = Complex::cis(&Float::with_val(prec, theta * k));
    let num = e.mul_ref(&(&ek - &Complex::one(prec)));
    let den = &e - &Complex::one(prec);
    let bound = Float::with_val(prec, theta / 2u32).sin().abs().recip();
    Ok((num.div_ref(&den), bound))
}

/// `coeff·√radicand`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaledSqrt {
    pub coeff: Rational,
    pub radicand: u64,
}

impl ScaledSqrt {
    pub fn eval(&self, prec: u32) -> Float {
        Float::with_val(prec, self.radicand).sqrt() * self.coeff.to_float(prec)
    }
}

impl fmt::Display for ScaledSqrt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}·√{}", self.coeff, self.radicand)
    }
}

#[derive(Debug, Clone)]
pub struct SineProduct {
    /// `Π_{j=1}^{N−1} sin(πj/N)`.
    pub product: NumericValue,
    /// `N/2^{N−1}`.
    pub claim: SymbolicValue,
    /// For even `N = 2m`: `Π_{j=1}^{m−1} sin(πj/2m)` and its claim `√m/2^{m−1}`.
    pub half: Option<(NumericValue, ScaledSqrt)>,
}

pub fn sine_product(n: u64, precision_bits: u32) -> Result<SineProduct> {
    check_precision(precision_bits)?;
    if n < 2 {
        return Err(Error::ArgOutOfRange(format!("sine_product needs N >= 2, got {n}")));
    }
    let work = precision_bits + GUARD_BITS;
    let pi = numeric::pi(work);
    let sin_at = |j: u64| (Float::with_val(work, &pi * j) / n).sin();
    let mut prod = Float::with_val(work, 1u32);
    for j in 1..n {
        prod *= sin_at(j);
    }
    let pow2 = |e: u64| Rational::from_integers(rug::Integer::from(1), rug::Integer::from(1) << e as u32);
    let claim = SymbolicValue::rational(&Rational::from_int(n as i64) * &pow2(n - 1));
    let half = (n % 2 == 0).then(|| {
        let m = n / 2;
        let mut h = Float::with_val(work, 1u32);
        for j in 1..m {
            h *= sin_at(j);
        }
        (NumericValue::new(&h, precision_bits), ScaledSqrt { coeff: pow2(m - 1), radicand: m })
    });
    Ok(SineProduct { product: NumericValue::new(&prod, precision_bits), claim, half })
}

fn check_weighted_args(l: u64, m: u64) -> Result<()> {
    if m == 0 || l == 0 || l > 2 * m {
        return Err(Error::ArgOutOfRange(format!("weighted_sine_sum needs 1 <= l <= 2m, got l = {l}, m = {m}")));
    }
    Ok(())
}

/// `2 Σ_{j=1}^{m−1} (m − j)·sin(jθ₀)` with `θ₀ = πl/m`, summed term by term.
pub fn weighted_sine_sum_direct(l: u64, m: u64, precision_bits: u32) -> Result<NumericValue> {
    check_precision(precision_bits)?;
    check_weighted_args(l, m)?;
    let work = precision_bits + GUARD_BITS;
    let pi = numeric::pi(work);
    let mut acc = Float::new(work);
    for j in 1..m {
        let s = (Float::with_val(work, &pi * (l * j)) / m).sin();
        acc += s * (m - j);
    }
    Ok(NumericValue::new(&(acc * 2u32), precision_bits))
}

/// Closed form of [`weighted_sine_sum_direct`]: `m·cot(θ₀/2)` for `l < 2m`
/// and `0` for `l = 2m`. The direct sum is computed as well and must agree.
pub fn weighted_sine_sum(l: u64, m: u64, precision_bits: u32) -> Result<NumericValue> {
    let direct = weighted_sine_sum_direct(l, m, precision_bits)?;
    let work = precision_bits + GUARD_BITS;
    let closed = if l == 2 * m {
        Float::new(work)
    } else {
        (Float::with_val(work, numeric::pi(work) * l) / (2 * m)).cot() * m
    };
    let diff = Float::with_val(work, direct.value() - &closed).abs();
    let scale = Float::with_val(work, closed.clone().abs() + 1u32);
    if diff > pow2_neg(precision_bits - 16, work) * scale {
        return Err(Error::PathDisagreement(format!("weighted sine sum l={l} m={m}")));
    }
    Ok(NumericValue::new(&closed, precision_bits))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::{eval_numeric, num_equal};

    fn pc(c: &[i64]) -> PeriodicCoefficients {
        PeriodicCoefficients::from_ints(c).unwrap()
    }

    #[test]
    fn example_five_closed_forms() {
        let third = closed_form_sum(&pc(&[1, -1, 0])).unwrap();
        assert_eq!(third.as_symbolic(), Some(&pi_cot(1, 3).unwrap().scale(&Rational::new(1, 3))));
        let v = eval_numeric(&third, 128).to_f64();
        assert!((v - 0.6045997880780726).abs() < 1e-15);

        let six = closed_form_sum(&pc(&[1, 1, 0, -1, -1, 0])).unwrap();
        assert!((eval_numeric(&six, 128).to_f64() - 1.2091995761561452).abs() < 1e-15);
        let eight = closed_form_sum(&pc(&[1, 0, 1, 0, -1, 0, -1, 0])).unwrap();
        assert!((eval_numeric(&eight, 128).to_f64() - 1.1107207345395915).abs() < 1e-15);
    }

    #[test]
    fn golden_ratio_case_is_hybrid() {
        let c = closed_form_sum(&pc(&[1, -1, -1, 1, 0])).unwrap();
        assert!(!c.is_symbolic());
        let five = Float::with_val(256, 5u32).sqrt();
        let phi = (Float::with_val(256, 1u32) + &five) / 2u32;
        let expect = phi.ln() * 2u32 / five;
        assert!(num_equal(&c, &expect, 200));
    }

    #[test]
    fn zero_sum_is_required() {
        assert!(matches!(closed_form_sum(&pc(&[1, 1])), Err(Error::NonZeroSum(_))));
        assert!(matches!(series_numeric(&pc(&[1, 0]), 128), Err(Error::NonZeroSum(_))));
        assert!(closed_form_sum(&pc(&[0])).unwrap().exact().is_zero());
    }

    #[test]
    fn oracle_examples() {
        let ln2 = Float::with_val(192, 2u32).ln();
        let r = series_numeric(&pc(&[1, -1]), 192).unwrap();
        assert!(r.value.abs_diff_f64(&ln2) < 1e-50);
        let r = series_numeric(&pc(&[0, 0]), 192).unwrap();
        assert!(r.value.value().is_zero());
        let r = series_numeric(&pc(&[1, -1, 0]), 192).unwrap();
        assert!((r.value.to_f64() - 0.6045997880780726).abs() < 1e-15);
    }

    #[test]
    fn residues_for_small_cases() {
        let one = Rational::one();
        let t = partial_fraction(&[one.clone(), -one.clone()], 2, 128).unwrap();
        assert_eq!(t.len(), 1);
        assert!((t[0].root.re.to_f64() + 1.0).abs() < 1e-30);
        assert!((t[0].residue.re.to_f64() - 1.0).abs() < 1e-30 && t[0].residue.im.to_f64().abs() < 1e-30);
        assert!(partial_fraction(&[Rational::zero()], 3, 128).unwrap().is_empty());
        let deg = partial_fraction(&[one.clone(), Rational::zero(), Rational::zero(), -one], 3, 128);
        assert!(matches!(deg, Err(Error::Degree { degree: 3, period: 3 })));
    }

    #[test]
    fn root_integral_examples() {
        let r = root_integral(&Rational::new(1, 2)).unwrap();
        assert_eq!(r.re, ln_integer(2).unwrap().scale(&Rational::new(1, 2)));
        assert_eq!(r.im, SymbolicValue::pi().scale(&Rational::new(1, 4)));
        let r = root_integral(&Rational::new(2, 3)).unwrap();
        assert_eq!(r.re, ln_integer(3).unwrap().scale(&Rational::new(1, 2)));
        assert_eq!(r.im, SymbolicValue::pi().scale(&Rational::new(1, 6)));
        let neg = root_integral(&Rational::new(-2, 3)).unwrap();
        assert_eq!(neg.re, r.re);
        assert_eq!(neg.im, r.im.neg());
        for bad in [Rational::zero(), Rational::one(), Rational::from_int(-1)] {
            assert!(matches!(root_integral(&bad), Err(Error::Domain(_))));
        }
    }

    #[test]
    fn alternate_path_examples() {
        let ln2 = Float::with_val(192, 2u32).ln();
        assert!(alt_path_sum(&pc(&[1, -1]), 192).unwrap().abs_diff_f64(&ln2) < 1e-50);
        let c = pc(&[1, 1, 0, -1, -1, 0]);
        let closed = eval_numeric(&closed_form_sum(&c).unwrap(), 192);
        assert!(alt_path_sum(&c, 192).unwrap().abs_diff_f64(closed.value()) < 1e-50);
    }

    #[test]
    fn kernel_sums() {
        let prec = 128;
        let pi = numeric::pi(prec);
        let theta = Float::with_val(prec, &pi * 2u32) / 7u32;
        let s = cos_kernel_sum(6, &theta).unwrap();
        assert!((s + 1u32).abs() < 1e-35);
        let theta = Float::with_val(prec, &pi / 3u32);
        let direct: Float = (1..=3u32).map(|j| Float::with_val(prec, &theta * j).cos()).fold(Float::new(prec), |a, b| a + b);
        assert!((cos_kernel_sum(3, &theta).unwrap() - direct).abs() < 1e-35);
        let x = Float::with_val(prec, 0.7f64);
        assert!((cos_kernel_sum(1, &x).unwrap() - x.clone().cos()).abs() < 1e-35);
        let (e, bound) = exp_kernel_sum(50, &x).unwrap();
        assert!(e.abs() <= bound);
        assert!(matches!(cos_kernel_sum(3, &Float::new(prec)), Err(Error::Domain(_))));
    }

    #[test]
    fn sine_products() {
        let s = sine_product(2, 128).unwrap();
        assert_eq!(s.product.to_f64(), 1.0);
        assert_eq!(s.claim, SymbolicValue::rational(Rational::one()));
        let s = sine_product(6, 128).unwrap();
        assert!((s.product.to_f64() - 0.1875).abs() < 1e-30);
        let s = sine_product(4, 128).unwrap();
        let (h, claim) = s.half.unwrap();
        assert!((h.to_f64() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        assert_eq!(claim, ScaledSqrt { coeff: Rational::new(1, 2), radicand: 2 });
    }

    #[test]
    fn weighted_sine_sums() {
        assert!(weighted_sine_sum(4, 2, 128).unwrap().value().is_zero());
        assert!((weighted_sine_sum(1, 2, 128).unwrap().to_f64() - 2.0).abs() < 1e-30);
        assert!((weighted_sine_sum(2, 3, 128).unwrap().to_f64() - 3f64.sqrt()).abs() < 1e-15);
        assert!(matches!(weighted_sine_sum(0, 2, 128), Err(Error::ArgOutOfRange(_))));
        assert!(matches!(weighted_sine_sum(5, 2, 128), Err(Error::ArgOutOfRange(_))));
    }

    #[test]
    fn coefficient_parsing_and_json() {
        let c: PeriodicCoefficients = "1, -1/2 ,-1/2".parse().unwrap();
        assert_eq!(c.period(), 3);
        assert_eq!(c.to_string(), "1,-1/2,-1/2");
        let j = serde_json::to_string(&c).unwrap();
        assert_eq!(j, r#"["1/1","-1/2","-1/2"]"#);
        assert_eq!(serde_json::from_str::<PeriodicCoefficients>(&j).unwrap(), c);
        assert!("".parse::<PeriodicCoefficients>().is_err());
    }
}
