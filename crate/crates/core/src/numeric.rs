//! Arbitrary-precision numeric values and a minimal complex type.
//!
//! All floating-point work goes through MPFR (`rug::Float`). Internal
//! computations run at the requested precision plus [`GUARD_BITS`] and are
//! rounded back when a [`NumericValue`] is handed out.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub const DEFAULT_PRECISION: u32 = 256;
pub const MIN_PRECISION: u32 = 64;
pub const GUARD_BITS: u32 = 32;

/// Euler–Mascheroni constant, 320 significant digits (> 1024 bits).
const EULER_GAMMA_DIGITS: &str = "0.57721566490153286060651209008240243104215933593992359880576723488486772677766467093694706329174674951463144724980708248096050401448654283622417399764492353625350033374293733773767394279259525824709491600873520394816567085323315177661152862119950150798479374508570574002992135478614669402960432542151905877553526733139925";

/// pi, 320 significant digits.
const PI_DIGITS: &str = "3.1415926535897932384626433832795028841971693993751058209749445923078164062862089986280348253421170679821480865132823066470938446095505822317253594081284811174502841027019385211055596446229489549303819644288109756659334461284756482337867831652712019091456485669234603486104543266482133936072602491412737245870066063155882";

/// Precision covered by the stored constant tables.
pub const STORED_CONSTANT_BITS: u32 = 1024;

fn stored_or_mpfr(digits: &str, fallback: Constant, prec: u32) -> Float {
    if prec <= STORED_CONSTANT_BITS {
        let parsed = Float::parse(digits).expect("stored constant is a valid literal");
        Float::with_val(prec, parsed)
    } else {
        Float::with_val(prec, fallback)
    }
}

pub fn euler_gamma(prec: u32) -> Float {
    stored_or_mpfr(EULER_GAMMA_DIGITS, Constant::Euler, prec)
}

pub fn pi(prec: u32) -> Float {
    stored_or_mpfr(PI_DIGITS, Constant::Pi, prec)
}

/// `2^-bits` at the given precision.
pub fn pow2_neg(bits: u32, prec: u32) -> Float {
    Float::with_val(prec, 1u32) >> bits
}

/// Number of significant decimal digits that survive a decimal -> binary ->
/// decimal round trip at `prec` bits (roughly `prec / 3.32`).
pub fn decimal_digits(prec: u32) -> usize {
    (((prec - 1) as f64) * std::f64::consts::LOG10_2).floor() as usize
}

/// Smallest precision whose [`decimal_digits`] is at least `digits`.
pub fn precision_for_digits(digits: usize) -> u32 {
    ((digits as f64) / std::f64::consts::LOG10_2).ceil() as u32 + 1
}

pub fn check_precision(prec: u32) -> Result<()> {
    if prec < MIN_PRECISION {
        return Err(Error::ArgOutOfRange(format!(
            "precision {prec} bits is below the minimum of {MIN_PRECISION}"
        )));
    }
    Ok(())
}

pub fn format_float(x: &Float, digits: usize) -> String {
    x.to_string_radix(10, Some(digits.max(1)))
}

/// A finite arbitrary-precision value tagged with the precision it carries.
#[derive(Clone, PartialEq)]
pub struct NumericValue {
    value: Float,
    precision_bits: u32,
}

impl NumericValue {
    /// Rounds `value` to `precision_bits`. Panics on NaN or infinity, which
    /// are never legitimate results.
    pub fn new(value: &Float, precision_bits: u32) -> Self {
        assert!(value.is_finite(), "numeric results must be finite, got {value}");
        NumericValue { value: Float::with_val(precision_bits, value), precision_bits }
    }

    pub fn zero(precision_bits: u32) -> Self {
        NumericValue { value: Float::new(precision_bits), precision_bits }
    }

    pub fn value(&self) -> &Float {
        &self.value
    }

    pub fn into_value(self) -> Float {
        self.value
    }

    pub fn precision_bits(&self) -> u32 {
        self.precision_bits
    }

    pub fn to_f64(&self) -> f64 {
        self.value.to_f64()
    }

    /// `|self - other|` as an f64, convenient for tolerance checks.
    pub fn abs_diff_f64(&self, other: &Float) -> f64 {
        Float::with_val(self.precision_bits.max(other.prec()) + GUARD_BITS, &self.value - other)
            .abs()
            .to_f64()
    }

    pub fn to_decimal_string(&self) -> String {
        format_float(&self.value, decimal_digits(self.precision_bits))
    }

    /// Inverse of [`to_decimal_string`](Self::to_decimal_string): the
    /// precision is inferred from the number of significant digits.
    pub fn from_decimal_str(s: &str) -> Result<Self> {
        let parsed = Float::parse(s).map_err(|e| Error::Parse(format!("{s:?}: {e}")))?;
        let digits = significant_digits(s).max(1);
        let prec = precision_for_digits(digits).max(MIN_PRECISION);
        let value = Float::with_val(prec, parsed);
        if !value.is_finite() {
            return Err(Error::Parse(format!("{s:?} is not finite")));
        }
        Ok(NumericValue { value, precision_bits: prec })
    }
}

fn significant_digits(s: &str) -> usize {
    let mantissa = s.split(['e', 'E', '@']).next().unwrap_or("");
    let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
    let trimmed = digits.trim_start_matches('0');
    trimmed.len()
}

impl fmt::Debug for NumericValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NumericValue({} @{}b)", format_float(&self.value, 24), self.precision_bits)
    }
}

impl fmt::Display for NumericValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or_else(|| decimal_digits(self.precision_bits));
        f.write_str(&format_float(&self.value, digits))
    }
}

impl Serialize for NumericValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_decimal_string())
    }
}

impl<'de> Deserialize<'de> for NumericValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        NumericValue::from_decimal_str(&s).map_err(serde::de::Error::custom)
    }
}

/// A complex number as a pair of MPFR floats sharing one precision.
#[derive(Clone, Debug, PartialEq)]
pub struct Complex {
    pub re: Float,
    pub im: Float,
}

impl Complex {
    pub fn new(re: Float, im: Float) -> Self {
        Complex { re, im }
    }

    pub fn zero(prec: u32) -> Self {
        Complex { re: Float::new(prec), im: Float::new(prec) }
    }

    pub fn one(prec: u32) -> Self {
        Complex { re: Float::with_val(prec, 1u32), im: Float::new(prec) }
    }

    pub fn real(re: Float) -> Self {
        let prec = re.prec();
        Complex { re, im: Float::new(prec) }
    }

    pub fn from_f64(re: f64, im: f64, prec: u32) -> Self {
        Complex { re: Float::with_val(prec, re), im: Float::with_val(prec, im) }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec()
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        Complex { re: Float::with_val(prec, &self.re), im: Float::with_val(prec, &self.im) }
    }

    /// `e^{i theta}`.
    pub fn cis(theta: &Float) -> Self {
        let (s, c) = theta.clone().sin_cos(Float::new(theta.prec()));
        Complex { re: c, im: s }
    }

    /// `e^{2 pi i num/den}`, with the angle formed from an exact fraction.
    pub fn root_of_unity(num: i64, den: i64, prec: u32) -> Self {
        let theta = pi(prec + GUARD_BITS) * Float::with_val(prec + GUARD_BITS, 2 * num) / den;
        Complex::cis(&theta).with_prec(prec)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn conj(&self) -> Self {
        Complex { re: self.re.clone(), im: Float::with_val(self.im.prec(), -&self.im) }
    }

    pub fn norm_sqr(&self) -> Float {
        let prec = self.prec();
        Float::with_val(prec, self.re.square_ref()) + Float::with_val(prec, self.im.square_ref())
    }

    pub fn abs(&self) -> Float {
        Float::with_val(self.prec(), self.re.hypot_ref(&self.im))
    }

    /// `max(|re|, |im|)`; cheaper than `abs` and within a factor sqrt(2).
    pub fn max_abs(&self) -> Float {
        let a = Float::with_val(self.prec(), self.re.abs_ref());
        let b = Float::with_val(self.prec(), self.im.abs_ref());
        if a > b {
            a
        } else {
            b
        }
    }

    pub fn scale(&self, k: &Float) -> Self {
        let prec = self.prec();
        Complex { re: Float::with_val(prec, &self.re * k), im: Float::with_val(prec, &self.im * k) }
    }

    pub fn mul_ref(&self, o: &Complex) -> Self {
        let prec = self.prec().max(o.prec());
        let ac = Float::with_val(prec, &self.re * &o.re);
        let bd = Float::with_val(prec, &self.im * &o.im);
        let ad = Float::with_val(prec, &self.re * &o.im);
        let bc = Float::with_val(prec, &self.im * &o.re);
        Complex { re: ac - bd, im: ad + bc }
    }

    pub fn div_ref(&self, o: &Complex) -> Self {
        let prec = self.prec().max(o.prec());
        let d = o.norm_sqr();
        let num = self.mul_ref(&o.conj());
        Complex {
            re: Float::with_val(prec, &num.re / &d),
            im: Float::with_val(prec, &num.im / &d),
        }
    }

    pub fn recip(&self) -> Self {
        Complex::one(self.prec()).div_ref(self)
    }

    pub fn exp(&self) -> Self {
        let m = Float::with_val(self.prec(), self.re.exp_ref());
        Complex::cis(&self.im).scale(&m)
    }

    /// Principal branch logarithm.
    pub fn ln(&self) -> Self {
        let prec = self.prec();
        Complex {
            re: Float::with_val(prec, self.abs().ln()),
            im: Float::with_val(prec, self.im.atan2_ref(&self.re)),
        }
    }

    /// `x^alpha` for a positive real base.
    pub fn pow_real_base(base: &Float, alpha: &Complex) -> Self {
        let lb = Float::with_val(alpha.prec(), base.ln_ref());
        alpha.scale(&lb).exp()
    }

    pub fn powu(&self, n: u32) -> Self {
        let mut acc = Complex::one(self.prec());
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            base = base.mul_ref(&base);
            e >>= 1;
        }
        acc
    }

    pub fn display(&self, digits: usize) -> String {
        let sign = if self.im.is_sign_negative() { "-" } else { "+" };
        let im_abs = Float::with_val(self.prec(), self.im.abs_ref());
        format!("{} {} {}i", format_float(&self.re, digits), sign, format_float(&im_abs, digits))
    }
}

impl Add<&Complex> for &Complex {
    type Output = Complex;
    fn add(self, o: &Complex) -> Complex {
        let prec = self.prec().max(o.prec());
        Complex { re: Float::with_val(prec, &self.re + &o.re), im: Float::with_val(prec, &self.im + &o.im) }
    }
}

impl Sub<&Complex> for &Complex {
    type Output = Complex;
    fn sub(self, o: &Complex) -> Complex {
        let prec = self.prec().max(o.prec());
        Complex { re: Float::with_val(prec, &self.re - &o.re), im: Float::with_val(prec, &self.im - &o.im) }
    }
}

impl Mul<&Complex> for &Complex {
    type Output = Complex;
    fn mul(self, o: &Complex) -> Complex {
        self.mul_ref(o)
    }
}

impl Neg for Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        Complex { re: -self.re, im: -self.im }
    }
}

/// `n^{-s}` helper used by a few series generators.
pub fn powf(base: &Float, e: &Float) -> Float {
    Float::with_val(base.prec(), base.pow(e))
}
