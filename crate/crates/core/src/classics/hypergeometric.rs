use rug::Float;

use crate::error::{Error, Result};
use crate::numeric::{check_precision, pow2_neg, Complex, GUARD_BITS};

pub const HYP2F1_MAX_TERMS: u64 = 1 << 22;

/// `₂F₁(a, b; c; z) = Σ (a)ₙ(b)ₙ/((c)ₙ·n!)·zⁿ` for `|z| < 1`, summed directly.
///
/// Summation stops when the series terminates (a or b a non-positive
/// integer) or when the ratio bound `|tₙ₊₁|/(1 − ρ)`, with
/// `ρ = max(|tₙ₊₁/tₙ|, |z|)`, falls below the working precision.
pub fn hyp2f1_series(a: &Complex, b: &Complex, c: &Complex, z: &Complex, precision_bits: u32) -> Result<Complex> {
    check_precision(precision_bits)?;
    if c.im.is_zero() && c.re <= 0 && c.re.is_integer() {
        return Err(Error::Pole(format!("₂F₁ has a pole at c = {}", c.display(10))));
    }
    let work = precision_bits + GUARD_BITS;
    let z = z.with_prec(work);
    let az = z.abs();
    if az >= 1 {
        return Err(Error::Domain("₂F₁ series needs |z| < 1".into()));
    }
    let (a, b, c) = (a.with_prec(work), b.with_prec(work), c.with_prec(work));
    let settle = a.abs() + b.abs() + c.abs() + 2u32;
    let eps = pow2_neg(work, work);
    let mut term = Complex::one(work);
    let mut sum = Complex::one(work);
    for n in 0..HYP2F1_MAX_TERMS {
        let shift = |x: &Complex| Complex::new(Float::with_val(work, &x.re + n), x.im.clone());
        let num = shift(&a).mul_ref(&shift(&b));
        let den = shift(&c).scale(&Float::with_val(work, n + 1));
        let ratio = num.div_ref(&den).mul_ref(&z);
        term = term.mul_ref(&ratio);
        if term.is_zero() {
            return Ok(sum.with_prec(precision_bits));
        }
        sum = &sum + &term;
        if Float::with_val(work, n) > settle {
            let r = ratio.abs();
            let rho = if r > az { r } else { az.clone() };
            if rho < 1 {
                let bound = term.abs() * &rho / (Float::with_val(work, 1u32) - &rho);
                if bound < Float::with_val(work, &eps * sum.max_abs().max(&Float::with_val(work, 1u32))) {
                    return Ok(sum.with_prec(precision_bits));
                }
            }
        }
    }
    Err(Error::NonConvergence(format!("₂F₁ series needs more than {HYP2F1_MAX_TERMS} terms")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> Complex {
        Complex::from_f64(x, 0.0, 128)
    }

    #[test]
    fn at_zero() {
        let v = hyp2f1_series(&c(0.3), &Complex::from_f64(1.0, 2.0, 128), &c(2.5), &c(0.0), 128).unwrap();
        assert_eq!(v.re.to_f64(), 1.0);
        assert!(v.im.is_zero());
    }

    #[test]
    fn lerch_special_case() {
        // ₂F₁(a, 1; a+1; z) = a·Σ zⁿ/(n + a)
        let prec = 128;
        let a = Float::with_val(prec, 0.25f64);
        let z = Float::with_val(prec, 0.7f64);
        let v = hyp2f1_series(&Complex::real(a.clone()), &c(1.0), &Complex::real(Float::with_val(prec, &a + 1u32)), &Complex::real(z.clone()), prec).unwrap();
        let mut s = Float::new(prec);
        let mut p = Float::with_val(prec, 1u32);
        for n in 0..400u32 {
            s += Float::with_val(prec, &p / Float::with_val(prec, &a + n));
            p *= &z;
        }
        s *= &a;
        assert!((v.re - s).abs() < 1e-20);
    }

    #[test]
    fn polynomial_case() {
        // ₂F₁(−2, 1; 3; z) = 1 − (2/3)z + (1/6)z²
        let v = hyp2f1_series(&c(-2.0), &c(1.0), &c(3.0), &c(0.5), 128).unwrap();
        let expect = 1.0 - 2.0 / 3.0 * 0.5 + 0.25 / 6.0;
        assert!((v.re.to_f64() - expect).abs() < 1e-15);
    }

    #[test]
    fn errors() {
        assert!(matches!(hyp2f1_series(&c(1.0), &c(1.0), &c(-2.0), &c(0.5), 128), Err(Error::Pole(_))));
        assert!(matches!(hyp2f1_series(&c(1.0), &c(1.0), &c(2.0), &c(1.0), 128), Err(Error::Domain(_))));
    }
}
