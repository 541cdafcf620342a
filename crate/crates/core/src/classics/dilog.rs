use rug::Float;

use crate::error::{Error, Result};
use crate::numeric::{self, check_precision, pow2_neg, NumericValue, GUARD_BITS};
use crate::oracle::{quadrature, QuadNode, Upper};

const SERIES_MAX_TERMS: u64 = 1 << 24;
/// Above this the series switches to the reflection formula.
const REFLECT_ABOVE: f64 = 0.9;

fn zeta2(prec: u32) -> Float {
    numeric::pi(prec).square() / 6u32
}

/// `Σ_{n≥1} xⁿ/n²` for `|x| < 1`, truncated once the geometric tail bound
/// `|x|^{N+1}/((N+1)²(1 − |x|))` drops below the working precision.
pub fn li2_series(x: &Float, precision_bits: u32) -> Result<NumericValue> {
    check_precision(precision_bits)?;
    let work = precision_bits + GUARD_BITS;
    let x = Float::with_val(work, x);
    let ax = Float::with_val(work, x.abs_ref());
    if ax >= 1 {
        return Err(Error::Domain("the dilogarithm series needs |x| < 1".into()));
    }
    let inv_gap = Float::with_val(work, 1u32 - &ax).recip();
    let eps = pow2_neg(work, work);
    let mut sum = Float::new(work);
    let mut pow = Float::with_val(work, 1u32);
    let mut apow = Float::with_val(work, 1u32);
    for n in 1..=SERIES_MAX_TERMS {
        pow *= &x;
        apow *= &ax;
        let nn = Float::with_val(work, n) * n;
        sum += Float::with_val(work, &pow / &nn);
        let bound = Float::with_val(work, &apow * &ax) * &inv_gap / ((n + 1) * (n + 1));
        if bound < eps {
            return Ok(NumericValue::new(&sum, precision_bits));
        }
    }
    Err(Error::NonConvergence(format!("dilogarithm series needs more than {SERIES_MAX_TERMS} terms")))
}

/// `Li₂(x) = −∫₀¹ ln(1 − x·s)/s ds` for `x ≤ 1`, by quadrature.
pub fn li2_integral(x: &Float, precision_bits: u32) -> Result<NumericValue> {
    check_precision(precision_bits)?;
    if *x > 1 {
        return Err(Error::Domain("the dilogarithm integral needs x <= 1".into()));
    }
    let work = precision_bits + GUARD_BITS;
    let x = Float::with_val(work, x);
    let gap = Float::with_val(work, 1u32 - &x);
    let r = quadrature(
        move |node: &QuadNode| {
            let prec = node.x.prec();
            let xs = Float::with_val(prec, &x * &node.x);
            // 1 − x·s = (1 − x) + x·(1 − s) keeps precision near s = 1.
            let ln = if xs < 0.5 {
                Float::with_val(prec, -&xs).ln_1p()
            } else {
                (Float::with_val(prec, &x * &node.from_hi) + &gap).ln()
            };
            -ln / &node.from_lo
        },
        &Float::new(work),
        &Upper::Finite(Float::with_val(work, 1u32)),
        precision_bits,
    )?;
    Ok(r.value)
}

/// `Li₂(x)` on `[−1, 1]`.
///
/// The series is used on `[0, 0.9]`, the reflection
/// `Li₂(x) = π²/6 − ln x·ln(1 − x) − Li₂(1 − x)` above that, and
/// `Li₂(x) = Li₂(x²)/2 − Li₂(−x)` for negative `x`.
pub fn li2_numeric(x: &Float, precision_bits: u32) -> Result<NumericValue> {
    check_precision(precision_bits)?;
    if x.is_nan() || x.clone().abs() > 1 {
        return Err(Error::Domain("Li₂ is evaluated on [-1, 1]".into()));
    }
    let work = precision_bits + GUARD_BITS;
    let x = Float::with_val(work, x);
    let v = if x.is_zero() {
        Float::new(work)
    } else if x == 1 {
        zeta2(work)
    } else if x < 0 {
        let sq = li2_numeric(&Float::with_val(work, x.square_ref()), work)?.into_value();
        let neg = li2_numeric(&Float::with_val(work, -&x), work)?.into_value();
        sq / 2u32 - neg
    } else if x > REFLECT_ABOVE {
        let y = Float::with_val(work, 1u32 - &x);
        let l = li2_series(&y, work)?.into_value();
        let logs = Float::with_val(work, x.ln_ref()) * Float::with_val(work, y.ln_ref());
        zeta2(work) - logs - l
    } else {
        li2_series(&x, work)?.into_value()
    };
    Ok(NumericValue::new(&v, precision_bits))
}

/// `Li₂(x) + Li₂(1 − x) + ln x·ln(1 − x)` and `π²/6`, for `0 < x < 1`.
///
/// Arguments above 0.9 go through [`li2_integral`], so the check never uses
/// the reflection formula it is checking.
pub fn li2_identity_check(x: &Float, precision_bits: u32) -> Result<(NumericValue, NumericValue)> {
    check_precision(precision_bits)?;
    if x.is_nan() || *x <= 0 || *x >= 1 {
        return Err(Error::Domain("the reflection identity is checked on 0 < x < 1".into()));
    }
    let work = precision_bits + GUARD_BITS;
    let li2 = |y: &Float| -> Result<Float> {
        Ok(if *y > REFLECT_ABOVE { li2_integral(y, work)? } else { li2_series(y, work)? }.into_value())
    };
    let x = Float::with_val(work, x);
    let y = Float::with_val(work, 1u32 - &x);
    let logs = Float::with_val(work, x.ln_ref()) * Float::with_val(work, y.ln_ref());
    let lhs = li2(&x)? + li2(&y)? + logs;
    Ok((NumericValue::new(&lhs, precision_bits), NumericValue::new(&zeta2(work), precision_bits)))
}

/// `(ln 2)² + Σ_{n=1}^{N} 1/(2^{n−1}·n²)`.
pub fn euler_zeta2_approx(n: u64) -> Result<NumericValue> {
    if n < 1 {
        return Err(Error::ArgOutOfRange("euler_zeta2_approx needs N >= 1".into()));
    }
    let prec = 128;
    let mut s = Float::with_val(prec, 2u32).ln().square();
    let mut w = Float::with_val(prec, 1u32);
    for k in 1..=n {
        s += Float::with_val(prec, &w / (k * k));
        w /= 2u32;
    }
    Ok(NumericValue::new(&s, prec))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(x: f64) -> Float {
        Float::with_val(192, x)
    }

    #[test]
    fn special_values() {
        let ln2 = Float::with_val(192, 2u32).ln();
        let half = numeric::pi(192).square() / 12u32 - ln2.square() / 2u32;
        assert!(li2_numeric(&f(0.5), 192).unwrap().abs_diff_f64(&half) < 1e-50);
        assert!(li2_numeric(&f(0.0), 192).unwrap().value().is_zero());
        assert!(li2_numeric(&f(1.0), 192).unwrap().abs_diff_f64(&zeta2(192)) < 1e-50);
        let minus = -(zeta2(192) / 2u32);
        assert!(li2_numeric(&f(-1.0), 192).unwrap().abs_diff_f64(&minus) < 1e-50);
        assert!(matches!(li2_numeric(&f(1.5), 192), Err(Error::Domain(_))));
    }

    #[test]
    fn paths_agree() {
        for x in [0.95, 0.3, -0.7, 0.999] {
            let a = li2_numeric(&f(x), 192).unwrap();
            let b = li2_integral(&f(x), 192).unwrap();
            assert!(a.abs_diff_f64(b.value()) < 1e-45, "x = {x}");
        }
    }

    #[test]
    fn reflection_identity() {
        let (l, r) = li2_identity_check(&f(0.5), 192).unwrap();
        assert!(l.abs_diff_f64(r.value()) < 1e-45);
        let (a, _) = li2_identity_check(&f(0.1), 192).unwrap();
        let (b, _) = li2_identity_check(&f(0.9), 192).unwrap();
        assert!(a.abs_diff_f64(b.value()) < 1e-40);
        let (l, _) = li2_identity_check(&(Float::with_val(192, 1u32) / 3u32), 192).unwrap();
        assert!((l.to_f64() - 1.6449340668482264).abs() < 1e-15);
        assert!(matches!(li2_identity_check(&f(1.0), 192), Err(Error::Domain(_))));
    }

    #[test]
    fn euler_approximation() {
        let v = euler_zeta2_approx(30).unwrap();
        assert!(v.abs_diff_f64(&zeta2(128)) < 5e-7);
        let one = euler_zeta2_approx(1).unwrap();
        assert!((one.to_f64() - 1.4804530139182014).abs() < 1e-15);
        assert!(euler_zeta2_approx(31).unwrap().value() > v.value());
        assert!(euler_zeta2_approx(0).is_err());
    }
}
