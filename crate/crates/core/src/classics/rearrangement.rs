use rug::Float;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{check_precision, pow2_neg, NumericValue, GUARD_BITS};
use crate::oracle::{accelerated_sum, CoefficientStream, OracleResult};
use crate::rational::Rational;
use crate::symbolic::{ln_integer, SymbolicValue};

const SERIES_MAX_TERMS: u64 = 1 << 24;

/// `1 + 1/3 + ⋯ − 1/2 − ⋯`: blocks of `p` positive odd-denominator terms
/// alternating with blocks of `q` negative even-denominator terms, each
/// pool consumed in increasing order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RearrangementSpec {
    pub pos_block: u64,
    pub neg_block: u64,
}

impl RearrangementSpec {
    pub fn new(pos_block: u64, neg_block: u64) -> Result<Self> {
        if pos_block == 0 || neg_block == 0 {
            return Err(Error::ArgOutOfRange(format!(
                "block sizes must be >= 1, got p = {pos_block}, q = {neg_block}"
            )));
        }
        Ok(RearrangementSpec { pos_block, neg_block })
    }

    /// The `k`-th term (from 0) as `(sign, denominator)`.
    pub fn term(&self, k: u64) -> (i32, u64) {
        let (p, q) = (self.pos_block, self.neg_block);
        let (block, r) = (k / (p + q), k % (p + q));
        if r < p {
            (1, 2 * (block * p + r) + 1)
        } else {
            (-1, 2 * (block * q + r - p + 1))
        }
    }
}

/// `ln 2 + (1/2)·(ln p − ln q)`.
pub fn rearranged_sum(spec: &RearrangementSpec) -> Result<SymbolicValue> {
    let mut v = ln_integer(2)?;
    let half = Rational::new(1, 2);
    v.add_scaled(&ln_integer(spec.pos_block)?, &half);
    v.add_scaled(&ln_integer(spec.neg_block)?, &-&half);
    Ok(v)
}

/// The sum of the first `n` terms of the rearrangement.
pub fn rearranged_partial(spec: &RearrangementSpec, n: u64, precision_bits: u32) -> Result<NumericValue> {
    check_precision(precision_bits)?;
    if n < 1 {
        return Err(Error::ArgOutOfRange("rearranged_partial needs N >= 1".into()));
    }
    let work = precision_bits + GUARD_BITS;
    let mut s = Float::new(work);
    for k in 0..n {
        let (sign, d) = spec.term(k);
        let t = Float::with_val(work, 1u32) / d;
        if sign > 0 {
            s += t;
        } else {
            s -= t;
        }
    }
    Ok(NumericValue::new(&s, precision_bits))
}

/// The rearranged series as a stream, with one block pair as its period.
pub fn rearranged_stream(spec: &RearrangementSpec) -> CoefficientStream {
    let spec = *spec;
    CoefficientStream::real(move |k, prec| {
        let (sign, d) = spec.term(k);
        let t = Float::with_val(prec, 1u32) / d;
        if sign > 0 {
            t
        } else {
            -t
        }
    })
    .with_period(spec.pos_block + spec.neg_block)
}

/// The rearranged series summed with acceleration, using at most `n_max` terms.
pub fn rearranged_accelerated(spec: &RearrangementSpec, n_max: u64, precision_bits: u32) -> Result<OracleResult> {
    accelerated_sum(&rearranged_stream(spec), n_max, precision_bits)
}

fn check_x(x: &Float) -> Result<()> {
    if x.is_nan() || *x <= 0 || *x >= 1 {
        return Err(Error::ArgOutOfRange("the generating function is evaluated on 0 < x < 1".into()));
    }
    Ok(())
}

/// `(1/2)·ln[(1 + x^q)(1 − x^{2p})/(1 − x^q)]`.
pub fn rearranged_generating(spec: &RearrangementSpec, x: &Float, precision_bits: u32) -> Result<NumericValue> {
    check_precision(precision_bits)?;
    check_x(x)?;
    let work = precision_bits + GUARD_BITS;
    let ln_x = Float::with_val(work, x).ln();
    // 1 − x^k = −expm1(k·ln x) stays accurate as x → 1.
    let one_minus = |k: u64| -Float::with_val(work, &ln_x * k).exp_m1();
    let xq = Float::with_val(work, &ln_x * spec.neg_block).exp();
    let v = (Float::with_val(work, xq.ln_1p_ref()) + one_minus(2 * spec.pos_block).ln() - one_minus(spec.neg_block).ln()) / 2u32;
    Ok(NumericValue::new(&v, precision_bits))
}

/// The zero-padded power series behind [`rearranged_generating`],
/// `Σ_{k odd} x^{qk}/k − Σ_{m≥1} x^{2pm}/(2m)`, summed term by term.
pub fn rearranged_generating_series(spec: &RearrangementSpec, x: &Float, precision_bits: u32) -> Result<NumericValue> {
    check_precision(precision_bits)?;
    check_x(x)?;
    let work = precision_bits + GUARD_BITS;
    let (p, q) = (spec.pos_block, spec.neg_block);
    let x = Float::with_val(work, x);
    let inv_gap = Float::with_val(work, 1u32 - &x).recip();
    let eps = pow2_neg(work, work);
    let mut pow = Float::with_val(work, 1u32);
    let mut s = Float::new(work);
    for n in 1..=SERIES_MAX_TERMS {
        pow *= &x;
        if n % q == 0 && (n / q) % 2 == 1 {
            s += Float::with_val(work, &pow * q) / n;
        }
        if n % (2 * p) == 0 {
            s -= Float::with_val(work, &pow * p) / n;
        }
        // Each coefficient is at most max(p, q)/n.
        if n % 64 == 0 && Float::with_val(work, &pow * &inv_gap) * p.max(q) / n < eps {
            return Ok(NumericValue::new(&s, precision_bits));
        }
    }
    Err(Error::NonConvergence(format!("generating series needs more than {SERIES_MAX_TERMS} terms")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::richardson_extrapolate;
    use crate::symbolic::eval_numeric;

    fn spec(p: u64, q: u64) -> RearrangementSpec {
        RearrangementSpec::new(p, q).unwrap()
    }

    #[test]
    fn closed_values() {
        let v = eval_numeric(&rearranged_sum(&spec(2, 1)).unwrap(), 128);
        assert!((v.to_f64() - 1.0397207708399179).abs() < 1e-15);
        assert_eq!(rearranged_sum(&spec(1, 1)).unwrap(), ln_integer(2).unwrap());
        assert!(rearranged_sum(&spec(1, 4)).unwrap().is_zero());
        assert!(RearrangementSpec::new(0, 1).is_err());
    }

    #[test]
    fn enumeration_order() {
        let s = spec(2, 1);
        let terms: Vec<(i32, u64)> = (0..9).map(|k| s.term(k)).collect();
        assert_eq!(terms, vec![(1, 1), (1, 3), (-1, 2), (1, 5), (1, 7), (-1, 4), (1, 9), (1, 11), (-1, 6)]);
        let p = rearranged_partial(&s, 3, 128).unwrap();
        assert!((p.to_f64() - (1.0 + 1.0 / 3.0 - 0.5)).abs() < 1e-15);
    }

    #[test]
    fn accelerated_limit() {
        for (p, q) in [(2, 1), (3, 2), (1, 4)] {
            let s = spec(p, q);
            let r = rearranged_accelerated(&s, 1_000_000, 128).unwrap();
            let v = eval_numeric(&rearranged_sum(&s).unwrap(), 128);
            assert!(r.value.abs_diff_f64(v.value()) < 1e-20, "({p},{q}): {r:?}");
        }
    }

    #[test]
    fn generating_function() {
        let s = spec(2, 1);
        let x = Float::with_val(128, 0.9f64);
        let closed = rearranged_generating(&s, &x, 128).unwrap();
        let series = rearranged_generating_series(&s, &x, 128).unwrap();
        assert!(closed.abs_diff_f64(series.value()) < 1e-30);
        // (1/2)·ln((1 + x)²(1 + x²)) for p = 2, q = 1
        let direct = (Float::with_val(128, &x + 1u32).square() * (Float::with_val(128, x.square_ref()) + 1u32)).ln() / 2u32;
        assert!(closed.abs_diff_f64(&direct) < 1e-30);

        let hs: Vec<Float> = (4..=20).map(|k| Float::with_val(128, 1u32) >> k).collect();
        let ys: Vec<Float> = hs
            .iter()
            .map(|h| rearranged_generating(&s, &(Float::with_val(128, 1u32) - h), 128).unwrap().into_value())
            .collect();
        let limit = richardson_extrapolate(&hs, &ys);
        let v = eval_numeric(&rearranged_sum(&s).unwrap(), 128);
        assert!(v.abs_diff_f64(&limit) < 1e-10);
    }
}
