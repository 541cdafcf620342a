use rug::Float;

use super::accel::{extrapolate, spread_of_last3, Basis};
use super::stream::CoefficientStream;
use super::OracleResult;
use crate::error::{Error, Result};
use crate::numeric::{check_precision, pow2_neg, Complex};

/// Tuning knobs for [`abel_limit_with`].
#[derive(Debug, Clone)]
pub struct AbelOptions {
    pub k_min: u32,
    pub k_max: u32,
    /// Upper bound on the number of terms summed for a single `f(x_k)`.
    /// Reaching it ends the schedule early with `converged = false` unless
    /// the extrapolants have already settled.
    pub max_terms: u64,
}

impl Default for AbelOptions {
    fn default() -> Self {
        AbelOptions { k_min: 4, k_max: 40, max_terms: 1 << 22 }
    }
}

/// One point of the Abel schedule.
#[derive(Debug, Clone)]
pub struct AbelStep {
    pub k: u32,
    /// Terms summed to evaluate `f(1 - 2^-k)`.
    pub terms: u64,
    pub value: Float,
    /// Best extrapolant using the points up to and including this one.
    pub extrapolant: Float,
}

#[derive(Debug, Clone)]
pub struct AbelReport {
    pub result: OracleResult,
    pub steps: Vec<AbelStep>,
    /// The extrapolation model that won.
    pub basis: Basis,
}

/// `lim_{x→1⁻} Σ aₙxⁿ` for a real coefficient stream.
pub fn abel_limit(a: &CoefficientStream, precision_bits: u32, k_max: u32) -> Result<OracleResult> {
    let opts = AbelOptions { k_max, ..AbelOptions::default() };
    Ok(abel_limit_with(a, precision_bits, &opts)?.result)
}

const WINDOW: u64 = 64;

/// `Σ aₙxⁿ` truncated by the geometric tail bound, or `None` past the budget.
fn power_sum(a: &CoefficientStream, x: &Float, inv_one_minus_x: &Float, tol: &Float, max_terms: u64, work: u32) -> Option<(Float, u64)> {
    let mut sum = Float::new(work);
    let mut pow = Float::with_val(work, 1u32);
    let mut sup_prev = Float::new(work);
    let mut sup_cur = Float::new(work);
    let mut n: u64 = 0;
    loop {
        let c = a.real_at(n, work).expect("real stream");
        if !c.is_zero() {
            let m = Float::with_val(work, c.abs_ref());
            if m > sup_cur {
                sup_cur = m;
            }
            sum += Float::with_val(work, &c * &pow);
        }
        pow *= x;
        n += 1;
        if n % WINDOW == 0 {
            let sup = if sup_cur > sup_prev { &sup_cur } else { &sup_prev };
            let bound = Float::with_val(work, &pow * inv_one_minus_x) * sup;
            if bound < *tol {
                return Some((sum, n));
            }
            sup_prev = std::mem::replace(&mut sup_cur, Float::new(work));
            if n >= max_terms {
                return None;
            }
        }
    }
}

/// [`abel_limit`] with explicit options and the full schedule trace.
///
/// `f(x_k)` is evaluated at `x_k = 1 − 2^-k` and the sequence is
/// extrapolated in `h = 2^-k`, both with a pure power model and with one
/// that also carries `hʲ·ln h` terms (series such as `Σ 1/n²` produce
/// those). The model whose last two extrapolants agree more closely wins.
pub fn abel_limit_with(a: &CoefficientStream, precision_bits: u32, opts: &AbelOptions) -> Result<AbelReport> {
    check_precision(precision_bits)?;
    if !a.is_real() {
        return Err(Error::Domain("abel_limit expects a real coefficient stream".into()));
    }
    let work = precision_bits / 2 + 64;
    let tol = pow2_neg(precision_bits / 2 + 16, work);
    let conv_tol = pow2_neg(precision_bits / 2, work);

    let mut hs: Vec<Float> = Vec::new();
    let mut ys: Vec<Complex> = Vec::new();
    let mut ests: [Vec<Complex>; 2] = [Vec::new(), Vec::new()];
    let bases = [Basis::Power, Basis::PowerLog];
    let mut steps: Vec<AbelStep> = Vec::new();
    let mut terms_used = 0u64;
    let mut growth = 0;
    let mut winner: Option<usize> = None;

    for k in opts.k_min..=opts.k_max {
        let h = pow2_neg(k, work);
        let x = Float::with_val(work, 1u32) - &h;
        let inv = Float::with_val(work, 1u32) << k;
        let Some((f, n)) = power_sum(a, &x, &inv, &tol, opts.max_terms, work) else {
            break;
        };
        terms_used = terms_used.max(n);
        if let Some(prev) = ys.last() {
            if f.clone().abs() > Float::with_val(work, prev.re.clone().abs() * 2u32) {
                growth += 1;
            } else {
                growth = 0;
            }
            if growth >= 3 {
                return Err(Error::NonConvergence(format!("|f(x_k)| doubled over three consecutive k (k = {k})")));
            }
        }
        hs.push(h);
        ys.push(Complex::real(f.clone()));
        for (b, est) in bases.iter().zip(ests.iter_mut()) {
            est.push(extrapolate(&hs, &ys, *b));
        }
        let diffs: Vec<Option<Float>> = ests
            .iter()
            .map(|e| (e.len() >= 2).then(|| (&e[e.len() - 1] - &e[e.len() - 2]).max_abs()))
            .collect();
        let best = pick(&diffs);
        steps.push(AbelStep { k, terms: n, value: f, extrapolant: ests[best].last().unwrap().re.clone() });
        if let Some(d) = &diffs[best] {
            if *d < conv_tol {
                winner = Some(best);
                break;
            }
        }
    }
    if steps.is_empty() {
        return Err(Error::NonConvergence(format!(
            "f(1 - 2^-{}) needs more than {} terms",
            opts.k_min, opts.max_terms
        )));
    }
    let diffs: Vec<Option<Float>> = ests
        .iter()
        .map(|e| (e.len() >= 2).then(|| (&e[e.len() - 1] - &e[e.len() - 2]).max_abs()))
        .collect();
    let chosen = winner.unwrap_or_else(|| pick(&diffs));
    let value = ests[chosen].last().unwrap().re.clone();
    let error = spread_of_last3(&ests[chosen]);
    let converged = winner.is_some();
    Ok(AbelReport {
        result: OracleResult::new(&value, &error, terms_used, converged, precision_bits),
        steps,
        basis: bases[chosen],
    })
}

fn pick(diffs: &[Option<Float>]) -> usize {
    match (&diffs[0], &diffs[1]) {
        (Some(p), Some(l)) if l < p => 1,
        _ => 0,
    }
}
