use rug::ops::Pow;
use rug::Float;

use super::{ComplexOracleResult, OracleResult};
use super::stream::CoefficientStream;
use crate::error::{Error, Result};
use crate::numeric::{pow2_neg, Complex, GUARD_BITS};

/// Model used to extrapolate a sequence `y(h)` to `h → 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Basis {
    /// `y = L + c₁h + c₂h² + ⋯`
    Power,
    /// `y = L + c₁h + d₁h·ln h + c₂h² + d₂h²·ln h + ⋯`
    PowerLog,
}

impl Basis {
    fn eval(self, j: usize, h: &Float, ln_h: &Float) -> Float {
        match self {
            Basis::Power => Float::with_val(h.prec(), h.pow(j as u32 + 1)),
            Basis::PowerLog => {
                let p = Float::with_val(h.prec(), h.pow(j as u32 / 2 + 1));
                if j % 2 == 0 {
                    p
                } else {
                    p * ln_h
                }
            }
        }
    }
}

/// Extrapolates `y(h)` to `h = 0` through every supplied point.
///
/// Solves the square system `yᵢ = L + Σⱼ cⱼ φⱼ(hᵢ)` by Gaussian elimination
/// with partial pivoting and returns `L`. The abscissae are rescaled by the
/// largest `h` first, which leaves the fitted span unchanged.
pub fn extrapolate(h: &[Float], y: &[Complex], basis: Basis) -> Complex {
    assert_eq!(h.len(), y.len());
    assert!(!h.is_empty());
    let n = h.len();
    if n == 1 {
        return y[0].clone();
    }
    let prec = y[0].prec().max(h[0].prec()) * 2 + 64;
    let scale = h.iter().fold(Float::new(prec), |m, x| if *x > m { Float::with_val(prec, x) } else { m });
    let mut rows: Vec<Vec<Float>> = Vec::with_capacity(n);
    let mut re: Vec<Float> = Vec::with_capacity(n);
    let mut im: Vec<Float> = Vec::with_capacity(n);
    for (hi, yi) in h.iter().zip(y) {
        let t = Float::with_val(prec, hi / &scale);
        let ln_t = Float::with_val(prec, t.ln_ref());
        let mut row = Vec::with_capacity(n);
        row.push(Float::with_val(prec, 1u32));
        for j in 0..n - 1 {
            row.push(basis.eval(j, &t, &ln_t));
        }
        rows.push(row);
        re.push(Float::with_val(prec, &yi.re));
        im.push(Float::with_val(prec, &yi.im));
    }
    // Forward elimination; column 0 (the constant) is solved last so the
    // pivoting works on the well-separated basis columns first.
    let order: Vec<usize> = (1..n).chain(std::iter::once(0)).collect();
    for (step, &col) in order.iter().enumerate() {
        let pivot = (step..n)
            .max_by(|&a, &b| {
                let (x, y) = (rows[a][col].clone().abs(), rows[b][col].clone().abs());
                x.partial_cmp(&y).unwrap_or(std::cmp::Ordering::Equal)
            })
            .expect("nonempty");
        rows.swap(step, pivot);
        re.swap(step, pivot);
        im.swap(step, pivot);
        if rows[step][col].is_zero() {
            continue;
        }
        for r in step + 1..n {
            let factor = Float::with_val(prec, &rows[r][col] / &rows[step][col]);
            if factor.is_zero() {
                continue;
            }
            for &c in &order[step..] {
                let d = Float::with_val(prec, &factor * &rows[step][c]);
                rows[r][c] -= d;
            }
            let d = Float::with_val(prec, &factor * &re[step]);
            re[r] -= d;
            let d = Float::with_val(prec, &factor * &im[step]);
            im[r] -= d;
        }
    }
    // The last row now reads `rows[n-1][0]·L = rhs`.
    let last = n - 1;
    let out_prec = y[0].prec();
    let piv = &rows[last][0];
    Complex::new(
        Float::with_val(out_prec, &re[last] / piv),
        Float::with_val(out_prec, &im[last] / piv),
    )
}

/// Incremental Neville table extrapolating to `h = 0`.
#[derive(Default)]
pub(crate) struct Neville {
    h: Vec<Float>,
    row: Vec<Complex>,
}

impl Neville {
    /// Adds a point and returns the highest-order extrapolant.
    pub(crate) fn push(&mut self, h: Float, y: Complex) -> Complex {
        let i = self.h.len();
        let mut row = Vec::with_capacity(i + 1);
        row.push(y);
        for j in 1..=i {
            let denom = Float::with_val(h.prec(), &self.h[i - j] - &h);
            let diff = &row[j - 1] - &self.row[j - 1];
            let step = diff.scale(&Float::with_val(h.prec(), &h / &denom));
            row.push(&row[j - 1] + &step);
        }
        self.h.push(h);
        self.row = row;
        self.row.last().expect("nonempty").clone()
    }
}

/// Polynomial Richardson extrapolation of `y(h)` to `h = 0`.
pub fn richardson_extrapolate(h: &[Float], y: &[Float]) -> Float {
    let yc: Vec<Complex> = y.iter().map(|v| Complex::real(v.clone())).collect();
    extrapolate(h, &yc, Basis::Power).re
}

/// Largest pairwise distance among the last three estimates.
pub(crate) fn spread_of_last3(ests: &[Complex]) -> Float {
    let prec = ests.first().map(|e| e.prec()).unwrap_or(64);
    let tail = &ests[ests.len().saturating_sub(3)..];
    let mut worst = Float::new(prec);
    for i in 0..tail.len() {
        for j in i + 1..tail.len() {
            let d = (&tail[i] - &tail[j]).max_abs();
            if d > worst {
                worst = d;
            }
        }
    }
    worst
}

/// Iterated Aitken Δ² on a window of partial sums.
///
/// Returns the level whose value moved least from the level before it,
/// which is where rounding noise has not yet taken over.
pub(crate) fn iterated_aitken(window: &[Complex]) -> Complex {
    let mut level: Vec<Complex> = window.to_vec();
    let mut best = level.last().expect("nonempty window").clone();
    let mut best_step: Option<Float> = None;
    while level.len() >= 3 {
        let mut next = Vec::with_capacity(level.len() - 2);
        for i in 0..level.len() - 2 {
            let d1 = &level[i + 1] - &level[i];
            let d2 = &level[i + 2] - &level[i + 1];
            let dd = &d2 - &d1;
            if dd.is_zero() {
                // Exact geometric (or constant) tail: the sequence has already converged.
                return level[i + 2].clone();
            }
            let corr = d2.mul_ref(&d2).div_ref(&dd);
            next.push(&level[i + 2] - &corr);
        }
        let prev_last = level.last().expect("nonempty").clone();
        let cand = next.last().expect("nonempty").clone();
        if !cand.is_finite() {
            break;
        }
        let step = (&cand - &prev_last).max_abs();
        if best_step.as_ref().map_or(true, |b| step < *b) {
            best_step = Some(step);
            best = cand;
        }
        level = next;
    }
    best
}

const AITKEN_WINDOW: usize = 33;
const FIRST_CHECKPOINT: u64 = 64;
/// Smallest block spacing. The `1/K` expansion of a block partial sum is
/// asymptotic with an accuracy floor near `e^{-2πK}`, so the spacing also
/// grows with the requested precision.
const FIRST_BLOCKS: u64 = 32;
/// Consecutive extrapolants without a new closest agreement before giving up.
const STALL_LIMIT: u32 = 8;

/// Sums a convergent series with acceleration.
///
/// Streams with a period hint are summed block by block and the block
/// partial sums `S(K)` are Richardson-extrapolated in `1/K` at
/// equally spaced `K = K₀, 2K₀, 3K₀, …`. Other streams have iterated Aitken Δ² applied to a
/// window of partial sums at `N = 64, 128, …`. Either way the run stops
/// once successive estimates agree to the working precision, or when
/// `n_max` terms have been used.
pub fn accelerated_sum(a: &CoefficientStream, n_max: u64, precision_bits: u32) -> Result<OracleResult> {
    Ok(accelerated_sum_complex(a, n_max, precision_bits)?.real_part())
}

/// [`accelerated_sum`] for complex streams; both parts are extrapolated together.
pub fn accelerated_sum_complex(a: &CoefficientStream, n_max: u64, precision_bits: u32) -> Result<ComplexOracleResult> {
    crate::numeric::check_precision(precision_bits)?;
    // Extra bits absorb the growth of the Neville weights on equally spaced nodes.
    let work = precision_bits + 2 * GUARD_BITS + 64 - n_max.max(1).leading_zeros();
    let stop_tol = pow2_neg(precision_bits.saturating_sub(16), work);
    let conv_tol = pow2_neg(precision_bits / 2, work);

    let mut sum = Complex::zero(work);
    let mut n: u64 = 0;
    let mut ests: Vec<Complex> = Vec::new();
    let mut growth = 0;
    let mut last_abs = Float::new(work);

    let mut push = |est: Complex, partial: &Complex, n: u64, check_growth: bool, ests: &mut Vec<Complex>| -> Result<bool> {
        let pabs = partial.max_abs();
        if check_growth {
            if !last_abs.is_zero() && pabs > Float::with_val(work, &last_abs * 1.9f64) {
                growth += 1;
            } else {
                growth = 0;
            }
            last_abs = pabs;
        }
        if growth >= 3 {
            return Err(Error::NonConvergence(format!("partial sums grow without bound after {n} terms")));
        }
        if !est.is_finite() {
            return Err(Error::NonConvergence("non-finite extrapolant".into()));
        }
        ests.push(est);
        if ests.len() >= 3 {
            let k = ests.len();
            let d = (&ests[k - 1] - &ests[k - 2]).max_abs();
            let scale = ests[k - 1].max_abs().max(&Float::with_val(work, 1u32)).clone();
            return Ok(d < Float::with_val(work, &stop_tol * &scale));
        }
        Ok(false)
    };

    match a.period() {
        Some(p) => {
            let k0 = FIRST_BLOCKS.max(u64::from(precision_bits) / 8);
            let mut table = Neville::default();
            let mut best: Option<(Float, usize)> = None;
            let mut stall = 0;
            let mut i = 1u64;
            while i == 1 || i * k0 * p <= n_max {
                let blocks = i * k0;
                while n < blocks * p {
                    sum = &sum + &a.at(n, work);
                    n += 1;
                }
                let est = table.push(Float::with_val(work, 1u32) / blocks, sum.clone());
                // Growth is only meaningful between doublings of the block count.
                let check_growth = i.is_power_of_two();
                if push(est, &sum, n, check_growth, &mut ests)? {
                    break;
                }
                if ests.len() >= 2 {
                    let k = ests.len();
                    let d = (&ests[k - 1] - &ests[k - 2]).max_abs();
                    if best.as_ref().map_or(true, |(b, _)| d < *b) {
                        best = Some((d, k));
                        stall = 0;
                    } else {
                        stall += 1;
                    }
                    // Extrapolants that keep moving away from the best agreement
                    // mean the 1/K model does not fit (or the series diverges).
                    if stall >= STALL_LIMIT {
                        ests.truncate(best.as_ref().map_or(k, |(_, j)| *j));
                        break;
                    }
                }
                i += 1;
            }
        }
        None => {
            let mut window: std::collections::VecDeque<Complex> = std::collections::VecDeque::with_capacity(AITKEN_WINDOW);
            let mut checkpoint = FIRST_CHECKPOINT;
            loop {
                while n < checkpoint {
                    sum = &sum + &a.at(n, work);
                    n += 1;
                    if window.len() == AITKEN_WINDOW {
                        window.pop_front();
                    }
                    window.push_back(sum.clone());
                }
                let w: Vec<Complex> = window.iter().cloned().collect();
                let est = iterated_aitken(&w);
                if push(est, &sum, n, true, &mut ests)? {
                    break;
                }
                if checkpoint * 2 > n_max {
                    break;
                }
                checkpoint *= 2;
            }
        }
    }

    let value = ests.last().cloned().unwrap_or_else(|| Complex::zero(work));
    let error = spread_of_last3(&ests);
    let scale = value.max_abs().max(&Float::with_val(work, 1u32)).clone();
    let converged = ests.len() >= 3 && error < Float::with_val(work, &conv_tol * &scale);
    Ok(ComplexOracleResult::new(&value, &error, n, converged, precision_bits))
}
