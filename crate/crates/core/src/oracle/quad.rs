use rug::Float;

use super::{ComplexOracleResult, OracleResult};
use crate::error::{Error, Result};
use crate::numeric::{self, check_precision, pow2_neg, Complex, GUARD_BITS};

/// An abscissa handed to the integrand.
///
/// Near an endpoint `x` itself has lost the information the integrand
/// needs (`1 − x` rounds to zero long before the rule stops refining), so
/// the exact distances to both endpoints are passed alongside it.
#[derive(Debug, Clone)]
pub struct QuadNode {
    pub x: Float,
    /// `x − a`.
    pub from_lo: Float,
    /// `b − x`; `+∞` on an infinite range.
    pub from_hi: Float,
}

/// Upper limit of integration.
#[derive(Debug, Clone)]
pub enum Upper {
    Finite(Float),
    Infinity,
}

const MAX_LEVEL: u32 = 12;
const U_CAP: u32 = 8;

/// `∫_a^b f` for a real integrand by the tanh-sinh rule.
pub fn quadrature<F>(f: F, a: &Float, b: &Upper, precision_bits: u32) -> Result<OracleResult>
where
    F: Fn(&QuadNode) -> Float,
{
    let r = quadrature_complex(|node| Complex::real(f(node)), a, b, precision_bits)?;
    Ok(r.real_part())
}

/// `∫_a^b f` for a complex-valued integrand.
///
/// The step is halved until successive estimates differ by less than
/// `2^-(precision_bits − 8)·max(1, |I|)`. An infinite range is split at
/// `a + 1` and the tail mapped onto `(0, 1]` by `t = a + 1/s`.
pub fn quadrature_complex<F>(f: F, a: &Float, b: &Upper, precision_bits: u32) -> Result<ComplexOracleResult>
where
    F: Fn(&QuadNode) -> Complex,
{
    check_precision(precision_bits)?;
    let work = precision_bits + GUARD_BITS;
    let a = Float::with_val(work, a);
    let (value, err, evals, conv) = match b {
        Upper::Finite(b) => {
            let b = Float::with_val(work, b);
            if b <= a {
                return Err(Error::Domain(format!("empty interval [{a}, {b}]")));
            }
            tanh_sinh(&f, &a, &b, precision_bits)?
        }
        Upper::Infinity => {
            let a1 = Float::with_val(work, &a + 1u32);
            let (v1, e1, n1, c1) = tanh_sinh(&f, &a, &a1, precision_bits)?;
            let inf = Float::with_val(work, rug::float::Special::Infinity);
            let g = |node: &QuadNode| {
                let s = &node.x;
                let inv = Float::with_val(work, s.recip_ref());
                let t = QuadNode { x: Float::with_val(work, &a + &inv), from_lo: inv.clone(), from_hi: inf.clone() };
                let inv2 = Float::with_val(work, inv.square_ref());
                f(&t).scale(&inv2)
            };
            let zero = Float::new(work);
            let one = Float::with_val(work, 1u32);
            let (v2, e2, n2, c2) = tanh_sinh(&g, &zero, &one, precision_bits)?;
            (&v1 + &v2, e1 + e2, n1 + n2, c1 && c2)
        }
    };
    Ok(ComplexOracleResult::new(&value, &err, evals, conv, precision_bits))
}

struct Abscissa {
    /// Distance of the node from the nearer endpoint, as a fraction of the half-width.
    comp: Float,
    weight: Float,
}

fn abscissa(u: &Float, work: u32) -> Abscissa {
    let pi_half = numeric::pi(work) / 2u32;
    let (s, c) = u.clone().sinh_cosh(Float::new(work));
    let v = Float::with_val(work, &pi_half * &s);
    let e = Float::with_val(work, v * -2i32).exp();
    let one_e = Float::with_val(work, 1u32 + &e);
    let comp = Float::with_val(work, &e * 2u32) / &one_e;
    // cosh(v)⁻² = 4e / (1 + e)²
    let weight = pi_half * c * 4u32 * e / one_e.square();
    Abscissa { comp, weight }
}

fn tanh_sinh<F>(f: &F, a: &Float, b: &Float, precision_bits: u32) -> Result<(Complex, Float, u64, bool)>
where
    F: Fn(&QuadNode) -> Complex,
{
    let work = precision_bits + GUARD_BITS;
    let half = Float::with_val(work, b - a) / 2u32;
    let width = Float::with_val(work, b - a);
    let eps = pow2_neg(work, work);
    let tol = pow2_neg(precision_bits - 8, work);
    let mut evals: u64 = 0;

    let eval = |x: Float, from_lo: Float, from_hi: Float, evals: &mut u64| -> Result<Complex> {
        *evals += 1;
        let node = QuadNode { x, from_lo, from_hi };
        let v = f(&node);
        if !v.is_finite() {
            return Err(Error::SingularIntegrand(numeric::format_float(&node.x, 20)));
        }
        Ok(v)
    };
    // Contribution of the symmetric pair at ±u (weight already included).
    let pair = |u: &Float, evals: &mut u64| -> Result<(Complex, Complex)> {
        let Abscissa { comp, weight } = abscissa(u, work);
        let d = Float::with_val(work, &half * &comp);
        let far = Float::with_val(work, &width - &d);
        let right = eval(Float::with_val(work, b - &d), far.clone(), d.clone(), evals)?;
        let left = eval(Float::with_val(work, a + &d), d, far, evals)?;
        let w = Float::with_val(work, &weight * &half);
        Ok((right.scale(&w), left.scale(&w)))
    };

    // Level 0 (h = 1) also fixes how far out each side needs to go.
    let centre = {
        let mid = Float::with_val(work, a + &half);
        let pi_half = numeric::pi(work) / 2u32;
        eval(mid, half.clone(), half.clone(), &mut evals)?.scale(&Float::with_val(work, &pi_half * &half))
    };
    let mut sum = centre;
    let mut u_max = [0u32; 2];
    let mut quiet = [0u32; 2];
    let mut done = [false; 2];
    for k in 1..=U_CAP {
        let u = Float::with_val(work, k);
        let (r, l) = pair(&u, &mut evals)?;
        let scale = sum.max_abs().max(&Float::with_val(work, &eps)).clone();
        let thresh = Float::with_val(work, &scale * &eps);
        for (side, term) in [(0usize, &r), (1usize, &l)] {
            if done[side] {
                continue;
            }
            u_max[side] = k;
            if term.max_abs() < thresh {
                quiet[side] += 1;
                done[side] = quiet[side] >= 2;
            } else {
                quiet[side] = 0;
            }
        }
        sum = &(&sum + &r) + &l;
        if done[0] && done[1] {
            break;
        }
    }
    let u_lim = u_max[0].max(u_max[1]);

    let mut estimate = sum.clone();
    let mut change = estimate.max_abs();
    let mut converged = false;
    for level in 1..=MAX_LEVEL {
        let h = pow2_neg(level, work);
        let steps = u_lim << level;
        let mut fresh = Complex::zero(work);
        let mut j = 1u64;
        while j < steps as u64 {
            let u = Float::with_val(work, &h * j);
            let (r, l) = pair(&u, &mut evals)?;
            fresh = &(&fresh + &r) + &l;
            j += 2;
        }
        sum = &sum + &fresh;
        let next = sum.scale(&h);
        change = (&next - &estimate).max_abs();
        estimate = next;
        let scale = estimate.max_abs().max(&Float::with_val(work, 1u32)).clone();
        if level >= 3 && change < Float::with_val(work, &tol * &scale) {
            converged = true;
            break;
        }
    }
    Ok((estimate, change, evals, converged))
}
