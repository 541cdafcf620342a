//! The digamma function: exact values at rationals (Gauss), numeric values
//! by series and by integral, the recurrence, and Gauss's finite Fourier
//! identity.

use rug::Float;

use crate::error::{Error, Result};
use crate::numeric::{self, check_precision, Complex, GUARD_BITS};
use crate::oracle::{accelerated_sum_complex, quadrature_complex, CoefficientStream, QuadNode, Upper};
use crate::rational::Rational;
use crate::symbolic::{eval_numeric, gcd, ln_integer, ln_sin, pi_cot, ClosedForm, SymbolicValue};

/// Term budget for the series path.
pub const SERIES_MAX_TERMS: u64 = 1 << 20;

/// `ψ(q/p)` for `0 < q < p` by Gauss's digamma theorem:
///
/// `ψ(q/p) = −γ − ln(2p) − (π/2)cot(πq/p) + 2 Σ_{j=1}^{⌊(p+1)/2⌋−1} cos(2πjq/p)·ln sin(πj/p)`
///
/// The argument is reduced first. Cosines that are not rational stay in the
/// trigonometric part of the result.
pub fn digamma_rational(q: i64, p: i64) -> Result<ClosedForm> {
    if q <= 0 || p <= 0 || q >= p {
        return Err(Error::ArgOutOfRange(format!("digamma_rational needs 0 < q < p, got {q}/{p}")));
    }
    let g = gcd(q as u64, p as u64);
    let (q, p) = (q as u64 / g, p as u64 / g);
    let mut exact = SymbolicValue::euler_gamma().neg();
    exact.add_scaled(&ln_integer(2 * p)?, &Rational::from_int(-1));
    exact.add_scaled(&pi_cot(q, p)?, &Rational::new(-1, 2));
    let mut out = ClosedForm::from(exact);
    let two = Rational::from_int(2);
    for j in 1..(p + 1) / 2 {
        let turns = Rational::new((j * q) as i64, p as i64);
        out.add_cos_times(&two, &turns, &ln_sin(j, p)?);
    }
    Ok(out)
}

fn check_not_pole(z: &Complex) -> Result<()> {
    if z.im.is_zero() && z.re <= 0 && z.re.is_integer() {
        return Err(Error::Pole(format!("digamma has a pole at {}", numeric::format_float(&z.re, 20))));
    }
    Ok(())
}

/// `ψ(z) = −γ + Σ_{k≥0} (1/(k+1) − 1/(z+k))`, accelerated.
pub fn digamma_series_numeric(z: &Complex, precision_bits: u32) -> Result<Complex> {
    check_precision(precision_bits)?;
    check_not_pole(z)?;
    let stream = if z.im.is_zero() {
        let x = z.re.clone();
        CoefficientStream::real(move |k, prec| {
            let a = Float::with_val(prec, 1u32) / (k + 1);
            let b = Float::with_val(prec, &x + k).recip();
            a - b
        })
    } else {
        let z = z.clone();
        CoefficientStream::complex(move |k, prec| {
            let a = Complex::real(Float::with_val(prec, 1u32) / (k + 1));
            let zk = Complex::new(Float::with_val(prec, &z.re + k), Float::with_val(prec, &z.im));
            &a - &zk.recip()
        })
    }
    .with_period(1);
    let r = accelerated_sum_complex(&stream, SERIES_MAX_TERMS, precision_bits)?;
    let gamma = numeric::euler_gamma(precision_bits);
    let v = r.value();
    Ok(Complex::new(Float::with_val(precision_bits, &v.re - &gamma), v.im))
}

/// `ψ(z) = −γ + ∫₀¹ (1 − t^{z−1})/(1 − t) dt` for `Re z > 0`.
pub fn digamma_integral_numeric(z: &Complex, precision_bits: u32) -> Result<Complex> {
    check_precision(precision_bits)?;
    if z.re <= 0 {
        return Err(Error::Domain("the integral representation needs Re z > 0".into()));
    }
    let work = precision_bits + GUARD_BITS;
    let zm1 = Complex::new(Float::with_val(work, &z.re - 1u32), Float::with_val(work, &z.im));
    let real = zm1.im.is_zero();
    let integrand = move |node: &QuadNode| -> Complex {
        let prec = node.x.prec();
        let ln_t = if node.from_lo < 0.5 {
            Float::with_val(prec, node.from_lo.ln_ref())
        } else {
            Float::with_val(prec, -&node.from_hi).ln_1p()
        };
        // 1 − t^{z−1} = −expm1((z−1)·ln t)
        let a = Float::with_val(prec, &zm1.re * &ln_t);
        let num = if real {
            Complex::real(-a.exp_m1())
        } else {
            let b = Float::with_val(prec, &zm1.im * &ln_t);
            let (sb, cb) = b.clone().sin_cos(Float::new(prec));
            let half_sin = Float::with_val(prec, &b / 2u32).sin();
            let em1 = Float::with_val(prec, a.exp_m1_ref());
            let ea = Float::with_val(prec, &em1 + 1u32);
            let re = Float::with_val(prec, &em1 * &cb) - Float::with_val(prec, half_sin.square_ref()) * 2u32;
            let im = ea * sb;
            Complex::new(-re, -im)
        };
        num.scale(&Float::with_val(prec, node.from_hi.recip_ref()))
    };
    let zero = Float::new(work);
    let one = Upper::Finite(Float::with_val(work, 1u32));
    let r = quadrature_complex(integrand, &zero, &one, precision_bits)?;
    let gamma = numeric::euler_gamma(precision_bits);
    let v = r.value();
    Ok(Complex::new(Float::with_val(precision_bits, &v.re - &gamma), v.im))
}

/// `ψ(r)` for any positive rational `r` via `ψ(x + 1) = ψ(x) + 1/x`.
///
/// For `r = f + m` with `0 < f < 1` this is `ψ(f) + Σ_{k<m} 1/(f + k)`; for
/// an integer `m ≥ 1` it is `−γ + H_{m−1}`.
pub fn digamma_shift(r: &Rational) -> Result<ClosedForm> {
    if r.signum() <= 0 {
        return Err(Error::ArgOutOfRange(format!("digamma_shift needs r > 0, got {r}")));
    }
    let m = r.floor();
    let frac = r.fract_floor();
    let m = m.to_u64().ok_or_else(|| Error::ArgOutOfRange(format!("{r} is too large")))?;
    if frac.is_zero() {
        let mut h = Rational::zero();
        for k in 1..m {
            h += &Rational::new(1, k as i64);
        }
        let v = SymbolicValue::euler_gamma().neg().add(&SymbolicValue::rational(h));
        return Ok(ClosedForm::from(v));
    }
    let (q, p) = frac
        .to_i64_pair()
        .ok_or_else(|| Error::ArgOutOfRange(format!("{r} has a denominator beyond 64 bits")))?;
    let mut out = digamma_rational(q, p)?;
    let mut h = Rational::zero();
    for k in 0..m {
        h += &(&frac + &Rational::from_int(k as i64)).recip();
    }
    out.add_symbolic(&SymbolicValue::rational(h), &Rational::one());
    Ok(out)
}

/// Both sides of Gauss's identity
/// `Σ_{j=1}^{q−1} ψ(j/q)·e^{2πijk/q} = γ + q·ln(2 sin(πk/q)) + i(2k − q)π/2`.
///
/// `k` is reduced modulo `q` into `(0, q)` first; the right-hand side is
/// stated for that range.
pub fn gauss_fourier_check(q: i64, k: i64, precision_bits: u32) -> Result<(Complex, Complex)> {
    check_precision(precision_bits)?;
    if q < 2 {
        return Err(Error::ArgOutOfRange(format!("gauss_fourier_check needs q >= 2, got {q}")));
    }
    let k = k.rem_euclid(q);
    if k == 0 {
        return Err(Error::Domain(format!("q = {q} divides k")));
    }
    let work = precision_bits + GUARD_BITS;
    let mut lhs = Complex::zero(work);
    for j in 1..q {
        let psi = eval_numeric(&digamma_rational(j, q)?, work);
        let w = Complex::root_of_unity(j * k, q, work);
        lhs = &lhs + &w.scale(psi.value());
    }
    let pi = numeric::pi(work);
    let sin = Float::with_val(work, &pi * k) / q;
    let sin = sin.sin();
    let re = numeric::euler_gamma(work) + Float::with_val(work, sin * 2u32).ln() * q;
    let im = pi * (2 * k - q) / 2u32;
    Ok((lhs.with_prec(precision_bits), Complex::new(re, im).with_prec(precision_bits)))
}
