//! Real Dirichlet characters and `L(1, χ)`.

use rug::{Float, Integer};
use serde::{Deserialize, Serialize};

use crate::digamma::digamma_rational;
use crate::error::{Error, Result};
use crate::numeric::{self, check_precision, pow2_neg, Complex, NumericValue, GUARD_BITS};
use crate::oracle::{accelerated_sum, OracleResult};
use crate::periodic::{closed_form_sum, PeriodicCoefficients};
use crate::rational::Rational;
use crate::symbolic::{factorize, gcd, is_prime, ClosedForm};

/// Term budget for the `Σ χ(n)/n` oracle.
pub const SERIES_MAX_TERMS: u64 = 1 << 20;

/// A real Dirichlet character modulo `p`, stored by residue `0 … p−1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DirichletCharacter {
    modulus: u64,
    values: Vec<i64>,
    trivial: bool,
}

impl DirichletCharacter {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Values at residues `0 … p−1`.
    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn is_trivial(&self) -> bool {
        self.trivial
    }

    pub fn at(&self, n: i64) -> i64 {
        self.values[n.rem_euclid(self.modulus as i64) as usize]
    }
}

/// Checks length, coprime support and complete multiplicativity.
///
/// `values[r]` is `χ(r)` for residues `r = 0 … p−1`.
pub fn validate(values: &[i64], p: u64) -> Result<DirichletCharacter> {
    if p < 2 {
        return Err(Error::ArgOutOfRange(format!("character modulus must be >= 2, got {p}")));
    }
    if values.len() as u64 != p {
        return Err(Error::NotPeriodicInput { expected: p as usize, got: values.len() });
    }
    for (r, &v) in values.iter().enumerate() {
        if (v != 0) != (gcd(r as u64, p) == 1) {
            return Err(Error::WrongSupport { residue: r as u64 });
        }
    }
    for m in 1..p {
        for n in m..p {
            let mn = m * n % p;
            if values[m as usize] * values[n as usize] != values[mn as usize] {
                return Err(Error::NotMultiplicative { m, n, mn });
            }
        }
    }
    let trivial = values.iter().all(|&v| v == 0 || v == 1);
    Ok(DirichletCharacter { modulus: p, values: values.to_vec(), trivial })
}

/// [`validate`] for the listing `χ(1), χ(2), …, χ(p)`.
pub fn validate_from_one(values: &[i64], p: u64) -> Result<DirichletCharacter> {
    if values.len() as u64 != p {
        return Err(Error::NotPeriodicInput { expected: p as usize, got: values.len() });
    }
    let mut by_residue = values.to_vec();
    by_residue.rotate_right(1);
    validate(&by_residue, p)
}

/// Every real character modulo `p`, the principal one included, by brute
/// force over `±1` assignments on the units.
pub fn real_characters(p: u64) -> Vec<DirichletCharacter> {
    let units: Vec<u64> = (1..p).filter(|&r| gcd(r, p) == 1).collect();
    let mut out = Vec::new();
    for mask in 0u64..(1 << units.len()) {
        let mut v = vec![0i64; p as usize];
        for (i, &u) in units.iter().enumerate() {
            v[u as usize] = if mask >> i & 1 == 1 { -1 } else { 1 };
        }
        if let Ok(c) = validate(&v, p) {
            out.push(c);
        }
    }
    out
}

/// `L(1, χ)` three ways.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct L1Values {
    /// `−(1/p) Σ χ(j)·ψ(j/p)`.
    pub via_digamma: ClosedForm,
    /// The periodic closed form on `aₙ = χ(n+1)`.
    pub via_periodic: ClosedForm,
    /// `Σ χ(n)/n`, summed.
    pub oracle: OracleResult,
}

pub fn l1(chi: &DirichletCharacter, precision_bits: u32) -> Result<L1Values> {
    check_precision(precision_bits)?;
    if chi.is_trivial() {
        return Err(Error::TrivialCharacter);
    }
    let p = chi.modulus();
    let sum: i64 = chi.values().iter().sum();
    if sum != 0 {
        return Err(Error::NonZeroSum(sum.to_string()));
    }
    let mut via_digamma = ClosedForm::zero();
    for j in 1..p {
        let c = chi.values()[j as usize];
        if c != 0 {
            let psi = digamma_rational(j as i64, p as i64)?;
            via_digamma.add_assign_scaled(&psi, &Rational::new(-c, p as i64));
        }
    }
    let coeffs = PeriodicCoefficients::from_ints(&(1..=p as i64).map(|n| chi.at(n)).collect::<Vec<_>>())?;
    let via_periodic = closed_form_sum(&coeffs)?;
    let oracle = accelerated_sum(&coeffs.harmonic_stream(), SERIES_MAX_TERMS, precision_bits)?;
    Ok(L1Values { via_digamma, via_periodic, oracle })
}

/// `(n/p)` by Euler's criterion `n^{(p−1)/2} mod p`.
pub fn legendre_symbol(n: i64, p: i64) -> Result<i8> {
    if p < 3 || p % 2 == 0 || !is_prime(p as u64) {
        return Err(Error::NotOddPrime(p));
    }
    let r = Integer::from(n.rem_euclid(p));
    let e = Integer::from((p - 1) / 2);
    let m = Integer::from(p);
    let v = r.pow_mod(&e, &m).expect("positive modulus");
    Ok(if v == 0 {
        0
    } else if v == 1 {
        1
    } else {
        -1
    })
}

fn check_squarefree_odd(p: i64) -> Result<Vec<u64>> {
    if p <= 1 || p % 2 == 0 {
        return Err(Error::BadModulus(p));
    }
    let f = factorize(p as u64);
    if f.iter().any(|&(_, e)| e > 1) {
        return Err(Error::BadModulus(p));
    }
    Ok(f.into_iter().map(|(q, _)| q).collect())
}

/// The Jacobi symbol `(n/p)` for odd squarefree `p`: the product of the
/// Legendre symbols over the prime factors.
pub fn jacobi_symbol(n: i64, p: i64) -> Result<i8> {
    let primes = check_squarefree_odd(p)?;
    let mut s = 1i8;
    for q in primes {
        s *= legendre_symbol(n, q as i64)?;
    }
    Ok(s)
}

/// `−(i^{(p−1)²/4}/√p) Σ_{j=1}^{p−1} (j/p)·(ln sin(jπ/p) − (πj/p)·i)`.
pub fn legendre_l1_rhs(p: i64, precision_bits: u32) -> Result<Complex> {
    check_precision(precision_bits)?;
    check_squarefree_odd(p)?;
    let work = precision_bits + GUARD_BITS;
    let pi = numeric::pi(work);
    let mut re = Float::new(work);
    let mut im = Float::new(work);
    for j in 1..p {
        let s = jacobi_symbol(j, p)?;
        if s == 0 {
            continue;
        }
        let angle = Float::with_val(work, &pi * j) / p;
        let ln_sin = angle.clone().sin().ln();
        re += ln_sin * s;
        im -= angle * s;
    }
    // i^e with e = ((p−1)/2)² mod 4
    let half = (p - 1) / 2;
    let sum = Complex::new(re, im);
    let rotated = match (half * half).rem_euclid(4) {
        0 => sum,
        1 => Complex::new(-sum.im, sum.re),
        2 => -sum,
        _ => Complex::new(sum.im, -sum.re),
    };
    let scale = -Float::with_val(work, p).sqrt().recip();
    Ok(rotated.scale(&scale).with_prec(precision_bits))
}

/// `Σ (n/p)/n` summed, and the right-hand side of Dirichlet's formula.
///
/// The right-hand side must come out real; an imaginary part above
/// `2^{-(precision_bits − 16)}` is reported as [`Error::PathDisagreement`].
pub fn legendre_l1_check(p: i64, precision_bits: u32) -> Result<(NumericValue, NumericValue)> {
    check_precision(precision_bits)?;
    check_squarefree_odd(p)?;
    let values = (0..p).map(|r| jacobi_symbol(r, p).map(i64::from)).collect::<Result<Vec<_>>>()?;
    let coeffs: Vec<i64> = (1..=p).map(|n| values[(n % p) as usize]).collect();
    let stream = PeriodicCoefficients::from_ints(&coeffs)?.harmonic_stream();
    let lhs = accelerated_sum(&stream, SERIES_MAX_TERMS, precision_bits)?.value;
    let rhs = legendre_l1_rhs(p, precision_bits)?;
    if rhs.im.clone().abs() > pow2_neg(precision_bits - 16, precision_bits) {
        return Err(Error::PathDisagreement(format!(
            "Dirichlet's formula for p = {p} has imaginary part {}",
            numeric::format_float(&rhs.im, 6)
        )));
    }
    Ok((lhs, NumericValue::new(&rhs.re, precision_bits)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::eval_numeric;

    #[test]
    fn validation_examples() {
        let c = validate(&[0, 1, -1], 3).unwrap();
        assert!(!c.is_trivial());
        let c = validate_from_one(&[1, 0, 1, 0, -1, 0, -1, 0], 8).unwrap();
        assert_eq!(c.values(), &[0, 1, 0, 1, 0, -1, 0, -1]);
        assert!(matches!(validate_from_one(&[1, 1, 1, 0], 4), Err(Error::WrongSupport { residue: 2 })));
        assert!(matches!(validate(&[0, 1], 3), Err(Error::NotPeriodicInput { expected: 3, got: 2 })));
        assert!(matches!(validate(&[0, 1, 1, -1, 1], 5), Err(Error::NotMultiplicative { .. })));
        assert!(validate(&[0, 1, 1], 3).unwrap().is_trivial());
    }

    #[test]
    fn l1_examples() {
        let prec = 192;
        let cases: [(&[i64], u64, f64); 3] = [
            (&[0, 1, -1], 3, 0.6045997880780726),
            (&[0, 1, 0, 1, 0, -1, 0, -1], 8, 1.1107207345395915),
            (&[0, 1, 0, -1], 4, std::f64::consts::FRAC_PI_4),
        ];
        for (v, p, expect) in cases {
            let r = l1(&validate(v, p).unwrap(), prec).unwrap();
            let a = eval_numeric(&r.via_digamma, prec);
            let b = eval_numeric(&r.via_periodic, prec);
            assert!((a.to_f64() - expect).abs() < 1e-15, "p = {p}");
            assert!(a.abs_diff_f64(b.value()) < 1e-50 && r.oracle.value.abs_diff_f64(a.value()) < 1e-40);
        }
        assert!(matches!(l1(&validate(&[0, 1, 1], 3).unwrap(), 128), Err(Error::TrivialCharacter)));
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre_symbol(1, 7).unwrap(), 1);
        assert_eq!(legendre_symbol(3, 7).unwrap(), -1);
        assert_eq!(legendre_symbol(2, 7).unwrap(), 1);
        assert_eq!(legendre_symbol(7, 7).unwrap(), 0);
        assert_eq!(legendre_symbol(-1, 7).unwrap(), -1);
        for bad in [2, 9, 1, -7] {
            assert!(matches!(legendre_symbol(1, bad), Err(Error::NotOddPrime(_))));
        }
    }

    #[test]
    fn dirichlet_formula() {
        let prec = 192;
        let (l, r) = legendre_l1_check(7, prec).unwrap();
        let expect = numeric::pi(prec) / Float::with_val(prec, 7u32).sqrt();
        assert!(l.abs_diff_f64(&expect) < 1e-40 && r.abs_diff_f64(&expect) < 1e-40);
        let (l, r) = legendre_l1_check(5, prec).unwrap();
        assert!((r.to_f64() - 0.43040894096400403).abs() < 1e-15);
        assert!(l.abs_diff_f64(r.value()) < 1e-40);
        for bad in [1, 4, 9, 45] {
            assert!(matches!(legendre_l1_check(bad, prec), Err(Error::BadModulus(_))));
        }
    }

    #[test]
    fn enumeration_counts() {
        // Real characters form the 2-torsion of the unit group.
        let counts: Vec<usize> = (2..=12).map(|p| real_characters(p).len()).collect();
        assert_eq!(counts, vec![1, 2, 2, 2, 2, 2, 4, 2, 2, 2, 4]);
    }
}
