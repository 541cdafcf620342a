//! Exact constants as rational linear combinations over a fixed atom basis.
//!
//! The basis is `1, γ, π, ln p (p prime), ln sin(πj/p), π·cot(πl/p)`. Every
//! atom stored in a [`SymbolicValue`] is in canonical form, so two values
//! built from the same constant by different routes compare equal
//! structurally whenever the normalization rules can see it. Relations the
//! rules cannot see (Gauss-sum identities between cotangents, say) only show
//! up through [`num_equal`].

use std::collections::BTreeMap;
use std::fmt;

use rug::Float;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{self, NumericValue, GUARD_BITS};
use crate::rational::Rational;

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization as `(prime, exponent)` pairs in increasing order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        let mut e = 0;
        while n % d == 0 {
            n /= d;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// A basis constant.
///
/// Values of this type may be "raw" (any admissible arguments); only the
/// canonical forms produced by [`normalize_atom`] are stored inside a
/// [`SymbolicValue`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "atom")]
pub enum Atom {
    Unit,
    EulerGamma,
    Pi,
    LnPrime { p: u64 },
    /// `ln sin(πj/p)`.
    LnSin { j: u64, p: u64 },
    /// `π·cot(πl/p)`.
    PiCot { l: u64, p: u64 },
}

impl Atom {
    /// Whether the atom already satisfies the canonical-form invariants.
    pub fn is_canonical(&self) -> bool {
        match *self {
            Atom::Unit | Atom::EulerGamma | Atom::Pi => true,
            Atom::LnPrime { p } => is_prime(p),
            Atom::LnSin { j, p } => {
                j > 0 && 2 * j <= p && gcd(j, p) == 1 && !matches!((j, p), (1, 2) | (1, 3) | (1, 4) | (1, 6))
            }
            Atom::PiCot { l, p } => l > 0 && 2 * l < p && gcd(l, p) == 1 && (l, p) != (1, 4),
        }
    }

    /// Numeric value of the atom (canonical or raw) at `prec` bits.
    pub fn eval(&self, prec: u32) -> Float {
        let work = prec + GUARD_BITS;
        let v = match *self {
            Atom::Unit => Float::with_val(work, 1u32),
            Atom::EulerGamma => numeric::euler_gamma(work),
            Atom::Pi => numeric::pi(work),
            Atom::LnPrime { p } => Float::with_val(work, p).ln(),
            Atom::LnSin { j, p } => (numeric::pi(work) * j / p).sin().ln(),
            Atom::PiCot { l, p } => {
                let pi = numeric::pi(work);
                let c = (Float::with_val(work, &pi * l) / p).cot();
                pi * c
            }
        };
        Float::with_val(prec, v)
    }

    fn describe(&self) -> String {
        fn angle(k: u64, p: u64) -> String {
            match k {
                1 => format!("π/{p}"),
                _ => format!("{k}π/{p}"),
            }
        }
        match *self {
            Atom::Unit => "1".into(),
            Atom::EulerGamma => "γ".into(),
            Atom::Pi => "π".into(),
            Atom::LnPrime { p } => format!("ln({p})"),
            Atom::LnSin { j, p } => format!("ln(sin({}))", angle(j, p)),
            Atom::PiCot { l, p } => format!("π·cot({})", angle(l, p)),
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

/// `ln n` in the prime-log basis.
pub fn ln_integer(n: u64) -> Result<SymbolicValue> {
    if n == 0 {
        return Err(Error::Domain("ln(0) is undefined".into()));
    }
    let mut v = SymbolicValue::zero();
    for (p, e) in factorize(n) {
        v.add_term(Atom::LnPrime { p }, &Rational::from_int(e as i64));
    }
    Ok(v)
}

/// Rewrites a raw atom into an equivalent combination of canonical atoms.
///
/// The rewrite set is deliberately small: angle reduction into `(0, π/2]`,
/// the closed values of `sin` at `π/2, π/3, π/4, π/6`, and of `cot` at `π/2`
/// and `π/4`. Anything else stays atomic.
pub fn normalize_atom(atom: &Atom) -> Result<SymbolicValue> {
    match *atom {
        Atom::Unit | Atom::EulerGamma | Atom::Pi => Ok(SymbolicValue::from_canonical(*atom)),
        Atom::LnPrime { p } => ln_integer(p),
        Atom::LnSin { j, p } => {
            if p == 0 || j == 0 || j >= p {
                return Err(Error::Domain(format!("ln sin(π·{j}/{p}) requires 0 < j < p")));
            }
            let g = gcd(j, p);
            let (mut j, p) = (j / g, p / g);
            if 2 * j > p {
                j = p - j;
            }
            let half = Rational::new(1, 2);
            Ok(match (j, p) {
                (1, 2) => SymbolicValue::zero(),
                (1, 6) => SymbolicValue::from_canonical(Atom::LnPrime { p: 2 }).scale(&Rational::from_int(-1)),
                (1, 4) => SymbolicValue::from_canonical(Atom::LnPrime { p: 2 }).scale(&-&half),
                (1, 3) => {
                    let mut v = SymbolicValue::zero();
                    v.add_term(Atom::LnPrime { p: 3 }, &half);
                    v.add_term(Atom::LnPrime { p: 2 }, &Rational::from_int(-1));
                    v
                }
                _ => SymbolicValue::from_canonical(Atom::LnSin { j, p }),
            })
        }
        Atom::PiCot { l, p } => {
            if p == 0 || l == 0 || l >= p {
                return Err(Error::Domain(format!("cot(π·{l}/{p}) is a pole or out of range; need 0 < l < p")));
            }
            let g = gcd(l, p);
            let (mut l, p) = (l / g, p / g);
            let mut sign = 1;
            if 2 * l > p {
                l = p - l;
                sign = -1;
            }
            let s = Rational::from_int(sign);
            Ok(match (l, p) {
                (1, 2) => SymbolicValue::zero(),
                (1, 4) => SymbolicValue::from_canonical(Atom::Pi).scale(&s),
                _ => SymbolicValue::from_canonical(Atom::PiCot { l, p }).scale(&s),
            })
        }
    }
}

/// `ln sin(π·j/p)`, normalized.
pub fn ln_sin(j: u64, p: u64) -> Result<SymbolicValue> {
    normalize_atom(&Atom::LnSin { j, p })
}

/// `π·cot(π·l/p)`, normalized.
pub fn pi_cot(l: u64, p: u64) -> Result<SymbolicValue> {
    normalize_atom(&Atom::PiCot { l, p })
}

/// A finite rational linear combination of canonical atoms.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SymbolicValue {
    terms: BTreeMap<Atom, Rational>,
}

impl SymbolicValue {
    pub fn zero() -> Self {
        SymbolicValue { terms: BTreeMap::new() }
    }

    pub fn rational(c: Rational) -> Self {
        let mut v = Self::zero();
        v.add_term(Atom::Unit, &c);
        v
    }

    pub fn atom(atom: Atom) -> Result<Self> {
        normalize_atom(&atom)
    }

    pub fn euler_gamma() -> Self {
        Self::from_canonical(Atom::EulerGamma)
    }

    pub fn pi() -> Self {
        Self::from_canonical(Atom::Pi)
    }

    fn from_canonical(atom: Atom) -> Self {
        debug_assert!(atom.is_canonical(), "{atom:?} is not canonical");
        let mut terms = BTreeMap::new();
        terms.insert(atom, Rational::one());
        SymbolicValue { terms }
    }

    fn add_term(&mut self, atom: Atom, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(atom).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&atom);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Atom, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, atom: &Atom) -> Rational {
        self.terms.get(atom).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add(&self, other: &SymbolicValue) -> SymbolicValue {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &SymbolicValue) {
        for (a, c) in &other.terms {
            self.add_term(*a, c);
        }
    }

    /// `self += c·other`.
    pub fn add_scaled(&mut self, other: &SymbolicValue, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (a, k) in &other.terms {
            self.add_term(*a, &(k * c));
        }
    }

    pub fn sub(&self, other: &SymbolicValue) -> SymbolicValue {
        let mut out = self.clone();
        out.add_scaled(other, &Rational::from_int(-1));
        out
    }

    pub fn scale(&self, c: &Rational) -> SymbolicValue {
        if c.is_zero() {
            return Self::zero();
        }
        SymbolicValue { terms: self.terms.iter().map(|(a, k)| (*a, k * c)).collect() }
    }

    pub fn neg(&self) -> SymbolicValue {
        self.scale(&Rational::from_int(-1))
    }

    /// The value as a bare rational, if it has no transcendental atoms.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Atom::Unit).cloned(),
            _ => None,
        }
    }

    pub(crate) fn eval_float(&self, prec: u32) -> Float {
        let work = prec + GUARD_BITS + 8;
        let mut acc = Float::new(work);
        for (a, c) in &self.terms {
            acc += a.eval(work) * c.to_float(work);
        }
        Float::with_val(prec, acc)
    }
}

impl fmt::Debug for SymbolicValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymbolicValue({self})")
    }
}

fn write_term(out: &mut String, first: bool, coeff: &Rational, body: Option<&str>) {
    let neg = coeff.signum() < 0;
    let mag = coeff.abs();
    if first {
        if neg {
            out.push('-');
        }
    } else {
        out.push_str(if neg { " - " } else { " + " });
    }
    let mag_str = if mag.is_integer() { mag.numer().to_string() } else { mag.to_string() };
    match body {
        None => out.push_str(&mag_str),
        Some(b) if mag == Rational::one() => out.push_str(b),
        Some(b) => {
            out.push_str(&mag_str);
            out.push('·');
            out.push_str(b);
        }
    }
}

impl fmt::Display for SymbolicValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut out = String::new();
        // Print the transcendental atoms first and the rational part last.
        let ordered = self
            .terms
            .iter()
            .filter(|(a, _)| **a != Atom::Unit)
            .chain(self.terms.iter().filter(|(a, _)| **a == Atom::Unit));
        for (i, (a, c)) in ordered.enumerate() {
            let body = (*a != Atom::Unit).then(|| a.to_string());
            write_term(&mut out, i == 0, c, body.as_deref());
        }
        f.write_str(&out)
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    #[serde(flatten)]
    atom: Atom,
    coeff: Rational,
}

#[derive(Serialize, Deserialize)]
struct SymbolicRepr {
    terms: Vec<TermRepr>,
}

impl Serialize for SymbolicValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let repr = SymbolicRepr {
            terms: self.terms.iter().map(|(a, c)| TermRepr { atom: *a, coeff: c.clone() }).collect(),
        };
        repr.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SymbolicValue {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = SymbolicRepr::deserialize(d)?;
        let mut v = SymbolicValue::zero();
        for t in repr.terms {
            let atom = normalize_atom(&t.atom).map_err(serde::de::Error::custom)?;
            v.add_scaled(&atom, &t.coeff);
        }
        Ok(v)
    }
}

/// `cos(2π·turns)` for a rational `turns`, reduced to a canonical angle.
///
/// Returns `Ok(value)` when the cosine is rational, otherwise
/// `Err((sign, t))` with `cos(2π·turns) = sign·cos(2π·t)` and `t ∈ (0, 1/4)`.
pub fn cos_turns(turns: &Rational) -> std::result::Result<Rational, (i64, Rational)> {
    let mut t = turns.fract_floor();
    let half = Rational::new(1, 2);
    if t > half {
        t = Rational::one() - &t;
    }
    // now t in [0, 1/2]
    let quarter = Rational::new(1, 4);
    let mut sign = 1;
    if t > quarter {
        t = &half - &t;
        sign = -1;
    }
    // t in [0, 1/4]
    let s = Rational::from_int(sign);
    if t.is_zero() {
        Ok(s)
    } else if t == quarter {
        Ok(Rational::zero())
    } else if t == Rational::new(1, 6) {
        Ok(&s * &half)
    } else {
        Err((sign, t))
    }
}

/// An exact result that may carry terms outside the rational atom algebra.
///
/// `exact` is a [`SymbolicValue`]. `trig` holds products
/// `coeff·cos(2π·t)·atom` whose cosine factor is irrational; they are kept as
/// exact descriptions and only ever evaluated numerically. A value with an
/// empty `trig` part is fully symbolic.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct ClosedForm {
    exact: SymbolicValue,
    trig: BTreeMap<(Rational, Atom), Rational>,
}

impl ClosedForm {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn exact(&self) -> &SymbolicValue {
        &self.exact
    }

    pub fn is_symbolic(&self) -> bool {
        self.trig.is_empty()
    }

    pub fn representation(&self) -> &'static str {
        if self.is_symbolic() {
            "symbolic"
        } else {
            "hybrid"
        }
    }

    /// The fully symbolic value, if there is no trigonometric remainder.
    pub fn as_symbolic(&self) -> Option<&SymbolicValue> {
        self.is_symbolic().then_some(&self.exact)
    }

    pub fn trig_terms(&self) -> impl Iterator<Item = (&Rational, &Atom, &Rational)> {
        self.trig.iter().map(|((t, a), c)| (c, a, t))
    }

    pub fn add_symbolic(&mut self, v: &SymbolicValue, c: &Rational) {
        self.exact.add_scaled(v, c);
    }

    /// `self += c·cos(2π·turns)·v`, folding rational cosines into the exact part.
    pub fn add_cos_times(&mut self, c: &Rational, turns: &Rational, v: &SymbolicValue) {
        if c.is_zero() || v.is_zero() {
            return;
        }
        match cos_turns(turns) {
            Ok(k) => self.exact.add_scaled(v, &(c * &k)),
            Err((sign, t)) => {
                let s = c * &Rational::from_int(sign);
                for (a, k) in v.terms() {
                    let key = (t.clone(), *a);
                    let entry = self.trig.entry(key.clone()).or_insert_with(Rational::zero);
                    *entry += &(&s * k);
                    if entry.is_zero() {
                        self.trig.remove(&key);
                    }
                }
            }
        }
    }

    pub fn add(&self, other: &ClosedForm) -> ClosedForm {
        let mut out = self.clone();
        out.add_assign_scaled(other, &Rational::one());
        out
    }

    pub fn add_assign_scaled(&mut self, other: &ClosedForm, c: &Rational) {
        self.exact.add_scaled(&other.exact, c);
        for ((t, a), k) in &other.trig {
            let key = (t.clone(), *a);
            let entry = self.trig.entry(key.clone()).or_insert_with(Rational::zero);
            *entry += &(k * c);
            if entry.is_zero() {
                self.trig.remove(&key);
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> ClosedForm {
        let mut out = ClosedForm::zero();
        out.add_assign_scaled(self, c);
        out
    }

    pub(crate) fn eval_float(&self, prec: u32) -> Float {
        let work = prec + GUARD_BITS + 8;
        let mut acc = self.exact.eval_float(work);
        let two_pi = numeric::pi(work) * 2u32;
        for ((t, a), c) in &self.trig {
            let cos = Float::with_val(work, &two_pi * t.to_float(work)).cos();
            acc += cos * a.eval(work) * c.to_float(work);
        }
        Float::with_val(prec, acc)
    }
}

impl From<SymbolicValue> for ClosedForm {
    fn from(exact: SymbolicValue) -> Self {
        ClosedForm { exact, trig: BTreeMap::new() }
    }
}

impl fmt::Debug for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ClosedForm({self})")
    }
}

impl fmt::Display for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = if self.exact.is_zero() && !self.trig.is_empty() {
            String::new()
        } else {
            self.exact.to_string()
        };
        for ((t, a), c) in &self.trig {
            let body = format!("cos(2π·{})·{}", short_rational(t), a);
            write_term(&mut out, false, c, Some(&body));
        }
        if out.starts_with(" + ") {
            out.drain(..3);
        } else if out.starts_with(" - ") {
            out.replace_range(..3, "-");
        }
        f.write_str(&out)
    }
}

fn short_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        r.to_string()
    }
}

#[derive(Serialize, Deserialize)]
struct TrigRepr {
    coeff: Rational,
    cos_turns: Rational,
    #[serde(flatten)]
    atom: Atom,
}

#[derive(Serialize, Deserialize)]
struct ClosedFormRepr {
    representation: String,
    terms: Vec<TermRepr>,
    trig: Vec<TrigRepr>,
}

impl Serialize for ClosedForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ClosedFormRepr {
            representation: self.representation().to_string(),
            terms: self.exact.terms.iter().map(|(a, c)| TermRepr { atom: *a, coeff: c.clone() }).collect(),
            trig: self
                .trig
                .iter()
                .map(|((t, a), c)| TrigRepr { coeff: c.clone(), cos_turns: t.clone(), atom: *a })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ClosedForm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = ClosedFormRepr::deserialize(d)?;
        let mut out = ClosedForm::zero();
        for t in repr.terms {
            let v = normalize_atom(&t.atom).map_err(serde::de::Error::custom)?;
            out.exact.add_scaled(&v, &t.coeff);
        }
        for t in repr.trig {
            let v = normalize_atom(&t.atom).map_err(serde::de::Error::custom)?;
            out.add_cos_times(&t.coeff, &t.cos_turns, &v);
        }
        Ok(out)
    }
}

/// Anything that can be evaluated to a real number at a requested precision.
pub trait Evaluate {
    fn eval_at(&self, prec: u32) -> Float;
}

impl Evaluate for SymbolicValue {
    fn eval_at(&self, prec: u32) -> Float {
        self.eval_float(prec)
    }
}

impl Evaluate for ClosedForm {
    fn eval_at(&self, prec: u32) -> Float {
        self.eval_float(prec)
    }
}

impl Evaluate for NumericValue {
    fn eval_at(&self, prec: u32) -> Float {
        Float::with_val(prec, self.value())
    }
}

impl Evaluate for Float {
    fn eval_at(&self, prec: u32) -> Float {
        Float::with_val(prec, self)
    }
}

/// Evaluates every atom to `precision_bits` and sums.
///
/// Each atom is computed with [`GUARD_BITS`] extra bits, so the documented
/// error bound of 8 ulp per atom holds with a wide margin.
pub fn eval_numeric<E: Evaluate + ?Sized>(v: &E, precision_bits: u32) -> NumericValue {
    NumericValue::new(&v.eval_at(precision_bits), precision_bits)
}

/// Semantic equality: `|a - b| < 2^-(prec-16)`, both sides evaluated at
/// twice the precision. This is a numerical test, not a decision procedure.
pub fn num_equal<A: Evaluate + ?Sized, B: Evaluate + ?Sized>(a: &A, b: &B, precision_bits: u32) -> bool {
    let work = 2 * precision_bits;
    let diff = Float::with_val(work, a.eval_at(work) - b.eval_at(work)).abs();
    diff < numeric::pow2_neg(precision_bits - 16, work)
}
