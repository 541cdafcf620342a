//! One function per subcommand. Each returns text lines, a JSON object and
//! the list of independent paths that failed to agree.

use abelsum_core::characters::DirichletCharacter;
use abelsum_core::classics::{
    alt_fourier_oracle, alt_fourier_sums, binomial_fourier_check, fourier_log_oracle, fourier_log_sums, hyp2f1_series,
    li2_identity_check, li2_integral, li2_numeric, rearranged_accelerated, rearranged_partial, rearranged_sum,
    FourierSums, RearrangementSpec,
};
use abelsum_core::verify::{cross_tolerance, run_suite};
use abelsum_core::{
    alt_path_sum, closed_form_sum, digamma_integral_numeric, digamma_series_numeric, digamma_shift, eval_numeric,
    euler_gamma_estimate, i_numeric, i_value, i_via_digamma, jacobi_symbol, l1, legendre_l1_check, real_characters,
    series_numeric, series_pq, validate_from_one, ClosedForm, Complex, Error, OracleResult, PeriodicCoefficients,
    Rational, Result, SymbolicValue, GUARD_BITS,
};
use rug::float::Constant;
use rug::Float;
use serde_json::{json, Map, Value};

use crate::format::{approx, approx_complex, complex_json, num, oracle_line, parse_complex, parse_real};

/// Term budget for accelerated oracles driven from the command line.
const ORACLE_MAX_TERMS: u64 = 1 << 20;

/// An oracle agrees when it lands within this many of its own error
/// estimates, or within the cross-path tolerance, whichever is looser.
const ORACLE_ERROR_FACTOR: f64 = 8.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Both,
    Closed,
    Numeric,
}

impl Mode {
    fn closed(self) -> bool {
        self != Mode::Numeric
    }

    fn numeric(self) -> bool {
        self != Mode::Closed
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Ctx {
    pub prec: u32,
    pub mode: Mode,
}

impl Ctx {
    fn work(&self) -> u32 {
        self.prec + GUARD_BITS
    }
}

pub struct Output {
    pub text: Vec<String>,
    pub json: Map<String, Value>,
    pub mismatches: Vec<String>,
    prec: u32,
}

impl Output {
    fn new(ctx: &Ctx, command: &str, input: Value) -> Self {
        let mut json = Map::new();
        json.insert("command".into(), json!(command));
        json.insert("input".into(), input);
        json.insert("precision_bits".into(), json!(ctx.prec));
        Output { text: Vec::new(), json, mismatches: Vec::new(), prec: ctx.prec }
    }

    fn line(&mut self, s: impl Into<String>) {
        self.text.push(s.into());
    }

    fn set(&mut self, key: &str, v: Value) {
        self.json.insert(key.into(), v);
    }

    /// Records a closed form under `key` and prints `label expr ≈ value`.
    fn closed(&mut self, key: Option<&str>, label: &str, cf: &ClosedForm) -> Float {
        let v = eval_numeric(cf, self.prec).into_value();
        self.line(format!("{label}{cf} ≈ {}", approx(&v)));
        let fields = json!({ "closed_form": cf, "representation": cf.representation(), "value": num(&v, self.prec) });
        match key {
            Some(k) => self.set(k, fields),
            None => {
                if let Value::Object(m) = fields {
                    self.json.extend(m);
                }
            }
        }
        v
    }

    fn closed_symbolic(&mut self, key: Option<&str>, label: &str, v: &SymbolicValue) -> Float {
        self.closed(key, label, &ClosedForm::from(v.clone()))
    }

    fn oracle(&mut self, key: &str, indent: &str, r: &OracleResult) {
        self.line(format!("{indent}{}", oracle_line(r)));
        self.set(key, json!(r));
    }

    /// Notes a disagreement between two paths, allowing `budget` on top of
    /// the cross-path tolerance.
    fn compare(&mut self, what: &str, a: &Float, b: &Float, budget: f64) {
        let tol = cross_tolerance(self.prec).max(budget);
        let diff = Float::with_val(self.prec + GUARD_BITS, a - b).abs().to_f64();
        if !(diff <= tol) {
            self.mismatches.push(format!(
                "{what}: {} vs {} (difference {diff:.1e}, tolerance {tol:.1e})",
                approx(a),
                approx(b)
            ));
        }
    }

    fn compare_oracle(&mut self, what: &str, exact: &Float, r: &OracleResult) {
        let budget = ORACLE_ERROR_FACTOR * r.error_estimate.to_f64();
        self.compare(what, exact, r.value.value(), budget);
    }

    pub fn finish(mut self) -> Self {
        let ok = self.mismatches.is_empty();
        self.set("verified", json!(ok));
        if !ok {
            self.set("mismatches", json!(self.mismatches));
        }
        self
    }
}

fn no_closed_form(ctx: &Ctx, what: &str) -> Result<()> {
    if ctx.mode == Mode::Closed {
        return Err(Error::Domain(format!("{what} has no closed form in the atom basis")));
    }
    Ok(())
}

pub fn digamma(ctx: &Ctx, z: &str) -> Result<Output> {
    let mut out = Output::new(ctx, "digamma", json!(z));
    let (arg, positive) = match z.trim().parse::<Rational>() {
        Ok(r) => {
            if r.signum() <= 0 && r.is_integer() {
                return Err(Error::Pole(format!("ψ has a pole at {r}")));
            }
            if r.signum() > 0 && ctx.mode.closed() {
                let cf = digamma_shift(&r)?;
                let v = out.closed(None, "", &cf);
                if ctx.mode.numeric() {
                    let s = digamma_series_numeric(&Complex::real(r.to_float(ctx.work())), ctx.prec)?;
                    out.compare("closed form vs series", &v, &s.re, 0.0);
                }
            } else if r.signum() < 0 && ctx.mode == Mode::Closed {
                return Err(Error::Domain(format!("closed forms for ψ need a positive argument, got {r}")));
            }
            (Complex::real(r.to_float(ctx.work())), r.signum() > 0)
        }
        Err(_) => {
            no_closed_form(ctx, "ψ at a non-rational point")?;
            let c = parse_complex(z, ctx.work())?;
            let positive = c.re > 0;
            (c, positive)
        }
    };
    if ctx.mode.numeric() {
        let s = digamma_series_numeric(&arg, ctx.prec)?;
        out.line(format!("series   {}", approx_complex(&s)));
        out.set("series", complex_json(&s, ctx.prec));
        // The integral representation needs Re z > 0.
        if positive {
            let i = digamma_integral_numeric(&arg, ctx.prec)?;
            out.line(format!("integral {}", approx_complex(&i)));
            out.set("integral", complex_json(&i, ctx.prec));
            out.compare("series vs integral (re)", &s.re, &i.re, 0.0);
            out.compare("series vs integral (im)", &s.im, &i.im, 0.0);
        }
    }
    Ok(out.finish())
}

pub fn psum(ctx: &Ctx, coeffs: &str, alt_path: bool) -> Result<Output> {
    let c: PeriodicCoefficients = coeffs.parse()?;
    let mut out = Output::new(ctx, "psum", json!(c.coeffs().iter().map(|r| r.to_string()).collect::<Vec<_>>()));
    let exact = if ctx.mode.closed() { Some(out.closed(None, "", &closed_form_sum(&c)?)) } else { None };
    if ctx.mode.numeric() {
        let r = series_numeric(&c, ctx.prec)?;
        out.oracle("oracle", "", &r);
        if let Some(v) = &exact {
            out.compare_oracle("closed form vs oracle", v, &r);
        }
    }
    if alt_path {
        let a = alt_path_sum(&c, ctx.prec)?.into_value();
        out.line(format!("root-of-unity path {}", approx(&a)));
        out.set("alt_path", num(&a, ctx.prec));
        if let Some(v) = &exact {
            out.compare("closed form vs root-of-unity path", v, &a, 0.0);
        }
    }
    Ok(out.finish())
}

pub fn alt_pq(ctx: &Ctx, p: u64, q: u64) -> Result<Output> {
    let mut out = Output::new(ctx, "alt", json!({ "p": p, "q": q }));
    let (cf, r) = series_pq(p, q, ctx.prec)?;
    let exact = if ctx.mode.closed() { Some(out.closed(None, "", &cf)) } else { None };
    if ctx.mode.numeric() {
        out.oracle("oracle", "", &r);
        if let Some(v) = &exact {
            out.compare_oracle("closed form vs oracle", v, &r);
        }
    }
    Ok(out.finish())
}

/// `I(λ) = ∫₀¹ dt/(1 + t^λ)`, exact for rational `λ ≥ 0`.
pub fn alt_lambda(ctx: &Ctx, lambda: &str) -> Result<Output> {
    let mut out = Output::new(ctx, "alt", json!({ "lambda": lambda }));
    let rational = lambda.trim().parse::<Rational>().ok();
    let lam = match &rational {
        Some(r) => r.to_float(ctx.work()),
        None => parse_real(lambda, ctx.work())?,
    };
    let mut exact = None;
    if ctx.mode.closed() {
        match &rational {
            Some(r) if r.is_zero() => {
                exact = Some(out.closed(None, "", &ClosedForm::from(SymbolicValue::rational(Rational::new(1, 2)))));
            }
            Some(r) if r.signum() > 0 => {
                let (p, q) = r
                    .to_i64_pair()
                    .ok_or_else(|| Error::ArgOutOfRange(format!("λ = {r} does not fit in 64 bits")))?;
                // I(p/q) = q·Σ (−1)ⁿ/(pn + q)
                let (cf, _) = series_pq(p as u64, q as u64, ctx.prec)?;
                exact = Some(out.closed(None, "", &cf.scale(&Rational::from_int(q))));
            }
            _ if ctx.mode == Mode::Closed => {
                return Err(Error::Domain(format!("closed forms for I(λ) need a rational λ >= 0, got {lambda}")));
            }
            _ => {}
        }
    }
    if ctx.mode.numeric() {
        if lam >= 0 {
            let r = i_numeric(&lam, ctx.prec)?;
            out.oracle("oracle", "", &r);
            if let Some(v) = &exact {
                out.compare_oracle("closed form vs quadrature", v, &r);
            }
            if !lam.is_zero() {
                let d = i_via_digamma(&lam, ctx.prec)?.into_value();
                out.line(format!("digamma path {}", approx(&d)));
                out.set("digamma_path", num(&d, ctx.prec));
                out.compare_oracle("digamma path vs quadrature", &d, &r);
            }
        } else {
            let v = i_value(&lam, ctx.prec)?.into_value();
            out.line(format!("digamma path {}", approx(&v)));
            out.set("digamma_path", num(&v, ctx.prec));
        }
    }
    Ok(out.finish())
}

fn character_entry(ctx: &Ctx, out: &mut Output, chi: &DirichletCharacter) -> Result<Value> {
    let p = chi.modulus();
    let values: Vec<i64> = (1..=p as i64).map(|n| chi.at(n)).collect();
    let list = values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",");
    out.line(format!("χ mod {p} = ({list})"));
    let r = l1(chi, ctx.prec)?;
    let mut entry = Map::new();
    entry.insert("values".into(), json!(values));
    let mut digamma_value = None;
    if ctx.mode.closed() {
        let a = eval_numeric(&r.via_digamma, ctx.prec).into_value();
        let b = eval_numeric(&r.via_periodic, ctx.prec).into_value();
        out.line(format!("  L(1, χ) = {} ≈ {}", r.via_digamma, approx(&a)));
        out.line(format!("  periodic form {} ≈ {}", r.via_periodic, approx(&b)));
        entry.insert("via_digamma".into(), json!(r.via_digamma));
        entry.insert("via_periodic".into(), json!(r.via_periodic));
        entry.insert("value".into(), num(&a, ctx.prec));
        out.compare(&format!("χ = ({list}): digamma vs periodic form"), &a, &b, 0.0);
        digamma_value = Some(a);
    }
    if ctx.mode.numeric() {
        out.line(format!("  {}", oracle_line(&r.oracle)));
        entry.insert("oracle".into(), json!(r.oracle));
        if let Some(a) = &digamma_value {
            out.compare_oracle(&format!("χ = ({list}): closed form vs oracle"), a, &r.oracle);
        }
    }
    Ok(Value::Object(entry))
}

/// `L(1, χ)` for one character given by `χ(1), …, χ(p)`, or for every
/// non-principal real character mod `p` when no values are given.
pub fn lfun(ctx: &Ctx, modulus: u64, values: Option<&str>) -> Result<Output> {
    let mut out = Output::new(ctx, "lfun", json!({ "modulus": modulus, "values": values }));
    let chars = match values {
        Some(v) => {
            let parsed = v
                .split(',')
                .map(|s| s.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad character value {s:?}"))))
                .collect::<Result<Vec<_>>>()?;
            vec![validate_from_one(&parsed, modulus)?]
        }
        None => {
            if modulus < 2 {
                return Err(Error::ArgOutOfRange(format!("modulus must be at least 2, got {modulus}")));
            }
            real_characters(modulus).into_iter().filter(|c| !c.is_trivial()).collect()
        }
    };
    if chars.is_empty() {
        return Err(Error::Domain(format!("no non-principal real character mod {modulus}")));
    }
    let mut entries = Vec::new();
    for chi in &chars {
        entries.push(character_entry(ctx, &mut out, chi)?);
    }
    out.set("characters", Value::Array(entries));
    Ok(out.finish())
}

/// The symbol table `(n/p)` and both sides of the class-number style
/// evaluation of `Σ (n/p)/n`.
pub fn legendre(ctx: &Ctx, p: i64) -> Result<Output> {
    let mut out = Output::new(ctx, "legendre", json!(p));
    let symbols = (1..p).map(|n| jacobi_symbol(n, p)).collect::<Result<Vec<_>>>()?;
    let (lhs, rhs) = legendre_l1_check(p, ctx.prec)?;
    let table = symbols.iter().map(|s| format!("{s:+}")).collect::<Vec<_>>().join(" ");
    out.line(format!("(n/{p}) for n = 1..{}: {table}", p - 1));
    out.set("symbols", json!(symbols));
    out.line(format!("Σ (n/{p})/n ≈ {}", approx(lhs.value())));
    out.line(format!("closed side  {}", approx(rhs.value())));
    out.set("series", json!(lhs));
    out.set("closed_side", json!(rhs));
    out.compare("series vs closed side", lhs.value(), rhs.value(), 0.0);
    Ok(out.finish())
}

pub fn rearrange(ctx: &Ctx, p: u64, q: u64, partial: Option<u64>) -> Result<Output> {
    let spec = RearrangementSpec::new(p, q)?;
    let mut out = Output::new(ctx, "rearrange", json!({ "p": p, "q": q }));
    let exact = if ctx.mode.closed() { Some(out.closed_symbolic(None, "", &rearranged_sum(&spec)?)) } else { None };
    if ctx.mode.numeric() {
        let r = rearranged_accelerated(&spec, ORACLE_MAX_TERMS, ctx.prec)?;
        out.oracle("oracle", "", &r);
        if let Some(v) = &exact {
            out.compare_oracle("closed form vs oracle", v, &r);
        }
    }
    if let Some(n) = partial {
        let s = rearranged_partial(&spec, n, ctx.prec)?.into_value();
        out.line(format!("partial sum of {n} terms {}", approx(&s)));
        out.set("partial", json!({ "terms": n, "value": num(&s, ctx.prec) }));
    }
    Ok(out.finish())
}

pub fn dilog(ctx: &Ctx, x: &str, identity: bool) -> Result<Output> {
    no_closed_form(ctx, "Li₂")?;
    let mut out = Output::new(ctx, "dilog", json!(x));
    let xf = parse_real(x, ctx.work())?;
    let v = li2_numeric(&xf, ctx.prec)?.into_value();
    out.line(format!("Li₂({x}) ≈ {}", approx(&v)));
    out.set("value", num(&v, ctx.prec));
    if xf <= 1 {
        let i = li2_integral(&xf, ctx.prec)?.into_value();
        out.line(format!("integral {}", approx(&i)));
        out.set("integral", num(&i, ctx.prec));
        out.compare("series vs integral", &v, &i, 0.0);
    }
    if identity {
        let (lhs, rhs) = li2_identity_check(&xf, ctx.prec)?;
        out.line(format!("Li₂(x) + Li₂(1 - x) + ln x·ln(1 - x) ≈ {}", approx(lhs.value())));
        out.line(format!("π²/6                              ≈ {}", approx(rhs.value())));
        out.set("identity", json!({ "lhs": lhs, "rhs": rhs }));
        out.compare("reflection identity", lhs.value(), rhs.value(), 0.0);
    }
    Ok(out.finish())
}

pub fn fourier(ctx: &Ctx, theta: &str, alternating: bool, binomial: Option<&str>) -> Result<Output> {
    let t: Rational = theta.parse()?;
    let mut out = Output::new(ctx, "fourier", json!({ "theta_over_pi": t.to_string() }));
    if let Some(alpha) = binomial {
        no_closed_form(ctx, "the binomial Fourier series")?;
        let a = parse_complex(alpha, ctx.work())?;
        let th = Float::with_val(ctx.work(), Constant::Pi) * t.to_float(ctx.work());
        let (series, closed) = binomial_fourier_check(&a, &th, ctx.prec)?;
        out.line(format!("Σ C(α, n)·e^(inθ)        ≈ {}", approx_complex(&series)));
        out.line(format!("(2cos(θ/2))^α·e^(iαθ/2) ≈ {}", approx_complex(&closed)));
        out.set("series", complex_json(&series, ctx.prec));
        out.set("closed_side", complex_json(&closed, ctx.prec));
        out.compare("binomial series vs closed side (re)", &series.re, &closed.re, 0.0);
        out.compare("binomial series vs closed side (im)", &series.im, &closed.im, 0.0);
        return Ok(out.finish());
    }
    let sign = if alternating { "(-1)^(n+1)·" } else { "" };
    let mut exact: Option<(Float, Float)> = None;
    if ctx.mode.closed() {
        let FourierSums { cos_sum, sin_sum } = if alternating { alt_fourier_sums(&t)? } else { fourier_log_sums(&t)? };
        let c = out.closed_symbolic(Some("cos_sum"), &format!("Σ {sign}cos(nθ)/n = "), &cos_sum);
        let s = out.closed_symbolic(Some("sin_sum"), &format!("Σ {sign}sin(nθ)/n = "), &sin_sum);
        exact = Some((c, s));
    }
    if ctx.mode.numeric() {
        let (rc, rs) = if alternating { alt_fourier_oracle(&t, ctx.prec)? } else { fourier_log_oracle(&t, ctx.prec)? };
        out.oracle("cos_oracle", "cos ", &rc);
        out.oracle("sin_oracle", "sin ", &rs);
        if let Some((c, s)) = &exact {
            out.compare_oracle("cosine sum vs oracle", c, &rc);
            out.compare_oracle("sine sum vs oracle", s, &rs);
        }
    }
    Ok(out.finish())
}

pub fn hyp2f1(ctx: &Ctx, a: &str, b: &str, c: &str, z: &str) -> Result<Output> {
    no_closed_form(ctx, "₂F₁")?;
    let mut out = Output::new(ctx, "hyp2f1", json!({ "a": a, "b": b, "c": c, "z": z }));
    let w = ctx.work();
    let v = hyp2f1_series(&parse_complex(a, w)?, &parse_complex(b, w)?, &parse_complex(c, w)?, &parse_complex(z, w)?, ctx.prec)?;
    out.line(format!("₂F₁({a}, {b}; {c}; {z}) ≈ {}", approx_complex(&v)));
    out.set("value", complex_json(&v, ctx.prec));
    Ok(out.finish())
}

pub fn verify(ctx: &Ctx, suite: &str) -> Result<Output> {
    let report = run_suite(suite, ctx.prec)?;
    let mut out = Output::new(ctx, "verify", json!(suite));
    out.text.extend(report.to_string().lines().map(str::to_string));
    for c in report.checks.iter().filter(|c| !c.pass) {
        out.mismatches.push(format!("{}: got {}, expected {}", c.name, c.computed, c.expected));
    }
    out.set("report", json!(report));
    Ok(out.finish())
}

/// `H_N − ln N − 1/(2N)` against γ; the gap should be close to `1/(12N²)`.
pub fn gamma_est(ctx: &Ctx, n: u64) -> Result<Output> {
    no_closed_form(ctx, "the truncated harmonic estimate")?;
    let mut out = Output::new(ctx, "gamma-est", json!(n));
    let est = euler_gamma_estimate(n)?;
    let prec = est.precision_bits();
    let gamma = Float::with_val(prec, Constant::Euler);
    let gap = Float::with_val(prec, est.value() - &gamma);
    let predicted = Float::with_val(prec, 1u32) / (Float::with_val(prec, n).square() * 12u32);
    out.line(format!("H_N - ln N - 1/(2N) ≈ {}", approx(est.value())));
    out.line(format!("γ                   ≈ {}", approx(&gamma)));
    out.line(format!("difference {:.3e}, 1/(12N²) = {:.3e}", gap.to_f64(), predicted.to_f64()));
    out.set("estimate", json!(est));
    out.set("gamma", num(&gamma, prec));
    out.set("difference", num(&gap, prec));
    Ok(out.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn disagreement_is_recorded() {
        let ctx = Ctx { prec: 128, mode: Mode::Both };
        let mut out = Output::new(&ctx, "test", Value::Null);
        let one = Float::with_val(128, 1u32);
        out.compare("equal", &one, &one, 0.0);
        assert!(out.mismatches.is_empty());
        out.compare("apart", &one, &Float::with_val(128, 1.5), 0.0);
        let out = out.finish();
        assert_eq!(out.mismatches.len(), 1);
        assert_eq!(out.json["verified"], false);
    }
}
