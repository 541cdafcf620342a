//! Argument parsing and number formatting shared by the subcommands.

use abelsum_core::{Complex, Error, NumericValue, OracleResult, Result};
use rug::Float;
use serde_json::{json, Value};

/// Significant digits in text output.
pub const SIG_DIGITS: usize = 30;

/// Positional notation is used for at most this many zeros after the point
/// and at most [`SIG_DIGITS`] digits before it; scientific notation beyond.
const MAX_LEADING_ZEROS: i64 = 8;

/// `x` to [`SIG_DIGITS`] significant digits, positional where practical.
pub fn approx(x: &Float) -> String {
    positional(x, SIG_DIGITS)
}

pub fn positional(x: &Float, digits: usize) -> String {
    if x.is_zero() {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let s = x.to_string_radix(10, Some(digits));
    let (sign, body) = match s.strip_prefix('-') {
        Some(b) => ("-", b),
        None => ("", s.as_str()),
    };
    let (mant, exp) = match body.split_once('e') {
        Some((m, e)) => match e.parse::<i64>() {
            Ok(e) => (m, e),
            Err(_) => return s,
        },
        None => (body, 0),
    };
    let (int_part, frac_part) = mant.split_once('.').unwrap_or((mant, ""));
    let all: String = format!("{int_part}{frac_part}");
    // Decimal exponent of the leading digit.
    let lead = exp + int_part.len() as i64 - 1;
    if lead < -MAX_LEADING_ZEROS || lead >= SIG_DIGITS as i64 {
        return s;
    }
    let out = if lead >= 0 {
        let split = (lead + 1) as usize;
        let (i, f) = all.split_at(split.min(all.len()));
        let mut i = i.to_string();
        i.extend(std::iter::repeat('0').take(split.saturating_sub(all.len())));
        if f.is_empty() {
            i
        } else {
            format!("{i}.{f}")
        }
    } else {
        format!("0.{}{all}", "0".repeat((-lead - 1) as usize))
    };
    format!("{sign}{out}")
}

pub fn approx_complex(z: &Complex) -> String {
    if z.im.is_zero() {
        return approx(&z.re);
    }
    let sign = if z.im.is_sign_negative() { "-" } else { "+" };
    let im = Float::with_val(z.im.prec(), z.im.abs_ref());
    format!("{} {sign} {}i", approx(&z.re), approx(&im))
}

pub fn oracle_line(r: &OracleResult) -> String {
    let mut s = format!(
        "oracle {} (error {:.1e}, {} terms",
        approx(r.value.value()),
        r.error_estimate.to_f64(),
        r.terms_used
    );
    if !r.converged {
        s.push_str(", not converged");
    }
    s.push(')');
    s
}

pub fn num(x: &Float, prec: u32) -> Value {
    json!(NumericValue::new(x, prec))
}

pub fn complex_json(z: &Complex, prec: u32) -> Value {
    json!({ "re": num(&z.re, prec), "im": num(&z.im, prec) })
}

/// A real argument: `q/p`, an integer, or a decimal.
pub fn parse_real(s: &str, prec: u32) -> Result<Float> {
    let s = s.trim();
    if let Ok(r) = s.parse::<abelsum_core::Rational>() {
        return Ok(r.to_float(prec));
    }
    let v = Float::parse(s).map_err(|e| Error::Parse(format!("{s:?}: {e}")))?;
    let x = Float::with_val(prec, v);
    if !x.is_finite() {
        return Err(Error::Parse(format!("{s:?} is not a finite number")));
    }
    Ok(x)
}

/// A complex argument written `a`, `bi`, `a+bi` or `a-bi`, with `i` alone
/// standing for a unit coefficient.
pub fn parse_complex(s: &str, prec: u32) -> Result<Complex> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let Some(body) = t.strip_suffix('i') else {
        return Ok(Complex::real(parse_real(&t, prec)?));
    };
    // The split point is the last sign not attached to an exponent.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("", body),
    };
    let im = match im {
        "" | "+" => Float::with_val(prec, 1u32),
        "-" => Float::with_val(prec, -1i32),
        other => parse_real(other.strip_prefix('+').unwrap_or(other), prec)?,
    };
    let re = if re.is_empty() { Float::new(prec) } else { parse_real(re, prec)? };
    Ok(Complex::new(re, im))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positional_formatting() {
        let p = 128;
        assert_eq!(positional(&Float::with_val(p, 0.1875), 6), "0.187500");
        assert_eq!(positional(&Float::with_val(p, -1234.5), 6), "-1234.50");
        assert_eq!(positional(&Float::with_val(p, 5e-3), 3), "0.00500");
        assert_eq!(positional(&Float::with_val(p, 120), 2), "120");
        assert!(positional(&Float::with_val(p, 1e-20), 3).contains('e'));
        assert_eq!(positional(&Float::new(p), 5), "0");
    }

    #[test]
    fn complex_parsing() {
        let p = 64;
        let cases = [("2", 2.0, 0.0), ("1.5+2i", 1.5, 2.0), ("-1/2-i", -0.5, -1.0), ("3i", 0.0, 3.0), ("1e-2-2e+1i", 0.01, -20.0)];
        for (s, re, im) in cases {
            let z = parse_complex(s, p).unwrap();
            assert_eq!((z.re.to_f64(), z.im.to_f64()), (re, im), "{s}");
        }
        assert!(parse_complex("1+xi", p).is_err());
    }
}
