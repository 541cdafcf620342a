//! `abelsum`: closed forms for Abel-summable series, checked against
//! independent numerical oracles.

mod commands;
mod format;

use std::process::ExitCode;

use abelsum_core::Error;
use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use commands::{Ctx, Mode, Output};

#[derive(Debug, Parser)]
#[command(name = "abelsum", version, about = "Exact closed forms for Abel-summable series, verified numerically")]
struct Cli {
    /// Working precision in bits.
    #[arg(long, global = true, env = "ABELSUM_PRECISION", default_value_t = abelsum_core::DEFAULT_PRECISION,
          value_parser = clap::value_parser!(u32).range(64..=4096))]
    precision: u32,

    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Only the numerical oracles.
    #[arg(long, global = true, conflicts_with = "closed")]
    numeric: bool,

    /// Only the closed form.
    #[arg(long, global = true)]
    closed: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// ψ(z) for a rational Q/P (closed form) or a real or complex z (numeric).
    Digamma {
        #[arg(allow_hyphen_values = true)]
        z: String,
    },
    /// Σ aₙ/(n+1) for periodic coefficients summing to zero over a period.
    Psum {
        /// One period of coefficients, e.g. 1,-1,0.
        #[arg(long, allow_hyphen_values = true)]
        coeffs: String,
        /// Also evaluate through the roots-of-unity integral.
        #[arg(long)]
        alt_path: bool,
    },
    /// Σ (−1)ⁿ/(pn + q), or I(λ) = ∫₀¹ dt/(1 + t^λ) with --lambda.
    Alt {
        #[arg(required_unless_present = "lambda", requires = "q")]
        p: Option<u64>,
        q: Option<u64>,
        #[arg(long, conflicts_with = "p", allow_hyphen_values = true)]
        lambda: Option<String>,
    },
    /// L(1, χ) for a real Dirichlet character.
    Lfun {
        #[arg(long)]
        modulus: u64,
        /// χ(1), …, χ(P); every non-principal real character when omitted.
        #[arg(long, allow_hyphen_values = true)]
        values: Option<String>,
    },
    /// Symbols (n/P) and the evaluation of Σ (n/P)/n.
    Legendre { p: i64 },
    /// The rearranged alternating harmonic series, P positive terms per Q negative.
    Rearrange {
        p: u64,
        q: u64,
        /// Also print the partial sum of N terms.
        #[arg(long)]
        partial: Option<u64>,
    },
    /// Li₂(x) on [−1, 1].
    Dilog {
        #[arg(allow_hyphen_values = true)]
        x: String,
        /// Also check Li₂(x) + Li₂(1 − x) + ln x·ln(1 − x) = π²/6.
        #[arg(long)]
        identity: bool,
    },
    /// Σ cos(nθ)/n and Σ sin(nθ)/n with θ = π·THETA, THETA rational.
    Fourier {
        #[arg(allow_hyphen_values = true)]
        theta: String,
        /// The alternating series Σ (−1)^(n+1)·cos(nθ)/n and its sine partner.
        #[arg(long, conflicts_with = "binomial")]
        alternating: bool,
        /// Check Σ C(α, n)·e^(inθ) = (2cos(θ/2))^α·e^(iαθ/2) for this α.
        #[arg(long, allow_hyphen_values = true)]
        binomial: Option<String>,
    },
    /// ₂F₁(a, b; c; z) for |z| < 1; arguments may be complex, e.g. 1+2i.
    Hyp2f1 {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        #[arg(allow_hyphen_values = true)]
        c: String,
        #[arg(allow_hyphen_values = true)]
        z: String,
    },
    /// Run a verification suite and print a pass/fail table.
    Verify {
        #[arg(long, default_value = "all", value_parser = clap::builder::PossibleValuesParser::new(abelsum_core::verify::SUITES))]
        suite: String,
    },
    /// H_N − ln N − 1/(2N) as an estimate of γ.
    GammaEst { n: u64 },
}

const EXIT_DOMAIN: u8 = 1;
const EXIT_VERIFY: u8 = 2;
const EXIT_PARSE: u8 = 3;

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) => EXIT_PARSE,
        Error::PathDisagreement(_) => EXIT_VERIFY,
        _ => EXIT_DOMAIN,
    }
}

fn dispatch(cli: &Cli) -> abelsum_core::Result<Output> {
    let mode = match (cli.closed, cli.numeric) {
        (true, _) => Mode::Closed,
        (_, true) => Mode::Numeric,
        _ => Mode::Both,
    };
    let ctx = Ctx { prec: cli.precision, mode };
    match &cli.command {
        Command::Digamma { z } => commands::digamma(&ctx, z),
        Command::Psum { coeffs, alt_path } => commands::psum(&ctx, coeffs, *alt_path),
        Command::Alt { lambda: Some(l), .. } => commands::alt_lambda(&ctx, l),
        Command::Alt { p, q, .. } => commands::alt_pq(&ctx, p.unwrap_or_default(), q.unwrap_or_default()),
        Command::Lfun { modulus, values } => commands::lfun(&ctx, *modulus, values.as_deref()),
        Command::Legendre { p } => commands::legendre(&ctx, *p),
        Command::Rearrange { p, q, partial } => commands::rearrange(&ctx, *p, *q, *partial),
        Command::Dilog { x, identity } => commands::dilog(&ctx, x, *identity),
        Command::Fourier { theta, alternating, binomial } => {
            commands::fourier(&ctx, theta, *alternating, binomial.as_deref())
        }
        Command::Hyp2f1 { a, b, c, z } => commands::hyp2f1(&ctx, a, b, c, z),
        Command::Verify { suite } => commands::verify(&ctx, suite),
        Command::GammaEst { n } => commands::gamma_est(&ctx, *n),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_PARSE),
            };
        }
    };
    match dispatch(&cli) {
        Ok(out) => {
            if cli.json {
                let v = serde_json::Value::Object(out.json);
                println!("{}", serde_json::to_string_pretty(&v).expect("JSON values always serialize"));
            } else {
                for line in &out.text {
                    println!("{line}");
                }
            }
            if out.mismatches.is_empty() {
                ExitCode::SUCCESS
            } else {
                for m in &out.mismatches {
                    eprintln!("verification failed: {m}");
                }
                ExitCode::from(EXIT_VERIFY)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn error_classes_map_to_exit_codes() {
        assert_eq!(exit_code(&Error::Parse("x".into())), 3);
        assert_eq!(exit_code(&Error::PathDisagreement("x".into())), 2);
        assert_eq!(exit_code(&Error::Pole("x".into())), 1);
        assert_eq!(exit_code(&Error::NonConvergence("x".into())), 1);
    }
}
