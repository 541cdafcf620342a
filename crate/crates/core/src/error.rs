use thiserror::Error;

/// Every failure the library can report.
///
/// Domain-type errors (bad arguments, poles, malformed characters) are kept
/// distinct from numerical failures so callers can tell "you asked for
/// something undefined" from "the oracle could not settle on a value".
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("argument out of range: {0}")]
    ArgOutOfRange(String),
    #[error("pole: {0}")]
    Pole(String),
    #[error("series does not converge: {0}")]
    NonConvergence(String),
    #[error("integrand is not finite at interior node {0}")]
    SingularIntegrand(String),
    #[error("coefficients must sum to zero over one period (sum = {0})")]
    NonZeroSum(String),
    #[error("polynomial degree {degree} is not below the period {period}")]
    Degree { degree: usize, period: usize },
    #[error("independent evaluations disagree: {0}")]
    PathDisagreement(String),
    #[error("character is not completely multiplicative: chi({m})*chi({n}) != chi({mn})")]
    NotMultiplicative { m: u64, n: u64, mn: u64 },
    #[error("character value at residue {residue} violates the coprime-support rule")]
    WrongSupport { residue: u64 },
    #[error("expected {expected} character values, got {got}")]
    NotPeriodicInput { expected: usize, got: usize },
    #[error("L(1, chi) diverges for the principal character")]
    TrivialCharacter,
    #[error("{0} is not an odd prime")]
    NotOddPrime(i64),
    #[error("bad modulus {0}: expected an odd squarefree integer > 1")]
    BadModulus(i64),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
