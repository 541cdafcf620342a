//! Classical identities: the dilogarithm, Fourier series of logarithms and
//! binomials, the hypergeometric series and block rearrangements of the
//! alternating harmonic series.

mod dilog;
mod fourier;
mod hypergeometric;
mod rearrangement;

pub use dilog::{euler_zeta2_approx, li2_identity_check, li2_integral, li2_numeric, li2_series};
pub use fourier::{
    alt_fourier_oracle, alt_fourier_sums, binomial_fourier_check, fourier_log_oracle, fourier_log_sums,
    fourier_log_sums_numeric, fourier_series_oracle, FourierSeries, FourierSums,
};
pub use hypergeometric::{hyp2f1_series, HYP2F1_MAX_TERMS};
pub use rearrangement::{
    rearranged_accelerated, rearranged_generating, rearranged_generating_series, rearranged_partial,
    rearranged_stream, rearranged_sum, RearrangementSpec,
};
