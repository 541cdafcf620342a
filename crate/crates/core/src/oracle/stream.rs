use std::fmt;
use std::sync::{Arc, Mutex};

use rug::Float;

use crate::numeric::Complex;

type RealGen = dyn Fn(u64, u32) -> Float + Send + Sync;
type ComplexGen = dyn Fn(u64, u32) -> Complex + Send + Sync;

#[derive(Clone)]
enum Gen {
    Real(Arc<RealGen>),
    Complex(Arc<ComplexGen>),
}

/// A deterministic coefficient sequence `n ↦ aₙ`, generated at a requested
/// precision.
///
/// The optional period hint tells [`accelerated_sum`](super::accelerated_sum)
/// that the sign pattern repeats every `p` terms, which switches it from
/// Aitken iteration to Richardson extrapolation over whole periods.
#[derive(Clone)]
pub struct CoefficientStream {
    gen: Gen,
    period: Option<u64>,
}

impl CoefficientStream {
    pub fn real<F>(f: F) -> Self
    where
        F: Fn(u64, u32) -> Float + Send + Sync + 'static,
    {
        CoefficientStream { gen: Gen::Real(Arc::new(f)), period: None }
    }

    pub fn complex<F>(f: F) -> Self
    where
        F: Fn(u64, u32) -> Complex + Send + Sync + 'static,
    {
        CoefficientStream { gen: Gen::Complex(Arc::new(f)), period: None }
    }

    pub fn zero() -> Self {
        Self::real(|_, prec| Float::new(prec))
    }

    /// `aₙ = c_{n mod p}·g(n)` style streams declare their period here.
    pub fn with_period(mut self, period: u64) -> Self {
        assert!(period > 0, "period must be positive");
        self.period = Some(period);
        self
    }

    pub fn period(&self) -> Option<u64> {
        self.period
    }

    pub fn is_real(&self) -> bool {
        matches!(self.gen, Gen::Real(_))
    }

    /// The real coefficient, or `None` for a complex stream.
    pub fn real_at(&self, n: u64, prec: u32) -> Option<Float> {
        match &self.gen {
            Gen::Real(f) => Some(f(n, prec)),
            Gen::Complex(_) => None,
        }
    }

    pub fn at(&self, n: u64, prec: u32) -> Complex {
        match &self.gen {
            Gen::Real(f) => Complex::real(f(n, prec)),
            Gen::Complex(f) => f(n, prec),
        }
    }

    /// `cₙ = Σ_{k≤n} a_k·b_{n−k}` for two real streams.
    ///
    /// The coefficients of both factors and of the product are cached, so a
    /// sequential scan costs one convolution row per new index. The cache is
    /// keyed by precision and rebuilt if a different precision is requested.
    pub fn cauchy_product(a: &CoefficientStream, b: &CoefficientStream) -> Option<CoefficientStream> {
        if !a.is_real() || !b.is_real() {
            return None;
        }
        let cache = Arc::new(Mutex::new(Convolution { prec: 0, a: Vec::new(), b: Vec::new(), c: Vec::new() }));
        let (a, b) = (a.clone(), b.clone());
        Some(CoefficientStream::real(move |n, prec| {
            let mut cache = cache.lock().unwrap_or_else(|e| e.into_inner());
            cache.get(&a, &b, n, prec)
        }))
    }
}

impl fmt::Debug for CoefficientStream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CoefficientStream")
            .field("real", &self.is_real())
            .field("period", &self.period)
            .finish()
    }
}

struct Convolution {
    prec: u32,
    a: Vec<Float>,
    /// Nonzero coefficients of the second factor as `(index, value)`.
    b: Vec<(usize, Float)>,
    c: Vec<Float>,
}

impl Convolution {
    fn get(&mut self, a: &CoefficientStream, b: &CoefficientStream, n: u64, prec: u32) -> Float {
        if prec != self.prec {
            self.prec = prec;
            self.a.clear();
            self.b.clear();
            self.c.clear();
        }
        let n = n as usize;
        while self.c.len() <= n {
            let m = self.c.len();
            self.a.push(a.real_at(m as u64, prec).expect("real stream"));
            let bm = b.real_at(m as u64, prec).expect("real stream");
            if !bm.is_zero() {
                self.b.push((m, bm));
            }
            let mut acc = Float::new(prec);
            for (k, bk) in &self.b {
                acc += Float::with_val(prec, &self.a[m - k] * bk);
            }
            self.c.push(acc);
        }
        self.c[n].clone()
    }
}
