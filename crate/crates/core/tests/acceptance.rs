//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines come out in order.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use abelsum_core::numeric::Complex;
use abelsum_core::symbolic::gcd;
use abelsum_core::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rug::float::Constant;
use rug::Float;

const PREC: u32 = 256;
const WORK: u32 = PREC + 64;

/// Collects deviations against one tolerance and reports the worst.
struct Tally {
    tol: f64,
    worst: f64,
    count: usize,
    failures: Vec<String>,
}

impl Tally {
    fn new(tol: f64) -> Self {
        Tally { tol, worst: 0.0, count: 0, failures: Vec::new() }
    }

    fn diff(&mut self, label: impl Into<String>, a: &Float, b: &Float) {
        let d = Float::with_val(WORK, a - b).abs().to_f64();
        self.err(label, d);
    }

    fn err(&mut self, label: impl Into<String>, d: f64) {
        self.count += 1;
        if d.is_nan() || d > self.tol {
            self.failures.push(format!("{} ({d:.2e})", label.into()));
        }
        if d > self.worst || d.is_nan() {
            self.worst = d;
        }
    }

    fn flag(&mut self, label: impl Into<String>, ok: bool) {
        self.count += 1;
        if !ok {
            self.failures.push(label.into());
        }
    }

    fn merge(&mut self, other: Tally) {
        self.count += other.count;
        self.worst = self.worst.max(other.worst);
        self.failures.extend(other.failures);
    }

    fn finish(self, what: &str) -> Result<String, String> {
        let summary = if self.tol == 0.0 {
            format!("{} {what}", self.count)
        } else {
            format!("{} {what}, worst deviation {:.1e}, tolerance {:.0e}", self.count, self.worst, self.tol)
        };
        if self.failures.is_empty() {
            Ok(summary)
        } else {
            Err(format!("{summary}; failing: {}", self.failures.join("; ")))
        }
    }
}

fn c(n: i64) -> Float {
    Float::with_val(WORK, n)
}
fn q(a: i64, b: i64) -> Float {
    c(a) / b
}
fn pi() -> Float {
    Float::with_val(WORK, Constant::Pi)
}
fn gamma() -> Float {
    Float::with_val(WORK, Constant::Euler)
}
fn ln2() -> Float {
    Float::with_val(WORK, Constant::Log2)
}
fn sqrt(n: i64) -> Float {
    c(n).sqrt()
}
fn zeta2() -> Float {
    pi().square() / 6u32
}
fn ev<E: Evaluate + ?Sized>(v: &E) -> Float {
    v.eval_at(PREC)
}
fn coeffs(v: &[i64]) -> PeriodicCoefficients {
    PeriodicCoefficients::from_ints(v).unwrap()
}

fn golden_values() -> Result<String, String> {
    let mut t = Tally::new(1e-25);
    let pi3 = pi() / (sqrt(3) * 3u32);

    let x = q(1, 2);
    t.diff("Li2(1/2)", li2_numeric(&x, PREC).unwrap().value(), &(pi().square() / 12u32 - ln2().square() / 2u32));

    let pq: [(u64, u64, Float); 3] = [
        (3, 1, ln2() / 3u32 + &pi3),
        (3, 2, Float::with_val(WORK, &pi3 - ln2() / 3u32)),
        (4, 1, pi() / (sqrt(2) * 4u32) + Float::with_val(WORK, sqrt(2) + 1u32).ln() / (sqrt(2) * 2u32)),
    ];
    for (p, qq, expected) in pq {
        let (closed, oracle) = series_pq(p, qq, PREC).unwrap();
        t.diff(format!("sum (-1)^n/({p}n+{qq}) closed"), &ev(&closed), &expected);
        t.diff(format!("sum (-1)^n/({p}n+{qq}) oracle"), oracle.value.value(), &expected);
    }

    let periodic: [(&[i64], Float); 4] = [
        (&[1, 1, 0, -1, -1, 0], Float::with_val(WORK, &pi3 * 2u32)),
        (&[1, -1, 0], pi3.clone()),
        (&[1, 0, 1, 0, -1, 0, -1, 0], pi() / (sqrt(2) * 2u32)),
        (&[1, -1, -1, 1, 0], ((sqrt(5) + 1u32) / 2u32).ln() * 2u32 / sqrt(5)),
    ];
    for (v, expected) in periodic {
        let c = coeffs(v);
        t.diff(format!("closed form {v:?}"), &ev(&closed_form_sum(&c).unwrap()), &expected);
        t.diff(format!("quadrature/series {v:?}"), series_numeric(&c, PREC).unwrap().value.value(), &expected);
    }

    let spec = RearrangementSpec::new(2, 1).unwrap();
    t.diff("rearrangement (2,1)", &ev(&rearranged_sum(&spec).unwrap()), &(ln2() * 3u32 / 2u32));

    let legendre7 = validate((0..7).map(|n| legendre_symbol(n, 7).unwrap() as i64).collect::<Vec<_>>().as_slice(), 7).unwrap();
    let v = l1(&legendre7, PREC).unwrap();
    let expected = pi() / sqrt(7);
    t.diff("sum (n/7)/n via digamma", &ev(&v.via_digamma), &expected);
    t.diff("sum (n/7)/n via periodic sum", &ev(&v.via_periodic), &expected);

    t.diff("psi(1)", &ev(&digamma_shift(&Rational::one()).unwrap()), &-gamma());
    let mut h = Float::new(WORK);
    for m in 2..=12i64 {
        h += q(1, m - 1);
        t.diff(format!("psi({m})"), &ev(&digamma_shift(&Rational::from_int(m)).unwrap()), &Float::with_val(WORK, &h - gamma()));
    }
    t.finish("golden values")
}

fn three_path_agreement() -> Result<String, String> {
    let mut t = Tally::new(1e-20);
    let mut rng = StdRng::seed_from_u64(0x5eed_2);
    for i in 0..200 {
        let c = common::random_zero_sum(&mut rng, 12);
        let oracle = series_numeric(&c, PREC).unwrap().value.into_value();
        let closed = ev(&closed_form_sum(&c).unwrap());
        let alt = alt_path_sum(&c, PREC).unwrap().into_value();
        t.diff(format!("case {i} ({c}) closed"), &closed, &oracle);
        t.diff(format!("case {i} ({c}) roots of unity"), &alt, &oracle);
    }
    t.finish("comparisons on 200 random inputs")
}

fn digamma_consistency() -> Result<String, String> {
    let mut t = Tally::new(1e-20);
    let mut fractions = 0;
    for p in 2..=24i64 {
        for qq in 1..p {
            if gcd(qq as u64, p as u64) != 1 {
                continue;
            }
            fractions += 1;
            let closed = ev(&digamma_rational(qq, p).unwrap());
            let z = Complex::real(q(qq, p));
            let series = digamma_series_numeric(&z, PREC).unwrap();
            let integral = digamma_integral_numeric(&z, PREC).unwrap();
            t.diff(format!("psi({qq}/{p}) series"), &series.re, &closed);
            t.diff(format!("psi({qq}/{p}) integral"), &integral.re, &closed);
        }
    }
    let mut rng = StdRng::seed_from_u64(0xd16a);
    for _ in 0..50 {
        let den = rng.gen_range(1i64..=40);
        let num = rng.gen_range(1..10 * den);
        let r = Rational::new(num, den);
        let next = ev(&digamma_shift(&(&r + &Rational::one())).unwrap());
        let here = ev(&digamma_shift(&r).unwrap());
        let residual = Float::with_val(WORK, &next - &here) - r.recip().to_float(WORK);
        t.err(format!("recurrence at {r}"), residual.abs().to_f64());
    }
    t.finish(&format!("checks ({fractions} fractions, 50 recurrences)"))
}

fn abel_oracle() -> Result<String, String> {
    let mut t = Tally::new(1e-10);
    let sign = |n: u64| if n % 2 == 0 { 1i32 } else { -1 };
    let cases: [(&str, CoefficientStream, Float); 3] = [
        ("Grandi", CoefficientStream::real(move |n, p| Float::with_val(p, sign(n))), q(1, 2)),
        ("alternating harmonic", CoefficientStream::real(move |n, p| Float::with_val(p, sign(n)) / (n + 1)), ln2()),
        ("Leibniz", CoefficientStream::real(move |n, p| Float::with_val(p, sign(n)) / (2 * n + 1)), pi() / 4u32),
    ];
    let mut monotone = Tally::new(0.0);
    for (name, s, expected) in cases {
        let rep = abel_limit_with(&s, PREC, &AbelOptions::default()).unwrap();
        t.diff(name, rep.result.value.value(), &expected);
        // Richardson convergence: the extrapolant error falls with k until it
        // reaches the working-precision floor.
        let floor = 2f64.powi(-(PREC as i32) / 2);
        let errs: Vec<f64> = rep
            .steps
            .iter()
            .map(|st| Float::with_val(WORK, &st.extrapolant - &expected).abs().to_f64())
            .collect();
        let above: Vec<f64> = errs.iter().copied().take_while(|&e| e > floor).collect();
        let decreasing = above.windows(2).all(|w| w[1] < w[0]);
        let improves = errs.last().copied().unwrap_or(f64::NAN) < errs.first().copied().unwrap_or(0.0) * 1e-6;
        let shown: Vec<String> = errs.iter().map(|e| format!("{e:.1e}")).collect();
        monotone.flag(format!("{name} extrapolant errors [{}]", shown.join(", ")), decreasing && improves && errs.len() >= 3);
    }
    t.merge(monotone);
    t.finish("checks (values and decreasing extrapolant error)")
}

fn l_function_suite() -> Result<String, String> {
    let mut t = Tally::new(1e-15);
    let mut chars = 0;
    for p in 2..=12u64 {
        for chi in real_characters(p).into_iter().filter(|c| !c.is_trivial()) {
            chars += 1;
            let v = l1(&chi, PREC).unwrap();
            let reference = ev(&v.via_digamma);
            t.diff(format!("mod {p} {:?} periodic", chi.values()), &ev(&v.via_periodic), &reference);
            t.diff(format!("mod {p} {:?} oracle", chi.values()), v.oracle.value.value(), &reference);
        }
    }
    let mut im = Tally::new(1e-20);
    for p in [3i64, 5, 7, 11, 13, 15, 21] {
        let rhs = legendre_l1_rhs(p, PREC).unwrap();
        im.err(format!("Im rhs at {p}"), Float::with_val(WORK, rhs.im.abs_ref()).to_f64());
        match legendre_l1_check(p, PREC) {
            Ok((lhs, rhs)) => im.diff(format!("lhs - rhs at {p}"), lhs.value(), rhs.value()),
            Err(e) => im.flag(format!("legendre check at {p}: {e}"), false),
        }
    }
    let summary = format!("{chars} characters");
    t.merge(im);
    t.finish(&format!("checks ({summary}, 7 Legendre moduli)"))
}

fn identity_checks() -> Result<String, String> {
    let mut t = Tally::new(1e-20);
    let mut rng = StdRng::seed_from_u64(0x1d);
    let mut lambdas = 0;
    while lambdas < 20 {
        let x: f64 = rng.gen_range(-0.4..0.9);
        let near_pole = (x > -0.07 && x < 0.0) || (2..40).any(|k| (x + 1.0 / k as f64).abs() < 5e-3);
        if near_pole {
            continue;
        }
        lambdas += 1;
        let (lhs, rhs) = i_functional_check(&Float::with_val(WORK, x), PREC).unwrap();
        t.diff(format!("I functional equation at {x}"), lhs.value(), rhs.value());
    }
    for _ in 0..20 {
        let x: f64 = rng.gen_range(0.001..0.999);
        let (lhs, _) = li2_identity_check(&Float::with_val(WORK, x), PREC).unwrap();
        t.diff(format!("Li2 reflection at {x}"), lhs.value(), &zeta2());
    }
    for qq in 2..=12i64 {
        for k in 1..qq {
            let (lhs, rhs) = gauss_fourier_check(qq, k, PREC).unwrap();
            let d = Complex::new(lhs.re - rhs.re, lhs.im - rhs.im).max_abs();
            t.err(format!("Gauss identity q={qq} k={k}"), d.to_f64());
        }
    }
    for n in 2..=40u64 {
        let s = sine_product(n, PREC).unwrap();
        t.diff(format!("sine product N={n}"), s.product.value(), &ev(&s.claim));
        if let Some((half, claim)) = s.half {
            t.diff(format!("half sine product N={n}"), half.value(), &claim.eval(WORK));
        }
    }

    let mut cauchy = Tally::new(1e-8);
    let sign = |n: u64| if n % 2 == 0 { 1i32 } else { -1 };
    let alt_harmonic = CoefficientStream::real(move |n, p| Float::with_val(p, sign(n)) / (n + 1));
    let geometric = CoefficientStream::real(|n, p| Float::with_val(p, 1u32) >> (n as u32));
    let delta = CoefficientStream::real(|n, p| Float::with_val(p, (n == 0) as u32));
    // Leibniz terms on even indices, zeros between.
    let leibniz_spread = CoefficientStream::real(move |n, p| {
        if n % 2 == 1 {
            Float::new(p)
        } else {
            Float::with_val(p, sign(n / 2)) / (n + 1)
        }
    });
    let examples: [(&str, &CoefficientStream, &CoefficientStream, Float); 3] = [
        ("alternating harmonic squared", &alt_harmonic, &alt_harmonic, ln2().square()),
        ("geometric times identity", &geometric, &delta, c(2)),
        ("spread Leibniz squared", &leibniz_spread, &leibniz_spread, pi().square() / 16u32),
    ];
    for (name, a, b, expected) in examples {
        let (x, y, z) = cauchy_product_check(a, b, 64).unwrap();
        let ab = Float::with_val(WORK, x.value() * y.value());
        cauchy.diff(format!("{name}: C - AB"), z.value(), &ab);
        cauchy.diff(format!("{name}: C"), z.value(), &expected);
    }
    let mut out = t.finish("identity checks")?;
    out.push_str("; ");
    out.push_str(&cauchy.finish("Cauchy product checks")?);
    Ok(out)
}

fn euler_approximation() -> Result<String, String> {
    let v = euler_zeta2_approx(30).unwrap();
    let d = v.abs_diff_f64(&zeta2());
    let text = format!("euler_zeta2_approx(30) = {} vs pi^2/6, deviation {d:.1e}", v.value().to_string_radix(10, Some(12)));
    // six decimal places
    if d < 5e-7 {
        Ok(text)
    } else {
        Err(text)
    }
}

fn error_paths() -> Result<String, String> {
    let mut t = Tally::new(0.0);
    let mut expect = |label: &str, ok: bool| t.flag(label.to_string(), ok);
    macro_rules! is {
        ($e:expr, $p:pat) => {
            matches!($e, Err($p))
        };
    }
    let f = |x: f64| Float::with_val(WORK, x);
    let theta_pi = Rational::one();

    expect("alt_fourier_sums at theta = pi", is!(alt_fourier_sums(&theta_pi), Error::Domain(_)));
    expect("alt_fourier_oracle at theta = pi", is!(alt_fourier_oracle(&theta_pi, 64), Error::Domain(_)));
    let trivial = real_characters(6).into_iter().find(|c| c.is_trivial()).unwrap();
    expect("L1 of the principal character", is!(l1(&trivial, 64), Error::TrivialCharacter));
    expect("I_closed with q = p", is!(i_closed(3, 3), Error::ArgOutOfRange(_)));
    expect("I_closed with q > p", is!(i_closed(3, 5), Error::ArgOutOfRange(_)));
    expect("digamma_rational with q >= p", is!(digamma_rational(4, 4), Error::ArgOutOfRange(_)));
    expect("cot_csc_integrals with q >= p", is!(cot_csc_integrals(2, 2, 64), Error::ArgOutOfRange(_)));
    for x in [0.0, -1.0, -0.5, -0.25] {
        expect(&format!("I_via_digamma pole at {x}"), is!(i_via_digamma(&f(x), 64), Error::Pole(_)));
    }
    expect("digamma series pole at -3", is!(digamma_series_numeric(&Complex::from_f64(-3.0, 0.0, 64), 64), Error::Pole(_)));
    expect("digamma integral at Re z <= 0", is!(digamma_integral_numeric(&Complex::from_f64(0.0, 1.0, 64), 64), Error::Domain(_)));
    expect("digamma_shift at r = 0", is!(digamma_shift(&Rational::zero()), Error::ArgOutOfRange(_)));
    expect("gauss_fourier_check with q | k", is!(gauss_fourier_check(4, 8, 64), Error::Domain(_)));
    expect("ln sin(0)", is!(ln_sin(0, 5), Error::Domain(_)));
    expect("pi cot(pi)", is!(pi_cot(5, 5), Error::Domain(_)));
    expect("ln 0", is!(abelsum_core::symbolic::ln_integer(0), Error::Domain(_)));
    let nonzero = PeriodicCoefficients::from_ints(&[1, 1]).unwrap();
    expect("closed_form_sum with nonzero period sum", is!(closed_form_sum(&nonzero), Error::NonZeroSum(_)));
    expect("series_numeric with nonzero period sum", is!(series_numeric(&nonzero, 64), Error::NonZeroSum(_)));
    expect("alt_path_sum with nonzero period sum", is!(alt_path_sum(&nonzero, 64), Error::NonZeroSum(_)));
    let high = [Rational::one(), Rational::zero(), Rational::zero(), Rational::from_int(-1)];
    expect("partial_fraction with degree >= p", is!(partial_fraction(&high, 3, 64), Error::Degree { .. }));
    expect("root_integral at theta = 0", is!(root_integral(&Rational::zero()), Error::Domain(_)));
    expect("root_integral at theta = pi", is!(root_integral(&Rational::one()), Error::Domain(_)));
    expect("cos_kernel_sum at theta = 2 pi", is!(cos_kernel_sum(3, &(pi() * 2u32)), Error::Domain(_)));
    expect("weighted_sine_sum with l > 2m", is!(weighted_sine_sum(5, 2, 64), Error::ArgOutOfRange(_)));
    expect("I_numeric at negative lambda", is!(i_numeric(&f(-0.5), 64), Error::Domain(_)));
    expect("I_functional_check at lambda = 1", is!(i_functional_check(&f(1.0), 64), Error::Domain(_)));
    expect("series_pq with p = 0", is!(series_pq(0, 1, 64), Error::ArgOutOfRange(_)));
    expect("validate: not multiplicative", is!(validate(&[0, 1, 1, -1, 1], 5), Error::NotMultiplicative { .. }));
    expect("validate: wrong support", is!(validate(&[0, 1, 1, 1], 4), Error::WrongSupport { .. }));
    expect("validate: wrong length", is!(validate(&[0, 1, -1], 4), Error::NotPeriodicInput { .. }));
    expect("legendre_symbol modulo 9", is!(legendre_symbol(2, 9), Error::NotOddPrime(_)));
    expect("legendre_l1_check modulo 9", is!(legendre_l1_check(9, 64), Error::BadModulus(_)));
    expect("li2 at x = 2", is!(li2_numeric(&f(2.0), 64), Error::Domain(_)));
    expect("li2 identity at x = 1", is!(li2_identity_check(&f(1.0), 64), Error::Domain(_)));
    expect("fourier_log_sums at theta = 0", is!(fourier_log_sums(&Rational::zero()), Error::Domain(_)));
    expect(
        "binomial Fourier series at Re alpha <= -1",
        is!(binomial_fourier_check(&Complex::from_f64(-1.5, 0.0, 64), &f(0.5), 64), Error::Domain(_)),
    );
    let one = Complex::from_f64(1.0, 0.0, 64);
    expect("2F1 with c = -2", is!(hyp2f1_series(&one, &one, &Complex::from_f64(-2.0, 0.0, 64), &Complex::from_f64(0.5, 0.0, 64), 64), Error::Pole(_)));
    expect("2F1 at |z| = 1", is!(hyp2f1_series(&one, &one, &one, &one, 64), Error::Domain(_)));
    expect("rearrangement with an empty block", is!(RearrangementSpec::new(0, 1), Error::ArgOutOfRange(_)));
    let growing = CoefficientStream::real(|n, p| Float::with_val(p, n + 1));
    expect("abel_limit on a divergent stream", is!(abel_limit(&growing, 64, 40), Error::NonConvergence(_)));
    expect("accelerated_sum on a divergent stream", is!(accelerated_sum(&growing, 1 << 14, 64), Error::NonConvergence(_)));
    let zero = Float::new(64);
    let one_up = Upper::Finite(Float::with_val(64, 1u32));
    expect(
        "quadrature through an interior singularity",
        is!(quadrature(|n| Float::with_val(64, &n.x - 0.5f64).recip(), &zero, &one_up, 64), Error::SingularIntegrand(_)),
    );
    t.finish("error paths")
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Result<String, String>); 8] = [
        ("golden values", golden_values),
        ("three-path agreement", three_path_agreement),
        ("digamma consistency", digamma_consistency),
        ("Abel oracle behavior", abel_oracle),
        ("L-function suite", l_function_suite),
        ("identity checks", identity_checks),
        ("Euler's zeta(2) approximation", euler_approximation),
        ("negative and error paths", error_paths),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let (status, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("{status} criterion {} ({name}): {detail} [{:.1}s]", i + 1, t.elapsed().as_secs_f64());
    }
    println!(
        "acceptance: {} of {} criteria passed in {:.1}s",
        criteria.len() - failed,
        criteria.len(),
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
