use abelsum_core::{abel_limit, accelerated_sum, quadrature, CoefficientStream, Upper};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rug::ops::Pow;
use rug::Float;

fn sign(n: u64) -> i32 {
    if n % 2 == 0 {
        1
    } else {
        -1
    }
}

fn test_series() -> Vec<(&'static str, CoefficientStream)> {
    vec![
        ("alternating harmonic", CoefficientStream::real(|n, p| Float::with_val(p, sign(n)) / (n + 1)).with_period(2)),
        ("Leibniz", CoefficientStream::real(|n, p| Float::with_val(p, sign(n)) / (2 * n + 1)).with_period(2)),
        ("geometric 1/3", CoefficientStream::real(|n, p| Float::with_val(p, 1u32) / Float::with_val(p, 3u32).pow(n as u32))),
        (
            "period three",
            CoefficientStream::real(|n, p| Float::with_val(p, [1, -1, 0][(n % 3) as usize]) / (n + 1)).with_period(3),
        ),
        ("inverse squares", CoefficientStream::real(|n, p| Float::with_val(p, 1u32) / Float::with_val(p, n + 1).square())),
    ]
}

#[test]
fn abel_and_accelerated_sums_agree() {
    let prec = 128;
    for (name, s) in test_series() {
        let a = abel_limit(&s, prec, 40).unwrap();
        let b = accelerated_sum(&s, 1 << 20, prec).unwrap();
        let diff = a.value.abs_diff_f64(b.value.value());
        let budget = a.error_estimate.to_f64() + b.error_estimate.to_f64() + 1e-30;
        assert!(diff <= budget, "{name}: {diff:e} > {budget:e}");
    }
}

#[test]
fn quadrature_of_monomials() {
    let prec = 256;
    let zero = Float::new(prec);
    let one = Upper::Finite(Float::with_val(prec, 1u32));
    for k in 0..=20u32 {
        let r = quadrature(|node| Float::with_val(prec, node.x.clone().pow(k)), &zero, &one, prec).unwrap();
        let exact = Float::with_val(prec, 1u32) / (k + 1);
        assert!(r.value.abs_diff_f64(&exact) < 1e-70, "k = {k}");
    }
}

#[test]
fn abel_limit_of_absolutely_convergent_series_is_the_sum() {
    let prec = 128;
    let mut rng = StdRng::seed_from_u64(0xab31);
    for _ in 0..20 {
        let r: f64 = rng.gen_range(0.1..0.8);
        let c: f64 = rng.gen_range(-2.0..2.0);
        let s = CoefficientStream::real(move |n, p| Float::with_val(p, c) * Float::with_val(p, r).pow(n as u32));
        let exact = Float::with_val(prec, c) / (1.0 - Float::with_val(prec, r));
        let v = abel_limit(&s, prec, 40).unwrap();
        let tol = 2f64.powi(-(prec as i32) / 2);
        assert!(v.value.abs_diff_f64(&exact) < tol, "r = {r}, c = {c}");
    }
}

#[test]
fn oracles_are_deterministic() {
    for (name, s) in test_series() {
        let a = accelerated_sum(&s, 1 << 16, 160).unwrap();
        let b = accelerated_sum(&s, 1 << 16, 160).unwrap();
        assert_eq!(a, b, "{name}");
        let a = abel_limit(&s, 96, 24).unwrap();
        let b = abel_limit(&s, 96, 24).unwrap();
        assert_eq!(a, b, "{name}");
    }
}
