#![allow(dead_code)]

use abelsum_core::PeriodicCoefficients;
use rand::Rng;

/// Shifts entries toward zero until the period sums to zero; entries stay in `[-2, 2]`.
pub fn balance(mut v: Vec<i64>) -> Vec<i64> {
    let mut sum: i64 = v.iter().sum();
    for x in v.iter_mut() {
        while sum > 0 && *x > -2 {
            *x -= 1;
            sum -= 1;
        }
        while sum < 0 && *x < 2 {
            *x += 1;
            sum += 1;
        }
    }
    assert_eq!(sum, 0);
    v
}

pub fn random_zero_sum<R: Rng>(rng: &mut R, max_p: usize) -> PeriodicCoefficients {
    let p = rng.gen_range(2..=max_p);
    let v: Vec<i64> = (0..p).map(|_| rng.gen_range(-2..=2)).collect();
    PeriodicCoefficients::from_ints(&balance(v)).unwrap()
}
