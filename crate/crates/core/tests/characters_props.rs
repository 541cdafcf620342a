use abelsum_core::{jacobi_symbol, l1, legendre_symbol, real_characters, validate, Error};
use proptest::prelude::*;

#[test]
fn nontrivial_characters_sum_to_zero() {
    for p in 2..=16u64 {
        for chi in real_characters(p) {
            let s: i64 = chi.values().iter().sum();
            assert_eq!(s == 0, !chi.is_trivial(), "modulus {p}: {:?}", chi.values());
            assert_eq!(validate(chi.values(), p).unwrap(), chi);
        }
    }
}

#[test]
fn legendre_symbol_detects_squares() {
    for p in [3i64, 5, 7, 11, 13, 17, 19, 23] {
        for n in 0..p {
            let square = (1..p).any(|x| (x * x) % p == n);
            let expect = if n == 0 { 0 } else if square { 1 } else { -1 };
            assert_eq!(legendre_symbol(n, p).unwrap(), expect, "({n}/{p})");
        }
    }
}

#[test]
fn legendre_characters_are_among_the_enumerated_ones() {
    for p in [3u64, 5, 7, 11] {
        let table: Vec<i64> = (0..p as i64).map(|n| legendre_symbol(n, p as i64).unwrap() as i64).collect();
        assert!(real_characters(p).iter().any(|c| c.values() == table.as_slice()), "p = {p}");
    }
}

#[test]
fn principal_character_has_no_l1() {
    let chi = real_characters(5).into_iter().find(|c| c.is_trivial()).unwrap();
    assert!(matches!(l1(&chi, 64), Err(Error::TrivialCharacter)));
}

proptest! {
    #[test]
    fn legendre_symbol_is_completely_multiplicative(
        p in prop::sample::select(vec![3i64, 5, 7, 11, 13]),
        m in -50i64..50,
        n in -50i64..50,
    ) {
        let lhs = legendre_symbol(m * n, p).unwrap();
        let rhs = legendre_symbol(m, p).unwrap() * legendre_symbol(n, p).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn jacobi_symbol_is_multiplicative_in_the_modulus(
        a in prop::sample::select(vec![3i64, 5, 7, 11, 13]),
        b in prop::sample::select(vec![3i64, 5, 7, 11, 13]),
        n in -60i64..60,
    ) {
        prop_assume!(a != b);
        let lhs = jacobi_symbol(n, a * b).unwrap();
        prop_assert_eq!(lhs, legendre_symbol(n, a).unwrap() * legendre_symbol(n, b).unwrap());
    }
}
