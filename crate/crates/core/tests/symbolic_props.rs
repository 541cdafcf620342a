use abelsum_core::numeric::Complex;
use abelsum_core::symbolic::gcd;
use abelsum_core::{eval_numeric, normalize_atom, Atom, Evaluate, Rational, SymbolicValue};
use proptest::prelude::*;
use rug::Float;

fn raw_atoms(max_p: u64) -> Vec<Atom> {
    let mut out = vec![Atom::Unit, Atom::EulerGamma, Atom::Pi];
    for p in 1..=max_p {
        out.push(Atom::LnPrime { p });
        for j in 1..p {
            out.push(Atom::LnSin { j, p });
            out.push(Atom::PiCot { l: j, p });
        }
    }
    out
}

#[test]
fn normalization_is_idempotent_up_to_100() {
    for atom in raw_atoms(100) {
        let once = match normalize_atom(&atom) {
            Ok(v) => v,
            Err(_) => {
                assert!(matches!(atom, Atom::LnPrime { p } if p < 2) || matches!(atom, Atom::PiCot { l, p } if 2 * l == p && gcd(l, p) == l));
                continue;
            }
        };
        let mut twice = SymbolicValue::zero();
        for (a, c) in once.terms() {
            assert!(a.is_canonical(), "{atom:?} normalized to non-canonical {a:?}");
            twice.add_scaled(&normalize_atom(a).unwrap(), c);
        }
        assert_eq!(once, twice, "{atom:?}");
    }
}

#[test]
fn normalization_preserves_value_up_to_50() {
    let prec = 256;
    let tol = Float::with_val(prec, Float::i_exp(1, -(prec as i32 - 16)));
    for atom in raw_atoms(50) {
        let Ok(v) = normalize_atom(&atom) else { continue };
        let raw = atom.eval(prec);
        let norm = v.eval_at(prec);
        let diff = Float::with_val(prec, &raw - &norm).abs();
        let scale = Float::with_val(prec, raw.abs_ref()).max(&Float::with_val(prec, 1u32));
        assert!(diff <= Float::with_val(prec, &tol * &scale), "{atom:?}: {raw} vs {norm}");
    }
}

#[test]
fn chord_length_equals_twice_half_sine() {
    let prec = 128;
    let pi = Float::with_val(prec, rug::float::Constant::Pi);
    for k in 1..1000u32 {
        let theta = Float::with_val(prec, &pi * k) / 1000u32;
        let chord = (&Complex::one(prec) - &Complex::cis(&theta)).abs();
        let half = (theta / 2u32).sin() * 2u32;
        let diff = Float::with_val(prec, chord - half).abs();
        assert!(diff < 1e-35, "k = {k}");
    }
}

fn small_atom() -> impl Strategy<Value = Atom> {
    prop_oneof![
        Just(Atom::Unit),
        Just(Atom::EulerGamma),
        Just(Atom::Pi),
        (2u64..30).prop_map(|p| Atom::LnPrime { p }),
        (3u64..25).prop_flat_map(|p| (1..p).prop_map(move |j| Atom::LnSin { j, p })),
        (3u64..25).prop_flat_map(|p| (1..p).prop_map(move |l| Atom::PiCot { l, p })),
    ]
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=6).prop_map(|(n, d)| Rational::new(n, d))
}

fn small_value() -> impl Strategy<Value = SymbolicValue> {
    prop::collection::vec((small_atom(), small_rational()), 0..5).prop_map(|terms| {
        let mut v = SymbolicValue::zero();
        for (a, c) in terms {
            if let Ok(n) = normalize_atom(&a) {
                v.add_scaled(&n, &c);
            }
        }
        v
    })
}

proptest! {
    #[test]
    fn vector_space_axioms(x in small_value(), y in small_value(), z in small_value(), a in small_rational(), b in small_rational()) {
        let zero = SymbolicValue::zero();
        prop_assert_eq!(x.add(&y), y.add(&x));
        prop_assert_eq!(x.add(&y).add(&z), x.add(&y.add(&z)));
        prop_assert_eq!(x.add(&zero), x.clone());
        prop_assert!(x.add(&x.neg()).is_zero());
        prop_assert_eq!(x.scale(&Rational::one()), x.clone());
        prop_assert_eq!(x.scale(&(&a * &b)), x.scale(&b).scale(&a));
        prop_assert_eq!(x.add(&y).scale(&a), x.scale(&a).add(&y.scale(&a)));
        prop_assert_eq!(x.scale(&(&a + &b)), x.scale(&a).add(&x.scale(&b)));
        prop_assert!(x.scale(&Rational::zero()).is_zero());
    }

    #[test]
    fn evaluation_is_linear(x in small_value(), y in small_value(), a in small_rational()) {
        let lhs = eval_numeric(&x.scale(&a).add(&y), 200);
        let rhs = eval_numeric(&x, 200).value() * a.to_float(200) + eval_numeric(&y, 200).value();
        prop_assert!(lhs.abs_diff_f64(&Float::with_val(200, rhs)) < 1e-40);
    }

    #[test]
    fn json_round_trip(x in small_value()) {
        let s = serde_json::to_string(&x).unwrap();
        let back: SymbolicValue = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(back, x);
    }
}
