use num_bigint::BigInt;
use proptest::prelude::*;
use rickard::cartan::verify_datum;
use rickard::{build_cartan, CartanType, Weight};

#[test]
fn root_counts_and_coxeter_numbers() {
    let cases = [
        (CartanType::A, 1, 1, 2),
        (CartanType::A, 3, 6, 4),
        (CartanType::A, 5, 15, 6),
        (CartanType::D, 4, 12, 6),
        (CartanType::D, 5, 20, 8),
        (CartanType::E, 6, 36, 12),
        (CartanType::E, 7, 63, 18),
        (CartanType::E, 8, 120, 30),
    ];
    for (ty, r, roots, h) in cases {
        let d = build_cartan(ty, r).unwrap();
        assert_eq!(d.positive_roots().len(), roots, "{ty}{r}");
        assert_eq!(d.coxeter_number(), h, "{ty}{r}");
        assert_eq!(d.w0().len(), roots);
    }
}

#[test]
fn reduced_word_counts() {
    let count = |r| {
        let d = build_cartan(CartanType::A, r).unwrap();
        d.reduced_words(d.w0(), 10_000).len()
    };
    assert_eq!(count(2), 2);
    assert_eq!(count(3), 16);
    assert_eq!(count(4), 768);
}

#[test]
fn datum_checks_pass() {
    for (ty, r) in [(CartanType::A, 1), (CartanType::A, 4), (CartanType::D, 4), (CartanType::D, 5), (CartanType::E, 6)] {
        let d = build_cartan(ty, r).unwrap();
        let rep = verify_datum(&d, 20).unwrap();
        assert!(rep.passed(), "{ty}{r}: {:?}", rep.failures);
    }
}

#[test]
fn invalid_data_rejected() {
    assert!(build_cartan(CartanType::A, 0).is_err());
    assert!(build_cartan(CartanType::D, 3).is_err());
    assert!(build_cartan(CartanType::E, 9).is_err());
    assert!(Weight::parse("1,x").is_err());
}

#[test]
fn diagram_automorphism() {
    let a4 = build_cartan(CartanType::A, 4).unwrap();
    assert_eq!(a4.tau(&a4.nodes()), vec![3, 2, 1, 0]);
    let d4 = build_cartan(CartanType::D, 4).unwrap();
    assert_eq!(d4.tau(&d4.nodes()), vec![0, 1, 2, 3]);
    let d5 = build_cartan(CartanType::D, 5).unwrap();
    assert_eq!(d5.tau(&d5.nodes()), vec![0, 1, 2, 4, 3]);
}

/// Hook-content formula for `sl_k`.
fn hook_content(lam: &Weight) -> BigInt {
    let k = lam.rank() + 1;
    let parts: Vec<usize> = (0..lam.rank()).map(|i| lam.0[i..].iter().sum::<i64>() as usize).collect();
    let mut num = BigInt::from(1);
    let mut den = BigInt::from(1);
    for (r, &len) in parts.iter().enumerate() {
        for c in 0..len {
            num *= (k + c - r) as i64;
            let arm = len - c - 1;
            let leg = parts[r + 1..].iter().filter(|&&l| l > c).count();
            den *= (arm + leg + 1) as i64;
        }
    }
    num / den
}

fn a_weight() -> impl Strategy<Value = Weight> {
    (1usize..=5).prop_flat_map(|r| proptest::collection::vec(0i64..=3, r).prop_map(Weight))
}

proptest! {
    #[test]
    fn weyl_dimension_matches_hook_content(lam in a_weight()) {
        let d = build_cartan(CartanType::A, lam.rank()).unwrap();
        prop_assert_eq!(d.weyl_dimension(&lam), hook_content(&lam));
    }

    #[test]
    fn w0_is_an_involution(lam in a_weight()) {
        let d = build_cartan(CartanType::A, lam.rank()).unwrap();
        let w0 = d.w0().letters().to_vec();
        let once = d.act(&w0, &lam);
        prop_assert_eq!(d.act(&w0, &once), lam.clone());
        let tau = d.tau(&d.nodes());
        let want = Weight(tau.iter().map(|&t| -lam.0[t]).collect());
        prop_assert_eq!(once, want);
    }

    #[test]
    fn simple_reflections_are_involutions(lam in a_weight(), i in 0usize..5) {
        let d = build_cartan(CartanType::A, lam.rank()).unwrap();
        let i = i % lam.rank();
        let s = d.simple_reflection(i, &lam);
        prop_assert_eq!(s.0[i], -lam.0[i]);
        prop_assert_eq!(d.simple_reflection(i, &s), lam);
    }
}
