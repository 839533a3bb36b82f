use proptest::prelude::*;
use rickard::zigzag::{
    apply_and_cohomology, build_zigzag, test_modules, theta_on_complex, theta_prime_on_complex, theta_word,
    verify_minimization, verify_texactness, Bimodule, Module, ModuleComplex, ZigzagAlgebra,
};
use rickard::{build_cartan, CartanType};

fn alg(ty: CartanType, r: usize) -> ZigzagAlgebra {
    build_zigzag(&build_cartan(ty, r).unwrap()).unwrap()
}

/// `χ(Θ_w M)` from `[Θ_i M] = [M] - dim(e_i M) [A e_i]`.
fn euler_oracle(a: &ZigzagAlgebra, word: &[usize], dimv: &[usize]) -> Vec<i64> {
    let d = a.datum();
    let mut v: Vec<i64> = dimv.iter().map(|&x| x as i64).collect();
    for &i in word.iter().rev() {
        let ei = v[i];
        v[i] -= 2 * ei;
        for j in d.neighbors(i) {
            v[j] -= ei;
        }
    }
    v
}

#[test]
fn dimensions() {
    for (ty, r, edges) in [(CartanType::A, 1, 0), (CartanType::A, 2, 1), (CartanType::A, 4, 3), (CartanType::D, 4, 3)] {
        let a = alg(ty, r);
        assert_eq!(a.dim(), 2 * r + 2 * edges);
        assert!(a.validate().passed());
        assert!(Bimodule::regular(&a).is_bimodule(&a));
    }
}

#[test]
fn rank_one_examples() {
    let a = alg(CartanType::A, 1);
    let theta = theta_word(&a, &[0], true);
    let k = Module::simple(&a, 0);
    let r = Module::projective(&a, 0);
    let hk = apply_and_cohomology(&a, &theta, &k);
    assert_eq!(hk.len(), 1);
    assert_eq!(hk[0].0, -1);
    assert!(hk[0].1.is_isomorphic(&k, &a));
    let hr = apply_and_cohomology(&a, &theta, &r);
    assert_eq!(hr.len(), 1);
    assert_eq!(hr[0].0, -1);
    assert!(hr[0].1.is_isomorphic(&r.twist(&a), &a));
}

#[test]
fn a2_w0_sends_s1_to_s2() {
    let a = alg(CartanType::A, 2);
    let th = theta_word(&a, &[0, 1, 0], true);
    let h = apply_and_cohomology(&a, &th, &Module::simple(&a, 0));
    assert_eq!(h.len(), 1);
    assert_eq!(h[0].0, -2);
    assert!(h[0].1.is_isomorphic(&Module::simple(&a, 1), &a));
}

#[test]
fn texactness_on_small_data() {
    for (ty, r) in [(CartanType::A, 1), (CartanType::A, 2), (CartanType::A, 3), (CartanType::D, 4)] {
        let rep = verify_texactness(&build_cartan(ty, r).unwrap()).unwrap();
        assert!(rep.passed(), "{ty}{r}: {:?}", rep.failures);
    }
}

#[test]
fn distinct_modules_not_isomorphic() {
    let a = alg(CartanType::A, 2);
    assert!(!Module::simple(&a, 0).is_isomorphic(&Module::simple(&a, 1), &a));
    assert!(!Module::simple(&a, 0).is_isomorphic(&Module::projective(&a, 0), &a));
}

#[test]
fn adjoint_inverts() {
    let a = alg(CartanType::A, 3);
    for m in test_modules(&a) {
        for i in 0..3 {
            let c = ModuleComplex::concentrated(m.clone());
            let back = theta_prime_on_complex(&a, i, &theta_on_complex(&a, i, &c));
            let h = back.cohomology(&a);
            assert_eq!(h.len(), 1, "{} at {i}", m.name);
            assert_eq!(h[0].0, 0);
            assert!(h[0].1.is_isomorphic(&m, &a));
        }
    }
}

fn word_strategy() -> impl Strategy<Value = (usize, Vec<usize>)> {
    (1usize..=3).prop_flat_map(|r| (Just(r), proptest::collection::vec(0..r, 1..=4)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn associativity(x in 0usize..100, y in 0usize..100, z in 0usize..100) {
        let a = alg(CartanType::A, 3);
        let n = a.dim();
        let (x, y, z) = (x % n, y % n, z % n);
        let l = a.mul(x, y).and_then(|xy| a.mul(xy, z));
        let r = a.mul(y, z).and_then(|yz| a.mul(x, yz));
        prop_assert_eq!(l, r);
    }

    #[test]
    fn bimodule_complex_matches_cone((r, word) in word_strategy()) {
        let a = alg(CartanType::A, r);
        let c = theta_word(&a, &word, true);
        prop_assert!(c.d_squared_zero(&a));
        prop_assert!(verify_minimization(&a, &word).passed());
        for m in test_modules(&a) {
            let applied = c.apply(&a, &m);
            prop_assert!(applied.d_squared_zero());
            prop_assert_eq!(applied.euler_dim_vector(r), euler_oracle(&a, &word, &m.dim_vector(r)));
        }
    }
}
