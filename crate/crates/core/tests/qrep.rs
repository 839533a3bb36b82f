use std::collections::BTreeMap;

use proptest::prelude::*;
use rickard::laurent::quantum_int;
use rickard::markedword::{self, MarkedWord};
use rickard::qrep::{
    build_tensor_module, marked_ratio_check, verify_braid, verify_cautis_relations, verify_full_twist,
    verify_rickard_normalization, verify_w0_chevalley, Chevalley, Convention, OperatorExpr, WeightModule,
};
use rickard::{LaurentInt, Weight};

const EPS: Convention = Convention { epsilon: 1 };

fn module(k: usize, n: usize) -> WeightModule {
    build_tensor_module(k, n, 4096).unwrap()
}

/// Weight multiplicities of `V^{⊗n}` by counting words over `1..=k`.
fn word_weights(k: usize, n: usize) -> BTreeMap<Weight, usize> {
    let mut out = BTreeMap::new();
    let total = k.pow(n as u32);
    for code in 0..total {
        let mut content = vec![0i64; k];
        let mut c = code;
        for _ in 0..n {
            content[c % k] += 1;
            c /= k;
        }
        let w = Weight((0..k - 1).map(|i| content[i] - content[i + 1]).collect());
        *out.entry(w).or_default() += 1;
    }
    out
}

#[test]
fn weight_spaces_match_word_count() {
    for k in 2..=4 {
        for n in 1..=3 {
            let m = module(k, n);
            let want = word_weights(k, n);
            assert_eq!(m.dim(), k.pow(n as u32));
            for (w, &d) in &want {
                assert_eq!(m.weight_dim(w), d, "sl{k} V^{n} at {w}");
            }
            assert_eq!(m.weights().count(), want.len());
        }
    }
}

fn on_weights(m: &WeightModule, f: impl Fn(&Weight) -> LaurentInt) -> OperatorExpr {
    m.identity().scale_by_weight(f)
}

/// `[E_i, F_i] = [μ_i]` and the quantum Serre relations, assembled from
/// products of the generators.
#[test]
fn generator_relations_from_scratch() {
    for (k, n) in [(2, 1), (2, 2), (2, 4), (3, 2), (3, 3), (4, 2)] {
        let m = module(k, n);
        let r = k - 1;
        for i in 0..r {
            let comm = m.e(i).compose(m.f(i)).sub(&m.f(i).compose(m.e(i)));
            let want = on_weights(&m, |mu| quantum_int(mu.0[i] as i32));
            assert!(comm.equals(&want), "sl{k} V^{n}: [E{i},F{i}]");
            for j in 0..r {
                if i == j {
                    continue;
                }
                assert!(m.e(i).compose(m.f(j)).equals(&m.f(j).compose(m.e(i))));
                if i.abs_diff(j) == 1 {
                    let two = quantum_int(2);
                    for x in [m.e(i), m.f(i)] {
                        let y = if std::ptr::eq(x, m.e(i)) { m.e(j) } else { m.f(j) };
                        let serre = x
                            .compose(x)
                            .compose(y)
                            .sub(&x.compose(y).compose(x).scale(&two))
                            .add(&y.compose(x).compose(x));
                        assert!(serre.is_zero(), "Serre ({i},{j}) on sl{k} V^{n}");
                    }
                }
            }
        }
        assert!(m.verify_relations().passed());
        assert!(m.verify_t_operators().unwrap().passed());
    }
}

#[test]
fn lusztig_t_is_invertible_and_braids() {
    let m = module(3, 3);
    let ts = m.lusztig_ts().unwrap();
    for t in &ts {
        let inv = m.invert(t).unwrap();
        assert!(t.compose(&inv).equals(&m.identity()));
    }
    let lhs = ts[0].compose(&ts[1]).compose(&ts[0]);
    let rhs = ts[1].compose(&ts[0]).compose(&ts[1]);
    assert!(lhs.equals(&rhs));
    let words = vec![vec![0, 1, 0], vec![1, 0, 1]];
    assert!(verify_braid(&m, &words).unwrap().passed());
}

#[test]
fn t_maps_weight_spaces_by_reflection() {
    let m = module(4, 2);
    let d = m.datum().clone();
    for i in 0..3 {
        let t = m.lusztig_t(i).unwrap();
        for (src, b) in t.blocks() {
            assert_eq!(b.target, d.simple_reflection(i, src));
        }
    }
}

#[test]
fn suite_checks_pass_on_all_modules() {
    let mut mods: Vec<(usize, usize)> = (2..=4).flat_map(|k| (1..=3).map(move |n| (k, n))).collect();
    mods.push((2, 4));
    for (k, n) in mods {
        let m = module(k, n);
        let (w0, eps) = verify_w0_chevalley(&m).unwrap();
        assert!(w0.passed(), "sl{k} V^{n}");
        assert_eq!(eps, Some(1));
        assert!(verify_cautis_relations(&m, EPS).unwrap().passed());
        assert!(verify_rickard_normalization(&m, EPS).unwrap().passed());
        assert!(verify_full_twist(&m, EPS).unwrap().passed());
    }
}

#[test]
fn basis_bound_rejected() {
    assert!(build_tensor_module(4, 3, 10).is_err());
    assert!(build_tensor_module(1, 3, 10).is_err());
}

#[test]
fn marked_word_parse_and_display() {
    let a = MarkedWord::parse("1,2,_1", Chevalley::F).unwrap();
    assert_eq!(a.letters, vec![0, 1, 0]);
    assert_eq!(a.mark, 2);
    assert_eq!(MarkedWord::parse(&a.to_string(), Chevalley::F).unwrap(), a);
    assert!(MarkedWord::parse("1,2,1", Chevalley::F).is_err());
}

fn sl3_sl4_pairs() -> Vec<(usize, MarkedWord)> {
    let mut out = Vec::new();
    for k in [3, 4] {
        let m = module(k, 1);
        let d = m.datum();
        let w = d.w0().letters().to_vec();
        for mark in 0..w.len() {
            for fl in [Chevalley::E, Chevalley::F] {
                out.push((k, MarkedWord::new(w.clone(), mark, fl).unwrap()));
            }
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn marked_ratios_follow_traces(idx in 0usize..18, pick in 0usize..1000, n in 2usize..=3, wsel in 0usize..1000) {
        let pairs = sl3_sl4_pairs();
        let (k, a) = pairs[idx % pairs.len()].clone();
        let m = module(k, n);
        let d = m.datum().clone();
        let orbit: Vec<MarkedWord> = markedword::orbit(&d, &a).into_iter().filter(|b| b.is_reduced(&d)).collect();
        let b = &orbit[pick % orbit.len()];
        let ws: Vec<Weight> = m.weights().cloned().collect();
        let lam = &ws[wsel % ws.len()];
        let ops = m.rickard_classes(EPS).unwrap();
        let (ok, _, trace, _) = marked_ratio_check(&m, &ops, &a, b, lam, EPS).unwrap();
        prop_assert!(ok, "{a} -> {b} at {lam}");
        prop_assert!(trace.steps.iter().all(|s| (-1..=1).contains(&s.shift)));
        let (_, conflict) = markedword::path_independence(&d, &a, lam).unwrap();
        prop_assert!(conflict.is_none());
        let back = markedword::replay(&d, &trace, lam).unwrap();
        prop_assert_eq!(&back, b);
    }
}
