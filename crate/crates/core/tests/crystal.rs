use std::collections::BTreeMap;

use proptest::prelude::*;
use rickard::crystal::{
    cactus_apply, crystal_from_highest, dominant_weights_within, isomorphism, schutzenberger, tensor,
    verify_cactus_relations,
};
use rickard::{build_cartan, CartanType, Weight};

/// Weight multiset of SSYT of shape `parts` with entries `1..=k`, as
/// `sl_k` weights `μ_i = c_i - c_{i+1}`.
fn ssyt_character(parts: &[usize], k: usize) -> BTreeMap<Weight, usize> {
    let cells: Vec<(usize, usize)> = parts.iter().enumerate().flat_map(|(r, &l)| (0..l).map(move |c| (r, c))).collect();
    let mut fill = vec![vec![0usize; 0]; parts.len()];
    for (r, &l) in parts.iter().enumerate() {
        fill[r] = vec![0; l];
    }
    let mut out = BTreeMap::new();
    fn go(
        idx: usize,
        cells: &[(usize, usize)],
        fill: &mut Vec<Vec<usize>>,
        k: usize,
        out: &mut BTreeMap<Weight, usize>,
    ) {
        if idx == cells.len() {
            let mut content = vec![0i64; k + 1];
            for x in fill.iter().flatten() {
                content[*x] += 1;
            }
            let w = Weight((1..k).map(|i| content[i] - content[i + 1]).collect());
            *out.entry(w).or_default() += 1;
            return;
        }
        let (r, c) = cells[idx];
        let lo_row = if c > 0 { fill[r][c - 1] } else { 1 };
        let lo_col = if r > 0 { fill[r - 1][c] + 1 } else { 1 };
        for v in lo_row.max(lo_col)..=k {
            fill[r][c] = v;
            go(idx + 1, cells, fill, k, out);
        }
        fill[r][c] = 0;
    }
    go(0, &cells, &mut fill, k, &mut out);
    out
}

fn partition_of(lam: &Weight) -> Vec<usize> {
    let r = lam.rank();
    let mut parts: Vec<usize> = (0..r).map(|i| lam.0[i..].iter().sum::<i64>() as usize).collect();
    while parts.last() == Some(&0) {
        parts.pop();
    }
    parts
}

#[test]
fn type_a_characters_match_ssyt() {
    for r in 1..=3 {
        let d = build_cartan(CartanType::A, r).unwrap();
        for lam in dominant_weights_within(&d, 200) {
            let c = crystal_from_highest(&d, &lam, 1000).unwrap();
            let want = ssyt_character(&partition_of(&lam), r + 1);
            assert_eq!(c.character(), want, "A{r} {lam}");
        }
    }
}

#[test]
fn d4_fundamental_dimensions() {
    let d = build_cartan(CartanType::D, 4).unwrap();
    let dims: Vec<usize> = (0..4)
        .map(|i| crystal_from_highest(&d, &Weight::fundamental(4, i), 1000).unwrap().len())
        .collect();
    assert_eq!(dims, vec![8, 28, 8, 8]);
}

#[test]
fn small_crystal_shape() {
    let d = build_cartan(CartanType::A, 2).unwrap();
    let c = crystal_from_highest(&d, &Weight(vec![1, 0]), 10).unwrap();
    assert_eq!(c.len(), 3);
    assert_eq!(c.edge_count(), 2);
    assert_eq!(c.highest().len(), 1);
    assert_eq!(c.lowest().len(), 1);
}

#[test]
fn node_bound_is_enforced() {
    let d = build_cartan(CartanType::A, 3).unwrap();
    assert!(crystal_from_highest(&d, &Weight(vec![2, 2, 2]), 50).is_err());
}

#[test]
fn tensor_product_decomposes() {
    let d = build_cartan(CartanType::A, 2).unwrap();
    let v = crystal_from_highest(&d, &Weight(vec![1, 0]), 10).unwrap();
    let vv = tensor(&v, &v).unwrap();
    let mut comps: Vec<usize> = vv.components().iter().map(Vec::len).collect();
    comps.sort();
    assert_eq!(comps, vec![3, 6]);
    let sym = crystal_from_highest(&d, &Weight(vec![2, 0]), 10).unwrap();
    assert!(isomorphism(&sym, &sym).is_some());
}

#[test]
fn cactus_on_a3_omega2() {
    let d = build_cartan(CartanType::A, 3).unwrap();
    let c = crystal_from_highest(&d, &Weight(vec![0, 1, 0]), 100).unwrap();
    let r = verify_cactus_relations(&c);
    assert!(r.passed(), "{:?}", r.failures);
    let all = vec![0, 1, 2];
    let xi = schutzenberger(&c, &all).unwrap();
    assert!(xi.is_bijection());
    assert!(xi.compose(&xi).is_identity());
    // ξ sends the highest weight node to the lowest
    assert_eq!(xi.apply(c.highest()[0]), c.lowest()[0]);
    let twice = cactus_apply(&c, &[all.clone(), all]).unwrap();
    assert!(twice.is_identity());
}

fn weight_strategy() -> impl Strategy<Value = (usize, Weight)> {
    (1usize..=3).prop_flat_map(|r| (Just(r), proptest::collection::vec(0i64..=2, r).prop_map(Weight)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn kashiwara_axioms((r, lam) in weight_strategy()) {
        let d = build_cartan(CartanType::A, r).unwrap();
        let c = crystal_from_highest(&d, &lam, 1000).unwrap();
        prop_assert_eq!(c.len(), usize::try_from(d.weyl_dimension(&lam)).unwrap());
        for b in 0..c.len() {
            for i in 0..r {
                let pair = c.phi(b, i) - c.epsilon(b, i);
                prop_assert_eq!(pair, c.weight(b).0[i]);
                if let Some(x) = c.f(b, i) {
                    prop_assert_eq!(c.e(x, i), Some(b));
                    prop_assert_eq!(c.weight(x), &c.weight(b).sub(&d.alpha(i)));
                }
            }
        }
        prop_assert!(c.validate().passed());
    }

    #[test]
    fn schutzenberger_reverses_weights((r, lam) in weight_strategy()) {
        let d = build_cartan(CartanType::A, r).unwrap();
        let c = crystal_from_highest(&d, &lam, 1000).unwrap();
        let all: Vec<usize> = (0..r).collect();
        let xi = schutzenberger(&c, &all).unwrap();
        for b in 0..c.len() {
            let w = d.act(d.w0().letters(), c.weight(b));
            prop_assert_eq!(c.weight(xi.apply(b)), &w);
        }
    }
}
