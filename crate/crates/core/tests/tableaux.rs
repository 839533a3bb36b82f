use proptest::prelude::*;
use rickard::tableaux::{
    demotion, evacuation, partial_evacuation, promotion, promotion_order, rsk, rsk_inverse, syt_enumerate,
    verify_evacuation_bridge, verify_promotion_factorization, Partition, StandardTableau,
};

fn part(p: &[usize]) -> Partition {
    Partition::new(p.to_vec()).unwrap()
}

/// Counts SYT by removing the cell holding the largest entry (a corner).
fn count_syt(shape: &[usize]) -> u64 {
    if shape.iter().sum::<usize>() == 0 {
        return 1;
    }
    let mut total = 0;
    for r in 0..shape.len() {
        let next = shape.get(r + 1).copied().unwrap_or(0);
        if shape[r] > next {
            let mut s = shape.to_vec();
            s[r] -= 1;
            while s.last() == Some(&0) {
                s.pop();
            }
            total += count_syt(&s);
        }
    }
    total
}

fn lis(w: &[usize]) -> usize {
    let mut best = vec![1; w.len()];
    for i in 0..w.len() {
        for j in 0..i {
            if w[j] < w[i] {
                best[i] = best[i].max(best[j] + 1);
            }
        }
    }
    best.into_iter().max().unwrap_or(0)
}

fn lds(w: &[usize]) -> usize {
    let rev: Vec<usize> = w.iter().map(|&x| w.len() + 1 - x).collect();
    lis(&rev)
}

/// Promotion by jeu de taquin on raw rows: delete 1, slide the hole to an
/// outer corner, decrement, and write `n` there.
fn promotion_oracle(t: &StandardTableau) -> Vec<Vec<usize>> {
    let mut rows: Vec<Vec<usize>> = t.rows().to_vec();
    let n = t.size();
    let (mut r, mut c) = (0, 0);
    loop {
        let right = rows[r].get(c + 1).copied();
        let below = rows.get(r + 1).and_then(|row| row.get(c)).copied();
        match (right, below) {
            (None, None) => break,
            (Some(a), Some(b)) if b < a => {
                rows[r][c] = b;
                r += 1;
            }
            (Some(a), _) => {
                rows[r][c] = a;
                c += 1;
            }
            (None, Some(b)) => {
                rows[r][c] = b;
                r += 1;
            }
        }
    }
    for x in rows.iter_mut().flatten() {
        *x -= 1;
    }
    rows[r][c] = n;
    rows
}

fn perm_strategy(max: usize) -> impl Strategy<Value = Vec<usize>> {
    (1..=max).prop_flat_map(|n| Just((1..=n).collect::<Vec<usize>>()).prop_shuffle())
}

#[test]
fn syt_counts_match_corner_recursion() {
    for n in 1..=8 {
        let mut total = 0u64;
        for shape in Partition::all(n) {
            let k = syt_enumerate(&shape).len() as u64;
            assert_eq!(k, count_syt(shape.parts()), "{shape}");
            assert_eq!(shape.hook_count(), k.into());
            total += k * k;
        }
        assert_eq!(total, (1..=n as u64).product::<u64>());
    }
}

#[test]
fn partitions_of_small_n() {
    let counts: Vec<usize> = (1..=8).map(|n| Partition::all(n).len()).collect();
    assert_eq!(counts, vec![1, 2, 3, 5, 7, 11, 15, 22]);
}

#[test]
fn parse_and_display_round_trip() {
    let t = StandardTableau::parse("1,2,4/3,5").unwrap();
    assert_eq!(t.to_string(), "1,2,4/3,5");
    assert_eq!(t.shape(), part(&[3, 2]));
    assert!(StandardTableau::parse("1,3/2,2").is_err());
    assert!(StandardTableau::parse("2,1").is_err());
}

#[test]
fn known_promotion_and_evacuation() {
    let t = StandardTableau::parse("1,2/3,4").unwrap();
    assert_eq!(promotion(&t).to_string(), "1,3/2,4");
    assert_eq!(evacuation(&t).to_string(), "1,2/3,4");
    let t = StandardTableau::parse("1,3/2").unwrap();
    assert_eq!(evacuation(&t).to_string(), "1,2/3");
}

#[test]
fn rectangle_promotion_order_divides_size() {
    for (shape, want) in [(part(&[2, 2]), 2), (part(&[3, 3]), 6), (part(&[2, 2, 2]), 6), (part(&[3, 3, 3]), 9)] {
        let o = promotion_order(&shape);
        assert_eq!(shape.size() % o, 0);
        assert_eq!(o, want, "{shape}");
    }
}

#[test]
fn bridges_hold_for_small_shapes() {
    for n in 2..=5 {
        for shape in Partition::all(n) {
            if syt_enumerate(&shape).len() > 10 {
                continue;
            }
            assert!(verify_evacuation_bridge(&shape, 1000).unwrap().passed(), "{shape}");
            assert!(verify_promotion_factorization(&shape, 1000).unwrap().passed(), "{shape}");
        }
    }
}

#[test]
fn rejects_bad_permutations() {
    assert!(rsk(&[1, 1, 2]).is_err());
    assert!(rsk(&[0, 1]).is_err());
}

proptest! {
    #[test]
    fn rsk_round_trip_and_greene(w in perm_strategy(9)) {
        let pair = rsk(&w).unwrap();
        prop_assert_eq!(pair.p.shape(), pair.q.shape());
        prop_assert_eq!(rsk_inverse(&pair).unwrap(), w.clone());
        let sh = pair.p.shape();
        prop_assert_eq!(sh.parts()[0], lis(&w));
        prop_assert_eq!(sh.rows(), lds(&w));
    }

    #[test]
    fn rsk_inverse_swaps_tableaux(w in perm_strategy(9)) {
        let mut inv = vec![0; w.len()];
        for (i, &x) in w.iter().enumerate() {
            inv[x - 1] = i + 1;
        }
        let a = rsk(&w).unwrap();
        let b = rsk(&inv).unwrap();
        prop_assert_eq!(a.p, b.q);
        prop_assert_eq!(a.q, b.p);
    }

    #[test]
    fn evacuation_matches_reverse_complement(w in perm_strategy(9)) {
        let n = w.len();
        let sharp: Vec<usize> = (0..n).map(|i| n + 1 - w[n - 1 - i]).collect();
        prop_assert_eq!(rsk(&sharp).unwrap().p, evacuation(&rsk(&w).unwrap().p));
    }

    #[test]
    fn promotion_matches_sliding_oracle(w in perm_strategy(9)) {
        let t = rsk(&w).unwrap().p;
        let p = promotion(&t);
        prop_assert_eq!(p.rows().to_vec(), promotion_oracle(&t));
        prop_assert_eq!(demotion(&p), t.clone());
        let e = evacuation(&t);
        prop_assert_eq!(evacuation(&e), t.clone());
        prop_assert_eq!(partial_evacuation(&t, t.size()), e);
    }
}
