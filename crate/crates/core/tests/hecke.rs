use std::collections::HashMap;

use proptest::prelude::*;
use rickard::hecke::{
    cell_module, cycle_type, kl_polynomials, left_cells, long_cycle_is_signed_permutation, specht_character,
    verify_evacuation_theorem, verify_left_cells, verify_promotion_theorem, KLTable,
};
use rickard::tableaux::{rsk, syt_enumerate, Partition};

type P = Vec<i64>;

fn trim(mut p: P) -> P {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

fn add(a: &P, b: &P) -> P {
    let mut r = vec![0; a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        r[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        r[i] += c;
    }
    trim(r)
}

fn mul(a: &P, b: &P) -> P {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut r = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            r[i + j] += x * y;
        }
    }
    trim(r)
}

fn len(w: &[u8]) -> usize {
    (0..w.len()).flat_map(|a| (a + 1..w.len()).map(move |b| (a, b))).filter(|&(a, b)| w[a] > w[b]).count()
}

/// Bruhat order by rank matrices: `x ≤ w` iff `x[i,j] ≤ w[i,j]` for all
/// `i, j`, with `v[i,j] = #{a ≤ i : v(a) ≥ j}`.
fn le(x: &[u8], w: &[u8]) -> bool {
    let n = x.len();
    (0..n).all(|i| {
        (1..=n as u8).all(|j| {
            let cx = x[..=i].iter().filter(|&&v| v >= j).count();
            let cw = w[..=i].iter().filter(|&&v| v >= j).count();
            cx <= cw
        })
    })
}

struct Oracle {
    r: HashMap<(Vec<u8>, Vec<u8>), P>,
}

impl Oracle {
    /// R-polynomials by the right-descent recursion.
    fn r(&mut self, x: &[u8], w: &[u8]) -> P {
        if let Some(p) = self.r.get(&(x.to_vec(), w.to_vec())) {
            return p.clone();
        }
        let out = if !le(x, w) {
            vec![]
        } else if x == w {
            vec![1]
        } else {
            let s = (0..w.len() - 1).find(|&i| w[i] > w[i + 1]).unwrap();
            let mut ws = w.to_vec();
            ws.swap(s, s + 1);
            let mut xs = x.to_vec();
            xs.swap(s, s + 1);
            if x[s] > x[s + 1] {
                self.r(&xs, &ws)
            } else {
                let a = mul(&vec![-1, 1], &self.r(x, &ws));
                let b = mul(&vec![0, 1], &self.r(&xs, &ws));
                add(&a, &b)
            }
        };
        self.r.insert((x.to_vec(), w.to_vec()), out.clone());
        out
    }
}

/// `P_{x,w}` from `q^d P̄ - P = Σ_{x<y≤w} R_{x,y} P_{y,w}` by descending
/// length of `x`.
fn oracle_table(n: usize) -> HashMap<(Vec<u8>, Vec<u8>), P> {
    let kl = kl_polynomials(n, n).unwrap();
    let els = kl.poset.elements.clone();
    let mut o = Oracle { r: HashMap::new() };
    let mut p: HashMap<(Vec<u8>, Vec<u8>), P> = HashMap::new();
    for w in &els {
        let mut xs: Vec<&Vec<u8>> = els.iter().filter(|x| le(x, w)).collect();
        xs.sort_by_key(|x| std::cmp::Reverse(len(x)));
        for x in xs {
            if x == w {
                p.insert((x.clone(), w.clone()), vec![1]);
                continue;
            }
            let mut rhs = vec![];
            for y in els.iter().filter(|y| *y != x && le(x, y) && le(y, w)) {
                rhs = add(&rhs, &mul(&o.r(x, y), &p[&(y.clone(), w.clone())]));
            }
            let d = len(w) - len(x);
            let keep = (d - 1) / 2;
            let pxw: P = trim((0..=keep).map(|i| -rhs.get(i).copied().unwrap_or(0)).collect());
            p.insert((x.clone(), w.clone()), pxw);
        }
    }
    p
}

fn check_against_oracle(n: usize) {
    let kl = kl_polynomials(n, n).unwrap();
    let oracle = oracle_table(n);
    let els = &kl.poset.elements;
    for (xi, x) in els.iter().enumerate() {
        for (wi, w) in els.iter().enumerate() {
            let want = oracle.get(&(x.clone(), w.clone())).cloned().unwrap_or_default();
            assert_eq!(trim(kl.poly(xi, wi).clone()), want, "P_{{{x:?},{w:?}}}");
        }
    }
}

#[test]
fn kl_matches_r_polynomial_oracle_s3_s4() {
    check_against_oracle(3);
    check_against_oracle(4);
}

#[test]
fn kl_matches_r_polynomial_oracle_s5() {
    check_against_oracle(5);
}

#[test]
fn s4_nontrivial_polynomials() {
    let kl = kl_polynomials(4, 4).unwrap();
    let els = &kl.poset.elements;
    let mut nontriv = Vec::new();
    for x in 0..els.len() {
        for w in 0..els.len() {
            let p = kl.poly(x, w);
            if p.len() > 1 {
                assert_eq!(p, &vec![1, 1]);
                nontriv.push(els[w].clone());
            }
        }
    }
    nontriv.sort();
    nontriv.dedup();
    assert_eq!(nontriv, vec![vec![3, 4, 1, 2], vec![4, 2, 3, 1]]);
}

#[test]
fn kl_bound_rejected() {
    assert!(kl_polynomials(7, 6).is_err());
}

fn table(n: usize) -> KLTable {
    kl_polynomials(n, n).unwrap()
}

#[test]
fn left_cells_are_rsk_fibers() {
    for n in 1..=5 {
        let kl = table(n);
        let cells = left_cells(&kl);
        let total: usize = Partition::all(n).iter().map(|l| syt_enumerate(l).len()).sum();
        assert_eq!(cells.len(), total, "S{n}");
        for c in &cells {
            let qs: Vec<_> = c
                .iter()
                .map(|&k| {
                    let w: Vec<usize> = kl.poset.elements[k].iter().map(|&v| v as usize).collect();
                    rsk(&w).unwrap().q
                })
                .collect();
            assert!(qs.windows(2).all(|p| p[0] == p[1]));
        }
        assert!(verify_left_cells(&kl).unwrap().passed());
    }
}

#[test]
fn cell_characters_match_murnaghan_nakayama() {
    for n in 1..=5 {
        let kl = table(n);
        for shape in Partition::all(n) {
            let cm = cell_module(&kl, &shape).unwrap();
            assert_eq!(cm.dim(), syt_enumerate(&shape).len());
            for w in &kl.poset.elements {
                assert_eq!(cm.character(w), specht_character(&shape, &cycle_type(w)));
            }
        }
    }
}

#[test]
fn character_table_s3() {
    let rho = |p: Vec<usize>| Partition::new(p).unwrap();
    let std = rho(vec![2, 1]);
    assert_eq!(specht_character(&std, &rho(vec![1, 1, 1])), 2);
    assert_eq!(specht_character(&std, &rho(vec![2, 1])), 0);
    assert_eq!(specht_character(&std, &rho(vec![3])), -1);
    assert_eq!(specht_character(&rho(vec![1, 1, 1]), &rho(vec![2, 1])), -1);
}

#[test]
fn evacuation_theorem_through_s5() {
    for n in 1..=5 {
        let kl = table(n);
        for shape in Partition::all(n) {
            let r = verify_evacuation_theorem(&kl, &shape).unwrap();
            assert!(r.passed(), "{shape}: {:?}", r.failures);
        }
    }
}

#[test]
fn promotion_theorem_rectangles_and_controls() {
    let kl4 = table(4);
    let kl6 = table(6);
    for (kl, parts) in [(&kl4, vec![2, 2]), (&kl6, vec![3, 3]), (&kl6, vec![2, 2, 2])] {
        let shape = Partition::new(parts).unwrap();
        let r = verify_promotion_theorem(kl, &shape).unwrap();
        assert!(r.passed(), "{shape}: {:?}", r.failures);
    }
    let kl3 = table(3);
    let kl5 = table(5);
    assert!(!long_cycle_is_signed_permutation(&kl3, &Partition::new(vec![2, 1]).unwrap()).unwrap());
    assert!(!long_cycle_is_signed_permutation(&kl5, &Partition::new(vec![3, 2]).unwrap()).unwrap());
}

fn matmul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    (0..a.len())
        .map(|i| (0..b[0].len()).map(|j| (0..b.len()).map(|k| a[i][k] * b[k][j]).sum()).collect())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cell_module_is_representation(idx in 0usize..120, jdx in 0usize..120) {
        let kl = table(5);
        let x = &kl.poset.elements[idx];
        let y = &kl.poset.elements[jdx];
        let xy: Vec<u8> = y.iter().map(|&v| x[v as usize - 1]).collect();
        for shape in Partition::all(5) {
            let cm = cell_module(&kl, &shape).unwrap();
            let lhs = cm.perm_matrix(&xy);
            let rhs = matmul(&cm.perm_matrix(x), &cm.perm_matrix(y));
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn kl_constant_term_is_one(idx in 0usize..120, jdx in 0usize..120) {
        let kl = table(5);
        let (x, w) = (&kl.poset.elements[idx], &kl.poset.elements[jdx]);
        let p = kl.poly(idx, jdx);
        if le(x, w) {
            prop_assert_eq!(p.first().copied(), Some(1));
            prop_assert!(2 * (p.len() - 1) < (len(w) - len(x)).max(1));
        } else {
            prop_assert!(p.is_empty());
        }
    }
}
