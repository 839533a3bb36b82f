//! Simply-laced root data of types A, D, E (Bourbaki numbering), weights in
//! fundamental coordinates, and Weyl group words.
//!
//! Nodes are 0-based internally; reports print them 1-based.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{input, Error, Result};
use crate::matrix::Matrix;
use crate::ring::rat;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CartanType {
    A,
    D,
    E,
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            CartanType::A => 'A',
            CartanType::D => 'D',
            CartanType::E => 'E',
        };
        write!(f, "{c}")
    }
}

impl std::str::FromStr for CartanType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(CartanType::A),
            "D" | "d" => Ok(CartanType::D),
            "E" | "e" => Ok(CartanType::E),
            other => input(format!("unknown Cartan type {other:?} (expected A, D or E)")),
        }
    }
}

/// Integral weight in fundamental coordinates `λ_i = <h_i, λ>`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        Weight(v)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn add(&self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, c: i64) -> Weight {
        Weight(self.0.iter().map(|a| a * c).collect())
    }

    /// Parses comma-separated fundamental coordinates, e.g. `"1,0,2"`.
    pub fn parse(s: &str) -> Result<Weight> {
        s.split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Input(format!("bad weight coordinate {t:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Weight)
    }
}

impl std::ops::Index<usize> for Weight {
    type Output = i64;
    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// A word in the simple reflections together with the matrix of the element
/// it represents acting on root coordinates.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct WeylWord {
    letters: Vec<usize>,
    #[serde(skip)]
    action: Vec<Vec<i64>>,
}

impl WeylWord {
    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Matrix of the element on root coordinates; columns are images of the
    /// simple roots.
    pub fn action(&self) -> &[Vec<i64>] {
        &self.action
    }

    pub fn same_element(&self, other: &WeylWord) -> bool {
        self.action == other.action
    }
}

impl fmt::Debug for WeylWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for WeylWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.letters.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum BraidMoveKind {
    /// `(a, b) -> (b, a)` with `a_ab = 0`
    Commute,
    /// `(a, b, a) -> (b, a, b)` with `a_ab = -1`
    Braid,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct BraidMove {
    pub kind: BraidMoveKind,
    pub pos: usize,
}

#[derive(Clone)]
pub struct CartanDatum {
    ty: CartanType,
    rank: usize,
    cartan: Vec<Vec<i64>>,
    cartan_inv: Vec<Vec<BigRational>>,
    positive_roots: Vec<Vec<i64>>,
    rho_vee: Vec<BigRational>,
    w0: WeylWord,
}

impl fmt::Debug for CartanDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.ty, self.rank)
    }
}

/// Edges of the Dynkin diagram, 0-based, Bourbaki numbering.
fn dynkin_edges(ty: CartanType, n: usize) -> Vec<(usize, usize)> {
    match ty {
        CartanType::A => (1..n).map(|i| (i - 1, i)).collect(),
        CartanType::D => {
            let mut e: Vec<_> = (1..n - 1).map(|i| (i - 1, i)).collect();
            e.push((n - 3, n - 1));
            e
        }
        CartanType::E => {
            let mut e = vec![(0, 2), (1, 3), (2, 3)];
            e.extend((4..n).map(|i| (i - 1, i)));
            e
        }
    }
}

pub fn build_cartan(ty: CartanType, rank: usize) -> Result<CartanDatum> {
    let ok = match ty {
        CartanType::A => rank >= 1,
        CartanType::D => rank >= 4,
        CartanType::E => (6..=8).contains(&rank),
    };
    if !ok {
        return input(format!(
            "invalid rank {rank} for type {ty}: A needs rank >= 1, D rank >= 4, E rank in 6..=8"
        ));
    }
    let mut cartan = vec![vec![0i64; rank]; rank];
    for (i, row) in cartan.iter_mut().enumerate() {
        row[i] = 2;
    }
    for (a, b) in dynkin_edges(ty, rank) {
        cartan[a][b] = -1;
        cartan[b][a] = -1;
    }
    let cm: Matrix<BigRational> = Matrix::from_rows(
        cartan
            .iter()
            .map(|r| r.iter().map(|&x| rat(x, 1)).collect())
            .collect(),
    );
    let inv = cm.inverse().expect("finite type Cartan matrix is invertible");
    let cartan_inv = inv.row_vecs();

    let mut d = CartanDatum {
        ty,
        rank,
        cartan,
        cartan_inv,
        positive_roots: Vec::new(),
        rho_vee: Vec::new(),
        w0: WeylWord {
            letters: vec![],
            action: vec![],
        },
    };
    d.positive_roots = d.root_closure();
    let mut rv = vec![BigRational::zero(); rank];
    for r in &d.positive_roots {
        for (j, &c) in r.iter().enumerate() {
            rv[j] += rat(c, 2);
        }
    }
    d.rho_vee = rv;
    let all: Vec<usize> = (0..rank).collect();
    d.w0 = d.longest_element(&all);
    Ok(d)
}

impl CartanDatum {
    pub fn cartan_type(&self) -> CartanType {
        self.ty
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn nodes(&self) -> Vec<usize> {
        (0..self.rank).collect()
    }

    pub fn a(&self, i: usize, j: usize) -> i64 {
        self.cartan[i][j]
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn name(&self) -> String {
        format!("{}{}", self.ty, self.rank)
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut e = Vec::new();
        for i in 0..self.rank {
            for j in i + 1..self.rank {
                if self.cartan[i][j] == -1 {
                    e.push((i, j));
                }
            }
        }
        e
    }

    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        (0..self.rank).filter(|&j| self.cartan[i][j] == -1).collect()
    }

    /// Positive roots in root coordinates, sorted by height then lexicographically.
    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    pub fn coxeter_number(&self) -> usize {
        2 * self.positive_roots.len() / self.rank
    }

    /// Simple root `α_i` in fundamental coordinates (row `i` of the Cartan matrix).
    pub fn alpha(&self, i: usize) -> Weight {
        Weight(self.cartan[i].clone())
    }

    pub fn rho(&self) -> Weight {
        Weight(vec![1; self.rank])
    }

    /// `ρ∨` as coefficients on the simple coroots.
    pub fn rho_vee(&self) -> &[BigRational] {
        &self.rho_vee
    }

    /// `<λ, ρ∨>` (possibly half-integral).
    pub fn pair_rho_vee(&self, lambda: &Weight) -> BigRational {
        self.rho_vee
            .iter()
            .zip(&lambda.0)
            .map(|(c, &l)| c * BigInt::from(l))
            .sum()
    }

    /// `<2λ, ρ∨>`, always an integer.
    pub fn two_rho_vee(&self, lambda: &Weight) -> i64 {
        let v = self.pair_rho_vee(lambda) * BigInt::from(2);
        assert!(v.is_integer());
        v.to_integer().to_i64().unwrap()
    }

    /// Converts root coordinates to fundamental coordinates.
    pub fn root_to_weight(&self, c: &[i64]) -> Weight {
        Weight(
            (0..self.rank)
                .map(|i| (0..self.rank).map(|j| self.cartan[i][j] * c[j]).sum())
                .collect(),
        )
    }

    /// Rational root coordinates `C^{-1} λ`.
    pub fn rational_root_coords(&self, lambda: &Weight) -> Vec<BigRational> {
        self.cartan_inv
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&lambda.0)
                    .map(|(c, &l)| c * BigInt::from(l))
                    .sum()
            })
            .collect()
    }

    /// Integer root coordinates, or `None` outside the root lattice.
    pub fn root_coords(&self, lambda: &Weight) -> Option<Vec<i64>> {
        self.rational_root_coords(lambda)
            .into_iter()
            .map(|x| {
                if x.is_integer() {
                    x.to_integer().to_i64()
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn height(&self, v: &Weight) -> Result<i64> {
        match self.root_coords(v) {
            Some(c) => Ok(c.iter().sum()),
            None => input(format!("{v} is not in the root lattice")),
        }
    }

    /// Symmetric form `(λ, μ) = λ^T C^{-1} μ`.
    pub fn inner(&self, lambda: &Weight, mu: &Weight) -> BigRational {
        self.rational_root_coords(mu)
            .iter()
            .zip(&lambda.0)
            .map(|(c, &l)| c * BigInt::from(l))
            .sum()
    }

    /// `μ ≤ λ` in dominance order.
    pub fn dominated_by(&self, mu: &Weight, lambda: &Weight) -> bool {
        self.root_coords(&lambda.sub(mu))
            .is_some_and(|c| c.iter().all(|&x| x >= 0))
    }

    pub fn simple_reflection(&self, i: usize, lambda: &Weight) -> Weight {
        let li = lambda.0[i];
        Weight(
            lambda
                .0
                .iter()
                .zip(&self.cartan[i])
                .map(|(x, a)| x - li * a)
                .collect(),
        )
    }

    /// Applies `s_{i_1} ... s_{i_r}` to `λ` (rightmost letter first).
    pub fn act(&self, word: &[usize], lambda: &Weight) -> Weight {
        word.iter()
            .rev()
            .fold(lambda.clone(), |l, &i| self.simple_reflection(i, &l))
    }

    /// Reflection on root coordinates.
    fn reflect_root(&self, i: usize, beta: &[i64]) -> Vec<i64> {
        let p: i64 = (0..self.rank).map(|j| self.cartan[i][j] * beta[j]).sum();
        let mut out = beta.to_vec();
        out[i] -= p;
        out
    }

    fn root_closure(&self) -> Vec<Vec<i64>> {
        let mut seen: Vec<Vec<i64>> = Vec::new();
        let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
        for i in 0..self.rank {
            let mut e = vec![0; self.rank];
            e[i] = 1;
            queue.push_back(e);
        }
        while let Some(b) = queue.pop_front() {
            if seen.contains(&b) {
                continue;
            }
            for i in 0..self.rank {
                let r = self.reflect_root(i, &b);
                if r.iter().all(|&x| x >= 0) && r != b && !seen.contains(&r) {
                    queue.push_back(r);
                }
            }
            seen.push(b);
        }
        seen.sort_by_key(|r| (r.iter().sum::<i64>(), r.clone()));
        seen
    }

    fn action_matrix(&self, letters: &[usize]) -> Vec<Vec<i64>> {
        // column j = w(α_j)
        let mut cols: Vec<Vec<i64>> = (0..self.rank)
            .map(|j| {
                let mut e = vec![0; self.rank];
                e[j] = 1;
                e
            })
            .collect();
        for &i in letters.iter().rev() {
            for c in cols.iter_mut() {
                *c = self.reflect_root(i, c);
            }
        }
        (0..self.rank)
            .map(|r| cols.iter().map(|c| c[r]).collect())
            .collect()
    }

    pub fn word(&self, letters: &[usize]) -> Result<WeylWord> {
        if let Some(&bad) = letters.iter().find(|&&i| i >= self.rank) {
            return input(format!("node {} out of range for {}", bad + 1, self.name()));
        }
        Ok(WeylWord {
            letters: letters.to_vec(),
            action: self.action_matrix(letters),
        })
    }

    /// Image of a root-coordinate vector under the element.
    pub fn apply_to_root(&self, w: &WeylWord, beta: &[i64]) -> Vec<i64> {
        w.action
            .iter()
            .map(|row| row.iter().zip(beta).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `ℓ(w) = #{α > 0 : w(α) < 0}`.
    pub fn length(&self, w: &WeylWord) -> usize {
        self.positive_roots
            .iter()
            .filter(|r| self.apply_to_root(w, r).iter().any(|&x| x < 0))
            .count()
    }

    pub fn is_reduced(&self, w: &WeylWord) -> bool {
        self.length(w) == w.len()
    }

    /// Greedy reduced word for the longest element of the parabolic subgroup `W_J`.
    pub fn longest_element(&self, j: &[usize]) -> WeylWord {
        let mut letters: Vec<usize> = Vec::new();
        loop {
            let w = self.word(&letters).unwrap();
            let next = j.iter().copied().find(|&i| {
                let mut e = vec![0; self.rank];
                e[i] = 1;
                self.apply_to_root(&w, &e).iter().all(|&x| x >= 0)
            });
            match next {
                Some(i) => letters.push(i),
                None => return w,
            }
        }
    }

    pub fn w0(&self) -> &WeylWord {
        &self.w0
    }

    /// Number of positive roots supported on `J`.
    pub fn positive_root_count(&self, j: &[usize]) -> usize {
        self.positive_roots
            .iter()
            .filter(|r| r.iter().enumerate().all(|(k, &c)| c == 0 || j.contains(&k)))
            .count()
    }

    /// The involution `τ_J` with `α_{τ(i)} = -w_0^J α_i` on `J`, identity elsewhere.
    pub fn tau(&self, j: &[usize]) -> Vec<usize> {
        let w = self.longest_element(j);
        (0..self.rank)
            .map(|i| {
                if !j.contains(&i) {
                    return i;
                }
                let mut e = vec![0; self.rank];
                e[i] = 1;
                let img = self.apply_to_root(&w, &e);
                img.iter()
                    .position(|&x| x == -1)
                    .filter(|_| img.iter().map(|x| x.abs()).sum::<i64>() == 1)
                    .expect("-w0^J permutes simple roots of J")
            })
            .collect()
    }

    pub fn is_connected(&self, j: &[usize]) -> bool {
        if j.is_empty() {
            return false;
        }
        let mut seen = vec![j[0]];
        let mut stack = vec![j[0]];
        while let Some(x) = stack.pop() {
            for y in self.neighbors(x) {
                if j.contains(&y) && !seen.contains(&y) {
                    seen.push(y);
                    stack.push(y);
                }
            }
        }
        seen.len() == j.len()
    }

    /// All nonempty connected node subsets, each sorted, in size-then-lex order.
    pub fn connected_subdiagrams(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for mask in 1u32..(1 << self.rank) {
            let j: Vec<usize> = (0..self.rank).filter(|&k| mask & (1 << k) != 0).collect();
            if self.is_connected(&j) {
                out.push(j);
            }
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        out
    }

    /// Weyl dimension formula `Π <λ+ρ, α∨> / <ρ, α∨>`.
    pub fn weyl_dimension(&self, lambda: &Weight) -> BigInt {
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for r in &self.positive_roots {
            let pair = |l: &[i64]| -> i64 { r.iter().zip(l).map(|(c, x)| c * x).sum() };
            let lr: Vec<i64> = lambda.0.iter().map(|x| x + 1).collect();
            num *= BigInt::from(pair(&lr));
            den *= BigInt::from(pair(&vec![1; self.rank]));
        }
        assert!((&num % &den).is_zero());
        num / den
    }

    fn braid_neighbors(&self, w: &[usize]) -> Vec<(BraidMove, Vec<usize>)> {
        let mut out = Vec::new();
        for p in 0..w.len() {
            if p + 1 < w.len() && w[p] != w[p + 1] && self.cartan[w[p]][w[p + 1]] == 0 {
                let mut v = w.to_vec();
                v.swap(p, p + 1);
                out.push((BraidMove { kind: BraidMoveKind::Commute, pos: p }, v));
            }
            if p + 2 < w.len() && w[p] == w[p + 2] && self.cartan[w[p]][w[p + 1]] == -1 {
                let mut v = w.to_vec();
                let (a, b) = (w[p], w[p + 1]);
                v[p] = b;
                v[p + 1] = a;
                v[p + 2] = b;
                out.push((BraidMove { kind: BraidMoveKind::Braid, pos: p }, v));
            }
        }
        out
    }

    /// Shortest sequence of commutation and braid moves turning `w1` into `w2`.
    pub fn matsumoto_connect(&self, w1: &WeylWord, w2: &WeylWord) -> Result<Vec<BraidMove>> {
        if !self.is_reduced(w1) || !self.is_reduced(w2) {
            return input(format!("matsumoto_connect needs reduced words, got {w1} and {w2}"));
        }
        if !w1.same_element(w2) {
            return input(format!("{w1} and {w2} represent different elements"));
        }
        let start = w1.letters.clone();
        let goal = w2.letters.clone();
        let mut parent: HashMap<Vec<usize>, Option<(Vec<usize>, BraidMove)>> = HashMap::new();
        parent.insert(start.clone(), None);
        let mut queue = VecDeque::from([start]);
        while let Some(cur) = queue.pop_front() {
            if cur == goal {
                let mut moves = Vec::new();
                let mut node = cur;
                while let Some(Some((prev, mv))) = parent.get(&node) {
                    moves.push(*mv);
                    node = prev.clone();
                }
                moves.reverse();
                return Ok(moves);
            }
            for (mv, next) in self.braid_neighbors(&cur) {
                if !parent.contains_key(&next) {
                    parent.insert(next.clone(), Some((cur.clone(), mv)));
                    queue.push_back(next);
                }
            }
        }
        Err(Error::NotConnected(format!("{w1} -> {w2}")))
    }

    /// Reduced words of the element of `w` (connected by braid moves), in
    /// BFS order, at most `limit` of them.
    pub fn reduced_words(&self, w: &WeylWord, limit: usize) -> Vec<WeylWord> {
        let mut seen: BTreeMap<Vec<usize>, ()> = BTreeMap::new();
        let mut order = Vec::new();
        let mut queue = VecDeque::from([w.letters.clone()]);
        seen.insert(w.letters.clone(), ());
        while let Some(cur) = queue.pop_front() {
            order.push(cur.clone());
            if order.len() >= limit {
                break;
            }
            for (_, next) in self.braid_neighbors(&cur) {
                if seen.insert(next.clone(), ()).is_none() {
                    queue.push_back(next);
                }
            }
        }
        order
            .into_iter()
            .map(|l| WeylWord {
                letters: l,
                action: w.action.clone(),
            })
            .collect()
    }

    pub fn summary(&self) -> CartanSummary {
        CartanSummary {
            ty: self.ty.to_string(),
            rank: self.rank,
            cartan: self.cartan.clone(),
            positive_roots: self.positive_roots.clone(),
            w0: self.w0.letters.iter().map(|i| i + 1).collect(),
            tau: self.tau(&self.nodes()).iter().map(|i| i + 1).collect(),
            coxeter_number: self.coxeter_number(),
        }
    }
}

/// Serializable digest of a datum (nodes 1-based).
#[derive(Debug, Clone, Serialize)]
pub struct CartanSummary {
    #[serde(rename = "type")]
    pub ty: String,
    pub rank: usize,
    pub cartan: Vec<Vec<i64>>,
    pub positive_roots: Vec<Vec<i64>>,
    pub w0: Vec<usize>,
    pub tau: Vec<usize>,
    pub coxeter_number: usize,
}

/// Parses a 1-based, comma-separated node list.
pub fn parse_nodes(s: &str, rank: usize) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for t in s.split(',').filter(|t| !t.trim().is_empty()) {
        let i: usize = t
            .trim()
            .parse()
            .map_err(|_| Error::Input(format!("bad node {t:?}")))?;
        if i == 0 || i > rank {
            return input(format!("node {i} out of range 1..={rank}"));
        }
        out.push(i - 1);
    }
    Ok(out)
}

/// Coxeter relations, `w_0` involutive and antidominant on dominant
/// weights, `τ` an involution, and Matsumoto connectivity of reduced words.
pub fn verify_datum(d: &CartanDatum, max_words: usize) -> Result<crate::report::CheckReport> {
    let mut rep = crate::report::CheckReport::new("cartan", d.name());
    let r = d.rank();
    let id = d.word(&[])?;
    for i in 0..r {
        rep.record(d.a(i, i) == 2, false, || format!("a_{}{} != 2", i + 1, i + 1));
        for j in 0..r {
            rep.record(d.a(i, j) == d.a(j, i), false, || format!("a not symmetric at ({},{})", i + 1, j + 1));
            let m = match d.a(i, j) {
                2 => 1,
                0 => 2,
                _ => 3,
            };
            let w: Vec<usize> = (0..m).flat_map(|_| [i, j]).collect();
            rep.record(d.word(&w)?.same_element(&id), true, || format!("(s{} s{})^{m} != 1", i + 1, j + 1));
        }
    }
    let w0 = d.w0();
    rep.record(d.length(w0) == d.positive_roots().len(), true, || "w0 not reduced of length #Φ+".into());
    let mut ww = w0.letters().to_vec();
    ww.extend_from_slice(w0.letters());
    rep.record(d.word(&ww)?.same_element(&id), true, || "w0^2 != 1".into());
    for k in 0..r {
        let img = d.act(w0.letters(), &Weight::fundamental(r, k));
        rep.record(img.0.iter().all(|&c| c <= 0), true, || format!("w0(ω{}) = {img} not antidominant", k + 1));
        let t = d.tau(&d.nodes());
        rep.record(img == Weight::fundamental(r, t[k]).scale(-1), true, || format!("w0(ω{}) != -ω_τ", k + 1));
    }
    let t = d.tau(&d.nodes());
    rep.record((0..r).all(|i| t[t[i]] == i), true, || "τ is not an involution".into());
    let words = d.reduced_words(w0, max_words);
    for w in &words {
        rep.record(w.same_element(w0) && d.is_reduced(w), true, || format!("{w} is not a reduced word of w0"));
    }
    if let Some(last) = words.last() {
        let moves = d.matsumoto_connect(w0, last)?;
        let mut cur = w0.letters().to_vec();
        for mv in &moves {
            let next = d.braid_neighbors(&cur).into_iter().find(|(m, _)| m == mv).map(|(_, v)| v);
            match next {
                Some(v) => cur = v,
                None => {
                    rep.fail(format!("illegal move {mv:?} on {cur:?}"));
                    break;
                }
            }
        }
        rep.record(cur == last.letters(), true, || "Matsumoto path does not reach the target".into());
        rep.note("matsumoto_moves", moves.len());
    }
    rep.note("reduced_words", words.len());
    rep.note("coxeter_number", d.coxeter_number());
    rep.note("tau", format!("{:?}", t.iter().map(|i| i + 1).collect::<Vec<_>>()));
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a2_matrix_and_reflections() {
        let d = build_cartan(CartanType::A, 2).unwrap();
        assert_eq!(d.cartan_matrix(), &[vec![2, -1], vec![-1, 2]]);
        let w1 = Weight::fundamental(2, 0);
        assert_eq!(d.simple_reflection(0, &w1), Weight(vec![-1, 1]));
        assert_eq!(d.simple_reflection(0, &d.rho()), Weight(vec![-1, 2]));
        assert_eq!(d.simple_reflection(1, &Weight::zero(2)), Weight::zero(2));
    }

    #[test]
    fn invalid_ranks_rejected() {
        assert!(build_cartan(CartanType::A, 0).is_err());
        assert!(build_cartan(CartanType::D, 3).is_err());
        assert!(build_cartan(CartanType::E, 5).is_err());
        assert!(build_cartan(CartanType::E, 9).is_err());
    }

    #[test]
    fn heights() {
        let d = build_cartan(CartanType::A, 3).unwrap();
        let theta = d.root_to_weight(&[1, 1, 1]);
        assert_eq!(d.height(&theta).unwrap(), 3);
        assert_eq!(d.height(&Weight::zero(3)).unwrap(), 0);
        assert!(d.height(&Weight::fundamental(3, 0)).is_err());
    }

    #[test]
    fn matsumoto_a2() {
        let d = build_cartan(CartanType::A, 2).unwrap();
        let a = d.word(&[0, 1, 0]).unwrap();
        let b = d.word(&[1, 0, 1]).unwrap();
        assert_eq!(d.matsumoto_connect(&a, &b).unwrap().len(), 1);
        assert!(d.matsumoto_connect(&a, &a).unwrap().is_empty());
        let c = d.word(&[0, 0]).unwrap();
        assert!(d.matsumoto_connect(&c, &c).is_err());
    }
}
