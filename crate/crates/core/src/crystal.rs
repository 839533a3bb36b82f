//! Finite normal crystals, generated from Littelmann paths, with
//! Schützenberger involutions `ξ_J` and the cactus group action.
//!
//! Tensor products follow the anti-Kashiwara rule: `f_i` acts on the left
//! factor of `x ⊗ y` iff `φ_i(y) ≤ ε_i(x)`, and `e_i` acts on the left factor
//! iff `φ_i(y) < ε_i(x)`.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use num_rational::Rational64;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::cartan::{CartanDatum, Weight};
use crate::error::{input, invariant, Error, Result};
use crate::report::CheckReport;

pub const DEFAULT_MAX_NODES: usize = 1000;

/// Piecewise-linear path from 0: segments `(direction, duration)` with the
/// durations summing to 1. Kept in normal form: no empty segments, no two
/// neighbouring segments with the same direction.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LSPath {
    segs: Vec<(Weight, Rational64)>,
}

impl LSPath {
    pub fn straight(lambda: &Weight) -> Self {
        Self::normalized(vec![(lambda.clone(), Rational64::one())])
    }

    fn normalized(segs: Vec<(Weight, Rational64)>) -> Self {
        let mut out: Vec<(Weight, Rational64)> = Vec::with_capacity(segs.len());
        for (d, t) in segs {
            if t.is_zero() {
                continue;
            }
            match out.last_mut() {
                Some((pd, pt)) if *pd == d => *pt += t,
                _ => out.push((d, t)),
            }
        }
        Self { segs: out }
    }

    pub fn segments(&self) -> &[(Weight, Rational64)] {
        &self.segs
    }

    pub fn endpoint(&self) -> Weight {
        let r = self.segs.first().map_or(0, |s| s.0.rank());
        let mut acc = vec![Rational64::zero(); r];
        for (d, t) in &self.segs {
            for (a, &x) in acc.iter_mut().zip(&d.0) {
                *a += Rational64::from(x) * t;
            }
        }
        Weight(
            acc.into_iter()
                .map(|x| {
                    assert!(x.is_integer(), "path endpoint off the weight lattice");
                    x.to_integer()
                })
                .collect(),
        )
    }

    /// Values of `<π(t), h_i>` at the breakpoints `0 = t_0 < ... < t_n = 1`.
    fn heights(&self, i: usize) -> Vec<Rational64> {
        let mut h = vec![Rational64::zero()];
        for (d, t) in &self.segs {
            let last = *h.last().unwrap();
            h.push(last + Rational64::from(d[i]) * t);
        }
        h
    }

    fn min_height(&self, i: usize) -> Rational64 {
        self.heights(i).into_iter().min().unwrap()
    }

    pub fn epsilon(&self, i: usize) -> i64 {
        let m = self.min_height(i);
        debug_assert!(m.is_integer());
        -m.to_integer()
    }

    pub fn phi(&self, i: usize) -> i64 {
        let h = self.heights(i);
        let m = h.iter().min().unwrap();
        (h.last().unwrap() - m).to_integer()
    }

    /// Reflects the increments on the time window `[a, b]` by `s_i`.
    fn reflect_window(&self, d: &CartanDatum, i: usize, a: Rational64, b: Rational64) -> Self {
        let mut out = Vec::new();
        let mut start = Rational64::zero();
        for (dir, dur) in &self.segs {
            let end = start + dur;
            let cuts = [start, a.clamp(start, end), b.clamp(start, end), end];
            for w in cuts.windows(2) {
                let len = w[1] - w[0];
                if len.is_zero() {
                    continue;
                }
                let inside = w[0] >= a && w[1] <= b;
                let nd = if inside { d.simple_reflection(i, dir) } else { dir.clone() };
                out.push((nd, len));
            }
            start = end;
        }
        Self::normalized(out)
    }

    /// First time `≥ from` where the height reaches `level`, scanning forward.
    fn first_time_at(&self, i: usize, from: Rational64, level: Rational64) -> Option<Rational64> {
        let h = self.heights(i);
        let mut start = Rational64::zero();
        for (k, (dir, dur)) in self.segs.iter().enumerate() {
            let end = start + dur;
            if end > from {
                let slope = Rational64::from(dir[i]);
                let t0 = start.max(from);
                let h0 = h[k] + slope * (t0 - start);
                if h0 == level {
                    return Some(t0);
                }
                if !slope.is_zero() {
                    let t = start + (level - h[k]) / slope;
                    if t > t0 && t <= end {
                        return Some(t);
                    }
                }
            }
            start = end;
        }
        None
    }

    /// Last time `≤ until` where the height equals `level`, scanning backward.
    fn last_time_at(&self, i: usize, until: Rational64, level: Rational64) -> Option<Rational64> {
        let h = self.heights(i);
        let mut bounds = Vec::new();
        let mut start = Rational64::zero();
        for (dir, dur) in &self.segs {
            bounds.push((start, start + dur, Rational64::from(dir[i])));
            start += dur;
        }
        for (k, &(s, e, slope)) in bounds.iter().enumerate().rev() {
            if s > until {
                continue;
            }
            let t1 = e.min(until);
            let h1 = h[k] + slope * (t1 - s);
            if h1 == level {
                return Some(t1);
            }
            if !slope.is_zero() {
                let t = s + (level - h[k]) / slope;
                if t >= s && t < t1 {
                    return Some(t);
                }
            }
        }
        None
    }

    pub fn f(&self, d: &CartanDatum, i: usize) -> Option<Self> {
        let h = self.heights(i);
        let m = *h.iter().min().unwrap();
        if *h.last().unwrap() - m < Rational64::one() {
            return None;
        }
        let p = self.last_time_at(i, Rational64::one(), m)?;
        let x = self.first_time_at(i, p, m + 1)?;
        Some(self.reflect_window(d, i, p, x))
    }

    pub fn e(&self, d: &CartanDatum, i: usize) -> Option<Self> {
        let m = self.min_height(i);
        if m > -Rational64::one() {
            return None;
        }
        let q = self.first_time_at(i, Rational64::zero(), m)?;
        let y = self.last_time_at(i, q, m + 1)?;
        Some(self.reflect_window(d, i, y, q))
    }
}

impl fmt::Display for LSPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, (d, t)) in self.segs.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{d}*{t}")?;
        }
        write!(f, "]")
    }
}

/// A finite crystal stored by its `f̃_i` arrows; `ẽ_i`, `ε_i`, `φ_i` are
/// derived and cached.
#[derive(Clone, Debug)]
pub struct CrystalGraph {
    datum: CartanDatum,
    name: String,
    labels: Vec<String>,
    wt: Vec<Weight>,
    f: Vec<Vec<Option<usize>>>,
    e: Vec<Vec<Option<usize>>>,
    eps: Vec<Vec<i64>>,
    phi: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrystalSummary {
    pub name: String,
    pub nodes: usize,
    pub edges: usize,
    pub components: usize,
    pub highest_weights: Vec<String>,
}

impl CrystalGraph {
    /// Builds a crystal from weights and `f̃_i` arrows. Fails if some node
    /// has two `f̃_i`-preimages.
    pub fn from_arrows(
        datum: &CartanDatum,
        name: impl Into<String>,
        labels: Vec<String>,
        wt: Vec<Weight>,
        f: Vec<Vec<Option<usize>>>,
    ) -> Result<Self> {
        let n = wt.len();
        let r = datum.rank();
        if labels.len() != n || f.len() != n || f.iter().any(|row| row.len() != r) {
            return input("crystal arrays have inconsistent sizes");
        }
        let mut e = vec![vec![None; r]; n];
        for (b, row) in f.iter().enumerate() {
            for (i, t) in row.iter().enumerate() {
                if let Some(t) = *t {
                    if t >= n {
                        return input(format!("arrow target {t} out of range"));
                    }
                    if e[t][i].replace(b).is_some() {
                        return invariant(format!("node {t} has two f_{} preimages", i + 1));
                    }
                }
            }
        }
        let walk = |ops: &Vec<Vec<Option<usize>>>, b: usize, i: usize| -> i64 {
            let mut k = 0;
            let mut x = b;
            while let Some(y) = ops[x][i] {
                k += 1;
                x = y;
                if k as usize > n {
                    break;
                }
            }
            k
        };
        let eps = (0..n).map(|b| (0..r).map(|i| walk(&e, b, i)).collect()).collect();
        let phi = (0..n).map(|b| (0..r).map(|i| walk(&f, b, i)).collect()).collect();
        Ok(Self {
            datum: datum.clone(),
            name: name.into(),
            labels,
            wt,
            f,
            e,
            eps,
            phi,
        })
    }

    pub fn datum(&self) -> &CartanDatum {
        &self.datum
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn len(&self) -> usize {
        self.wt.len()
    }

    pub fn is_empty(&self) -> bool {
        self.wt.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.datum.rank()
    }

    pub fn label(&self, b: usize) -> &str {
        &self.labels[b]
    }

    pub fn weight(&self, b: usize) -> &Weight {
        &self.wt[b]
    }

    pub fn f(&self, b: usize, i: usize) -> Option<usize> {
        self.f[b][i]
    }

    pub fn e(&self, b: usize, i: usize) -> Option<usize> {
        self.e[b][i]
    }

    pub fn epsilon(&self, b: usize, i: usize) -> i64 {
        self.eps[b][i]
    }

    pub fn phi(&self, b: usize, i: usize) -> i64 {
        self.phi[b][i]
    }

    pub fn edge_count(&self) -> usize {
        self.f.iter().flatten().filter(|x| x.is_some()).count()
    }

    /// Nodes killed by every `ẽ_j`, `j ∈ J`.
    pub fn highest_in(&self, j: &[usize]) -> Vec<usize> {
        (0..self.len())
            .filter(|&b| j.iter().all(|&i| self.e[b][i].is_none()))
            .collect()
    }

    pub fn highest(&self) -> Vec<usize> {
        self.highest_in(&self.datum.nodes())
    }

    pub fn lowest(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&b| (0..self.rank()).all(|i| self.f[b][i].is_none()))
            .collect()
    }

    pub fn weight_multiplicity(&self, mu: &Weight) -> usize {
        self.wt.iter().filter(|w| *w == mu).count()
    }

    pub fn nodes_of_weight(&self, mu: &Weight) -> Vec<usize> {
        (0..self.len()).filter(|&b| self.wt[b] == *mu).collect()
    }

    pub fn character(&self) -> BTreeMap<Weight, usize> {
        let mut out = BTreeMap::new();
        for w in &self.wt {
            *out.entry(w.clone()).or_default() += 1;
        }
        out
    }

    /// Connected components of the graph using only colours in `J`, each
    /// sorted, ordered by smallest node.
    pub fn restrict(&self, j: &[usize]) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut stack = vec![s];
            while let Some(b) = stack.pop() {
                for &i in j {
                    for nb in [self.f[b][i], self.e[b][i]].into_iter().flatten() {
                        if comp[nb] == usize::MAX {
                            comp[nb] = id;
                            members.push(nb);
                            stack.push(nb);
                        }
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        self.restrict(&self.datum.nodes())
    }

    pub fn summary(&self) -> CrystalSummary {
        let comps = self.components();
        let mut hw: Vec<String> = comps
            .iter()
            .map(|c| {
                let h: Vec<usize> = c.iter().copied().filter(|&b| self.highest().contains(&b)).collect();
                h.first().map_or("?".into(), |&b| self.wt[b].to_string())
            })
            .collect();
        hw.sort();
        CrystalSummary {
            name: self.name.clone(),
            nodes: self.len(),
            edges: self.edge_count(),
            components: comps.len(),
            highest_weights: hw,
        }
    }

    /// The crystal axioms: partial inverses, weight shifts, string lengths,
    /// `φ_i - ε_i = <wt, h_i>`.
    pub fn validate_axioms(&self) -> CheckReport {
        let mut rep = CheckReport::new("crystal-axioms", self.name.clone());
        let d = &self.datum;
        for b in 0..self.len() {
            for i in 0..self.rank() {
                if let Some(c) = self.f[b][i] {
                    rep.record(self.e[c][i] == Some(b), true, || format!("e{} f{} {b} != {b}", i + 1, i + 1));
                    rep.record(self.wt[c] == self.wt[b].sub(&d.alpha(i)), true, || {
                        format!("wt f{} {b} != wt {b} - alpha", i + 1)
                    });
                }
                if let Some(c) = self.e[b][i] {
                    rep.record(self.f[c][i] == Some(b), true, || format!("f{} e{} {b} != {b}", i + 1, i + 1));
                    rep.record(self.wt[c] == self.wt[b].add(&d.alpha(i)), true, || {
                        format!("wt e{} {b} != wt {b} + alpha", i + 1)
                    });
                }
                rep.record(
                    self.phi[b][i] - self.eps[b][i] == self.wt[b][i],
                    true,
                    || format!("phi-eps at node {b}, i={}", i + 1),
                );
            }
        }
        rep
    }

    /// Stembridge's local axioms for simply-laced types, in both the raising
    /// and the lowering form.
    pub fn validate_stembridge(&self) -> CheckReport {
        let mut rep = CheckReport::new("stembridge", self.name.clone());
        for (ops, stat, tag) in [(&self.e, &self.eps, "e"), (&self.f, &self.phi, "f")] {
            for x in 0..self.len() {
                for i in 0..self.rank() {
                    for j in 0..self.rank() {
                        if i == j {
                            continue;
                        }
                        let a = self.datum.a(i, j);
                        let Some(y) = ops[x][i] else { continue };
                        let di = stat[y][j] - stat[x][j];
                        let allowed = if a == 0 { di == 0 } else { di == 0 || di == 1 };
                        rep.record(allowed, true, || {
                            format!("{tag}: Δ{}{} = {di} at {x}", i + 1, j + 1)
                        });
                        if i > j {
                            continue;
                        }
                        let Some(z) = ops[x][j] else { continue };
                        let dj = stat[z][i] - stat[x][i];
                        if di == 0 {
                            let ok = ops[y][j].is_some() && ops[y][j] == ops[z][i];
                            rep.record(ok, true, || format!("{tag}: square ({},{}) at {x}", i + 1, j + 1));
                        } else if di == 1 && dj == 1 {
                            let path = |s: usize, seq: [usize; 4]| {
                                seq.iter().try_fold(s, |acc, &k| ops[acc][k])
                            };
                            let l = path(x, [i, j, j, i]);
                            let r = path(x, [j, i, i, j]);
                            rep.record(l.is_some() && l == r, true, || {
                                format!("{tag}: octagon ({},{}) at {x}", i + 1, j + 1)
                            });
                        }
                    }
                }
            }
        }
        rep
    }

    /// Each component has exactly one highest node.
    pub fn validate_normal(&self) -> CheckReport {
        let mut rep = CheckReport::new("unique-highest", self.name.clone());
        let hi: std::collections::BTreeSet<usize> = self.highest().into_iter().collect();
        for (k, c) in self.components().iter().enumerate() {
            let n = c.iter().filter(|b| hi.contains(b)).count();
            rep.record(n == 1, true, || format!("component {k} has {n} highest nodes"));
        }
        rep
    }

    pub fn validate(&self) -> CheckReport {
        let mut rep = CheckReport::new("crystal", self.name.clone());
        rep.absorb(&self.validate_axioms());
        rep.absorb(&self.validate_stembridge());
        rep.absorb(&self.validate_normal());
        rep
    }

    pub fn to_dot(&self) -> String {
        let mut s = format!("digraph \"{}\" {{\n", self.name);
        for b in 0..self.len() {
            s += &format!("  n{b} [label=\"{}\"];\n", self.wt[b]);
        }
        for b in 0..self.len() {
            for i in 0..self.rank() {
                if let Some(c) = self.f[b][i] {
                    s += &format!("  n{b} -> n{c} [label=\"{}\"];\n", i + 1);
                }
            }
        }
        s += "}\n";
        s
    }

    /// One line per node: `id<TAB>weight<TAB>label<TAB>f_1,...,f_r` with `-`
    /// for undefined arrows.
    pub fn to_adjacency(&self) -> String {
        let mut s = String::from("# node\tweight\tlabel\tf\n");
        for b in 0..self.len() {
            let fs: Vec<String> = self.f[b]
                .iter()
                .map(|x| x.map_or("-".into(), |c| c.to_string()))
                .collect();
            s += &format!("{b}\t{}\t{}\t{}\n", self.wt[b], self.labels[b], fs.join(","));
        }
        s
    }
}

/// `B(λ)` from the Littelmann path model, starting at the straight path.
pub fn crystal_from_highest(datum: &CartanDatum, lambda: &Weight, max_nodes: usize) -> Result<CrystalGraph> {
    if lambda.rank() != datum.rank() {
        return input(format!("weight {lambda} has wrong rank for {}", datum.name()));
    }
    if !lambda.is_dominant() {
        return input(format!("weight {lambda} is not dominant"));
    }
    let dim = datum.weyl_dimension(lambda);
    if dim > max_nodes.into() {
        return Err(Error::Bound {
            what: "crystal size (Weyl dimension)",
            value: dim.to_usize().unwrap_or(usize::MAX),
            limit: max_nodes,
        });
    }
    let r = datum.rank();
    let start = LSPath::straight(lambda);
    let mut index: HashMap<LSPath, usize> = HashMap::new();
    let mut paths = vec![start.clone()];
    index.insert(start, 0);
    let mut f: Vec<Vec<Option<usize>>> = vec![vec![None; r]];
    let mut queue = VecDeque::from([0usize]);
    while let Some(b) = queue.pop_front() {
        for i in 0..r {
            let Some(p) = paths[b].f(datum, i) else { continue };
            let id = match index.get(&p) {
                Some(&id) => id,
                None => {
                    let id = paths.len();
                    if id >= max_nodes.max(1) * 2 {
                        return invariant("path generation exceeded the predicted dimension");
                    }
                    index.insert(p.clone(), id);
                    paths.push(p);
                    f.push(vec![None; r]);
                    queue.push_back(id);
                    id
                }
            };
            f[b][i] = Some(id);
        }
    }
    let wt = paths.iter().map(|p| p.endpoint()).collect();
    let labels = paths.iter().map(|p| p.to_string()).collect();
    let g = CrystalGraph::from_arrows(datum, format!("B{lambda} {}", datum.name()), labels, wt, f)?;
    if dim != g.len().into() {
        return invariant(format!("B{lambda}: {} nodes, Weyl dimension {dim}", g.len()));
    }
    for (b, p) in paths.iter().enumerate() {
        for i in 0..r {
            if p.epsilon(i) != g.epsilon(b, i) || p.phi(i) != g.phi(b, i) {
                return invariant(format!("path statistics disagree with string lengths at {p}"));
            }
        }
    }
    Ok(g)
}

/// A bijection between node sets, `map[b]` being the image of `b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrystalMap {
    pub source: String,
    pub target: String,
    pub map: Vec<usize>,
}

impl CrystalMap {
    pub fn identity(c: &CrystalGraph) -> Self {
        Self {
            source: c.name.clone(),
            target: c.name.clone(),
            map: (0..c.len()).collect(),
        }
    }

    pub fn apply(&self, b: usize) -> usize {
        self.map[b]
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &CrystalMap) -> CrystalMap {
        CrystalMap {
            source: other.source.clone(),
            target: self.target.clone(),
            map: other.map.iter().map(|&b| self.map[b]).collect(),
        }
    }

    pub fn is_bijection(&self) -> bool {
        let mut seen = vec![false; self.map.len()];
        self.map.iter().all(|&b| b < seen.len() && !std::mem::replace(&mut seen[b], true))
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(a, &b)| a == b)
    }

    pub fn fixed_points(&self) -> usize {
        self.map.iter().enumerate().filter(|(a, b)| a == *b).count()
    }

    pub fn to_pairs(&self) -> String {
        self.map
            .iter()
            .enumerate()
            .map(|(a, b)| format!("{a}\t{b}\n"))
            .collect()
    }
}

fn sorted(j: &[usize]) -> Vec<usize> {
    let mut v = j.to_vec();
    v.sort_unstable();
    v.dedup();
    v
}

/// `ξ_J` by propagation from each `J`-highest node, recording every
/// consistency check in `rep`.
fn propagate_xi(c: &CrystalGraph, j: &[usize], rep: &mut CheckReport) -> CrystalMap {
    let d = &c.datum;
    let tau = d.tau(j);
    let w0j = d.longest_element(j);
    let n = c.len();
    let mut xi = vec![usize::MAX; n];
    for comp in c.restrict(j) {
        let hi: Vec<usize> = comp.iter().copied().filter(|&b| j.iter().all(|&i| c.e[b][i].is_none())).collect();
        let lo: Vec<usize> = comp.iter().copied().filter(|&b| j.iter().all(|&i| c.f[b][i].is_none())).collect();
        if hi.len() != 1 || lo.len() != 1 {
            rep.fail(format!("J-component of {} has {} highest and {} lowest nodes", comp[0], hi.len(), lo.len()));
            continue;
        }
        xi[hi[0]] = lo[0];
        let mut queue = VecDeque::from([hi[0]]);
        while let Some(b) = queue.pop_front() {
            for &i in j {
                let Some(fb) = c.f[b][i] else { continue };
                let img = c.e[xi[b]][tau[i]];
                let Some(img) = img else {
                    rep.fail(format!("e{} undefined on xi({b})", tau[i] + 1));
                    continue;
                };
                if xi[fb] == usize::MAX {
                    xi[fb] = img;
                    queue.push_back(fb);
                } else {
                    rep.record(xi[fb] == img, true, || format!("xi({fb}) assigned twice"));
                }
            }
        }
    }
    if xi.contains(&usize::MAX) {
        rep.fail("xi not defined on every node".into());
        return CrystalMap::identity(c);
    }
    let map = CrystalMap {
        source: c.name.clone(),
        target: c.name.clone(),
        map: xi,
    };
    for b in 0..n {
        let x = map.map[b];
        rep.record(map.map[x] == b, true, || format!("xi^2({b}) != {b}"));
        rep.record(c.wt[x] == d.act(w0j.letters(), &c.wt[b]), true, || {
            format!("wt xi({b}) != w0^J wt({b})")
        });
        for &i in j {
            let l = c.f[b][i].map(|y| map.map[y]);
            let r = c.e[x][tau[i]];
            rep.record(l == r, true, || format!("xi f{} != e{} xi at {b}", i + 1, tau[i] + 1));
        }
    }
    map
}

/// The generalised Schützenberger involution `ξ_J`.
pub fn schutzenberger(c: &CrystalGraph, j: &[usize]) -> Result<CrystalMap> {
    let j = sorted(j);
    if j.iter().any(|&i| i >= c.rank()) {
        return input("subdiagram node out of range");
    }
    if j.is_empty() {
        return Ok(CrystalMap::identity(c));
    }
    let mut rep = CheckReport::new("xi", c.name.clone());
    let m = propagate_xi(c, &j, &mut rep);
    if rep.passed() {
        Ok(m)
    } else {
        invariant(format!("xi_J propagation failed: {:?}", rep.failures))
    }
}

/// `ξ_J` for every connected `J`, keyed by sorted node list.
pub fn all_xi(c: &CrystalGraph, rep: &mut CheckReport) -> BTreeMap<Vec<usize>, CrystalMap> {
    c.datum
        .connected_subdiagrams()
        .into_iter()
        .map(|j| {
            let m = propagate_xi(c, &j, rep);
            (j, m)
        })
        .collect()
}

/// `c_{J_1} ∘ ... ∘ c_{J_r}` for the word `[J_1, ..., J_r]`.
pub fn cactus_apply(c: &CrystalGraph, word: &[Vec<usize>]) -> Result<CrystalMap> {
    let mut out = CrystalMap::identity(c);
    for j in word.iter().rev() {
        if !c.datum.is_connected(j) {
            return input(format!("cactus generator {j:?} is not connected"));
        }
        out = schutzenberger(c, j)?.compose(&out);
    }
    Ok(out)
}

fn fmt_nodes(j: &[usize]) -> String {
    let v: Vec<String> = j.iter().map(|x| (x + 1).to_string()).collect();
    format!("{{{}}}", v.join(","))
}

/// Cactus relations (i)-(iii) over all connected subdiagrams.
pub fn verify_cactus_relations(c: &CrystalGraph) -> CheckReport {
    let mut rep = CheckReport::new("cactus", c.name.clone());
    let mut prop = CheckReport::new("xi-propagation", c.name.clone());
    let xi = all_xi(c, &mut prop);
    rep.note("propagation_checks", prop.checked);
    rep.absorb(&prop);
    let d = &c.datum;
    let mut counts = [0usize; 3];
    for (j, xj) in &xi {
        counts[0] += 1;
        rep.record(xj.compose(xj).is_identity(), true, || format!("(i) J={}", fmt_nodes(j)));
        for (k, xk) in &xi {
            let disjoint = j.iter().all(|a| !k.contains(a));
            let apart = disjoint && j.iter().all(|&a| k.iter().all(|&b| d.a(a, b) == 0));
            if apart {
                counts[1] += 1;
                rep.record(xj.compose(xk) == xk.compose(xj), true, || {
                    format!("(ii) J={} K={}", fmt_nodes(j), fmt_nodes(k))
                });
            }
            if j.iter().all(|a| k.contains(a)) {
                counts[2] += 1;
                let tau = d.tau(k);
                let tj = sorted(&j.iter().map(|&a| tau[a]).collect::<Vec<_>>());
                let xtj = &xi[&tj];
                let l = xj.compose(xk);
                let r = xk.compose(xtj);
                rep.record(l == r, true, || {
                    let w = (0..c.len()).find(|&b| l.map[b] != r.map[b]).unwrap_or(0);
                    format!("(iii) J={} K={} at node {w}", fmt_nodes(j), fmt_nodes(k))
                });
            }
        }
    }
    rep.note("relation_i", counts[0]);
    rep.note("relation_ii", counts[1]);
    rep.note("relation_iii", counts[2]);
    rep
}

/// Tensor product `A ⊗ B`; node `(a, b)` has index `a * |B| + b`.
pub fn tensor(a: &CrystalGraph, b: &CrystalGraph) -> Result<CrystalGraph> {
    if a.datum.cartan_matrix() != b.datum.cartan_matrix() {
        return input("tensor factors have different Cartan data");
    }
    let (na, nb, r) = (a.len(), b.len(), a.rank());
    let mut f = vec![vec![None; r]; na * nb];
    let mut wt = Vec::with_capacity(na * nb);
    let mut labels = Vec::with_capacity(na * nb);
    for x in 0..na {
        for y in 0..nb {
            wt.push(a.wt[x].add(&b.wt[y]));
            labels.push(format!("{}⊗{}", a.labels[x], b.labels[y]));
            for i in 0..r {
                f[x * nb + y][i] = if b.phi[y][i] <= a.eps[x][i] {
                    a.f[x][i].map(|x2| x2 * nb + y)
                } else {
                    b.f[y][i].map(|y2| x * nb + y2)
                };
            }
        }
    }
    CrystalGraph::from_arrows(&a.datum, format!("{}⊗{}", a.name, b.name), labels, wt, f)
}

/// Crystal isomorphism `A → B` matching components by highest weight and
/// traversing simultaneously from the highest nodes.
pub fn isomorphism(a: &CrystalGraph, b: &CrystalGraph) -> Option<CrystalMap> {
    if a.len() != b.len() || a.datum.cartan_matrix() != b.datum.cartan_matrix() {
        return None;
    }
    let mut pool: BTreeMap<Weight, Vec<usize>> = BTreeMap::new();
    for h in b.highest() {
        pool.entry(b.wt[h].clone()).or_default().push(h);
    }
    for v in pool.values_mut() {
        v.reverse();
    }
    let mut map = vec![usize::MAX; a.len()];
    let mut used = vec![false; b.len()];
    for h in a.highest() {
        let g = pool.get_mut(&a.wt[h])?.pop()?;
        map[h] = g;
        used[g] = true;
        let mut queue = VecDeque::from([h]);
        while let Some(x) = queue.pop_front() {
            for i in 0..a.rank() {
                match (a.f[x][i], b.f[map[x]][i]) {
                    (None, None) => {}
                    (Some(y), Some(z)) => {
                        if map[y] == usize::MAX {
                            if used[z] {
                                return None;
                            }
                            map[y] = z;
                            used[z] = true;
                            queue.push_back(y);
                        } else if map[y] != z {
                            return None;
                        }
                    }
                    _ => return None,
                }
            }
        }
    }
    if map.contains(&usize::MAX) {
        return None;
    }
    let m = CrystalMap {
        source: a.name.clone(),
        target: b.name.clone(),
        map,
    };
    let ok = (0..a.len()).all(|x| {
        a.wt[x] == b.wt[m.map[x]]
            && (0..a.rank()).all(|i| a.e[x][i].map(|y| m.map[y]) == b.e[m.map[x]][i])
    });
    ok.then_some(m)
}

/// Dominant weights `λ` with `dim L(λ) ≤ max_dim`, in lexicographic order.
pub fn dominant_weights_within(datum: &CartanDatum, max_dim: usize) -> Vec<Weight> {
    fn rec(d: &CartanDatum, max: usize, cur: &mut Vec<i64>, k: usize, out: &mut Vec<Weight>) {
        if k == cur.len() {
            out.push(Weight(cur.clone()));
            return;
        }
        loop {
            // dimension is increasing in every coordinate, so the smallest
            // completion bounds the whole branch
            let probe = Weight(cur.clone());
            if d.weyl_dimension(&probe) > max.into() {
                break;
            }
            rec(d, max, cur, k + 1, out);
            for x in cur.iter_mut().skip(k + 1) {
                *x = 0;
            }
            cur[k] += 1;
        }
        cur[k] = 0;
    }
    let mut out = Vec::new();
    rec(datum, max_dim, &mut vec![0; datum.rank()], 0, &mut out);
    out
}
