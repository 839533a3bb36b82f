//! Integrable `U_q(sl_k)` modules `V^{⊗n}` over `Z[q, q^-1]` and Lusztig's
//! braid group operators.
//!
//! Coproduct: `Δ(E) = E⊗1 + K⊗E`, `Δ(F) = F⊗K^-1 + 1⊗F`, `Δ(K) = K⊗K`.
//! On the vector representation `E_i v_{i+1} = v_i` and `F_i v_i = v_{i+1}`.

mod checks;
mod operator;

use std::collections::BTreeMap;

use crate::cartan::{build_cartan, CartanDatum, CartanType, Weight};
use crate::error::{input, invariant, Error, Result};
use crate::laurent::{quantum_factorial, quantum_int, LaurentInt};
use crate::matrix::{laurent_inverse, Matrix};

pub use checks::*;
pub use operator::{Block, OperatorExpr, Ratio};

pub const DEFAULT_MAX_BASIS: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub enum Chevalley {
    E,
    F,
}

/// How reference exponents translate to this implementation: a reference
/// factor `q^m` reads `q^{-ε m}` here. The printed conventions correspond
/// to `ε = -1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct Convention {
    pub epsilon: i32,
}

impl Convention {
    pub const REFERENCE: Convention = Convention { epsilon: -1 };

    pub fn new(epsilon: i32) -> Self {
        assert!(epsilon == 1 || epsilon == -1);
        Self { epsilon }
    }

    /// `q^m` in reference normalization, rendered in ours.
    pub fn q(&self, m: i64) -> LaurentInt {
        LaurentInt::q_pow(-(self.epsilon as i64 * m) as i32)
    }

    /// Converts a measured exponent back to reference normalization.
    pub fn to_reference(&self, e: i64) -> i64 {
        -(self.epsilon as i64) * e
    }
}

pub struct WeightModule {
    datum: CartanDatum,
    k: usize,
    n: usize,
    basis: Vec<Vec<u8>>,
    wt: Vec<Weight>,
    spaces: BTreeMap<Weight, Vec<usize>>,
    pos: Vec<usize>,
    e: Vec<OperatorExpr>,
    f: Vec<OperatorExpr>,
}

impl std::fmt::Debug for WeightModule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "V(sl{})^{}", self.k, self.n)
    }
}

fn letter_weight(i: usize, a: u8) -> i64 {
    (a as usize == i) as i64 - (a as usize == i + 1) as i64
}

/// Builds `V^{⊗n}` for `U_q(sl_k)` and verifies the defining relations.
pub fn build_tensor_module(k: usize, n: usize, max_basis: usize) -> Result<WeightModule> {
    if k < 2 || n < 1 {
        return input(format!("tensor module needs k >= 2 and n >= 1, got k={k}, n={n}"));
    }
    let size = (k as u64).checked_pow(n as u32).unwrap_or(u64::MAX);
    if size > max_basis as u64 {
        return Err(Error::Bound {
            what: "basis size k^n",
            value: size.min(usize::MAX as u64) as usize,
            limit: max_basis,
        });
    }
    let m = WeightModule::construct(k, n)?;
    let rep = m.verify_relations();
    if let Some(f) = rep.failures.first() {
        return invariant(format!("{m:?}: relation failure {f}"));
    }
    Ok(m)
}

impl WeightModule {
    fn construct(k: usize, n: usize) -> Result<Self> {
        let datum = build_cartan(CartanType::A, k - 1)?;
        let r = k - 1;
        let size = k.pow(n as u32);
        let basis: Vec<Vec<u8>> = (0..size)
            .map(|mut x| {
                let mut w = vec![0u8; n];
                for p in (0..n).rev() {
                    w[p] = (x % k) as u8;
                    x /= k;
                }
                w
            })
            .collect();
        let wt: Vec<Weight> = basis
            .iter()
            .map(|w| Weight((0..r).map(|i| w.iter().map(|&a| letter_weight(i, a)).sum()).collect()))
            .collect();
        let mut spaces: BTreeMap<Weight, Vec<usize>> = BTreeMap::new();
        for (idx, w) in wt.iter().enumerate() {
            spaces.entry(w.clone()).or_default().push(idx);
        }
        let mut pos = vec![0; size];
        for v in spaces.values() {
            for (p, &idx) in v.iter().enumerate() {
                pos[idx] = p;
            }
        }
        let index: BTreeMap<&[u8], usize> =
            basis.iter().enumerate().map(|(i, w)| (w.as_slice(), i)).collect();

        let mut m = WeightModule {
            datum,
            k,
            n,
            basis: basis.clone(),
            wt,
            spaces,
            pos,
            e: Vec::new(),
            f: Vec::new(),
        };
        for i in 0..r {
            let mut e_op = OperatorExpr::zero();
            let mut f_op = OperatorExpr::zero();
            for (mu, idxs) in &m.spaces {
                let alpha = m.datum.alpha(i);
                for (dir, target) in [(Chevalley::E, mu.add(&alpha)), (Chevalley::F, mu.sub(&alpha))] {
                    let Some(tgt) = m.spaces.get(&target) else {
                        continue;
                    };
                    let mut mat = Matrix::zeros(tgt.len(), idxs.len());
                    for (c, &src) in idxs.iter().enumerate() {
                        let w = &basis[src];
                        for p in 0..n {
                            let (from, to) = match dir {
                                Chevalley::E => (i + 1, i),
                                Chevalley::F => (i, i + 1),
                            };
                            if w[p] as usize != from {
                                continue;
                            }
                            let exp: i64 = match dir {
                                Chevalley::E => w[..p].iter().map(|&a| letter_weight(i, a)).sum(),
                                Chevalley::F => -w[p + 1..].iter().map(|&a| letter_weight(i, a)).sum::<i64>(),
                            };
                            let mut img = w.clone();
                            img[p] = to as u8;
                            let row = m.pos[index[img.as_slice()]];
                            let v = mat.get(row, c) + &LaurentInt::q_pow(exp as i32);
                            mat.set(row, c, v);
                        }
                    }
                    match dir {
                        Chevalley::E => e_op.insert(mu.clone(), target, mat),
                        Chevalley::F => f_op.insert(mu.clone(), target, mat),
                    }
                }
            }
            m.e.push(e_op);
            m.f.push(f_op);
        }
        Ok(m)
    }

    pub fn datum(&self) -> &CartanDatum {
        &self.datum
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn rank(&self) -> usize {
        self.k - 1
    }

    pub fn weights(&self) -> impl Iterator<Item = &Weight> {
        self.spaces.keys()
    }

    pub fn has_weight(&self, mu: &Weight) -> bool {
        self.spaces.contains_key(mu)
    }

    pub fn weight_dim(&self, mu: &Weight) -> usize {
        self.spaces.get(mu).map_or(0, |v| v.len())
    }

    /// Basis words of `V_μ` in block order.
    pub fn weight_basis(&self, mu: &Weight) -> Vec<&[u8]> {
        self.spaces
            .get(mu)
            .map(|v| v.iter().map(|&i| self.basis[i].as_slice()).collect())
            .unwrap_or_default()
    }

    pub fn weight_of(&self, idx: usize) -> &Weight {
        &self.wt[idx]
    }

    pub fn chevalley(&self, dir: Chevalley, i: usize) -> &OperatorExpr {
        match dir {
            Chevalley::E => &self.e[i],
            Chevalley::F => &self.f[i],
        }
    }

    pub fn e(&self, i: usize) -> &OperatorExpr {
        &self.e[i]
    }

    pub fn f(&self, i: usize) -> &OperatorExpr {
        &self.f[i]
    }

    pub fn identity(&self) -> OperatorExpr {
        let mut op = OperatorExpr::zero();
        for (mu, v) in &self.spaces {
            op.insert(mu.clone(), mu.clone(), Matrix::identity(v.len()));
        }
        op
    }

    /// `K_i^m`, acting on `V_μ` by `q^{m μ_i}`.
    pub fn k_power(&self, i: usize, m: i64) -> OperatorExpr {
        self.identity()
            .scale_by_weight(|mu| LaurentInt::q_pow((m * mu[i]) as i32))
    }

    /// `E_i^{(a)}` or `F_i^{(a)}`, with integrality of the division checked.
    pub fn divided_power(&self, i: usize, a: usize, dir: Chevalley) -> Result<OperatorExpr> {
        if i >= self.rank() {
            return input(format!("node {} out of range", i + 1));
        }
        let base = self.chevalley(dir, i);
        let mut p = self.identity();
        for _ in 0..a {
            p = base.compose(&p);
        }
        let fact = quantum_factorial(a as i64)?;
        p.try_map(|x| x.div_exact(&fact)).ok_or_else(|| {
            Error::Invariant(format!("{dir:?}_{}^{a} is not divisible by [{a}]!", i + 1))
        })
    }

    /// Lusztig's operator `t_i 1_μ = Σ_{-a+b=μ_i} (-q)^{-b} E_i^{(a)} F_i^{(b)} 1_μ`.
    pub fn lusztig_t(&self, i: usize) -> Result<OperatorExpr> {
        let mut ep = Vec::new();
        let mut fp = Vec::new();
        for a in 0..=self.n {
            ep.push(self.divided_power(i, a, Chevalley::E)?);
            fp.push(self.divided_power(i, a, Chevalley::F)?);
        }
        let mut out = OperatorExpr::zero();
        for mu in self.spaces.keys() {
            let m = mu[i];
            let mut acc = OperatorExpr::zero();
            for a in 0..=self.n as i64 {
                let b = m + a;
                if b < 0 || b > self.n as i64 {
                    continue;
                }
                let sign = if b % 2 == 0 { 1 } else { -1 };
                let term = ep[a as usize]
                    .compose(&fp[b as usize].restrict(mu))
                    .scale(&LaurentInt::monomial(sign, -b as i32));
                acc = acc.add(&term);
            }
            out = out.add(&acc);
        }
        Ok(out)
    }

    /// Class of the Rickard complex in the Grothendieck group:
    /// `Σ_s (-1)^s q^s F^{(μ_i+s)} E^{(s)} 1_μ` for `μ_i ≥ 0` and
    /// `Σ_s (-1)^s q^s E^{(-μ_i+s)} F^{(s)} 1_μ` for `μ_i ≤ 0`, with `q^s`
    /// read through `conv`.
    pub fn rickard_class(&self, i: usize, conv: Convention) -> Result<OperatorExpr> {
        let mut ep = Vec::new();
        let mut fp = Vec::new();
        for a in 0..=self.n {
            ep.push(self.divided_power(i, a, Chevalley::E)?);
            fp.push(self.divided_power(i, a, Chevalley::F)?);
        }
        let n = self.n as i64;
        let mut out = OperatorExpr::zero();
        for mu in self.spaces.keys() {
            let m = mu[i];
            for s in 0..=n {
                let (outer, inner) = (m.abs() + s, s);
                if outer > n {
                    break;
                }
                let (x, y) = if m >= 0 { (&fp, &ep) } else { (&ep, &fp) };
                let sign = if s % 2 == 0 { 1 } else { -1 };
                let c = conv.q(s).scale(&num_bigint::BigInt::from(sign));
                out = out.add(
                    &x[outer as usize]
                        .compose(&y[inner as usize].restrict(mu))
                        .scale(&c),
                );
            }
        }
        Ok(out)
    }

    pub fn rickard_classes(&self, conv: Convention) -> Result<Vec<OperatorExpr>> {
        (0..self.rank()).map(|i| self.rickard_class(i, conv)).collect()
    }

    /// Composite `t_{i_1} ∘ ... ∘ t_{i_r}`.
    pub fn t_word(&self, word: &[usize]) -> Result<OperatorExpr> {
        let ts = self.lusztig_ts()?;
        Ok(compose_word(&ts, word, self.identity()))
    }

    pub fn lusztig_ts(&self) -> Result<Vec<OperatorExpr>> {
        (0..self.rank()).map(|i| self.lusztig_t(i)).collect()
    }

    /// Exact inverse of an operator that is invertible block by block with
    /// Laurent inverse.
    pub fn invert(&self, op: &OperatorExpr) -> Result<OperatorExpr> {
        let mut out = OperatorExpr::zero();
        for (src, b) in op.blocks() {
            if !b.mat.is_square() {
                return invariant(format!("block at {src} is not square"));
            }
            let inv = laurent_inverse(&b.mat)
                .ok_or_else(|| Error::Invariant(format!("block at {src} is singular")))?;
            let rows: Option<Vec<Vec<LaurentInt>>> = (0..inv.rows())
                .map(|r| inv.row(r).iter().map(|x| x.as_laurent().cloned()).collect())
                .collect();
            let rows =
                rows.ok_or_else(|| Error::Invariant(format!("inverse at {src} is not Laurent")))?;
            out.insert(b.target.clone(), src.clone(), Matrix::from_rows(rows));
        }
        Ok(out)
    }

    /// `[μ_i]` on each `V_μ`, the value of `(K_i - K_i^-1)/(q - q^-1)`.
    pub fn k_bracket(&self, i: usize) -> OperatorExpr {
        self.identity()
            .scale_by_weight(|mu| quantum_int(mu[i] as i32))
    }
}

pub(crate) fn compose_word(ts: &[OperatorExpr], word: &[usize], id: OperatorExpr) -> OperatorExpr {
    word.iter().rev().fold(id, |acc, &i| ts[i].compose(&acc))
}
