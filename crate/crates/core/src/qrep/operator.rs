use std::collections::BTreeMap;

use crate::cartan::Weight;
use crate::laurent::LaurentInt;
use crate::matrix::Matrix;

/// One weight block `V_source -> V_target`.
#[derive(Clone, Debug, PartialEq)]
pub struct Block {
    pub target: Weight,
    pub mat: Matrix<LaurentInt>,
}

/// Weight-homogeneous operator stored block by block, keyed by source weight.
/// Missing blocks are zero.
#[derive(Clone, Debug, Default)]
pub struct OperatorExpr {
    blocks: BTreeMap<Weight, Block>,
}

/// Outcome of comparing two operators up to a scalar.
#[derive(Clone, Debug, PartialEq)]
pub enum Ratio {
    BothZero,
    Scalar(LaurentInt),
    NotProportional,
}

impl OperatorExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_blocks(blocks: BTreeMap<Weight, Block>) -> Self {
        let mut op = Self { blocks };
        op.prune();
        op
    }

    fn prune(&mut self) {
        self.blocks.retain(|_, b| !b.mat.is_zero());
    }

    pub fn insert(&mut self, source: Weight, target: Weight, mat: Matrix<LaurentInt>) {
        if !mat.is_zero() {
            self.blocks.insert(source, Block { target, mat });
        }
    }

    pub fn block(&self, source: &Weight) -> Option<&Block> {
        self.blocks.get(source)
    }

    pub fn blocks(&self) -> impl Iterator<Item = (&Weight, &Block)> {
        self.blocks.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.is_empty()
    }

    /// `self ∘ rhs`.
    pub fn compose(&self, rhs: &OperatorExpr) -> OperatorExpr {
        let mut out = BTreeMap::new();
        for (src, b) in &rhs.blocks {
            if let Some(a) = self.blocks.get(&b.target) {
                out.insert(
                    src.clone(),
                    Block {
                        target: a.target.clone(),
                        mat: a.mat.mul(&b.mat),
                    },
                );
            }
        }
        Self::from_blocks(out)
    }

    /// `self ∘ 1_μ`.
    pub fn restrict(&self, mu: &Weight) -> OperatorExpr {
        let mut out = BTreeMap::new();
        if let Some(b) = self.blocks.get(mu) {
            out.insert(mu.clone(), b.clone());
        }
        Self { blocks: out }
    }

    fn combine(&self, o: &OperatorExpr, sub: bool) -> OperatorExpr {
        let mut out = self.blocks.clone();
        for (src, b) in &o.blocks {
            let m = if sub { b.mat.neg() } else { b.mat.clone() };
            match out.get_mut(src) {
                Some(a) => {
                    assert_eq!(a.target, b.target, "adding operators of different degree");
                    a.mat = a.mat.add(&m);
                }
                None => {
                    out.insert(
                        src.clone(),
                        Block {
                            target: b.target.clone(),
                            mat: m,
                        },
                    );
                }
            }
        }
        Self::from_blocks(out)
    }

    pub fn add(&self, o: &OperatorExpr) -> OperatorExpr {
        self.combine(o, false)
    }

    pub fn sub(&self, o: &OperatorExpr) -> OperatorExpr {
        self.combine(o, true)
    }

    pub fn scale(&self, c: &LaurentInt) -> OperatorExpr {
        Self::from_blocks(
            self.blocks
                .iter()
                .map(|(s, b)| {
                    (
                        s.clone(),
                        Block {
                            target: b.target.clone(),
                            mat: b.mat.scale(c),
                        },
                    )
                })
                .collect(),
        )
    }

    /// Scales block `μ` by `f(μ)`.
    pub fn scale_by_weight(&self, f: impl Fn(&Weight) -> LaurentInt) -> OperatorExpr {
        Self::from_blocks(
            self.blocks
                .iter()
                .map(|(s, b)| {
                    (
                        s.clone(),
                        Block {
                            target: b.target.clone(),
                            mat: b.mat.scale(&f(s)),
                        },
                    )
                })
                .collect(),
        )
    }

    pub fn equals(&self, o: &OperatorExpr) -> bool {
        self.blocks == o.blocks
    }

    /// Finds `c` with `self = c * other`.
    pub fn ratio(&self, other: &OperatorExpr) -> Ratio {
        if self.is_zero() && other.is_zero() {
            return Ratio::BothZero;
        }
        if self.is_zero() || other.is_zero() {
            return Ratio::NotProportional;
        }
        let (src, b) = other.blocks.iter().next().unwrap();
        let Some(a) = self.blocks.get(src) else {
            return Ratio::NotProportional;
        };
        if a.target != b.target {
            return Ratio::NotProportional;
        }
        let Some(c) = a.mat.scalar_ratio(&b.mat, |x, y| x.div_exact(y)) else {
            return Ratio::NotProportional;
        };
        if self.equals(&other.scale(&c)) {
            Ratio::Scalar(c)
        } else {
            Ratio::NotProportional
        }
    }

    /// Entrywise map, used for `q = 1` specialization and exact division.
    pub fn try_map(
        &self,
        f: impl Fn(&LaurentInt) -> Option<LaurentInt>,
    ) -> Option<OperatorExpr> {
        let mut out = BTreeMap::new();
        for (s, b) in &self.blocks {
            let rows: Option<Vec<Vec<LaurentInt>>> = (0..b.mat.rows())
                .map(|i| b.mat.row(i).iter().map(&f).collect())
                .collect();
            let rows = rows?;
            let mat = if rows.is_empty() {
                Matrix::zeros(0, b.mat.cols())
            } else {
                Matrix::from_rows(rows)
            };
            out.insert(
                s.clone(),
                Block {
                    target: b.target.clone(),
                    mat,
                },
            );
        }
        Some(Self::from_blocks(out))
    }

    /// Applies the operator to a vector of `V_μ`.
    pub fn apply(&self, mu: &Weight, v: &[LaurentInt]) -> Option<(Weight, Vec<LaurentInt>)> {
        self.blocks
            .get(mu)
            .map(|b| (b.target.clone(), b.mat.mul_vec(v)))
    }

    pub fn max_entry_terms(&self) -> usize {
        self.blocks
            .values()
            .flat_map(|b| b.mat.iter().map(|x| x.len()))
            .max()
            .unwrap_or(0)
    }
}

impl PartialEq for OperatorExpr {
    fn eq(&self, o: &Self) -> bool {
        self.equals(o)
    }
}

pub(crate) fn is_zero_vec(v: &[LaurentInt]) -> bool {
    v.iter().all(|x| x.is_zero())
}

pub(crate) fn scalar_multiple(a: &[LaurentInt], b: &[LaurentInt]) -> Option<LaurentInt> {
    let p = b.iter().position(|x| !x.is_zero())?;
    let c = a[p].div_exact(&b[p])?;
    if a.iter().zip(b).all(|(x, y)| *x == &c * y) {
        Some(c)
    } else {
        None
    }
}
