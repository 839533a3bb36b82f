//! Dense matrices over a [`Ring`], with Gauss-Jordan elimination over fields
//! and fraction-free elimination over `Z[q, q^-1]`.

use std::fmt;

use crate::laurent::LaurentInt;
use crate::ratfunc::RatFunc;
use crate::ring::{Field, Ring};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Ring> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(rows: usize, columns: &[Vec<T>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = out.data[idx].add(&a.mul(b));
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, b)| {
                        if a.is_zero() || b.is_zero() {
                            acc
                        } else {
                            acc.add(&a.mul(b))
                        }
                    })
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a.add(b))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a.sub(b))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&T, &T) -> T) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|x| c.mul(x))
    }

    pub fn neg(&self) -> Self {
        self.map(|x| x.neg())
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn trace(&self) -> T {
        (0..self.rows.min(self.cols)).fold(T::zero(), |acc, i| acc.add(self.get(i, i)))
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Self {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = &T> {
        self.data.iter()
    }

    /// If every entry is `c * other[i][j]` for one scalar `c`, returns it.
    /// `divide` must return the exact quotient `a / b` when it exists.
    pub fn scalar_ratio(&self, other: &Self, divide: impl Fn(&T, &T) -> Option<T>) -> Option<T> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let pos = other.data.iter().position(|x| !x.is_zero());
        let Some(p) = pos else {
            return if self.is_zero() { Some(T::zero()) } else { None };
        };
        let c = divide(&self.data[p], &other.data[p])?;
        if *self == other.scale(&c) {
            Some(c)
        } else {
            None
        }
    }
}

impl<T: Field> Matrix<T> {
    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv();
            for j in 0..m.cols {
                let v = m.get(r, j).mul(&inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in 0..m.cols {
                    let v = m.get(i, j).sub(&f.mul(m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : self * x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<T>> {
        let (m, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![T::zero(); self.cols];
                x[f] = T::one();
                for (r, &pc) in pivots.iter().enumerate() {
                    x[pc] = m.get(r, f).neg();
                }
                x
            })
            .collect()
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, T::one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut out = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, r.get(i, n + j).clone());
            }
        }
        Some(out)
    }
}

impl<T> Matrix<T> {
    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} ", self.rows, self.cols)?;
        let rows: Vec<&[T]> = (0..self.rows)
            .map(|i| &self.data[i * self.cols..(i + 1) * self.cols])
            .collect();
        f.debug_list().entries(rows).finish()
    }
}

// ---------------------------------------------------------------------------
// Fraction-free linear algebra over Z[q, q^-1].

/// Divides a vector by the gcd of its entries and fixes the unit so the first
/// nonzero entry has positive leading coefficient and nonzero constant term.
pub fn strip_content(v: &mut [LaurentInt]) {
    let mut g = LaurentInt::zero();
    for x in v.iter() {
        if !x.is_zero() {
            g = g.gcd(x);
            if g.is_one() {
                break;
            }
        }
    }
    if g.is_zero() {
        return;
    }
    let lead = v.iter().find(|x| !x.is_zero()).unwrap().unit_part();
    let d = &g * &lead;
    if d.is_one() {
        return;
    }
    for x in v.iter_mut() {
        *x = x.div_exact(&d).expect("content divides every entry");
    }
}

/// Row-reduced form computed without fractions: every pivot row is content
/// stripped, and pivot columns are cleared above and below. Returns the
/// nonzero rows and their pivot columns.
pub fn laurent_rref(rows: &[Vec<LaurentInt>]) -> (Vec<Vec<LaurentInt>>, Vec<usize>) {
    let mut m: Vec<Vec<LaurentInt>> = rows
        .iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .cloned()
        .collect();
    let cols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..cols {
        if rank == m.len() {
            break;
        }
        // Prefer the sparsest pivot to limit coefficient growth.
        let Some(p) = (rank..m.len())
            .filter(|&i| !m[i][c].is_zero())
            .min_by_key(|&i| (m[i][c].len(), i))
        else {
            continue;
        };
        m.swap(rank, p);
        strip_content(&mut m[rank]);
        let pivot_row = m[rank].clone();
        let pv = pivot_row[c].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == rank || row[c].is_zero() {
                continue;
            }
            let a = row[c].clone();
            let g = pv.gcd(&a);
            let mp = pv.div_exact(&g).unwrap();
            let ma = a.div_exact(&g).unwrap();
            for j in 0..cols {
                let v = &(&row[j] * &mp) - &(&pivot_row[j] * &ma);
                row[j] = v;
            }
            strip_content(row);
        }
        pivots.push(c);
        rank += 1;
    }
    m.truncate(rank);
    (m, pivots)
}

pub fn laurent_rank(rows: &[Vec<LaurentInt>]) -> usize {
    laurent_rref(rows).1.len()
}

/// Basis of the kernel `{x : M x = 0}` over the fraction field, scaled to
/// primitive vectors with Laurent entries.
pub fn laurent_nullspace(rows: &[Vec<LaurentInt>], cols: usize) -> Vec<Vec<LaurentInt>> {
    let (m, pivots) = laurent_rref(rows);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut lcm = LaurentInt::one();
            for (r, &pc) in pivots.iter().enumerate() {
                if !m[r][f].is_zero() {
                    let p = &m[r][pc];
                    let g = lcm.gcd(p);
                    lcm = (&lcm * p).div_exact(&g).unwrap();
                }
            }
            let mut x = vec![LaurentInt::zero(); cols];
            x[f] = lcm.clone();
            for (r, &pc) in pivots.iter().enumerate() {
                if !m[r][f].is_zero() {
                    let factor = lcm.div_exact(&m[r][pc]).unwrap();
                    x[pc] = -(&m[r][f] * &factor);
                }
            }
            strip_content(&mut x);
            x
        })
        .collect()
}

/// A basis (primitive Laurent vectors) of the span of the given vectors.
pub fn laurent_span_basis(vectors: &[Vec<LaurentInt>]) -> Vec<Vec<LaurentInt>> {
    laurent_rref(vectors).0
}

/// Inverse over the fraction field, via Gauss-Jordan in `RatFunc`.
pub fn laurent_inverse(m: &Matrix<LaurentInt>) -> Option<Matrix<RatFunc>> {
    m.map(|x| RatFunc::from_laurent(x.clone())).inverse()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat;
    use num_rational::BigRational;

    fn lp(terms: &[(i32, i64)]) -> LaurentInt {
        LaurentInt::from_terms(terms.iter().copied())
    }

    #[test]
    fn rational_inverse_roundtrip() {
        let m: Matrix<BigRational> =
            Matrix::from_rows(vec![vec![rat(2, 1), rat(1, 1)], vec![rat(1, 1), rat(1, 1)]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(2));
        let singular: Matrix<BigRational> =
            Matrix::from_rows(vec![vec![rat(1, 1), rat(2, 1)], vec![rat(2, 1), rat(4, 1)]]);
        assert!(singular.inverse().is_none());
        assert_eq!(singular.nullspace().len(), 1);
    }

    #[test]
    fn laurent_kernel_is_annihilated() {
        let q = lp(&[(1, 1)]);
        let rows = vec![
            vec![q.clone(), LaurentInt::one(), LaurentInt::zero()],
            vec![LaurentInt::zero(), q.clone(), lp(&[(0, 1), (2, 1)])],
        ];
        let ker = laurent_nullspace(&rows, 3);
        assert_eq!(ker.len(), 1);
        let m = Matrix::from_rows(rows.clone());
        assert!(m.mul_vec(&ker[0]).iter().all(|x| x.is_zero()));
        assert_eq!(laurent_rank(&rows), 2);
    }

    #[test]
    fn span_basis_drops_dependent_rows() {
        let a = vec![lp(&[(1, 1)]), lp(&[(0, 1)])];
        let b = vec![lp(&[(2, 1), (0, 1)]), lp(&[(1, 1), (-1, 1)])];
        assert_eq!(laurent_span_basis(&[a.clone(), b]).len(), 1);
        assert_eq!(laurent_span_basis(&[a, vec![lp(&[(0, 1)]), LaurentInt::zero()]]).len(), 2);
    }

    #[test]
    fn unit_determinant_inverse_is_laurent() {
        let m = Matrix::from_rows(vec![
            vec![LaurentInt::zero(), LaurentInt::one()],
            vec![lp(&[(-1, -1)]), lp(&[(3, 2)])],
        ]);
        let inv = laurent_inverse(&m).unwrap();
        assert!(inv.iter().all(|x| x.as_laurent().is_some()));
    }
}
