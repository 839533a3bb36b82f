//! Integer Laurent polynomials `Z[q, q^-1]` and quantum integers.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{input, Result};

/// Sparse exponent -> coefficient map. Zero coefficients are never stored, so
/// structural equality is ring equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentInt {
    terms: BTreeMap<i32, BigInt>,
}

impl LaurentInt {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn q() -> Self {
        Self::monomial(1, 1)
    }

    pub fn q_pow(e: i32) -> Self {
        Self::monomial(1, e)
    }

    pub fn from_int(c: impl Into<BigInt>) -> Self {
        Self::monomial_big(c.into(), 0)
    }

    pub fn monomial(c: i64, e: i32) -> Self {
        Self::monomial_big(BigInt::from(c), e)
    }

    pub fn monomial_big(c: BigInt, e: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Self { terms }
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms<I: IntoIterator<Item = (i32, i64)>>(it: I) -> Self {
        let mut out = Self::zero();
        for (e, c) in it {
            out.add_term(e, &BigInt::from(c));
        }
        out
    }

    fn add_term(&mut self, e: i32, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, e: i32) -> BigInt {
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Multiplication by `q^e`.
    pub fn shift(&self, e: i32) -> Self {
        Self {
            terms: self.terms.iter().map(|(k, c)| (k + e, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    /// The bar involution `q -> q^-1`.
    pub fn bar(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(k, c)| (-k, c.clone())).collect(),
        }
    }

    /// Specialization at `q = 1`.
    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |acc, c| acc + c)
    }

    /// `Some((c, e))` when the polynomial is the single term `c q^e`.
    pub fn as_monomial(&self) -> Option<(BigInt, i32)> {
        if self.terms.len() == 1 {
            let (e, c) = self.terms.iter().next().unwrap();
            Some((c.clone(), *e))
        } else {
            None
        }
    }

    /// `Some((sign, e))` when the polynomial is `±q^e`.
    pub fn as_signed_q_power(&self) -> Option<(i8, i32)> {
        let (c, e) = self.as_monomial()?;
        if c.is_one() {
            Some((1, e))
        } else if c == -BigInt::one() {
            Some((-1, e))
        } else {
            None
        }
    }

    /// Units of `Z[q, q^-1]` are exactly `±q^e`.
    pub fn is_unit(&self) -> bool {
        self.as_signed_q_power().is_some()
    }

    /// Gcd of the integer coefficients (nonnegative).
    pub fn content(&self) -> BigInt {
        self.terms
            .values()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    fn to_dense(&self) -> (i32, Vec<BigInt>) {
        let Some(lo) = self.min_exp() else {
            return (0, Vec::new());
        };
        let hi = self.max_exp().unwrap();
        let mut v = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (e, c) in &self.terms {
            v[(e - lo) as usize] = c.clone();
        }
        (lo, v)
    }

    fn from_dense(lo: i32, v: &[BigInt]) -> Self {
        let mut terms = BTreeMap::new();
        for (k, c) in v.iter().enumerate() {
            if !c.is_zero() {
                terms.insert(lo + k as i32, c.clone());
            }
        }
        Self { terms }
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if let Some((c, e)) = d.as_monomial() {
            let mut terms = BTreeMap::new();
            for (k, v) in &self.terms {
                let (quo, rem) = v.div_rem(&c);
                if !rem.is_zero() {
                    return None;
                }
                terms.insert(k - e, quo);
            }
            return Some(Self { terms });
        }
        let (nlo, num) = self.to_dense();
        let (dlo, den) = d.to_dense();
        let q = poly_div_exact(&num, &den)?;
        Some(Self::from_dense(nlo - dlo, &q))
    }

    /// Gcd in `Z[q, q^-1]`, normalized to a polynomial with nonzero constant
    /// term and positive leading coefficient. `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.normalize_unit();
        }
        if other.is_zero() {
            return self.normalize_unit();
        }
        let (_, a) = self.to_dense();
        let (_, b) = other.to_dense();
        let g = poly_gcd(&a, &b);
        Self::from_dense(0, &g).normalize_unit()
    }

    /// Divides out the unit part `±q^e` so the result is a polynomial with
    /// nonzero constant term and positive leading coefficient.
    pub fn normalize_unit(&self) -> Self {
        let Some(lo) = self.min_exp() else {
            return Self::zero();
        };
        let mut out = self.shift(-lo);
        if out.terms.values().next_back().unwrap().is_negative() {
            out = -out;
        }
        out
    }

    /// The unit `±q^e` with `self = unit * self.normalize_unit()`.
    pub fn unit_part(&self) -> Self {
        let Some(lo) = self.min_exp() else {
            return Self::one();
        };
        let sign = if self.terms.values().next_back().unwrap().is_negative() {
            -1
        } else {
            1
        };
        Self::monomial(sign, lo)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }
}

fn trim(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Option<Vec<BigInt>> {
    let mut r: Vec<BigInt> = num.to_vec();
    trim(&mut r);
    let mut den = den.to_vec();
    trim(&mut den);
    let dd = den.len() - 1;
    let lead = den[dd].clone();
    if r.len() < den.len() {
        return if r.is_empty() { Some(Vec::new()) } else { None };
    }
    let mut q = vec![BigInt::zero(); r.len() - dd];
    while r.len() > dd && !r.is_empty() {
        let top = r.len() - 1;
        let (c, rem) = r[top].div_rem(&lead);
        if !rem.is_zero() {
            return None;
        }
        let shift = top - dd;
        for (k, dc) in den.iter().enumerate() {
            r[shift + k] -= &c * dc;
        }
        q[shift] = c;
        trim(&mut r);
    }
    if r.is_empty() {
        Some(q)
    } else {
        None
    }
}

fn content_of(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
}

fn primitive_part(v: &[BigInt]) -> Vec<BigInt> {
    let c = content_of(v);
    if c.is_zero() {
        return Vec::new();
    }
    let mut out: Vec<BigInt> = v.iter().map(|x| x / &c).collect();
    trim(&mut out);
    if out.last().is_some_and(|x| x.is_negative()) {
        for x in &mut out {
            *x = -x.clone();
        }
    }
    out
}

/// Pseudo-remainder of `a` by `b` (both trimmed, `b` nonzero).
fn prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lb = b[db].clone();
    while r.len() > db && !r.is_empty() {
        let top = r.len() - 1;
        let c = r[top].clone();
        for x in r.iter_mut() {
            *x *= &lb;
        }
        let shift = top - db;
        for (k, bc) in b.iter().enumerate() {
            r[shift + k] -= &c * bc;
        }
        trim(&mut r);
    }
    r
}

/// Primitive polynomial remainder sequence gcd over `Z[x]`.
fn poly_gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let g = content_of(a).gcd(&content_of(b));
    let mut x = primitive_part(a);
    let mut y = primitive_part(b);
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let r = prem(&x, &y);
        x = y;
        y = primitive_part(&r);
    }
    let mut out: Vec<BigInt> = x.iter().map(|c| c * &g).collect();
    trim(&mut out);
    out
}

impl Add for &LaurentInt {
    type Output = LaurentInt;
    fn add(self, rhs: &LaurentInt) -> LaurentInt {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c);
        }
        out
    }
}

impl Sub for &LaurentInt {
    type Output = LaurentInt;
    fn sub(self, rhs: &LaurentInt) -> LaurentInt {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, &-c);
        }
        out
    }
}

impl Mul for &LaurentInt {
    type Output = LaurentInt;
    fn mul(self, rhs: &LaurentInt) -> LaurentInt {
        let mut out = LaurentInt::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, &(c1 * c2));
            }
        }
        out
    }
}

impl Neg for &LaurentInt {
    type Output = LaurentInt;
    fn neg(self) -> LaurentInt {
        LaurentInt {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for LaurentInt {
    type Output = LaurentInt;
    fn neg(self) -> LaurentInt {
        -&self
    }
}

impl Add for LaurentInt {
    type Output = LaurentInt;
    fn add(self, rhs: LaurentInt) -> LaurentInt {
        &self + &rhs
    }
}

impl Sub for LaurentInt {
    type Output = LaurentInt;
    fn sub(self, rhs: LaurentInt) -> LaurentInt {
        &self - &rhs
    }
}

impl Mul for LaurentInt {
    type Output = LaurentInt;
    fn mul(self, rhs: LaurentInt) -> LaurentInt {
        &self * &rhs
    }
}

impl crate::ring::Ring for LaurentInt {
    fn zero() -> Self {
        LaurentInt::zero()
    }
    fn one() -> Self {
        LaurentInt::one()
    }
    fn is_zero(&self) -> bool {
        LaurentInt::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl fmt::Display for LaurentInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let show_coeff = !a.is_one() || *e == 0;
            if show_coeff {
                write!(f, "{a}")?;
            }
            match *e {
                0 => {}
                1 => write!(f, "q")?,
                _ => write!(f, "q^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L({self})")
    }
}

impl Serialize for LaurentInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Quantum integer `[n] = (q^n - q^-n) / (q - q^-1)`; `[-n] = -[n]`.
pub fn quantum_int(n: i32) -> LaurentInt {
    let m = n.abs();
    let mut out = LaurentInt::zero();
    let mut e = m - 1;
    while e >= -(m - 1) && m > 0 {
        out.add_term(e, &BigInt::one());
        e -= 2;
    }
    if n < 0 {
        -out
    } else {
        out
    }
}

/// `[a]! = [1][2]...[a]`, with `[0]! = 1`.
pub fn quantum_factorial(a: i64) -> Result<LaurentInt> {
    if a < 0 {
        return input(format!("quantum factorial of negative integer {a}"));
    }
    Ok((1..=a as i32).fold(LaurentInt::one(), |acc, k| &acc * &quantum_int(k)))
}

/// Gaussian binomial `[n choose k]` for `0 <= k <= n`.
pub fn quantum_binomial(n: i64, k: i64) -> Result<LaurentInt> {
    if k < 0 || k > n {
        return Ok(LaurentInt::zero());
    }
    let num = quantum_factorial(n)?;
    let den = &quantum_factorial(k)? * &quantum_factorial(n - k)?;
    num.div_exact(&den)
        .ok_or_else(|| crate::error::Error::Invariant("quantum binomial not integral".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lp(terms: &[(i32, i64)]) -> LaurentInt {
        LaurentInt::from_terms(terms.iter().copied())
    }

    #[test]
    fn quantum_two_is_q_plus_q_inverse() {
        assert_eq!(quantum_int(2), lp(&[(1, 1), (-1, 1)]));
        assert_eq!(quantum_factorial(0).unwrap(), LaurentInt::one());
    }

    #[test]
    fn quantum_three_factorial() {
        let expected = &lp(&[(2, 1), (0, 1), (-2, 1)]) * &lp(&[(1, 1), (-1, 1)]);
        assert_eq!(quantum_factorial(3).unwrap(), expected);
        assert!(quantum_factorial(-1).is_err());
    }

    #[test]
    fn binomial_is_symmetric_and_integral() {
        let b = quantum_binomial(4, 2).unwrap();
        assert_eq!(b, b.bar());
        assert_eq!(b.eval_at_one(), BigInt::from(6));
    }

    #[test]
    fn exact_division_detects_non_divisibility() {
        let a = lp(&[(2, 1), (0, -1)]); // q^2 - 1
        let b = lp(&[(1, 1), (0, -1)]); // q - 1
        assert_eq!(a.div_exact(&b).unwrap(), lp(&[(1, 1), (0, 1)]));
        assert!(b.div_exact(&a).is_none());
        assert!(lp(&[(0, 3)]).div_exact(&lp(&[(0, 2)])).is_none());
    }

    #[test]
    fn gcd_strips_units() {
        let a = lp(&[(3, 2), (1, -2)]); // 2q^3 - 2q = 2q(q-1)(q+1)
        let b = lp(&[(0, 4), (1, 4)]); // 4(1+q)
        assert_eq!(a.gcd(&b), lp(&[(0, 2), (1, 2)]));
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(lp(&[(1, 1), (-1, -2), (0, 1)]).to_string(), "q + 1 - 2q^-1");
        assert_eq!(LaurentInt::zero().to_string(), "0");
    }

    fn arb_laurent() -> impl Strategy<Value = LaurentInt> {
        prop::collection::vec((-4i32..5, -3i64..4), 0..5).prop_map(LaurentInt::from_terms)
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_laurent(), b in arb_laurent(), c in arb_laurent()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a - &b) + &b, a.clone());
        }

        #[test]
        fn product_divides_back(a in arb_laurent(), b in arb_laurent()) {
            prop_assume!(!b.is_zero());
            prop_assert_eq!((&a * &b).div_exact(&b), Some(a));
        }

        #[test]
        fn gcd_divides_both(a in arb_laurent(), b in arb_laurent()) {
            let g = a.gcd(&b);
            prop_assume!(!g.is_zero());
            prop_assert!(a.div_exact(&g).is_some());
            prop_assert!(b.div_exact(&g).is_some());
        }
    }
}
