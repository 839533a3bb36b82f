//! Field of fractions of `Z[q, q^-1]`.

use std::fmt;

use num_bigint::BigInt;
use serde::{Serialize, Serializer};

use crate::laurent::LaurentInt;
use crate::ring::{Field, Ring};

/// `num / den` in lowest terms with `den` a polynomial with nonzero constant
/// term and positive leading coefficient, which makes the representation
/// canonical.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: LaurentInt,
    den: LaurentInt,
}

impl RatFunc {
    pub fn new(num: LaurentInt, den: LaurentInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::from_laurent(LaurentInt::zero());
        }
        let g = num.gcd(&den);
        let mut num = num.div_exact(&g).expect("gcd divides numerator");
        let mut den = den.div_exact(&g).expect("gcd divides denominator");
        let unit = den.unit_part();
        den = den.div_exact(&unit).unwrap();
        num = num.div_exact(&unit).unwrap();
        Self { num, den }
    }

    pub fn from_laurent(num: LaurentInt) -> Self {
        Self {
            num,
            den: LaurentInt::one(),
        }
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_laurent(LaurentInt::from_int(BigInt::from(c)))
    }

    pub fn num(&self) -> &LaurentInt {
        &self.num
    }

    pub fn den(&self) -> &LaurentInt {
        &self.den
    }

    /// `Some` when the denominator is trivial.
    pub fn as_laurent(&self) -> Option<&LaurentInt> {
        if self.den.is_one() {
            Some(&self.num)
        } else {
            None
        }
    }
}

impl Ring for RatFunc {
    fn zero() -> Self {
        Self::from_laurent(LaurentInt::zero())
    }
    fn one() -> Self {
        Self::from_laurent(LaurentInt::one())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return Self::new(&self.num + &o.num, self.den.clone());
        }
        Self::new(
            &(&self.num * &o.den) + &(&o.num * &self.den),
            &self.den * &o.den,
        )
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn mul(&self, o: &Self) -> Self {
        if self.den.is_one() && o.den.is_one() {
            return Self::from_laurent(&self.num * &o.num);
        }
        Self::new(&self.num * &o.num, &self.den * &o.den)
    }
    fn neg(&self) -> Self {
        Self {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Field for RatFunc {
    fn inv(&self) -> Self {
        assert!(!self.num.is_zero(), "inverse of zero");
        Self::new(self.den.clone(), self.num.clone())
    }
}

impl From<LaurentInt> for RatFunc {
    fn from(l: LaurentInt) -> Self {
        Self::from_laurent(l)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R({self})")
    }
}

impl Serialize for RatFunc {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lp(terms: &[(i32, i64)]) -> LaurentInt {
        LaurentInt::from_terms(terms.iter().copied())
    }

    #[test]
    fn canonical_form_cancels_common_factors() {
        // (q^2 - 1) / (q^2 - q) = (q + 1) / q
        let r = RatFunc::new(lp(&[(2, 1), (0, -1)]), lp(&[(2, 1), (1, -1)]));
        assert_eq!(r, RatFunc::from_laurent(lp(&[(0, 1), (-1, 1)])));
        assert!(r.as_laurent().is_some());
    }

    #[test]
    fn negative_denominators_are_normalized() {
        let a = RatFunc::new(LaurentInt::one(), lp(&[(0, -2)]));
        let b = RatFunc::new(LaurentInt::monomial(-1, 0), lp(&[(0, 2)]));
        assert_eq!(a, b);
    }

    fn arb_nonzero() -> impl Strategy<Value = LaurentInt> {
        prop::collection::vec((-3i32..4, -3i64..4), 1..4)
            .prop_map(LaurentInt::from_terms)
            .prop_filter("nonzero", |l| !l.is_zero())
    }

    proptest! {
        #[test]
        fn field_inverse(a in arb_nonzero(), b in arb_nonzero()) {
            let r = RatFunc::new(a, b);
            prop_assert_eq!(r.mul(&r.inv()), RatFunc::one());
        }

        #[test]
        fn addition_commutes(a in arb_nonzero(), b in arb_nonzero(), c in arb_nonzero()) {
            let x = RatFunc::new(a.clone(), b.clone());
            let y = RatFunc::new(c.clone(), a.clone());
            prop_assert_eq!(x.add(&y), y.add(&x));
            prop_assert_eq!(x.add(&y).sub(&y), x);
        }
    }
}
