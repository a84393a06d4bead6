//! Exact rational numbers over arbitrary-precision integers.
//!
//! Every probability in the crate is a [`Rational`]. Values are kept in
//! canonical form (positive denominator, numerator and denominator coprime),
//! so structural equality is numeric equality. The textual form is always
//! `num/den`, including integers (`0/1`, `3/1`).

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RationalError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("malformed rational `{0}`")]
    Malformed(String),
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

/// Builds the canonical fraction `n/d`.
pub fn rat(n: impl Into<BigInt>, d: impl Into<BigInt>) -> Result<Rational, RationalError> {
    let d = d.into();
    if d.is_zero() {
        return Err(RationalError::ZeroDenominator);
    }
    Ok(Rational(BigRational::new(n.into(), d)))
}

impl Rational {
    pub fn new(n: impl Into<BigInt>, d: impl Into<BigInt>) -> Result<Self, RationalError> {
        rat(n, d)
    }

    /// `1/n` for a nonzero count. Panics on zero, which callers rule out
    /// before asking for a uniform weight.
    pub fn recip_of(n: usize) -> Self {
        assert!(n > 0, "reciprocal of zero count");
        Rational(BigRational::new(BigInt::one(), BigInt::from(n)))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    /// `n/d` for counts; panics when `d == 0`.
    pub fn ratio(n: usize, d: usize) -> Self {
        assert!(d > 0, "ratio with zero denominator");
        Rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn checked_div(&self, rhs: &Rational) -> Option<Rational> {
        if rhs.is_zero() {
            None
        } else {
            Some(Rational(&self.0 / &rhs.0))
        }
    }

    pub fn abs(&self) -> Rational {
        Rational(self.0.abs())
    }

    /// Integer value when the denominator is 1.
    pub fn to_integer(&self) -> Option<BigInt> {
        self.0.is_integer().then(|| self.0.to_integer())
    }

    pub fn to_usize(&self) -> Option<usize> {
        self.to_integer().and_then(|n| n.to_usize())
    }

    /// Lossy conversion for display and diagnostics only.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn max(self, other: Rational) -> Rational {
        if other > self {
            other
        } else {
            self
        }
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Rational(r)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = RationalError;

    /// Accepts `n`, `n/d` and `-n/d`, canonicalising on the way in.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let malformed = || RationalError::Malformed(s.to_string());
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n, d),
            None => (s, "1"),
        };
        let n: BigInt = n.trim().parse().map_err(|_| malformed())?;
        let d: BigInt = d.trim().parse().map_err(|_| malformed())?;
        rat(n, d)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl<'a> $tr<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
        impl<'a, 'b> $tr<&'b Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'b Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl AddAssign<Rational> for Rational {
    fn add_assign(&mut self, rhs: Rational) {
        self.0 += rhs.0;
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

/// Least common multiple of the denominators; used to turn a set of
/// rational weights into integer numerators over a shared denominator.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn reduces_to_lowest_terms() {
        assert_eq!(rat(2, 4).unwrap().to_string(), "1/2");
        assert_eq!(rat(3, -6).unwrap().to_string(), "-1/2");
        assert_eq!(rat(0, 5).unwrap().to_string(), "0/1");
        assert_eq!(rat(6, 3).unwrap().to_string(), "2/1");
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(rat(1, 0), Err(RationalError::ZeroDenominator));
        assert_eq!(
            "1/0".parse::<Rational>(),
            Err(RationalError::ZeroDenominator)
        );
    }

    #[test]
    fn parse_accepts_non_canonical_input() {
        assert_eq!("4/8".parse::<Rational>().unwrap(), rat(1, 2).unwrap());
        assert_eq!("-3/-6".parse::<Rational>().unwrap(), rat(1, 2).unwrap());
        assert_eq!("7".parse::<Rational>().unwrap(), rat(7, 1).unwrap());
        assert!("1/2/3".parse::<Rational>().is_err());
        assert!("x".parse::<Rational>().is_err());
    }

    #[test]
    fn big_values_do_not_overflow() {
        let big = rat(BigInt::from(u64::MAX) * BigInt::from(u64::MAX), 3).unwrap();
        let back = (&big * &rat(3, 1).unwrap()) / rat(BigInt::from(u64::MAX), 1).unwrap();
        assert_eq!(back, Rational::from_integer(BigInt::from(u64::MAX)));
    }

    fn arb_rat() -> impl Strategy<Value = Rational> {
        (any::<i64>(), 1i64..=i64::MAX).prop_map(|(n, d)| rat(n, d).unwrap())
    }

    proptest! {
        #[test]
        fn add_then_sub_is_identity(a in arb_rat(), b in arb_rat()) {
            prop_assert_eq!((&a + &b) - &b, a);
        }

        #[test]
        fn order_matches_cross_multiplication(a in arb_rat(), b in arb_rat()) {
            let lhs = a.numer() * b.denom();
            let rhs = b.numer() * a.denom();
            prop_assert_eq!(a.cmp(&b), lhs.cmp(&rhs));
        }

        #[test]
        fn display_parse_round_trip(a in arb_rat()) {
            prop_assert_eq!(a.to_string().parse::<Rational>().unwrap(), a);
        }
    }
}
