//! The evaluation structure: non-negative exact rationals extended with a
//! distinguished infinite element.
//!
//! Aggregation is addition with infinity absorbing. Subtraction is partial:
//! it is only defined when the minuend is at least the subtrahend, and
//! `inf - inf = inf`.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::Add;
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Repr {
    Finite(BigRational),
    Infinite,
}

/// A penalty value: a non-negative rational in lowest terms, or infinity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Evaluation(Repr);

impl Evaluation {
    pub fn zero() -> Self {
        Evaluation(Repr::Finite(BigRational::zero()))
    }

    pub fn infinite() -> Self {
        Evaluation(Repr::Infinite)
    }

    pub fn from_integer(n: u64) -> Self {
        Evaluation(Repr::Finite(BigRational::from_integer(BigInt::from(n))))
    }

    /// `numerator / denominator`, reduced to lowest terms.
    pub fn ratio(numerator: u64, denominator: u64) -> Result<Self> {
        if denominator == 0 {
            return Err(Error::Parameter("zero denominator".into()));
        }
        Ok(Evaluation(Repr::Finite(BigRational::new(
            BigInt::from(numerator),
            BigInt::from(denominator),
        ))))
    }

    /// Wraps a rational, rejecting negative values.
    pub fn finite(value: BigRational) -> Result<Self> {
        if value.is_negative() {
            return Err(Error::Parameter(format!("evaluations are non-negative, got {value}")));
        }
        Ok(Evaluation(Repr::Finite(value)))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self.0, Repr::Infinite)
    }

    pub fn is_finite(&self) -> bool {
        !self.is_infinite()
    }

    pub fn is_zero(&self) -> bool {
        matches!(&self.0, Repr::Finite(r) if r.is_zero())
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.0 {
            Repr::Finite(r) => Some(r),
            Repr::Infinite => None,
        }
    }

    pub fn into_rational(self) -> Option<BigRational> {
        match self.0 {
            Repr::Finite(r) => Some(r),
            Repr::Infinite => None,
        }
    }

    /// Partial inverse of aggregation. Fails when `self < other`.
    pub fn checked_sub(&self, other: &Evaluation) -> Result<Evaluation> {
        match (&self.0, &other.0) {
            (Repr::Infinite, _) => Ok(Evaluation::infinite()),
            (Repr::Finite(_), Repr::Infinite) => Err(Error::PreconditionViolated(format!("{self} - {other}"))),
            (Repr::Finite(a), Repr::Finite(b)) => {
                if a < b {
                    Err(Error::PreconditionViolated(format!("{self} - {other}")))
                } else {
                    Ok(Evaluation(Repr::Finite(a - b)))
                }
            }
        }
    }

    pub fn min(self, other: Evaluation) -> Evaluation {
        if other < self {
            other
        } else {
            self
        }
    }
}

impl Default for Evaluation {
    fn default() -> Self {
        Evaluation::zero()
    }
}

impl From<u64> for Evaluation {
    fn from(n: u64) -> Self {
        Evaluation::from_integer(n)
    }
}

impl PartialOrd for Evaluation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Evaluation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Infinite, Repr::Infinite) => Ordering::Equal,
            (Repr::Infinite, Repr::Finite(_)) => Ordering::Greater,
            (Repr::Finite(_), Repr::Infinite) => Ordering::Less,
            (Repr::Finite(a), Repr::Finite(b)) => a.cmp(b),
        }
    }
}

impl Add<&Evaluation> for &Evaluation {
    type Output = Evaluation;

    fn add(self, rhs: &Evaluation) -> Evaluation {
        match (&self.0, &rhs.0) {
            (Repr::Finite(a), Repr::Finite(b)) => Evaluation(Repr::Finite(a + b)),
            _ => Evaluation::infinite(),
        }
    }
}

impl Add for Evaluation {
    type Output = Evaluation;

    fn add(self, rhs: Evaluation) -> Evaluation {
        match (self.0, rhs.0) {
            (Repr::Finite(a), Repr::Finite(b)) => Evaluation(Repr::Finite(a + b)),
            _ => Evaluation::infinite(),
        }
    }
}

impl Add<&Evaluation> for Evaluation {
    type Output = Evaluation;

    fn add(self, rhs: &Evaluation) -> Evaluation {
        match (self.0, &rhs.0) {
            (Repr::Finite(a), Repr::Finite(b)) => Evaluation(Repr::Finite(a + b)),
            _ => Evaluation::infinite(),
        }
    }
}

impl Sum for Evaluation {
    fn sum<I: Iterator<Item = Evaluation>>(iter: I) -> Self {
        iter.fold(Evaluation::zero(), |acc, e| acc + e)
    }
}

impl<'a> Sum<&'a Evaluation> for Evaluation {
    fn sum<I: Iterator<Item = &'a Evaluation>>(iter: I) -> Self {
        iter.fold(Evaluation::zero(), |acc, e| acc + e)
    }
}

/// Integers print bare, other rationals as `p/q`, infinity as `inf`.
impl fmt::Display for Evaluation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Infinite => f.write_str("inf"),
            Repr::Finite(r) if r.denom().is_one() => write!(f, "{}", r.numer()),
            Repr::Finite(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl FromStr for Evaluation {
    type Err = Error;

    /// Accepts `inf`, decimal integers and `p/q`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parameter(format!("invalid evaluation `{s}`"));
        if s == "inf" {
            return Ok(Evaluation::infinite());
        }
        let parse_natural = |t: &str| -> Result<BigInt> {
            if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            BigInt::parse_bytes(t.as_bytes(), 10).ok_or_else(bad)
        };
        let value = match s.split_once('/') {
            Some((p, q)) => {
                let q = parse_natural(q)?;
                if q.sign() == Sign::NoSign {
                    return Err(bad());
                }
                BigRational::new(parse_natural(p)?, q)
            }
            None => BigRational::from_integer(parse_natural(s)?),
        };
        Ok(Evaluation(Repr::Finite(value)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(s: &str) -> Evaluation {
        s.parse().unwrap()
    }

    #[test]
    fn addition() {
        assert_eq!(ev("3") + ev("4"), ev("7"));
        assert_eq!(ev("inf") + ev("0"), Evaluation::infinite());
        assert_eq!(ev("3/4") + ev("2"), ev("11/4"));
    }

    #[test]
    fn subtraction() {
        assert_eq!(ev("inf").checked_sub(&ev("inf")).unwrap(), ev("inf"));
        assert_eq!(ev("inf").checked_sub(&ev("5")).unwrap(), ev("inf"));
        assert_eq!(ev("7").checked_sub(&ev("3")).unwrap(), ev("4"));
        assert!(matches!(
            ev("3").checked_sub(&ev("7")),
            Err(Error::PreconditionViolated(_))
        ));
        assert!(ev("3").checked_sub(&ev("inf")).is_err());
    }

    #[test]
    fn ordering_treats_infinities_as_equal() {
        assert!(ev("inf") > ev("1000000"));
        assert!(!(ev("inf") > ev("inf")));
        assert_eq!(ev("inf").cmp(&ev("inf")), Ordering::Equal);
    }

    #[test]
    fn canonical_form_and_display() {
        assert_eq!(ev("6/8"), ev("3/4"));
        assert_eq!(ev("6/8").to_string(), "3/4");
        assert_eq!(ev("10/5").to_string(), "2");
        assert_eq!(ev("inf").to_string(), "inf");
        assert_eq!(Evaluation::ratio(22, 8).unwrap().to_string(), "11/4");
    }

    #[test]
    fn rejects_malformed_and_negative() {
        for s in ["", "-1", "1/0", "1.5", "abc", "1/-2", "/3", "Inf"] {
            assert!(s.parse::<Evaluation>().is_err(), "{s}");
        }
        let neg = BigRational::from_integer(BigInt::from(-1));
        assert!(Evaluation::finite(neg).is_err());
    }

    #[test]
    fn unbounded_precision() {
        let big = ev("340282366920938463463374607431768211455");
        let sum = &big + &big;
        assert_eq!(sum.to_string(), "680564733841876926926749214863536422910");
    }
}
