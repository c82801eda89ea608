//! Generalized interval functions and the routed terms a decomposition is
//! made of.

use std::fmt;

use crate::error::{Error, Result};
use crate::evaluation::Evaluation;
use crate::table::BinaryTable;

/// The binary function that is `weight` when `x >= lower` and `y <= upper`,
/// and zero otherwise. `lower > upper` is allowed; on the diagonal such a
/// function is identically zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneralizedInterval {
    pub lower: usize,
    pub upper: usize,
    pub weight: Evaluation,
}

impl GeneralizedInterval {
    pub fn new(lower: usize, upper: usize, weight: Evaluation) -> Self {
        GeneralizedInterval { lower, upper, weight }
    }

    /// Checks `lower` and `upper` against the domain `1..=size`.
    pub fn validate(&self, size: usize) -> Result<()> {
        for (name, v) in [("a", self.lower), ("b", self.upper)] {
            if v == 0 || v > size {
                return Err(Error::Domain(format!("interval bound {name}={v} outside 1..={size}")));
            }
        }
        Ok(())
    }

    /// Value without range checks on the arguments.
    #[inline]
    pub fn value(&self, x: usize, y: usize) -> Evaluation {
        if x < self.lower || y > self.upper {
            Evaluation::zero()
        } else {
            self.weight.clone()
        }
    }

    #[inline]
    pub fn is_active(&self, x: usize, y: usize) -> bool {
        x >= self.lower && y <= self.upper
    }

    pub fn eval(&self, size: usize, x: usize, y: usize) -> Result<Evaluation> {
        if x == 0 || x > size || y == 0 || y > size {
            return Err(Error::Domain(format!("({x}, {y}) outside 1..={size}")));
        }
        Ok(self.value(x, y))
    }

    pub fn to_table(&self, size: usize) -> BinaryTable {
        BinaryTable::from_fn(size, |x, y| self.value(x, y))
    }
}

impl fmt::Display for GeneralizedInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "eta^{}[{},{}]", self.weight, self.lower, self.upper)
    }
}

/// Which arguments of a decomposed binary function `f(x, y)` feed an
/// interval term. `YX` means the term is evaluated as `eta(y, x)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ArgPattern {
    XY,
    YX,
    XX,
    YY,
}

impl ArgPattern {
    #[inline]
    pub fn route(self, x: usize, y: usize) -> (usize, usize) {
        match self {
            ArgPattern::XY => (x, y),
            ArgPattern::YX => (y, x),
            ArgPattern::XX => (x, x),
            ArgPattern::YY => (y, y),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DecompositionTerm {
    pub interval: GeneralizedInterval,
    pub pattern: ArgPattern,
}

impl DecompositionTerm {
    pub fn new(lower: usize, upper: usize, weight: Evaluation, pattern: ArgPattern) -> Self {
        DecompositionTerm {
            interval: GeneralizedInterval::new(lower, upper, weight),
            pattern,
        }
    }

    #[inline]
    pub fn value(&self, x: usize, y: usize) -> Evaluation {
        let (p, q) = self.pattern.route(x, y);
        self.interval.value(p, q)
    }
}

impl fmt::Display for DecompositionTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let args = match self.pattern {
            ArgPattern::XY => "(x, y)",
            ArgPattern::YX => "(y, x)",
            ArgPattern::XX => "(x, x)",
            ArgPattern::YY => "(y, y)",
        };
        write!(f, "{}{}", self.interval, args)
    }
}
