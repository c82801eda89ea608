//! Builders for common unary and binary evaluation functions over `1..=M`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::evaluation::Evaluation;
use crate::model::ConstraintFunction;
use crate::submodular::is_submodular_binary;
use crate::table::{BinaryTable, UnaryTable};

fn rational(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn power(base: usize, r: u32) -> Evaluation {
    let v = (base as u128)
        .checked_pow(r)
        .expect("domain distance power overflows u128");
    Evaluation::finite(BigRational::from_integer(BigInt::from(v))).expect("non-negative")
}

fn check_exponent(r: u32) -> Result<()> {
    if r < 1 {
        return Err(Error::Parameter("exponent r must be at least 1".into()));
    }
    Ok(())
}

/// `|x - y|^r`.
pub fn delta(m: usize, r: u32) -> Result<BinaryTable> {
    check_exponent(r)?;
    Ok(BinaryTable::from_fn(m, |x, y| power(x.abs_diff(y), r)))
}

/// `max(x - y, 0)^r`.
pub fn delta_plus(m: usize, r: u32) -> Result<BinaryTable> {
    check_exponent(r)?;
    Ok(BinaryTable::from_fn(m, |x, y| power(x.saturating_sub(y), r)))
}

/// `|x - y|^r` when `x >= y`, infinite otherwise.
pub fn delta_geq(m: usize, r: u32) -> Result<BinaryTable> {
    check_exponent(r)?;
    Ok(BinaryTable::from_fn(m, |x, y| {
        if x >= y {
            power(x - y, r)
        } else {
            Evaluation::infinite()
        }
    }))
}

/// `a x + b y + c` with non-negative rational coefficients.
pub fn linear(m: usize, a: &BigRational, b: &BigRational, c: &BigRational) -> Result<BinaryTable> {
    if a.is_negative() || b.is_negative() || c.is_negative() {
        return Err(Error::Parameter("linear coefficients must be non-negative".into()));
    }
    Ok(BinaryTable::from_fn(m, |x, y| {
        let v = a * rational(x as i64) + b * rational(y as i64) + c;
        Evaluation::finite(v).expect("non-negative")
    }))
}

/// `M^2 - x y`.
pub fn pi(m: usize) -> BinaryTable {
    let mm = (m * m) as u64;
    BinaryTable::from_fn(m, |x, y| Evaluation::from_integer(mm - (x * y) as u64))
}

/// Nearest integer to `sqrt(s)`, ties impossible for integers.
fn rounded_sqrt(s: u128) -> u128 {
    let f = num_integer::Roots::sqrt(&s);
    // (f + 1/2)^2 = f^2 + f + 1/4, so round up iff s - f^2 > f.
    if s - f * f > f {
        f + 1
    } else {
        f
    }
}

/// `sqrt(x^2 + y^2)` rounded to the nearest multiple of `1 / denominator`.
/// The rounded table is re-checked and rejected if it is no longer Monge.
pub fn euclidean(m: usize, denominator: u64) -> Result<BinaryTable> {
    if denominator == 0 {
        return Err(Error::Parameter("denominator must be positive".into()));
    }
    let d = denominator as u128;
    let table = BinaryTable::from_fn(m, |x, y| {
        let s = d * d * ((x * x + y * y) as u128);
        let k = rounded_sqrt(s);
        Evaluation::finite(BigRational::new(BigInt::from(k), BigInt::from(d))).expect("positive")
    });
    is_submodular_binary(&table).map_err(|witness| Error::ApproximationBrokeSubmodularity { denominator, witness })?;
    Ok(table)
}

fn crisp(allowed: bool) -> Evaluation {
    if allowed {
        Evaluation::zero()
    } else {
        Evaluation::infinite()
    }
}

fn check_value(m: usize, v: usize) -> Result<()> {
    if v == 0 || v > m {
        return Err(Error::Domain(format!("tuple value {v} outside 1..={m}")));
    }
    Ok(())
}

/// Zero on the allowed values, infinite elsewhere.
pub fn relation_unary(m: usize, allowed: &[usize]) -> Result<UnaryTable> {
    for &v in allowed {
        check_value(m, v)?;
    }
    Ok(UnaryTable::from_fn(m, |x| crisp(allowed.contains(&x))))
}

/// Zero on the allowed pairs, infinite elsewhere.
pub fn relation_binary(m: usize, allowed: &[(usize, usize)]) -> Result<BinaryTable> {
    for &(x, y) in allowed {
        check_value(m, x)?;
        check_value(m, y)?;
    }
    Ok(BinaryTable::from_fn(m, |x, y| crisp(allowed.contains(&(x, y)))))
}

/// Crisp wrapper of a relation of arity 1 or 2 given as explicit tuples.
pub fn from_relation(m: usize, arity: usize, tuples: &[Vec<usize>]) -> Result<ConstraintFunction> {
    if tuples.iter().any(|t| t.len() != arity) {
        return Err(Error::Domain(format!("every tuple must have length {arity}")));
    }
    match arity {
        1 => {
            let values: Vec<usize> = tuples.iter().map(|t| t[0]).collect();
            relation_unary(m, &values).map(ConstraintFunction::Unary)
        }
        2 => {
            let pairs: Vec<(usize, usize)> = tuples.iter().map(|t| (t[0], t[1])).collect();
            relation_binary(m, &pairs).map(ConstraintFunction::Binary)
        }
        _ => Err(Error::Parameter(format!(
            "relations of arity {arity} are not supported"
        ))),
    }
}

/// Arithmetic constraint forms of finite-domain constraint languages.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChipKind {
    /// `a X != b` (unary; `c` unused).
    NeqConst,
    /// `a X = b Y + c`
    Eq,
    /// `a X <= b Y + c`
    Leq,
    /// `a X >= b Y + c`
    Geq,
}

/// Crisp table for an arithmetic constraint over `1..=M`. `a` must be
/// positive, `b` and `c` non-negative.
pub fn chip(m: usize, kind: ChipKind, a: &BigRational, b: &BigRational, c: &BigRational) -> Result<ConstraintFunction> {
    if a.is_zero() {
        return Err(Error::Parameter("coefficient a must be non-zero".into()));
    }
    if a.is_negative() || b.is_negative() || c.is_negative() {
        return Err(Error::Parameter("coefficients must be non-negative".into()));
    }
    let lhs = |x: usize| a * rational(x as i64);
    let rhs = |y: usize| b * rational(y as i64) + c;
    Ok(match kind {
        ChipKind::NeqConst => ConstraintFunction::Unary(UnaryTable::from_fn(m, |x| crisp(&lhs(x) != b))),
        ChipKind::Eq => ConstraintFunction::Binary(BinaryTable::from_fn(m, |x, y| crisp(lhs(x) == rhs(y)))),
        ChipKind::Leq => ConstraintFunction::Binary(BinaryTable::from_fn(m, |x, y| crisp(lhs(x) <= rhs(y)))),
        ChipKind::Geq => ConstraintFunction::Binary(BinaryTable::from_fn(m, |x, y| crisp(lhs(x) >= rhs(y)))),
    })
}

/// The 2x2 exclusive-or penalty: 0 when `x != y`, 1 otherwise.
pub fn phi_xor() -> BinaryTable {
    BinaryTable::from_fn(2, |x, y| Evaluation::from_integer(u64::from(x == y)))
}

/// Equality penalty: 0 when `x == y`, 1 otherwise.
pub fn phi_eq(m: usize) -> Result<BinaryTable> {
    if m < 2 {
        return Err(Error::Parameter("phi_eq needs at least two domain values".into()));
    }
    Ok(BinaryTable::from_fn(m, |x, y| {
        Evaluation::from_integer(u64::from(x != y))
    }))
}

/// `(x - i/2)^2`.
pub fn psi_center(m: usize, i: u64) -> UnaryTable {
    UnaryTable::from_fn(m, |x| {
        let diff = BigRational::new(BigInt::from(2 * x as i64) - BigInt::from(i), BigInt::from(2));
        Evaluation::finite(&diff * &diff).expect("square is non-negative")
    })
}
