//! Random instances and tables for tests and benchmarks.
//!
//! Binary tables are built as sums of routed generalized interval terms, which
//! are submodular by construction.

use rand::Rng;

use crate::evaluation::Evaluation;
use crate::interval::{ArgPattern, DecompositionTerm, GeneralizedInterval};
use crate::model::{Instance, SoftConstraint, VarId};
use crate::submodular::reconstruct;
use crate::table::{BinaryTable, UnaryTable};

/// Knobs for the random generators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Shape {
    /// Largest integer numerator of a finite value.
    pub max_value: u64,
    /// Values are drawn with denominators in `1..=max_denominator`.
    pub max_denominator: u64,
    /// Probability that a generated weight is infinite.
    pub infinity: f64,
    /// Number of interval terms summed into each binary table.
    pub terms: usize,
}

impl Default for Shape {
    fn default() -> Self {
        Shape {
            max_value: 9,
            max_denominator: 2,
            infinity: 0.05,
            terms: 4,
        }
    }
}

pub fn evaluation<R: Rng + ?Sized>(rng: &mut R, shape: &Shape) -> Evaluation {
    if rng.gen_bool(shape.infinity) {
        return Evaluation::infinite();
    }
    let numerator = rng.gen_range(0..=shape.max_value);
    let denominator = rng.gen_range(1..=shape.max_denominator.max(1));
    Evaluation::ratio(numerator, denominator).expect("non-zero denominator")
}

pub fn interval<R: Rng + ?Sized>(rng: &mut R, m: usize, shape: &Shape) -> GeneralizedInterval {
    GeneralizedInterval::new(rng.gen_range(1..=m), rng.gen_range(1..=m), evaluation(rng, shape))
}

pub fn unary_table<R: Rng + ?Sized>(rng: &mut R, m: usize, shape: &Shape) -> UnaryTable {
    UnaryTable::from_fn(m, |_| evaluation(rng, shape))
}

/// A random sum of `shape.terms` routed interval terms.
pub fn submodular_table<R: Rng + ?Sized>(rng: &mut R, m: usize, shape: &Shape) -> BinaryTable {
    const PATTERNS: [ArgPattern; 4] = [ArgPattern::XY, ArgPattern::YX, ArgPattern::XX, ArgPattern::YY];
    let terms: Vec<DecompositionTerm> = (0..shape.terms)
        .map(|_| DecompositionTerm {
            interval: interval(rng, m, shape),
            pattern: PATTERNS[rng.gen_range(0..PATTERNS.len())],
        })
        .collect();
    reconstruct(&terms, m)
}

/// Variables `v0 .. v{n-1}` and `constraints` random constraints mixing unary
/// tables, submodular binary tables and raw interval constraints.
pub fn instance<R: Rng + ?Sized>(rng: &mut R, n: usize, m: usize, constraints: usize, shape: &Shape) -> Instance {
    let mut inst = Instance::new(m).expect("m >= 1");
    for i in 0..n {
        inst.add_variable(format!("v{i}")).expect("fresh name");
    }
    let var = |rng: &mut R| VarId(rng.gen_range(0..n));
    for _ in 0..constraints {
        let c = match rng.gen_range(0..3) {
            0 => SoftConstraint::unary(var(rng), unary_table(rng, m, shape)),
            1 => SoftConstraint::binary(var(rng), var(rng), submodular_table(rng, m, shape)),
            _ => SoftConstraint::interval(var(rng), var(rng), interval(rng, m, shape)),
        };
        inst.add_constraint(c).expect("generated constraint fits the instance");
    }
    inst
}

/// Only interval constraints.
pub fn interval_instance<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    m: usize,
    constraints: usize,
    shape: &Shape,
) -> Instance {
    let mut inst = Instance::new(m).expect("m >= 1");
    for i in 0..n {
        inst.add_variable(format!("v{i}")).expect("fresh name");
    }
    for _ in 0..constraints {
        let (v, w) = (VarId(rng.gen_range(0..n)), VarId(rng.gen_range(0..n)));
        inst.add_constraint(SoftConstraint::interval(v, w, interval(rng, m, shape)))
            .expect("generated constraint fits the instance");
    }
    inst
}

/// Only binary submodular tables, each on two distinct variables.
pub fn binary_instance<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    m: usize,
    constraints: usize,
    shape: &Shape,
) -> Instance {
    assert!(n >= 2, "binary constraints on distinct variables need n >= 2");
    let mut inst = Instance::new(m).expect("m >= 1");
    for i in 0..n {
        inst.add_variable(format!("v{i}")).expect("fresh name");
    }
    for _ in 0..constraints {
        let v = rng.gen_range(0..n);
        let w = (v + rng.gen_range(1..n)) % n;
        let t = submodular_table(rng, m, shape);
        inst.add_constraint(SoftConstraint::binary(VarId(v), VarId(w), t))
            .expect("generated constraint fits the instance");
    }
    inst
}
