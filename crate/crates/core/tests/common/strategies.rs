//! Proptest strategies for evaluations, tables and instances.

use proptest::prelude::*;
use softcut::submodular::reconstruct;
use softcut::{
    ArgPattern, BinaryTable, DecompositionTerm, Evaluation, GeneralizedInterval, Instance, SoftConstraint, UnaryTable,
    VarId,
};

/// Small non-negative rationals, with `inf` roughly one time in `1 + finite_weight`.
pub fn evaluation(finite_weight: u32) -> impl Strategy<Value = Evaluation> {
    prop_oneof![
        finite_weight => (0u64..10, 1u64..4).prop_map(|(n, d)| Evaluation::ratio(n, d).unwrap()),
        1 => Just(Evaluation::infinite()),
    ]
}

pub fn finite_evaluation() -> impl Strategy<Value = Evaluation> {
    (0u64..10, 1u64..4).prop_map(|(n, d)| Evaluation::ratio(n, d).unwrap())
}

pub fn pattern() -> impl Strategy<Value = ArgPattern> {
    prop_oneof![
        Just(ArgPattern::XY),
        Just(ArgPattern::YX),
        Just(ArgPattern::XX),
        Just(ArgPattern::YY)
    ]
}

pub fn interval(m: usize, finite_weight: u32) -> impl Strategy<Value = GeneralizedInterval> {
    (1..=m, 1..=m, evaluation(finite_weight)).prop_map(|(a, b, w)| GeneralizedInterval::new(a, b, w))
}

pub fn terms(m: usize, max_terms: usize, finite_weight: u32) -> impl Strategy<Value = Vec<DecompositionTerm>> {
    prop::collection::vec(
        (interval(m, finite_weight), pattern()).prop_map(|(interval, pattern)| DecompositionTerm { interval, pattern }),
        0..=max_terms,
    )
}

/// Submodular table of size `m`: a random sum of routed interval terms.
pub fn submodular_table_of(m: usize, finite_weight: u32) -> impl Strategy<Value = BinaryTable> {
    terms(m, 3 * m, finite_weight).prop_map(move |ts| reconstruct(&ts, m))
}

pub fn submodular_table(max_m: usize, finite_weight: u32) -> impl Strategy<Value = BinaryTable> {
    (1..=max_m).prop_flat_map(move |m| submodular_table_of(m, finite_weight))
}

pub fn any_table(max_m: usize) -> impl Strategy<Value = BinaryTable> {
    (1..=max_m).prop_flat_map(|m| {
        prop::collection::vec(evaluation(6), m * m).prop_map(move |v| BinaryTable::new(m, v).unwrap())
    })
}

#[derive(Debug, Clone)]
pub enum Kind {
    Unary(usize, UnaryTable),
    Binary(usize, usize, BinaryTable),
    Interval(usize, usize, GeneralizedInterval),
}

fn kind(n: usize, m: usize) -> impl Strategy<Value = Kind> {
    prop_oneof![
        (0..n, prop::collection::vec(evaluation(8), m))
            .prop_map(|(v, vals)| Kind::Unary(v, UnaryTable::new(vals).unwrap())),
        (0..n, 0..n, submodular_table_of(m, 12)).prop_map(|(v, w, t)| Kind::Binary(v, w, t)),
        (0..n, 0..n, interval(m, 8)).prop_map(|(v, w, g)| Kind::Interval(v, w, g)),
    ]
}

pub fn build(n: usize, m: usize, kinds: Vec<Kind>) -> Instance {
    let mut p = Instance::new(m).unwrap();
    for i in 0..n {
        p.add_variable(format!("v{i}")).unwrap();
    }
    for k in kinds {
        let c = match k {
            Kind::Unary(v, t) => SoftConstraint::unary(VarId(v), t),
            Kind::Binary(v, w, t) => SoftConstraint::binary(VarId(v), VarId(w), t),
            Kind::Interval(v, w, g) => SoftConstraint::interval(VarId(v), VarId(w), g),
        };
        p.add_constraint(c).unwrap();
    }
    p
}

/// Mixed instances with `n <= max_n`, `M <= max_m`.
pub fn instance(max_n: usize, max_m: usize, max_constraints: usize) -> impl Strategy<Value = Instance> {
    (1..=max_n, 1..=max_m).prop_flat_map(move |(n, m)| {
        prop::collection::vec(kind(n, m), 0..=max_constraints).prop_map(move |ks| build(n, m, ks))
    })
}

/// Instances with interval constraints only.
pub fn interval_instance(max_n: usize, max_m: usize, max_constraints: usize) -> impl Strategy<Value = Instance> {
    (1..=max_n, 1..=max_m).prop_flat_map(move |(n, m)| {
        prop::collection::vec((0..n, 0..n, interval(m, 6)), 0..=max_constraints)
            .prop_map(move |cs| build(n, m, cs.into_iter().map(|(v, w, g)| Kind::Interval(v, w, g)).collect()))
    })
}

/// An instance together with one of its assignments.
pub fn with_assignment<S: Strategy<Value = Instance>>(s: S) -> impl Strategy<Value = (Instance, Vec<usize>)> {
    s.prop_flat_map(|inst| {
        let n = inst.num_variables();
        let m = inst.domain_size();
        (Just(inst), prop::collection::vec(1..=m, n))
    })
}
