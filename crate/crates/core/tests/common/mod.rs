#![allow(dead_code)]

pub mod strategies;

use softcut::cutgraph::FlowNetwork;
use softcut::{funlib, ArgPattern, BinaryTable, DecompositionTerm, Evaluation, Instance, SoftConstraint, VarId};

pub fn fixture(name: &str) -> String {
    let path = format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

pub fn fixture_path(name: &str) -> String {
    format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

pub fn ev(s: &str) -> Evaluation {
    s.parse().unwrap()
}

pub fn half(n: u64) -> Evaluation {
    Evaluation::ratio(n, 2).unwrap()
}

pub fn term(lower: usize, upper: usize, weight: Evaluation, pattern: ArgPattern) -> DecompositionTerm {
    DecompositionTerm::new(lower, upper, weight, pattern)
}

/// Six variables over `{1, 2, 3}`, `(x - i/2)^2` on `v_i` and `|x - y|^2`
/// on `(v_i, v_2i)` for `i = 1, 2, 3`.
pub fn squared_distance_instance() -> Instance {
    let mut p = Instance::new(3).unwrap();
    let v: Vec<VarId> = (1..=6).map(|i| p.add_variable(format!("v{i}")).unwrap()).collect();
    for i in 1..=6u64 {
        p.add_constraint(SoftConstraint::unary(v[i as usize - 1], funlib::psi_center(3, i)))
            .unwrap();
    }
    for i in 1..=3 {
        p.add_constraint(SoftConstraint::binary(
            v[i - 1],
            v[2 * i - 1],
            funlib::delta(3, 2).unwrap(),
        ))
        .unwrap();
    }
    p
}

/// A hand-listed eight-term decomposition of `M^2 - xy` for `M = 3`.
pub fn pi3_listed_terms() -> Vec<DecompositionTerm> {
    use ArgPattern::*;
    vec![
        term(1, 1, ev("6"), XX),
        term(2, 2, ev("3"), XX),
        term(1, 1, ev("2"), YY),
        term(2, 2, ev("1"), YY),
        term(2, 2, ev("1"), XY),
        term(3, 2, ev("1"), XY),
        term(2, 1, ev("1"), XY),
        term(3, 1, ev("1"), XY),
    ]
}

/// General decomposition of `M^2 - xy`. The `(x, x)` terms carry weight
/// `M (M - d)`; with weight `M - d` the sum would fall short (it matches
/// the listed `M = 3` terms 6 and 3 only with the factor `M`).
pub fn pi_general_terms(m: usize) -> Vec<DecompositionTerm> {
    let mut terms = Vec::new();
    for d in 1..m {
        terms.push(term(d, d, Evaluation::from((m * (m - d)) as u64), ArgPattern::XX));
        terms.push(term(d, d, Evaluation::from((m - d) as u64), ArgPattern::YY));
        for e in 1..m {
            terms.push(term(d + 1, e, ev("1"), ArgPattern::XY));
        }
    }
    terms
}

/// The general formula with `(x, x)` weight `M - d`, taken literally.
pub fn pi_general_terms_literal(m: usize) -> Vec<DecompositionTerm> {
    let mut terms = pi_general_terms(m);
    for (d, t) in (1..m).zip(terms.iter_mut().filter(|t| t.pattern == ArgPattern::XX)) {
        t.interval.weight = Evaluation::from((m - d) as u64);
    }
    terms
}

/// `pi'_M(x, y)` as routed terms on `(x, y)`.
pub fn pi_prime_terms(m: usize) -> Vec<DecompositionTerm> {
    let mut terms = Vec::new();
    for d in 1..m {
        terms.push(term(d, d, half((m * m - d * d) as u64), ArgPattern::XX));
        terms.push(term(d + 1, d, half(1), ArgPattern::XY));
        for e in 1..d {
            terms.push(term(d + 1, e, ev("1"), ArgPattern::XY));
        }
    }
    terms
}

/// `pi'_M(x, y) + pi'_M(y, x)`: the same terms, plus their mirror images.
pub fn pi_symmetric_terms(m: usize) -> Vec<DecompositionTerm> {
    let forward = pi_prime_terms(m);
    let mirrored = forward.iter().map(|t| DecompositionTerm {
        interval: t.interval.clone(),
        pattern: match t.pattern {
            ArgPattern::XY => ArgPattern::YX,
            ArgPattern::YX => ArgPattern::XY,
            ArgPattern::XX => ArgPattern::YY,
            ArgPattern::YY => ArgPattern::XX,
        },
    });
    let mut all = forward.clone();
    all.extend(mirrored);
    all
}

pub fn pi_values(m: usize) -> BinaryTable {
    BinaryTable::from_fn(m, |x, y| Evaluation::from((m * m - x * y) as u64))
}

/// Minimum cut by enumerating every source side. Only for tiny networks.
pub fn exhaustive_min_cut(net: &FlowNetwork) -> Evaluation {
    let n = net.node_count();
    assert!(n <= 22, "too many nodes for enumeration: {n}");
    let free = n - 2;
    let mut best = Evaluation::infinite();
    for mask in 0u64..(1 << free) {
        let on_source = |i: usize| match i {
            0 => true,
            1 => false,
            i => mask >> (i - 2) & 1 == 1,
        };
        let w: Evaluation = net
            .edges()
            .iter()
            .filter(|e| on_source(net.node_index(e.from)) && !on_source(net.node_index(e.to)))
            .map(|e| &e.capacity)
            .sum();
        if w < best {
            best = w;
        }
    }
    best
}
