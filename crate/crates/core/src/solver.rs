//! End-to-end solving: compile every constraint into generalized interval
//! constraints, build the cut network, take a minimum cut and read the
//! assignment off it. Also the exhaustive oracle used to cross-check it.

use crate::cutgraph::{build_network, extract_assignment, min_cut, FlowNetwork};
use crate::error::{Error, Result};
use crate::evaluation::Evaluation;
use crate::interval::{ArgPattern, DecompositionTerm};
use crate::model::{Assignment, ConstraintFunction, Instance, Scope, SoftConstraint, VarId};
use crate::par::{self, Execution};
use crate::submodular::{decompose_binary, decompose_unary};
use crate::table::decode_tuple;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub assignment: Assignment,
    pub evaluation: Evaluation,
}

fn route(v: VarId, w: VarId, term: DecompositionTerm) -> SoftConstraint {
    let (p, q) = match term.pattern {
        ArgPattern::XY => (v, w),
        ArgPattern::YX => (w, v),
        ArgPattern::XX => (v, v),
        ArgPattern::YY => (w, w),
    };
    SoftConstraint::interval(p, q, term.interval)
}

fn compile_constraint(index: usize, c: &SoftConstraint) -> Result<Vec<SoftConstraint>> {
    let unary = |v: VarId, terms: Vec<DecompositionTerm>| terms.into_iter().map(|t| route(v, v, t)).collect();
    match (c.scope(), c.function()) {
        (Scope::Binary(..), ConstraintFunction::Interval(_)) => Ok(vec![c.clone()]),
        (Scope::Unary(v), ConstraintFunction::Unary(t)) => Ok(unary(v, decompose_unary(t))),
        (Scope::Binary(v, w), ConstraintFunction::Binary(t)) if v == w => Ok(unary(v, decompose_unary(&t.diagonal()))),
        (Scope::Binary(v, w), ConstraintFunction::Binary(t)) => {
            let d = decompose_binary(t).map_err(|e| match e {
                Error::NotSubmodular { witness, .. } => Error::NotSubmodular {
                    constraint: Some(index),
                    witness,
                },
                other => other,
            })?;
            Ok(d.terms.into_iter().map(|t| route(v, w, t)).collect())
        }
        _ => unreachable!("constraint constructors keep scope and function arity in sync"),
    }
}

/// Rewrites an instance so that every constraint is a generalized interval
/// function, preserving the evaluation of every assignment. Fails on the
/// first (lowest-index) binary table that is not submodular.
pub fn compile(inst: &Instance) -> Result<Instance> {
    compile_with(inst, Execution::default())
}

pub fn compile_with(inst: &Instance, exec: Execution) -> Result<Instance> {
    let indexed: Vec<(usize, &SoftConstraint)> = inst.constraints().iter().enumerate().collect();
    let compiled = par::map_ordered(exec, &indexed, |&(i, c)| compile_constraint(i, c));
    let mut out = inst.with_same_variables();
    for parts in compiled {
        for c in parts? {
            out.push_unchecked(c);
        }
    }
    Ok(out)
}

/// Solves through the cut network and also returns the network.
pub fn solve_with_network(inst: &Instance, exec: Execution) -> Result<(Solution, FlowNetwork)> {
    let compiled = compile_with(inst, exec)?;
    let net = build_network(&compiled)?;
    let cut = min_cut(&net);
    let assignment = extract_assignment(&net, &cut);
    let evaluation = inst.evaluate(&assignment)?;
    if cut.value.is_finite() && evaluation != cut.value {
        return Err(Error::PreconditionViolated(format!(
            "cut value {} disagrees with assignment evaluation {evaluation}",
            cut.value
        )));
    }
    Ok((Solution { assignment, evaluation }, net))
}

/// Minimum-evaluation assignment for an instance whose constraints are
/// unary tables, submodular binary tables or generalized intervals.
pub fn solve(inst: &Instance) -> Result<Solution> {
    solve_with_network(inst, Execution::default()).map(|(s, _)| s)
}

/// Solves independent instances, in parallel when the feature is enabled.
pub fn solve_batch(instances: &[Instance], exec: Execution) -> Vec<Result<Solution>> {
    par::map_ordered(exec, instances, |inst| {
        solve_with_network(inst, Execution::Sequential).map(|(s, _)| s)
    })
}

/// Largest search space [`brute_force`] will enumerate.
pub const BRUTE_FORCE_LIMIT: u128 = 10_000_000;

fn search_space(inst: &Instance) -> Result<usize> {
    let m = inst.domain_size() as u128;
    let mut total: u128 = 1;
    for _ in 0..inst.num_variables() {
        total = total.saturating_mul(m);
        if total > BRUTE_FORCE_LIMIT {
            return Err(Error::TooLarge(format!(
                "{}^{} assignments exceed {BRUTE_FORCE_LIMIT}",
                inst.domain_size(),
                inst.num_variables()
            )));
        }
    }
    Ok(total as usize)
}

/// Best `(evaluation, index)` in `start..end`, first index winning ties.
fn scan(inst: &Instance, start: usize, end: usize) -> Option<(Evaluation, usize)> {
    if start >= end {
        return None;
    }
    let m = inst.domain_size();
    let mut values = vec![0; inst.num_variables()];
    decode_tuple(start, m, &mut values);
    let mut best: Option<(Evaluation, usize)> = None;
    for index in start..end {
        let e = inst.evaluate_unchecked(&values);
        if best.as_ref().is_none_or(|(b, _)| e < *b) {
            best = Some((e, index));
        }
        // Odometer step: last variable varies fastest.
        for slot in values.iter_mut().rev() {
            if *slot < m {
                *slot += 1;
                break;
            }
            *slot = 1;
        }
    }
    best
}

/// Exhaustive search in lexicographic order of the assignment vector
/// (declaration order, first variable most significant). Returns the
/// lexicographically first optimum. Works for any constraint kind.
pub fn brute_force(inst: &Instance) -> Result<Solution> {
    brute_force_with(inst, Execution::default())
}

pub fn brute_force_with(inst: &Instance, exec: Execution) -> Result<Solution> {
    let total = search_space(inst)?;
    let chunks = (par::threads(exec) * 8).min(total.div_ceil(1024)).max(1);
    let size = total.div_ceil(chunks);
    let partial = par::map_range(exec, chunks, |c| scan(inst, c * size, ((c + 1) * size).min(total)));
    let (evaluation, index) = partial
        .into_iter()
        .flatten()
        .reduce(|best, cand| if cand.0 < best.0 { cand } else { best })
        .expect("at least one assignment");
    let mut values = vec![0; inst.num_variables()];
    decode_tuple(index, inst.domain_size(), &mut values);
    Ok(Solution {
        assignment: Assignment::new(values),
        evaluation,
    })
}
