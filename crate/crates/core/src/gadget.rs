//! Construction showing that any non-submodular binary function, added to
//! the submodular ones, can simulate the exclusive-or penalty.
//!
//! Given a violating quadruple `a < b`, `c < d` of `psi`, the six-constraint
//! instance over `x, y, t, u, v, w`
//!
//! ```text
//! zeta(x, t)  psi(t, u)  phi(u, y)
//! zeta(y, v)  psi(v, w)  phi(w, x)
//! ```
//!
//! projects onto `(x, y)` as `chi`: `2(lambda + mu)` on equal values in
//! `{1, 2}`, `lambda + mu + psi(a, d) + psi(b, c)` on unequal ones and
//! infinity elsewhere. Each `zeta . psi . phi` chain contributes
//! `mu + lambda` when its endpoints agree and `mu + psi(a, d)` or
//! `lambda + psi(b, c)` when they differ.

use crate::error::{Error, Result};
use crate::evaluation::Evaluation;
use crate::model::{Instance, SoftConstraint};
use crate::solver::brute_force;
use crate::submodular::is_submodular_binary;
use crate::table::BinaryTable;

pub const GADGET_VARIABLES: [&str; 6] = ["x", "y", "t", "u", "v", "w"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetResult {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub d: usize,
    pub epsilon: Evaluation,
    pub lambda: Evaluation,
    pub mu: Evaluation,
    pub zeta: BinaryTable,
    pub phi: BinaryTable,
    pub chi: BinaryTable,
    /// Minimum of the gadget instance over `t, u, v, w` for each `(x, y)`.
    pub projection: BinaryTable,
    pub instance: Instance,
    pub verified: bool,
}

/// Builds the gadget for `psi` from its lexicographically first violating
/// quadruple and checks its projection against `chi` by exhaustive search.
pub fn gadget_chi(psi: &BinaryTable, epsilon: &Evaluation) -> Result<GadgetResult> {
    if epsilon.is_zero() || epsilon.is_infinite() {
        return Err(Error::Parameter("epsilon must satisfy 0 < epsilon < inf".into()));
    }
    let Err(witness) = is_submodular_binary(psi) else {
        return Err(Error::IsSubmodular);
    };
    let (a, c, b, d) = (witness.u, witness.v, witness.x, witness.y);
    let m = psi.size();

    let cross = psi.get(a, d) + psi.get(b, c);
    let cap = &cross + epsilon;
    let lambda = psi.get(a, c).clone().min(cap.clone());
    let mu = psi.get(b, d).clone().min(cap);

    let zeta = BinaryTable::from_fn(m, |x, y| match (x, y) {
        (1, y) if y == a => mu.clone(),
        (2, y) if y == b => lambda.clone(),
        _ => Evaluation::infinite(),
    });
    let phi = BinaryTable::from_fn(m, |x, y| match (y, x) {
        (1, x) if x == c => Evaluation::zero(),
        (2, x) if x == c => psi.get(a, d) + epsilon,
        (1, x) if x == d => psi.get(b, c) + epsilon,
        (2, x) if x == d => Evaluation::zero(),
        _ => Evaluation::infinite(),
    });
    let both = &lambda + &mu;
    let chi = BinaryTable::from_fn(m, |x, y| {
        if x > 2 || y > 2 {
            Evaluation::infinite()
        } else if x == y {
            &both + &both
        } else {
            &both + &cross
        }
    });

    let mut instance = Instance::new(m)?;
    let ids: Vec<_> = GADGET_VARIABLES
        .iter()
        .map(|name| instance.add_variable(*name))
        .collect::<Result<_>>()?;
    let (x, y, t, u, v, w) = (ids[0], ids[1], ids[2], ids[3], ids[4], ids[5]);
    for (p, q, table) in [
        (x, t, &zeta),
        (t, u, psi),
        (u, y, &phi),
        (y, v, &zeta),
        (v, w, psi),
        (w, x, &phi),
    ] {
        instance.add_constraint(SoftConstraint::binary(p, q, table.clone()))?;
    }

    let mut projection = BinaryTable::zeros(m);
    let mut mismatch = None;
    for px in 1..=m {
        for py in 1..=m {
            let mut pinned = instance.clone();
            let pin = |value| crate::funlib::relation_unary(m, &[value]);
            pinned.add_constraint(SoftConstraint::unary(x, pin(px)?))?;
            pinned.add_constraint(SoftConstraint::unary(y, pin(py)?))?;
            let best = brute_force(&pinned)?.evaluation;
            if best != *chi.get(px, py) && mismatch.is_none() {
                mismatch = Some((px, py));
            }
            projection.set(px, py, best);
        }
    }
    if let Some((x, y)) = mismatch {
        return Err(Error::GadgetMismatch { x, y });
    }
    Ok(GadgetResult {
        a,
        b,
        c,
        d,
        epsilon: epsilon.clone(),
        lambda,
        mu,
        zeta,
        phi,
        chi,
        projection,
        instance,
        verified: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funlib;

    fn ev(s: &str) -> Evaluation {
        s.parse().unwrap()
    }

    #[test]
    fn xor_gadget() {
        let g = gadget_chi(&funlib::phi_xor(), &ev("1")).unwrap();
        assert_eq!((g.a, g.b, g.c, g.d), (1, 2, 1, 2));
        assert_eq!(g.lambda, ev("1"));
        assert_eq!(g.mu, ev("1"));
        assert_eq!(g.chi.get(1, 1), &ev("4"));
        assert_eq!(g.chi.get(1, 2), &ev("2"));
        assert!(g.verified);
        assert!(is_submodular_binary(&g.zeta).is_ok());
        assert!(is_submodular_binary(&g.phi).is_ok());
    }

    #[test]
    fn rejects_submodular_and_bad_epsilon() {
        assert_eq!(gadget_chi(&funlib::pi(3), &ev("1")).unwrap_err(), Error::IsSubmodular);
        assert!(gadget_chi(&funlib::phi_xor(), &ev("0")).is_err());
        assert!(gadget_chi(&funlib::phi_xor(), &Evaluation::infinite()).is_err());
    }

    #[test]
    fn other_epsilons_and_functions() {
        for eps in ["1/3", "5"] {
            let g = gadget_chi(&funlib::phi_xor(), &ev(eps)).unwrap();
            assert!(g.verified);
        }
        let g = gadget_chi(&funlib::phi_eq(3).unwrap(), &ev("1")).unwrap();
        assert!(g.verified);
        assert!(g.projection.get(3, 1).is_infinite());
    }
}
