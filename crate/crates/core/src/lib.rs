//! Exact minimisation of soft constraint instances over the domain `1..=M`
//! whose constraints are unary tables, submodular binary tables or
//! generalized interval functions.
//!
//! Every submodular binary table is rewritten as a sum of generalized
//! interval functions ([`submodular::decompose_binary`]); an instance of
//! interval constraints is then solved as a minimum cut in a layered network
//! ([`cutgraph`]). [`solver::solve`] runs the whole pipeline and
//! [`solver::brute_force`] is the exhaustive reference.
//!
//! ```
//! use softcut::{format, solver};
//!
//! let inst = format::parse(
//!     "scsp 1\ndomain 4\nvar x\nvar y\nvar z\n\
//!      gi y x 3 4 3\ngi y z 4 3 2\ngi z y 1 3 7\ngi z z 2 4 inf\n",
//! )
//! .unwrap();
//! let best = solver::solve(&inst).unwrap();
//! assert_eq!(best.evaluation.to_string(), "5");
//! ```

pub mod cli;
pub mod cutgraph;
pub mod error;
pub mod evaluation;
pub mod format;
pub mod funlib;
pub mod gadget;
pub mod generate;
pub mod interval;
mod maxflow;
pub mod model;
pub mod par;
pub mod solver;
pub mod submodular;
pub mod table;

pub use error::{Error, Result};
pub use evaluation::Evaluation;
pub use interval::{ArgPattern, DecompositionTerm, GeneralizedInterval};
pub use model::{Assignment, ConstraintFunction, Instance, Scope, SoftConstraint, VarId};
pub use par::Execution;
pub use solver::{brute_force, solve, Solution};
pub use table::{BinaryTable, KaryTable, UnaryTable};
