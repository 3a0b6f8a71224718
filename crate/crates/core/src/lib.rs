//! Verifiers, exact solvers and instance generators for dissolving districts
//! on a neighborhood graph.
//!
//! A `(s, delta_s)`-dissolution empties a set of districts of `s` voters each
//! into neighboring districts so that every survivor grows by exactly
//! `delta_s`. The biased variant also tracks supporters of party A and asks
//! for a number of surviving districts with an A majority.

pub mod error;
pub mod flow;
pub mod format;
pub mod generators;
pub mod graph;
pub mod matching;
pub mod model;
pub mod oracle;
pub mod solvers;

mod par;

pub use error::{GeneratorError, ModelError, OracleError, RoleError, SolveError};
pub use graph::Graph;
pub use model::{
    verify_biased_dissolution, verify_dissolution, verify_solution, BiasedDissolution,
    Dissolution, Instance, Pair, UsedEdgeSet, Violation,
};
pub use solvers::{solve, ExactOptions, RoleAssignment, SolveOutcome, Strategy};
