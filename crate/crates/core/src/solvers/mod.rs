//! Problem-level algorithms and the strategy dispatcher.

use std::collections::BTreeSet;

use crate::error::{RoleError, SolveError};
use crate::flow::{build_role_network, extract_biased_solution, max_flow};
use crate::model::{verify_solution, BiasedDissolution, Instance};

mod clique;
mod exact;
mod matching_cases;
mod transforms;

pub use clique::solve_clique;
pub use exact::{solve_exact, ExactOptions};
pub use matching_cases::{solve_biased_11, solve_equal_sizes};
pub use transforms::{
    dissolution_to_star_partition, mirror_instance, mirror_solution,
    star_partition_to_dissolution, Star,
};

/// Verdict of a solver run.
///
/// `achieved_r_alpha` is the largest winning set the solver established,
/// also when it falls short of the instance target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveOutcome {
    pub feasible: bool,
    pub witness: Option<BiasedDissolution>,
    pub achieved_r_alpha: usize,
}

impl SolveOutcome {
    pub fn infeasible(achieved_r_alpha: usize) -> Self {
        SolveOutcome {
            feasible: false,
            witness: None,
            achieved_r_alpha,
        }
    }

    /// Accepts a witness only after it passes the verifier. A witness whose
    /// winning set misses the target yields an infeasible outcome.
    pub(crate) fn checked(inst: &Instance, witness: BiasedDissolution) -> Result<Self, SolveError> {
        let achieved = witness.winning.len();
        if achieved < inst.target() {
            return Ok(SolveOutcome::infeasible(achieved));
        }
        verify_solution(inst, &witness).map_err(|v| SolveError::InvalidSolution(v.to_string()))?;
        Ok(SolveOutcome {
            feasible: true,
            witness: Some(witness),
            achieved_r_alpha: achieved,
        })
    }
}

/// A role for every district: dissolved, winning, or (implicitly) losing.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RoleAssignment {
    pub dissolved: BTreeSet<usize>,
    pub winning: BTreeSet<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    Dissolved,
    Winning,
    Losing,
}

impl RoleAssignment {
    pub fn new(
        dissolved: impl IntoIterator<Item = usize>,
        winning: impl IntoIterator<Item = usize>,
    ) -> Self {
        RoleAssignment {
            dissolved: dissolved.into_iter().collect(),
            winning: winning.into_iter().collect(),
        }
    }

    pub fn role(&self, v: usize) -> Role {
        if self.dissolved.contains(&v) {
            Role::Dissolved
        } else if self.winning.contains(&v) {
            Role::Winning
        } else {
            Role::Losing
        }
    }
}

/// Solves the problem with dissolved and winning districts fixed, by one
/// max-flow computation. A missing A-supporter distribution is read as all
/// zeros, so plain instances work with an empty winning set.
pub fn solve_fixed_roles(inst: &Instance, roles: &RoleAssignment) -> Result<SolveOutcome, SolveError> {
    let rn = match build_role_network(inst, &roles.dissolved, &roles.winning) {
        Ok(rn) => rn,
        Err(RoleError::OutOfRange(v)) => return Err(SolveError::DistrictOutOfRange(v)),
        Err(RoleError::Overlap(v)) => return Err(SolveError::RolesOverlap(v)),
        Err(RoleError::Unwinnable { .. }) => return Ok(SolveOutcome::infeasible(0)),
    };
    if !inst.is_biased() && !roles.winning.is_empty() {
        return Err(SolveError::MissingAlpha);
    }
    let expected = inst.derived_counts().split.map(|s| s.dissolved);
    if expected != Some(roles.dissolved.len()) {
        return Ok(SolveOutcome::infeasible(0));
    }
    let flow = max_flow(&rn.network);
    match extract_biased_solution(&rn, &flow) {
        Ok(witness) => SolveOutcome::checked(inst, witness),
        Err(_) => Ok(SolveOutcome::infeasible(0)),
    }
}

/// Which algorithm [`solve`] runs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Strategy {
    /// Divisibility check, then the first applicable special case, falling
    /// back to exact enumeration.
    Auto,
    FlowRoles(RoleAssignment),
    Matching,
    Biased11,
    Clique,
    Exact,
}

pub fn solve(inst: &Instance, strategy: &Strategy, opts: &ExactOptions) -> Result<SolveOutcome, SolveError> {
    match strategy {
        Strategy::FlowRoles(roles) => solve_fixed_roles(inst, roles),
        Strategy::Matching => solve_equal_sizes(inst),
        Strategy::Biased11 => solve_biased_11(inst),
        Strategy::Clique => solve_clique(inst),
        Strategy::Exact => solve_exact(inst, opts),
        Strategy::Auto => {
            if inst.derived_counts().split.is_none() {
                Ok(SolveOutcome::infeasible(0))
            } else if inst.s() == inst.delta_s() && inst.target() == 0 && !inst.is_biased() {
                solve_equal_sizes(inst)
            } else if inst.is_biased() && inst.s() == 1 && inst.delta_s() == 1 {
                solve_biased_11(inst)
            } else if inst.graph().is_complete() {
                solve_clique(inst)
            } else {
                solve_exact(inst, opts)
            }
        }
    }
}
