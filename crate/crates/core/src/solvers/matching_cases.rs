//! The two special cases that reduce to matchings.

use std::collections::BTreeSet;

use crate::error::SolveError;
use crate::matching::{max_weight_perfect_matching, perfect_matching, WeightedGraph};
use crate::model::{BiasedDissolution, Dissolution, Instance};

use super::SolveOutcome;

/// `s == delta_s`: a dissolution exists iff the graph has a perfect matching.
/// One endpoint of every matched edge is dissolved into the other.
pub fn solve_equal_sizes(inst: &Instance) -> Result<SolveOutcome, SolveError> {
    if inst.s() != inst.delta_s() {
        return Err(SolveError::Precondition {
            strategy: "matching",
            requirement: "s == delta_s",
        });
    }
    if inst.target() > 0 {
        return Err(SolveError::Precondition {
            strategy: "matching",
            requirement: "no winning target",
        });
    }
    let Some(m) = perfect_matching(inst.graph()) else {
        return Ok(SolveOutcome::infeasible(0));
    };
    let base = Dissolution::new(
        m.edges.iter().map(|&(u, _)| u),
        m.edges.iter().map(|&(u, v)| ((u, v), inst.s())),
    );
    SolveOutcome::checked(inst, BiasedDissolution::from_plain(inst, base))
}

/// `s == delta_s == 1`: maximize the number of matched edges whose two
/// endpoints both hold an A-supporter.
pub fn solve_biased_11(inst: &Instance) -> Result<SolveOutcome, SolveError> {
    if inst.s() != 1 || inst.delta_s() != 1 {
        return Err(SolveError::Precondition {
            strategy: "biased11",
            requirement: "s == delta_s == 1",
        });
    }
    let alpha = inst.alpha().ok_or(SolveError::MissingAlpha)?;
    let wg = WeightedGraph::from_fn(inst.graph().clone(), |u, v| u64::from(alpha[u] == 1 && alpha[v] == 1));
    let Some((m, weight)) = max_weight_perfect_matching(&wg) else {
        return Ok(SolveOutcome::infeasible(0));
    };
    let mut witness = BiasedDissolution::default();
    let mut winning = BTreeSet::new();
    for &(u, v) in &m.edges {
        witness.base.dissolved.insert(u);
        witness.base.add_move((u, v), 1);
        if alpha[u] == 1 {
            witness.a_moves.insert((u, v), 1);
            if alpha[v] == 1 {
                winning.insert(v);
            }
        }
    }
    debug_assert_eq!(winning.len() as u64, weight);
    witness.winning = winning;
    SolveOutcome::checked(inst, witness)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn biased(g: Graph, alpha: Vec<u64>) -> Instance {
        Instance::new(g, 1, 1).unwrap().with_alpha(alpha).unwrap()
    }

    #[test]
    fn equal_sizes_examples() {
        let p4 = Instance::new(Graph::path(4), 2, 2).unwrap();
        assert!(solve_equal_sizes(&p4).unwrap().feasible);
        let c5 = Instance::new(Graph::cycle(5), 3, 3).unwrap();
        assert!(!solve_equal_sizes(&c5).unwrap().feasible);
        let k2 = Instance::new(Graph::complete(2), 1, 1).unwrap();
        let out = solve_equal_sizes(&k2).unwrap();
        assert_eq!(out.witness.unwrap().base.dissolved.len(), 1);
    }

    #[test]
    fn equal_sizes_rejects_other_sizes() {
        let inst = Instance::new(Graph::path(4), 1, 2).unwrap();
        assert!(matches!(solve_equal_sizes(&inst), Err(SolveError::Precondition { .. })));
    }

    #[test]
    fn biased_11_examples() {
        let out = solve_biased_11(&biased(Graph::complete(2), vec![1, 1])).unwrap();
        assert_eq!(out.achieved_r_alpha, 1);
        let out = solve_biased_11(&biased(Graph::complete(4), vec![1, 1, 0, 0])).unwrap();
        assert_eq!(out.achieved_r_alpha, 1);
        let out = solve_biased_11(&biased(Graph::cycle(4), vec![1, 0, 1, 0])).unwrap();
        assert!(out.feasible);
        assert_eq!(out.achieved_r_alpha, 0);
    }

    #[test]
    fn biased_11_target_miss() {
        let inst = biased(Graph::cycle(4), vec![1, 0, 1, 0]).with_target(1).unwrap();
        assert!(!solve_biased_11(&inst).unwrap().feasible);
    }
}
