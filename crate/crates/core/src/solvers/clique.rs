//! Greedy solver for complete graphs.
//!
//! On a clique voters can move between any two districts, so only the
//! A-supporter totals matter. Districts are sorted by `(alpha, id)`; for
//! `l = 0, 1, ..` the `l` weakest districts are given up as losers, the
//! unwinnable rest is dissolved, and the strongest winnable districts fill
//! up the dissolved quota. The first `l` whose dissolved supply covers every
//! remaining demand is optimal.

use std::collections::BTreeSet;

use crate::error::SolveError;
use crate::model::{BiasedDissolution, Instance};

use super::SolveOutcome;

struct Plan {
    dissolved: Vec<usize>,
    winning: Vec<usize>,
}

fn plan(inst: &Instance, d: usize) -> Option<Plan> {
    let n = inst.n();
    let r = n - d;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (inst.alpha_of(v), v));
    let unwinnable = order.iter().take_while(|&&v| !inst.is_winnable(v)).count();

    for lost in 0..=r {
        let forced = unwinnable.saturating_sub(lost);
        let Some(extra) = d.checked_sub(forced) else {
            continue;
        };
        let pool = &order[lost.max(unwinnable)..];
        if pool.len() < extra {
            continue;
        }
        let (winning, top) = pool.split_at(pool.len() - extra);
        let supply: u64 = order[lost..lost.max(unwinnable)]
            .iter()
            .chain(top)
            .map(|&v| inst.alpha_of(v))
            .sum();
        let demand: u64 = winning.iter().map(|&v| inst.demand(v)).sum();
        if supply >= demand {
            let mut dissolved = order[lost..lost.max(unwinnable)].to_vec();
            dissolved.extend_from_slice(top);
            return Some(Plan {
                dissolved,
                winning: winning.to_vec(),
            });
        }
    }
    None
}

/// Builds the movement for a plan: A-supporters first serve the winners,
/// neediest first, then every survivor is topped up to `delta_s`.
fn witness(inst: &Instance, plan: &Plan) -> BiasedDissolution {
    let n = inst.n();
    let (s, delta_s) = (inst.s(), inst.delta_s());
    let mut sol = BiasedDissolution::default();
    sol.base.dissolved = plan.dissolved.iter().copied().collect();
    sol.winning = plan.winning.iter().copied().collect();

    // (district, A left, B left)
    let mut supply: Vec<(usize, u64, u64)> = plan
        .dissolved
        .iter()
        .map(|&d| (d, inst.alpha_of(d), s - inst.alpha_of(d)))
        .collect();
    let mut received = vec![0u64; n];

    let mut needy = plan.winning.clone();
    needy.sort_by_key(|&v| (std::cmp::Reverse(inst.demand(v)), v));
    let mut src = 0;
    for &w in &needy {
        let mut need = inst.demand(w);
        while need > 0 {
            let (d, a, _) = &mut supply[src];
            let k = need.min(*a);
            if k > 0 {
                sol.base.add_move((*d, w), k);
                *sol.a_moves.entry((*d, w)).or_insert(0) += k;
                *a -= k;
                need -= k;
                received[w] += k;
            }
            if *a == 0 {
                src += 1;
            }
        }
    }

    let survivors: Vec<usize> = (0..n).filter(|v| !sol.base.dissolved.contains(v)).collect();
    let mut src = 0;
    for v in survivors {
        let mut need = delta_s - received[v];
        while need > 0 {
            let (d, a, b) = &mut supply[src];
            let from_a = need.min(*a);
            let from_b = (need - from_a).min(*b);
            if from_a + from_b > 0 {
                sol.base.add_move((*d, v), from_a + from_b);
                if from_a > 0 {
                    *sol.a_moves.entry((*d, v)).or_insert(0) += from_a;
                }
                *a -= from_a;
                *b -= from_b;
                need -= from_a + from_b;
            }
            if *a == 0 && *b == 0 {
                src += 1;
            }
        }
    }
    sol
}

/// Maximizes the winning set on a complete graph. A missing A-supporter
/// distribution is read as all zeros.
pub fn solve_clique(inst: &Instance) -> Result<SolveOutcome, SolveError> {
    if !inst.graph().is_complete() {
        return Err(SolveError::Precondition {
            strategy: "clique",
            requirement: "a complete graph",
        });
    }
    let Some(split) = inst.derived_counts().split else {
        return Ok(SolveOutcome::infeasible(0));
    };
    let Some(plan) = plan(inst, split.dissolved) else {
        return Ok(SolveOutcome::infeasible(0));
    };
    let mut sol = witness(inst, &plan);
    if !inst.is_biased() {
        sol.a_moves.clear();
        sol.winning = BTreeSet::new();
    }
    SolveOutcome::checked(inst, sol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::solvers::{solve_biased_11, solve_exact, ExactOptions};

    fn clique(n: usize, s: u64, delta_s: u64, alpha: Vec<u64>) -> Instance {
        Instance::new(Graph::complete(n), s, delta_s)
            .unwrap()
            .with_alpha(alpha)
            .unwrap()
    }

    #[test]
    fn k5_two_winners() {
        let out = solve_clique(&clique(5, 2, 3, vec![2, 2, 2, 0, 0])).unwrap();
        assert!(out.feasible);
        assert_eq!(out.achieved_r_alpha, 2);
    }

    #[test]
    fn k2_without_supporters() {
        let out = solve_clique(&clique(2, 1, 1, vec![0, 0])).unwrap();
        assert!(out.feasible);
        assert_eq!(out.achieved_r_alpha, 0);
    }

    #[test]
    fn k4_agrees_with_matching() {
        let inst = clique(4, 1, 1, vec![1, 1, 0, 0]);
        assert_eq!(solve_clique(&inst).unwrap().achieved_r_alpha, 1);
        assert_eq!(solve_biased_11(&inst).unwrap().achieved_r_alpha, 1);
    }

    #[test]
    fn plain_clique() {
        let inst = Instance::new(Graph::complete(6), 1, 2).unwrap();
        assert!(solve_clique(&inst).unwrap().feasible);
    }

    #[test]
    fn rejects_non_clique() {
        let inst = clique(4, 1, 1, vec![0; 4]);
        let path = Instance::new(Graph::path(4), 1, 1).unwrap();
        assert!(solve_clique(&inst).is_ok());
        assert!(solve_clique(&path).is_err());
    }

    #[test]
    fn matches_exact_on_small_cliques() {
        for n in 2..=7 {
            for s in 1..=3u64 {
                for delta_s in 1..=3u64 {
                    if !(n as u64 * delta_s).is_multiple_of(s + delta_s) {
                        continue;
                    }
                    for seed in 0..5u64 {
                        let alpha = (0..n as u64).map(|v| (v * 7 + seed * 3 + v * seed) % (s + 1)).collect();
                        let inst = clique(n, s, delta_s, alpha);
                        let greedy = solve_clique(&inst).unwrap();
                        let exact = solve_exact(&inst, &ExactOptions::sequential()).unwrap();
                        assert_eq!(greedy.achieved_r_alpha, exact.achieved_r_alpha, "{inst:?}");
                    }
                }
            }
        }
    }
}
