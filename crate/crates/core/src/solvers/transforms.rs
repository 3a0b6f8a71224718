//! Mirroring and the correspondence with star partitions.

use std::collections::BTreeSet;

use crate::error::SolveError;
use crate::flow::{build_scaled_dissolution_network, max_flow};
use crate::graph::Graph;
use crate::model::{verify_dissolution, Dissolution, Instance};

/// The same graph with `s` and `delta_s` swapped and no A-supporters.
pub fn mirror_instance(inst: &Instance) -> Instance {
    Instance::new(inst.graph().clone(), inst.delta_s(), inst.s()).expect("sizes are positive")
}

/// Reverses every movement: the survivors become the dissolved districts.
pub fn mirror_solution(n: usize, sol: &Dissolution) -> Dissolution {
    Dissolution::new(
        (0..n).filter(|v| !sol.dissolved.contains(v)),
        sol.moves.iter().map(|(&(x, y), &z)| ((y, x), z)),
    )
}

/// One part of a star partition.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Star {
    pub center: usize,
    pub leaves: Vec<usize>,
}

/// Each center sends `delta_s` voters to each of its leaves, giving a
/// `(t * delta_s, delta_s)`-dissolution for `t`-stars.
pub fn star_partition_to_dissolution(
    g: &Graph,
    partition: &[Star],
    delta_s: u64,
) -> Result<Dissolution, SolveError> {
    let bad = |msg: String| Err(SolveError::InvalidStarPartition(msg));
    let Some(t) = partition.first().map(|p| p.leaves.len()) else {
        return if g.vertex_count() == 0 {
            Ok(Dissolution::default())
        } else {
            bad("empty partition of a non-empty graph".into())
        };
    };
    if t == 0 {
        return bad("stars need at least one leaf".into());
    }
    let mut covered = vec![false; g.vertex_count()];
    for star in partition {
        if star.leaves.len() != t {
            return bad(format!("star at {} has {} leaves, expected {t}", star.center, star.leaves.len()));
        }
        for &v in std::iter::once(&star.center).chain(&star.leaves) {
            if v >= covered.len() || std::mem::replace(&mut covered[v], true) {
                return bad(format!("district {v} is out of range or covered twice"));
            }
        }
        if let Some(&l) = star.leaves.iter().find(|&&l| !g.has_edge(star.center, l)) {
            return bad(format!("{} and {l} are not adjacent", star.center));
        }
    }
    if let Some(v) = covered.iter().position(|&c| !c) {
        return bad(format!("district {v} is not covered"));
    }
    Ok(Dissolution::new(
        partition.iter().map(|p| p.center),
        partition
            .iter()
            .flat_map(|p| p.leaves.iter().map(move |&l| ((p.center, l), delta_s))),
    ))
}

/// Recovers a star partition from a valid dissolution with `s` a multiple of
/// `delta_s`. The dissolution network is solved again with all capacities
/// divided by `delta_s`; every survivor then receives exactly one unit, and
/// the leaves of a center are the survivors it sends that unit to.
pub fn dissolution_to_star_partition(inst: &Instance, sol: &Dissolution) -> Result<Vec<Star>, SolveError> {
    if !inst.s().is_multiple_of(inst.delta_s()) {
        return Err(SolveError::Precondition {
            strategy: "star partition",
            requirement: "s divisible by delta_s",
        });
    }
    verify_dissolution(inst, sol).map_err(|v| SolveError::InvalidSolution(v.to_string()))?;
    let dn = build_scaled_dissolution_network(inst, &sol.dissolved, inst.delta_s());
    let flow = max_flow(&dn.network);
    if flow.value < dn.required_value() {
        return Err(SolveError::InvalidSolution("scaled network is not saturated".into()));
    }
    let centers: BTreeSet<usize> = sol.dissolved.clone();
    let mut stars: Vec<Star> = centers
        .iter()
        .map(|&c| Star {
            center: c,
            leaves: Vec::new(),
        })
        .collect();
    for &(d, r, arc) in &dn.boundary {
        if flow.flow[arc] > 0 {
            let idx = centers.iter().position(|&c| c == d).expect("center");
            stars[idx].leaves.push(r);
        }
    }
    Ok(stars)
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::plain5;
    use super::*;
    use crate::model::verify_dissolution;

    fn plain5_witness() -> Dissolution {
        Dissolution::new([0, 2, 4], [((0, 1), 2), ((2, 1), 1), ((2, 3), 1), ((4, 3), 2)])
    }

    #[test]
    fn mirror_of_plain5_witness() {
        let inst = plain5();
        let sol = plain5_witness();
        let m = mirror_solution(inst.n(), &sol);
        assert_eq!(m.dissolved, [1, 3].into_iter().collect());
        assert_eq!(verify_dissolution(&mirror_instance(&inst), &m), Ok(()));
        assert_eq!(mirror_solution(inst.n(), &m), sol);
    }

    #[test]
    fn single_edge_is_a_one_star() {
        let g = Graph::complete(2);
        let star = [Star { center: 0, leaves: vec![1] }];
        let sol = star_partition_to_dissolution(&g, &star, 1).unwrap();
        let inst = Instance::new(g, 1, 1).unwrap();
        assert_eq!(verify_dissolution(&inst, &sol), Ok(()));
        assert_eq!(dissolution_to_star_partition(&inst, &sol).unwrap(), star);
    }

    #[test]
    fn three_star() {
        let g = Graph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let star = [Star { center: 0, leaves: vec![1, 2, 3] }];
        let sol = star_partition_to_dissolution(&g, &star, 1).unwrap();
        let inst = Instance::new(g, 3, 1).unwrap();
        assert_eq!(verify_dissolution(&inst, &sol), Ok(()));
        assert_eq!(sol.voters(0, 2), 1);
    }

    #[test]
    fn malformed_partitions() {
        let g = Graph::path(4);
        let cases = [
            vec![Star { center: 0, leaves: vec![1] }],
            vec![Star { center: 0, leaves: vec![2] }, Star { center: 1, leaves: vec![3] }],
            vec![Star { center: 0, leaves: vec![1] }, Star { center: 1, leaves: vec![2] }],
        ];
        for p in cases {
            assert!(star_partition_to_dissolution(&g, &p, 1).is_err());
        }
    }
}
