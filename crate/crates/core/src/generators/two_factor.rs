//! Two-factors with cycle lengths divisible by four versus `q`-biased
//! `(2, 2)`-dissolutions with one A-supporter per district.

use std::collections::BTreeSet;

use crate::error::GeneratorError;
use crate::graph::Graph;
use crate::model::{verify_biased_dissolution, BiasedDissolution, Instance};

/// Splits a spanning edge set with all degrees two into its cycles. Each
/// cycle starts at its smallest vertex and continues to the smaller of that
/// vertex's two neighbors.
pub fn cycles_of_two_factor(n: usize, factor: &BTreeSet<(usize, usize)>) -> Result<Vec<Vec<usize>>, GeneratorError> {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in factor {
        if u >= n || v >= n || u == v {
            return Err(GeneratorError::NotTwoFactor(format!("bad edge {{{u}, {v}}}")));
        }
        adj[u].push(v);
        adj[v].push(u);
    }
    if let Some(v) = adj.iter().position(|a| a.len() != 2) {
        return Err(GeneratorError::NotTwoFactor(format!(
            "vertex {v} has degree {}",
            adj[v].len()
        )));
    }
    let mut seen = vec![false; n];
    let mut cycles = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut cycle = vec![start];
        seen[start] = true;
        let (mut prev, mut cur) = (start, *adj[start].iter().min().expect("degree two"));
        while cur != start {
            seen[cur] = true;
            cycle.push(cur);
            let next = if adj[cur][0] == prev { adj[cur][1] } else { adj[cur][0] };
            (prev, cur) = (cur, next);
        }
        cycles.push(cycle);
    }
    Ok(cycles)
}

fn all_ones(g: &Graph) -> Instance {
    let n = g.vertex_count();
    Instance::new(g.clone(), 2, 2)
        .and_then(|i| i.with_alpha(vec![1; n]))
        .and_then(|i| i.with_target(n / 4))
        .expect("valid (2, 2) instance")
}

/// On each cycle `c_0 c_1 ..` every odd position is dissolved and sends one
/// voter to each cycle neighbor; the A-supporters are routed so that every
/// position divisible by four collects two of them and wins.
pub fn two_factor_to_biased22(
    g: &Graph,
    factor: &BTreeSet<(usize, usize)>,
) -> Result<(Instance, BiasedDissolution), GeneratorError> {
    let n = g.vertex_count();
    if let Some(&(u, v)) = factor.iter().find(|&&(u, v)| !g.has_edge(u, v)) {
        return Err(GeneratorError::NotTwoFactor(format!("{{{u}, {v}}} is not an edge")));
    }
    let cycles = cycles_of_two_factor(n, factor)?;
    if let Some(c) = cycles.iter().find(|c| c.len() % 4 != 0) {
        return Err(GeneratorError::CycleLength(c.len()));
    }
    let inst = all_ones(g);
    let mut sol = BiasedDissolution::default();
    for c in &cycles {
        let len = c.len();
        for i in (1..len).step_by(2) {
            let (prev, d, next) = (c[i - 1], c[i], c[(i + 1) % len]);
            sol.base.dissolved.insert(d);
            sol.base.add_move((d, prev), 1);
            sol.base.add_move((d, next), 1);
            // position 1 mod 4 feeds backwards, 3 mod 4 forwards
            let winner = if i % 4 == 1 { prev } else { next };
            sol.a_moves.insert((d, winner), 1);
            sol.winning.insert(winner);
        }
    }
    Ok((inst, sol))
}

/// The used edge set of a `q`-biased `(2, 2)`-dissolution with one
/// A-supporter per district, checked to be a two-factor whose cycle lengths
/// are multiples of four.
pub fn biased22_to_two_factor(
    inst: &Instance,
    sol: &BiasedDissolution,
) -> Result<BTreeSet<(usize, usize)>, GeneratorError> {
    let n = inst.n();
    let shaped = inst.s() == 2
        && inst.delta_s() == 2
        && inst.alpha().is_some_and(|a| a.iter().all(|&x| x == 1))
        && n.is_multiple_of(4)
        && inst.target() == n / 4;
    if !shaped {
        return Err(GeneratorError::InvalidParameters(
            "expected a (2, 2) instance with one A-supporter everywhere and target n / 4".into(),
        ));
    }
    verify_biased_dissolution(inst, sol).map_err(|v| GeneratorError::InvalidParameters(v.to_string()))?;
    let edges = sol.base.used_edge_set().edges;
    let cycles = cycles_of_two_factor(n, &edges)?;
    if let Some(c) = cycles.iter().find(|c| c.len() % 4 != 0) {
        return Err(GeneratorError::CycleLength(c.len()));
    }
    Ok(edges)
}
