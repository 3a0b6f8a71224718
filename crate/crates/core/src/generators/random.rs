//! Seeded random instances.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::GeneratorError;
use crate::graph::Graph;
use crate::model::Instance;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GraphMode {
    /// Every pair is an edge independently with probability `p`.
    Gnp { n: usize, p: f64 },
    /// Four-neighbor grid, row-major ids.
    Grid { rows: usize, cols: usize },
    Clique { n: usize },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AlphaMode {
    /// Plain instance.
    None,
    /// Uniform in `0..=s` per district.
    Uniform,
    /// `s` with probability `p`, else zero.
    Bernoulli(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RandomSpec {
    pub graph: GraphMode,
    pub s: u64,
    pub delta_s: u64,
    pub alpha: AlphaMode,
    pub r_alpha: Option<usize>,
    pub seed: u64,
}

fn grid(rows: usize, cols: usize) -> Graph {
    let mut edges = Vec::new();
    for i in 0..rows {
        for j in 0..cols {
            let v = i * cols + j;
            if j + 1 < cols {
                edges.push((v, v + 1));
            }
            if i + 1 < rows {
                edges.push((v, v + cols));
            }
        }
    }
    Graph::new(rows * cols, &edges).expect("grid edges are valid")
}

/// Deterministic for a fixed spec.
pub fn generate_random(spec: &RandomSpec) -> Result<Instance, GeneratorError> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let graph = match spec.graph {
        GraphMode::Gnp { n, p } => {
            if !(0.0..=1.0).contains(&p) {
                return Err(GeneratorError::InvalidParameters(format!("edge probability {p} outside [0, 1]")));
            }
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.random_bool(p) {
                        edges.push((u, v));
                    }
                }
            }
            Graph::new(n, &edges).expect("generated edges are valid")
        }
        GraphMode::Grid { rows, cols } => grid(rows, cols),
        GraphMode::Clique { n } => Graph::complete(n),
    };
    let n = graph.vertex_count();
    let inst = Instance::new(graph, spec.s, spec.delta_s)
        .map_err(|e| GeneratorError::InvalidParameters(e.to_string()))?;
    let alpha = match spec.alpha {
        AlphaMode::None => None,
        AlphaMode::Uniform => Some((0..n).map(|_| rng.random_range(0..=spec.s)).collect()),
        AlphaMode::Bernoulli(p) => {
            if !(0.0..=1.0).contains(&p) {
                return Err(GeneratorError::InvalidParameters(format!("probability {p} outside [0, 1]")));
            }
            Some((0..n).map(|_| if rng.random_bool(p) { spec.s } else { 0 }).collect())
        }
    };
    let mut inst = match alpha {
        Some(a) => inst.with_alpha(a),
        None => Ok(inst),
    }
    .map_err(|e| GeneratorError::InvalidParameters(e.to_string()))?;
    if let Some(r) = spec.r_alpha {
        inst = inst
            .with_target(r)
            .map_err(|e| GeneratorError::InvalidParameters(e.to_string()))?;
    }
    Ok(inst)
}
