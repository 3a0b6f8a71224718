//! JSON file formats and a DIMACS edge-list reader.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::ModelError;
use crate::graph::Graph;
use crate::model::{BiasedDissolution, Instance};
use crate::solvers::{RoleAssignment, SolveOutcome};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid instance: {0}")]
    Model(#[from] ModelError),
    #[error("line {line}: {message}")]
    Dimacs { line: usize, message: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    pub s: u64,
    pub delta_s: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r_alpha: Option<usize>,
}

impl InstanceFile {
    pub fn from_instance(inst: &Instance) -> Self {
        InstanceFile {
            n: inst.n(),
            edges: inst.graph().edges().map(|(u, v)| [u, v]).collect(),
            s: inst.s(),
            delta_s: inst.delta_s(),
            alpha: inst.alpha().map(<[u64]>::to_vec),
            r_alpha: inst.r_alpha(),
        }
    }

    pub fn to_instance(&self) -> Result<Instance, ModelError> {
        let edges: Vec<_> = self.edges.iter().map(|&[u, v]| (u, v)).collect();
        let mut inst = Instance::new(Graph::new(self.n, &edges)?, self.s, self.delta_s)?;
        if let Some(a) = &self.alpha {
            inst = inst.with_alpha(a.clone())?;
        }
        if let Some(r) = self.r_alpha {
            inst = inst.with_target(r)?;
        }
        Ok(inst)
    }
}

pub fn parse_instance(json: &str) -> Result<Instance, FormatError> {
    let file: InstanceFile = serde_json::from_str(json)?;
    Ok(file.to_instance()?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MoveEntry {
    pub from: usize,
    pub to: usize,
    pub voters: u64,
    #[serde(default)]
    pub a_supporters: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolutionFile {
    pub feasible: bool,
    pub dissolved: Vec<usize>,
    pub moves: Vec<MoveEntry>,
    #[serde(default)]
    pub winning: Vec<usize>,
    #[serde(default)]
    pub achieved_r_alpha: usize,
}

impl SolutionFile {
    pub fn from_solution(sol: &BiasedDissolution) -> Self {
        let keys: BTreeSet<_> = sol.base.moves.keys().chain(sol.a_moves.keys()).copied().collect();
        SolutionFile {
            feasible: true,
            dissolved: sol.base.dissolved.iter().copied().collect(),
            moves: keys
                .into_iter()
                .map(|(from, to)| MoveEntry {
                    from,
                    to,
                    voters: sol.base.voters(from, to),
                    a_supporters: sol.a_supporters(from, to),
                })
                .collect(),
            winning: sol.winning.iter().copied().collect(),
            achieved_r_alpha: sol.winning.len(),
        }
    }

    pub fn from_outcome(out: &SolveOutcome) -> Self {
        match (&out.witness, out.feasible) {
            (Some(w), true) => SolutionFile::from_solution(w),
            _ => SolutionFile {
                feasible: false,
                dissolved: Vec::new(),
                moves: Vec::new(),
                winning: Vec::new(),
                achieved_r_alpha: out.achieved_r_alpha,
            },
        }
    }

    /// Zero amounts are dropped.
    pub fn to_solution(&self) -> BiasedDissolution {
        let mut sol = BiasedDissolution::default();
        sol.base.dissolved = self.dissolved.iter().copied().collect();
        for m in &self.moves {
            sol.base.add_move((m.from, m.to), m.voters);
            if m.a_supporters > 0 {
                *sol.a_moves.entry((m.from, m.to)).or_insert(0) += m.a_supporters;
            }
        }
        sol.winning = self.winning.iter().copied().collect();
        sol
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RolesFile {
    pub dissolved: Vec<usize>,
    #[serde(default)]
    pub winning: Vec<usize>,
}

impl RolesFile {
    pub fn to_roles(&self) -> RoleAssignment {
        RoleAssignment::new(self.dissolved.iter().copied(), self.winning.iter().copied())
    }
}

/// Reads `p edge N M` and `e u v` lines (1-based ids); `c` lines are
/// comments.
pub fn parse_dimacs_edges(text: &str, s: u64, delta_s: u64) -> Result<Instance, FormatError> {
    let mut n = None;
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let err = |message: &str| FormatError::Dimacs {
            line,
            message: message.to_string(),
        };
        let fields: Vec<&str> = raw.split_whitespace().collect();
        match fields.as_slice() {
            [] | ["c", ..] => {}
            ["p", _, count, _] => {
                n = Some(count.parse::<usize>().map_err(|_| err("bad vertex count"))?);
            }
            ["e", u, v] => {
                let parse = |x: &str| match x.parse::<usize>() {
                    Ok(id) if id >= 1 => Ok(id - 1),
                    _ => Err(err("vertex ids are positive integers")),
                };
                edges.push((parse(u)?, parse(v)?));
            }
            _ => return Err(err("expected a c, p or e line")),
        }
    }
    let n = n.ok_or(FormatError::Dimacs {
        line: 0,
        message: "missing p line".into(),
    })?;
    Ok(Instance::new(Graph::new(n, &edges)?, s, delta_s)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    const BIASED5: &str = r#"{"n":5,"edges":[[0,1],[0,2],[0,3],[1,4],[2,4],[3,4]],"s":3,"delta_s":2,"alpha":[1,1,1,1,3],"r_alpha":2}"#;

    #[test]
    fn instance_round_trip() {
        let inst = parse_instance(BIASED5).unwrap();
        assert_eq!(inst.r_alpha(), Some(2));
        let json = serde_json::to_string(&InstanceFile::from_instance(&inst)).unwrap();
        assert_eq!(json, BIASED5);
    }

    #[test]
    fn rejects_unknown_keys_and_bad_models() {
        let extra = BIASED5.replace("\"s\":3", "\"s\":3,\"x\":1");
        assert!(matches!(parse_instance(&extra), Err(FormatError::Json(_))));
        let looped = BIASED5.replace("[0,1]", "[1,1]");
        assert!(matches!(parse_instance(&looped), Err(FormatError::Model(ModelError::SelfLoop(1)))));
        let target_only = r#"{"n":1,"edges":[],"s":1,"delta_s":1,"r_alpha":0}"#;
        assert!(parse_instance(target_only).is_err());
    }

    #[test]
    fn solution_round_trip() {
        let mut sol = BiasedDissolution::default();
        sol.base.dissolved.insert(0);
        sol.base.add_move((0, 1), 2);
        sol.a_moves.insert((0, 1), 1);
        sol.winning.insert(1);
        let file = SolutionFile::from_solution(&sol);
        assert_eq!(file.moves.len(), 1);
        assert_eq!(file.to_solution(), sol);
    }

    #[test]
    fn dimacs() {
        let inst = parse_dimacs_edges("c demo\np edge 3 2\ne 1 2\ne 2 3\n", 1, 2).unwrap();
        assert_eq!(inst.graph().edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
        assert!(parse_dimacs_edges("e 1 2\n", 1, 1).is_err());
        assert!(parse_dimacs_edges("p edge 2 1\ne 0 1\n", 1, 1).is_err());
    }
}
