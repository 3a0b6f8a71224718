//! Instances, dissolutions and their verifiers.
//!
//! A dissolution `(D, z)` empties every district in `D` into its
//! non-dissolved neighbors so that each surviving district grows by exactly
//! `delta_s` voters. A biased dissolution additionally tracks how many
//! A-supporters travel along each pair and names a set of surviving districts
//! in which party A holds a strict majority.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::ModelError;
use crate::graph::Graph;

/// Ordered pair `(from, to)`: a dissolved district and a surviving neighbor.
pub type Pair = (usize, usize);

/// A dissolution problem instance, optionally carrying an A-supporter
/// distribution and a winning target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    graph: Graph,
    s: u64,
    delta_s: u64,
    alpha: Option<Vec<u64>>,
    r_alpha: Option<usize>,
}

/// Number of dissolved and surviving districts forced by the sizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Split {
    pub dissolved: usize,
    pub remaining: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DerivedCounts {
    /// New district size `s + delta_s`.
    pub s_new: u64,
    /// `None` when `n * delta_s` is not a multiple of `s_new`; no graph on
    /// `n` vertices then admits a dissolution.
    pub split: Option<Split>,
}

impl Instance {
    pub fn new(graph: Graph, s: u64, delta_s: u64) -> Result<Self, ModelError> {
        if s == 0 {
            return Err(ModelError::NonPositive("s"));
        }
        if delta_s == 0 {
            return Err(ModelError::NonPositive("delta_s"));
        }
        Ok(Instance {
            graph,
            s,
            delta_s,
            alpha: None,
            r_alpha: None,
        })
    }

    pub fn with_alpha(mut self, alpha: Vec<u64>) -> Result<Self, ModelError> {
        let n = self.graph.vertex_count();
        if alpha.len() != n {
            return Err(ModelError::AlphaLength {
                got: alpha.len(),
                expected: n,
            });
        }
        if let Some((district, &value)) = alpha.iter().enumerate().find(|(_, &a)| a > self.s) {
            return Err(ModelError::AlphaExceedsSize {
                district,
                value,
                s: self.s,
            });
        }
        self.alpha = Some(alpha);
        Ok(self)
    }

    pub fn with_target(mut self, r_alpha: usize) -> Result<Self, ModelError> {
        if self.alpha.is_none() {
            return Err(ModelError::TargetWithoutAlpha);
        }
        let n = self.graph.vertex_count();
        if r_alpha > n {
            return Err(ModelError::TargetTooLarge { r_alpha, n });
        }
        self.r_alpha = Some(r_alpha);
        Ok(self)
    }

    /// The same graph and sizes with the A-supporter data removed.
    pub fn plain(&self) -> Instance {
        Instance {
            graph: self.graph.clone(),
            s: self.s,
            delta_s: self.delta_s,
            alpha: None,
            r_alpha: None,
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn s(&self) -> u64 {
        self.s
    }

    pub fn delta_s(&self) -> u64 {
        self.delta_s
    }

    pub fn s_new(&self) -> u64 {
        self.s + self.delta_s
    }

    pub fn alpha(&self) -> Option<&[u64]> {
        self.alpha.as_deref()
    }

    /// `alpha(v)`, reading a missing distribution as all zeros.
    pub fn alpha_of(&self, v: usize) -> u64 {
        self.alpha.as_ref().map_or(0, |a| a[v])
    }

    pub fn r_alpha(&self) -> Option<usize> {
        self.r_alpha
    }

    /// The winning target, zero when none was given.
    pub fn target(&self) -> usize {
        self.r_alpha.unwrap_or(0)
    }

    pub fn is_biased(&self) -> bool {
        self.alpha.is_some()
    }

    pub fn derived_counts(&self) -> DerivedCounts {
        let s_new = self.s_new();
        let n = self.n() as u64;
        let moved = n * self.delta_s;
        let split = moved.is_multiple_of(s_new).then(|| {
            let d = (moved / s_new) as usize;
            Split {
                dissolved: d,
                remaining: self.n() - d,
            }
        });
        DerivedCounts { s_new, split }
    }

    /// Minimum number of A-supporters a district of the new size needs to
    /// hold a strict majority.
    pub fn majority(&self) -> u64 {
        self.s_new() / 2 + 1
    }

    /// Additional A-supporters district `v` needs to win.
    pub fn demand(&self, v: usize) -> u64 {
        self.majority().saturating_sub(self.alpha_of(v))
    }

    /// A district that cannot win even if every incoming voter supports A.
    pub fn is_winnable(&self, v: usize) -> bool {
        self.demand(v) <= self.delta_s
    }

    /// Strict-majority test `2 * a > s + delta_s`, in integers.
    pub fn wins_with(&self, a_supporters: u64) -> bool {
        2 * a_supporters > self.s_new()
    }
}

/// A set of dissolved districts together with the voter movement `z`.
///
/// Pairs absent from `moves` carry zero voters.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Dissolution {
    pub dissolved: BTreeSet<usize>,
    pub moves: BTreeMap<Pair, u64>,
}

impl Dissolution {
    pub fn new(
        dissolved: impl IntoIterator<Item = usize>,
        moves: impl IntoIterator<Item = (Pair, u64)>,
    ) -> Self {
        let mut out = Dissolution {
            dissolved: dissolved.into_iter().collect(),
            moves: BTreeMap::new(),
        };
        for (pair, voters) in moves {
            out.add_move(pair, voters);
        }
        out
    }

    /// Adds `voters` to the movement on `pair`; zero amounts are not stored.
    pub fn add_move(&mut self, pair: Pair, voters: u64) {
        if voters > 0 {
            *self.moves.entry(pair).or_insert(0) += voters;
        }
    }

    pub fn is_dissolved(&self, v: usize) -> bool {
        self.dissolved.contains(&v)
    }

    pub fn voters(&self, from: usize, to: usize) -> u64 {
        self.moves.get(&(from, to)).copied().unwrap_or(0)
    }

    /// Edges carrying a positive number of voters.
    pub fn used_edge_set(&self) -> UsedEdgeSet {
        UsedEdgeSet {
            edges: self
                .moves
                .iter()
                .filter(|(_, &z)| z > 0)
                .map(|(&(x, y), _)| (x.min(y), x.max(y)))
                .collect(),
        }
    }

    pub fn total_moved(&self) -> u64 {
        self.moves.values().sum()
    }
}

/// A dissolution plus A-supporter movement and a winning set.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BiasedDissolution {
    pub base: Dissolution,
    pub a_moves: BTreeMap<Pair, u64>,
    pub winning: BTreeSet<usize>,
}

impl BiasedDissolution {
    /// Lifts a plain dissolution to a biased one with an empty winning set.
    ///
    /// The A-supporters of each dissolved district follow its voter movement
    /// in ascending neighbor order, which satisfies properties c and d.
    pub fn from_plain(inst: &Instance, base: Dissolution) -> Self {
        let mut a_moves = BTreeMap::new();
        if inst.is_biased() {
            // out-of-range ids are left for the verifier to report
            for &d in base.dissolved.iter().filter(|&&d| d < inst.n()) {
                let mut left = inst.alpha_of(d);
                for (&(_, to), &z) in base.moves.range((d, 0)..=(d, usize::MAX)) {
                    if left == 0 {
                        break;
                    }
                    let a = left.min(z);
                    a_moves.insert((d, to), a);
                    left -= a;
                }
            }
        }
        BiasedDissolution {
            base,
            a_moves,
            winning: BTreeSet::new(),
        }
    }

    pub fn a_supporters(&self, from: usize, to: usize) -> u64 {
        self.a_moves.get(&(from, to)).copied().unwrap_or(0)
    }

    pub fn total_a_moved(&self) -> u64 {
        self.a_moves.values().sum()
    }
}

/// Edges `{x, y}` (stored with `x < y`) on which a dissolution moves voters.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct UsedEdgeSet {
    pub edges: BTreeSet<(usize, usize)>,
}

impl UsedEdgeSet {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn degrees(&self, n: usize) -> Vec<usize> {
        let mut deg = vec![0; n];
        for &(x, y) in &self.edges {
            deg[x] += 1;
            deg[y] += 1;
        }
        deg
    }

    /// Every vertex is incident to exactly one used edge.
    pub fn is_perfect_matching(&self, n: usize) -> bool {
        self.degrees(n).iter().all(|&d| d == 1)
    }
}

/// Why a movement key is not in the boundary pair set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StructuralReason {
    OutOfRange,
    SourceNotDissolved,
    TargetDissolved,
    NotAnEdge,
    ExceedsDistrictSize,
}

/// First violated condition found by a verifier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// A dissolved or winning district id outside `0..n`.
    DistrictOutOfRange(usize),
    /// A `z` or `z_alpha` key outside the boundary pair set, or a value
    /// above `s`.
    Structural {
        from: usize,
        to: usize,
        reason: StructuralReason,
    },
    PropertyA { district: usize, sent: u64, expected: u64 },
    PropertyB { district: usize, received: u64, expected: u64 },
    PropertyC { from: usize, to: usize, a_supporters: u64, voters: u64 },
    PropertyD { district: usize, sent: u64, expected: u64 },
    PropertyE { district: usize, a_supporters: u64, size: u64 },
    WinningDissolved(usize),
    TooFewWinners { got: usize, required: usize },
    MissingAlpha,
}

impl Violation {
    /// Property letter `a`..`e` for definition-level violations.
    pub fn property(&self) -> Option<char> {
        match self {
            Violation::PropertyA { .. } => Some('a'),
            Violation::PropertyB { .. } => Some('b'),
            Violation::PropertyC { .. } => Some('c'),
            Violation::PropertyD { .. } => Some('d'),
            Violation::PropertyE { .. } => Some('e'),
            _ => None,
        }
    }

    /// The district the report points at, if any.
    pub fn district(&self) -> Option<usize> {
        match *self {
            Violation::DistrictOutOfRange(v) | Violation::WinningDissolved(v) => Some(v),
            Violation::Structural { from, .. } => Some(from),
            Violation::PropertyA { district, .. }
            | Violation::PropertyB { district, .. }
            | Violation::PropertyD { district, .. }
            | Violation::PropertyE { district, .. } => Some(district),
            Violation::PropertyC { from, .. } => Some(from),
            Violation::TooFewWinners { .. } | Violation::MissingAlpha => None,
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DistrictOutOfRange(v) => write!(f, "structural: district {v} out of range"),
            Violation::Structural { from, to, reason } => {
                let why = match reason {
                    StructuralReason::OutOfRange => "endpoint out of range",
                    StructuralReason::SourceNotDissolved => "source is not dissolved",
                    StructuralReason::TargetDissolved => "target is dissolved",
                    StructuralReason::NotAnEdge => "districts are not adjacent",
                    StructuralReason::ExceedsDistrictSize => "amount exceeds s",
                };
                write!(f, "structural: move {from}->{to}: {why}")
            }
            Violation::PropertyA { district, sent, expected } => write!(
                f,
                "property a violated at district {district}: sends {sent}, expected {expected}"
            ),
            Violation::PropertyB { district, received, expected } => write!(
                f,
                "property b violated at district {district}: receives {received}, expected {expected}"
            ),
            Violation::PropertyC { from, to, a_supporters, voters } => write!(
                f,
                "property c violated at district {from}: {a_supporters} A-supporters but {voters} voters move to {to}"
            ),
            Violation::PropertyD { district, sent, expected } => write!(
                f,
                "property d violated at district {district}: sends {sent} A-supporters, expected {expected}"
            ),
            Violation::PropertyE { district, a_supporters, size } => write!(
                f,
                "property e violated at district {district}: {a_supporters} A-supporters of {size} is no strict majority"
            ),
            Violation::WinningDissolved(v) => write!(f, "winning district {v} is dissolved"),
            Violation::TooFewWinners { got, required } => {
                write!(f, "only {got} winning districts, {required} required")
            }
            Violation::MissingAlpha => write!(f, "instance has no A-supporter distribution"),
        }
    }
}

fn check_keys<'a>(
    inst: &Instance,
    dissolved: &BTreeSet<usize>,
    moves: impl IntoIterator<Item = (&'a Pair, &'a u64)>,
) -> Result<(), Violation> {
    let n = inst.n();
    for (&(from, to), &amount) in moves {
        let reason = if from >= n || to >= n {
            Some(StructuralReason::OutOfRange)
        } else if !dissolved.contains(&from) {
            Some(StructuralReason::SourceNotDissolved)
        } else if dissolved.contains(&to) {
            Some(StructuralReason::TargetDissolved)
        } else if !inst.graph().has_edge(from, to) {
            Some(StructuralReason::NotAnEdge)
        } else if amount > inst.s() {
            Some(StructuralReason::ExceedsDistrictSize)
        } else {
            None
        };
        if let Some(reason) = reason {
            return Err(Violation::Structural { from, to, reason });
        }
    }
    Ok(())
}

/// Checks properties a and b of a dissolution.
pub fn verify_dissolution(inst: &Instance, sol: &Dissolution) -> Result<(), Violation> {
    let n = inst.n();
    if let Some(&v) = sol.dissolved.iter().find(|&&v| v >= n) {
        return Err(Violation::DistrictOutOfRange(v));
    }
    check_keys(inst, &sol.dissolved, &sol.moves)?;

    let mut sent = vec![0u64; n];
    let mut received = vec![0u64; n];
    for (&(from, to), &z) in &sol.moves {
        sent[from] += z;
        received[to] += z;
    }
    for &v in &sol.dissolved {
        if sent[v] != inst.s() {
            return Err(Violation::PropertyA {
                district: v,
                sent: sent[v],
                expected: inst.s(),
            });
        }
    }
    for v in (0..n).filter(|v| !sol.dissolved.contains(v)) {
        if received[v] != inst.delta_s() {
            return Err(Violation::PropertyB {
                district: v,
                received: received[v],
                expected: inst.delta_s(),
            });
        }
    }
    Ok(())
}

/// Checks all five properties and the winning-set size of a biased
/// dissolution.
pub fn verify_biased_dissolution(
    inst: &Instance,
    sol: &BiasedDissolution,
) -> Result<(), Violation> {
    let alpha = inst.alpha().ok_or(Violation::MissingAlpha)?;
    verify_dissolution(inst, &sol.base)?;
    let n = inst.n();
    let dissolved = &sol.base.dissolved;
    for &w in &sol.winning {
        if w >= n {
            return Err(Violation::DistrictOutOfRange(w));
        }
        if dissolved.contains(&w) {
            return Err(Violation::WinningDissolved(w));
        }
    }
    check_keys(inst, dissolved, &sol.a_moves)?;

    let mut sent = vec![0u64; n];
    let mut received = vec![0u64; n];
    for (&(from, to), &a) in &sol.a_moves {
        let voters = sol.base.voters(from, to);
        if a > voters {
            return Err(Violation::PropertyC {
                from,
                to,
                a_supporters: a,
                voters,
            });
        }
        sent[from] += a;
        received[to] += a;
    }
    for &v in dissolved {
        if sent[v] != alpha[v] {
            return Err(Violation::PropertyD {
                district: v,
                sent: sent[v],
                expected: alpha[v],
            });
        }
    }
    for &w in &sol.winning {
        let a = alpha[w] + received[w];
        if !inst.wins_with(a) {
            return Err(Violation::PropertyE {
                district: w,
                a_supporters: a,
                size: inst.s_new(),
            });
        }
    }
    if sol.winning.len() < inst.target() {
        return Err(Violation::TooFewWinners {
            got: sol.winning.len(),
            required: inst.target(),
        });
    }
    Ok(())
}

/// Verifies a solver witness against the instance it was produced for:
/// biased instances get the full check, plain instances must not claim
/// winners or A-supporter movement.
pub fn verify_solution(inst: &Instance, sol: &BiasedDissolution) -> Result<(), Violation> {
    if inst.is_biased() {
        verify_biased_dissolution(inst, sol)
    } else if !sol.winning.is_empty() || sol.a_moves.values().any(|&a| a > 0) {
        Err(Violation::MissingAlpha)
    } else {
        verify_dissolution(inst, &sol.base)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // Districts v1..v5 of the two worked examples become ids 0..4.
    fn plain5() -> Instance {
        let g = Graph::new(5, &[(0, 1), (0, 2), (0, 3), (1, 2), (2, 3), (2, 4), (3, 4)]).unwrap();
        Instance::new(g, 2, 3).unwrap()
    }

    fn biased5() -> Instance {
        let g = Graph::new(5, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]).unwrap();
        Instance::new(g, 3, 2)
            .unwrap()
            .with_alpha(vec![1, 1, 1, 1, 3])
            .unwrap()
            .with_target(2)
            .unwrap()
    }

    fn biased5_witness() -> BiasedDissolution {
        let base = Dissolution::new([0, 4], [((0, 1), 2), ((0, 2), 1), ((4, 2), 1), ((4, 3), 2)]);
        BiasedDissolution {
            base,
            a_moves: [((0, 2), 1), ((4, 2), 1), ((4, 3), 2)].into_iter().collect(),
            winning: [2, 3].into_iter().collect(),
        }
    }

    #[test]
    fn derived_counts_examples() {
        let c = plain5().derived_counts();
        assert_eq!(c.s_new, 5);
        assert_eq!(c.split, Some(Split { dissolved: 3, remaining: 2 }));
        let c = biased5().derived_counts();
        assert_eq!(c.split, Some(Split { dissolved: 2, remaining: 3 }));
        let k3 = Instance::new(Graph::complete(3), 1, 1).unwrap();
        assert_eq!(k3.derived_counts().split, None);
    }

    #[test]
    fn plain5_witness_accepted() {
        let sol = Dissolution::new([0, 2, 4], [((0, 1), 2), ((2, 1), 1), ((2, 3), 1), ((4, 3), 2)]);
        assert_eq!(verify_dissolution(&plain5(), &sol), Ok(()));
        let used: Vec<_> = sol.used_edge_set().edges.into_iter().collect();
        assert_eq!(used, vec![(0, 1), (1, 2), (2, 3), (3, 4)]);
    }

    #[test]
    fn plain5_unbalanced_rejected_at_property_b() {
        let sol = Dissolution::new([0, 2, 4], [((0, 1), 2), ((2, 1), 2), ((2, 3), 0), ((4, 3), 2)]);
        let err = verify_dissolution(&plain5(), &sol).unwrap_err();
        assert_eq!(err.property(), Some('b'));
        // v2 receives 4 and is reported first
        assert_eq!(err.district(), Some(1));
        // shrinking v3's outflow instead trips property a first
        let sol = Dissolution::new([0, 2, 4], [((0, 1), 2), ((2, 1), 1), ((2, 3), 0), ((4, 3), 2)]);
        let err = verify_dissolution(&plain5(), &sol).unwrap_err();
        assert!(matches!(err, Violation::PropertyA { district: 2, .. }));
    }

    #[test]
    fn empty_instance_accepts_empty_dissolution() {
        let inst = Instance::new(Graph::empty(0), 1, 1).unwrap();
        assert_eq!(verify_dissolution(&inst, &Dissolution::default()), Ok(()));
    }

    #[test]
    fn structural_violations() {
        let inst = plain5();
        // v2 -> v4 is not an edge and v2 is not dissolved
        let sol = Dissolution::new([0, 2, 4], [((1, 3), 1)]);
        assert!(matches!(
            verify_dissolution(&inst, &sol),
            Err(Violation::Structural { reason: StructuralReason::SourceNotDissolved, .. })
        ));
        let sol = Dissolution::new([0, 2, 4], [((0, 4), 1)]);
        assert!(matches!(
            verify_dissolution(&inst, &sol),
            Err(Violation::Structural { reason: StructuralReason::TargetDissolved, .. })
        ));
        let sol = Dissolution::new([0, 2, 4], [((4, 1), 1)]);
        assert!(matches!(
            verify_dissolution(&inst, &sol),
            Err(Violation::Structural { reason: StructuralReason::NotAnEdge, .. })
        ));
    }

    #[test]
    fn biased5_witness_accepted() {
        assert_eq!(verify_biased_dissolution(&biased5(), &biased5_witness()), Ok(()));
    }

    #[test]
    fn biased5_wrong_winner_rejected_at_property_e() {
        let mut sol = biased5_witness();
        sol.winning = [1].into_iter().collect();
        let err = verify_biased_dissolution(&biased5(), &sol).unwrap_err();
        assert_eq!(err.property(), Some('e'));
        assert_eq!(err.district(), Some(1));
    }

    #[test]
    fn ties_lose() {
        // s + delta_s = 4: two A-supporters of four is not a majority
        let g = Graph::new(2, &[(0, 1)]).unwrap();
        let inst = Instance::new(g, 2, 2).unwrap().with_alpha(vec![1, 1]).unwrap();
        let sol = BiasedDissolution {
            base: Dissolution::new([0], [((0, 1), 2)]),
            a_moves: [((0, 1), 1)].into_iter().collect(),
            winning: [1].into_iter().collect(),
        };
        assert!(matches!(
            verify_biased_dissolution(&inst, &sol),
            Err(Violation::PropertyE { a_supporters: 2, size: 4, .. })
        ));
    }

    #[test]
    fn zero_target_accepts_any_lifted_base() {
        let inst = biased5().plain().with_alpha(vec![1, 1, 1, 1, 3]).unwrap();
        let base = biased5_witness().base;
        let lifted = BiasedDissolution::from_plain(&inst, base);
        assert_eq!(verify_biased_dissolution(&inst, &lifted), Ok(()));
        assert_eq!(lifted.total_a_moved(), 4);
    }

    #[test]
    fn properties_c_and_d() {
        let mut sol = biased5_witness();
        sol.a_moves.insert((0, 1), 3);
        assert_eq!(
            verify_biased_dissolution(&biased5(), &sol).unwrap_err().property(),
            Some('c')
        );
        let mut sol = biased5_witness();
        sol.a_moves.remove(&(4, 3));
        assert_eq!(
            verify_biased_dissolution(&biased5(), &sol).unwrap_err().property(),
            Some('d')
        );
    }

    #[test]
    fn missing_alpha_is_reported() {
        assert_eq!(
            verify_biased_dissolution(&plain5(), &BiasedDissolution::default()),
            Err(Violation::MissingAlpha)
        );
    }

    #[test]
    fn instance_invariants() {
        let g = Graph::complete(3);
        assert!(Instance::new(g.clone(), 0, 1).is_err());
        assert!(Instance::new(g.clone(), 2, 1).unwrap().with_alpha(vec![0, 3, 0]).is_err());
        assert_eq!(
            Instance::new(g.clone(), 2, 1).unwrap().with_target(1),
            Err(ModelError::TargetWithoutAlpha)
        );
        let inst = Instance::new(g, 2, 1).unwrap().with_alpha(vec![0, 1, 2]).unwrap();
        assert!(inst.clone().with_target(4).is_err());
        assert_eq!(inst.majority(), 2);
        assert!(!inst.is_winnable(0));
        assert!(inst.is_winnable(1));
    }
}
