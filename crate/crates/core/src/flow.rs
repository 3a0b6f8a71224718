//! Integral maximum flow and the two network constructions for dissolutions
//! with known district roles.
//!
//! The role network splits every dissolved district `d` into a node `d^A`
//! supplying its A-supporters and a node `d^B` supplying the rest, and every
//! surviving district `r` into `r^A` (the A-supporters it still needs to win)
//! and `r^AB` (the rest of its growth). A flow saturating all source arcs is
//! exactly a biased dissolution with the given roles.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::RoleError;
use crate::model::{BiasedDissolution, Dissolution, Instance};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FlowArc {
    pub from: usize,
    pub to: usize,
    pub capacity: u64,
}

/// A directed network with integer capacities and designated terminals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowNetwork {
    node_count: usize,
    arcs: Vec<FlowArc>,
    source: usize,
    target: usize,
}

impl FlowNetwork {
    pub fn new(node_count: usize, source: usize, target: usize) -> Self {
        assert!(source < node_count && target < node_count, "terminal out of range");
        assert_ne!(source, target, "source and target coincide");
        FlowNetwork {
            node_count,
            arcs: Vec::new(),
            source,
            target,
        }
    }

    /// Appends an arc and returns its index.
    pub fn add_arc(&mut self, from: usize, to: usize, capacity: u64) -> usize {
        assert!(from < self.node_count && to < self.node_count, "arc endpoint out of range");
        self.arcs.push(FlowArc { from, to, capacity });
        self.arcs.len() - 1
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn arcs(&self) -> &[FlowArc] {
        &self.arcs
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    /// Sum of the capacities leaving the source.
    pub fn source_capacity(&self) -> u64 {
        self.arcs
            .iter()
            .filter(|a| a.from == self.source)
            .map(|a| a.capacity)
            .sum()
    }
}

/// A maximum flow: its value and the amount on every arc, indexed like
/// [`FlowNetwork::arcs`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxFlow {
    pub value: u64,
    pub flow: Vec<u64>,
}

/// Why a flow assignment is not a valid flow.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FlowViolation {
    WrongLength,
    OverCapacity { arc: usize },
    Unbalanced { node: usize },
}

/// Checks capacity and conservation constraints and returns the flow value.
pub fn check_flow(net: &FlowNetwork, flow: &[u64]) -> Result<u64, FlowViolation> {
    if flow.len() != net.arcs.len() {
        return Err(FlowViolation::WrongLength);
    }
    let mut balance = vec![0i128; net.node_count];
    for (i, (arc, &f)) in net.arcs.iter().zip(flow).enumerate() {
        if f > arc.capacity {
            return Err(FlowViolation::OverCapacity { arc: i });
        }
        balance[arc.from] -= f as i128;
        balance[arc.to] += f as i128;
    }
    for (node, &b) in balance.iter().enumerate() {
        if node != net.source && node != net.target && b != 0 {
            return Err(FlowViolation::Unbalanced { node });
        }
    }
    Ok((-balance[net.source]).max(0) as u64)
}

struct Residual {
    head: Vec<usize>,
    cap: Vec<u64>,
    out: Vec<Vec<usize>>,
    level: Vec<usize>,
    cursor: Vec<usize>,
}

impl Residual {
    fn build(net: &FlowNetwork) -> Self {
        let m = net.arcs.len();
        let mut head = Vec::with_capacity(2 * m);
        let mut cap = Vec::with_capacity(2 * m);
        let mut out = vec![Vec::new(); net.node_count];
        for (i, arc) in net.arcs.iter().enumerate() {
            head.push(arc.to);
            cap.push(arc.capacity);
            head.push(arc.from);
            cap.push(0);
            out[arc.from].push(2 * i);
            out[arc.to].push(2 * i + 1);
        }
        Residual {
            head,
            cap,
            out,
            level: vec![usize::MAX; net.node_count],
            cursor: vec![0; net.node_count],
        }
    }

    fn bfs(&mut self, source: usize, target: usize) -> bool {
        self.level.fill(usize::MAX);
        self.level[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            for &e in &self.out[u] {
                let v = self.head[e];
                if self.cap[e] > 0 && self.level[v] == usize::MAX {
                    self.level[v] = self.level[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        self.level[target] != usize::MAX
    }

    fn dfs(&mut self, u: usize, target: usize, limit: u64) -> u64 {
        if u == target {
            return limit;
        }
        while self.cursor[u] < self.out[u].len() {
            let e = self.out[u][self.cursor[u]];
            let v = self.head[e];
            if self.cap[e] > 0 && self.level[v] == self.level[u] + 1 {
                let pushed = self.dfs(v, target, limit.min(self.cap[e]));
                if pushed > 0 {
                    self.cap[e] -= pushed;
                    self.cap[e ^ 1] += pushed;
                    return pushed;
                }
            }
            self.cursor[u] += 1;
        }
        0
    }
}

/// Maximum `(source, target)`-flow by Dinic's blocking-flow method. All arc
/// values are integral.
pub fn max_flow(net: &FlowNetwork) -> MaxFlow {
    let mut res = Residual::build(net);
    let mut value = 0u64;
    while res.bfs(net.source, net.target) {
        res.cursor.fill(0);
        loop {
            let pushed = res.dfs(net.source, net.target, u64::MAX);
            if pushed == 0 {
                break;
            }
            value += pushed;
        }
    }
    let flow = net
        .arcs
        .iter()
        .enumerate()
        .map(|(i, arc)| arc.capacity - res.cap[2 * i])
        .collect();
    MaxFlow { value, flow }
}

/// The split nodes of one district in a [`RoleNetwork`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DistrictNodes {
    Dissolved { a: usize, b: usize },
    Remaining { a: usize, ab: usize },
}

/// Arc indices for one boundary pair `(dissolved, remaining)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundaryArcs {
    pub dissolved: usize,
    pub remaining: usize,
    pub a_to_a: usize,
    pub a_to_ab: usize,
    pub b_to_ab: usize,
}

/// Flow network for a biased dissolution whose dissolved and winning
/// districts are fixed in advance.
#[derive(Debug, Clone)]
pub struct RoleNetwork {
    pub network: FlowNetwork,
    pub node_map: Vec<DistrictNodes>,
    /// `kappa(r)` for every district; zero for dissolved and non-winning ones.
    pub demand: Vec<u64>,
    /// Boundary pairs in ascending `(dissolved, remaining)` order.
    pub boundary: Vec<BoundaryArcs>,
    pub dissolved: BTreeSet<usize>,
    pub winning: BTreeSet<usize>,
    s: u64,
}

impl RoleNetwork {
    /// Flow value reached exactly when every dissolved district is emptied.
    pub fn required_value(&self) -> u64 {
        self.s * self.dissolved.len() as u64
    }
}

fn check_roles(
    n: usize,
    dissolved: &BTreeSet<usize>,
    winning: &BTreeSet<usize>,
) -> Result<(), RoleError> {
    if let Some(&v) = dissolved.iter().chain(winning).find(|&&v| v >= n) {
        return Err(RoleError::OutOfRange(v));
    }
    if let Some(&v) = dissolved.intersection(winning).next() {
        return Err(RoleError::Overlap(v));
    }
    Ok(())
}

/// Builds the three-layer role network. District `v` owns nodes `2v` and
/// `2v + 1`; the source is `2n` and the target `2n + 1`. Edges inside the
/// dissolved set or inside the surviving set carry no arcs. A missing
/// A-supporter distribution is read as all zeros.
pub fn build_role_network(
    inst: &Instance,
    dissolved: &BTreeSet<usize>,
    winning: &BTreeSet<usize>,
) -> Result<RoleNetwork, RoleError> {
    let n = inst.n();
    check_roles(n, dissolved, winning)?;
    let s = inst.s();
    let delta_s = inst.delta_s();

    let mut demand = vec![0u64; n];
    for &r in winning {
        let kappa = inst.demand(r);
        if kappa > delta_s {
            return Err(RoleError::Unwinnable {
                district: r,
                demand: kappa,
                delta_s,
            });
        }
        demand[r] = kappa;
    }

    let (source, target) = (2 * n, 2 * n + 1);
    let mut network = FlowNetwork::new(2 * n + 2, source, target);
    let node_map: Vec<_> = (0..n)
        .map(|v| {
            if dissolved.contains(&v) {
                DistrictNodes::Dissolved { a: 2 * v, b: 2 * v + 1 }
            } else {
                DistrictNodes::Remaining { a: 2 * v, ab: 2 * v + 1 }
            }
        })
        .collect();

    for (v, nodes) in node_map.iter().enumerate() {
        match *nodes {
            DistrictNodes::Dissolved { a, b } => {
                let alpha = inst.alpha_of(v);
                network.add_arc(source, a, alpha);
                network.add_arc(source, b, s - alpha);
            }
            DistrictNodes::Remaining { a, ab } => {
                network.add_arc(a, target, demand[v]);
                network.add_arc(ab, target, delta_s - demand[v]);
            }
        }
    }

    let mut boundary = Vec::new();
    for &d in dissolved {
        let DistrictNodes::Dissolved { a: da, b: db } = node_map[d] else {
            unreachable!()
        };
        let alpha = inst.alpha_of(d);
        for r in inst.graph().neighbors(d) {
            if let DistrictNodes::Remaining { a: ra, ab: rab } = node_map[r] {
                boundary.push(BoundaryArcs {
                    dissolved: d,
                    remaining: r,
                    a_to_a: network.add_arc(da, ra, alpha),
                    a_to_ab: network.add_arc(da, rab, alpha),
                    b_to_ab: network.add_arc(db, rab, s - alpha),
                });
            }
        }
    }

    Ok(RoleNetwork {
        network,
        node_map,
        demand,
        boundary,
        dissolved: dissolved.clone(),
        winning: winning.clone(),
        s,
    })
}

/// The flow did not saturate the source arcs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FlowDeficit {
    pub value: u64,
    pub required: u64,
}

/// Reads a biased dissolution off a saturating flow of a role network:
/// `z_alpha(d, r) = f(d^A, r^A) + f(d^A, r^AB)` and
/// `z(d, r) = z_alpha(d, r) + f(d^B, r^AB)`.
pub fn extract_biased_solution(
    rn: &RoleNetwork,
    flow: &MaxFlow,
) -> Result<BiasedDissolution, FlowDeficit> {
    let required = rn.required_value();
    if flow.value < required {
        return Err(FlowDeficit {
            value: flow.value,
            required,
        });
    }
    let mut base = Dissolution {
        dissolved: rn.dissolved.clone(),
        moves: BTreeMap::new(),
    };
    let mut a_moves = BTreeMap::new();
    for b in &rn.boundary {
        let a = flow.flow[b.a_to_a] + flow.flow[b.a_to_ab];
        let z = a + flow.flow[b.b_to_ab];
        if a > 0 {
            a_moves.insert((b.dissolved, b.remaining), a);
        }
        base.add_move((b.dissolved, b.remaining), z);
    }
    Ok(BiasedDissolution {
        base,
        a_moves,
        winning: rn.winning.clone(),
    })
}

/// Converts a biased dissolution with the network's roles into a flow of
/// value `s * |D|`, the inverse of [`extract_biased_solution`].
///
/// A-supporters on each pair first fill the remaining demand of `r^A` and
/// overflow into `r^AB`; pairs are processed in ascending order.
pub fn embed_biased_solution(rn: &RoleNetwork, sol: &BiasedDissolution) -> Vec<u64> {
    let net = &rn.network;
    let mut flow = vec![0u64; net.arcs().len()];
    let mut filled = vec![0u64; rn.node_map.len()];
    for b in &rn.boundary {
        let (d, r) = (b.dissolved, b.remaining);
        let a = sol.a_supporters(d, r);
        let z = sol.base.voters(d, r);
        let delta = a.min(rn.demand[r] - filled[r]);
        filled[r] += delta;
        flow[b.a_to_a] = delta;
        flow[b.a_to_ab] = a - delta;
        flow[b.b_to_ab] = z.saturating_sub(a);
    }
    for (i, arc) in net.arcs().iter().enumerate() {
        if arc.from == net.source() || arc.to == net.target() {
            flow[i] = arc.capacity;
        }
    }
    flow
}

/// Flow network for a plain dissolution with a fixed dissolved set:
/// `source -> d` with capacity `s`, `d -> r` with capacity `s` along every
/// boundary edge, and `r -> target` with capacity `delta_s`.
#[derive(Debug, Clone)]
pub struct DissolutionNetwork {
    pub network: FlowNetwork,
    /// `(dissolved, remaining, arc index)` in ascending pair order.
    pub boundary: Vec<(usize, usize, usize)>,
    pub dissolved: BTreeSet<usize>,
    unit: u64,
    s: u64,
}

impl DissolutionNetwork {
    pub fn required_value(&self) -> u64 {
        self.s / self.unit * self.dissolved.len() as u64
    }
}

pub fn build_dissolution_network(inst: &Instance, dissolved: &BTreeSet<usize>) -> DissolutionNetwork {
    build_scaled_dissolution_network(inst, dissolved, 1)
}

/// The dissolution network with every capacity divided by `unit`, which
/// must divide both `s` and `delta_s`. Extracted movements are scaled back.
pub fn build_scaled_dissolution_network(
    inst: &Instance,
    dissolved: &BTreeSet<usize>,
    unit: u64,
) -> DissolutionNetwork {
    assert!(
        unit > 0 && inst.s().is_multiple_of(unit) && inst.delta_s().is_multiple_of(unit),
        "unit must divide s and delta_s"
    );
    let n = inst.n();
    let (s, delta_s) = (inst.s() / unit, inst.delta_s() / unit);
    let (source, target) = (n, n + 1);
    let mut network = FlowNetwork::new(n + 2, source, target);
    for v in 0..n {
        if dissolved.contains(&v) {
            network.add_arc(source, v, s);
        } else {
            network.add_arc(v, target, delta_s);
        }
    }
    let mut boundary = Vec::new();
    for &d in dissolved {
        for r in inst.graph().neighbors(d) {
            if !dissolved.contains(&r) {
                boundary.push((d, r, network.add_arc(d, r, s)));
            }
        }
    }
    DissolutionNetwork {
        network,
        boundary,
        dissolved: dissolved.clone(),
        unit,
        s: inst.s(),
    }
}

/// Reads the voter movement off a saturating flow.
pub fn extract_dissolution(dn: &DissolutionNetwork, flow: &MaxFlow) -> Result<Dissolution, FlowDeficit> {
    let required = dn.required_value();
    if flow.value < required {
        return Err(FlowDeficit {
            value: flow.value,
            required,
        });
    }
    let mut sol = Dissolution {
        dissolved: dn.dissolved.clone(),
        moves: BTreeMap::new(),
    };
    for &(d, r, arc) in &dn.boundary {
        sol.add_move((d, r), flow.flow[arc] * dn.unit);
    }
    Ok(sol)
}
