//! Reductions from exact cover by `t`-sets.

use crate::error::GeneratorError;
use crate::graph::Graph;
use crate::model::Instance;

use super::bezout::{bezout_nonneg, gcd, BezoutPair};
use super::exact_cover::XCInstance;

/// A plain instance built from exact cover, with its layout.
#[derive(Debug, Clone)]
pub struct DissolutionHardness {
    pub instance: Instance,
    /// Clique size per element and the split it is built from.
    pub q: BezoutPair,
    /// Clique size per set and the split it is built from.
    pub r: BezoutPair,
    /// Element cliques in element order; vertex 0 of each is the port.
    pub element_cliques: Vec<Vec<usize>>,
    /// Set cliques in set order; vertex `i` is attached to the port of the
    /// `i`-th smallest element of the set.
    pub set_cliques: Vec<Vec<usize>>,
}

impl DissolutionHardness {
    pub fn port(&self, element: usize) -> usize {
        self.element_cliques[element][0]
    }
}

fn clique_edges(vertices: &[usize], edges: &mut Vec<(usize, usize)>) {
    for (i, &u) in vertices.iter().enumerate() {
        for &v in &vertices[i + 1..] {
            edges.push((u, v));
        }
    }
}

/// Builds the `(s, delta_s)` instance, `s > delta_s`, that has a dissolution
/// iff `xc` has an exact cover. The set size must equal
/// `(s + delta_s) / gcd(s, delta_s)`.
pub fn generate_dissolution_hardness(
    xc: &XCInstance,
    s: u64,
    delta_s: u64,
) -> Result<DissolutionHardness, GeneratorError> {
    if s <= delta_s {
        return Err(GeneratorError::InvalidParameters(format!(
            "the construction needs s > delta_s, got s = {s}, delta_s = {delta_s}"
        )));
    }
    let g = gcd(s, delta_s);
    let t = (s + delta_s) / g;
    if xc.set_size() as u64 != t {
        return Err(GeneratorError::SetSizeMismatch {
            got: xc.set_size(),
            expected: t,
        });
    }
    let q = bezout_nonneg(s, delta_s, g as i64, 0)?;
    let r = bezout_nonneg(s, delta_s, -((s + delta_s) as i64), t)?;
    let (q_size, r_size) = ((q.x + q.y) as usize, (r.x + r.y) as usize);

    let mut next = 0;
    let mut block = |size: usize| {
        let b: Vec<usize> = (next..next + size).collect();
        next += size;
        b
    };
    let element_cliques: Vec<Vec<usize>> = (0..xc.universe_size()).map(|_| block(q_size)).collect();
    let set_cliques: Vec<Vec<usize>> = xc.sets().iter().map(|_| block(r_size)).collect();

    let mut edges = Vec::new();
    for c in element_cliques.iter().chain(&set_cliques) {
        clique_edges(c, &mut edges);
    }
    for (set, clique) in xc.sets().iter().zip(&set_cliques) {
        for (i, &u) in set.iter().enumerate() {
            edges.push((element_cliques[u][0], clique[i]));
        }
    }
    let graph = Graph::new(next, &edges).expect("construction yields a simple graph");
    let instance = Instance::new(graph, s, delta_s).expect("sizes are positive");
    Ok(DissolutionHardness {
        instance,
        q,
        r,
        element_cliques,
        set_cliques,
    })
}

/// Center, inner and element districts of one gadget: a `t`-star whose
/// leaves each carry one more pendant district.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gadget {
    pub center: usize,
    pub inner: Vec<usize>,
    pub elements: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct BiasedHardness {
    pub instance: Instance,
    pub gadgets: Vec<Gadget>,
    /// One district per set, in set order.
    pub set_districts: Vec<usize>,
    pub dummies: Vec<usize>,
}

impl BiasedHardness {
    /// District standing for universe element `x`.
    pub fn element_district(&self, x: usize) -> usize {
        let t = self.gadgets[0].elements.len();
        self.gadgets[x / t].elements[x % t]
    }
}

/// Builds the `(t, t)` biased instance with target `(t + 1) * q` that is a
/// yes-instance iff `xc` has an exact cover, where `|X| = t * q`.
pub fn generate_biased_hardness(xc: &XCInstance) -> Result<BiasedHardness, GeneratorError> {
    let t = xc.set_size();
    let q = xc.cover_size();
    let m = xc.sets().len();
    if m < q {
        return Err(GeneratorError::InvalidParameters(format!(
            "{m} sets cannot cover {q} disjoint blocks"
        )));
    }
    let mut alpha = Vec::new();
    let mut edges = Vec::new();
    let mut gadgets = Vec::with_capacity(q);
    for _ in 0..q {
        let center = alpha.len();
        alpha.push(0);
        let inner: Vec<usize> = (0..t).map(|i| center + 1 + i).collect();
        let elements: Vec<usize> = (0..t).map(|i| center + 1 + t + i).collect();
        alpha.extend(std::iter::repeat_n(2, t));
        alpha.extend(std::iter::repeat_n(t as u64, t));
        for i in 0..t {
            edges.push((center, inner[i]));
            edges.push((inner[i], elements[i]));
        }
        gadgets.push(Gadget {
            center,
            inner,
            elements,
        });
    }
    let set_districts: Vec<usize> = (alpha.len()..alpha.len() + m).collect();
    alpha.extend(std::iter::repeat_n(1, m));
    let dummies: Vec<usize> = (alpha.len()..alpha.len() + m - q).collect();
    alpha.extend(std::iter::repeat_n(0, m - q));

    for (set, &v) in xc.sets().iter().zip(&set_districts) {
        for &x in set {
            edges.push((gadgets[x / t].elements[x % t], v));
        }
    }
    for &dummy in &dummies {
        for &v in &set_districts {
            edges.push((dummy, v));
        }
    }
    let n = alpha.len();
    let graph = Graph::new(n, &edges).expect("construction yields a simple graph");
    let instance = Instance::new(graph, t as u64, t as u64)
        .and_then(|i| i.with_alpha(alpha))
        .and_then(|i| i.with_target((t + 1) * q))
        .expect("construction is a valid instance");
    Ok(BiasedHardness {
        instance,
        gadgets,
        set_districts,
        dummies,
    })
}
