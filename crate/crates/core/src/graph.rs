//! Simple undirected neighborhood graphs over dense district ids.

use std::collections::HashSet;

use crate::error::ModelError;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Adjacency {
    Lists(Vec<Vec<usize>>),
    /// Complete graph; neighbor lists are implicit.
    Complete,
}

/// A simple undirected graph on the vertices `0..vertex_count`.
///
/// Complete graphs are stored implicitly so that large cliques stay cheap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edge_count: usize,
    adj: Adjacency,
}

impl Graph {
    /// Builds a graph from an edge list. Self-loops, duplicate edges (in either
    /// orientation) and out-of-range endpoints are rejected.
    pub fn new(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self, ModelError> {
        let mut adj = vec![Vec::new(); vertex_count];
        let mut seen = HashSet::with_capacity(edges.len());
        for &(u, v) in edges {
            if u >= vertex_count || v >= vertex_count {
                return Err(ModelError::EdgeOutOfRange { u, v, vertex_count });
            }
            if u == v {
                return Err(ModelError::SelfLoop(u));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(ModelError::DuplicateEdge(u.min(v), u.max(v)));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph {
            n: vertex_count,
            edge_count: edges.len(),
            adj: Adjacency::Lists(adj),
        })
    }

    pub fn empty(vertex_count: usize) -> Self {
        Graph {
            n: vertex_count,
            edge_count: 0,
            adj: Adjacency::Lists(vec![Vec::new(); vertex_count]),
        }
    }

    pub fn complete(vertex_count: usize) -> Self {
        Graph {
            n: vertex_count,
            edge_count: vertex_count * vertex_count.saturating_sub(1) / 2,
            adj: Adjacency::Complete,
        }
    }

    pub fn cycle(vertex_count: usize) -> Self {
        let edges: Vec<_> = (0..vertex_count)
            .map(|i| (i, (i + 1) % vertex_count))
            .collect();
        Graph::new(vertex_count, &edges).expect("cycle on at least three vertices")
    }

    pub fn path(vertex_count: usize) -> Self {
        let edges: Vec<_> = (1..vertex_count).map(|i| (i - 1, i)).collect();
        Graph::new(vertex_count, &edges).expect("path edges are valid")
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count == self.n * self.n.saturating_sub(1) / 2
    }

    pub fn degree(&self, v: usize) -> usize {
        match &self.adj {
            Adjacency::Lists(adj) => adj[v].len(),
            Adjacency::Complete => self.n - 1,
        }
    }

    /// Neighbors of `v` in ascending order.
    pub fn neighbors(&self, v: usize) -> Neighbors<'_> {
        match &self.adj {
            Adjacency::Lists(adj) => Neighbors::List(adj[v].iter()),
            Adjacency::Complete => Neighbors::Range {
                next: 0,
                end: self.n,
                skip: v,
            },
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        if u >= self.n || v >= self.n || u == v {
            return false;
        }
        match &self.adj {
            Adjacency::Lists(adj) => adj[u].binary_search(&v).is_ok(),
            Adjacency::Complete => true,
        }
    }

    /// All edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.neighbors(u).filter(move |&v| v > u).map(move |v| (u, v)))
    }
}

/// Iterator over the neighbors of a vertex.
pub enum Neighbors<'a> {
    List(std::slice::Iter<'a, usize>),
    Range { next: usize, end: usize, skip: usize },
}

impl Iterator for Neighbors<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        match self {
            Neighbors::List(it) => it.next().copied(),
            Neighbors::Range { next, end, skip } => {
                if *next == *skip {
                    *next += 1;
                }
                if *next >= *end {
                    return None;
                }
                let v = *next;
                *next += 1;
                Some(v)
            }
        }
    }
}
