//! Simple undirected graphs on dense vertex indices.

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{LrbError, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    names: Vec<String>,
    adj: Vec<FixedBitSet>,
}

impl Graph {
    pub fn new(names: Vec<String>) -> Self {
        let n = names.len();
        Graph {
            names,
            adj: vec![FixedBitSet::with_capacity(n); n],
        }
    }

    /// Vertices named `0..n`.
    pub fn with_vertices(n: usize) -> Self {
        Graph::new((0..n).map(|i| i.to_string()).collect())
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Graph::with_vertices(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges)
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges)
    }

    pub fn complete(n: usize) -> Self {
        Graph::with_vertices(n).complement()
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        if u != v {
            self.adj[u].insert(v);
            self.adj[v].insert(u);
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn neighbors(&self, v: usize) -> &FixedBitSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones(..)
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.len() {
            out.extend(self.adj[u].ones().filter(|&v| v > u).map(|v| (u, v)));
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.edges().len()
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::new(self.names.clone());
        for u in 0..self.len() {
            for v in (u + 1)..self.len() {
                if !self.has_edge(u, v) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    /// Induced subgraph on `vertices`, in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut g = Graph::new(vertices.iter().map(|&v| self.names[v].clone()).collect());
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    pub fn is_clique(&self, vertices: &[usize]) -> bool {
        vertices
            .iter()
            .enumerate()
            .all(|(i, &u)| vertices[i + 1..].iter().all(|&v| self.has_edge(u, v)))
    }

    pub fn component_count(&self) -> usize {
        let mut uf = crate::poset::UnionFind::new(self.len());
        for (u, v) in self.edges() {
            uf.union(u, v);
        }
        uf.count()
    }

    /// True when the graph has no cycles.
    pub fn is_forest(&self) -> bool {
        self.edge_count() + self.component_count() == self.len()
    }

    /// Every simple graph on `n` labelled vertices, in edge-mask order.
    pub fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
            .collect();
        let total = 1u64 << pairs.len();
        (0..total).map(move |mask| {
            let edges: Vec<_> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            Graph::from_edges(n, &edges)
        })
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            vertices: self.names.clone(),
            edges: self
                .edges()
                .into_iter()
                .map(|(u, v)| [self.names[u].clone(), self.names[v].clone()])
                .collect(),
        }
    }

    pub fn from_json(json: &GraphJson) -> Result<Graph> {
        let mut g = Graph::new(json.vertices.clone());
        let index = |name: &str| {
            json.vertices
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| LrbError::InvalidInput(format!("unknown vertex {name:?}")))
        };
        for [u, v] in &json.edges {
            let (a, b) = (index(u)?, index(v)?);
            if a == b {
                return Err(LrbError::InvalidInput(format!("loop at {u:?}")));
            }
            g.add_edge(a, b);
        }
        let mut seen = json.vertices.clone();
        seen.sort();
        seen.dedup();
        if seen.len() != json.vertices.len() {
            return Err(LrbError::InvalidInput("duplicate vertex names".into()));
        }
        Ok(g)
    }
}

/// `{"vertices": [...], "edges": [[u, v], ...]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: Vec<String>,
    pub edges: Vec<[String; 2]>,
}
