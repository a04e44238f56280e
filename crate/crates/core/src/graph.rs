//! Immutable undirected simple graphs with cached hop metrics.
//!
//! Vertices are dense indices `0..n`. Every [`Graph`] is connected; the
//! distance matrix is computed once at construction and shared by all
//! later queries.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flow::FlowNetwork;

/// Hop distances, eccentricities and diameter of a connected graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Metrics {
    n: usize,
    dist: Vec<u32>,
    ecc: Vec<u32>,
    diameter: u32,
}

impl Metrics {
    fn compute(n: usize, adj: &[Vec<usize>]) -> Option<Self> {
        let mut dist = vec![u32::MAX; n * n];
        let mut queue = VecDeque::with_capacity(n);
        for s in 0..n {
            let row = &mut dist[s * n..(s + 1) * n];
            row[s] = 0;
            queue.clear();
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                let du = row[u];
                for &v in &adj[u] {
                    if row[v] == u32::MAX {
                        row[v] = du + 1;
                        queue.push_back(v);
                    }
                }
            }
            if row.contains(&u32::MAX) {
                return None;
            }
        }
        let ecc: Vec<u32> = (0..n)
            .map(|u| *dist[u * n..(u + 1) * n].iter().max().unwrap_or(&0))
            .collect();
        let diameter = ecc.iter().copied().max().unwrap_or(0);
        Some(Self {
            n,
            dist,
            ecc,
            diameter,
        })
    }

    #[inline]
    pub fn dist(&self, u: usize, v: usize) -> u32 {
        self.dist[u * self.n + v]
    }

    /// Row of distances from `u` to every vertex.
    #[inline]
    pub fn row(&self, u: usize) -> &[u32] {
        &self.dist[u * self.n..(u + 1) * self.n]
    }

    pub fn ecc(&self, u: usize) -> u32 {
        self.ecc[u]
    }

    pub fn eccentricities(&self) -> &[u32] {
        &self.ecc
    }

    pub fn diameter(&self) -> u32 {
        self.diameter
    }

    /// The vertices at distance exactly `i` from `r`, ascending.
    pub fn layer(&self, r: usize, i: u32) -> Vec<usize> {
        (0..self.n).filter(|&v| self.dist(r, v) == i).collect()
    }
}

/// A finite, connected, undirected simple graph.
#[derive(Debug, Clone)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<usize>>,
    matrix: Vec<bool>,
    edges: Vec<(usize, usize)>,
    labels: Option<Vec<String>>,
    metrics: Metrics,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges && self.labels == other.labels
    }
}

impl Eq for Graph {}

impl Graph {
    /// Validates and builds a graph. Duplicate edges (in either orientation)
    /// are merged.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Self::build(n, edges, None).map(|(g, _)| g)
    }

    pub fn with_labels(n: usize, edges: &[(usize, usize)], labels: Vec<String>) -> Result<Self> {
        Self::build(n, edges, Some(labels)).map(|(g, _)| g)
    }

    /// Like [`Graph::new`] but also reports how many duplicate edges were dropped.
    pub fn build(
        n: usize,
        edges: &[(usize, usize)],
        labels: Option<Vec<String>>,
    ) -> Result<(Self, usize)> {
        if n == 0 {
            return Err(Error::Empty);
        }
        if let Some(l) = &labels {
            if l.len() != n {
                return Err(Error::LabelCount { labels: l.len(), n });
            }
        }
        let mut normalized = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            normalized.push((u.min(v), u.max(v)));
        }
        normalized.sort_unstable();
        let before = normalized.len();
        normalized.dedup();
        let duplicates = before - normalized.len();

        let mut adj = vec![Vec::new(); n];
        let mut matrix = vec![false; n * n];
        for &(u, v) in &normalized {
            adj[u].push(v);
            adj[v].push(u);
            matrix[u * n + v] = true;
            matrix[v * n + u] = true;
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let metrics = Metrics::compute(n, &adj).ok_or(Error::Disconnected)?;
        Ok((
            Self {
                n,
                adj,
                matrix,
                edges: normalized,
                labels,
                metrics,
            },
            duplicates,
        ))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.matrix[u * self.n + v]
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, v: usize) -> String {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => v.to_string(),
        }
    }

    pub fn metrics(&self) -> &Metrics {
        &self.metrics
    }

    #[inline]
    pub fn dist(&self, u: usize, v: usize) -> u32 {
        self.metrics.dist(u, v)
    }

    pub fn diameter(&self) -> u32 {
        self.metrics.diameter
    }

    pub fn ecc(&self, v: usize) -> u32 {
        self.metrics.ecc(v)
    }

    pub fn is_complete(&self) -> bool {
        self.edges.len() == self.n * (self.n - 1) / 2
    }

    /// Minimum number of vertices whose removal disconnects the graph;
    /// `n - 1` for complete graphs.
    pub fn vertex_connectivity(&self) -> usize {
        if self.is_complete() {
            return self.n - 1;
        }
        let mut best = usize::MAX;
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if !self.adjacent(u, v) {
                    best = best.min(self.disjoint_paths_unchecked(&[u], &[v]));
                }
            }
        }
        best
    }

    /// Maximum number of pairwise internally disjoint X,Y-paths.
    pub fn count_disjoint_paths(&self, xs: &[usize], ys: &[usize]) -> Result<usize> {
        if xs.is_empty() || ys.is_empty() {
            return Err(Error::EmptySet);
        }
        for &v in xs.iter().chain(ys) {
            if v >= self.n {
                return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
            }
        }
        if let Some(&v) = xs.iter().find(|v| ys.contains(v)) {
            return Err(Error::OverlappingSets(v));
        }
        Ok(self.disjoint_paths_unchecked(xs, ys))
    }

    // Vertex-split network: v_in = 2v, v_out = 2v + 1. Interior vertices
    // carry unit capacity; endpoint sets are uncapacitated.
    fn disjoint_paths_unchecked(&self, xs: &[usize], ys: &[usize]) -> usize {
        let n = self.n;
        let source = 2 * n;
        let sink = 2 * n + 1;
        let unbounded = n as u32 + 1;
        let mut net = FlowNetwork::new(2 * n + 2);
        let in_x = |v: usize| xs.contains(&v);
        let in_y = |v: usize| ys.contains(&v);
        for v in 0..n {
            let cap = if in_x(v) || in_y(v) { unbounded } else { 1 };
            net.add_arc(2 * v, 2 * v + 1, cap);
        }
        for &(u, v) in &self.edges {
            net.add_arc(2 * u + 1, 2 * v, 1);
            net.add_arc(2 * v + 1, 2 * u, 1);
        }
        for &x in xs {
            net.add_arc(source, 2 * x, unbounded);
        }
        for &y in ys {
            net.add_arc(2 * y + 1, sink, unbounded);
        }
        net.max_flow(source, sink) as usize
    }

    /// Vertices whose neighborhood induces a clique, ascending.
    pub fn simplicial_vertices(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.is_simplicial(v)).collect()
    }

    pub fn is_simplicial(&self, v: usize) -> bool {
        let nb = &self.adj[v];
        nb.iter()
            .enumerate()
            .all(|(i, &a)| nb[i + 1..].iter().all(|&b| self.adjacent(a, b)))
    }

    /// Induced subgraph on `keep` (in the given order), if it is connected.
    pub fn induced(&self, keep: &[usize]) -> Result<Graph> {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let edges: Vec<(usize, usize)> = self
            .edges
            .iter()
            .filter(|&&(u, v)| index[u] != usize::MAX && index[v] != usize::MAX)
            .map(|&(u, v)| (index[u], index[v]))
            .collect();
        let labels = self
            .labels
            .as_ref()
            .map(|l| keep.iter().map(|&v| l[v].clone()).collect());
        Graph::build(keep.len(), &edges, labels).map(|(g, _)| g)
    }

    pub fn to_json_value(&self) -> GraphJson {
        GraphJson {
            n: self.n,
            edges: self.edges.iter().map(|&(u, v)| [u, v]).collect(),
            labels: self.labels.clone(),
        }
    }

    /// Deterministic JSON: edges sorted, `labels` omitted when absent.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("graph json")
    }

    /// Parses the graph JSON format, returning the graph and the number of
    /// duplicate edges that were merged.
    pub fn from_json(text: &str) -> std::result::Result<(Graph, usize), GraphParseError> {
        let raw: GraphJson = serde_json::from_str(text).map_err(|e| GraphParseError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        raw.into_graph().map_err(GraphParseError::Invalid)
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, m={})", self.n, self.edges.len())
    }
}

/// Wire form of a graph: `{"n":..,"edges":[[u,v],..],"labels":[..]?}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl GraphJson {
    pub fn into_graph(self) -> Result<(Graph, usize)> {
        let edges: Vec<(usize, usize)> = self.edges.iter().map(|e| (e[0], e[1])).collect();
        Graph::build(self.n, &edges, self.labels)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum GraphParseError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error(transparent)]
    Invalid(Error),
}
