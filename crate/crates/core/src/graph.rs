//! Weighted simple graphs on a `d1 x d2` grid of vertices.
//!
//! Vertex `v` stands for the pair `(a, b) = (v / d2, v % d2)`: `a` picks the
//! part (row) and `b` the position within it. This is the Kronecker ordering,
//! so the graph-level partial transpose agrees with the block transpose of
//! the adjacency matrix.

use std::collections::{BTreeMap, VecDeque};

use thiserror::Error;

use crate::spectral::SymMatrix;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GraphError {
    #[error("graph needs at least one vertex")]
    Empty,
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("edge weight {0} outside (0, 1]")]
    WeightOutOfRange(f64),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("bipartition {d1}x{d2} does not cover {n} vertices")]
    DimensionMismatch { n: usize, d1: usize, d2: usize },
    #[error("partial transpose maps two edges onto ({0}, {1})")]
    TransposeCollision(usize, usize),
}

/// An undirected edge with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub w: f64,
}

/// A simple undirected graph with edge weights in `(0, 1]` whose `n = d1 * d2`
/// vertices are split into `d1` parts of size `d2`.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    d1: usize,
    d2: usize,
    edges: BTreeMap<(usize, usize), f64>,
}

impl Graph {
    /// An edgeless graph on `d1 * d2` vertices.
    pub fn new(d1: usize, d2: usize) -> Result<Self, GraphError> {
        if d1 == 0 || d2 == 0 {
            return Err(GraphError::Empty);
        }
        Ok(Self {
            d1,
            d2,
            edges: BTreeMap::new(),
        })
    }

    pub fn from_edges(
        d1: usize,
        d2: usize,
        edges: impl IntoIterator<Item = (usize, usize, f64)>,
    ) -> Result<Self, GraphError> {
        let mut g = Self::new(d1, d2)?;
        for (u, v, w) in edges {
            g.add_edge(u, v, w)?;
        }
        Ok(g)
    }

    /// Unit-weight graph from an edge list.
    pub fn unweighted(
        d1: usize,
        d2: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        Self::from_edges(d1, d2, edges.into_iter().map(|(u, v)| (u, v, 1.0)))
    }

    pub fn add_edge(&mut self, u: usize, v: usize, w: f64) -> Result<(), GraphError> {
        let n = self.n();
        for x in [u, v] {
            if x >= n {
                return Err(GraphError::VertexOutOfRange { vertex: x, n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if !(w > 0.0 && w <= 1.0) {
            return Err(GraphError::WeightOutOfRange(w));
        }
        let key = (u.min(v), u.max(v));
        if self.edges.contains_key(&key) {
            return Err(GraphError::DuplicateEdge(key.0, key.1));
        }
        self.edges.insert(key, w);
        Ok(())
    }

    /// Same edges, different split of the vertex set.
    pub fn with_bipartition(&self, d1: usize, d2: usize) -> Result<Self, GraphError> {
        if d1 * d2 != self.n() {
            return Err(GraphError::DimensionMismatch { n: self.n(), d1, d2 });
        }
        Ok(Self {
            d1,
            d2,
            edges: self.edges.clone(),
        })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.d1 * self.d2
    }

    #[inline]
    pub fn d1(&self) -> usize {
        self.d1
    }

    #[inline]
    pub fn d2(&self) -> usize {
        self.d2
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges.iter().map(|(&(u, v), &w)| Edge { u, v, w })
    }

    pub fn weight(&self, u: usize, v: usize) -> Option<f64> {
        self.edges.get(&(u.min(v), u.max(v))).copied()
    }

    /// True when every edge has weight exactly 1.
    pub fn is_unweighted(&self) -> bool {
        self.edges.values().all(|&w| w == 1.0)
    }

    /// Grid coordinates `(part, position)` of vertex `v`.
    #[inline]
    pub fn coords(&self, v: usize) -> (usize, usize) {
        (v / self.d2, v % self.d2)
    }

    #[inline]
    pub fn vertex(&self, part: usize, pos: usize) -> usize {
        part * self.d2 + pos
    }

    pub fn weighted_degree(&self, v: usize) -> Result<f64, GraphError> {
        if v >= self.n() {
            return Err(GraphError::VertexOutOfRange { vertex: v, n: self.n() });
        }
        Ok(self.degrees()[v])
    }

    /// Weighted degree (strength) of every vertex.
    pub fn degrees(&self) -> Vec<f64> {
        let mut d = vec![0.0; self.n()];
        for e in self.edges() {
            d[e.u] += e.w;
            d[e.v] += e.w;
        }
        d
    }

    pub fn min_degree(&self) -> f64 {
        self.degrees().into_iter().fold(f64::INFINITY, f64::min)
    }

    /// `d_G`, the sum of all weighted degrees.
    pub fn total_degree(&self) -> f64 {
        2.0 * self.edges.values().sum::<f64>()
    }

    pub fn adjacency_matrix(&self) -> SymMatrix {
        SymMatrix::from_upper(self.n(), |i, j| self.weight(i, j).unwrap_or(0.0))
            .expect("edge weights are finite")
    }

    pub fn degree_matrix(&self) -> SymMatrix {
        SymMatrix::diagonal(&self.degrees()).expect("degrees are finite")
    }

    /// The partial-transpose graph: every edge `(v_ik, v_jl)` becomes
    /// `(v_il, v_jk)` with the same weight. Edges inside a part (`i == j`) or
    /// inside a column (`k == l`) map to themselves, and an edge and its
    /// mirror image, when both present, trade weights.
    pub fn partial_transpose(&self) -> Result<Self, GraphError> {
        let mut edges = BTreeMap::new();
        for e in self.edges() {
            let (i, k) = self.coords(e.u);
            let (j, l) = self.coords(e.v);
            let a = self.vertex(i, l);
            let b = self.vertex(j, k);
            let key = (a.min(b), a.max(b));
            if a == b || edges.insert(key, e.w).is_some() {
                return Err(GraphError::TransposeCollision(key.0, key.1));
            }
        }
        Ok(Self {
            d1: self.d1,
            d2: self.d2,
            edges,
        })
    }

    /// `||A_G||_F^2 = 2 * sum of squared weights`.
    pub fn frobenius_norm_sq(&self) -> f64 {
        2.0 * self.edges.values().map(|w| w * w).sum::<f64>()
    }

    fn neighbour_maps(&self) -> Vec<BTreeMap<usize, f64>> {
        let mut adj = vec![BTreeMap::new(); self.n()];
        for e in self.edges() {
            adj[e.u].insert(e.v, e.w);
            adj[e.v].insert(e.u, e.w);
        }
        adj
    }

    /// Sum over triangles `i < j < k` of the product of their three weights.
    pub fn triangle_weight_sum(&self) -> f64 {
        let adj = self.neighbour_maps();
        let mut total = 0.0;
        for e in self.edges() {
            let (small, large) = if adj[e.u].len() <= adj[e.v].len() {
                (&adj[e.u], &adj[e.v])
            } else {
                (&adj[e.v], &adj[e.u])
            };
            for (&k, &wa) in small.range(e.v + 1..) {
                if let Some(&wb) = large.get(&k) {
                    total += e.w * wa * wb;
                }
            }
        }
        total
    }

    pub fn triangle_count(&self) -> usize {
        let adj = self.neighbour_maps();
        self.edges()
            .map(|e| {
                adj[e.u]
                    .range(e.v + 1..)
                    .filter(|(k, _)| adj[e.v].contains_key(k))
                    .count()
            })
            .sum()
    }

    /// `sum over edges (v_ik, v_jl) of (d(v_il) + d(v_jk)) * w^2`, degrees
    /// taken in this graph. Equals `tr(D (A^{T_B})^2)`.
    pub fn swapped_degree_weight_sum(&self) -> f64 {
        let d = self.degrees();
        self.edges()
            .map(|e| {
                let (i, k) = self.coords(e.u);
                let (j, l) = self.coords(e.v);
                (d[self.vertex(i, l)] + d[self.vertex(j, k)]) * e.w * e.w
            })
            .sum()
    }

    pub fn is_connected(&self) -> bool {
        let n = self.n();
        let adj = self.neighbour_maps();
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut reached = 1;
        while let Some(u) = queue.pop_front() {
            for &v in adj[u].keys() {
                if !seen[v] {
                    seen[v] = true;
                    reached += 1;
                    queue.push_back(v);
                }
            }
        }
        reached == n
    }

    /// Connected and exactly `n - 1` edges.
    pub fn is_tree(&self) -> bool {
        self.edge_count() + 1 == self.n() && self.is_connected()
    }
}
