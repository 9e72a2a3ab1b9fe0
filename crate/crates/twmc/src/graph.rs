//! Undirected simple graphs over `0..n` with integer vertex weights.

use crate::modular::ModValue;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge endpoint {0} out of range for {1} vertices")]
    EndpointOutOfRange(u32, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(u32),
    #[error("weight list has {got} entries, graph has {expected} vertices")]
    WeightLengthMismatch { got: usize, expected: usize },
}

/// An immutable simple graph: deduplicated sorted edge list plus symmetric
/// sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(u32, u32)>,
    adj: Vec<Vec<u32>>,
}

impl Graph {
    /// Builds a graph from an edge list. Edges may arrive in any order and
    /// with duplicates; the result is the same graph value.
    pub fn new(n: usize, edge_list: &[(u32, u32)]) -> Result<Graph, GraphError> {
        let mut edges = Vec::with_capacity(edge_list.len());
        for &(u, v) in edge_list {
            if u as usize >= n {
                return Err(GraphError::EndpointOutOfRange(u, n));
            }
            if v as usize >= n {
                return Err(GraphError::EndpointOutOfRange(v, n));
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            edges.push((u.min(v), u.max(v)));
        }
        edges.sort_unstable();
        edges.dedup();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph { n, edges, adj })
    }

    pub fn empty(n: usize) -> Graph {
        Graph {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    /// Complete graph on `n` vertices.
    pub fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n as u32 {
            for v in u + 1..n as u32 {
                edges.push((u, v));
            }
        }
        Graph::new(n, &edges).expect("complete graph edges are in range")
    }

    /// Path `0 - 1 - ... - n-1`.
    pub fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n as u32).map(|v| (v - 1, v)).collect();
        Graph::new(n, &edges).expect("path edges are in range")
    }

    /// Cycle on `n >= 3` vertices.
    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3);
        let mut edges: Vec<_> = (1..n as u32).map(|v| (v - 1, v)).collect();
        edges.push((0, n as u32 - 1));
        Graph::new(n, &edges).expect("cycle edges are in range")
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Sorted, deduplicated `(u, v)` pairs with `u < v`.
    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    /// Sorted neighbor list of `v`.
    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adj[v as usize]
    }

    pub fn are_adjacent(&self, u: u32, v: u32) -> bool {
        self.adj[u as usize].binary_search(&v).is_ok()
    }

    pub fn degree(&self, v: u32) -> usize {
        self.adj[v as usize].len()
    }
}

/// Per-vertex integer weights, stored unreduced so that exact sums are
/// available to the oracle; reduction happens on entry to [`ModValue`]
/// arithmetic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightMap {
    weights: Vec<u64>,
}

/// Inclusive weight bounds used by the instance format.
pub const WEIGHT_MIN: u64 = 1;
pub const WEIGHT_MAX: u64 = 100_000;

impl WeightMap {
    pub fn new(weights: Vec<u64>) -> WeightMap {
        WeightMap { weights }
    }

    /// Weights for `g`, checking only the length; range violations are the
    /// format layer's concern and are reported there as warnings.
    pub fn for_graph(weights: Vec<u64>, g: &Graph) -> Result<WeightMap, GraphError> {
        if weights.len() != g.vertex_count() {
            return Err(GraphError::WeightLengthMismatch {
                got: weights.len(),
                expected: g.vertex_count(),
            });
        }
        Ok(WeightMap { weights })
    }

    pub fn uniform(n: usize, w: u64) -> WeightMap {
        WeightMap {
            weights: vec![w; n],
        }
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weight(&self, v: u32) -> u64 {
        self.weights[v as usize]
    }

    pub fn mod_weight(&self, v: u32) -> ModValue {
        ModValue::new(self.weights[v as usize])
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.weights
    }

    /// `sum of w(v) for v in set`, reduced. The empty set weighs 0.
    pub fn set_weight(&self, set: impl IntoIterator<Item = u32>) -> ModValue {
        let mut acc = ModValue::ZERO;
        for v in set {
            acc += self.mod_weight(v);
        }
        acc
    }

    /// Exact (unreduced) set weight; used by the oracle.
    pub fn set_weight_exact(&self, set: impl IntoIterator<Item = u32>) -> u64 {
        set.into_iter().map(|v| self.weight(v)).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_adjacency() {
        let g = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(g.neighbors(1), &[0, 2]);
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn single_vertex() {
        let g = Graph::new(1, &[]).unwrap();
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn four_cycle_degrees() {
        let g = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        for v in 0..4 {
            assert_eq!(g.degree(v), 2);
        }
    }

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(
            Graph::new(2, &[(0, 2)]),
            Err(GraphError::EndpointOutOfRange(2, 2))
        );
        assert_eq!(Graph::new(2, &[(1, 1)]), Err(GraphError::SelfLoop(1)));
    }

    #[test]
    fn construction_ignores_order_and_duplicates() {
        let a = Graph::new(4, &[(0, 1), (2, 1), (3, 0)]).unwrap();
        let b = Graph::new(4, &[(3, 0), (0, 1), (1, 2), (1, 0), (2, 1)]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn adjacency_is_symmetric_and_counts_match() {
        let g = Graph::new(5, &[(0, 1), (0, 2), (3, 4), (1, 2)]).unwrap();
        let total: usize = (0..5).map(|v| g.degree(v)).sum();
        assert_eq!(total, 2 * g.edge_count());
        for &(u, v) in g.edges() {
            assert!(g.are_adjacent(u, v) && g.are_adjacent(v, u));
        }
    }

    #[test]
    fn weights_must_match_the_graph() {
        let g = Graph::path(3);
        assert!(WeightMap::for_graph(vec![1, 2, 3], &g).is_ok());
        assert_eq!(
            WeightMap::for_graph(vec![1, 2], &g),
            Err(GraphError::WeightLengthMismatch {
                got: 2,
                expected: 3
            })
        );
    }

    #[test]
    fn set_weight_examples() {
        let w = WeightMap::new(vec![5, 7, 9]);
        assert_eq!(w.set_weight([]), ModValue::ZERO);
        assert_eq!(w.set_weight([0, 2]).value(), 14);
        // All 94 vertices at the maximum weight.
        let w = WeightMap::uniform(94, 100_000);
        assert_eq!(w.set_weight(0..94).value(), 9_400_000);
    }
}
