//! Symmetric graphs and the edge-state layout of the walker's Hilbert space.
//!
//! A [`Graph`] stores the directed closure of an undirected simple graph in
//! compressed form. Neighbors of every vertex are kept sorted by label, which
//! fixes the coin ordering: coin `c` at vertex `v` points at the `c`-th
//! smallest neighbor of `v`. The same prefix sums that delimit neighbor lists
//! give the flat index of every edge state `|v, c>`.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// A basis state `|vertex, coin>` of the walker space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeState {
    pub vertex: usize,
    pub coin: usize,
}

impl EdgeState {
    pub fn new(vertex: usize, coin: usize) -> Self {
        Self { vertex, coin }
    }
}

/// Directed version of an undirected simple graph with sorted adjacency.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    neighbors: Vec<usize>,
    offsets: Vec<usize>,
}

impl Graph {
    /// Builds a graph from unordered edges, inferring `n` from the largest id.
    pub fn from_edges(edges: &[(usize, usize)]) -> Result<Self> {
        let n = edges
            .iter()
            .map(|&(u, v)| u.max(v) + 1)
            .max()
            .ok_or(Error::EmptyGraph)?;
        Self::with_vertex_count(n, edges)
    }

    /// Builds a graph on vertices `0..n` from unordered edges.
    pub fn with_vertex_count(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n == 0 || edges.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let mut adjacency = vec![BTreeSet::new(); n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange {
                        vertex: w,
                        vertex_count: n,
                    });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if !adjacency[u].insert(v) {
                return Err(Error::DuplicateEdge(u.min(v), u.max(v)));
            }
            adjacency[v].insert(u);
        }
        if let Some(v) = adjacency.iter().position(BTreeSet::is_empty) {
            return Err(Error::IsolatedVertex(v));
        }

        let mut offsets = Vec::with_capacity(n + 1);
        let mut neighbors = Vec::new();
        offsets.push(0);
        for set in &adjacency {
            neighbors.extend(set.iter().copied());
            offsets.push(neighbors.len());
        }
        Ok(Self {
            vertex_count: n,
            neighbors,
            offsets,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Number of directed edges, i.e. the dimension of the walker space.
    pub fn dimension(&self) -> usize {
        self.neighbors.len()
    }

    /// Number of undirected edges.
    pub fn edge_count(&self) -> usize {
        self.neighbors.len() / 2
    }

    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn max_degree(&self) -> usize {
        (0..self.vertex_count)
            .map(|v| self.degree(v))
            .max()
            .unwrap_or(0)
    }

    /// Sorted neighbors of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[self.offsets[v]..self.offsets[v + 1]]
    }

    /// Start of `v`'s coin block in the flat layout.
    pub fn offset(&self, v: usize) -> usize {
        self.offsets[v]
    }

    /// Prefix sums of degrees, `vertex_count + 1` entries.
    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    pub fn contains_edge(&self, u: usize, v: usize) -> bool {
        u < self.vertex_count && self.neighbors(u).binary_search(&v).is_ok()
    }

    /// Iterates over undirected edges `(u, v)` with `u < v`, in sorted order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.vertex_count).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .filter(move |&&v| v > u)
                .map(move |&v| (u, v))
        })
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.vertex_count {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                vertex_count: self.vertex_count,
            })
        }
    }

    /// The `c`-th smallest-labeled neighbor of `v`.
    pub fn eta(&self, v: usize, c: usize) -> Result<usize> {
        self.check_vertex(v)?;
        self.neighbors(v)
            .get(c)
            .copied()
            .ok_or(Error::CoinOutOfRange {
                vertex: v,
                coin: c,
                degree: self.degree(v),
            })
    }

    /// Coin index of `u` inside `N(v)`: the `c'` with `eta(v, c') = u`.
    ///
    /// The flip-flop shift sends the edge state pointing from `u` to `v`
    /// onto `|v, sigma(u, v)>`.
    pub fn sigma(&self, u: usize, v: usize) -> Result<usize> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        self.neighbors(v)
            .binary_search(&u)
            .map_err(|_| Error::NotAdjacent(u, v))
    }

    /// Inverse edge map; with the flip-flop pairing it equals `sigma(v, u)`.
    pub fn sigma_inv(&self, u: usize, v: usize) -> Result<usize> {
        self.sigma(v, u)
    }

    pub fn edge_state_index(&self, s: EdgeState) -> Result<usize> {
        self.check_vertex(s.vertex)?;
        let degree = self.degree(s.vertex);
        if s.coin >= degree {
            return Err(Error::CoinOutOfRange {
                vertex: s.vertex,
                coin: s.coin,
                degree,
            });
        }
        Ok(self.offsets[s.vertex] + s.coin)
    }

    pub fn edge_state_at(&self, index: usize) -> Result<EdgeState> {
        if index >= self.dimension() {
            return Err(Error::IndexOutOfRange {
                index,
                dimension: self.dimension(),
            });
        }
        // Last offset <= index; degrees are >= 1 so offsets are strictly increasing.
        let vertex = self.offsets.partition_point(|&o| o <= index) - 1;
        Ok(EdgeState::new(vertex, index - self.offsets[vertex]))
    }

    /// All edge states in flat order.
    pub fn edge_states(&self) -> impl Iterator<Item = EdgeState> + '_ {
        (0..self.vertex_count)
            .flat_map(move |v| (0..self.degree(v)).map(move |c| EdgeState::new(v, c)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k3() -> Graph {
        Graph::from_edges(&[(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    fn c4() -> Graph {
        Graph::from_edges(&[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap()
    }

    #[test]
    fn build_sorts_neighbors() {
        let g = k3();
        assert_eq!(g.neighbors(0), &[1, 2]);
        assert_eq!(g.neighbors(1), &[0, 2]);
        assert_eq!(g.neighbors(2), &[0, 1]);
        assert_eq!(g.offsets(), &[0, 2, 4, 6]);
    }

    #[test]
    fn cycle_dimension() {
        let g = c4();
        assert!((0..4).all(|v| g.degree(v) == 2));
        assert_eq!(g.dimension(), 8);
        assert_eq!(g.edge_count(), 4);
    }

    #[test]
    fn rejects_bad_edge_lists() {
        assert_eq!(Graph::from_edges(&[(0, 0)]), Err(Error::SelfLoop(0)));
        assert_eq!(
            Graph::from_edges(&[(0, 1), (1, 0)]),
            Err(Error::DuplicateEdge(0, 1))
        );
        assert_eq!(
            Graph::from_edges(&[(0, 2), (2, 3)]),
            Err(Error::IsolatedVertex(1))
        );
        assert_eq!(
            Graph::with_vertex_count(2, &[(0, 5)]),
            Err(Error::VertexOutOfRange {
                vertex: 5,
                vertex_count: 2
            })
        );
        assert_eq!(Graph::from_edges(&[]), Err(Error::EmptyGraph));
    }

    #[test]
    fn eta_picks_sorted_neighbor() {
        let g = k3();
        assert_eq!(g.eta(0, 0), Ok(1));
        assert_eq!(g.eta(0, 1), Ok(2));
        assert_eq!(c4().eta(0, 1), Ok(3));
        assert!(matches!(g.eta(0, 2), Err(Error::CoinOutOfRange { .. })));
    }

    #[test]
    fn sigma_is_position_in_target_list() {
        let g = k3();
        assert_eq!(g.sigma(1, 0), Ok(0));
        assert_eq!(g.sigma(2, 0), Ok(1));
        assert_eq!(c4().sigma(3, 0), Ok(1));
        assert_eq!(c4().sigma(2, 0), Err(Error::NotAdjacent(2, 0)));
        assert_eq!(g.sigma_inv(0, 1), g.sigma(1, 0));
    }

    #[test]
    fn flat_indexing() {
        let g = k3();
        let idx = |v, c| g.edge_state_index(EdgeState::new(v, c)).unwrap();
        assert_eq!(idx(0, 0), 0);
        assert_eq!(idx(1, 1), 3);
        assert_eq!(idx(2, 0), 4);
        assert_eq!(g.edge_state_at(3), Ok(EdgeState::new(1, 1)));
        assert_eq!(c4().edge_state_index(EdgeState::new(3, 1)), Ok(7));
        assert!(g.edge_state_at(6).is_err());
        assert!(g.edge_state_index(EdgeState::new(1, 2)).is_err());
    }

    #[test]
    fn edges_iterates_each_pair_once() {
        let g = c4();
        let e: Vec<_> = g.edges().collect();
        assert_eq!(e, vec![(0, 1), (0, 3), (1, 2), (2, 3)]);
    }
}
