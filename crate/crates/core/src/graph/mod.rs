//! Core immutable graph, multigraph and configuration types, plus all
//! structural statistics: degrees, balls, cycles, paths, components,
//! connectivity, automorphisms and the structure census.
//!
//! Vertices are `0..n` throughout the API; the text format of
//! [`Graph::to_text`] / [`Graph::from_text`] is 1-indexed.

mod automorphism;
mod census;
mod configuration;
mod connectivity;
mod io;
mod iso;
mod multigraph;
mod paths;

pub use census::{census, CensusReport, StructureProfile};
pub(crate) use census::profile_span;
pub use configuration::Configuration;
pub use iso::isomorphic;
pub use multigraph::Multigraph;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {v} out of range for a graph on {n} vertices")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("self-loop at vertex {0} not allowed in a simple graph")]
    SelfLoop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("vertex {v} has degree {degree}, exceeding the bound {max_degree}")]
    DegreeBound {
        v: usize,
        degree: usize,
        max_degree: usize,
    },
    #[error("multigraph is not simple; conversion to a graph is a contract violation")]
    NotSimple,
    #[error("operation requires at least {needed} vertices, graph has {n}")]
    TooFewVertices { needed: usize, n: usize },
    #[error("instance size {n} exceeds the configured cap {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),
    #[error("invalid structure profile: {0}")]
    InvalidProfile(String),
    #[error("line {line}: {msg}")]
    InvalidText { line: usize, msg: String },
}

/// A simple labelled graph on vertices `0..n` with a maximum-degree bound.
///
/// Immutable after construction and safe to share across threads; all
/// operations are pure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    max_degree: usize,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from an edge list, validating simplicity and the
    /// degree bound.
    pub fn new(
        n: usize,
        max_degree: usize,
        edges: &[(usize, usize)],
    ) -> Result<Self, GraphError> {
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { v: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (v, nbrs) in adj.iter_mut().enumerate() {
            nbrs.sort_unstable();
            if nbrs.windows(2).any(|w| w[0] == w[1]) {
                let dup = nbrs.windows(2).find(|w| w[0] == w[1]).unwrap()[0];
                return Err(GraphError::DuplicateEdge(v.min(dup), v.max(dup)));
            }
            if nbrs.len() > max_degree {
                return Err(GraphError::DegreeBound {
                    v,
                    degree: nbrs.len(),
                    max_degree,
                });
            }
        }
        Ok(Self { max_degree, adj })
    }

    /// Empty graph on `n` vertices.
    pub fn empty(n: usize, max_degree: usize) -> Self {
        Self {
            max_degree,
            adj: vec![Vec::new(); n],
        }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    /// The degree bound this graph was constructed under (not necessarily
    /// attained).
    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Neighbors of `v` in increasing order.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// All edges as `(u, v)` with `u < v`, lexicographically sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, nbrs) in self.adj.iter().enumerate() {
            for &v in nbrs {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Number of vertices of each degree; index `d` holds the count of
    /// degree-`d` vertices, up to the degree bound.
    pub fn degree_histogram(&self) -> Vec<u64> {
        let mut hist = vec![0u64; self.max_degree + 1];
        for nbrs in &self.adj {
            hist[nbrs.len()] += 1;
        }
        hist
    }

    /// All vertices within distance `radius` of `v`, in increasing order.
    pub fn ball(&self, v: usize, radius: usize) -> Result<Vec<usize>, GraphError> {
        if v >= self.n() {
            return Err(GraphError::VertexOutOfRange { v, n: self.n() });
        }
        let dist = self.distances_from(&[v]);
        let mut out: Vec<usize> = (0..self.n())
            .filter(|&w| dist[w] as usize <= radius)
            .collect();
        out.sort_unstable();
        Ok(out)
    }

    /// BFS distances from a set of source vertices; unreachable vertices get
    /// `u32::MAX`.
    pub(crate) fn distances_from(&self, sources: &[usize]) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.n()];
        let mut queue = std::collections::VecDeque::new();
        for &s in sources {
            if dist[s] == u32::MAX {
                dist[s] = 0;
                queue.push_back(s);
            }
        }
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if dist[w] == u32::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Sizes of the connected components, ascending. They sum to `n`.
    pub fn component_sizes(&self) -> Vec<usize> {
        let mut seen = vec![false; self.n()];
        let mut sizes = Vec::new();
        let mut stack = Vec::new();
        for start in 0..self.n() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            stack.push(start);
            let mut size = 0usize;
            while let Some(u) = stack.pop() {
                size += 1;
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            sizes.push(size);
        }
        sizes.sort_unstable();
        sizes
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn cycle_graph(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::new(n, 2, &edges).unwrap()
    }

    pub(crate) fn path_graph(n: usize) -> Graph {
        let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
        Graph::new(n, 2, &edges).unwrap()
    }

    #[test]
    fn construction_validates() {
        assert!(Graph::new(3, 2, &[(0, 0)]).is_err());
        assert!(Graph::new(3, 2, &[(0, 1), (1, 0)]).is_err());
        assert!(Graph::new(3, 2, &[(0, 3)]).is_err());
        assert!(Graph::new(4, 1, &[(0, 1), (0, 2)]).is_err());
        assert!(Graph::new(3, 2, &[(0, 1), (1, 2)]).is_ok());
    }

    #[test]
    fn ball_examples() {
        // Path 0-1-2: ball(1, 1) is everything.
        let p3 = path_graph(3);
        assert_eq!(p3.ball(1, 1).unwrap(), vec![0, 1, 2]);
        // Radius 0 is the vertex itself.
        assert_eq!(p3.ball(2, 0).unwrap(), vec![2]);
        // C6: radius-2 ball covers 5 of the 6 vertices.
        let c6 = cycle_graph(6);
        assert_eq!(c6.ball(0, 2).unwrap().len(), 5);
        assert!(p3.ball(5, 1).is_err());
    }

    #[test]
    fn ball_nested_and_bounded() {
        let c6 = cycle_graph(6);
        for v in 0..6 {
            let mut prev = vec![v];
            for radius in 0..5 {
                let b = c6.ball(v, radius).unwrap();
                assert!(prev.iter().all(|x| b.contains(x)), "balls must be nested");
                // |B(v, l)| <= 1 + R * sum_{i<l} (R-1)^i with R = 2.
                assert!(b.len() <= 1 + 2 * radius);
                prev = b;
            }
        }
    }

    #[test]
    fn component_sizes_examples() {
        // C3 + C4 disjoint.
        let mut edges = vec![(0, 1), (1, 2), (2, 0)];
        edges.extend([(3, 4), (4, 5), (5, 6), (6, 3)]);
        let g = Graph::new(7, 2, &edges).unwrap();
        assert_eq!(g.component_sizes(), vec![3, 4]);

        let edgeless = Graph::empty(3, 2);
        assert_eq!(edgeless.component_sizes(), vec![1, 1, 1]);

        let c5 = cycle_graph(5);
        assert_eq!(c5.component_sizes(), vec![5]);
    }

    #[test]
    fn degree_histogram_sums_to_n() {
        let g = Graph::new(5, 3, &[(0, 1), (1, 2), (2, 3), (3, 1)]).unwrap();
        let hist = g.degree_histogram();
        assert_eq!(hist.iter().sum::<u64>(), 5);
        assert_eq!(hist, vec![1, 1, 2, 1]);
    }
}
