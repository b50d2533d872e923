//! Multigraphs: unordered vertex pairs and singletons with multiplicities.
//! A loop at `v` contributes 2 to the degree of `v`.

use std::collections::BTreeMap;

use super::{Graph, GraphError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multigraph {
    n: usize,
    /// Multiplicity per key; `(v, v)` keys are loops, `(u, v)` with `u < v`
    /// are parallel edge bundles.
    mult: BTreeMap<(usize, usize), u32>,
    degrees: Vec<usize>,
    /// Distinct non-loop neighbors with multiplicities, sorted by neighbor.
    adj: Vec<Vec<(usize, u32)>>,
}

impl Multigraph {
    /// Builds a multigraph from endpoint pairs; `(v, v)` pairs are loops.
    pub fn from_pairs(
        n: usize,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let mut mult: BTreeMap<(usize, usize), u32> = BTreeMap::new();
        for (u, v) in pairs {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { v: w, n });
                }
            }
            *mult.entry((u.min(v), u.max(v))).or_insert(0) += 1;
        }
        let mut degrees = vec![0usize; n];
        let mut adj: Vec<Vec<(usize, u32)>> = vec![Vec::new(); n];
        for (&(u, v), &k) in &mult {
            if u == v {
                degrees[u] += 2 * k as usize;
            } else {
                degrees[u] += k as usize;
                degrees[v] += k as usize;
                adj[u].push((v, k));
                adj[v].push((u, k));
            }
        }
        for nbrs in &mut adj {
            nbrs.sort_unstable();
        }
        Ok(Self {
            n,
            mult,
            degrees,
            adj,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Multiplicity of the edge bundle `{u, v}` (loops for `u == v`).
    pub fn multiplicity(&self, u: usize, v: usize) -> u32 {
        *self.mult.get(&(u.min(v), u.max(v))).unwrap_or(&0)
    }

    /// Degree per the multigraph convention: loops count twice.
    pub fn degree(&self, v: usize) -> usize {
        self.degrees[v]
    }

    pub fn max_degree(&self) -> usize {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    /// Number of vertices of each degree, indices `0..=max_degree_bound`.
    pub fn degree_histogram(&self, max_degree_bound: usize) -> Vec<u64> {
        let mut hist = vec![0u64; max_degree_bound + 1];
        for &d in &self.degrees {
            hist[d] += 1;
        }
        hist
    }

    /// True iff there are no loops and no multiplicity exceeds 1.
    pub fn is_simple(&self) -> bool {
        self.mult.iter().all(|(&(u, v), &k)| u != v && k <= 1)
    }

    /// Converts to a simple [`Graph`]. Calling this on a non-simple
    /// multigraph is a contract violation and fails.
    pub fn to_graph(&self, max_degree: usize) -> Result<Graph, GraphError> {
        if !self.is_simple() {
            return Err(GraphError::NotSimple);
        }
        let edges: Vec<(usize, usize)> = self.mult.keys().copied().collect();
        Graph::new(self.n, max_degree, &edges)
    }

    /// Number of p-cycles. `p = 1` counts loops, `p = 2` counts unordered
    /// pairs of parallel edges, and `p >= 3` counts vertex-simple cycles with
    /// parallel bundles contributing multiplicatively. Each cycle is counted
    /// once, with orientation and starting point quotiented out.
    pub fn count_cycles(&self, p: usize) -> u64 {
        match p {
            0 => 0,
            1 => self
                .mult
                .iter()
                .filter(|(&(u, v), _)| u == v)
                .map(|(_, &k)| k as u64)
                .sum(),
            2 => self
                .mult
                .iter()
                .filter(|(&(u, v), _)| u != v)
                .map(|(_, &k)| (k as u64) * (k as u64 - 1) / 2)
                .sum(),
            _ => {
                if p > self.n {
                    return 0;
                }
                let mut total = 0u64;
                let mut in_path = vec![false; self.n];
                for root in 0..self.n {
                    in_path[root] = true;
                    total += self.cycle_dfs(root, root, usize::MAX, 1, 1, p, &mut in_path);
                    in_path[root] = false;
                }
                total
            }
        }
    }

    fn cycle_dfs(
        &self,
        root: usize,
        current: usize,
        first: usize,
        depth: usize,
        weight: u64,
        p: usize,
        in_path: &mut Vec<bool>,
    ) -> u64 {
        if depth == p {
            // Close the cycle; count each vertex cycle once by requiring the
            // second vertex to be smaller than the last.
            if first < current {
                return weight * self.multiplicity(current, root) as u64;
            }
            return 0;
        }
        let mut total = 0u64;
        for &(w, k) in &self.adj[current] {
            if w <= root || in_path[w] {
                continue;
            }
            in_path[w] = true;
            let first = if depth == 1 { w } else { first };
            total += self.cycle_dfs(root, w, first, depth + 1, weight * k as u64, p, in_path);
            in_path[w] = false;
        }
        total
    }
}
