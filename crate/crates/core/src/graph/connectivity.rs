//! Exact vertex connectivity via unit-capacity max-flow on the standard
//! vertex-split network.
//!
//! For a fixed pivot s, every minimum separator either avoids s (found by an
//! s-t flow to some non-neighbor t) or contains s (then s has neighbors in
//! two different components of the split, found by a flow between a
//! non-adjacent pair of neighbors of s). Complete graphs have no
//! non-adjacent pair and get connectivity n-1 by convention.

use super::{Graph, GraphError};

impl Graph {
    /// Exact vertex connectivity. Errors for graphs on fewer than 2 vertices.
    pub fn vertex_connectivity(&self) -> Result<usize, GraphError> {
        let n = self.n();
        if n < 2 {
            return Err(GraphError::TooFewVertices { needed: 2, n });
        }
        let s = (0..n).min_by_key(|&v| self.degree(v)).unwrap();
        let mut best = n - 1;

        let mut non_neighbors: Vec<usize> = (0..n)
            .filter(|&t| t != s && !self.has_edge(s, t))
            .collect();
        for t in non_neighbors.drain(..) {
            best = best.min(self.vertex_flow(s, t, best));
            if best == 0 {
                return Ok(0);
            }
        }

        let nbrs = self.neighbors(s);
        for (i, &u) in nbrs.iter().enumerate() {
            for &w in &nbrs[i + 1..] {
                if !self.has_edge(u, w) {
                    best = best.min(self.vertex_flow(u, w, best));
                }
            }
        }
        Ok(best)
    }

    /// Max-flow between distinct non-adjacent s and t with unit vertex
    /// capacities, stopping early once `cap` is reached.
    fn vertex_flow(&self, s: usize, t: usize, cap: usize) -> usize {
        // Node 2v is v_in, 2v+1 is v_out. Arcs: v_in -> v_out (capacity 1),
        // and u_out -> v_in for every edge in both directions (capacity 2,
        // effectively unbounded for internally disjoint path packing).
        let n = self.n();
        let mut arcs: Vec<(usize, usize, u8)> = Vec::new(); // (to, rev index, capacity)
        let mut heads: Vec<Vec<usize>> = vec![Vec::new(); 2 * n];
        let push = |arcs: &mut Vec<(usize, usize, u8)>,
                        heads: &mut Vec<Vec<usize>>,
                        a: usize,
                        b: usize,
                        c: u8| {
            let i = arcs.len();
            arcs.push((b, i + 1, c));
            arcs.push((a, i, 0));
            heads[a].push(i);
            heads[b].push(i + 1);
        };
        for v in 0..n {
            push(&mut arcs, &mut heads, 2 * v, 2 * v + 1, 1);
        }
        for (u, v) in self.edges() {
            push(&mut arcs, &mut heads, 2 * u + 1, 2 * v, 2);
            push(&mut arcs, &mut heads, 2 * v + 1, 2 * u, 2);
        }

        let source = 2 * s + 1;
        let sink = 2 * t;
        let mut flow = 0usize;
        let mut parent: Vec<Option<usize>> = vec![None; 2 * n];
        while flow < cap {
            // BFS for an augmenting path.
            parent.iter_mut().for_each(|p| *p = None);
            let mut queue = std::collections::VecDeque::from([source]);
            parent[source] = Some(usize::MAX);
            while let Some(u) = queue.pop_front() {
                if u == sink {
                    break;
                }
                for &ai in &heads[u] {
                    let (to, _, cap_left) = arcs[ai];
                    if cap_left > 0 && parent[to].is_none() {
                        parent[to] = Some(ai);
                        queue.push_back(to);
                    }
                }
            }
            if parent[sink].is_none() {
                break;
            }
            let mut u = sink;
            while u != source {
                let ai = parent[u].unwrap();
                arcs[ai].2 -= 1;
                let rev = arcs[ai].1;
                arcs[rev].2 += 1;
                u = arcs[rev].0;
            }
            flow += 1;
        }
        flow
    }

    /// Test-only reference: smallest vertex set whose removal disconnects
    /// the graph, by exhaustive subset search. Exponential; n <= 10.
    #[cfg(test)]
    pub(crate) fn vertex_connectivity_brute(&self) -> usize {
        let n = self.n();
        assert!((2..=10).contains(&n));
        for size in 0..n - 1 {
            if self.any_separator_of_size(size, 0, &mut Vec::new()) {
                return size;
            }
        }
        n - 1
    }

    #[cfg(test)]
    fn any_separator_of_size(&self, size: usize, from: usize, chosen: &mut Vec<usize>) -> bool {
        if chosen.len() == size {
            return self.disconnected_without(chosen);
        }
        for v in from..self.n() {
            chosen.push(v);
            let found = self.any_separator_of_size(size, v + 1, chosen);
            chosen.pop();
            if found {
                return true;
            }
        }
        false
    }

    #[cfg(test)]
    fn disconnected_without(&self, removed: &[usize]) -> bool {
        let n = self.n();
        let mut blocked = vec![false; n];
        for &v in removed {
            blocked[v] = true;
        }
        let Some(start) = (0..n).find(|&v| !blocked[v]) else {
            return false;
        };
        let mut seen = vec![false; n];
        let mut stack = vec![start];
        seen[start] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &w in self.neighbors(u) {
                if !blocked[w] && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                    count += 1;
                }
            }
        }
        count < n - removed.len()
    }
}
