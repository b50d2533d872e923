//! Vertex-simple cycle and path enumeration.
//!
//! Cycles and paths are counted as unoriented objects: one count per vertex
//! traversal class, which matches the 1/2p and 1/2 symmetry factors inside
//! the limiting census means. A p-path has p edges and p+1 distinct vertices.
//!
//! Enumeration cost is proportional to the number of vertex-simple paths of
//! the requested length, so callers are expected to keep the length small on
//! large graphs with max degree >= 3.

use super::Graph;

impl Graph {
    /// Number of vertex-simple p-cycles, each counted once. Zero for `p < 3`
    /// (a simple graph has no shorter cycles).
    pub fn count_cycles(&self, p: usize) -> u64 {
        let mut count = 0u64;
        self.for_each_cycle(p, &mut |_| count += 1);
        count
    }

    /// Visits every p-cycle once as a vertex list `[x0, ..., x_{p-1}]` with
    /// `x0` minimal and `x1 < x_{p-1}`.
    pub(crate) fn for_each_cycle(&self, p: usize, visit: &mut impl FnMut(&[usize])) {
        if p < 3 || p > self.n() {
            return;
        }
        let mut path = Vec::with_capacity(p);
        let mut in_path = vec![false; self.n()];
        for root in 0..self.n() {
            path.push(root);
            in_path[root] = true;
            self.cycle_dfs(root, p, &mut path, &mut in_path, visit);
            in_path[root] = false;
            path.pop();
        }
    }

    fn cycle_dfs(
        &self,
        root: usize,
        p: usize,
        path: &mut Vec<usize>,
        in_path: &mut Vec<bool>,
        visit: &mut impl FnMut(&[usize]),
    ) {
        let current = *path.last().unwrap();
        if path.len() == p {
            if path[1] < current && self.has_edge(current, root) {
                visit(path);
            }
            return;
        }
        for &w in self.neighbors(current) {
            if w <= root || in_path[w] {
                continue;
            }
            path.push(w);
            in_path[w] = true;
            self.cycle_dfs(root, p, path, in_path, visit);
            in_path[w] = false;
            path.pop();
        }
    }

    /// Number of vertex-simple p-paths whose two endpoints both have degree
    /// exactly `endpoint_degree`, each path counted once.
    pub fn count_paths_with_endpoint_degree(&self, p: usize, endpoint_degree: usize) -> u64 {
        let mut count = 0u64;
        self.for_each_path_with_endpoint_degree(p, endpoint_degree, &mut |_| count += 1);
        count
    }

    /// Visits every qualifying p-path once, as its vertex list from the
    /// smaller endpoint to the larger.
    pub(crate) fn for_each_path_with_endpoint_degree(
        &self,
        p: usize,
        endpoint_degree: usize,
        visit: &mut impl FnMut(&[usize]),
    ) {
        if p == 0 || p >= self.n() {
            return;
        }
        let mut path = Vec::with_capacity(p + 1);
        let mut in_path = vec![false; self.n()];
        for start in 0..self.n() {
            if self.degree(start) != endpoint_degree {
                continue;
            }
            path.push(start);
            in_path[start] = true;
            self.path_dfs(p, endpoint_degree, &mut path, &mut in_path, visit);
            in_path[start] = false;
            path.pop();
        }
    }

    fn path_dfs(
        &self,
        p: usize,
        endpoint_degree: usize,
        path: &mut Vec<usize>,
        in_path: &mut Vec<bool>,
        visit: &mut impl FnMut(&[usize]),
    ) {
        let current = *path.last().unwrap();
        if path.len() == p + 1 {
            // Quotient out direction: only accept the orientation starting
            // at the smaller endpoint.
            if self.degree(current) == endpoint_degree && path[0] < current {
                visit(path);
            }
            return;
        }
        for &w in self.neighbors(current) {
            if in_path[w] {
                continue;
            }
            path.push(w);
            in_path[w] = true;
            self.path_dfs(p, endpoint_degree, path, in_path, visit);
            in_path[w] = false;
            path.pop();
        }
    }
}
