//! Rigidity testing: a graph is rigid when its only automorphism is the
//! identity. Backtracking search over color-preserving bijections, with the
//! vertex classes first refined by iterated neighbor-color multisets.

use std::collections::HashMap;

use super::{Graph, GraphError};

pub(crate) const DEFAULT_RIGIDITY_CAP: usize = 1000;

impl Graph {
    /// True iff the automorphism group is trivial. Graphs larger than the
    /// default cap (1000 vertices) are rejected.
    pub fn is_rigid(&self) -> Result<bool, GraphError> {
        self.is_rigid_capped(DEFAULT_RIGIDITY_CAP)
    }

    pub fn is_rigid_capped(&self, cap: usize) -> Result<bool, GraphError> {
        if self.n() > cap {
            return Err(GraphError::CapExceeded { n: self.n(), cap });
        }
        if self.n() <= 1 {
            return Ok(true);
        }
        let colors = self.refined_colors();
        let mut search = AutomorphismSearch {
            g: self,
            colors: &colors,
            image: vec![usize::MAX; self.n()],
            used: vec![false; self.n()],
            found: 0,
        };
        search.run(0);
        Ok(search.found < 2)
    }

    /// Iterated degree/neighborhood color refinement (1-dimensional
    /// Weisfeiler-Leman), stable under automorphisms.
    fn refined_colors(&self) -> Vec<u32> {
        let mut colors: Vec<u32> = (0..self.n()).map(|v| self.degree(v) as u32).collect();
        let mut class_count = normalize(&mut colors);
        loop {
            let mut signatures: Vec<(u32, Vec<u32>)> = (0..self.n())
                .map(|v| {
                    let mut nbr: Vec<u32> = self.neighbors(v).iter().map(|&w| colors[w]).collect();
                    nbr.sort_unstable();
                    (colors[v], nbr)
                })
                .collect();
            let mut palette: HashMap<(u32, Vec<u32>), u32> = HashMap::new();
            let mut next: Vec<u32> = Vec::with_capacity(self.n());
            for sig in signatures.drain(..) {
                let fresh = palette.len() as u32;
                next.push(*palette.entry(sig).or_insert(fresh));
            }
            let next_count = palette.len();
            if next_count == class_count {
                return next;
            }
            class_count = next_count;
            colors = next;
        }
    }
}

fn normalize(colors: &mut [u32]) -> usize {
    let mut palette: HashMap<u32, u32> = HashMap::new();
    for c in colors.iter_mut() {
        let fresh = palette.len() as u32;
        *c = *palette.entry(*c).or_insert(fresh);
    }
    palette.len()
}

struct AutomorphismSearch<'a> {
    g: &'a Graph,
    colors: &'a [u32],
    image: Vec<usize>,
    used: Vec<bool>,
    found: u32,
}

impl AutomorphismSearch<'_> {
    /// Counts automorphisms extending the current partial map, stopping as
    /// soon as two are known.
    fn run(&mut self, v: usize) {
        if self.found >= 2 {
            return;
        }
        if v == self.g.n() {
            self.found += 1;
            return;
        }
        for w in 0..self.g.n() {
            if self.used[w] || self.colors[w] != self.colors[v] {
                continue;
            }
            // Adjacency toward already-mapped vertices must be preserved.
            let consistent = (0..v).all(|u| {
                self.g.has_edge(v, u) == self.g.has_edge(w, self.image[u])
            });
            if !consistent {
                continue;
            }
            self.image[v] = w;
            self.used[w] = true;
            self.run(v + 1);
            self.used[w] = false;
            self.image[v] = usize::MAX;
            if self.found >= 2 {
                return;
            }
        }
    }
}
