//! Structure census: raw counts of the rare "Poisson objects" (low-degree
//! vertices, short cycles, short paths with low-degree endpoints), their
//! pairwise separation, and membership in the truncated structure classes
//! on which rank-k first-order truth is constant.

use super::{Graph, GraphError};

/// Truncated census vector `(q, r_3..r_m, s_1..s_m)` at truncation level `k`,
/// with every entry capped at `k` and `m = 5^{k+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureProfile {
    k: u32,
    q: u32,
    /// Capped p-cycle counts for p = 3..=m.
    cycles: Vec<u32>,
    /// Capped p-path counts for p = 1..=m (both endpoints of degree R-1).
    paths: Vec<u32>,
}

impl StructureProfile {
    pub fn new(k: u32, q: u32, cycles: Vec<u32>, paths: Vec<u32>) -> Result<Self, GraphError> {
        let m = profile_span(k);
        if cycles.len() != m - 2 || paths.len() != m {
            return Err(GraphError::InvalidProfile(format!(
                "expected {} cycle entries and {} path entries for k = {k}",
                m - 2,
                m
            )));
        }
        if q > k || cycles.iter().chain(paths.iter()).any(|&x| x > k) {
            return Err(GraphError::InvalidProfile(format!(
                "profile entries must lie in 0..={k}"
            )));
        }
        Ok(Self { k, q, cycles, paths })
    }

    /// The all-zero profile (no low-degree vertices, no short cycles, no
    /// short low-endpoint paths).
    pub fn all_zero(k: u32) -> Self {
        let m = profile_span(k);
        Self {
            k,
            q: 0,
            cycles: vec![0; m - 2],
            paths: vec![0; m],
        }
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// Census length bound `m = 5^{k+1}`.
    pub fn m(&self) -> usize {
        profile_span(self.k)
    }

    /// Capped count of degree-(R-2) vertices.
    pub fn q(&self) -> u32 {
        self.q
    }

    /// Capped p-cycle entries as `(p, count)`, p = 3..=m.
    pub fn cycle_entries(&self) -> impl Iterator<Item = (usize, &u32)> {
        self.cycles.iter().enumerate().map(|(i, c)| (i + 3, c))
    }

    /// Capped p-path entries as `(p, count)`, p = 1..=m.
    pub fn path_entries(&self) -> impl Iterator<Item = (usize, &u32)> {
        self.paths.iter().enumerate().map(|(i, c)| (i + 1, c))
    }

    pub fn cycle_count(&self, p: usize) -> u32 {
        self.cycles[p - 3]
    }

    pub fn path_count(&self, p: usize) -> u32 {
        self.paths[p - 1]
    }
}

/// `m = 5^{k+1}`.
pub(crate) fn profile_span(k: u32) -> usize {
    5usize.pow(k + 1)
}

/// Raw structural counts of one graph, sufficient to decide membership in
/// any structure class at the truncation level the census was taken at.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusReport {
    k: u32,
    /// Degree histogram, index d = 0..=R; sums to n.
    pub degree_histogram: Vec<u64>,
    /// Raw p-cycle counts, index p-1 for p = 1..=m (entries 1, 2 are zero
    /// for simple graphs).
    pub cycle_counts: Vec<u64>,
    /// Raw counts of p-paths with both endpoints of degree R-1, p = 1..=m.
    pub path_counts: Vec<u64>,
    /// Minimum pairwise distance between distinct Poisson objects; `None`
    /// when no two objects are connected by any path.
    pub min_object_distance: Option<usize>,
    /// Minimum distance over the separation pairs (low-degree vertices vs
    /// each other, low-degree vertices vs cycles, cycle pairs, path pairs);
    /// `None` when no such pair is connected.
    pub min_separation: Option<usize>,
    /// Size of the smallest connected component (n >= 1).
    pub min_component_size: usize,
    pub connectivity: Option<usize>,
    pub rigid: Option<bool>,
}

impl CensusReport {
    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn m(&self) -> usize {
        profile_span(self.k)
    }

    fn max_degree(&self) -> usize {
        self.degree_histogram.len() - 1
    }

    /// The capped profile induced by the raw counts.
    pub fn profile(&self) -> StructureProfile {
        let k = self.k;
        let r = self.max_degree();
        let cap = |x: u64| -> u32 { x.min(k as u64) as u32 };
        let q = cap(self.degree_histogram[r - 2]);
        let cycles = (3..=self.m()).map(|p| cap(self.cycle_counts[p - 1])).collect();
        let paths = (1..=self.m()).map(|p| cap(self.path_counts[p - 1])).collect();
        StructureProfile::new(k, q, cycles, paths).expect("capped entries are valid")
    }

    /// The side conditions of class membership that do not depend on the
    /// target profile: no vertex of degree < R-2, at least m vertices of
    /// degree R-1 and of degree R, separation at least `5^{k+2}`, and (for
    /// R >= 3) no component smaller than m.
    pub fn class_conditions_hold(&self) -> bool {
        let r = self.max_degree();
        let m = self.m() as u64;
        if (0..r.saturating_sub(2)).any(|d| self.degree_histogram[d] > 0) {
            return false;
        }
        if self.degree_histogram[r - 1] < m || self.degree_histogram[r] < m {
            return false;
        }
        let threshold = 5usize.pow(self.k + 2);
        if matches!(self.min_separation, Some(d) if d < threshold) {
            return false;
        }
        if r >= 3 && self.min_component_size < self.m() {
            return false;
        }
        true
    }

    /// Whether the censused graph belongs to the structure class indexed by
    /// `target`.
    pub fn in_class(&self, target: &StructureProfile) -> bool {
        target.k() == self.k && self.class_conditions_hold() && self.profile() == *target
    }
}

/// Takes the full census of `g` at truncation level `k >= 1`: raw counts up
/// to length `m = 5^{k+1}`, the separation distances, and the capped profile.
///
/// Cost grows with the number of vertex-simple paths of length `m`, so large
/// `k` is only practical on small graphs or when the maximum degree is 2.
pub fn census(g: &Graph, k: u32) -> (StructureProfile, CensusReport) {
    assert!(k >= 1, "census truncation level must be at least 1");
    let r = g.max_degree();
    assert!(r >= 2, "census requires a degree bound of at least 2");
    let m = profile_span(k);

    let degree_histogram = g.degree_histogram();

    let mut cycle_counts = vec![0u64; m];
    let mut cycle_objects: Vec<Vec<usize>> = Vec::new();
    for p in 3..=m.min(g.n()) {
        g.for_each_cycle(p, &mut |cycle| {
            cycle_counts[p - 1] += 1;
            cycle_objects.push(cycle.to_vec());
        });
    }

    let mut path_counts = vec![0u64; m];
    let mut path_objects: Vec<Vec<usize>> = Vec::new();
    for p in 1..=m {
        g.for_each_path_with_endpoint_degree(p, r - 1, &mut |path| {
            path_counts[p - 1] += 1;
            path_objects.push(path.to_vec());
        });
    }

    let low_exact: Vec<usize> = (0..g.n())
        .filter(|&v| r >= 2 && g.degree(v) == r - 2)
        .collect();
    let low_at_most: Vec<usize> = (0..g.n()).filter(|&v| g.degree(v) < r).collect();

    let min_separation = separation_distance(g, &low_exact, &low_at_most, &cycle_objects, &path_objects);
    let min_object_distance = object_distance(g, &low_exact, &cycle_objects, &path_objects);

    let components = g.component_sizes();
    let min_component_size = components.first().copied().unwrap_or(0);

    let report = CensusReport {
        k,
        degree_histogram,
        cycle_counts,
        path_counts,
        min_object_distance,
        min_separation,
        min_component_size,
        connectivity: None,
        rigid: None,
    };
    (report.profile(), report)
}

fn min_merge(acc: &mut Option<usize>, d: usize) {
    *acc = Some(acc.map_or(d, |cur| cur.min(d)));
}

/// Minimum distance from each seed set to the nearest vertex owned by a
/// *different* object, given per-vertex owner lists.
fn nearest_foreign(
    g: &Graph,
    objects: &[Vec<usize>],
    owners: &[Vec<u32>],
    acc: &mut Option<usize>,
) {
    for (id, object) in objects.iter().enumerate() {
        let dist = g.distances_from(object);
        for v in 0..g.n() {
            if dist[v] == u32::MAX {
                continue;
            }
            if owners[v].iter().any(|&o| o != id as u32) {
                min_merge(acc, dist[v] as usize);
            }
        }
    }
}

/// Minimum pairwise distance between distinct Poisson objects: degree-(R-2)
/// vertices, cycles of length <= m, and qualifying paths of length <= m.
fn object_distance(
    g: &Graph,
    low_exact: &[usize],
    cycles: &[Vec<usize>],
    paths: &[Vec<usize>],
) -> Option<usize> {
    let mut objects: Vec<Vec<usize>> = Vec::new();
    objects.extend(low_exact.iter().map(|&v| vec![v]));
    objects.extend(cycles.iter().cloned());
    objects.extend(paths.iter().cloned());
    if objects.len() < 2 {
        return None;
    }
    let mut owners: Vec<Vec<u32>> = vec![Vec::new(); g.n()];
    for (id, object) in objects.iter().enumerate() {
        for &v in object {
            owners[v].push(id as u32);
        }
    }
    let mut best = None;
    nearest_foreign(g, &objects, &owners, &mut best);
    best
}

/// Minimum distance over the four separation pair families:
/// (a) a degree-(R-2) vertex and any other vertex of degree <= R-1,
/// (b) a vertex of degree <= R-1 and a cycle of length <= m,
/// (c) two different cycles of length <= m,
/// (d) two different qualifying paths of length <= m.
fn separation_distance(
    g: &Graph,
    low_exact: &[usize],
    low_at_most: &[usize],
    cycles: &[Vec<usize>],
    paths: &[Vec<usize>],
) -> Option<usize> {
    let mut best = None;

    // (a): BFS from each degree-(R-2) vertex to the nearest other low vertex.
    let low_set: Vec<bool> = {
        let mut s = vec![false; g.n()];
        for &v in low_at_most {
            s[v] = true;
        }
        s
    };
    for &v in low_exact {
        let dist = g.distances_from(&[v]);
        for w in 0..g.n() {
            if w != v && low_set[w] && dist[w] != u32::MAX {
                min_merge(&mut best, dist[w] as usize);
            }
        }
    }

    // (b): distance from low vertices to cycles.
    if !cycles.is_empty() && !low_at_most.is_empty() {
        let dist = g.distances_from(low_at_most);
        for cycle in cycles {
            for &v in cycle {
                if dist[v] != u32::MAX {
                    min_merge(&mut best, dist[v] as usize);
                }
            }
        }
    }

    // (c) and (d): pairwise distances within each object family.
    for objects in [cycles, paths] {
        if objects.len() < 2 {
            continue;
        }
        let mut owners: Vec<Vec<u32>> = vec![Vec::new(); g.n()];
        for (id, object) in objects.iter().enumerate() {
            for &v in object {
                owners[v].push(id as u32);
            }
        }
        nearest_foreign(g, objects, &owners, &mut best);
    }
    best
}
