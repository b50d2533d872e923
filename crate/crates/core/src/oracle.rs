//! Brute-force ground truth at tiny scale: exhaustive enumeration of all
//! bounded-degree graphs, of all configurations over given cells, exact
//! statistic distributions, and unlabelled counts. Trivially correct beats
//! clever at this scale; everything here is an oracle for the fast paths.

use std::collections::{BTreeMap, HashMap, HashSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::graph::{Configuration, Graph, GraphError};

pub const DEFAULT_GRAPH_CAP: usize = 7;
const HARD_GRAPH_CAP: usize = 8;
const CONFIGURATION_POINT_CAP: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("graph enumeration capped at {cap} vertices, requested {n}")]
    GraphCapExceeded { n: usize, cap: usize },
    #[error("configuration enumeration capped at {cap} points, requested {points}")]
    ConfigurationCapExceeded { points: usize, cap: usize },
    #[error("cell sizes sum to an odd point count {0}")]
    OddPointCount(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Every graph on `n` vertices with maximum degree at most `max_degree`,
/// stored as edge-set bitmasks over the lexicographic edge slots.
#[derive(Debug, Clone)]
pub struct EnsembleTable {
    n: usize,
    max_degree: usize,
    slots: Vec<(usize, usize)>,
    masks: Vec<u32>,
}

impl EnsembleTable {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn len(&self) -> usize {
        self.masks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }

    pub fn graph(&self, index: usize) -> Graph {
        let edges: Vec<(usize, usize)> = self
            .slots
            .iter()
            .enumerate()
            .filter(|&(k, _)| self.masks[index] >> k & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        Graph::new(self.n, self.max_degree, &edges).expect("enumerated graphs are valid")
    }

    pub fn iter(&self) -> impl Iterator<Item = Graph> + '_ {
        (0..self.len()).map(|i| self.graph(i))
    }

    /// Index of a labelled graph in the table, if its edge set is listed.
    pub fn index_of(&self, g: &Graph) -> Option<usize> {
        if g.n() != self.n {
            return None;
        }
        let mask = self.encode(g)?;
        self.masks.binary_search(&mask).ok()
    }

    fn encode(&self, g: &Graph) -> Option<u32> {
        let slot_index: HashMap<(usize, usize), usize> = self
            .slots
            .iter()
            .enumerate()
            .map(|(k, &e)| (e, k))
            .collect();
        let mut mask = 0u32;
        for e in g.edges() {
            mask |= 1 << slot_index.get(&e)?;
        }
        Some(mask)
    }
}

fn edge_slots(n: usize) -> Vec<(usize, usize)> {
    let mut slots = Vec::with_capacity(n * (n - 1) / 2);
    for u in 0..n {
        for v in u + 1..n {
            slots.push((u, v));
        }
    }
    slots
}

/// Enumerates all graphs on `n` vertices with maximum degree `max_degree`,
/// in increasing bitmask order. Capped at 7 vertices by default.
pub fn enumerate_graphs(n: usize, max_degree: usize) -> Result<EnsembleTable, OracleError> {
    enumerate_graphs_with_cap(n, max_degree, DEFAULT_GRAPH_CAP)
}

pub fn enumerate_graphs_with_cap(
    n: usize,
    max_degree: usize,
    cap: usize,
) -> Result<EnsembleTable, OracleError> {
    let cap = cap.min(HARD_GRAPH_CAP);
    if n > cap {
        return Err(OracleError::GraphCapExceeded { n, cap });
    }
    let slots = edge_slots(n);
    let mut masks = Vec::new();
    let mut degrees = vec![0usize; n];
    extend_masks(&slots, max_degree, 0, 0, &mut degrees, &mut masks);
    masks.sort_unstable();
    Ok(EnsembleTable {
        n,
        max_degree,
        slots,
        masks,
    })
}

fn extend_masks(
    slots: &[(usize, usize)],
    max_degree: usize,
    slot: usize,
    mask: u32,
    degrees: &mut Vec<usize>,
    out: &mut Vec<u32>,
) {
    if slot == slots.len() {
        out.push(mask);
        return;
    }
    extend_masks(slots, max_degree, slot + 1, mask, degrees, out);
    let (u, v) = slots[slot];
    if degrees[u] < max_degree && degrees[v] < max_degree {
        degrees[u] += 1;
        degrees[v] += 1;
        extend_masks(slots, max_degree, slot + 1, mask | 1 << slot, degrees, out);
        degrees[u] -= 1;
        degrees[v] -= 1;
    }
}

/// All configurations (perfect matchings) over cells of the given sizes,
/// in a deterministic order. Capped at 12 points.
pub fn enumerate_configurations(cell_sizes: &[usize]) -> Result<Vec<Configuration>, OracleError> {
    let points: usize = cell_sizes.iter().sum();
    if !points.is_multiple_of(2) {
        return Err(OracleError::OddPointCount(points));
    }
    if points > CONFIGURATION_POINT_CAP {
        return Err(OracleError::ConfigurationCapExceeded {
            points,
            cap: CONFIGURATION_POINT_CAP,
        });
    }
    let mut matching = vec![usize::MAX; points];
    let mut out = Vec::new();
    extend_matching(cell_sizes, &mut matching, &mut out);
    Ok(out)
}

fn extend_matching(
    cell_sizes: &[usize],
    matching: &mut Vec<usize>,
    out: &mut Vec<Configuration>,
) {
    let Some(p) = matching.iter().position(|&q| q == usize::MAX) else {
        out.push(
            Configuration::new(cell_sizes.to_vec(), matching.clone())
                .expect("constructed matchings are involutions"),
        );
        return;
    };
    for q in p + 1..matching.len() {
        if matching[q] != usize::MAX {
            continue;
        }
        matching[p] = q;
        matching[q] = p;
        extend_matching(cell_sizes, matching, out);
        matching[p] = usize::MAX;
        matching[q] = usize::MAX;
    }
}

/// Exact distribution of a statistic under the uniform distribution on all
/// graphs with the given parameters. Probabilities are exact rationals.
pub fn exact_statistic_distribution(
    n: usize,
    max_degree: usize,
    statistic: impl Fn(&Graph) -> u64,
) -> Result<BTreeMap<u64, BigRational>, OracleError> {
    let table = enumerate_graphs(n, max_degree)?;
    let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
    for g in table.iter() {
        *counts.entry(statistic(&g)).or_insert(0) += 1;
    }
    let total = BigInt::from(table.len());
    Ok(counts
        .into_iter()
        .map(|(value, count)| (value, BigRational::new(BigInt::from(count), total.clone())))
        .collect())
}

/// Calls `f` with every permutation of `0..n`.
pub fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize])) {
    let mut perm: Vec<usize> = (0..n).collect();
    permute(&mut perm, 0, &mut f);
}

fn permute(perm: &mut Vec<usize>, i: usize, f: &mut impl FnMut(&[usize])) {
    if i == perm.len() {
        f(perm);
        return;
    }
    for j in i..perm.len() {
        perm.swap(i, j);
        permute(perm, i + 1, f);
        perm.swap(i, j);
    }
}

/// Canonical form of a small graph: the minimum edge-set bitmask over all
/// vertex permutations.
pub fn canonical_key(g: &Graph) -> u32 {
    let n = g.n();
    let slots = edge_slots(n);
    let slot_index: HashMap<(usize, usize), usize> = slots
        .iter()
        .enumerate()
        .map(|(k, &e)| (e, k))
        .collect();
    let edges = g.edges();
    let mut best = u32::MAX;
    for_each_permutation(n, |perm| {
        let mut mask = 0u32;
        for &(u, v) in &edges {
            let (a, b) = (perm[u].min(perm[v]), perm[u].max(perm[v]));
            mask |= 1 << slot_index[&(a, b)];
        }
        best = best.min(mask);
    });
    best
}

/// Number of isomorphism classes among all graphs on `n` vertices with
/// maximum degree `max_degree`.
pub fn count_unlabelled(n: usize, max_degree: usize) -> Result<usize, OracleError> {
    let table = enumerate_graphs(n, max_degree)?;
    let mut seen: HashSet<u32> = HashSet::new();
    for g in table.iter() {
        seen.insert(canonical_key(&g));
    }
    Ok(seen.len())
}
