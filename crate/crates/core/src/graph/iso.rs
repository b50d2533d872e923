//! Small-instance graph isomorphism by degree-guided backtracking. Needed by
//! the unlabelled oracle counts; capped because nothing here is clever.

use super::{Graph, GraphError};

pub(crate) const DEFAULT_ISO_CAP: usize = 10;

/// True iff an edge-preserving bijection between `g` and `h` exists.
/// Both graphs must be within the small-instance cap (10 vertices).
pub fn isomorphic(g: &Graph, h: &Graph) -> Result<bool, GraphError> {
    for x in [g, h] {
        if x.n() > DEFAULT_ISO_CAP {
            return Err(GraphError::CapExceeded {
                n: x.n(),
                cap: DEFAULT_ISO_CAP,
            });
        }
    }
    if g.n() != h.n() || g.edge_count() != h.edge_count() {
        return Ok(false);
    }
    let mut gd: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
    let mut hd: Vec<usize> = (0..h.n()).map(|v| h.degree(v)).collect();
    gd.sort_unstable();
    hd.sort_unstable();
    if gd != hd {
        return Ok(false);
    }
    let mut image = vec![usize::MAX; g.n()];
    let mut used = vec![false; h.n()];
    Ok(extend(g, h, 0, &mut image, &mut used))
}

fn extend(g: &Graph, h: &Graph, v: usize, image: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
    if v == g.n() {
        return true;
    }
    for w in 0..h.n() {
        if used[w] || g.degree(v) != h.degree(w) {
            continue;
        }
        if (0..v).all(|u| g.has_edge(v, u) == h.has_edge(w, image[u])) {
            image[v] = w;
            used[w] = true;
            if extend(g, h, v + 1, image, used) {
                return true;
            }
            used[w] = false;
            image[v] = usize::MAX;
        }
    }
    false
}
