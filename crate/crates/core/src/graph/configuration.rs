//! Configurations: a partition of an even point set into per-vertex cells
//! together with a perfect matching on the points. Projecting matched pairs
//! to their cells yields the multigraph image.

use super::{GraphError, Multigraph};

/// Points are `0..2m`, laid out so cell `i` owns the half-open range
/// `offsets[i]..offsets[i+1]`. The matching is a fixed-point-free involution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Configuration {
    cell_sizes: Vec<usize>,
    offsets: Vec<usize>,
    matching: Vec<usize>,
}

impl Configuration {
    pub fn new(cell_sizes: Vec<usize>, matching: Vec<usize>) -> Result<Self, GraphError> {
        let total: usize = cell_sizes.iter().sum();
        if !total.is_multiple_of(2) {
            return Err(GraphError::InvalidConfiguration(format!(
                "odd total point count {total}"
            )));
        }
        if matching.len() != total {
            return Err(GraphError::InvalidConfiguration(format!(
                "matching covers {} points, expected {total}",
                matching.len()
            )));
        }
        for (p, &q) in matching.iter().enumerate() {
            if q >= total || q == p || matching[q] != p {
                return Err(GraphError::InvalidConfiguration(format!(
                    "matching is not a fixed-point-free involution at point {p}"
                )));
            }
        }
        let mut offsets = Vec::with_capacity(cell_sizes.len() + 1);
        let mut acc = 0;
        offsets.push(0);
        for &s in &cell_sizes {
            acc += s;
            offsets.push(acc);
        }
        Ok(Self {
            cell_sizes,
            offsets,
            matching,
        })
    }

    /// Number of cells, i.e. vertices of the image.
    pub fn num_cells(&self) -> usize {
        self.cell_sizes.len()
    }

    pub fn num_points(&self) -> usize {
        self.matching.len()
    }

    pub fn cell_sizes(&self) -> &[usize] {
        &self.cell_sizes
    }

    /// The cell owning a point.
    pub fn cell_of(&self, point: usize) -> usize {
        match self.offsets.binary_search(&point) {
            Ok(i) => {
                // Offsets of empty cells coincide; the owner is the cell
                // whose range actually starts here.
                let mut i = i;
                while self.cell_sizes[i] == 0 {
                    i += 1;
                }
                i
            }
            Err(i) => i - 1,
        }
    }

    pub fn partner(&self, point: usize) -> usize {
        self.matching[point]
    }

    /// Matched pairs `(p, q)` with `p < q`.
    pub fn matched_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.matching
            .iter()
            .enumerate()
            .filter(|&(p, &q)| p < q)
            .map(|(p, &q)| (p, q))
    }

    /// The multigraph image: multiplicity between cells `i` and `j` is the
    /// number of matched pairs meeting both; intra-cell pairs become loops.
    /// The degree of vertex `i` in the image equals the size of cell `i`.
    pub fn image(&self) -> Multigraph {
        Multigraph::from_pairs(
            self.num_cells(),
            self.matched_pairs()
                .map(|(p, q)| (self.cell_of(p), self.cell_of(q))),
        )
        .expect("cells are in range by construction")
    }
}
