//! Indexed partitions of an instance set and the joint-count table between
//! two of them.
//!
//! A clustering keeps exactly `part_count` parts, empty parts included: the
//! extended Jaccard distance and the accuracy depend on part indices, so
//! parts are never compacted. Two clusterings are comparable only when they
//! are built over the same set of row ids.

use std::fmt;

use crate::error::{Error, Result};

/// A partition of a fixed set of row ids into `part_count` indexed parts.
///
/// Immutable after construction. Internally 0-based; `Display` prints
/// 1-based ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Clustering {
    part_count: usize,
    /// Sorted row ids forming the universe.
    universe: Vec<usize>,
    /// Part index per universe position.
    membership: Vec<usize>,
}

impl Clustering {
    /// Interprets a label vector over rows `0..labels.len()` as a clustering:
    /// part `i` collects the rows labeled `i`.
    pub fn from_labels(labels: &[usize], part_count: usize) -> Result<Self> {
        Self::from_membership((0..labels.len()).collect(), labels.to_vec(), part_count)
    }

    /// Builds a clustering over an explicit universe of row ids.
    pub fn from_membership(
        universe: Vec<usize>,
        membership: Vec<usize>,
        part_count: usize,
    ) -> Result<Self> {
        if part_count == 0 {
            return Err(Error::InvalidSpec("a clustering needs at least one part".into()));
        }
        if universe.len() != membership.len() {
            return Err(Error::InvalidSpec(
                "universe and membership lengths differ".into(),
            ));
        }
        if let Some(&m) = membership.iter().find(|&&m| m >= part_count) {
            return Err(Error::InvalidLabel {
                label: m,
                class_count: part_count,
            });
        }
        let mut paired: Vec<(usize, usize)> =
            universe.into_iter().zip(membership).collect();
        paired.sort_unstable();
        if paired.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::InvalidSpec("duplicate row id in universe".into()));
        }
        let (universe, membership) = paired.into_iter().unzip();
        Ok(Self {
            part_count,
            universe,
            membership,
        })
    }

    pub fn part_count(&self) -> usize {
        self.part_count
    }

    pub fn universe(&self) -> &[usize] {
        &self.universe
    }

    pub fn universe_size(&self) -> usize {
        self.universe.len()
    }

    /// Part index of each universe row, in universe (sorted row id) order.
    pub fn membership(&self) -> &[usize] {
        &self.membership
    }

    pub fn part_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0usize; self.part_count];
        for &m in &self.membership {
            sizes[m] += 1;
        }
        sizes
    }

    /// Row ids of part `i`.
    pub fn part(&self, i: usize) -> Vec<usize> {
        self.universe
            .iter()
            .zip(&self.membership)
            .filter(|&(_, &m)| m == i)
            .map(|(&r, _)| r)
            .collect()
    }

    /// A clustering is trivial when a single part holds the whole universe.
    pub fn is_trivial(&self) -> bool {
        self.part_sizes().iter().any(|&s| s == self.universe.len())
    }

    pub fn same_universe(&self, other: &Self) -> bool {
        self.universe == other.universe
    }

    /// The meet: all pairwise intersections `A_i ∩ B_j` as parts, indexed
    /// row-major by `(i, j)`.
    pub fn meet(&self, other: &Self) -> Result<Self> {
        if !self.same_universe(other) {
            return Err(Error::UniverseMismatch);
        }
        let l = other.part_count;
        let membership = self
            .membership
            .iter()
            .zip(&other.membership)
            .map(|(&a, &b)| a * l + b)
            .collect();
        Self::from_membership(self.universe.clone(), membership, self.part_count * l)
    }
}

impl fmt::Display for Clustering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for i in 0..self.part_count {
            if i > 0 {
                write!(f, ",")?;
            }
            let part = self.part(i);
            if part.is_empty() {
                write!(f, "{{}}")?;
            } else {
                write!(f, "{{")?;
                for (pos, r) in part.iter().enumerate() {
                    if pos > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{}", r + 1)?;
                }
                write!(f, "}}")?;
            }
        }
        write!(f, ")")
    }
}

/// Joint counts `n_ij = |A_i ∩ B_j|` between two clusterings, with marginals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContingencyTable {
    counts: Vec<usize>,
    n_rows: usize,
    n_cols: usize,
    row_sums: Vec<usize>,
    col_sums: Vec<usize>,
    total: usize,
}

impl ContingencyTable {
    pub fn from_clusterings(a: &Clustering, b: &Clustering) -> Result<Self> {
        if !a.same_universe(b) {
            return Err(Error::UniverseMismatch);
        }
        let (k, l) = (a.part_count(), b.part_count());
        let mut counts = vec![0usize; k * l];
        for (&i, &j) in a.membership().iter().zip(b.membership()) {
            counts[i * l + j] += 1;
        }
        Ok(Self::from_flat_counts(counts, k, l))
    }

    /// Builds a table from explicit counts; rows play the role of `A` parts,
    /// columns of `B` parts.
    pub fn from_counts(counts: &[Vec<usize>]) -> Result<Self> {
        let n_rows = counts.len();
        if n_rows == 0 {
            return Err(Error::InvalidSpec("contingency table needs rows".into()));
        }
        let n_cols = counts[0].len();
        if n_cols == 0 || counts.iter().any(|r| r.len() != n_cols) {
            return Err(Error::InvalidSpec("ragged contingency table".into()));
        }
        let flat = counts.iter().flatten().copied().collect();
        Ok(Self::from_flat_counts(flat, n_rows, n_cols))
    }

    pub(crate) fn from_flat_counts(counts: Vec<usize>, n_rows: usize, n_cols: usize) -> Self {
        debug_assert_eq!(counts.len(), n_rows * n_cols);
        let mut row_sums = vec![0usize; n_rows];
        let mut col_sums = vec![0usize; n_cols];
        let mut total = 0;
        for i in 0..n_rows {
            for j in 0..n_cols {
                let c = counts[i * n_cols + j];
                row_sums[i] += c;
                col_sums[j] += c;
                total += c;
            }
        }
        Self {
            counts,
            n_rows,
            n_cols,
            row_sums,
            col_sums,
            total,
        }
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn count(&self, i: usize, j: usize) -> usize {
        self.counts[i * self.n_cols + j]
    }

    /// `|A_i|`
    pub fn row_sum(&self, i: usize) -> usize {
        self.row_sums[i]
    }

    /// `|B_j|`
    pub fn col_sum(&self, j: usize) -> usize {
        self.col_sums[j]
    }

    /// `N = |X|`
    pub fn total(&self) -> usize {
        self.total
    }

    pub fn transposed(&self) -> Self {
        let mut counts = vec![0usize; self.counts.len()];
        for i in 0..self.n_rows {
            for j in 0..self.n_cols {
                counts[j * self.n_rows + i] = self.count(i, j);
            }
        }
        Self {
            counts,
            n_rows: self.n_cols,
            n_cols: self.n_rows,
            row_sums: self.col_sums.clone(),
            col_sums: self.row_sums.clone(),
            total: self.total,
        }
    }
}
