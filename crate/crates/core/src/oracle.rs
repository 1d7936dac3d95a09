//! Exact minimal consistent trees.
//!
//! `mts(S)` is the smallest node count of a tree classifying every instance
//! of `S` correctly: 1 for a pure set, otherwise the best
//! `1 + mts(left) + mts(right)` over all valid criteria. The recursion is
//! memoized on instance subsets (distinct feature regions inducing the same
//! subset share their subproblem) and guarded by an instance budget, 24 rows
//! by default. Candidate criteria are the learner's [`candidate_splits`], so
//! the measure `mts` plugged into local ID3 scores exactly this recursion.

use std::cell::RefCell;
use std::collections::HashMap;

use crate::dataset::LabeledDataset;
use crate::error::{Error, Result};
use crate::learner::{candidate_splits, DEFAULT_MTS_BUDGET};
use crate::tree::{DecisionTree, SplitCriterion};

/// Memoized minimal-tree-size solver over subsets of a fixed base row set.
///
/// Subsets are keyed by bitmasks over the base rows, which makes equal sets
/// collide as required for memoization soundness. Entries are write-once;
/// recomputation would yield identical values.
pub struct MtsOracle<'a> {
    data: &'a LabeledDataset,
    rows: Vec<usize>,
    memo: RefCell<HashMap<u64, usize>>,
}

impl<'a> MtsOracle<'a> {
    pub fn new(data: &'a LabeledDataset, rows: &[usize], budget: usize) -> Result<Self> {
        if budget > 64 {
            return Err(Error::InvalidSpec(
                "mts budget above 64 rows is not supported".into(),
            ));
        }
        if rows.len() > budget {
            return Err(Error::BudgetExceeded {
                actual: rows.len(),
                budget,
            });
        }
        let mut rows = rows.to_vec();
        rows.sort_unstable();
        rows.dedup();
        Ok(Self {
            data,
            rows,
            memo: RefCell::new(HashMap::new()),
        })
    }

    fn mask_of(&self, subset: &[usize]) -> Result<u64> {
        let mut mask = 0u64;
        for &row in subset {
            let pos = self
                .rows
                .binary_search(&row)
                .map_err(|_| Error::InvalidSpec(format!("row {row} outside the oracle base set")))?;
            mask |= 1 << pos;
        }
        Ok(mask)
    }

    fn subset_rows(&self, mask: u64) -> Vec<usize> {
        self.rows
            .iter()
            .enumerate()
            .filter(|&(pos, _)| mask & (1 << pos) != 0)
            .map(|(_, &row)| row)
            .collect()
    }

    fn is_pure(&self, rows: &[usize]) -> bool {
        rows.windows(2)
            .all(|w| self.data.label(w[0]) == self.data.label(w[1]))
    }

    /// Minimal consistent tree size for a subset of the base rows.
    pub fn mts_of(&self, subset: &[usize]) -> Result<usize> {
        if subset.is_empty() {
            return Err(Error::EmptyUniverse);
        }
        self.mts_mask(self.mask_of(subset)?)
    }

    fn mts_mask(&self, mask: u64) -> Result<usize> {
        if let Some(&v) = self.memo.borrow().get(&mask) {
            return Ok(v);
        }
        let rows = self.subset_rows(mask);
        let value = if self.is_pure(&rows) {
            1
        } else {
            let mut best: Option<usize> = None;
            for criterion in candidate_splits(self.data, &rows) {
                let (lm, rm) = self.split_mask(mask, &rows, &criterion);
                let size = 1 + self.mts_mask(lm)? + self.mts_mask(rm)?;
                best = Some(best.map_or(size, |b| b.min(size)));
            }
            // Impure but unsplittable: contradictory duplicates.
            best.ok_or(Error::NoConsistentTree)?
        };
        self.memo.borrow_mut().insert(mask, value);
        Ok(value)
    }

    fn split_mask(&self, mask: u64, rows: &[usize], criterion: &SplitCriterion) -> (u64, u64) {
        let mut left = 0u64;
        for &row in rows {
            if criterion.goes_left(self.data.row(row)) {
                let pos = self.rows.binary_search(&row).expect("row is in base set");
                left |= 1 << pos;
            }
        }
        (left, mask & !left)
    }

    /// A consistent tree of exactly minimal size, rebuilt from the memo
    /// table. Deterministic: the first best criterion in candidate order
    /// wins, matching the learner's tie-break.
    pub fn minimal_tree_of(&self, subset: &[usize]) -> Result<DecisionTree> {
        if subset.is_empty() {
            return Err(Error::EmptyUniverse);
        }
        let mask = self.mask_of(subset)?;
        self.build_mask(mask)
    }

    fn build_mask(&self, mask: u64) -> Result<DecisionTree> {
        let rows = self.subset_rows(mask);
        if self.is_pure(&rows) {
            return Ok(DecisionTree::Leaf(self.data.label(rows[0])));
        }
        let target = self.mts_mask(mask)?;
        for criterion in candidate_splits(self.data, &rows) {
            let (lm, rm) = self.split_mask(mask, &rows, &criterion);
            if 1 + self.mts_mask(lm)? + self.mts_mask(rm)? == target {
                return Ok(DecisionTree::branch(
                    criterion,
                    self.build_mask(lm)?,
                    self.build_mask(rm)?,
                ));
            }
        }
        unreachable!("some criterion attains the memoized minimum")
    }
}

/// Minimal consistent tree size for `rows`, under the default budget.
pub fn mts(data: &LabeledDataset, rows: &[usize]) -> Result<usize> {
    mts_with_budget(data, rows, DEFAULT_MTS_BUDGET)
}

pub fn mts_with_budget(data: &LabeledDataset, rows: &[usize], budget: usize) -> Result<usize> {
    MtsOracle::new(data, rows, budget)?.mts_of(rows)
}

/// A minimal consistent tree for `rows`, under the default budget.
pub fn minimal_tree(data: &LabeledDataset, rows: &[usize]) -> Result<DecisionTree> {
    minimal_tree_with_budget(data, rows, DEFAULT_MTS_BUDGET)
}

pub fn minimal_tree_with_budget(
    data: &LabeledDataset,
    rows: &[usize],
    budget: usize,
) -> Result<DecisionTree> {
    MtsOracle::new(data, rows, budget)?.minimal_tree_of(rows)
}

/// The remaining minimal size after splitting `leaf_rows` at `criterion`:
/// `mts(left) + mts(right)`, each side keeping its labels.
pub fn delta_mts(
    data: &LabeledDataset,
    leaf_rows: &[usize],
    criterion: &SplitCriterion,
) -> Result<usize> {
    let oracle = MtsOracle::new(data, leaf_rows, DEFAULT_MTS_BUDGET)?;
    let (left, right): (Vec<usize>, Vec<usize>) = leaf_rows
        .iter()
        .partition(|&&r| criterion.goes_left(data.row(r)));
    if left.is_empty() || right.is_empty() {
        return Err(Error::InvalidSpec(
            "criterion is not valid on these rows: one side is empty".into(),
        ));
    }
    Ok(oracle.mts_of(&left)? + oracle.mts_of(&right)?)
}
