//! Binary decision trees over threshold criteria.
//!
//! A branch holds a criterion `x_j <= r`; instances satisfying it descend
//! into the left subtree, the rest into the right one. Trees are immutable
//! values: structural edits return a new tree. Node ids are preorder
//! positions (root 0, left subtree, right subtree) and are recomputed after
//! every edit, which gives the learners a deterministic leaf order.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::clustering::Clustering;
use crate::dataset::LabeledDataset;
use crate::error::{Error, Result};

/// A threshold test on one feature: instances with `x[feature] <= threshold`
/// go left.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SplitCriterion {
    pub feature: usize,
    pub threshold: f64,
}

impl SplitCriterion {
    pub fn new(feature: usize, threshold: f64) -> Self {
        Self { feature, threshold }
    }

    /// True when the instance descends into the left subtree.
    pub fn goes_left(&self, x: &[f64]) -> bool {
        x[self.feature] <= self.threshold
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum DecisionTree {
    Leaf(usize),
    Branch {
        split: SplitCriterion,
        left: Box<DecisionTree>,
        right: Box<DecisionTree>,
    },
}

/// One leaf of a tree together with the universe rows routed to it.
#[derive(Debug, Clone)]
pub struct LeafInstances {
    pub leaf_id: usize,
    pub label: usize,
    pub rows: Vec<usize>,
}

impl DecisionTree {
    pub fn branch(split: SplitCriterion, left: DecisionTree, right: DecisionTree) -> Self {
        DecisionTree::Branch {
            split,
            left: Box::new(left),
            right: Box::new(right),
        }
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, DecisionTree::Leaf(_))
    }

    /// Number of nodes, branches and leaves both.
    pub fn size(&self) -> usize {
        match self {
            DecisionTree::Leaf(_) => 1,
            DecisionTree::Branch { left, right, .. } => 1 + left.size() + right.size(),
        }
    }

    /// Largest feature index referenced by any branch, if there is one.
    pub fn max_feature(&self) -> Option<usize> {
        match self {
            DecisionTree::Leaf(_) => None,
            DecisionTree::Branch { split, left, right } => Some(
                split
                    .feature
                    .max(left.max_feature().unwrap_or(0))
                    .max(right.max_feature().unwrap_or(0)),
            ),
        }
    }

    /// The node at preorder position `id`.
    pub fn node(&self, id: usize) -> Result<&DecisionTree> {
        fn go(node: &DecisionTree, id: usize, base: usize) -> Option<&DecisionTree> {
            if id == base {
                return Some(node);
            }
            match node {
                DecisionTree::Leaf(_) => None,
                DecisionTree::Branch { left, right, .. } => {
                    let left_size = left.size();
                    if id <= base + left_size {
                        go(left, id, base + 1)
                    } else {
                        go(right, id, base + 1 + left_size)
                    }
                }
            }
        }
        go(self, id, 0).ok_or(Error::NodeId { id })
    }

    /// All leaves as `(preorder id, label)` in preorder.
    pub fn leaves(&self) -> Vec<(usize, usize)> {
        fn go(node: &DecisionTree, base: usize, out: &mut Vec<(usize, usize)>) {
            match node {
                DecisionTree::Leaf(label) => out.push((base, *label)),
                DecisionTree::Branch { left, right, .. } => {
                    go(left, base + 1, out);
                    go(right, base + 1 + left.size(), out);
                }
            }
        }
        let mut out = Vec::new();
        go(self, 0, &mut out);
        out
    }

    /// Sorts `x` down the tree and returns the label of the leaf reached.
    pub fn predict(&self, x: &[f64]) -> Result<usize> {
        match self {
            DecisionTree::Leaf(label) => Ok(*label),
            DecisionTree::Branch { split, left, right } => {
                if split.feature >= x.len() {
                    return Err(Error::FeatureArity {
                        got: x.len(),
                        expected: split.feature + 1,
                    });
                }
                if split.goes_left(x) {
                    left.predict(x)
                } else {
                    right.predict(x)
                }
            }
        }
    }

    /// Preorder id of the leaf `x` is routed to.
    pub fn route(&self, x: &[f64]) -> Result<usize> {
        fn go(node: &DecisionTree, x: &[f64], base: usize) -> Result<usize> {
            match node {
                DecisionTree::Leaf(_) => Ok(base),
                DecisionTree::Branch { split, left, right } => {
                    if split.feature >= x.len() {
                        return Err(Error::FeatureArity {
                            got: x.len(),
                            expected: split.feature + 1,
                        });
                    }
                    if split.goes_left(x) {
                        go(left, x, base + 1)
                    } else {
                        go(right, x, base + 1 + left.size())
                    }
                }
            }
        }
        go(self, x, 0)
    }

    /// Partitions `universe` over the leaves in one pass; the returned lists
    /// are in leaf preorder and their rows stay sorted.
    pub fn leaf_instances(
        &self,
        data: &LabeledDataset,
        universe: &[usize],
    ) -> Result<Vec<LeafInstances>> {
        fn go(
            node: &DecisionTree,
            data: &LabeledDataset,
            rows: Vec<usize>,
            base: usize,
            out: &mut Vec<LeafInstances>,
        ) -> Result<()> {
            match node {
                DecisionTree::Leaf(label) => {
                    out.push(LeafInstances {
                        leaf_id: base,
                        label: *label,
                        rows,
                    });
                    Ok(())
                }
                DecisionTree::Branch { split, left, right } => {
                    if split.feature >= data.n_features() {
                        return Err(Error::FeatureArity {
                            got: data.n_features(),
                            expected: split.feature + 1,
                        });
                    }
                    let (l, r): (Vec<usize>, Vec<usize>) = rows
                        .into_iter()
                        .partition(|&row| split.goes_left(data.row(row)));
                    go(left, data, l, base + 1, out)?;
                    go(right, data, r, base + 1 + left.size(), out)
                }
            }
        }
        let mut out = Vec::new();
        go(self, data, universe.to_vec(), 0, &mut out)?;
        Ok(out)
    }

    /// Universe rows routed to the leaf at `leaf_id`.
    pub fn instances_at_leaf(
        &self,
        data: &LabeledDataset,
        universe: &[usize],
        leaf_id: usize,
    ) -> Result<Vec<usize>> {
        if !self.node(leaf_id)?.is_leaf() {
            return Err(Error::NodeKind {
                id: leaf_id,
                expected: "leaf",
            });
        }
        Ok(self
            .leaf_instances(data, universe)?
            .into_iter()
            .find(|l| l.leaf_id == leaf_id)
            .map(|l| l.rows)
            .unwrap_or_default())
    }

    /// True when at most one distinct label occurs among the instances
    /// routed to the leaf (vacuously true for empty leaves).
    pub fn is_pure(
        &self,
        data: &LabeledDataset,
        universe: &[usize],
        leaf_id: usize,
    ) -> Result<bool> {
        let rows = self.instances_at_leaf(data, universe, leaf_id)?;
        Ok(rows
            .windows(2)
            .all(|w| data.label(w[0]) == data.label(w[1])))
    }

    /// Replaces the leaf at `leaf_id` by `replacement`, returning the new
    /// tree. Node ids are implicitly reassigned in preorder.
    pub fn exchange(&self, leaf_id: usize, replacement: DecisionTree) -> Result<DecisionTree> {
        fn go(
            node: &DecisionTree,
            id: usize,
            base: usize,
            replacement: &DecisionTree,
        ) -> Result<DecisionTree> {
            if id == base {
                return match node {
                    DecisionTree::Leaf(_) => Ok(replacement.clone()),
                    DecisionTree::Branch { .. } => Err(Error::NodeKind {
                        id,
                        expected: "leaf",
                    }),
                };
            }
            match node {
                DecisionTree::Leaf(_) => Err(Error::NodeId { id }),
                DecisionTree::Branch { split, left, right } => {
                    let left_size = left.size();
                    if id <= base + left_size {
                        Ok(DecisionTree::branch(
                            *split,
                            go(left, id, base + 1, replacement)?,
                            right.as_ref().clone(),
                        ))
                    } else {
                        Ok(DecisionTree::branch(
                            *split,
                            left.as_ref().clone(),
                            go(right, id, base + 1 + left_size, replacement)?,
                        ))
                    }
                }
            }
        }
        go(self, leaf_id, 0, &replacement)
    }

    /// The clustering `T_t` induced on `universe`: part `i` holds the rows
    /// predicted as class `i`.
    pub fn induced_clustering(
        &self,
        data: &LabeledDataset,
        universe: &[usize],
    ) -> Result<Clustering> {
        let membership = universe
            .iter()
            .map(|&row| self.predict(data.row(row)))
            .collect::<Result<Vec<_>>>()?;
        Clustering::from_membership(universe.to_vec(), membership, data.class_count())
    }

    /// Fraction of universe rows whose prediction matches the label.
    pub fn train_accuracy(&self, data: &LabeledDataset, universe: &[usize]) -> Result<f64> {
        if universe.is_empty() {
            return Err(Error::EmptyUniverse);
        }
        let mut hits = 0usize;
        for &row in universe {
            if self.predict(data.row(row))? == data.label(row) {
                hits += 1;
            }
        }
        Ok(hits as f64 / universe.len() as f64)
    }
}

// ---------------------------------------------------------------------------
// Redundant splits: a branch and a same-feature child branch whose adjacent
// leaves carry the same label collapse into a single threshold.
// ---------------------------------------------------------------------------

enum Redundancy {
    /// `Branch(c1, Leaf(i), Branch(c2, Leaf(i), t))` -> threshold max(r1, r2).
    LeafLeft,
    /// `Branch(c1, Branch(c2, t, Leaf(i)), Leaf(i))` -> threshold min(r1, r2).
    LeafRight,
}

fn redundancy_at(node: &DecisionTree) -> Option<Redundancy> {
    let DecisionTree::Branch { split, left, right } = node else {
        return None;
    };
    if let (DecisionTree::Leaf(i), DecisionTree::Branch { split: inner, left: inner_left, .. }) =
        (left.as_ref(), right.as_ref())
    {
        if inner.feature == split.feature {
            if let DecisionTree::Leaf(j) = inner_left.as_ref() {
                if i == j {
                    return Some(Redundancy::LeafLeft);
                }
            }
        }
    }
    if let (DecisionTree::Branch { split: inner, right: inner_right, .. }, DecisionTree::Leaf(i)) =
        (left.as_ref(), right.as_ref())
    {
        if inner.feature == split.feature {
            if let DecisionTree::Leaf(j) = inner_right.as_ref() {
                if i == j {
                    return Some(Redundancy::LeafRight);
                }
            }
        }
    }
    None
}

/// Preorder ids of branches that start a redundant split pattern.
pub fn detect_redundant_splits(tree: &DecisionTree) -> Vec<usize> {
    fn go(node: &DecisionTree, base: usize, out: &mut Vec<usize>) {
        if redundancy_at(node).is_some() {
            out.push(base);
        }
        if let DecisionTree::Branch { left, right, .. } = node {
            go(left, base + 1, out);
            go(right, base + 1 + left.size(), out);
        }
    }
    let mut out = Vec::new();
    go(tree, 0, &mut out);
    out
}

/// Rewrites redundant split patterns until none remain. Predictions are
/// preserved for every possible input; each rewrite removes two nodes.
pub fn merge_redundant_splits(tree: &DecisionTree) -> DecisionTree {
    fn go(node: &DecisionTree) -> DecisionTree {
        let mut current = match node {
            DecisionTree::Leaf(_) => return node.clone(),
            DecisionTree::Branch { split, left, right } => {
                DecisionTree::branch(*split, go(left), go(right))
            }
        };
        loop {
            match redundancy_at(&current) {
                Some(Redundancy::LeafLeft) => {
                    let DecisionTree::Branch { split, left, right } = current else {
                        unreachable!()
                    };
                    let DecisionTree::Branch { split: inner, right: subtree, .. } = *right else {
                        unreachable!()
                    };
                    let merged =
                        SplitCriterion::new(split.feature, split.threshold.max(inner.threshold));
                    current = DecisionTree::Branch {
                        split: merged,
                        left,
                        right: subtree,
                    };
                }
                Some(Redundancy::LeafRight) => {
                    let DecisionTree::Branch { split, left, right } = current else {
                        unreachable!()
                    };
                    let DecisionTree::Branch { split: inner, left: subtree, .. } = *left else {
                        unreachable!()
                    };
                    let merged =
                        SplitCriterion::new(split.feature, split.threshold.min(inner.threshold));
                    current = DecisionTree::Branch {
                        split: merged,
                        left: subtree,
                        right,
                    };
                }
                None => return current,
            }
        }
    }
    go(tree)
}

// ---------------------------------------------------------------------------
// Tree document format: nested objects with a "leaf" key or with
// "split"/"left"/"right" keys.
// ---------------------------------------------------------------------------

fn to_value(tree: &DecisionTree) -> Value {
    match tree {
        DecisionTree::Leaf(label) => json!({ "leaf": label }),
        DecisionTree::Branch { split, left, right } => json!({
            "split": { "feature": split.feature, "threshold": split.threshold },
            "left": to_value(left),
            "right": to_value(right),
        }),
    }
}

fn parse_err(location: &str, message: impl Into<String>) -> Error {
    Error::TreeParse {
        location: location.to_string(),
        message: message.into(),
    }
}

fn from_value(v: &Value, location: &str) -> Result<DecisionTree> {
    let obj = v
        .as_object()
        .ok_or_else(|| parse_err(location, "expected an object"))?;
    if let Some(leaf) = obj.get("leaf") {
        let label = leaf
            .as_u64()
            .ok_or_else(|| parse_err(&format!("{location}/leaf"), "expected a class index"))?;
        return Ok(DecisionTree::Leaf(label as usize));
    }
    let split = obj
        .get("split")
        .ok_or_else(|| parse_err(location, "expected a \"leaf\" or \"split\" key"))?;
    let feature = split
        .get("feature")
        .and_then(Value::as_u64)
        .ok_or_else(|| parse_err(&format!("{location}/split"), "expected a feature index"))?;
    let threshold = split
        .get("threshold")
        .and_then(Value::as_f64)
        .ok_or_else(|| parse_err(&format!("{location}/split"), "expected a threshold"))?;
    if !threshold.is_finite() {
        return Err(parse_err(
            &format!("{location}/split"),
            "threshold must be finite",
        ));
    }
    let left = obj
        .get("left")
        .ok_or_else(|| parse_err(location, "missing \"left\" subtree"))?;
    let right = obj
        .get("right")
        .ok_or_else(|| parse_err(location, "missing \"right\" subtree"))?;
    Ok(DecisionTree::branch(
        SplitCriterion::new(feature as usize, threshold),
        from_value(left, &format!("{location}/left"))?,
        from_value(right, &format!("{location}/right"))?,
    ))
}

/// Renders the tree document (pretty JSON, `.tree.json` convention).
pub fn serialize(tree: &DecisionTree) -> String {
    serde_json::to_string_pretty(&to_value(tree)).expect("tree document is always serializable")
}

/// Parses a tree document; errors carry the offending location.
pub fn deserialize(text: &str) -> Result<DecisionTree> {
    let value: Value = serde_json::from_str(text).map_err(|e| {
        parse_err(
            &format!("line {} column {}", e.line(), e.column()),
            e.to_string(),
        )
    })?;
    from_value(&value, "$")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn stump(feature: usize, threshold: f64, l: usize, r: usize) -> DecisionTree {
        DecisionTree::branch(
            SplitCriterion::new(feature, threshold),
            DecisionTree::Leaf(l),
            DecisionTree::Leaf(r),
        )
    }

    /// Seven collinear points at x = 0.5 .. 6.5, the single blue one (class
    /// 1) sitting at x = 3.5.
    fn seven_points() -> LabeledDataset {
        let labels = vec![0, 0, 0, 1, 0, 0, 0];
        let rows: Vec<Vec<f64>> = (0..7).map(|i| vec![i as f64 + 0.5]).collect();
        LabeledDataset::from_rows(rows, labels, 2).unwrap()
    }

    #[test]
    fn predict_leaf_ignores_input() {
        assert_eq!(DecisionTree::Leaf(2).predict(&[9.0, 9.0]).unwrap(), 2);
    }

    #[test]
    fn predict_routes_le_left() {
        let t = stump(0, 1.0, 0, 1);
        assert_eq!(t.predict(&[0.5]).unwrap(), 0);
        assert_eq!(t.predict(&[1.0]).unwrap(), 0);
        assert_eq!(t.predict(&[1.5]).unwrap(), 1);
    }

    #[test]
    fn predict_checks_arity() {
        let t = stump(1, 1.0, 0, 1);
        assert!(matches!(
            t.predict(&[0.5]),
            Err(Error::FeatureArity { got: 1, expected: 2 })
        ));
    }

    #[test]
    fn induced_clustering_of_leaf_is_trivial() {
        let d = LabeledDataset::from_rows(
            vec![vec![0.0], vec![1.0], vec![2.0], vec![3.0]],
            vec![0, 0, 1, 1],
            2,
        )
        .unwrap();
        let c = DecisionTree::Leaf(0)
            .induced_clustering(&d, &d.all_rows())
            .unwrap();
        assert_eq!(c.part_sizes(), vec![4, 0]);
    }

    #[test]
    fn induced_clustering_of_consistent_tree_matches_labels() {
        let d = LabeledDataset::from_rows(
            vec![vec![0.0], vec![1.0], vec![2.0], vec![3.0]],
            vec![0, 0, 1, 1],
            2,
        )
        .unwrap();
        let t = stump(0, 1.5, 0, 1);
        let induced = t.induced_clustering(&d, &d.all_rows()).unwrap();
        let truth = d.label_clustering(&d.all_rows()).unwrap();
        assert_eq!(induced, truth);
    }

    #[test]
    fn induced_clustering_on_seven_points() {
        let d = seven_points();
        let t = stump(0, 4.0, 0, 1);
        let c = t.induced_clustering(&d, &d.all_rows()).unwrap();
        assert_eq!(c.part(0), vec![0, 1, 2, 3]);
        assert_eq!(c.part(1), vec![4, 5, 6]);
    }

    #[test]
    fn instances_at_leaf_root() {
        let d = seven_points();
        let rows = DecisionTree::Leaf(0)
            .instances_at_leaf(&d, &d.all_rows(), 0)
            .unwrap();
        assert_eq!(rows, d.all_rows());
    }

    #[test]
    fn instances_partition_universe() {
        let d = seven_points();
        let t = stump(0, 3.0, 0, 1);
        let left = t.instances_at_leaf(&d, &d.all_rows(), 1).unwrap();
        let right = t.instances_at_leaf(&d, &d.all_rows(), 2).unwrap();
        assert_eq!(left, vec![0, 1, 2]);
        assert_eq!(right, vec![3, 4, 5, 6]);
    }

    #[test]
    fn instances_at_branch_is_an_error() {
        let d = seven_points();
        let t = stump(0, 3.0, 0, 1);
        assert!(matches!(
            t.instances_at_leaf(&d, &d.all_rows(), 0),
            Err(Error::NodeKind { id: 0, .. })
        ));
    }

    #[test]
    fn exchange_root_leaf() {
        let t = DecisionTree::Leaf(0)
            .exchange(0, stump(0, 1.0, 0, 1))
            .unwrap();
        assert_eq!(t.size(), 3);
        assert!(!t.is_leaf());
    }

    #[test]
    fn exchange_identity_replacement_keeps_predictions() {
        let t = stump(0, 1.0, 0, 1);
        let t2 = t.exchange(1, DecisionTree::Leaf(0)).unwrap();
        for x in [0.0, 0.5, 1.0, 2.0] {
            assert_eq!(t.predict(&[x]).unwrap(), t2.predict(&[x]).unwrap());
        }
    }

    #[test]
    fn exchange_rejects_branch_target() {
        let t = stump(0, 1.0, 0, 1);
        assert!(matches!(
            t.exchange(0, DecisionTree::Leaf(1)),
            Err(Error::NodeKind { .. })
        ));
        assert!(matches!(
            t.exchange(9, DecisionTree::Leaf(1)),
            Err(Error::NodeId { id: 9 })
        ));
    }

    #[test]
    fn size_counts_all_nodes() {
        assert_eq!(DecisionTree::Leaf(0).size(), 1);
        assert_eq!(stump(0, 1.0, 0, 1).size(), 3);
        let full = DecisionTree::branch(
            SplitCriterion::new(0, 2.0),
            stump(0, 1.0, 0, 1),
            stump(0, 3.0, 1, 0),
        );
        assert_eq!(full.size(), 7);
    }

    #[test]
    fn purity_cases() {
        let d = seven_points();
        let t = stump(0, 3.0, 0, 1);
        assert!(t.is_pure(&d, &d.all_rows(), 1).unwrap());
        assert!(!t.is_pure(&d, &d.all_rows(), 2).unwrap());
        // No instances at all: vacuously pure.
        assert!(t.is_pure(&d, &[], 1).unwrap());
    }

    #[test]
    fn detects_printed_redundant_pattern() {
        let t = DecisionTree::branch(
            SplitCriterion::new(0, 1.0),
            DecisionTree::Leaf(0),
            stump(0, 4.0, 0, 1),
        );
        assert_eq!(detect_redundant_splits(&t), vec![0]);
    }

    #[test]
    fn differing_features_are_not_redundant() {
        let t = DecisionTree::branch(
            SplitCriterion::new(0, 1.0),
            DecisionTree::Leaf(0),
            stump(1, 4.0, 0, 1),
        );
        assert!(detect_redundant_splits(&t).is_empty());
    }

    #[test]
    fn differing_labels_are_not_redundant() {
        let t = DecisionTree::branch(
            SplitCriterion::new(0, 1.0),
            DecisionTree::Leaf(1),
            stump(0, 4.0, 0, 1),
        );
        assert!(detect_redundant_splits(&t).is_empty());
    }

    #[test]
    fn merge_uses_max_threshold() {
        let t = DecisionTree::branch(
            SplitCriterion::new(0, 1.0),
            DecisionTree::Leaf(0),
            stump(0, 4.0, 0, 1),
        );
        let merged = merge_redundant_splits(&t);
        assert_eq!(merged, stump(0, 4.0, 0, 1));
        for x in [0.0, 1.0, 2.5, 4.0, 5.0] {
            assert_eq!(t.predict(&[x]).unwrap(), merged.predict(&[x]).unwrap());
        }
    }

    #[test]
    fn merge_mirrored_pattern_uses_min_threshold() {
        let t = DecisionTree::branch(
            SplitCriterion::new(0, 4.0),
            stump(0, 1.0, 1, 0),
            DecisionTree::Leaf(0),
        );
        let merged = merge_redundant_splits(&t);
        assert_eq!(merged, stump(0, 1.0, 1, 0));
        for x in [0.0, 1.0, 2.5, 4.0, 5.0] {
            assert_eq!(t.predict(&[x]).unwrap(), merged.predict(&[x]).unwrap());
        }
    }

    #[test]
    fn merge_is_identity_on_clean_trees() {
        let t = DecisionTree::branch(
            SplitCriterion::new(0, 2.0),
            stump(1, 1.0, 0, 1),
            DecisionTree::Leaf(1),
        );
        assert_eq!(merge_redundant_splits(&t), t);
    }

    #[test]
    fn merge_collapses_nested_redundancy() {
        let inner = DecisionTree::branch(
            SplitCriterion::new(0, 5.0),
            DecisionTree::Leaf(0),
            DecisionTree::Leaf(1),
        );
        let t = DecisionTree::branch(
            SplitCriterion::new(0, 1.0),
            DecisionTree::Leaf(0),
            DecisionTree::branch(SplitCriterion::new(0, 3.0), DecisionTree::Leaf(0), inner),
        );
        let merged = merge_redundant_splits(&t);
        assert_eq!(merged.size(), t.size() - 4);
        for x in [0.0, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0] {
            assert_eq!(t.predict(&[x]).unwrap(), merged.predict(&[x]).unwrap());
        }
    }

    #[test]
    fn document_round_trip() {
        let leaf = DecisionTree::Leaf(0);
        assert_eq!(deserialize(&serialize(&leaf)).unwrap(), leaf);
        let t = stump(0, 2.5, 0, 1);
        assert_eq!(deserialize(&serialize(&t)).unwrap(), t);
    }

    #[test]
    fn document_errors_carry_location() {
        let err = deserialize("{\"left\": {\"leaf\": 0}}").unwrap_err();
        match err {
            Error::TreeParse { location, .. } => assert_eq!(location, "$"),
            other => panic!("unexpected error {other:?}"),
        }
        let err =
            deserialize("{\"split\": {\"feature\": 0, \"threshold\": 1.0}, \"left\": {\"leaf\": 0}, \"right\": {\"oops\": 1}}")
                .unwrap_err();
        match err {
            Error::TreeParse { location, .. } => assert_eq!(location, "$/right"),
            other => panic!("unexpected error {other:?}"),
        }
    }
}
