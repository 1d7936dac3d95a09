//! Dataset ingestion and synthetic generation.
//!
//! Everything random is a pure function of an explicit 64-bit seed through a
//! single generator family (ChaCha8); no global randomness anywhere.

use std::path::Path;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::dataset::LabeledDataset;
use crate::error::{Error, Result};
use crate::tree::{DecisionTree, SplitCriterion};

/// Loads a CSV dataset: header row, every column but the last a real-valued
/// feature, the last column the class label. Label strings map to indices in
/// first-appearance order; row order is preserved.
pub fn load_csv(path: impl AsRef<Path>) -> Result<LabeledDataset> {
    let path = path.as_ref();
    let display = path.display().to_string();
    let format_err = |line: u64, message: String| Error::CsvFormat {
        path: display.clone(),
        line,
        message,
    };

    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(false)
        .from_path(path)
        .map_err(|e| Error::io(format!("opening {display}"), std::io::Error::other(e)))?;

    let headers = reader
        .headers()
        .map_err(|e| format_err(1, e.to_string()))?
        .clone();
    if headers.len() < 2 {
        return Err(format_err(
            1,
            "need at least one feature column and a label column".into(),
        ));
    }
    let n_features = headers.len() - 1;
    let feature_names: Vec<String> = headers.iter().take(n_features).map(String::from).collect();

    let mut features = Vec::new();
    let mut labels = Vec::new();
    let mut class_names: Vec<String> = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e
                .position()
                .map_or(0, |p| p.line());
            format_err(line, e.to_string())
        })?;
        let line = record.position().map_or(0, |p| p.line());
        for field in record.iter().take(n_features) {
            let value: f64 = field
                .trim()
                .parse()
                .map_err(|_| format_err(line, format!("non-numeric feature value `{field}`")))?;
            if !value.is_finite() {
                return Err(format_err(line, format!("non-finite feature value `{field}`")));
            }
            features.push(value);
        }
        let label_str = record.get(n_features).expect("record length checked");
        let label = match class_names.iter().position(|c| c == label_str) {
            Some(i) => i,
            None => {
                class_names.push(label_str.to_string());
                class_names.len() - 1
            }
        };
        labels.push(label);
    }
    if labels.is_empty() {
        return Err(format_err(1, "no data rows".into()));
    }
    let class_count = class_names.len();
    LabeledDataset::with_names(
        features,
        n_features,
        labels,
        class_count,
        feature_names,
        class_names,
    )
}

/// Writes a dataset in the format [`load_csv`] reads.
pub fn write_csv(data: &LabeledDataset, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let mut out = String::new();
    for name in data.feature_names() {
        out.push_str(name);
        out.push(',');
    }
    out.push_str("label\n");
    for row in 0..data.n_rows() {
        for j in 0..data.n_features() {
            out.push_str(&format!("{},", data.feature(row, j)));
        }
        out.push_str(&data.class_names()[data.label(row)]);
        out.push('\n');
    }
    std::fs::write(path, out).map_err(|e| Error::io(format!("writing {}", path.display()), e))
}

/// Isotropic Gaussian blobs: class centers drawn uniformly from
/// `[-10, 10]^m`, then ceil(n/k) or floor(n/k) samples per class around its
/// center with the given standard deviation.
pub fn gen_blobs(
    n_samples: usize,
    n_features: usize,
    n_classes: usize,
    stddev: f64,
    seed: u64,
) -> Result<LabeledDataset> {
    if n_samples == 0 || n_features == 0 || n_classes == 0 {
        return Err(Error::InvalidSpec(
            "blob generation needs positive samples, features and classes".into(),
        ));
    }
    if !stddev.is_finite() || stddev < 0.0 {
        return Err(Error::InvalidSpec("stddev must be finite and nonnegative".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let centers: Vec<Vec<f64>> = (0..n_classes)
        .map(|_| (0..n_features).map(|_| rng.random_range(-10.0..10.0)).collect())
        .collect();
    let base = n_samples / n_classes;
    let extra = n_samples % n_classes;
    let mut features = Vec::with_capacity(n_samples * n_features);
    let mut labels = Vec::with_capacity(n_samples);
    for (class, center) in centers.iter().enumerate() {
        let count = base + usize::from(class < extra);
        for _ in 0..count {
            for &c in center {
                let z: f64 = rng.sample(StandardNormal);
                features.push(c + stddev * z);
            }
            labels.push(class);
        }
    }
    LabeledDataset::new(features, n_features, labels, n_classes)
}

/// Generator description for a random tree and a sample labeled by it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RandomTreeSpec {
    /// Node count of the generated tree; odd, as for every full binary tree.
    pub target_size: usize,
    pub n_features: usize,
    pub n_classes: usize,
    pub n_samples: usize,
    pub seed: u64,
}

impl RandomTreeSpec {
    fn validate(&self) -> Result<()> {
        if self.target_size % 2 == 0 {
            return Err(Error::InvalidSpec("target_size must be odd".into()));
        }
        if self.n_features == 0 || self.n_classes == 0 {
            return Err(Error::InvalidSpec("need positive features and classes".into()));
        }
        if self.target_size > 1 && self.n_classes < 2 {
            return Err(Error::InvalidSpec(
                "sibling leaves must differ: need at least 2 classes for trees with splits".into(),
            ));
        }
        Ok(())
    }
}

enum GrownNode {
    Leaf { lo: Vec<f64>, hi: Vec<f64> },
    Branch { criterion: SplitCriterion, left: usize, right: usize },
}

/// Grows a random full binary tree over `[0, 1]^m` and draws a uniform
/// sample labeled by it.
///
/// Each growth step replaces a uniformly chosen leaf by a branch whose
/// feature is uniform and whose threshold is uniform over the leaf's live
/// interval, so no region is vacuous. Sibling leaves get distinct labels.
pub fn gen_random_tree(spec: &RandomTreeSpec) -> Result<(DecisionTree, LabeledDataset)> {
    spec.validate()?;
    let m = spec.n_features;
    let k = spec.n_classes;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);

    let mut arena = vec![GrownNode::Leaf {
        lo: vec![0.0; m],
        hi: vec![1.0; m],
    }];
    let mut leaves = vec![0usize];
    for _ in 0..(spec.target_size - 1) / 2 {
        let pick = rng.random_range(0..leaves.len());
        let target = leaves[pick];
        let feature = rng.random_range(0..m);
        let (lo, hi) = match &arena[target] {
            GrownNode::Leaf { lo, hi } => (lo.clone(), hi.clone()),
            GrownNode::Branch { .. } => unreachable!("leaf list only holds leaves"),
        };
        let threshold = lo[feature] + rng.random::<f64>() * (hi[feature] - lo[feature]);
        let mut left_hi = hi.clone();
        left_hi[feature] = threshold;
        let mut right_lo = lo.clone();
        right_lo[feature] = threshold;
        let left = arena.len();
        arena.push(GrownNode::Leaf { lo: lo.clone(), hi: left_hi });
        let right = arena.len();
        arena.push(GrownNode::Leaf { lo: right_lo, hi });
        arena[target] = GrownNode::Branch {
            criterion: SplitCriterion::new(feature, threshold),
            left,
            right,
        };
        leaves[pick] = left;
        leaves.push(right);
    }

    fn labeled(arena: &[GrownNode], idx: usize, k: usize, rng: &mut ChaCha8Rng) -> DecisionTree {
        match &arena[idx] {
            GrownNode::Leaf { .. } => DecisionTree::Leaf(rng.random_range(0..k)),
            GrownNode::Branch { criterion, left, right } => {
                let both_leaves = matches!(arena[*left], GrownNode::Leaf { .. })
                    && matches!(arena[*right], GrownNode::Leaf { .. });
                if both_leaves {
                    let l0 = rng.random_range(0..k);
                    let l1 = (l0 + 1 + rng.random_range(0..k - 1)) % k;
                    DecisionTree::branch(*criterion, DecisionTree::Leaf(l0), DecisionTree::Leaf(l1))
                } else {
                    let l = labeled(arena, *left, k, rng);
                    let r = labeled(arena, *right, k, rng);
                    DecisionTree::branch(*criterion, l, r)
                }
            }
        }
    }
    let tree = labeled(&arena, 0, k, &mut rng);

    let mut features = Vec::with_capacity(spec.n_samples * m);
    let mut labels = Vec::with_capacity(spec.n_samples);
    for _ in 0..spec.n_samples {
        let x: Vec<f64> = (0..m).map(|_| rng.random::<f64>()).collect();
        labels.push(tree.predict(&x).expect("generated tree fits its features"));
        features.extend(x);
    }
    let data = LabeledDataset::new(features, m, labels, k)?;
    Ok((tree, data))
}

/// Resamples the labels of `floor(fraction * n)` rows, chosen without
/// replacement, uniformly over all classes (a resampled label may coincide
/// with the original). Features are untouched.
pub fn inject_label_noise(
    data: &LabeledDataset,
    fraction: f64,
    seed: u64,
) -> Result<LabeledDataset> {
    if !(0.0..=1.0).contains(&fraction) {
        return Err(Error::InvalidSpec("noise fraction must lie in [0, 1]".into()));
    }
    let n = data.n_rows();
    let count = (fraction * n as f64).floor() as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut labels = data.labels().to_vec();
    let chosen = rand::seq::index::sample(&mut rng, n, count.min(n));
    for row in chosen {
        labels[row] = rng.random_range(0..data.class_count());
    }
    data.with_labels(labels)
}

/// Train/test sampling description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SplitSpec {
    /// Fraction of rows drawn into the test set, in (0, 1).
    pub test_fraction: f64,
    /// Rows drawn into the train set from the remainder; the whole
    /// remainder when unset.
    pub train_size: Option<usize>,
    pub seed: u64,
}

/// Draws a disjoint test set (`floor(test_fraction * n)` rows) and train set
/// without replacement. Returned row id lists are sorted.
pub fn split_train_test(
    data: &LabeledDataset,
    spec: &SplitSpec,
) -> Result<(Vec<usize>, Vec<usize>)> {
    if !spec.test_fraction.is_finite() || spec.test_fraction <= 0.0 || spec.test_fraction >= 1.0 {
        return Err(Error::InvalidSpec("test_fraction must lie in (0, 1)".into()));
    }
    let n = data.n_rows();
    let test_count = (spec.test_fraction * n as f64).floor() as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut test: Vec<usize> = rand::seq::index::sample(&mut rng, n, test_count).into_vec();
    test.sort_unstable();
    let remainder: Vec<usize> = (0..n).filter(|r| test.binary_search(r).is_err()).collect();
    let train = match spec.train_size {
        None => remainder,
        Some(size) => {
            if size > remainder.len() {
                return Err(Error::InvalidSpec(format!(
                    "train_size {size} exceeds the {} rows left after the test split",
                    remainder.len()
                )));
            }
            let mut picked: Vec<usize> = rand::seq::index::sample(&mut rng, remainder.len(), size)
                .into_iter()
                .map(|i| remainder[i])
                .collect();
            picked.sort_unstable();
            picked
        }
    };
    Ok((train, test))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    #[test]
    fn load_csv_two_rows() {
        let mut file = tempfile::NamedTempFile::new().unwrap();
        writeln!(file, "a,b,y\n1,2,x\n3,4,z").unwrap();
        let d = load_csv(file.path()).unwrap();
        assert_eq!(d.n_rows(), 2);
        assert_eq!(d.n_features(), 2);
        assert_eq!(d.class_count(), 2);
        assert_eq!(d.labels(), &[0, 1]);
        assert_eq!(d.class_names(), &["x".to_string(), "z".to_string()]);
    }

    #[test]
    fn load_csv_reports_line_numbers() {
        let mut file = tempfile::NamedTempFile::new().unwrap();
        writeln!(file, "a,y\n1,x\noops,z").unwrap();
        match load_csv(file.path()).unwrap_err() {
            Error::CsvFormat { line, .. } => assert_eq!(line, 3),
            other => panic!("unexpected error {other:?}"),
        }

        let mut ragged = tempfile::NamedTempFile::new().unwrap();
        writeln!(ragged, "a,b,y\n1,2,x\n3,4").unwrap();
        assert!(matches!(
            load_csv(ragged.path()).unwrap_err(),
            Error::CsvFormat { .. }
        ));

        let empty = tempfile::NamedTempFile::new().unwrap();
        assert!(matches!(
            load_csv(empty.path()).unwrap_err(),
            Error::CsvFormat { .. }
        ));
    }

    #[test]
    fn csv_round_trip() {
        let d = gen_blobs(30, 3, 3, 1.0, 7).unwrap();
        let file = tempfile::NamedTempFile::new().unwrap();
        write_csv(&d, file.path()).unwrap();
        let back = load_csv(file.path()).unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn blobs_shape_and_determinism() {
        let d = gen_blobs(2000, 3, 3, 1.0, 42).unwrap();
        assert_eq!(d.n_rows(), 2000);
        assert_eq!(d.n_features(), 3);
        assert_eq!(d.class_count(), 3);
        let again = gen_blobs(2000, 3, 3, 1.0, 42).unwrap();
        assert_eq!(d, again);
    }

    #[test]
    fn blobs_zero_stddev_collapses_to_centers() {
        let d = gen_blobs(10, 2, 2, 0.0, 3).unwrap();
        for class in 0..2 {
            let rows: Vec<usize> = (0..10).filter(|&r| d.label(r) == class).collect();
            for w in rows.windows(2) {
                assert_eq!(d.row(w[0]), d.row(w[1]));
            }
        }
    }

    #[test]
    fn random_tree_single_leaf() {
        let spec = RandomTreeSpec {
            target_size: 1,
            n_features: 2,
            n_classes: 3,
            n_samples: 20,
            seed: 5,
        };
        let (tree, data) = gen_random_tree(&spec).unwrap();
        assert_eq!(tree.size(), 1);
        let first = data.label(0);
        assert!(data.labels().iter().all(|&l| l == first));
    }

    #[test]
    fn random_tree_labels_match_predictions() {
        let spec = RandomTreeSpec {
            target_size: 9,
            n_features: 6,
            n_classes: 4,
            n_samples: 100,
            seed: 11,
        };
        let (tree, data) = gen_random_tree(&spec).unwrap();
        assert_eq!(tree.size(), 9);
        for row in 0..data.n_rows() {
            assert_eq!(tree.predict(data.row(row)).unwrap(), data.label(row));
        }
        let (tree2, data2) = gen_random_tree(&spec).unwrap();
        assert_eq!(tree, tree2);
        assert_eq!(data, data2);
    }

    #[test]
    fn random_tree_rejects_even_size() {
        let spec = RandomTreeSpec {
            target_size: 4,
            n_features: 2,
            n_classes: 2,
            n_samples: 1,
            seed: 0,
        };
        assert!(gen_random_tree(&spec).is_err());
    }

    #[test]
    fn noise_fraction_zero_is_identity() {
        let d = gen_blobs(50, 2, 2, 1.0, 1).unwrap();
        assert_eq!(inject_label_noise(&d, 0.0, 9).unwrap(), d);
    }

    #[test]
    fn noise_single_class_is_identity() {
        let d = LabeledDataset::from_rows(vec![vec![0.0], vec![1.0]], vec![0, 0], 1).unwrap();
        assert_eq!(inject_label_noise(&d, 1.0, 9).unwrap(), d);
    }

    #[test]
    fn noise_changes_at_most_the_sampled_rows() {
        let d = gen_blobs(150, 2, 3, 1.0, 1).unwrap();
        let noisy = inject_label_noise(&d, 0.5, 9).unwrap();
        let changed = d
            .labels()
            .iter()
            .zip(noisy.labels())
            .filter(|(a, b)| a != b)
            .count();
        assert!(changed <= 75);
        assert!(changed > 0);
        assert_eq!(inject_label_noise(&d, 0.5, 9).unwrap(), noisy);
    }

    #[test]
    fn split_sizes_and_disjointness() {
        let d = gen_blobs(150, 2, 3, 1.0, 1).unwrap();
        let spec = SplitSpec {
            test_fraction: 0.1,
            train_size: Some(100),
            seed: 4,
        };
        let (train, test) = split_train_test(&d, &spec).unwrap();
        assert_eq!(test.len(), 15);
        assert_eq!(train.len(), 100);
        assert!(train.iter().all(|r| test.binary_search(r).is_err()));
        let (train2, test2) = split_train_test(&d, &spec).unwrap();
        assert_eq!(train, train2);
        assert_eq!(test, test2);
    }

    #[test]
    fn split_tiny_fraction_keeps_all_rows_for_training() {
        let d = gen_blobs(10, 2, 2, 1.0, 1).unwrap();
        let spec = SplitSpec {
            test_fraction: 1e-9,
            train_size: None,
            seed: 4,
        };
        let (train, test) = split_train_test(&d, &spec).unwrap();
        assert!(test.is_empty());
        assert_eq!(train.len(), 10);
    }

    #[test]
    fn split_rejects_oversized_train() {
        let d = gen_blobs(10, 2, 2, 1.0, 1).unwrap();
        let spec = SplitSpec {
            test_fraction: 0.5,
            train_size: Some(6),
            seed: 4,
        };
        assert!(split_train_test(&d, &spec).is_err());
    }
}
