//! Labeled instance data: a feature matrix together with a class label per row.

use crate::clustering::Clustering;
use crate::error::{Error, Result};

/// An `n x m` feature matrix with one class label in `0..k` per row.
///
/// `class_count` is fixed at construction and may exceed the number of
/// labels actually present, so that classes unrepresented in a sample keep
/// their index.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledDataset {
    features: Vec<f64>,
    n_features: usize,
    labels: Vec<usize>,
    class_count: usize,
    feature_names: Vec<String>,
    class_names: Vec<String>,
}

impl LabeledDataset {
    /// Builds a dataset from a row-major feature matrix.
    pub fn new(
        features: Vec<f64>,
        n_features: usize,
        labels: Vec<usize>,
        class_count: usize,
    ) -> Result<Self> {
        let feature_names = (0..n_features).map(|j| format!("f{j}")).collect();
        let class_names = (0..class_count).map(|i| format!("c{i}")).collect();
        Self::with_names(
            features,
            n_features,
            labels,
            class_count,
            feature_names,
            class_names,
        )
    }

    pub fn with_names(
        features: Vec<f64>,
        n_features: usize,
        labels: Vec<usize>,
        class_count: usize,
        feature_names: Vec<String>,
        class_names: Vec<String>,
    ) -> Result<Self> {
        if class_count == 0 {
            return Err(Error::InvalidSpec("class_count must be at least 1".into()));
        }
        if n_features == 0 && !features.is_empty() {
            return Err(Error::InvalidSpec(
                "n_features is 0 but features are present".into(),
            ));
        }
        let n = labels.len();
        if n_features != 0 && features.len() != n * n_features {
            return Err(Error::InvalidSpec(format!(
                "feature matrix has {} values, expected {} rows x {} features",
                features.len(),
                n,
                n_features
            )));
        }
        if let Some(&label) = labels.iter().find(|&&l| l >= class_count) {
            return Err(Error::InvalidLabel {
                label,
                class_count,
            });
        }
        if let Some(v) = features.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidSpec(format!(
                "feature values must be finite, got {v}"
            )));
        }
        if feature_names.len() != n_features || class_names.len() != class_count {
            return Err(Error::InvalidSpec("name list length mismatch".into()));
        }
        Ok(Self {
            features,
            n_features,
            labels,
            class_count,
            feature_names,
            class_names,
        })
    }

    /// Convenience constructor from per-row feature vectors.
    pub fn from_rows(rows: Vec<Vec<f64>>, labels: Vec<usize>, class_count: usize) -> Result<Self> {
        let n_features = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != n_features) {
            return Err(Error::FeatureArity {
                got: bad.len(),
                expected: n_features,
            });
        }
        let features = rows.into_iter().flatten().collect();
        Self::new(features, n_features, labels, class_count)
    }

    pub fn n_rows(&self) -> usize {
        self.labels.len()
    }

    pub fn n_features(&self) -> usize {
        self.n_features
    }

    pub fn class_count(&self) -> usize {
        self.class_count
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.features[i * self.n_features..(i + 1) * self.n_features]
    }

    pub fn feature(&self, row: usize, j: usize) -> f64 {
        self.features[row * self.n_features + j]
    }

    pub fn label(&self, row: usize) -> usize {
        self.labels[row]
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn feature_names(&self) -> &[String] {
        &self.feature_names
    }

    pub fn class_names(&self) -> &[String] {
        &self.class_names
    }

    /// All row ids, the default training universe.
    pub fn all_rows(&self) -> Vec<usize> {
        (0..self.n_rows()).collect()
    }

    /// The ground-truth clustering `y` restricted to `universe`.
    pub fn label_clustering(&self, universe: &[usize]) -> Result<Clustering> {
        let membership = universe.iter().map(|&r| self.labels[r]).collect();
        Clustering::from_membership(universe.to_vec(), membership, self.class_count)
    }

    /// Returns a copy with the labels replaced (used by noise injection).
    pub fn with_labels(&self, labels: Vec<usize>) -> Result<Self> {
        Self::with_names(
            self.features.clone(),
            self.n_features,
            labels,
            self.class_count,
            self.feature_names.clone(),
            self.class_names.clone(),
        )
    }
}
