//! Decision-tree induction driven by distances between clusterings.
//!
//! The labels of a training set form a clustering, and so does the
//! prediction of a decision tree. This crate builds trees by greedily
//! minimizing a clustering distance, either on the instances of one leaf
//! (classical ID3), on the whole training set at once (global evaluation),
//! or a combination of the two (glocal). It ships the measure catalog,
//! exact minimal-tree search, pruning rules, and dataset tooling; the
//! companion `treedist-bench` crate adds the experiment harness and CLI.

pub mod clustering;
pub mod data;
pub mod dataset;
pub mod error;
pub mod learner;
pub mod measures;
pub mod oracle;
pub mod tree;

pub use clustering::{Clustering, ContingencyTable};
pub use dataset::LabeledDataset;
pub use error::{Error, Result};
pub use learner::{LabelRule, LearnerConfig, Mode, SelectionMeasure, TrainTrace};
pub use measures::MeasureId;
pub use tree::{DecisionTree, SplitCriterion};
