//! Greedy top-down tree induction with three evaluation modes.
//!
//! All modes grow the tree from a single majority-labeled root leaf and
//! replace one impure leaf per step by a branch with two labeled leaves.
//! They differ in how a candidate step is scored:
//!
//! * `local`: the distance between the leaf's label clustering and the
//!   2-clustering cut by the criterion, on the leaf's instances only,
//! * `global`: the distance between the whole modified tree's induced
//!   clustering and the ground truth,
//! * `glocal`: a global step while it strictly decreases the global
//!   distance, the local step otherwise.
//!
//! The distance arguments are always ordered ground truth first, candidate
//! second, which pins down the asymmetric measures (Gini conditions on the
//! candidate parts, gain ratio normalizes by the candidate entropy).
//!
//! Ties between candidate steps are broken lexicographically on
//! (score, leaf preorder id, feature, threshold, left label, right label),
//! with scores closer than [`SCORE_EPSILON`] considered equal. Training is
//! fully deterministic.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

use crate::clustering::ContingencyTable;
use crate::dataset::LabeledDataset;
use crate::error::{Error, Result};
use crate::measures::{evaluate_table, MeasureId, SCORE_EPSILON};
use crate::oracle::MtsOracle;
use crate::tree::{DecisionTree, SplitCriterion};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Local,
    Global,
    Glocal,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Local => "local",
            Mode::Global => "global",
            Mode::Glocal => "glocal",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "local" => Ok(Mode::Local),
            "global" => Ok(Mode::Global),
            "glocal" => Ok(Mode::Glocal),
            other => Err(Error::InvalidSpec(format!("unknown mode `{other}`"))),
        }
    }
}

/// How global evaluation assigns the two leaf labels of a candidate branch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LabelRule {
    /// Search all label pairs; part of the argmin.
    Exhaustive,
    /// Fix each side to its most prevalent class.
    Majority,
}

impl fmt::Display for LabelRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LabelRule::Exhaustive => "exhaustive",
            LabelRule::Majority => "majority",
        })
    }
}

impl FromStr for LabelRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "exhaustive" => Ok(LabelRule::Exhaustive),
            "majority" => Ok(LabelRule::Majority),
            other => Err(Error::InvalidSpec(format!("unknown label rule `{other}`"))),
        }
    }
}

/// The split-selection measure: one of the clustering measures or the exact
/// remaining-minimal-size distance (`mts`, local mode only).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SelectionMeasure {
    Table(MeasureId),
    MinimalTreeSize,
}

impl SelectionMeasure {
    pub fn name(self) -> &'static str {
        match self {
            SelectionMeasure::Table(m) => m.name(),
            SelectionMeasure::MinimalTreeSize => "mts",
        }
    }
}

impl fmt::Display for SelectionMeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SelectionMeasure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.eq_ignore_ascii_case("mts") {
            Ok(SelectionMeasure::MinimalTreeSize)
        } else {
            Ok(SelectionMeasure::Table(s.parse()?))
        }
    }
}

impl Serialize for SelectionMeasure {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for SelectionMeasure {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Default instance budget for the exact minimal-tree recursion.
pub const DEFAULT_MTS_BUDGET: usize = 24;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LearnerConfig {
    pub measure: SelectionMeasure,
    pub mode: Mode,
    /// Label assignment under global evaluation; ignored by local mode.
    pub global_label_rule: LabelRule,
    /// Reject any step that would grow the tree past this many nodes.
    pub max_nodes: Option<usize>,
    /// A leaf is splittable only when it holds at least this many instances.
    pub min_branch_instances: Option<usize>,
    /// Stop once the best candidate no longer strictly decreases the
    /// distance (the current leaf-restricted score under local mode, the
    /// global distance otherwise).
    pub stop_on_no_decay: bool,
    /// Recorded for provenance; training itself is deterministic.
    pub seed: u64,
    pub record_trace: bool,
    /// Instance budget guarding the `mts` measure's exact recursion.
    pub mts_budget: usize,
}

impl LearnerConfig {
    pub fn new(measure: SelectionMeasure, mode: Mode) -> Self {
        Self {
            measure,
            mode,
            global_label_rule: LabelRule::Majority,
            max_nodes: None,
            min_branch_instances: None,
            stop_on_no_decay: false,
            seed: 0,
            record_trace: true,
            mts_budget: DEFAULT_MTS_BUDGET,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.measure == SelectionMeasure::MinimalTreeSize && self.mode != Mode::Local {
            return Err(Error::InvalidSpec(
                "measure `mts` is only valid with mode `local`".into(),
            ));
        }
        if self.max_nodes == Some(0) {
            return Err(Error::InvalidSpec("max-nodes must be positive".into()));
        }
        if self.min_branch_instances == Some(0) {
            return Err(Error::InvalidSpec("min-branch must be positive".into()));
        }
        Ok(())
    }
}

/// Which selection policy produced a training step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StepPolicy {
    Local,
    Global,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceStep {
    pub step: usize,
    pub leaf_id: usize,
    pub criterion: SplitCriterion,
    pub label_left: usize,
    pub label_right: usize,
    pub policy: StepPolicy,
    /// Under global and glocal modes: the global distance around the step.
    /// Under local mode: the chosen leaf's score before the split and the
    /// candidate's score.
    pub distance_before: f64,
    pub distance_after: f64,
    /// Node count after the step.
    pub tree_size: usize,
    /// Training accuracy after the step.
    pub train_accuracy: f64,
}

/// Step-by-step record of one training run; enough to replay every
/// intermediate tree.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainTrace {
    pub measure: SelectionMeasure,
    pub mode: Mode,
    pub seed: u64,
    pub initial_label: usize,
    pub universe_size: usize,
    pub steps: Vec<TraceStep>,
}

/// Reconstructs the tree after every step: element 0 is the initial root
/// leaf, element `i + 1` the tree after step `i`.
pub fn replay(trace: &TrainTrace) -> Result<Vec<DecisionTree>> {
    let mut states = vec![DecisionTree::Leaf(trace.initial_label)];
    for step in &trace.steps {
        let branch = DecisionTree::branch(
            step.criterion,
            DecisionTree::Leaf(step.label_left),
            DecisionTree::Leaf(step.label_right),
        );
        let next = states
            .last()
            .expect("states never empty")
            .exchange(step.leaf_id, branch)?;
        states.push(next);
    }
    Ok(states)
}

// ---------------------------------------------------------------------------
// Candidate enumeration.
// ---------------------------------------------------------------------------

/// Midpoint between two consecutive distinct values, nudged down onto the
/// lower value when rounding would swallow the upper one.
fn midpoint(lo: f64, hi: f64) -> f64 {
    let mid = (lo + hi) / 2.0;
    if mid >= hi {
        lo
    } else {
        mid
    }
}

/// All valid splitting criteria on `rows`: per feature, the midpoints
/// between consecutive distinct sorted values. Every returned criterion
/// routes at least one instance to each side. Deterministic order: feature
/// ascending, threshold ascending.
pub fn candidate_splits(data: &LabeledDataset, rows: &[usize]) -> Vec<SplitCriterion> {
    let mut out = Vec::new();
    for feature in 0..data.n_features() {
        let mut values: Vec<f64> = rows.iter().map(|&r| data.feature(r, feature)).collect();
        values.sort_by(f64::total_cmp);
        values.dedup();
        for pair in values.windows(2) {
            out.push(SplitCriterion::new(feature, midpoint(pair[0], pair[1])));
        }
    }
    out
}

/// Most frequent label among `rows`, smallest class index on ties. `None`
/// for an empty row set (the learners fall back to the parent leaf label).
pub fn majority_label(data: &LabeledDataset, rows: &[usize]) -> Option<usize> {
    if rows.is_empty() {
        return None;
    }
    let mut counts = vec![0usize; data.class_count()];
    for &r in rows {
        counts[data.label(r)] += 1;
    }
    Some(argmax_smallest(&counts))
}

fn argmax_smallest(counts: &[usize]) -> usize {
    let mut best = 0;
    for (i, &c) in counts.iter().enumerate() {
        if c > counts[best] {
            best = i;
        }
    }
    best
}

fn class_counts(data: &LabeledDataset, rows: &[usize]) -> Vec<usize> {
    let mut counts = vec![0usize; data.class_count()];
    for &r in rows {
        counts[data.label(r)] += 1;
    }
    counts
}

/// Visits every valid split of `rows`, in feature-then-threshold order.
/// The callback receives the criterion, the rows sorted by the feature, the
/// number of rows on the left side, and per-class counts of both sides.
fn sweep_splits<F>(data: &LabeledDataset, rows: &[usize], mut visit: F)
where
    F: FnMut(SplitCriterion, &[usize], usize, &[usize], &[usize]),
{
    let totals = class_counts(data, rows);
    let k = data.class_count();
    for feature in 0..data.n_features() {
        let mut order = rows.to_vec();
        order.sort_by(|&a, &b| data.feature(a, feature).total_cmp(&data.feature(b, feature)));
        let mut left = vec![0usize; k];
        let mut right = totals.clone();
        for idx in 0..order.len().saturating_sub(1) {
            let label = data.label(order[idx]);
            left[label] += 1;
            right[label] -= 1;
            let v = data.feature(order[idx], feature);
            let v_next = data.feature(order[idx + 1], feature);
            if v_next > v {
                let criterion = SplitCriterion::new(feature, midpoint(v, v_next));
                visit(criterion, &order, idx + 1, &left, &right);
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Scoring.
// ---------------------------------------------------------------------------

/// Leaf-local score of a candidate criterion from side-by-class counts.
fn local_score_from_counts(
    m: MeasureId,
    k: usize,
    left: &[usize],
    right: &[usize],
) -> f64 {
    if m.permutation_invariant() {
        // Truth classes as rows, the two sides as columns.
        let mut flat = vec![0usize; k * 2];
        for i in 0..k {
            flat[i * 2] = left[i];
            flat[i * 2 + 1] = right[i];
        }
        evaluate_table(m, &ContingencyTable::from_flat_counts(flat, k, 2))
    } else {
        // Index-aligned measures compare the branch's prediction clustering
        // (after majority labeling) against the labels.
        let (i0, i1) = (argmax_smallest(left), argmax_smallest(right));
        let mut flat = vec![0usize; k * k];
        for i in 0..k {
            flat[i * k + i0] += left[i];
            flat[i * k + i1] += right[i];
        }
        evaluate_table(m, &ContingencyTable::from_flat_counts(flat, k, k))
    }
}

/// Score of a leaf before any split: the measure against a trivial
/// single-part clustering (permutation-invariant measures) or against the
/// leaf's own prediction clustering (index-aligned measures).
fn local_current_from_counts(m: MeasureId, k: usize, counts: &[usize], leaf_label: usize) -> f64 {
    if m.permutation_invariant() {
        evaluate_table(
            m,
            &ContingencyTable::from_flat_counts(counts.to_vec(), k, 1),
        )
    } else {
        let mut flat = vec![0usize; k * k];
        for i in 0..k {
            flat[i * k + leaf_label] = counts[i];
        }
        evaluate_table(m, &ContingencyTable::from_flat_counts(flat, k, k))
    }
}

/// Local evaluation of one candidate criterion on a leaf's instances,
/// `Δ(y|X', c|X')` with the conventions above.
pub fn local_split_score(
    m: MeasureId,
    data: &LabeledDataset,
    leaf_rows: &[usize],
    criterion: &SplitCriterion,
) -> Result<f64> {
    let k = data.class_count();
    let mut left = vec![0usize; k];
    let mut right = vec![0usize; k];
    for &r in leaf_rows {
        if criterion.goes_left(data.row(r)) {
            left[data.label(r)] += 1;
        } else {
            right[data.label(r)] += 1;
        }
    }
    let (ln, rn): (usize, usize) = (left.iter().sum(), right.iter().sum());
    if ln == 0 || rn == 0 {
        return Err(Error::InvalidSpec(
            "criterion is not valid on these rows: one side is empty".into(),
        ));
    }
    Ok(local_score_from_counts(m, k, &left, &right))
}

/// Global evaluation of one candidate step: the measure between the ground
/// truth and the induced clustering of `exchange(t, leaf, branch)`.
pub fn global_split_score(
    m: MeasureId,
    data: &LabeledDataset,
    universe: &[usize],
    tree: &DecisionTree,
    leaf_id: usize,
    criterion: &SplitCriterion,
    label_left: usize,
    label_right: usize,
) -> Result<f64> {
    let rows = tree.instances_at_leaf(data, universe, leaf_id)?;
    let (ln, rn) = rows
        .iter()
        .fold((0usize, 0usize), |(l, r), &row| {
            if criterion.goes_left(data.row(row)) {
                (l + 1, r)
            } else {
                (l, r + 1)
            }
        });
    if ln == 0 || rn == 0 {
        return Err(Error::InvalidSpec(
            "criterion is not valid on these rows: one side is empty".into(),
        ));
    }
    let branch = DecisionTree::branch(
        *criterion,
        DecisionTree::Leaf(label_left),
        DecisionTree::Leaf(label_right),
    );
    let modified = tree.exchange(leaf_id, branch)?;
    let induced = modified.induced_clustering(data, universe)?;
    let truth = data.label_clustering(universe)?;
    crate::measures::evaluate(m, &truth, &induced)
}

// ---------------------------------------------------------------------------
// The training loop.
// ---------------------------------------------------------------------------

fn approx_eq(a: f64, b: f64) -> bool {
    (a - b).abs() <= SCORE_EPSILON
}

fn approx_lt(a: f64, b: f64) -> bool {
    a < b && !approx_eq(a, b)
}

#[derive(Debug, Clone)]
struct Candidate {
    score: f64,
    leaf_id: usize,
    criterion: SplitCriterion,
    label_left: usize,
    label_right: usize,
}

impl Candidate {
    /// Candidates are generated in tie-break order (leaf id, feature,
    /// threshold, labels ascending), so a later candidate wins only on a
    /// strictly smaller score.
    fn consider(best: &mut Option<Candidate>, cand: Candidate) {
        match best {
            None => *best = Some(cand),
            Some(b) => {
                if approx_lt(cand.score, b.score) {
                    *best = Some(cand);
                }
            }
        }
    }
}

struct LeafState {
    leaf_id: usize,
    label: usize,
    rows: Vec<usize>,
    counts: Vec<usize>,
    pure: bool,
}

struct Trainer<'a> {
    data: &'a LabeledDataset,
    universe: &'a [usize],
    cfg: &'a LearnerConfig,
    tree: DecisionTree,
    trace: TrainTrace,
}

impl<'a> Trainer<'a> {
    fn new(data: &'a LabeledDataset, universe: &'a [usize], cfg: &'a LearnerConfig) -> Result<Self> {
        cfg.validate()?;
        if universe.is_empty() {
            return Err(Error::EmptyUniverse);
        }
        let initial_label =
            majority_label(data, universe).expect("universe checked nonempty");
        let trace = TrainTrace {
            measure: cfg.measure,
            mode: cfg.mode,
            seed: cfg.seed,
            initial_label,
            universe_size: universe.len(),
            steps: Vec::new(),
        };
        Ok(Self {
            data,
            universe,
            cfg,
            tree: DecisionTree::Leaf(initial_label),
            trace,
        })
    }

    fn leaf_states(&self) -> Result<Vec<LeafState>> {
        Ok(self
            .tree
            .leaf_instances(self.data, self.universe)?
            .into_iter()
            .map(|l| {
                let counts = class_counts(self.data, &l.rows);
                let pure = counts.iter().filter(|&&c| c > 0).count() <= 1;
                LeafState {
                    leaf_id: l.leaf_id,
                    label: l.label,
                    rows: l.rows,
                    counts,
                    pure,
                }
            })
            .collect())
    }

    fn splittable<'s>(&self, leaves: &'s [LeafState]) -> Vec<&'s LeafState> {
        let min = self.cfg.min_branch_instances.unwrap_or(1);
        leaves
            .iter()
            .filter(|l| !l.pure && l.rows.len() >= min)
            .collect()
    }

    /// Flat k x k counts of true class (rows) by predicted class (cols).
    fn prediction_table(&self, leaves: &[LeafState]) -> Vec<usize> {
        let k = self.data.class_count();
        let mut flat = vec![0usize; k * k];
        for leaf in leaves {
            for i in 0..k {
                flat[i * k + leaf.label] += leaf.counts[i];
            }
        }
        flat
    }

    fn search_local(&self, leaves: &[&LeafState]) -> Result<Option<Candidate>> {
        let k = self.data.class_count();
        let mut best: Option<Candidate> = None;
        for leaf in leaves {
            match self.cfg.measure {
                SelectionMeasure::Table(m) => {
                    sweep_splits(self.data, &leaf.rows, |criterion, _order, _nl, left, right| {
                        let cand = Candidate {
                            score: local_score_from_counts(m, k, left, right),
                            leaf_id: leaf.leaf_id,
                            criterion,
                            label_left: argmax_smallest(left),
                            label_right: argmax_smallest(right),
                        };
                        Candidate::consider(&mut best, cand);
                    });
                }
                SelectionMeasure::MinimalTreeSize => {
                    let oracle = MtsOracle::new(self.data, &leaf.rows, self.cfg.mts_budget)?;
                    let mut failure = None;
                    sweep_splits(self.data, &leaf.rows, |criterion, order, nl, left, right| {
                        if failure.is_some() {
                            return;
                        }
                        let score = oracle
                            .mts_of(&order[..nl])
                            .and_then(|l| Ok(l + oracle.mts_of(&order[nl..])?));
                        match score {
                            Ok(s) => {
                                let cand = Candidate {
                                    score: s as f64,
                                    leaf_id: leaf.leaf_id,
                                    criterion,
                                    label_left: argmax_smallest(left),
                                    label_right: argmax_smallest(right),
                                };
                                Candidate::consider(&mut best, cand);
                            }
                            Err(e) => failure = Some(e),
                        }
                    });
                    if let Some(e) = failure {
                        return Err(e);
                    }
                }
            }
        }
        Ok(best)
    }

    fn search_global(&self, leaves: &[&LeafState], base: &[usize]) -> Result<Option<Candidate>> {
        let SelectionMeasure::Table(m) = self.cfg.measure else {
            return Err(Error::InvalidSpec(
                "measure `mts` is only valid with mode `local`".into(),
            ));
        };
        let k = self.data.class_count();
        let mut best: Option<Candidate> = None;
        let mut scratch = vec![0usize; k * k];
        for leaf in leaves {
            // The rest of the tree's predictions, with this leaf removed.
            let mut without = base.to_vec();
            for i in 0..k {
                without[i * k + leaf.label] -= leaf.counts[i];
            }
            sweep_splits(self.data, &leaf.rows, |criterion, _order, _nl, left, right| {
                let mut try_pair = |i0: usize, i1: usize| {
                    scratch.copy_from_slice(&without);
                    for i in 0..k {
                        scratch[i * k + i0] += left[i];
                        scratch[i * k + i1] += right[i];
                    }
                    let table = ContingencyTable::from_flat_counts(scratch.clone(), k, k);
                    let cand = Candidate {
                        score: evaluate_table(m, &table),
                        leaf_id: leaf.leaf_id,
                        criterion,
                        label_left: i0,
                        label_right: i1,
                    };
                    Candidate::consider(&mut best, cand);
                };
                match self.cfg.global_label_rule {
                    LabelRule::Majority => {
                        try_pair(argmax_smallest(left), argmax_smallest(right));
                    }
                    LabelRule::Exhaustive => {
                        for i0 in 0..k {
                            for i1 in 0..k {
                                try_pair(i0, i1);
                            }
                        }
                    }
                }
            });
        }
        Ok(best)
    }

    fn local_current(&self, leaf: &LeafState) -> Result<f64> {
        match self.cfg.measure {
            SelectionMeasure::Table(m) => Ok(local_current_from_counts(
                m,
                self.data.class_count(),
                &leaf.counts,
                leaf.label,
            )),
            SelectionMeasure::MinimalTreeSize => {
                let oracle = MtsOracle::new(self.data, &leaf.rows, self.cfg.mts_budget)?;
                Ok(oracle.mts_of(&leaf.rows)? as f64)
            }
        }
    }

    fn run(mut self) -> Result<(DecisionTree, TrainTrace)> {
        loop {
            let leaves = self.leaf_states()?;
            let splittable = self.splittable(&leaves);
            if splittable.is_empty() {
                break;
            }
            if let Some(max) = self.cfg.max_nodes {
                if self.tree.size() + 2 > max {
                    break;
                }
            }

            let k = self.data.class_count();
            let base = self.prediction_table(&leaves);
            let global_distance = match self.cfg.measure {
                SelectionMeasure::Table(m) if self.cfg.mode != Mode::Local => Some(
                    evaluate_table(m, &ContingencyTable::from_flat_counts(base.clone(), k, k)),
                ),
                _ => None,
            };

            let (candidate, policy) = match self.cfg.mode {
                Mode::Local => (self.search_local(&splittable)?, StepPolicy::Local),
                Mode::Global => (self.search_global(&splittable, &base)?, StepPolicy::Global),
                Mode::Glocal => {
                    let current = global_distance.expect("glocal uses a table measure");
                    match self.search_global(&splittable, &base)? {
                        Some(g) if approx_lt(g.score, current) => (Some(g), StepPolicy::Global),
                        _ => (self.search_local(&splittable)?, StepPolicy::Local),
                    }
                }
            };
            let Some(candidate) = candidate else {
                break;
            };

            let leaf = leaves
                .iter()
                .find(|l| l.leaf_id == candidate.leaf_id)
                .expect("candidate references a live leaf");

            let distance_before = match (self.cfg.mode, policy) {
                (Mode::Local, _) => self.local_current(leaf)?,
                _ => global_distance.expect("global modes use a table measure"),
            };

            if self.cfg.stop_on_no_decay {
                let reference = match self.cfg.mode {
                    Mode::Local => distance_before,
                    _ => global_distance.expect("global modes use a table measure"),
                };
                let decayed = match (self.cfg.mode, policy) {
                    // A glocal local-fallback step is taken precisely
                    // because no global step decays; the guard then stops.
                    (Mode::Glocal, StepPolicy::Local) => false,
                    _ => approx_lt(candidate.score, reference),
                };
                if !decayed {
                    break;
                }
            }

            self.apply(candidate, leaf, policy, distance_before, &base)?;
        }
        Ok((self.tree, self.trace))
    }

    fn apply(
        &mut self,
        candidate: Candidate,
        leaf: &LeafState,
        policy: StepPolicy,
        distance_before: f64,
        base: &[usize],
    ) -> Result<()> {
        let k = self.data.class_count();
        let branch = DecisionTree::branch(
            candidate.criterion,
            DecisionTree::Leaf(candidate.label_left),
            DecisionTree::Leaf(candidate.label_right),
        );
        let next = self.tree.exchange(candidate.leaf_id, branch)?;

        if self.cfg.record_trace {
            let mut left = vec![0usize; k];
            let mut right = vec![0usize; k];
            for &r in &leaf.rows {
                if candidate.criterion.goes_left(self.data.row(r)) {
                    left[self.data.label(r)] += 1;
                } else {
                    right[self.data.label(r)] += 1;
                }
            }

            let distance_after = match (self.cfg.mode, self.cfg.measure) {
                (Mode::Local, _) => candidate.score,
                (_, SelectionMeasure::Table(m)) => {
                    // Global distance after the step; equals the candidate
                    // score for global-policy steps.
                    let mut flat = base.to_vec();
                    for i in 0..k {
                        flat[i * k + leaf.label] -= leaf.counts[i];
                        flat[i * k + candidate.label_left] += left[i];
                        flat[i * k + candidate.label_right] += right[i];
                    }
                    evaluate_table(m, &ContingencyTable::from_flat_counts(flat, k, k))
                }
                (_, SelectionMeasure::MinimalTreeSize) => candidate.score,
            };

            let correct_before: usize = {
                let mut hits = 0usize;
                let leaves = self.tree.leaf_instances(self.data, self.universe)?;
                for l in &leaves {
                    hits += l.rows.iter().filter(|&&r| self.data.label(r) == l.label).count();
                }
                hits
            };
            let correct_after = correct_before - leaf.counts[leaf.label]
                + left[candidate.label_left]
                + right[candidate.label_right];

            self.trace.steps.push(TraceStep {
                step: self.trace.steps.len(),
                leaf_id: candidate.leaf_id,
                criterion: candidate.criterion,
                label_left: candidate.label_left,
                label_right: candidate.label_right,
                policy,
                distance_before,
                distance_after,
                tree_size: next.size(),
                train_accuracy: correct_after as f64 / self.universe.len() as f64,
            });
        }

        self.tree = next;
        Ok(())
    }
}

/// Local evaluation (classical ID3): each step scores candidates on the
/// instances of the leaf alone.
pub fn id3_local(
    data: &LabeledDataset,
    universe: &[usize],
    cfg: &LearnerConfig,
) -> Result<(DecisionTree, TrainTrace)> {
    expect_mode(cfg, Mode::Local)?;
    Trainer::new(data, universe, cfg)?.run()
}

/// Global evaluation: each step scores the whole modified tree's induced
/// clustering against the ground truth.
pub fn id3_global(
    data: &LabeledDataset,
    universe: &[usize],
    cfg: &LearnerConfig,
) -> Result<(DecisionTree, TrainTrace)> {
    expect_mode(cfg, Mode::Global)?;
    Trainer::new(data, universe, cfg)?.run()
}

/// Glocal evaluation: global steps while they strictly decrease the global
/// distance, local steps otherwise.
pub fn id3_glocal(
    data: &LabeledDataset,
    universe: &[usize],
    cfg: &LearnerConfig,
) -> Result<(DecisionTree, TrainTrace)> {
    expect_mode(cfg, Mode::Glocal)?;
    Trainer::new(data, universe, cfg)?.run()
}

/// Dispatches on `cfg.mode`.
pub fn train(
    data: &LabeledDataset,
    universe: &[usize],
    cfg: &LearnerConfig,
) -> Result<(DecisionTree, TrainTrace)> {
    Trainer::new(data, universe, cfg)?.run()
}

fn expect_mode(cfg: &LearnerConfig, mode: Mode) -> Result<()> {
    if cfg.mode != mode {
        return Err(Error::InvalidSpec(format!(
            "config mode is `{}`, expected `{mode}`",
            cfg.mode
        )));
    }
    Ok(())
}
