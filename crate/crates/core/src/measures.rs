//! Comparison measures between two clusterings over a shared universe.
//!
//! All measures are computed from the joint-count table. Logarithms are base
//! 2 (values in bits) and `0·log 0 := 0`. Similarity measures (information
//! gain, gain ratio, accuracy) are negated by [`evaluate`] so that smaller is
//! always better and a single argmin drives split selection.
//!
//! Gain ratio and Gini impurity are *not* symmetric in their arguments. Both
//! learners call [`evaluate`] with the ground-truth clustering first and the
//! candidate clustering second, which makes the Gini impurity condition on
//! the candidate parts and the gain ratio normalize by the candidate entropy.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

use crate::clustering::{Clustering, ContingencyTable};
use crate::error::{Error, Result};

/// Comparison tolerance for scores: values closer than this are tied.
pub const SCORE_EPSILON: f64 = 1e-12;

/// The selectable measures, one scoring function and orientation each.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MeasureId {
    #[serde(rename = "gain")]
    InformationGain,
    #[serde(rename = "gain-ratio")]
    GainRatio,
    #[serde(rename = "nvi")]
    NormalizedVi,
    #[serde(rename = "gini")]
    GiniImpurity,
    #[serde(rename = "jaccard")]
    ExtendedJaccard,
    #[serde(rename = "accuracy")]
    InvertedAccuracy,
}

impl MeasureId {
    pub const ALL: [MeasureId; 6] = [
        MeasureId::InformationGain,
        MeasureId::GainRatio,
        MeasureId::NormalizedVi,
        MeasureId::GiniImpurity,
        MeasureId::ExtendedJaccard,
        MeasureId::InvertedAccuracy,
    ];

    pub fn orientation(self) -> Orientation {
        match self {
            MeasureId::InformationGain | MeasureId::GainRatio => Orientation::Similarity,
            _ => Orientation::Distance,
        }
    }

    /// True when the value is unchanged under any permutation of one
    /// clustering's part indices. The index-aligned measures (extended
    /// Jaccard, inverted accuracy) are not.
    pub fn permutation_invariant(self) -> bool {
        !matches!(
            self,
            MeasureId::ExtendedJaccard | MeasureId::InvertedAccuracy
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            MeasureId::InformationGain => "gain",
            MeasureId::GainRatio => "gain-ratio",
            MeasureId::NormalizedVi => "nvi",
            MeasureId::GiniImpurity => "gini",
            MeasureId::ExtendedJaccard => "jaccard",
            MeasureId::InvertedAccuracy => "accuracy",
        }
    }
}

impl fmt::Display for MeasureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MeasureId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "gain" => Ok(MeasureId::InformationGain),
            "gain-ratio" => Ok(MeasureId::GainRatio),
            "nvi" => Ok(MeasureId::NormalizedVi),
            "gini" => Ok(MeasureId::GiniImpurity),
            "jaccard" => Ok(MeasureId::ExtendedJaccard),
            "accuracy" => Ok(MeasureId::InvertedAccuracy),
            other => Err(Error::InvalidSpec(format!("unknown measure `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Distance,
    Similarity,
}

/// A raw measure value together with its orientation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Score {
    pub value: f64,
    pub orientation: Orientation,
}

impl Score {
    fn distance(value: f64) -> Self {
        Score {
            value,
            orientation: Orientation::Distance,
        }
    }

    fn similarity(value: f64) -> Self {
        Score {
            value,
            orientation: Orientation::Similarity,
        }
    }

    /// The value with similarities negated, suitable for argmin selection.
    pub fn as_distance(self) -> f64 {
        match self.orientation {
            Orientation::Distance => self.value,
            Orientation::Similarity => -self.value,
        }
    }
}

fn log2(x: f64) -> f64 {
    x.log2()
}

/// `p · log2 p` with the `0 log 0 := 0` convention.
fn p_log_p(p: f64) -> f64 {
    if p > 0.0 {
        p * log2(p)
    } else {
        0.0
    }
}

fn entropy_of_sizes(sizes: impl Iterator<Item = usize>, total: usize) -> f64 {
    let n = total as f64;
    -sizes.map(|s| p_log_p(s as f64 / n)).sum::<f64>()
}

// ---------------------------------------------------------------------------
// Table kernels. Rows of the table are the parts of `A`, columns of `B`.
// ---------------------------------------------------------------------------

pub(crate) fn table_row_entropy(t: &ContingencyTable) -> f64 {
    entropy_of_sizes((0..t.n_rows()).map(|i| t.row_sum(i)), t.total())
}

pub(crate) fn table_col_entropy(t: &ContingencyTable) -> f64 {
    entropy_of_sizes((0..t.n_cols()).map(|j| t.col_sum(j)), t.total())
}

/// Entropy of the meet `A ∩ B`, straight from the joint counts.
pub(crate) fn table_joint_entropy(t: &ContingencyTable) -> f64 {
    let n = t.total() as f64;
    -(0..t.n_rows())
        .flat_map(|i| (0..t.n_cols()).map(move |j| (i, j)))
        .map(|(i, j)| p_log_p(t.count(i, j) as f64 / n))
        .sum::<f64>()
}

/// `H(A | B) = −Σ_ij P(A_i ∩ B_j) log P(A_i | B_j)`.
pub(crate) fn table_conditional_entropy(t: &ContingencyTable) -> f64 {
    let n = t.total() as f64;
    let mut h = 0.0;
    for j in 0..t.n_cols() {
        let col = t.col_sum(j) as f64;
        for i in 0..t.n_rows() {
            let c = t.count(i, j) as f64;
            if c > 0.0 {
                h += (c / n) * log2(col / c);
            }
        }
    }
    h
}

pub(crate) fn table_gain(t: &ContingencyTable) -> f64 {
    table_row_entropy(t) - table_conditional_entropy(t)
}

pub(crate) fn table_gain_ratio(t: &ContingencyTable) -> f64 {
    let h_b = table_col_entropy(t);
    if h_b <= 0.0 {
        // A trivial split carries no information; see the argmin note on
        // `evaluate`.
        0.0
    } else {
        table_gain(t) / h_b
    }
}

pub(crate) fn table_vi(t: &ContingencyTable) -> f64 {
    let joint = table_joint_entropy(t);
    2.0 * joint - table_row_entropy(t) - table_col_entropy(t)
}

pub(crate) fn table_normalized_vi(t: &ContingencyTable) -> f64 {
    let joint = table_joint_entropy(t);
    if joint <= 0.0 {
        // Both clusterings trivial, hence equal.
        0.0
    } else {
        table_vi(t) / joint
    }
}

pub(crate) fn table_gini(t: &ContingencyTable) -> f64 {
    let n = t.total() as f64;
    let mut g = 0.0;
    for j in 0..t.n_cols() {
        let col = t.col_sum(j) as f64;
        if col == 0.0 {
            continue;
        }
        let purity: f64 = (0..t.n_rows())
            .map(|i| {
                let p = t.count(i, j) as f64 / col;
                p * p
            })
            .sum();
        g += (col / n) * (1.0 - purity);
    }
    g
}

/// `D(A, B) = k − Σ_i |A_i ∩ B_i| / |A_i ∪ B_i|`; requires a square table.
pub(crate) fn table_extended_jaccard(t: &ContingencyTable) -> f64 {
    debug_assert_eq!(t.n_rows(), t.n_cols());
    let k = t.n_rows();
    let mut d = k as f64;
    for i in 0..k {
        let inter = t.count(i, i) as f64;
        let union = (t.row_sum(i) + t.col_sum(i)) as f64 - inter;
        // Both parts empty: agreement at index i.
        let j = if union == 0.0 { 1.0 } else { inter / union };
        d -= j;
    }
    d
}

pub(crate) fn table_accuracy(t: &ContingencyTable) -> f64 {
    debug_assert_eq!(t.n_rows(), t.n_cols());
    let hits: usize = (0..t.n_rows()).map(|i| t.count(i, i)).sum();
    hits as f64 / t.total() as f64
}

/// Distance-oriented value of `m` on a prebuilt table (similarities negated).
pub(crate) fn evaluate_table(m: MeasureId, t: &ContingencyTable) -> f64 {
    match m {
        MeasureId::InformationGain => -table_gain(t),
        MeasureId::GainRatio => -table_gain_ratio(t),
        MeasureId::NormalizedVi => table_normalized_vi(t),
        MeasureId::GiniImpurity => table_gini(t),
        MeasureId::ExtendedJaccard => table_extended_jaccard(t),
        MeasureId::InvertedAccuracy => 1.0 - table_accuracy(t),
    }
}

// ---------------------------------------------------------------------------
// Public operations on clusterings.
// ---------------------------------------------------------------------------

fn table_of(a: &Clustering, b: &Clustering) -> Result<ContingencyTable> {
    if a.universe_size() == 0 {
        return Err(Error::EmptyUniverse);
    }
    ContingencyTable::from_clusterings(a, b)
}

/// Shannon entropy `H(A) = −Σ P(A_i) log P(A_i)` in bits.
pub fn entropy(a: &Clustering) -> Result<f64> {
    if a.universe_size() == 0 {
        return Err(Error::EmptyUniverse);
    }
    Ok(entropy_of_sizes(
        a.part_sizes().into_iter(),
        a.universe_size(),
    ))
}

/// Expected conditional entropy `H(A | B)` in bits.
pub fn conditional_entropy(a: &Clustering, b: &Clustering) -> Result<f64> {
    Ok(table_conditional_entropy(&table_of(a, b)?))
}

/// Kullback-Leibler divergence between the part-size distributions of two
/// clusterings with equal part counts (universes may differ).
///
/// Returns `+∞` when some part has positive mass in `c` but none in `c2`.
pub fn kl_divergence(c: &Clustering, c2: &Clustering) -> Result<f64> {
    if c.part_count() != c2.part_count() {
        return Err(Error::PartCountMismatch {
            left: c.part_count(),
            right: c2.part_count(),
        });
    }
    if c.universe_size() == 0 || c2.universe_size() == 0 {
        return Err(Error::EmptyUniverse);
    }
    let n = c.universe_size() as f64;
    let n2 = c2.universe_size() as f64;
    let sizes = c.part_sizes();
    let sizes2 = c2.part_sizes();
    let mut kl = 0.0;
    for (&s, &s2) in sizes.iter().zip(&sizes2) {
        let p = s as f64 / n;
        if p == 0.0 {
            continue;
        }
        let q = s2 as f64 / n2;
        if q == 0.0 {
            return Ok(f64::INFINITY);
        }
        kl += p * log2(p / q);
    }
    Ok(kl)
}

/// Mutual information `Gain(A, B) = H(A) − H(A | B)`, a similarity.
pub fn information_gain(a: &Clustering, b: &Clustering) -> Result<Score> {
    Ok(Score::similarity(table_gain(&table_of(a, b)?)))
}

/// `Gain(A, B) / H(B)`, a similarity in `[0, 1]`; defined as 0 when
/// `H(B) = 0`.
pub fn gain_ratio(a: &Clustering, b: &Clustering) -> Result<Score> {
    Ok(Score::similarity(table_gain_ratio(&table_of(a, b)?)))
}

/// Variation of information `VI(A, B) = H(A|B) + H(B|A)` in bits.
pub fn variation_of_information(a: &Clustering, b: &Clustering) -> Result<f64> {
    Ok(table_vi(&table_of(a, b)?))
}

/// `VI(A, B) / H(A ∩ B)`, a distance in `[0, 1]`; defined as 0 when both
/// clusterings are trivial.
pub fn normalized_vi(a: &Clustering, b: &Clustering) -> Result<Score> {
    Ok(Score::distance(table_normalized_vi(&table_of(a, b)?)))
}

/// `Gini(A, B) = Σ_j P(B_j) (1 − Σ_i P(A_i|B_j)²)`, a distance in `[0, 1]`.
pub fn gini_impurity(a: &Clustering, b: &Clustering) -> Result<Score> {
    Ok(Score::distance(table_gini(&table_of(a, b)?)))
}

/// Extended Jaccard distance `k − Σ_i |A_i ∩ B_i| / |A_i ∪ B_i|`; index
/// aligned, requires equal part counts.
pub fn extended_jaccard(a: &Clustering, b: &Clustering) -> Result<Score> {
    if a.part_count() != b.part_count() {
        return Err(Error::PartCountMismatch {
            left: a.part_count(),
            right: b.part_count(),
        });
    }
    Ok(Score::distance(table_extended_jaccard(&table_of(a, b)?)))
}

/// Prediction accuracy `Σ_i P(A_i ∩ B_i)`, a similarity; index aligned.
pub fn accuracy(a: &Clustering, b: &Clustering) -> Result<Score> {
    if a.part_count() != b.part_count() {
        return Err(Error::PartCountMismatch {
            left: a.part_count(),
            right: b.part_count(),
        });
    }
    Ok(Score::similarity(table_accuracy(&table_of(a, b)?)))
}

/// Uniform argmin entry point: the measure value with similarities negated,
/// so smaller is better for every `MeasureId`.
pub fn evaluate(m: MeasureId, a: &Clustering, b: &Clustering) -> Result<f64> {
    match m {
        MeasureId::ExtendedJaccard | MeasureId::InvertedAccuracy => {
            if a.part_count() != b.part_count() {
                return Err(Error::PartCountMismatch {
                    left: a.part_count(),
                    right: b.part_count(),
                });
            }
        }
        _ => {}
    }
    Ok(evaluate_table(m, &table_of(a, b)?))
}
