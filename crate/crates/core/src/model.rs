//! Domain types shared by every stage of the ranking pipeline.
//!
//! Everything here is immutable once constructed. Constructors validate the
//! structural invariants and report *every* violation they find rather than
//! stopping at the first one.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Tolerance used when checking that a weight vector sums to one.
pub const WEIGHT_SUM_TOLERANCE: f64 = 1e-9;

/// Number of weight vectors sampled when the caller does not say otherwise.
pub const DEFAULT_ITERATIONS: usize = 10_000;

/// Seed used when the caller does not supply one, so default runs are reproducible.
pub const DEFAULT_SEED: u64 = 42;

/// Whether larger or smaller values of a criterion are preferred.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// Larger is better ("max").
    Benefit,
    /// Smaller is better ("min").
    Cost,
}

impl Direction {
    pub fn token(self) -> &'static str {
        match self {
            Direction::Benefit => "max",
            Direction::Cost => "min",
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("unknown direction {0:?} (expected max/min or benefit/cost)")]
pub struct UnknownDirection(pub String);

impl FromStr for Direction {
    type Err = UnknownDirection;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "max" | "benefit" => Ok(Direction::Benefit),
            "min" | "cost" => Ok(Direction::Cost),
            _ => Err(UnknownDirection(s.to_string())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionSpec {
    pub id: String,
    pub label: String,
    pub direction: Direction,
}

impl CriterionSpec {
    pub fn new(id: impl Into<String>, label: impl Into<String>, direction: Direction) -> Self {
        Self {
            id: id.into(),
            label: label.into(),
            direction,
        }
    }

    /// A criterion whose label is its id.
    pub fn with_id(id: impl Into<String>, direction: Direction) -> Self {
        let id = id.into();
        Self {
            label: id.clone(),
            id,
            direction,
        }
    }
}

/// A single broken invariant. Coordinates are zero-based.
#[derive(Clone, Debug, PartialEq, Error)]
pub enum Violation {
    #[error("m ≥ 2 required: got {0} alternative(s)")]
    TooFewAlternatives(usize),
    #[error("n ≥ 1 required: no criteria")]
    NoCriteria,
    #[error("{labels} alternative labels for {rows} value rows")]
    AlternativeCountMismatch { labels: usize, rows: usize },
    #[error("row {row}: expected {expected} values, got {got}")]
    RaggedRow {
        row: usize,
        expected: usize,
        got: usize,
    },
    #[error("non-finite value at (row {row}, column {col})")]
    NonFinite { row: usize, col: usize },
    #[error("negative value {value} at (row {row}, column {col})")]
    Negative { row: usize, col: usize, value: f64 },
    #[error("criterion {0} has an empty id")]
    EmptyCriterionId(usize),
    #[error("duplicate criterion id {0:?}")]
    DuplicateCriterionId(String),
    #[error("iterations must be at least 1")]
    ZeroIterations,
    #[error("custom set {index}: expected {expected} weights, got {got}")]
    CustomSetLength {
        index: usize,
        expected: usize,
        got: usize,
    },
    #[error("custom set {index}: negative weight at position {position}")]
    CustomSetNegative { index: usize, position: usize },
    #[error("custom set {index}: non-finite weight at position {position}")]
    CustomSetNonFinite { index: usize, position: usize },
    #[error("custom set {index}: weights sum to zero")]
    CustomSetZeroSum { index: usize },
}

/// Every violation found while validating a problem.
#[derive(Clone, Debug, PartialEq, Error)]
pub struct ValidationError(pub Vec<Violation>);

impl fmt::Display for ValidationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid problem:")?;
        for v in &self.0 {
            write!(f, "\n  - {v}")?;
        }
        Ok(())
    }
}

impl ValidationError {
    pub fn violations(&self) -> &[Violation] {
        &self.0
    }
}

/// An m × n table of alternative performances with one direction per column.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DecisionMatrix {
    alternatives: Vec<String>,
    criteria: Vec<CriterionSpec>,
    values: Vec<Vec<f64>>,
}

impl DecisionMatrix {
    pub fn new(
        alternatives: Vec<String>,
        criteria: Vec<CriterionSpec>,
        values: Vec<Vec<f64>>,
    ) -> Result<Self, ValidationError> {
        let violations = matrix_violations(&alternatives, &criteria, &values);
        if violations.is_empty() {
            Ok(Self {
                alternatives,
                criteria,
                values,
            })
        } else {
            Err(ValidationError(violations))
        }
    }

    /// Builds a matrix with generated labels `a1..am` and ids `C1..Cn`.
    pub fn from_rows(
        values: Vec<Vec<f64>>,
        directions: &[Direction],
    ) -> Result<Self, ValidationError> {
        let alternatives = (1..=values.len()).map(|i| format!("a{i}")).collect();
        let criteria = directions
            .iter()
            .enumerate()
            .map(|(j, &d)| CriterionSpec::with_id(format!("C{}", j + 1), d))
            .collect();
        Self::new(alternatives, criteria, values)
    }

    pub fn alternatives(&self) -> &[String] {
        &self.alternatives
    }

    pub fn criteria(&self) -> &[CriterionSpec] {
        &self.criteria
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.values
    }

    /// Number of alternatives (m).
    pub fn m(&self) -> usize {
        self.values.len()
    }

    /// Number of criteria (n).
    pub fn n(&self) -> usize {
        self.criteria.len()
    }

    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.values[i][j]
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        self.values.iter().map(|row| row[j]).collect()
    }

    pub fn directions(&self) -> Vec<Direction> {
        self.criteria.iter().map(|c| c.direction).collect()
    }
}

fn matrix_violations(
    alternatives: &[String],
    criteria: &[CriterionSpec],
    values: &[Vec<f64>],
) -> Vec<Violation> {
    let mut out = Vec::new();
    let m = values.len();
    let n = criteria.len();
    if m < 2 {
        out.push(Violation::TooFewAlternatives(m));
    }
    if n == 0 {
        out.push(Violation::NoCriteria);
    }
    if alternatives.len() != m {
        out.push(Violation::AlternativeCountMismatch {
            labels: alternatives.len(),
            rows: m,
        });
    }
    let mut seen = HashSet::new();
    for (j, c) in criteria.iter().enumerate() {
        if c.id.trim().is_empty() {
            out.push(Violation::EmptyCriterionId(j));
        } else if !seen.insert(c.id.as_str()) {
            out.push(Violation::DuplicateCriterionId(c.id.clone()));
        }
    }
    for (i, row) in values.iter().enumerate() {
        if row.len() != n {
            out.push(Violation::RaggedRow {
                row: i,
                expected: n,
                got: row.len(),
            });
        }
        for (j, &v) in row.iter().enumerate() {
            if !v.is_finite() {
                out.push(Violation::NonFinite { row: i, col: j });
            } else if v < 0.0 {
                out.push(Violation::Negative {
                    row: i,
                    col: j,
                    value: v,
                });
            }
        }
    }
    out
}

/// Which method produced a weight vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WeightSource {
    Entropy,
    Critic,
    /// Externally supplied set, zero-based in the order given.
    Custom(usize),
}

impl WeightSource {
    pub fn label(&self) -> String {
        match self {
            WeightSource::Entropy => "Entropy".to_string(),
            WeightSource::Critic => "Critic".to_string(),
            WeightSource::Custom(k) => format!("Custom Weights {}", k + 1),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Error)]
pub enum WeightSetError {
    #[error("empty weight vector")]
    Empty,
    #[error("weight {position} is negative or non-finite ({value})")]
    BadEntry { position: usize, value: f64 },
    #[error("weights sum to {0}, expected 1")]
    NotUnitSum(f64),
}

/// A normalized weight vector tagged with its origin.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NamedWeightSet {
    source: WeightSource,
    weights: Vec<f64>,
}

impl NamedWeightSet {
    pub fn new(source: WeightSource, weights: Vec<f64>) -> Result<Self, WeightSetError> {
        if weights.is_empty() {
            return Err(WeightSetError::Empty);
        }
        if let Some((position, &value)) = weights
            .iter()
            .enumerate()
            .find(|(_, w)| !w.is_finite() || **w < 0.0)
        {
            return Err(WeightSetError::BadEntry { position, value });
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > WEIGHT_SUM_TOLERANCE {
            return Err(WeightSetError::NotUnitSum(sum));
        }
        Ok(Self { source, weights })
    }

    pub fn source(&self) -> WeightSource {
        self.source
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }
}

/// Per-criterion closed weight interval `[lower_j, upper_j]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightBounds {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Error)]
pub enum BoundsShapeError {
    #[error("lower has {lower} entries, upper has {upper}")]
    LengthMismatch { lower: usize, upper: usize },
    #[error("criterion {0}: need 0 ≤ lower ≤ upper ≤ 1")]
    BadInterval(usize),
}

impl WeightBounds {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self, BoundsShapeError> {
        if lower.len() != upper.len() {
            return Err(BoundsShapeError::LengthMismatch {
                lower: lower.len(),
                upper: upper.len(),
            });
        }
        for (j, (&lo, &hi)) in lower.iter().zip(&upper).enumerate() {
            if !(0.0 <= lo && lo <= hi && hi <= 1.0) {
                return Err(BoundsShapeError::BadInterval(j));
            }
        }
        Ok(Self { lower, upper })
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn len(&self) -> usize {
        self.lower.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lower.is_empty()
    }
}

/// The t × n matrix of sampled weight vectors, with the inputs that produced it.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RandomWeightMatrix {
    pub(crate) seed: u64,
    pub(crate) bounds: WeightBounds,
    pub(crate) rows: Vec<Vec<f64>>,
}

impl RandomWeightMatrix {
    pub fn iterations(&self) -> usize {
        self.rows.len()
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn bounds(&self) -> &WeightBounds {
        &self.bounds
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        self.rows.iter().map(|r| r[j]).collect()
    }
}

/// Outcome of one TOPSIS evaluation: closeness per alternative and its rank (1 = best).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TopsisResult {
    pub closeness: Vec<f64>,
    pub ranks: Vec<usize>,
}

/// Per-iteration ranks (t × m) and the matching scores `m + 1 - rank`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RankMatrix {
    pub(crate) alternatives: usize,
    pub(crate) ranks: Vec<Vec<usize>>,
    pub(crate) scores: Vec<Vec<usize>>,
}

impl RankMatrix {
    pub fn alternatives(&self) -> usize {
        self.alternatives
    }

    pub fn iterations(&self) -> usize {
        self.ranks.len()
    }

    pub fn ranks(&self) -> &[Vec<usize>] {
        &self.ranks
    }

    pub fn scores(&self) -> &[Vec<usize>] {
        &self.scores
    }
}

/// Aggregated outcome for one alternative.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlternativeOutcome {
    /// `histogram[s - 1]` counts the iterations in which the alternative scored `s`.
    pub histogram: Vec<usize>,
    pub modal_score: usize,
    pub mean_score: f64,
    pub mean_closeness: f64,
    /// Final position, 1 = best.
    pub position: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FinalRanking {
    pub outcomes: Vec<AlternativeOutcome>,
    /// Alternative indices ordered from first to last position.
    pub order: Vec<usize>,
}

impl FinalRanking {
    pub fn positions(&self) -> Vec<usize> {
        self.outcomes.iter().map(|o| o.position).collect()
    }
}

/// Parameters of a full ranking run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub iterations: usize,
    pub seed: u64,
    /// Raw external weight vectors; rescaled to unit sum before use.
    pub custom_sets: Vec<Vec<f64>>,
    pub use_entropy: bool,
    pub use_critic: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            iterations: DEFAULT_ITERATIONS,
            seed: DEFAULT_SEED,
            custom_sets: Vec::new(),
            use_entropy: true,
            use_critic: true,
        }
    }
}

/// Checks a matrix against a run configuration, collecting every violation.
///
/// The matrix has already passed its own constructor checks, so only the
/// configuration and its agreement with the matrix shape are examined here.
pub fn validate_problem<'a>(
    matrix: &'a DecisionMatrix,
    config: &'a RunConfig,
) -> Result<(&'a DecisionMatrix, &'a RunConfig), ValidationError> {
    let mut out = matrix_violations(&matrix.alternatives, &matrix.criteria, &matrix.values);
    if config.iterations == 0 {
        out.push(Violation::ZeroIterations);
    }
    let n = matrix.n();
    for (index, set) in config.custom_sets.iter().enumerate() {
        if set.len() != n {
            out.push(Violation::CustomSetLength {
                index,
                expected: n,
                got: set.len(),
            });
        }
        let mut bad = false;
        for (position, &w) in set.iter().enumerate() {
            if !w.is_finite() {
                out.push(Violation::CustomSetNonFinite { index, position });
                bad = true;
            } else if w < 0.0 {
                out.push(Violation::CustomSetNegative { index, position });
                bad = true;
            }
        }
        if !bad && set.iter().sum::<f64>() <= 0.0 {
            out.push(Violation::CustomSetZeroSum { index });
        }
    }
    if out.is_empty() {
        Ok((matrix, config))
    } else {
        Err(ValidationError(out))
    }
}
