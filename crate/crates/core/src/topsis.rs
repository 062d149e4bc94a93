//! Single TOPSIS evaluation for a given weight vector.
//!
//! The decision matrix is vector normalized (each column divided by its
//! Euclidean norm). Weights are applied inside the distance, multiplying the
//! squared deviations, and are never folded into the normalized matrix.

use serde::Serialize;
use thiserror::Error;

use crate::model::{DecisionMatrix, Direction, TopsisResult};

#[derive(Clone, Debug, PartialEq, Error)]
pub enum TopsisError {
    #[error("criterion {0:?}: all-zero column cannot be vector normalized")]
    ZeroColumn(String),
    #[error("expected {expected} weights, got {got}")]
    WeightLength { expected: usize, got: usize },
    #[error("weight {0} is negative or non-finite")]
    BadWeight(usize),
    #[error("all weights are zero")]
    ZeroWeights,
    #[error("degenerate problem: ideal equals anti-ideal (alternative {0})")]
    Degenerate(usize),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NormalizedMatrix {
    pub values: Vec<Vec<f64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdealPair {
    pub positive: Vec<f64>,
    pub negative: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DistancePair {
    pub d_plus: Vec<f64>,
    pub d_minus: Vec<f64>,
}

/// Divides a column by its Euclidean norm. `None` when the column is all zero.
pub fn normalize_column(col: &[f64]) -> Option<Vec<f64>> {
    let norm = col.iter().map(|x| x * x).sum::<f64>().sqrt();
    (norm > 0.0).then(|| col.iter().map(|x| x / norm).collect())
}

pub fn vector_normalize(matrix: &DecisionMatrix) -> Result<NormalizedMatrix, TopsisError> {
    let mut values = vec![vec![0.0; matrix.n()]; matrix.m()];
    for (j, spec) in matrix.criteria().iter().enumerate() {
        let col = normalize_column(&matrix.column(j))
            .ok_or_else(|| TopsisError::ZeroColumn(spec.id.clone()))?;
        for (row, v) in values.iter_mut().zip(col) {
            row[j] = v;
        }
    }
    Ok(NormalizedMatrix { values })
}

pub fn ideal_solutions(v: &NormalizedMatrix, directions: &[Direction]) -> IdealPair {
    let mut positive = Vec::with_capacity(directions.len());
    let mut negative = Vec::with_capacity(directions.len());
    for (j, dir) in directions.iter().enumerate() {
        let col = v.values.iter().map(|row| row[j]);
        let hi = col.clone().fold(f64::NEG_INFINITY, f64::max);
        let lo = col.fold(f64::INFINITY, f64::min);
        let (best, worst) = match dir {
            Direction::Benefit => (hi, lo),
            Direction::Cost => (lo, hi),
        };
        positive.push(best);
        negative.push(worst);
    }
    IdealPair { positive, negative }
}

fn check_weights(weights: &[f64], n: usize) -> Result<(), TopsisError> {
    if weights.len() != n {
        return Err(TopsisError::WeightLength {
            expected: n,
            got: weights.len(),
        });
    }
    if let Some(j) = weights.iter().position(|w| !w.is_finite() || *w < 0.0) {
        return Err(TopsisError::BadWeight(j));
    }
    if weights.iter().all(|&w| w == 0.0) {
        return Err(TopsisError::ZeroWeights);
    }
    Ok(())
}

fn weighted_distance(row: &[f64], target: &[f64], weights: &[f64]) -> f64 {
    row.iter()
        .zip(target)
        .zip(weights)
        .map(|((x, t), w)| w * (x - t) * (x - t))
        .sum::<f64>()
        .sqrt()
}

pub fn distances(
    v: &NormalizedMatrix,
    weights: &[f64],
    ideals: &IdealPair,
) -> Result<DistancePair, TopsisError> {
    check_weights(weights, ideals.positive.len())?;
    let d_plus = v
        .values
        .iter()
        .map(|row| weighted_distance(row, &ideals.positive, weights))
        .collect();
    let d_minus = v
        .values
        .iter()
        .map(|row| weighted_distance(row, &ideals.negative, weights))
        .collect();
    Ok(DistancePair { d_plus, d_minus })
}

pub fn closeness(d: &DistancePair) -> Result<Vec<f64>, TopsisError> {
    d.d_plus
        .iter()
        .zip(&d.d_minus)
        .enumerate()
        .map(|(i, (&plus, &minus))| {
            let total = plus + minus;
            if total > 0.0 {
                Ok(minus / total)
            } else {
                Err(TopsisError::Degenerate(i))
            }
        })
        .collect()
}

/// Rank 1 goes to the largest closeness; exact ties go to the lower index.
pub fn rank_alternatives(closeness: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..closeness.len()).collect();
    order.sort_by(|&a, &b| closeness[b].total_cmp(&closeness[a]).then(a.cmp(&b)));
    let mut ranks = vec![0; closeness.len()];
    for (pos, &i) in order.iter().enumerate() {
        ranks[i] = pos + 1;
    }
    ranks
}

/// Normalized matrix and ideal pair, computed once and reused across weight vectors.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TopsisModel {
    pub normalized: NormalizedMatrix,
    pub ideals: IdealPair,
}

impl TopsisModel {
    pub fn new(matrix: &DecisionMatrix) -> Result<Self, TopsisError> {
        let normalized = vector_normalize(matrix)?;
        let ideals = ideal_solutions(&normalized, &matrix.directions());
        Ok(Self { normalized, ideals })
    }

    pub fn evaluate(&self, weights: &[f64]) -> Result<TopsisResult, TopsisError> {
        let d = distances(&self.normalized, weights, &self.ideals)?;
        let closeness = closeness(&d)?;
        let ranks = rank_alternatives(&closeness);
        Ok(TopsisResult { closeness, ranks })
    }
}

pub fn topsis_run(matrix: &DecisionMatrix, weights: &[f64]) -> Result<TopsisResult, TopsisError> {
    TopsisModel::new(matrix)?.evaluate(weights)
}
