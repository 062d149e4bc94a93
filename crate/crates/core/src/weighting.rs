//! Objective criteria weights: Shannon entropy and CRITIC, plus rescaling of
//! externally supplied weight vectors.

use serde::Serialize;
use thiserror::Error;

use crate::model::{DecisionMatrix, Direction, NamedWeightSet, WeightSource};

#[derive(Clone, Debug, PartialEq, Error)]
pub enum WeightingError {
    #[error("criterion {0:?}: column sums to zero, entropy shares are undefined")]
    ZeroColumnSum(String),
    #[error("criterion {0:?}: cost column contains a zero and cannot be inverted")]
    ZeroInCostColumn(String),
    #[error("every criterion is perfectly uniform, entropy weights are undefined")]
    AllColumnsUniform,
    #[error("criterion {0:?}: constant column cannot be min-max normalized")]
    ConstantColumn(String),
    #[error("Pearson correlation undefined for zero-variance input")]
    ZeroVariance,
    #[error("Pearson correlation needs equal-length inputs ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("CRITIC undefined for a single criterion")]
    SingleCriterion,
    #[error("CRITIC information index is zero for every criterion")]
    DegenerateCritic,
    #[error("custom weights: expected {expected} entries, got {got}")]
    CustomLength { expected: usize, got: usize },
    #[error("custom weights: negative weight at position {0}")]
    CustomNegative(usize),
    #[error("custom weights: non-finite weight at position {0}")]
    CustomNonFinite(usize),
    #[error("custom weights: all entries are zero")]
    CustomAllZero,
}

/// How cost criteria enter the entropy share matrix.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum EntropyOrientation {
    /// Cost columns are replaced by their reciprocals before computing shares.
    #[default]
    ReciprocalCost,
    /// Every column is used as given, whatever its direction.
    Raw,
}

/// Point about which each CRITIC column's dispersion is measured.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum DispersionCenter {
    /// Mean of the whole normalized matrix.
    #[default]
    GrandMean,
    /// Mean of the column itself (ordinary standard deviation).
    ColumnMean,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum StdevDivisor {
    /// m − 1
    #[default]
    Sample,
    /// m
    Population,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CriticOptions {
    pub center: DispersionCenter,
    pub divisor: StdevDivisor,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EntropyReport {
    /// Share matrix P (m × n); each column sums to one.
    pub shares: Vec<Vec<f64>>,
    /// Normalized Shannon entropy E_j in [0, 1].
    pub entropy: Vec<f64>,
    /// Degree of diversity 1 − E_j.
    pub diversity: Vec<f64>,
    pub weights: NamedWeightSet,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CriticReport {
    pub normalized: Vec<Vec<f64>>,
    pub correlation: Vec<Vec<f64>>,
    pub stdev: Vec<f64>,
    /// Information index σ_j Σ_k (1 − ρ_jk).
    pub index: Vec<f64>,
    pub weights: NamedWeightSet,
}

pub fn entropy_weights(matrix: &DecisionMatrix) -> Result<EntropyReport, WeightingError> {
    entropy_weights_with(matrix, EntropyOrientation::default())
}

pub fn entropy_weights_with(
    matrix: &DecisionMatrix,
    orientation: EntropyOrientation,
) -> Result<EntropyReport, WeightingError> {
    let m = matrix.m();
    let n = matrix.n();
    let ln_m = (m as f64).ln();
    let mut shares = vec![vec![0.0; n]; m];
    let mut entropy = Vec::with_capacity(n);

    for (j, spec) in matrix.criteria().iter().enumerate() {
        let mut col = matrix.column(j);
        if orientation == EntropyOrientation::ReciprocalCost && spec.direction == Direction::Cost {
            if col.contains(&0.0) {
                return Err(WeightingError::ZeroInCostColumn(spec.id.clone()));
            }
            col.iter_mut().for_each(|x| *x = 1.0 / *x);
        }
        let sum: f64 = col.iter().sum();
        if sum <= 0.0 {
            return Err(WeightingError::ZeroColumnSum(spec.id.clone()));
        }
        let mut h = 0.0;
        for (i, &x) in col.iter().enumerate() {
            let p = x / sum;
            shares[i][j] = p;
            if p > 0.0 {
                h -= p * p.ln();
            }
        }
        // A uniform column carries no information; pin it to exactly 1.
        let uniform = col.iter().all(|&x| x == col[0]);
        entropy.push(if uniform {
            1.0
        } else {
            (h / ln_m).clamp(0.0, 1.0)
        });
    }

    let diversity: Vec<f64> = entropy.iter().map(|e| 1.0 - e).collect();
    let total: f64 = diversity.iter().sum();
    if total <= 0.0 {
        return Err(WeightingError::AllColumnsUniform);
    }
    let weights = diversity.iter().map(|d| d / total).collect();
    Ok(EntropyReport {
        shares,
        entropy,
        diversity,
        weights: NamedWeightSet::new(WeightSource::Entropy, weights)
            .expect("entropy weights are non-negative with unit sum"),
    })
}

/// Direction-aware min-max scaling; the preferred extreme of every column maps to 1.
pub fn minmax_normalize(matrix: &DecisionMatrix) -> Result<Vec<Vec<f64>>, WeightingError> {
    let mut out = vec![vec![0.0; matrix.n()]; matrix.m()];
    for (j, spec) in matrix.criteria().iter().enumerate() {
        let col = matrix.column(j);
        let hi = col.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let lo = col.iter().copied().fold(f64::INFINITY, f64::min);
        let range = hi - lo;
        if range <= 0.0 {
            return Err(WeightingError::ConstantColumn(spec.id.clone()));
        }
        for (i, &x) in col.iter().enumerate() {
            out[i][j] = match spec.direction {
                Direction::Benefit => (x - lo) / range,
                Direction::Cost => (hi - x) / range,
            };
        }
    }
    Ok(out)
}

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Pearson product-moment correlation, clamped to [−1, 1].
pub fn pearson(a: &[f64], b: &[f64]) -> Result<f64, WeightingError> {
    if a.len() != b.len() {
        return Err(WeightingError::LengthMismatch(a.len(), b.len()));
    }
    let (ma, mb) = (mean(a), mean(b));
    let mut cov = 0.0;
    let mut va = 0.0;
    let mut vb = 0.0;
    for (&x, &y) in a.iter().zip(b) {
        let (dx, dy) = (x - ma, y - mb);
        cov += dx * dy;
        va += dx * dx;
        vb += dy * dy;
    }
    if va <= 0.0 || vb <= 0.0 {
        return Err(WeightingError::ZeroVariance);
    }
    Ok((cov / (va * vb).sqrt()).clamp(-1.0, 1.0))
}

pub fn critic_weights(matrix: &DecisionMatrix) -> Result<CriticReport, WeightingError> {
    critic_weights_with(matrix, CriticOptions::default())
}

pub fn critic_weights_with(
    matrix: &DecisionMatrix,
    options: CriticOptions,
) -> Result<CriticReport, WeightingError> {
    let normalized = minmax_normalize(matrix)?;
    let n = matrix.n();
    if n == 1 {
        return Err(WeightingError::SingleCriterion);
    }
    let m = matrix.m();
    let columns: Vec<Vec<f64>> = (0..n)
        .map(|j| normalized.iter().map(|row| row[j]).collect())
        .collect();

    let mut correlation = vec![vec![0.0; n]; n];
    for j in 0..n {
        correlation[j][j] = 1.0;
        for k in (j + 1)..n {
            let r = pearson(&columns[j], &columns[k])?;
            correlation[j][k] = r;
            correlation[k][j] = r;
        }
    }

    let grand = columns.iter().map(|c| c.iter().sum::<f64>()).sum::<f64>() / (m * n) as f64;
    let divisor = match options.divisor {
        StdevDivisor::Sample => (m - 1) as f64,
        StdevDivisor::Population => m as f64,
    };
    let stdev: Vec<f64> = columns
        .iter()
        .map(|col| {
            let center = match options.center {
                DispersionCenter::GrandMean => grand,
                DispersionCenter::ColumnMean => mean(col),
            };
            (col.iter().map(|x| (x - center).powi(2)).sum::<f64>() / divisor).sqrt()
        })
        .collect();

    let index: Vec<f64> = (0..n)
        .map(|j| stdev[j] * correlation[j].iter().map(|r| 1.0 - r).sum::<f64>())
        .collect();
    let total: f64 = index.iter().sum();
    if total <= 0.0 {
        return Err(WeightingError::DegenerateCritic);
    }
    let weights = index.iter().map(|e| e / total).collect();
    Ok(CriticReport {
        normalized,
        correlation,
        stdev,
        index,
        weights: NamedWeightSet::new(WeightSource::Critic, weights)
            .expect("CRITIC weights are non-negative with unit sum"),
    })
}

/// Rescales a raw external weight vector to unit sum.
pub fn normalize_custom_set(
    raw: &[f64],
    n: usize,
    index: usize,
) -> Result<NamedWeightSet, WeightingError> {
    if raw.len() != n {
        return Err(WeightingError::CustomLength {
            expected: n,
            got: raw.len(),
        });
    }
    for (p, &w) in raw.iter().enumerate() {
        if !w.is_finite() {
            return Err(WeightingError::CustomNonFinite(p));
        }
        if w < 0.0 {
            return Err(WeightingError::CustomNegative(p));
        }
    }
    let sum: f64 = raw.iter().sum();
    if sum <= 0.0 {
        return Err(WeightingError::CustomAllZero);
    }
    let weights = raw.iter().map(|w| w / sum).collect();
    Ok(NamedWeightSet::new(WeightSource::Custom(index), weights)
        .expect("rescaled custom weights have unit sum"))
}
