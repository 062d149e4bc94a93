//! End-to-end ranking run: weights, bounds, sampling, per-iteration TOPSIS, aggregation.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::aggregate::{build_rank_matrix, final_ranking, AggregateError};
use crate::model::{
    validate_problem, DecisionMatrix, FinalRanking, NamedWeightSet, RandomWeightMatrix, RankMatrix,
    RunConfig, ValidationError, WeightBounds,
};
use crate::sampling::{compute_bounds, sample_weight_matrix, SamplingError};
use crate::topsis::{TopsisError, TopsisModel};
use crate::weighting::{critic_weights, entropy_weights, normalize_custom_set, WeightingError};

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Invalid(#[from] ValidationError),
    #[error("entropy weighting: {0}")]
    Entropy(#[source] WeightingError),
    #[error("CRITIC weighting: {0}")]
    Critic(#[source] WeightingError),
    #[error("custom weight set {index}: {source}")]
    Custom {
        index: usize,
        #[source]
        source: WeightingError,
    },
    #[error("weight bounds: {0}")]
    Bounds(#[source] SamplingError),
    #[error("weight sampling: {0}")]
    Sampling(#[source] SamplingError),
    #[error("TOPSIS setup: {0}")]
    TopsisSetup(#[source] TopsisError),
    #[error("TOPSIS iteration {iteration}: {source}")]
    Iteration {
        iteration: usize,
        #[source]
        source: TopsisError,
    },
    #[error("rank aggregation: {0}")]
    Aggregate(#[from] AggregateError),
}

/// Every intermediate of a run, in the order the pipeline produced them.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub matrix: DecisionMatrix,
    pub config: RunConfig,
    /// Entropy, Critic, then custom sets, omitting any that were disabled.
    pub weight_sets: Vec<NamedWeightSet>,
    pub bounds: WeightBounds,
    pub rwm: RandomWeightMatrix,
    /// t × m closeness values.
    pub closeness: Vec<Vec<f64>>,
    pub rank_matrix: RankMatrix,
    pub final_ranking: FinalRanking,
}

/// Weight sets that feed the bounds for this configuration.
pub fn collect_weight_sets(
    matrix: &DecisionMatrix,
    config: &RunConfig,
) -> Result<Vec<NamedWeightSet>, PipelineError> {
    validate_problem(matrix, config)?;
    let mut sets = Vec::new();
    if config.use_entropy {
        sets.push(
            entropy_weights(matrix)
                .map_err(PipelineError::Entropy)?
                .weights,
        );
    }
    if config.use_critic {
        sets.push(
            critic_weights(matrix)
                .map_err(PipelineError::Critic)?
                .weights,
        );
    }
    for (index, raw) in config.custom_sets.iter().enumerate() {
        let set = normalize_custom_set(raw, matrix.n(), index)
            .map_err(|source| PipelineError::Custom { index, source })?;
        sets.push(set);
    }
    Ok(sets)
}

pub fn run_pipeline(
    matrix: &DecisionMatrix,
    config: &RunConfig,
) -> Result<RunReport, PipelineError> {
    let weight_sets = collect_weight_sets(matrix, config)?;
    let bounds = compute_bounds(&weight_sets).map_err(PipelineError::Bounds)?;
    let rwm = sample_weight_matrix(&bounds, config.iterations, config.seed)
        .map_err(PipelineError::Sampling)?;

    let model = TopsisModel::new(matrix).map_err(PipelineError::TopsisSetup)?;
    let results = rwm
        .rows()
        .par_iter()
        .enumerate()
        .map(|(iteration, w)| {
            model
                .evaluate(w)
                .map_err(|source| PipelineError::Iteration { iteration, source })
        })
        .collect::<Result<Vec<_>, _>>()?;

    let rank_matrix = build_rank_matrix(&results)?;
    let closeness: Vec<Vec<f64>> = results.into_iter().map(|r| r.closeness).collect();
    let final_ranking = final_ranking(&rank_matrix, &closeness)?;

    Ok(RunReport {
        matrix: matrix.clone(),
        config: config.clone(),
        weight_sets,
        bounds,
        rwm,
        closeness,
        rank_matrix,
        final_ranking,
    })
}
