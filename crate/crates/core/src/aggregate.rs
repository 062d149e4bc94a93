//! Aggregation of per-iteration rankings into a final ranking by modal score.
//!
//! Rank `r` among `m` alternatives scores `m + 1 - r`. Each alternative's
//! final standing is the most frequent score it earned; ties are settled by
//! the largest modal score, then between alternatives by mean score, mean
//! closeness and finally index.

use std::cmp::Ordering;

use thiserror::Error;

use crate::model::{AlternativeOutcome, FinalRanking, RankMatrix, TopsisResult};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum AggregateError {
    #[error("no iterations to aggregate")]
    Empty,
    #[error("iteration {iteration} ranks {got} alternatives, expected {expected}")]
    InconsistentWidth {
        iteration: usize,
        expected: usize,
        got: usize,
    },
    #[error("iteration {0} is not a permutation of 1..m")]
    NotPermutation(usize),
    #[error("closeness log is {got_rows}×{got_cols}, expected {rows}×{cols}")]
    ClosenessShape {
        rows: usize,
        cols: usize,
        got_rows: usize,
        got_cols: usize,
    },
}

fn is_permutation(row: &[usize]) -> bool {
    let mut seen = vec![false; row.len()];
    row.iter()
        .all(|&r| (1..=row.len()).contains(&r) && !std::mem::replace(&mut seen[r - 1], true))
}

/// Builds a rank matrix directly from rank rows.
pub fn rank_matrix_from_rows(rows: Vec<Vec<usize>>) -> Result<RankMatrix, AggregateError> {
    let m = rows.first().ok_or(AggregateError::Empty)?.len();
    for (iteration, row) in rows.iter().enumerate() {
        if row.len() != m {
            return Err(AggregateError::InconsistentWidth {
                iteration,
                expected: m,
                got: row.len(),
            });
        }
        if !is_permutation(row) {
            return Err(AggregateError::NotPermutation(iteration));
        }
    }
    let scores = rows
        .iter()
        .map(|row| row.iter().map(|&r| m + 1 - r).collect())
        .collect();
    Ok(RankMatrix {
        alternatives: m,
        ranks: rows,
        scores,
    })
}

pub fn build_rank_matrix(results: &[TopsisResult]) -> Result<RankMatrix, AggregateError> {
    rank_matrix_from_rows(results.iter().map(|r| r.ranks.clone()).collect())
}

/// Most frequent score in `scores` (values in 1..=m) together with the full
/// histogram, where `histogram[s - 1]` counts score `s`. Equal frequencies
/// resolve to the largest score.
pub fn modal_score(scores: &[usize], m: usize) -> (usize, Vec<usize>) {
    let mut histogram = vec![0; m];
    for &s in scores {
        histogram[s - 1] += 1;
    }
    let mode = histogram
        .iter()
        .enumerate()
        .max_by(|(a, ca), (b, cb)| ca.cmp(cb).then(a.cmp(b)))
        .map(|(s, _)| s + 1)
        .unwrap_or(m);
    (mode, histogram)
}

/// Sum of `xs` that does not depend on the order of `xs`.
fn order_free_sum(xs: &mut [f64]) -> f64 {
    xs.sort_by(f64::total_cmp);
    xs.iter().sum()
}

pub fn final_ranking(
    rm: &RankMatrix,
    closeness_log: &[Vec<f64>],
) -> Result<FinalRanking, AggregateError> {
    let m = rm.alternatives();
    let t = rm.iterations();
    if closeness_log.len() != t || closeness_log.iter().any(|row| row.len() != m) {
        return Err(AggregateError::ClosenessShape {
            rows: t,
            cols: m,
            got_rows: closeness_log.len(),
            got_cols: closeness_log.first().map_or(0, Vec::len),
        });
    }

    let mut outcomes: Vec<AlternativeOutcome> = Vec::with_capacity(m);
    let mut score_sums = Vec::with_capacity(m);
    for j in 0..m {
        let column: Vec<usize> = rm.scores().iter().map(|row| row[j]).collect();
        let (modal, histogram) = modal_score(&column, m);
        let score_sum: usize = column.iter().sum();
        let mut xi: Vec<f64> = closeness_log.iter().map(|row| row[j]).collect();
        let mean_closeness = order_free_sum(&mut xi) / t as f64;
        score_sums.push(score_sum);
        outcomes.push(AlternativeOutcome {
            histogram,
            modal_score: modal,
            mean_score: score_sum as f64 / t as f64,
            mean_closeness,
            position: 0,
        });
    }

    let mut order: Vec<usize> = (0..m).collect();
    // Score sums stand in for mean scores: t is shared, and integers compare exactly.
    order.sort_by(|&a, &b| {
        outcomes[b]
            .modal_score
            .cmp(&outcomes[a].modal_score)
            .then(score_sums[b].cmp(&score_sums[a]))
            .then(
                outcomes[b]
                    .mean_closeness
                    .partial_cmp(&outcomes[a].mean_closeness)
                    .unwrap_or(Ordering::Equal),
            )
            .then(a.cmp(&b))
    });
    for (pos, &j) in order.iter().enumerate() {
        outcomes[j].position = pos + 1;
    }
    Ok(FinalRanking { outcomes, order })
}

/// Occupancy table: `table[a][r - 1]` counts iterations where alternative `a` held rank `r`.
pub fn rank_frequency(rm: &RankMatrix) -> Vec<Vec<usize>> {
    let m = rm.alternatives();
    let mut table = vec![vec![0; m]; m];
    for row in rm.ranks() {
        for (a, &r) in row.iter().enumerate() {
            table[a][r - 1] += 1;
        }
    }
    table
}
