//! Fixture checks on the six-company social media decision matrix.

mod common;

use common::*;
use ec_topsis::aggregate::{build_rank_matrix, modal_score, rank_frequency, rank_matrix_from_rows};
use ec_topsis::model::{validate_problem, Direction, RunConfig};
use ec_topsis::problem::{parse_problem_path, InputFormat};
use ec_topsis::sampling::{compute_bounds, sample_weight_matrix};
use ec_topsis::topsis::{ideal_solutions, topsis_run, vector_normalize, TopsisModel};
use ec_topsis::weighting::{
    critic_weights, critic_weights_with, entropy_weights, entropy_weights_with, minmax_normalize,
    normalize_custom_set, CriticOptions, DispersionCenter, EntropyOrientation,
};

#[test]
fn matrix_validates() {
    let m = social_media();
    assert_eq!((m.m(), m.n()), (6, 12));
    assert!(validate_problem(&m, &RunConfig::default()).is_ok());
}

#[test]
fn csv_and_json_inputs_agree() {
    let (csv, csv_config) = parse_problem_path(&data_path("social_media.csv"), None).unwrap();
    let (json, json_config) =
        parse_problem_path(&data_path("social_media.json"), Some(InputFormat::Json)).unwrap();
    assert_eq!(csv.directions(), DIRECTIONS.to_vec());
    assert_eq!(csv.rows(), social_media().rows());
    assert_eq!(json.rows(), csv.rows());
    assert_eq!(json.directions(), csv.directions());
    assert_eq!(csv_config.custom_sets, Vec::<Vec<f64>>::new());
    assert_eq!(json_config.custom_sets, vec![equal_custom_set()]);
    assert_eq!(json_config.iterations, 10_000);
    let tokens: Vec<&str> = csv.directions().iter().map(|d| d.token()).collect();
    assert_eq!(
        tokens,
        ["max", "min", "max", "max", "min", "max", "max", "min", "max", "max", "min", "max"]
    );
}

#[test]
fn entropy_row() {
    let r = entropy_weights(&social_media()).unwrap();
    let diff = max_abs_diff(r.weights.weights(), &ENTROPY);
    assert!(diff <= 0.001, "max deviation {diff}");
    for j in 0..12 {
        let col_sum: f64 = r.shares.iter().map(|row| row[j]).sum();
        assert!((col_sum - 1.0).abs() < 1e-9);
        assert!((0.0..=1.0).contains(&r.entropy[j]));
    }
}

#[test]
fn entropy_raw_orientation_regression() {
    // Direction-blind reading; values from an independent numpy evaluation.
    let r = entropy_weights_with(&social_media(), EntropyOrientation::Raw).unwrap();
    let expected = [
        0.111624, 0.040611, 0.004852, 0.188263, 0.093247, 0.004729, 0.179029, 0.072095, 0.001269,
        0.210169, 0.092476, 0.001636,
    ];
    assert!(max_abs_diff(r.weights.weights(), &expected) < 1e-6);
}

#[test]
fn critic_row() {
    let r = critic_weights(&social_media()).unwrap();
    let diff = max_abs_diff(r.weights.weights(), &CRITIC);
    assert!(diff <= 0.001, "max deviation {diff}");
    for j in 0..12 {
        assert_eq!(r.correlation[j][j], 1.0);
        for k in 0..12 {
            assert!((r.correlation[j][k] - r.correlation[k][j]).abs() < 1e-12);
        }
    }
}

#[test]
fn critic_column_mean_regression() {
    let opts = CriticOptions {
        center: DispersionCenter::ColumnMean,
        ..Default::default()
    };
    let r = critic_weights_with(&social_media(), opts).unwrap();
    let expected = [
        0.104602, 0.066013, 0.069874, 0.105195, 0.062362, 0.07298, 0.086236, 0.082951, 0.075947,
        0.102053, 0.079736, 0.09205,
    ];
    assert!(max_abs_diff(r.weights.weights(), &expected) < 1e-6);
}

#[test]
fn minmax_first_column() {
    let v = minmax_normalize(&social_media()).unwrap();
    // C1 is a benefit column with max 0.315 (a1) and min 0.013 (a5).
    assert_eq!(v[0][0], 1.0);
    assert_eq!(v[4][0], 0.0);
    assert!((v[1][0] - (0.299 - 0.013) / (0.315 - 0.013)).abs() < 1e-15);
    for row in &v {
        assert!(row.iter().all(|x| (0.0..=1.0).contains(x)));
    }
}

#[test]
fn vector_normalized_fourth_column() {
    let v = vector_normalize(&social_media()).unwrap();
    let norm = (0.323f64.powi(2)
        + 0.270f64.powi(2)
        + 0.006f64.powi(2)
        + 0.001f64.powi(2)
        + 0.056f64.powi(2))
    .sqrt();
    assert_eq!(v.values[3][3], 0.0);
    assert!((v.values[0][3] - 0.323 / norm).abs() < 1e-15);
    for j in 0..12 {
        let sq: f64 = v.values.iter().map(|r| r[j] * r[j]).sum();
        assert!((sq - 1.0).abs() < 1e-9);
    }
}

#[test]
fn cost_ideal_is_column_minimum() {
    let v = vector_normalize(&social_media()).unwrap();
    let ideals = ideal_solutions(&v, &DIRECTIONS);
    let min_c2 = v.values.iter().map(|r| r[1]).fold(f64::INFINITY, f64::min);
    assert_eq!(ideals.positive[1], min_c2);
    // a4 holds the smallest C2 value (0.069); numpy gives the same normalized value.
    assert_eq!(ideals.positive[1], v.values[3][1]);
    assert!((ideals.positive[1] - 0.13193647229499814).abs() < 1e-15);
    for (j, d) in DIRECTIONS.iter().enumerate() {
        match d {
            Direction::Benefit => assert!(ideals.positive[j] >= ideals.negative[j]),
            Direction::Cost => assert!(ideals.positive[j] <= ideals.negative[j]),
        }
    }
}

#[test]
fn equal_weights_regression() {
    // Independent numpy evaluation of the same closeness formula.
    let expected = [
        0.6513493989769892,
        0.5246587632475529,
        0.2379548663911356,
        0.45333544824933564,
        0.4318446441768042,
        0.29738850160229746,
    ];
    let r = topsis_run(&social_media(), &[1.0 / 12.0; 12]).unwrap();
    assert!(max_abs_diff(&r.closeness, &expected) < 1e-12);
    assert_eq!(r.ranks, FINAL_POSITIONS);
}

#[test]
fn external_weight_vectors_put_a1_first_and_a3_last() {
    for w in [IDOCRIW, MEREC] {
        let r = topsis_run(&social_media(), &w).unwrap();
        assert_eq!(r.ranks[0], 1);
        assert_eq!(r.ranks[2], 6);
    }
}

#[test]
fn bounds_rows() {
    let m = social_media();
    let sets = vec![
        entropy_weights(&m).unwrap().weights,
        critic_weights(&m).unwrap().weights,
        normalize_custom_set(&equal_custom_set(), 12, 0).unwrap(),
    ];
    let b = compute_bounds(&sets).unwrap();
    assert!(max_abs_diff(b.lower(), &LOWER) <= 0.001);
    assert!(max_abs_diff(b.upper(), &UPPER) <= 0.001);

    let rwm = sample_weight_matrix(&b, 10_000, 3).unwrap();
    for row in rwm.rows() {
        for (j, w) in row.iter().enumerate() {
            assert!(b.lower()[j] <= *w && *w <= b.upper()[j]);
        }
    }
}

#[test]
fn published_iteration_rows() {
    // First published iteration ranks and its score row.
    let rm = rank_matrix_from_rows(vec![vec![1, 2, 6, 3, 4, 5]]).unwrap();
    assert_eq!(rm.scores()[0], vec![6, 5, 1, 4, 3, 2]);
    let back: Vec<usize> = rm.scores()[0].iter().map(|s| 7 - s).collect();
    assert_eq!(back, vec![1, 2, 6, 3, 4, 5]);

    // The published excerpt: 25 iterations, two of them with a different middle order.
    let mut rows = vec![vec![1, 2, 6, 3, 4, 5]; 25];
    rows[20] = vec![1, 4, 6, 2, 3, 5];
    rows[21] = vec![1, 3, 6, 2, 4, 5];
    let rm = rank_matrix_from_rows(rows).unwrap();
    let a1: Vec<usize> = rm.scores().iter().map(|r| r[0]).collect();
    assert_eq!(modal_score(&a1, 6).0, 6);
    let freq = rank_frequency(&rm);
    assert_eq!(freq[2], vec![0, 0, 0, 0, 0, 25]);
}

#[test]
fn sampled_iterations_rank_consistently() {
    let m = social_media();
    let sets = vec![
        entropy_weights(&m).unwrap().weights,
        critic_weights(&m).unwrap().weights,
        normalize_custom_set(&equal_custom_set(), 12, 0).unwrap(),
    ];
    let b = compute_bounds(&sets).unwrap();
    let rwm = sample_weight_matrix(&b, 2_000, 11).unwrap();
    let model = TopsisModel::new(&m).unwrap();
    let results: Vec<_> = rwm
        .rows()
        .iter()
        .map(|w| model.evaluate(w).unwrap())
        .collect();
    let rm = build_rank_matrix(&results).unwrap();
    let freq = rank_frequency(&rm);
    assert_eq!(freq[0][0], 2_000);
    assert_eq!(freq[2][5], 2_000);
}
