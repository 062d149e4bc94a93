#![allow(dead_code)]

use ec_topsis::model::{DecisionMatrix, Direction};
use Direction::{Benefit as B, Cost as C};

pub const DIRECTIONS: [Direction; 12] = [B, C, B, B, C, B, B, C, B, B, C, B];

pub const VALUES: [[f64; 12]; 6] = [
    [
        0.315, 0.141, 0.544, 0.323, 0.047, 0.630, 0.219, 0.060, 0.722, 0.198, 0.063, 0.739,
    ],
    [
        0.299, 0.132, 0.569, 0.270, 0.132, 0.598, 0.061, 0.040, 0.899, 0.154, 0.067, 0.779,
    ],
    [
        0.044, 0.323, 0.633, 0.006, 0.206, 0.788, 0.037, 0.058, 0.906, 0.004, 0.022, 0.974,
    ],
    [
        0.056, 0.069, 0.875, 0.000, 0.009, 0.991, 0.003, 0.005, 0.992, 0.009, 0.005, 0.986,
    ],
    [
        0.013, 0.086, 0.901, 0.001, 0.019, 0.979, 0.013, 0.021, 0.966, 0.001, 0.001, 0.998,
    ],
    [
        0.039, 0.346, 0.615, 0.056, 0.268, 0.677, 0.001, 0.004, 0.995, 0.002, 0.026, 0.972,
    ],
];

/// Published 3-decimal weight rows for the social media case study.
pub const ENTROPY: [f64; 12] = [
    0.092, 0.029, 0.004, 0.155, 0.112, 0.004, 0.148, 0.096, 0.001, 0.173, 0.185, 0.001,
];
pub const CRITIC: [f64; 12] = [
    0.101, 0.064, 0.067, 0.104, 0.061, 0.069, 0.097, 0.078, 0.085, 0.104, 0.076, 0.094,
];
pub const LOWER: [f64; 12] = [
    0.083, 0.029, 0.004, 0.083, 0.061, 0.004, 0.083, 0.078, 0.001, 0.083, 0.076, 0.001,
];
pub const UPPER: [f64; 12] = [
    0.101, 0.083, 0.083, 0.155, 0.112, 0.083, 0.148, 0.096, 0.085, 0.173, 0.185, 0.094,
];

/// Externally produced weight vectors used for single-shot cross-checks.
pub const IDOCRIW: [f64; 12] = [
    0.093, 0.069, 0.056, 0.119, 0.087, 0.056, 0.116, 0.079, 0.055, 0.127, 0.086, 0.055,
];
pub const MEREC: [f64; 12] = [
    0.053, 0.028, 0.008, 0.57, 0.053, 0.009, 0.088, 0.043, 0.008, 0.077, 0.056, 0.007,
];

/// Expected final positions for a1..a6.
pub const FINAL_POSITIONS: [usize; 6] = [1, 2, 6, 3, 4, 5];

pub fn social_media() -> DecisionMatrix {
    let alternatives = (1..=6).map(|i| format!("a{i}")).collect();
    let criteria = DIRECTIONS
        .iter()
        .enumerate()
        .map(|(j, &d)| ec_topsis::model::CriterionSpec::with_id(format!("C{}", j + 1), d))
        .collect();
    DecisionMatrix::new(
        alternatives,
        criteria,
        VALUES.iter().map(|r| r.to_vec()).collect(),
    )
    .unwrap()
}

pub fn equal_custom_set() -> Vec<f64> {
    vec![0.05; 12]
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

pub fn data_path(name: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
}

pub mod oracle;
