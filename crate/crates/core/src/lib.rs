//! Multi-criteria ranking with randomized weights.
//!
//! Entropy and CRITIC weights, plus any externally supplied weight sets, define
//! a closed interval per criterion. Many weight vectors are drawn from those
//! intervals, each one ranks the alternatives with TOPSIS, and the final
//! ranking takes every alternative's most frequent score.
//!
//! ```
//! use ec_topsis::model::{DecisionMatrix, Direction, RunConfig};
//! use ec_topsis::pipeline::run_pipeline;
//!
//! let matrix = DecisionMatrix::from_rows(
//!     vec![vec![0.9, 0.2, 5.0], vec![0.4, 0.1, 7.0], vec![0.6, 0.3, 2.0]],
//!     &[Direction::Benefit, Direction::Cost, Direction::Benefit],
//! )
//! .unwrap();
//! let config = RunConfig { iterations: 500, ..RunConfig::default() };
//! let report = run_pipeline(&matrix, &config).unwrap();
//! assert_eq!(report.rank_matrix.iterations(), 500);
//! ```

pub mod aggregate;
pub mod charts;
pub mod cli;
pub mod model;
pub mod pipeline;
pub mod problem;
pub mod report;
pub mod sampling;
pub mod topsis;
pub mod weighting;
