//! Reading decision problems from CSV or JSON.
//!
//! CSV layout, one record per line, every line with `n + 1` cells:
//!
//! ```text
//! alternative,C1,C2,C3
//! direction,max,min,max
//! a1,0.315,0.141,0.544
//! a2,0.299,0.132,0.569
//! ```
//!
//! The first cell of the two header lines is a free-form label. Directions
//! accept `max`/`min` or `benefit`/`cost` in any case. Row numbers in errors
//! are 1-based line numbers.
//!
//! JSON layout:
//!
//! ```json
//! {
//!   "criteria": [{"id": "C1", "label": "Positive", "direction": "max"}],
//!   "alternatives": ["a1", "a2"],
//!   "values": [[0.3], [0.1]],
//!   "custom_sets": [[1.0]],
//!   "iterations": 10000,
//!   "seed": 42
//! }
//! ```
//!
//! `label`, `custom_sets`, `iterations` and `seed` are optional.

use std::fs;
use std::path::Path;
use std::str::FromStr;

use serde::Deserialize;
use thiserror::Error;

use crate::model::{
    validate_problem, CriterionSpec, DecisionMatrix, Direction, RunConfig, ValidationError,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InputFormat {
    Csv,
    Json,
}

impl InputFormat {
    /// `json` for `*.json`, otherwise `csv`.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("json") => InputFormat::Json,
            _ => InputFormat::Csv,
        }
    }
}

impl FromStr for InputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(InputFormat::Csv),
            "json" => Ok(InputFormat::Json),
            other => Err(format!("unknown format {other:?} (expected csv or json)")),
        }
    }
}

#[derive(Debug, Error)]
pub enum ProblemError {
    #[error("cannot open {path}: {source}")]
    Open {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("row {row}: {source}")]
    Csv {
        row: usize,
        #[source]
        source: csv::Error,
    },
    #[error("missing header row")]
    MissingHeader,
    #[error("missing direction row")]
    MissingDirections,
    #[error("header row has no criteria")]
    NoCriteria,
    #[error("row {row}, column {column}: unknown direction {token:?} (expected max or min)")]
    UnknownDirection {
        row: usize,
        column: usize,
        token: String,
    },
    #[error("row {row}: expected {expected} values, got {got}")]
    Ragged {
        row: usize,
        expected: usize,
        got: usize,
    },
    #[error("row {row}, column {column}: {value:?} is not a number")]
    NotNumeric {
        row: usize,
        column: usize,
        value: String,
    },
    #[error("criterion {index}: unknown direction {token:?} (expected max or min)")]
    UnknownJsonDirection { index: usize, token: String },
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Invalid(#[from] ValidationError),
}

pub type Problem = (DecisionMatrix, RunConfig);

pub fn parse_problem_path(
    path: &Path,
    format: Option<InputFormat>,
) -> Result<Problem, ProblemError> {
    let text = fs::read_to_string(path).map_err(|source| ProblemError::Open {
        path: path.display().to_string(),
        source,
    })?;
    parse_problem_str(
        &text,
        format.unwrap_or_else(|| InputFormat::from_path(path)),
    )
}

pub fn parse_problem_str(text: &str, format: InputFormat) -> Result<Problem, ProblemError> {
    let problem = match format {
        InputFormat::Csv => parse_csv(text)?,
        InputFormat::Json => parse_json(text)?,
    };
    validate_problem(&problem.0, &problem.1)?;
    Ok(problem)
}

fn parse_csv(text: &str) -> Result<Problem, ProblemError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut records = reader
        .records()
        .enumerate()
        .filter_map(|(k, rec)| match rec {
            Ok(r) if r.iter().all(str::is_empty) => None,
            Ok(r) => Some(Ok((line_of(&r, k), r))),
            Err(source) => Some(Err(ProblemError::Csv { row: k + 1, source })),
        });

    let (_, header) = records.next().ok_or(ProblemError::MissingHeader)??;
    let ids: Vec<String> = header.iter().skip(1).map(str::to_string).collect();
    let n = ids.len();
    if n == 0 {
        return Err(ProblemError::NoCriteria);
    }

    let (dir_row, dirs) = records.next().ok_or(ProblemError::MissingDirections)??;
    check_width(dir_row, &dirs, n)?;
    let mut criteria = Vec::with_capacity(n);
    for (j, (id, token)) in ids.iter().zip(dirs.iter().skip(1)).enumerate() {
        let direction = token
            .parse::<Direction>()
            .map_err(|_| ProblemError::UnknownDirection {
                row: dir_row,
                column: j + 2,
                token: token.to_string(),
            })?;
        criteria.push(CriterionSpec::with_id(id.clone(), direction));
    }

    let mut alternatives = Vec::new();
    let mut values = Vec::new();
    for rec in records {
        let (row, rec) = rec?;
        check_width(row, &rec, n)?;
        alternatives.push(rec[0].to_string());
        let parsed = rec
            .iter()
            .skip(1)
            .enumerate()
            .map(|(j, cell)| {
                cell.parse::<f64>().map_err(|_| ProblemError::NotNumeric {
                    row,
                    column: j + 2,
                    value: cell.to_string(),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        values.push(parsed);
    }

    let matrix = DecisionMatrix::new(alternatives, criteria, values)?;
    Ok((matrix, RunConfig::default()))
}

fn line_of(record: &csv::StringRecord, index: usize) -> usize {
    record
        .position()
        .map(|p| p.line() as usize)
        .unwrap_or(index + 1)
}

fn check_width(row: usize, rec: &csv::StringRecord, n: usize) -> Result<(), ProblemError> {
    let got = rec.len().saturating_sub(1);
    if got != n {
        return Err(ProblemError::Ragged {
            row,
            expected: n,
            got,
        });
    }
    Ok(())
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonCriterion {
    id: String,
    label: Option<String>,
    direction: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonProblem {
    criteria: Vec<JsonCriterion>,
    alternatives: Vec<String>,
    values: Vec<Vec<f64>>,
    #[serde(default)]
    custom_sets: Vec<Vec<f64>>,
    iterations: Option<usize>,
    seed: Option<u64>,
}

fn parse_json(text: &str) -> Result<Problem, ProblemError> {
    let doc: JsonProblem = serde_json::from_str(text)?;
    let criteria = doc
        .criteria
        .into_iter()
        .enumerate()
        .map(|(index, c)| {
            let direction = c.direction.parse::<Direction>().map_err(|_| {
                ProblemError::UnknownJsonDirection {
                    index,
                    token: c.direction.clone(),
                }
            })?;
            let label = c.label.unwrap_or_else(|| c.id.clone());
            Ok(CriterionSpec::new(c.id, label, direction))
        })
        .collect::<Result<Vec<_>, ProblemError>>()?;
    let matrix = DecisionMatrix::new(doc.alternatives, criteria, doc.values)?;
    let defaults = RunConfig::default();
    let config = RunConfig {
        iterations: doc.iterations.unwrap_or(defaults.iterations),
        seed: doc.seed.unwrap_or(defaults.seed),
        custom_sets: doc.custom_sets,
        ..defaults
    };
    Ok((matrix, config))
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str = "alt,g1,g2\ndirection,MAX,min\na1,1,2\na2,3,4\n";

    #[test]
    fn csv_round_trip_shape() {
        let (m, config) = parse_problem_str(SMALL, InputFormat::Csv).unwrap();
        assert_eq!(m.alternatives(), &["a1", "a2"]);
        assert_eq!(m.directions(), vec![Direction::Benefit, Direction::Cost]);
        assert_eq!(m.rows(), &[vec![1.0, 2.0], vec![3.0, 4.0]]);
        assert_eq!(config, RunConfig::default());
    }

    #[test]
    fn ragged_row_reports_line() {
        let text = "alt,g1,g2,g3\ndirection,max,min,max\na1,1,2\n";
        let err = parse_problem_str(text, InputFormat::Csv).unwrap_err();
        assert_eq!(err.to_string(), "row 3: expected 3 values, got 2");
    }

    #[test]
    fn bad_tokens_carry_coordinates() {
        let err =
            parse_problem_str("alt,g1\ndirection,up\na1,1\na2,2\n", InputFormat::Csv).unwrap_err();
        assert!(matches!(
            err,
            ProblemError::UnknownDirection {
                row: 2,
                column: 2,
                ..
            }
        ));
        let err =
            parse_problem_str("alt,g1\ndirection,max\na1,1\na2,x\n", InputFormat::Csv).unwrap_err();
        assert_eq!(err.to_string(), "row 4, column 2: \"x\" is not a number");
    }

    #[test]
    fn blank_lines_keep_line_numbers() {
        let text = "alt,g1\n\ndirection,max\na1,1\na2\n";
        let err = parse_problem_str(text, InputFormat::Csv).unwrap_err();
        assert_eq!(err.to_string(), "row 5: expected 1 values, got 0");
    }

    #[test]
    fn structural_errors() {
        assert!(matches!(
            parse_problem_str("", InputFormat::Csv),
            Err(ProblemError::MissingHeader)
        ));
        assert!(matches!(
            parse_problem_str("alt,g1\n", InputFormat::Csv),
            Err(ProblemError::MissingDirections)
        ));
        assert!(matches!(
            parse_problem_str("alt\ndirection\n", InputFormat::Csv),
            Err(ProblemError::NoCriteria)
        ));
        assert!(matches!(
            parse_problem_str("alt,g1\ndirection,max\na1,1\n", InputFormat::Csv),
            Err(ProblemError::Invalid(_))
        ));
    }

    #[test]
    fn json_with_run_parameters() {
        let text = r#"{
            "criteria": [{"id": "g1", "direction": "Max"}, {"id": "g2", "label": "Cost", "direction": "min"}],
            "alternatives": ["x", "y"],
            "values": [[1, 2], [3, 4]],
            "custom_sets": [[1, 3]],
            "iterations": 5,
            "seed": 9
        }"#;
        let (m, config) = parse_problem_str(text, InputFormat::Json).unwrap();
        assert_eq!(m.criteria()[0].label, "g1");
        assert_eq!(m.criteria()[1].label, "Cost");
        assert_eq!(config.iterations, 5);
        assert_eq!(config.seed, 9);
        assert_eq!(config.custom_sets, vec![vec![1.0, 3.0]]);
    }

    #[test]
    fn json_errors() {
        let bad_dir = r#"{"criteria": [{"id": "g1", "direction": "up"}], "alternatives": ["x", "y"], "values": [[1], [2]]}"#;
        assert!(matches!(
            parse_problem_str(bad_dir, InputFormat::Json),
            Err(ProblemError::UnknownJsonDirection { index: 0, .. })
        ));
        let ragged = r#"{"criteria": [{"id": "g1", "direction": "max"}], "alternatives": ["x", "y"], "values": [[1], [2, 3]]}"#;
        assert!(matches!(
            parse_problem_str(ragged, InputFormat::Json),
            Err(ProblemError::Invalid(_))
        ));
        assert!(matches!(
            parse_problem_str("{", InputFormat::Json),
            Err(ProblemError::Json(_))
        ));
    }

    #[test]
    fn missing_file() {
        let err = parse_problem_path(Path::new("missing.csv"), None).unwrap_err();
        assert!(err.to_string().starts_with("cannot open missing.csv"));
    }

    #[test]
    fn format_from_extension() {
        assert_eq!(
            InputFormat::from_path(Path::new("p.JSON")),
            InputFormat::Json
        );
        assert_eq!(InputFormat::from_path(Path::new("p.csv")), InputFormat::Csv);
        assert_eq!("Json".parse::<InputFormat>(), Ok(InputFormat::Json));
    }
}
