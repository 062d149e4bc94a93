//! Table and summary files for a finished run, and reading them back.
//!
//! Files written under the output directory:
//!
//! | file                  | contents                                             |
//! |-----------------------|------------------------------------------------------|
//! | `weights.csv`         | one row per weight set, then `Lower` and `Upper`     |
//! | `weights_display.csv` | the same, rounded to 3 decimals                      |
//! | `rwm.csv`             | sampled weight vectors, one row per iteration        |
//! | `rwm_display.csv`     | the same, rounded to 3 decimals                      |
//! | `ranks.csv`           | rank of each alternative per iteration               |
//! | `closeness.csv`       | closeness of each alternative per iteration          |
//! | `summary.json`        | configuration, weights, bounds and the final ranking |
//!
//! Iterations are numbered from 1. Full-precision numbers use the shortest
//! representation that parses back to the same `f64`.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{CriterionSpec, FinalRanking, RunConfig, WeightBounds};
use crate::pipeline::RunReport;

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("cannot write {path}: {source}")]
    Write {
        path: String,
        #[source]
        source: io::Error,
    },
    #[error("cannot read {path}: {source}")]
    Read {
        path: String,
        #[source]
        source: io::Error,
    },
    #[error("{path}: {message}")]
    Malformed { path: String, message: String },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightRow {
    pub name: String,
    pub weights: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PositionEntry {
    pub alternative: String,
    pub position: usize,
    pub modal_score: usize,
}

/// Contents of `summary.json`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub seed: u64,
    pub iterations: usize,
    pub config: RunConfig,
    pub alternatives: Vec<String>,
    pub criteria: Vec<CriterionSpec>,
    pub weights: Vec<WeightRow>,
    pub bounds: WeightBounds,
    /// Final position of each alternative, in input order.
    pub positions: Vec<PositionEntry>,
    pub final_ranking: FinalRanking,
}

impl Summary {
    pub fn from_report(report: &RunReport) -> Self {
        let alternatives = report.matrix.alternatives().to_vec();
        let positions = alternatives
            .iter()
            .zip(&report.final_ranking.outcomes)
            .map(|(a, o)| PositionEntry {
                alternative: a.clone(),
                position: o.position,
                modal_score: o.modal_score,
            })
            .collect();
        Self {
            seed: report.config.seed,
            iterations: report.config.iterations,
            config: report.config.clone(),
            alternatives,
            criteria: report.matrix.criteria().to_vec(),
            weights: weight_rows(report),
            bounds: report.bounds.clone(),
            positions,
            final_ranking: report.final_ranking.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("summary serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

/// Weight sets followed by the `Lower` and `Upper` bound rows.
pub fn weight_rows(report: &RunReport) -> Vec<WeightRow> {
    let mut rows: Vec<WeightRow> = report
        .weight_sets
        .iter()
        .map(|s| WeightRow {
            name: s.source().label(),
            weights: s.weights().to_vec(),
        })
        .collect();
    rows.push(WeightRow {
        name: "Lower".into(),
        weights: report.bounds.lower().to_vec(),
    });
    rows.push(WeightRow {
        name: "Upper".into(),
        weights: report.bounds.upper().to_vec(),
    });
    rows
}

#[derive(Clone, Copy)]
enum Precision {
    Full,
    Display,
}

fn fmt_num(x: f64, p: Precision) -> String {
    match p {
        Precision::Full => format!("{x}"),
        Precision::Display => format!("{x:.3}"),
    }
}

fn csv_string(header: &[String], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 output")
}

fn labelled_header(first: &str, rest: &[String]) -> Vec<String> {
    std::iter::once(first.to_string())
        .chain(rest.iter().cloned())
        .collect()
}

fn numbered_rows<'a, T: Copy + 'a>(
    rows: &'a [Vec<T>],
    fmt: impl Fn(T) -> String + 'a,
) -> impl Iterator<Item = Vec<String>> + 'a {
    rows.iter().enumerate().map(move |(i, row)| {
        std::iter::once((i + 1).to_string())
            .chain(row.iter().map(|&x| fmt(x)))
            .collect()
    })
}

fn criterion_ids(report: &RunReport) -> Vec<String> {
    report
        .matrix
        .criteria()
        .iter()
        .map(|c| c.id.clone())
        .collect()
}

fn weights_csv(report: &RunReport, p: Precision) -> String {
    let header = labelled_header("weight", &criterion_ids(report));
    let rows = weight_rows(report).into_iter().map(|r| {
        std::iter::once(r.name)
            .chain(r.weights.iter().map(|&w| fmt_num(w, p)))
            .collect()
    });
    csv_string(&header, rows)
}

fn rwm_csv(report: &RunReport, p: Precision) -> String {
    let header = labelled_header("iteration", &criterion_ids(report));
    csv_string(&header, numbered_rows(report.rwm.rows(), |x| fmt_num(x, p)))
}

/// The CSV documents of a run, keyed by file name, in write order.
pub fn table_files(report: &RunReport) -> Vec<(&'static str, String)> {
    let alts = report.matrix.alternatives();
    vec![
        ("weights.csv", weights_csv(report, Precision::Full)),
        (
            "weights_display.csv",
            weights_csv(report, Precision::Display),
        ),
        ("rwm.csv", rwm_csv(report, Precision::Full)),
        ("rwm_display.csv", rwm_csv(report, Precision::Display)),
        (
            "ranks.csv",
            csv_string(
                &labelled_header("iteration", alts),
                numbered_rows(report.rank_matrix.ranks(), |r: usize| r.to_string()),
            ),
        ),
        (
            "closeness.csv",
            csv_string(
                &labelled_header("iteration", alts),
                numbered_rows(&report.closeness, |x| fmt_num(x, Precision::Full)),
            ),
        ),
        ("summary.json", Summary::from_report(report).to_json()),
    ]
}

pub(crate) fn write_file(path: &Path, contents: &str) -> Result<(), ReportError> {
    fs::write(path, contents).map_err(|source| ReportError::Write {
        path: path.display().to_string(),
        source,
    })
}

pub fn emit_tables(report: &RunReport, out_dir: &Path) -> Result<Vec<PathBuf>, ReportError> {
    fs::create_dir_all(out_dir).map_err(|source| ReportError::Write {
        path: out_dir.display().to_string(),
        source,
    })?;
    let mut written = Vec::new();
    for (name, contents) in table_files(report) {
        let path = out_dir.join(name);
        write_file(&path, &contents)?;
        written.push(path);
    }
    Ok(written)
}

/// Plain-text weight table with 3-decimal values.
pub fn format_weight_table(ids: &[String], rows: &[WeightRow]) -> String {
    let name_width = rows.iter().map(|r| r.name.len()).max().unwrap_or(0).max(11);
    let mut out = format!("{:<name_width$}", "Weight Name");
    for id in ids {
        out.push_str(&format!(" {id:>6}"));
    }
    out.push('\n');
    for r in rows {
        out.push_str(&format!("{:<name_width$}", r.name));
        for w in &r.weights {
            out.push_str(&format!(" {w:>6.3}"));
        }
        out.push('\n');
    }
    out
}

/// One `label: [position]` line per alternative.
pub fn format_rank_mode(alternatives: &[String], ranking: &FinalRanking) -> String {
    alternatives
        .iter()
        .zip(&ranking.outcomes)
        .map(|(a, o)| format!("{a}: [{}]\n", o.position))
        .collect()
}

fn read_text(path: &Path) -> Result<String, ReportError> {
    fs::read_to_string(path).map_err(|source| ReportError::Read {
        path: path.display().to_string(),
        source,
    })
}

/// Reads a numbered table written by [`emit_tables`], dropping the iteration column.
pub fn read_numbered_table(path: &Path) -> Result<Vec<Vec<f64>>, ReportError> {
    let text = read_text(path)?;
    let malformed = |message: String| ReportError::Malformed {
        path: path.display().to_string(),
        message,
    };
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for (k, rec) in reader.records().enumerate() {
        let rec = rec.map_err(|e| malformed(e.to_string()))?;
        let row = rec
            .iter()
            .skip(1)
            .map(|c| c.parse::<f64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| malformed(format!("data row {}: {e}", k + 1)))?;
        rows.push(row);
    }
    Ok(rows)
}

pub fn read_summary(path: &Path) -> Result<Summary, ReportError> {
    Summary::from_json(&read_text(path)?).map_err(|e| ReportError::Malformed {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}
