//! SVG charts for a run.
//!
//! * `figure2.svg`: box plot of sampled weights per criterion
//! * `figure3.svg`: how often each alternative held each rank
//! * `figure4.svg`: box plot of closeness per alternative
//! * `figure5.svg`: final ranking, bars ordered by position, height = modal score
//!
//! Every chart is 960×540 with a 70px left, 20px right, 50px top and 80px
//! bottom margin. Boxes span the quartiles (linear interpolation between order
//! statistics) with the median drawn across them and whiskers to the minimum
//! and maximum. Coordinates are printed with two decimals, so a given input
//! always produces the same bytes.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::aggregate::{rank_frequency, rank_matrix_from_rows};
use crate::pipeline::RunReport;
use crate::report::{read_numbered_table, read_summary, write_file, ReportError};

const WIDTH: f64 = 960.0;
const HEIGHT: f64 = 540.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 50.0;
const BOTTOM: f64 = 80.0;
const Y_TICKS: usize = 5;
const PALETTE: [&str; 8] = [
    "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948", "#b07aa1", "#9c755f",
];

/// Five-number summary of a sample.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoxStats {
    pub min: f64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub max: f64,
}

impl BoxStats {
    /// `None` for an empty sample.
    pub fn from_samples(samples: &[f64]) -> Option<Self> {
        if samples.is_empty() {
            return None;
        }
        let mut s = samples.to_vec();
        s.sort_by(f64::total_cmp);
        let q = |p: f64| {
            let h = p * (s.len() - 1) as f64;
            let lo = h.floor() as usize;
            let hi = (lo + 1).min(s.len() - 1);
            s[lo] + (h - lo as f64) * (s[hi] - s[lo])
        };
        Some(Self {
            min: s[0],
            q1: q(0.25),
            median: q(0.5),
            q3: q(0.75),
            max: s[s.len() - 1],
        })
    }

    pub fn iqr(&self) -> f64 {
        self.q3 - self.q1
    }

    pub fn range(&self) -> f64 {
        self.max - self.min
    }
}

/// Everything the four charts need, independent of where it came from.
#[derive(Clone, Debug, PartialEq)]
pub struct ChartData {
    pub criteria: Vec<String>,
    pub alternatives: Vec<String>,
    /// Sampled weights per criterion.
    pub weight_columns: Vec<Vec<f64>>,
    /// `rank_counts[a][r - 1]`.
    pub rank_counts: Vec<Vec<usize>>,
    /// Closeness per alternative.
    pub closeness_columns: Vec<Vec<f64>>,
    /// Alternative indices from first to last position.
    pub order: Vec<usize>,
    pub modal_scores: Vec<usize>,
}

fn transpose(rows: &[Vec<f64>], width: usize) -> Vec<Vec<f64>> {
    (0..width)
        .map(|j| rows.iter().map(|r| r[j]).collect())
        .collect()
}

impl ChartData {
    pub fn from_report(report: &RunReport) -> Self {
        let fr = &report.final_ranking;
        Self {
            criteria: report
                .matrix
                .criteria()
                .iter()
                .map(|c| c.id.clone())
                .collect(),
            alternatives: report.matrix.alternatives().to_vec(),
            weight_columns: transpose(report.rwm.rows(), report.matrix.n()),
            rank_counts: rank_frequency(&report.rank_matrix),
            closeness_columns: transpose(&report.closeness, report.matrix.m()),
            order: fr.order.clone(),
            modal_scores: fr.outcomes.iter().map(|o| o.modal_score).collect(),
        }
    }

    /// Rebuilds chart inputs from the files of a previous run.
    ///
    /// `path` is either the output directory or its `summary.json`.
    pub fn load(path: &Path) -> Result<Self, ReportError> {
        let dir = if path.is_dir() {
            path
        } else {
            path.parent().unwrap_or(Path::new("."))
        };
        let summary = read_summary(&dir.join("summary.json"))?;
        let malformed = |file: &str, message: String| ReportError::Malformed {
            path: dir.join(file).display().to_string(),
            message,
        };
        let n = summary.criteria.len();
        let m = summary.alternatives.len();

        let rwm = read_numbered_table(&dir.join("rwm.csv"))?;
        if rwm.iter().any(|r| r.len() != n) {
            return Err(malformed("rwm.csv", format!("expected {n} columns")));
        }
        let closeness = read_numbered_table(&dir.join("closeness.csv"))?;
        if closeness.iter().any(|r| r.len() != m) {
            return Err(malformed("closeness.csv", format!("expected {m} columns")));
        }
        let ranks: Vec<Vec<usize>> = read_numbered_table(&dir.join("ranks.csv"))?
            .into_iter()
            .map(|r| r.into_iter().map(|x| x as usize).collect())
            .collect();
        let rm = rank_matrix_from_rows(ranks).map_err(|e| malformed("ranks.csv", e.to_string()))?;
        if rm.alternatives() != m {
            return Err(malformed("ranks.csv", format!("expected {m} columns")));
        }

        Ok(Self {
            criteria: summary.criteria.iter().map(|c| c.id.clone()).collect(),
            alternatives: summary.alternatives.clone(),
            weight_columns: transpose(&rwm, n),
            rank_counts: rank_frequency(&rm),
            closeness_columns: transpose(&closeness, m),
            order: summary.final_ranking.order.clone(),
            modal_scores: summary
                .final_ranking
                .outcomes
                .iter()
                .map(|o| o.modal_score)
                .collect(),
        })
    }

    pub fn weight_stats(&self) -> Vec<BoxStats> {
        self.weight_columns
            .iter()
            .filter_map(|c| BoxStats::from_samples(c))
            .collect()
    }

    pub fn closeness_stats(&self) -> Vec<BoxStats> {
        self.closeness_columns
            .iter()
            .filter_map(|c| BoxStats::from_samples(c))
            .collect()
    }
}

struct Frame {
    y_max: f64,
    slots: usize,
}

impl Frame {
    fn plot_w() -> f64 {
        WIDTH - LEFT - RIGHT
    }

    fn plot_h() -> f64 {
        HEIGHT - TOP - BOTTOM
    }

    fn y(&self, v: f64) -> f64 {
        TOP + Self::plot_h() * (1.0 - v / self.y_max)
    }

    fn slot_w(&self) -> f64 {
        Self::plot_w() / self.slots as f64
    }

    fn slot_center(&self, k: usize) -> f64 {
        LEFT + self.slot_w() * (k as f64 + 0.5)
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

fn open_svg(
    out: &mut String,
    title: &str,
    frame: &Frame,
    labels: &[String],
    tick_fmt: fn(f64) -> String,
) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(
        out,
        r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    );
    let _ = writeln!(
        out,
        r#"<text x="{:.2}" y="28" text-anchor="middle" font-size="16">{}</text>"#,
        WIDTH / 2.0,
        escape(title)
    );
    let bottom = TOP + Frame::plot_h();
    for k in 0..=Y_TICKS {
        let v = frame.y_max * k as f64 / Y_TICKS as f64;
        let y = frame.y(v);
        let _ = writeln!(
            out,
            r##"<line x1="{LEFT:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="#dddddd"/>"##,
            WIDTH - RIGHT
        );
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
            LEFT - 6.0,
            y + 4.0,
            tick_fmt(v)
        );
    }
    let _ = writeln!(
        out,
        r#"<line x1="{LEFT:.2}" y1="{TOP:.2}" x2="{LEFT:.2}" y2="{bottom:.2}" stroke="black"/>"#
    );
    let _ = writeln!(
        out,
        r#"<line x1="{LEFT:.2}" y1="{bottom:.2}" x2="{:.2}" y2="{bottom:.2}" stroke="black"/>"#,
        WIDTH - RIGHT
    );
    for (k, label) in labels.iter().enumerate() {
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            frame.slot_center(k),
            bottom + 20.0,
            escape(label)
        );
    }
}

fn close_svg(out: &mut String) {
    out.push_str("</svg>\n");
}

fn tick3(v: f64) -> String {
    format!("{v:.3}")
}

fn tick_int(v: f64) -> String {
    format!("{}", v.round() as i64)
}

fn nice_max(v: f64) -> f64 {
    if v > 0.0 {
        v * 1.1
    } else {
        1.0
    }
}

fn boxplot(title: &str, labels: &[String], stats: &[BoxStats], y_max: f64) -> String {
    let frame = Frame {
        y_max,
        slots: labels.len().max(1),
    };
    let mut out = String::new();
    open_svg(&mut out, title, &frame, labels, tick3);
    let half = frame.slot_w() * 0.3;
    for (k, s) in stats.iter().enumerate() {
        let cx = frame.slot_center(k);
        let color = PALETTE[k % PALETTE.len()];
        let (x0, x1) = (cx - half, cx + half);
        let _ = writeln!(
            out,
            r#"<g class="box" data-label="{}">"#,
            escape(&labels[k])
        );
        let _ = writeln!(
            out,
            r#"<line x1="{cx:.2}" y1="{:.2}" x2="{cx:.2}" y2="{:.2}" stroke="black"/>"#,
            frame.y(s.max),
            frame.y(s.q3)
        );
        let _ = writeln!(
            out,
            r#"<line x1="{cx:.2}" y1="{:.2}" x2="{cx:.2}" y2="{:.2}" stroke="black"/>"#,
            frame.y(s.q1),
            frame.y(s.min)
        );
        for v in [s.min, s.max] {
            let y = frame.y(v);
            let _ = writeln!(
                out,
                r#"<line x1="{:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="black"/>"#,
                cx - half / 2.0,
                cx + half / 2.0
            );
        }
        let _ = writeln!(
            out,
            r#"<rect x="{x0:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="{color}" fill-opacity="0.6" stroke="black"/>"#,
            frame.y(s.q3),
            x1 - x0,
            frame.y(s.q1) - frame.y(s.q3)
        );
        let ym = frame.y(s.median);
        let _ = writeln!(
            out,
            r#"<line x1="{x0:.2}" y1="{ym:.2}" x2="{x1:.2}" y2="{ym:.2}" stroke="black" stroke-width="2"/>"#
        );
        out.push_str("</g>\n");
    }
    close_svg(&mut out);
    out
}

pub fn weight_boxplot_svg(data: &ChartData) -> String {
    let stats = data.weight_stats();
    let y_max = nice_max(stats.iter().map(|s| s.max).fold(0.0, f64::max));
    boxplot(
        "Sampled weight range per criterion",
        &data.criteria,
        &stats,
        y_max,
    )
}

pub fn closeness_boxplot_svg(data: &ChartData) -> String {
    boxplot(
        "Closeness per alternative",
        &data.alternatives,
        &data.closeness_stats(),
        1.0,
    )
}

pub fn rank_frequency_svg(data: &ChartData) -> String {
    let m = data.alternatives.len();
    let max_count = data
        .rank_counts
        .iter()
        .flatten()
        .copied()
        .max()
        .unwrap_or(0);
    let frame = Frame {
        y_max: (max_count.max(1)) as f64,
        slots: m.max(1),
    };
    let mut out = String::new();
    open_svg(
        &mut out,
        "Rank frequency per alternative",
        &frame,
        &data.alternatives,
        tick_int,
    );
    let bar_w = frame.slot_w() * 0.8 / m.max(1) as f64;
    let bottom = TOP + Frame::plot_h();
    for (a, counts) in data.rank_counts.iter().enumerate() {
        let start = frame.slot_center(a) - bar_w * m as f64 / 2.0;
        for (r, &count) in counts.iter().enumerate() {
            let y = frame.y(count as f64);
            let _ = writeln!(
                out,
                r#"<rect class="bar" data-alternative="{}" data-rank="{}" data-count="{count}" x="{:.2}" y="{y:.2}" width="{bar_w:.2}" height="{:.2}" fill="{}"/>"#,
                escape(&data.alternatives[a]),
                r + 1,
                start + bar_w * r as f64,
                bottom - y,
                PALETTE[r % PALETTE.len()]
            );
        }
    }
    for r in 0..m {
        let _ = writeln!(
            out,
            r#"<rect x="{:.2}" y="{:.2}" width="10" height="10" fill="{}"/><text x="{:.2}" y="{:.2}">rank {}</text>"#,
            LEFT + 80.0 * r as f64,
            HEIGHT - 30.0,
            PALETTE[r % PALETTE.len()],
            LEFT + 80.0 * r as f64 + 14.0,
            HEIGHT - 21.0,
            r + 1
        );
    }
    close_svg(&mut out);
    out
}

pub fn final_ranking_svg(data: &ChartData) -> String {
    let m = data.alternatives.len();
    let frame = Frame {
        y_max: m.max(1) as f64,
        slots: m.max(1),
    };
    let labels: Vec<String> = data
        .order
        .iter()
        .enumerate()
        .map(|(pos, &a)| format!("{} ({})", data.alternatives[a], pos + 1))
        .collect();
    let mut out = String::new();
    open_svg(
        &mut out,
        "Final ranking by modal score",
        &frame,
        &labels,
        tick_int,
    );
    let bar_w = frame.slot_w() * 0.6;
    let bottom = TOP + Frame::plot_h();
    for (pos, &a) in data.order.iter().enumerate() {
        let score = data.modal_scores[a];
        let y = frame.y(score as f64);
        let _ = writeln!(
            out,
            r#"<rect class="bar" data-alternative="{}" data-position="{}" data-score="{score}" x="{:.2}" y="{y:.2}" width="{bar_w:.2}" height="{:.2}" fill="{}"/>"#,
            escape(&data.alternatives[a]),
            pos + 1,
            frame.slot_center(pos) - bar_w / 2.0,
            bottom - y,
            PALETTE[0]
        );
    }
    close_svg(&mut out);
    out
}

/// The four chart documents, keyed by file name.
pub fn chart_files(data: &ChartData) -> Vec<(&'static str, String)> {
    vec![
        ("figure2.svg", weight_boxplot_svg(data)),
        ("figure3.svg", rank_frequency_svg(data)),
        ("figure4.svg", closeness_boxplot_svg(data)),
        ("figure5.svg", final_ranking_svg(data)),
    ]
}

pub fn emit_charts(data: &ChartData, out_dir: &Path) -> Result<Vec<PathBuf>, ReportError> {
    std::fs::create_dir_all(out_dir).map_err(|source| ReportError::Write {
        path: out_dir.display().to_string(),
        source,
    })?;
    let mut written = Vec::new();
    for (name, svg) in chart_files(data) {
        let path = out_dir.join(name);
        write_file(&path, &svg)?;
        written.push(path);
    }
    Ok(written)
}
