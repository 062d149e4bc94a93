//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 when the computation itself fails (for example
//! a degenerate problem), 2 for usage, input and I/O errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::charts::{emit_charts, ChartData};
use crate::model::{DecisionMatrix, RunConfig};
use crate::pipeline::{collect_weight_sets, run_pipeline, PipelineError};
use crate::problem::{parse_problem_path, InputFormat, ProblemError};
use crate::report::{emit_tables, format_rank_mode, format_weight_table, WeightRow};
use crate::sampling::compute_bounds;
use crate::topsis::topsis_run;

pub const EXIT_OK: i32 = 0;
pub const EXIT_COMPUTATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "ec-topsis",
    version,
    about = "Iterative random-weight TOPSIS ranking"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the Entropy, CRITIC and custom weights with the derived bounds
    Weights {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        sets: WeightSetArgs,
    },
    /// Run the full pipeline and write tables and charts
    Run {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        sets: WeightSetArgs,
        /// Number of sampled weight vectors [default: 10000, or the input file's value]
        #[arg(long)]
        iterations: Option<usize>,
        /// Sampling seed [default: 42, or the input file's value]
        #[arg(long)]
        seed: Option<u64>,
        /// Output directory
        #[arg(long, default_value = "ec-topsis-out")]
        out: PathBuf,
    },
    /// Redraw the charts of a previous run
    Plot {
        /// Output directory of a previous run, or its summary.json
        source: PathBuf,
        /// Where to write the SVG files [default: the run directory]
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rank once with a fixed weight vector
    Topsis {
        #[command(flatten)]
        input: InputArgs,
        /// Comma-separated weights, one per criterion
        #[arg(
            long,
            value_delimiter = ',',
            required = true,
            allow_negative_numbers = true
        )]
        weights: Vec<f64>,
    },
}

#[derive(Debug, Args)]
struct InputArgs {
    /// Problem file (CSV or JSON)
    input: PathBuf,
    /// Input format [default: from the file extension]
    #[arg(long)]
    format: Option<InputFormat>,
}

#[derive(Debug, Args)]
struct WeightSetArgs {
    /// Extra weight set as comma-separated values; may be repeated
    #[arg(long = "custom", value_parser = parse_weight_list)]
    custom: Vec<WeightList>,
    /// Leave Entropy weights out of the bounds
    #[arg(long)]
    no_entropy: bool,
    /// Leave CRITIC weights out of the bounds
    #[arg(long)]
    no_critic: bool,
}

#[derive(Clone, Debug)]
struct WeightList(Vec<f64>);

fn parse_weight_list(s: &str) -> Result<WeightList, String> {
    s.split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|e| format!("{t:?}: {e}")))
        .collect::<Result<Vec<_>, _>>()
        .map(WeightList)
}

struct Failure {
    code: i32,
    message: String,
}

impl From<ProblemError> for Failure {
    fn from(e: ProblemError) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: e.to_string(),
        }
    }
}

impl From<PipelineError> for Failure {
    fn from(e: PipelineError) -> Self {
        let code = match e {
            PipelineError::Invalid(_) => EXIT_USAGE,
            _ => EXIT_COMPUTATION,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<crate::report::ReportError> for Failure {
    fn from(e: crate::report::ReportError) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        // A closed stdout (`| head`) is not worth reporting.
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            return Failure {
                code: EXIT_OK,
                message: String::new(),
            };
        }
        Failure {
            code: EXIT_USAGE,
            message: e.to_string(),
        }
    }
}

fn computation(message: impl ToString) -> Failure {
    Failure {
        code: EXIT_COMPUTATION,
        message: message.to_string(),
    }
}

fn load(
    input: &InputArgs,
    sets: Option<&WeightSetArgs>,
) -> Result<(DecisionMatrix, RunConfig), Failure> {
    let (matrix, mut config) = parse_problem_path(&input.input, input.format)?;
    if let Some(sets) = sets {
        config
            .custom_sets
            .extend(sets.custom.iter().map(|w| w.0.clone()));
        config.use_entropy = !sets.no_entropy;
        config.use_critic = !sets.no_critic;
    }
    Ok((matrix, config))
}

fn ids(matrix: &DecisionMatrix) -> Vec<String> {
    matrix.criteria().iter().map(|c| c.id.clone()).collect()
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<(), Failure> {
    match cli.command {
        Command::Weights { input, sets } => {
            let (matrix, config) = load(&input, Some(&sets))?;
            let weight_sets = collect_weight_sets(&matrix, &config)?;
            let bounds = compute_bounds(&weight_sets).map_err(computation)?;
            let mut rows: Vec<WeightRow> = weight_sets
                .iter()
                .map(|s| WeightRow {
                    name: s.source().label(),
                    weights: s.weights().to_vec(),
                })
                .collect();
            rows.push(WeightRow {
                name: "Lower".into(),
                weights: bounds.lower().to_vec(),
            });
            rows.push(WeightRow {
                name: "Upper".into(),
                weights: bounds.upper().to_vec(),
            });
            write!(out, "{}", format_weight_table(&ids(&matrix), &rows))?;
        }
        Command::Run {
            input,
            sets,
            iterations,
            seed,
            out: out_dir,
        } => {
            let (matrix, mut config) = load(&input, Some(&sets))?;
            if let Some(t) = iterations {
                config.iterations = t;
            }
            if let Some(s) = seed {
                config.seed = s;
            }
            let report = run_pipeline(&matrix, &config)?;
            emit_tables(&report, &out_dir)?;
            emit_charts(&ChartData::from_report(&report), &out_dir)?;
            let rows = crate::report::weight_rows(&report);
            write!(out, "{}", format_weight_table(&ids(&matrix), &rows))?;
            writeln!(out)?;
            write!(
                out,
                "{}",
                format_rank_mode(matrix.alternatives(), &report.final_ranking)
            )?;
            writeln!(
                out,
                "\nwrote {} (seed {}, {} iterations)",
                out_dir.display(),
                config.seed,
                config.iterations
            )?;
        }
        Command::Plot {
            source,
            out: out_dir,
        } => {
            let data = ChartData::load(&source)?;
            let dir = match out_dir {
                Some(d) => d,
                None if source.is_dir() => source.clone(),
                None => source.parent().map(PathBuf::from).unwrap_or_default(),
            };
            for path in emit_charts(&data, &dir)? {
                writeln!(out, "{}", path.display())?;
            }
        }
        Command::Topsis { input, weights } => {
            let (matrix, _) = load(&input, None)?;
            let result = topsis_run(&matrix, &weights).map_err(computation)?;
            let mut order: Vec<usize> = (0..matrix.m()).collect();
            order.sort_by_key(|&i| result.ranks[i]);
            writeln!(out, "rank\talternative\tcloseness")?;
            for i in order {
                writeln!(
                    out,
                    "{}\t{}\t{:.6}",
                    result.ranks[i],
                    matrix.alternatives()[i],
                    result.closeness[i]
                )?;
            }
        }
    }
    Ok(())
}

/// Parses `args` (including the program name) and runs the chosen command.
pub fn run_cli<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    match execute(cli, out) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            if !f.message.is_empty() {
                let _ = writeln!(err, "error: {}", f.message);
            }
            f.code
        }
    }
}
