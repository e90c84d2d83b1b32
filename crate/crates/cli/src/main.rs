//! `norm-infer`: batch runs of calibration, inference, comparison and
//! sampling over the norm models.

mod commands;
mod fail;
mod files;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use norm_inference::data::AggregationMethod;
use norm_inference::models::ModelKind;

use crate::fail::Failure;

#[derive(Debug, Parser)]
#[command(
    name = "norm-infer",
    version,
    about = "Calibrate, query and compare intuitive causal models of norms"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print a model's nodes, edges and required parameters.
    Describe {
        #[arg(value_parser = parse_kind)]
        kind: ModelKind,
        #[arg(long, default_value = "tray-return")]
        scenario: String,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Write one parameter file per model and scenario.
    Calibrate {
        #[command(flatten)]
        data: DataArgs,
        #[arg(long, value_delimiter = ',', value_parser = parse_kind, default_value = "fc,je,dm,d-only,n-only")]
        models: Vec<ModelKind>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Evaluate the posterior grid for calibrated models.
    Infer {
        /// Scenario file or built-in name (repeatable).
        #[arg(long, required = true)]
        scenario: Vec<String>,
        #[arg(long, value_delimiter = ',', value_parser = parse_kind, default_value = "fc,je,dm,d-only,n-only")]
        models: Vec<ModelKind>,
        /// A single parameter file; the report goes to stdout.
        #[arg(long, conflicts_with = "out")]
        params: Option<PathBuf>,
        /// Directory holding `<scenario>/params/` from `calibrate`.
        #[arg(long, required_unless_present = "params")]
        out: Option<PathBuf>,
        /// Also write the empirical grid from these ratings.
        #[arg(long)]
        ratings: Option<PathBuf>,
        #[arg(long)]
        grid: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long, value_enum, default_value_t = Aggregate::Mean)]
        aggregate: Aggregate,
        #[arg(long)]
        scale_max: Option<f64>,
    },
    /// Correlate model posteriors with empirical posterior judgments.
    Compare {
        #[command(flatten)]
        data: DataArgs,
        #[arg(long, value_delimiter = ',', value_parser = parse_kind, default_value = "fc,je,dm,d-only,n-only")]
        models: Vec<ModelKind>,
        /// Read parameter files from this `calibrate` output instead of
        /// calibrating in memory.
        #[arg(long)]
        params: Option<PathBuf>,
        #[arg(long)]
        grid: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Forward-sample a calibrated model and summarize the grid by rejection.
    Sample {
        #[arg(long, value_parser = parse_kind)]
        model: ModelKind,
        #[arg(long)]
        scenario: String,
        /// Parameter file; defaults to `<out>/<scenario>/params/<model>.json`.
        #[arg(long)]
        params: Option<PathBuf>,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        count: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        grid: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Simulate a rating study from the reference FC parameters.
    Synth {
        #[arg(long, default_values_t = ["tray-return".to_string(), "littering".to_string()])]
        scenario: Vec<String>,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 0.15)]
        noise_sd: f64,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Args)]
struct DataArgs {
    #[arg(long)]
    ratings: PathBuf,
    /// Scenario file or built-in name (repeatable).
    #[arg(long, required = true)]
    scenario: Vec<String>,
    #[arg(long, value_enum, default_value_t = Aggregate::Mean)]
    aggregate: Aggregate,
    /// Overrides the `# scale_max=` declaration of the ratings file.
    #[arg(long)]
    scale_max: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Aggregate {
    Mean,
    Median,
}

impl From<Aggregate> for AggregationMethod {
    fn from(a: Aggregate) -> Self {
        match a {
            Aggregate::Mean => AggregationMethod::Mean,
            Aggregate::Median => AggregationMethod::Median,
        }
    }
}

fn parse_kind(s: &str) -> Result<ModelKind, String> {
    s.parse()
        .map_err(|e: norm_inference::ModelError| e.to_string())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Describe {
            kind,
            scenario,
            format,
        } => commands::describe(kind, &scenario, format),
        Command::Calibrate { data, models, out } => commands::calibrate(&data, &models, &out),
        Command::Infer {
            scenario,
            models,
            params,
            out,
            ratings,
            grid,
            format,
            aggregate,
            scale_max,
        } => commands::infer(commands::InferConfig {
            scenarios: &scenario,
            models: &models,
            params: params.as_deref(),
            out: out.as_deref(),
            ratings: ratings.as_deref(),
            grid: grid.as_deref(),
            format,
            aggregate: aggregate.into(),
            scale_max,
        }),
        Command::Compare {
            data,
            models,
            params,
            grid,
            out,
        } => commands::compare(&data, &models, params.as_deref(), grid.as_deref(), &out),
        Command::Sample {
            model,
            scenario,
            params,
            count,
            seed,
            grid,
            out,
        } => commands::sample(commands::SampleConfig {
            kind: model,
            scenario: &scenario,
            params: params.as_deref(),
            count: count as usize,
            seed,
            grid: grid.as_deref(),
            out: &out,
        }),
        Command::Synth {
            scenario,
            seed,
            noise_sd,
            out,
        } => commands::synth(&scenario, seed, noise_sd, &out),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if let Some(message) = f.message() {
                eprintln!("error: {message}");
            }
            ExitCode::from(f.code())
        }
    }
}
