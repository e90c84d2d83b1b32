use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use norm_inference::bayes::{eliminate_posterior, forward_sample};
use norm_inference::data::{
    aggregate_with, calibrate as calibrate_kind, calibration_sources, empirical_posteriors,
    provenance, AggregatedJudgments, AggregationMethod, RatingTable,
};
use norm_inference::models::{
    build_structure, required_keys, CalibratedModel, ModelKind, ParameterFile, PosteriorReport,
    QueryGrid, ScenarioSpec,
};
use norm_inference::stats::{compare_models, prepare_input, ScenarioInput};
use norm_inference::synth::{reference_parameters, simulate_ratings, SynthConfig};
use norm_inference::SCHEMA_VERSION;
use serde::Serialize;

use crate::fail::Failure;
use crate::files;
use crate::{DataArgs, Format};

fn model_error(scenario: &str, kind: ModelKind, message: impl std::fmt::Display) {
    eprintln!("error: {scenario}/{}: {message}", kind.slug());
}

fn judgments(
    table: &RatingTable,
    scenario: &ScenarioSpec,
    method: AggregationMethod,
) -> Result<AggregatedJudgments, Failure> {
    let records = table.scenario(&scenario.name);
    if records.is_empty() {
        return Err(Failure::Data(format!(
            "no ratings for scenario `{}`",
            scenario.name
        )));
    }
    Ok(aggregate_with(&records, table.scale_max, method)?)
}

pub fn describe(kind: ModelKind, scenario: &str, format: Format) -> Result<(), Failure> {
    let scenario = files::scenario(scenario)?;
    let structure = build_structure(kind, &scenario);
    let keys = required_keys(&structure)?;
    let nodes: Vec<&str> = structure
        .variables()
        .iter()
        .map(|v| v.name.as_str())
        .collect();
    let edges = structure.edges();
    match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Description<'a> {
                schema_version: u32,
                model_kind: ModelKind,
                scenario: &'a str,
                nodes: &'a [&'a str],
                edges: Vec<[&'a str; 2]>,
                parameters: Vec<String>,
                calibration: BTreeMap<String, &'static str>,
            }
            let doc = Description {
                schema_version: SCHEMA_VERSION,
                model_kind: kind,
                scenario: &scenario.name,
                nodes: &nodes,
                edges: edges.iter().map(|&(p, c)| [p, c]).collect(),
                parameters: keys.iter().map(ToString::to_string).collect(),
                calibration: calibration_sources(kind)
                    .iter()
                    .map(|(c, what)| (c.to_string(), *what))
                    .collect(),
            };
            println!(
                "{}",
                serde_json::to_string_pretty(&doc).expect("serializes")
            );
        }
        Format::Csv | Format::Table => {
            let mut out = format!(
                "{} ({}): {} nodes, {} edges\n",
                kind.label(),
                scenario.name,
                nodes.len(),
                edges.len()
            );
            let _ = writeln!(out, "nodes: {}", nodes.join(" "));
            let _ = writeln!(out, "edges:");
            for (p, c) in &edges {
                let _ = writeln!(out, "  {p} -> {c}");
            }
            let _ = writeln!(out, "parameters ({}):", keys.len());
            for k in &keys {
                let condition = k.condition().map_or_else(String::new, |c| c.to_string());
                let _ = writeln!(out, "  {:<16} {condition}", k.to_string());
            }
            let _ = writeln!(out, "calibration:");
            for (c, what) in calibration_sources(kind) {
                let _ = writeln!(out, "  condition {c}: {what}");
            }
            print!("{out}");
        }
    }
    Ok(())
}

pub fn calibrate(data: &DataArgs, models: &[ModelKind], out: &Path) -> Result<(), Failure> {
    let table = files::ratings(&data.ratings, data.scale_max)?;
    let scenarios = files::scenarios(&data.scenario)?;
    let mut failed = 0;
    let mut written = 0;
    for scenario in &scenarios {
        let agg = judgments(&table, scenario, data.aggregate.into())?;
        for &kind in models {
            match calibrate_kind(kind, scenario, &agg) {
                Ok(parameters) => {
                    let file = ParameterFile {
                        schema_version: SCHEMA_VERSION,
                        model_kind: kind,
                        scenario: scenario.name.clone(),
                        provenance: provenance(kind, &agg),
                        parameters,
                    };
                    files::write(
                        &files::params_path(out, &scenario.name, kind),
                        &file.to_json(),
                    )?;
                    written += 1;
                }
                Err(e) => {
                    model_error(&scenario.name, kind, e);
                    failed += 1;
                }
            }
        }
    }
    outcome(written, failed)
}

fn outcome(written: usize, failed: usize) -> Result<(), Failure> {
    match (written, failed) {
        (_, 0) => Ok(()),
        (0, _) => Err(Failure::Data("every model failed".into())),
        _ => Err(Failure::Partial),
    }
}

fn render(report: &PosteriorReport, format: Format) -> String {
    match format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
        Format::Table => report.to_table(),
    }
}

fn extension(format: Format) -> &'static str {
    match format {
        Format::Json => "json",
        Format::Csv => "csv",
        Format::Table => "txt",
    }
}

pub struct InferConfig<'a> {
    pub scenarios: &'a [String],
    pub models: &'a [ModelKind],
    pub params: Option<&'a Path>,
    pub out: Option<&'a Path>,
    pub ratings: Option<&'a Path>,
    pub grid: Option<&'a Path>,
    pub format: Format,
    pub aggregate: AggregationMethod,
    pub scale_max: Option<f64>,
}

pub fn infer(config: InferConfig<'_>) -> Result<(), Failure> {
    let scenarios = files::scenarios(config.scenarios)?;
    if let Some(path) = config.params {
        let [scenario] = scenarios.as_slice() else {
            return Err(Failure::Usage(
                "--params takes exactly one --scenario".into(),
            ));
        };
        let file = files::load_params(path)?;
        if file.scenario != scenario.name {
            return Err(Failure::Data(format!(
                "{}: parameters are for scenario `{}`, not `{}`",
                path.display(),
                file.scenario,
                scenario.name
            )));
        }
        let grid = files::grid(config.grid, scenario)?;
        let model =
            CalibratedModel::new(file.model_kind, scenario, &file.parameters, file.provenance)?;
        print!(
            "{}",
            with_newline(render(&model.report(&grid)?, config.format))
        );
        return Ok(());
    }

    let out = config.out.expect("clap requires --out without --params");
    let table = config
        .ratings
        .map(|p| files::ratings(p, config.scale_max))
        .transpose()?;
    let (mut written, mut failed) = (0, 0);
    for scenario in &scenarios {
        let grid = files::grid(config.grid, scenario)?;
        let dir = out.join(&scenario.name).join("posteriors");
        let ext = extension(config.format);
        for &kind in config.models {
            let report = files::load_params(&files::params_path(out, &scenario.name, kind))
                .and_then(|file| {
                    let model =
                        CalibratedModel::new(kind, scenario, &file.parameters, file.provenance)?;
                    Ok(model.report(&grid)?)
                });
            match report {
                Ok(report) => {
                    files::write(
                        &dir.join(format!("{}.{ext}", kind.slug())),
                        &render(&report, config.format),
                    )?;
                    written += 1;
                }
                Err(f) => {
                    model_error(&scenario.name, kind, f.message().unwrap_or("failed"));
                    failed += 1;
                }
            }
        }
        if let Some(table) = &table {
            let agg = judgments(table, scenario, config.aggregate)?;
            let report = empirical_posteriors(&agg, &grid);
            files::write(
                &dir.join(format!("empirical.{ext}")),
                &render(&report, config.format),
            )?;
        }
    }
    outcome(written, failed)
}

fn with_newline(mut s: String) -> String {
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

pub fn compare(
    data: &DataArgs,
    models: &[ModelKind],
    params: Option<&Path>,
    grid: Option<&Path>,
    out: &Path,
) -> Result<(), Failure> {
    let table = files::ratings(&data.ratings, data.scale_max)?;
    let scenarios = files::scenarios(&data.scenario)?;
    let mut inputs: Vec<ScenarioInput> = Vec::new();
    for scenario in &scenarios {
        let agg = judgments(&table, scenario, data.aggregate.into())?;
        let grid = files::grid(grid, scenario)?;
        let mut input = prepare_input(models, scenario, &agg, &grid);
        if let Some(root) = params {
            for &kind in models {
                let path = files::params_path(root, &scenario.name, kind);
                let loaded = files::load_params(&path)
                    .map(|f| (f.parameters, f.provenance))
                    .map_err(|f| f.message().unwrap_or("failed").to_string());
                input.calibrations.insert(kind, loaded);
            }
        }
        inputs.push(input);
    }

    let result = compare_models(models, &inputs);
    files::write(&out.join("comparison.json"), &result.to_json())?;
    files::write(&out.join("comparison.txt"), &result.to_table())?;
    files::write(&out.join("residuals.csv"), &result.residuals_csv())?;
    print!("{}", result.to_table());
    for w in &result.warnings {
        eprintln!("warning: {w}");
    }
    // Too few shared cells is a warning; a model that could not be run at
    // all is a partial failure.
    let broken = result
        .scenarios
        .iter()
        .flat_map(|s| &s.models)
        .filter(|m| m.cells_defined == 0)
        .count();
    let total: usize = result.scenarios.iter().map(|s| s.models.len()).sum();
    outcome(total - broken, broken)
}

pub struct SampleConfig<'a> {
    pub kind: ModelKind,
    pub scenario: &'a str,
    pub params: Option<&'a Path>,
    pub count: usize,
    pub seed: u64,
    pub grid: Option<&'a Path>,
    pub out: &'a Path,
}

#[derive(Serialize)]
struct SampleSummary<'a> {
    schema_version: u32,
    model_kind: ModelKind,
    scenario: &'a str,
    seed: u64,
    count: usize,
    entries: Vec<SampleEntry>,
}

#[derive(Serialize)]
struct SampleEntry {
    query: String,
    /// Rejection estimate; absent when no sample matched the evidence or
    /// the target is not in the model.
    estimate: Option<f64>,
    accepted: usize,
    exact: Option<f64>,
}

pub fn sample(config: SampleConfig<'_>) -> Result<(), Failure> {
    let scenario = files::scenario(config.scenario)?;
    let path = config.params.map_or_else(
        || files::params_path(config.out, &scenario.name, config.kind),
        Path::to_path_buf,
    );
    let file = files::load_params(&path)?;
    if file.model_kind != config.kind || file.scenario != scenario.name {
        return Err(Failure::Data(format!(
            "{}: parameters are for {} on `{}`",
            path.display(),
            file.model_kind,
            file.scenario
        )));
    }
    let grid: QueryGrid = files::grid(config.grid, &scenario)?;
    let model = CalibratedModel::new(config.kind, &scenario, &file.parameters, file.provenance)?;
    let samples = forward_sample(&model.network, config.seed, config.count)?;

    let mut entries = Vec::with_capacity(grid.len());
    for q in grid.queries() {
        let key = q.key();
        let target = key.target().name();
        let evidence = key.evidence();
        let (estimate, accepted) = if model.network.structure().contains(target)
            && evidence
                .iter()
                .all(|(v, _)| model.network.structure().contains(v))
        {
            match samples.estimate(target, &evidence) {
                Ok(e) => (Some(e.distribution.p_true()), e.accepted),
                Err(_) => (None, 0),
            }
        } else {
            (None, 0)
        };
        let exact = eliminate_posterior(&model.network, target, &evidence)
            .ok()
            .map(|d| d.p_true());
        entries.push(SampleEntry {
            query: key.to_string(),
            estimate,
            accepted,
            exact,
        });
    }

    let mut csv = samples.variables().join(",");
    csv.push('\n');
    for &state in samples.packed() {
        for i in 0..samples.variables().len() {
            if i > 0 {
                csv.push(',');
            }
            csv.push(if state >> i & 1 == 1 { '1' } else { '0' });
        }
        csv.push('\n');
    }
    let dir = config.out.join(&scenario.name).join("samples");
    files::write(&dir.join(format!("{}.csv", config.kind.slug())), &csv)?;
    let summary = SampleSummary {
        schema_version: SCHEMA_VERSION,
        model_kind: config.kind,
        scenario: &scenario.name,
        seed: config.seed,
        count: config.count,
        entries,
    };
    files::write(
        &dir.join(format!("{}-summary.json", config.kind.slug())),
        &serde_json::to_string_pretty(&summary).expect("serializes"),
    )
}

pub fn synth(scenarios: &[String], seed: u64, noise_sd: f64, out: &Path) -> Result<(), Failure> {
    let scenarios = files::scenarios(scenarios)?;
    let mut combined: Option<RatingTable> = None;
    for (i, scenario) in scenarios.iter().enumerate() {
        let params = reference_parameters(&scenario.name).ok_or_else(|| {
            Failure::Usage(format!(
                "no reference parameters for scenario `{}`",
                scenario.name
            ))
        })?;
        let truth = CalibratedModel::new(ModelKind::Fc, scenario, &params, "reference")?;
        let config = SynthConfig {
            noise_sd,
            ..SynthConfig::for_scenario(scenario, seed.wrapping_add(i as u64))
        };
        let table = simulate_ratings(&truth.network, scenario, &config)?;
        match &mut combined {
            Some(c) => c.records.extend(table.records),
            None => combined = Some(table),
        }
    }
    let table = combined.ok_or_else(|| Failure::Usage("no scenario given".into()))?;
    files::write(out, &table.to_csv())
}
