use std::fs;
use std::path::{Path, PathBuf};

use norm_inference::data::{load_ratings, RatingTable};
use norm_inference::models::{ModelKind, ParameterFile, QueryGrid, ScenarioSpec};

use crate::fail::{io, Failure};

/// A scenario file, or the name of a built-in scenario when no such file
/// exists.
pub fn scenario(arg: &str) -> Result<ScenarioSpec, Failure> {
    let path = Path::new(arg);
    if path.is_file() {
        return Ok(ScenarioSpec::from_json(&read(path)?)?);
    }
    match arg {
        "tray-return" => Ok(ScenarioSpec::tray_return()),
        "littering" => Ok(ScenarioSpec::littering()),
        _ => Err(Failure::Usage(format!(
            "no scenario file `{arg}` (built-in: tray-return, littering)"
        ))),
    }
}

pub fn scenarios(args: &[String]) -> Result<Vec<ScenarioSpec>, Failure> {
    let list: Vec<ScenarioSpec> = args.iter().map(|a| scenario(a)).collect::<Result<_, _>>()?;
    for (i, s) in list.iter().enumerate() {
        if list[..i].iter().any(|t| t.name == s.name) {
            return Err(Failure::Usage(format!("scenario `{}` given twice", s.name)));
        }
    }
    Ok(list)
}

pub fn ratings(path: &Path, scale_max: Option<f64>) -> Result<RatingTable, Failure> {
    load_ratings(path, scale_max).map_err(|e| Failure::Data(format!("{}: {e}", path.display())))
}

pub fn grid(path: Option<&Path>, scenario: &ScenarioSpec) -> Result<QueryGrid, Failure> {
    match path {
        Some(p) => QueryGrid::from_json(&read(p)?)
            .map_err(|e| Failure::Data(format!("{}: {e}", p.display()))),
        None => Ok(QueryGrid::default_for(scenario)),
    }
}

pub fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| io(path, e))
}

/// Writes `contents`, creating parent directories, and echoes the path.
pub fn write(path: &Path, contents: &str) -> Result<(), Failure> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir).map_err(|e| io(dir, e))?;
    }
    let mut text = contents.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    fs::write(path, text).map_err(|e| io(path, e))?;
    println!("wrote {}", path.display());
    Ok(())
}

pub fn params_path(root: &Path, scenario: &str, kind: ModelKind) -> PathBuf {
    root.join(scenario)
        .join("params")
        .join(format!("{}.json", kind.slug()))
}

pub fn load_params(path: &Path) -> Result<ParameterFile, Failure> {
    ParameterFile::from_json(&read(path)?)
        .map_err(|e| Failure::Data(format!("{}: {e}", path.display())))
}
