use std::fs;
use std::path::Path;

use freepick::herglotz::HerglotzModel;
use freepick::nevanlinna::RepresentationSpec;
use freepick::wire::{matrix_from_wire, WireMatrix};
use freepick::{CMat, Error, FreeSeries, MatrixTuple};
use serde_json::{json, Value};

use crate::commands::Outcome;
use crate::RunArgs;

pub type CliResult<T> = Result<T, String>;

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn tagged<T>(path: &Path, r: Result<T, Error>) -> CliResult<T> {
    r.map_err(|e| format!("{}: {e}", path.display()))
}

pub fn required<'a, T>(value: &'a Option<T>, flag: &str) -> CliResult<&'a T> {
    value.as_ref().ok_or_else(|| format!("missing required flag --{flag}"))
}

pub fn parse_series(path: &Path) -> CliResult<FreeSeries> {
    tagged(path, FreeSeries::from_json_str(&read(path)?))
}

pub fn parse_tuple(path: &Path) -> CliResult<MatrixTuple> {
    tagged(path, freepick::wire::tuple_from_json(&read(path)?))
}

pub fn parse_matrix(path: &Path) -> CliResult<CMat> {
    let wire: WireMatrix = serde_json::from_str(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))?;
    tagged(path, matrix_from_wire(&wire, "$"))
}

pub fn parse_spec(path: &Path) -> CliResult<RepresentationSpec> {
    tagged(path, RepresentationSpec::from_json_str(&read(path)?))
}

pub fn parse_model(path: &Path) -> CliResult<HerglotzModel> {
    tagged(path, HerglotzModel::from_json_str(&read(path)?))
}

/// Wraps the command's report with the command name and effective config and
/// writes it to `--out`. Returns whether the verdict holds and the text meant
/// for stdout (empty when written to a file).
pub fn emit(name: &str, args: &RunArgs, outcome: Outcome) -> CliResult<(bool, String)> {
    let report: Value = json!({
        "command": name,
        "config": args,
        "ok": outcome.ok,
        "report": outcome.report,
    });
    let mut text = serde_json::to_string_pretty(&report).map_err(|e| e.to_string())?;
    text.push('\n');
    match &args.out {
        Some(path) => {
            fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))?;
            Ok((outcome.ok, String::new()))
        }
        None => Ok((outcome.ok, text)),
    }
}
