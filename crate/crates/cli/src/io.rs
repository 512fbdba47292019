//! Instance files, run manifests and report output.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use intcells_core::convex::{ConstantsConfig, SweepResult};
use intcells_core::generators::{GenSpec, Instance, OracleBody};
use intcells_core::lattice::IntegerPointSet;
use intcells_core::polytope::RationalPolytope;
use intcells_core::report::{digest_of, VerificationReport};
use intcells_core::IndexSet;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::CliError;

/// Reads an instance, recognizing it by its keys; a generator spec (with a
/// `"family"` key) is generated on the fly.
pub fn load_instance(path: &Path) -> Result<Instance, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    parse_instance(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn parse_instance(text: &str) -> Result<Instance, String> {
    let value: Value = serde_json::from_str(text).map_err(|e| e.to_string())?;
    let has = |k: &str| value.get(k).is_some();
    if has("family") {
        let spec: GenSpec = serde_json::from_value(value).map_err(|e| e.to_string())?;
        spec.generate().map_err(|e| e.to_string())
    } else if has("points") {
        IntegerPointSet::from_json(text).map(Instance::PointSet).map_err(|e| e.to_string())
    } else if has("vertices") {
        RationalPolytope::from_json(text).map(Instance::Polytope).map_err(|e| e.to_string())
    } else if has("eps") {
        serde_json::from_value::<OracleBody>(value).map(Instance::Oracle).map_err(|e| e.to_string())
    } else {
        Err("not a point set, polytope, oracle body or generator spec".into())
    }
}

pub fn instance_json(instance: &Instance) -> String {
    match instance {
        Instance::PointSet(a) => a.to_json(),
        Instance::Polytope(k) => k.to_json(),
        Instance::Oracle(o) => serde_json::to_string_pretty(o).expect("oracle bodies serialize"),
    }
}

pub fn instance_digest(instance: &Instance) -> String {
    match instance {
        Instance::PointSet(a) => digest_of(a),
        Instance::Polytope(k) => digest_of(k),
        Instance::Oracle(o) => digest_of(o),
    }
}

/// Polytopes of a corpus directory: every `*.json` file, in file-name order.
pub fn load_corpus(dir: &Path) -> Result<Vec<(PathBuf, RationalPolytope)>, CliError> {
    let entries = fs::read_dir(dir).map_err(|e| CliError::Input(format!("{}: {e}", dir.display())))?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    if files.is_empty() {
        return Err(CliError::Input(format!("{}: no .json files", dir.display())));
    }
    files
        .into_iter()
        .map(|f| match load_instance(&f)? {
            Instance::Polytope(k) => Ok((f, k)),
            _ => Err(CliError::Input(format!("{}: not a polytope", f.display()))),
        })
        .collect()
}

/// One-based, comma-separated coordinates such as `1,3`.
pub fn parse_index_set(s: &str, ambient: usize) -> Result<IndexSet, CliError> {
    let idx: Vec<usize> = s
        .split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| CliError::Input(format!("bad coordinate `{t}` in --proj"))))
        .collect::<Result<_, _>>()?;
    IndexSet::from_one_based(ambient, &idx).map_err(|e| CliError::Input(e.to_string()))
}

pub fn load_config(path: Option<&Path>) -> Result<ConstantsConfig, CliError> {
    match path {
        None => Ok(ConstantsConfig::default()),
        Some(p) => ConstantsConfig::from_file(p).map_err(|e| CliError::Input(format!("{}: {e}", p.display()))),
    }
}

/// Provenance of one run, embedded in every report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command_line: Vec<String>,
    pub config_sha256: String,
    pub seeds: BTreeMap<String, u64>,
    pub version: String,
    pub wall_time_s: f64,
}

/// Agreement of the main computation with the brute-force oracles.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct OracleCheck {
    pub agree: bool,
    pub checks: Vec<OracleItem>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleItem {
    pub what: String,
    pub main: Value,
    pub oracle: Value,
    pub agree: bool,
}

impl OracleCheck {
    pub fn push(&mut self, what: impl Into<String>, main: impl Serialize, oracle: impl Serialize, agree: bool) {
        self.checks.push(OracleItem {
            what: what.into(),
            main: serde_json::to_value(main).expect("serializable"),
            oracle: serde_json::to_value(oracle).expect("serializable"),
            agree,
        });
    }

    pub fn finish(mut self) -> Self {
        self.agree = self.checks.iter().all(|c| c.agree);
        self
    }
}

/// The output of one command.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Document {
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<VerificationReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepResult>,
    #[serde(default, skip_serializing_if = "Value::is_null")]
    pub result: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleCheck>,
    pub manifest: RunManifest,
}

impl Document {
    pub fn new(command: &str, manifest: RunManifest) -> Self {
        Document { command: command.into(), report: None, sweep: None, result: Value::Null, oracle: None, manifest }
    }

    /// Violated claim or oracle disagreement.
    pub fn failed(&self) -> bool {
        self.report.as_ref().is_some_and(|r| !r.pass)
            || self.oracle.as_ref().is_some_and(|o| !o.agree)
            || self.result.get("failed").and_then(Value::as_u64).is_some_and(|f| f > 0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Column order of a report row.
const REPORT_COLUMNS: [&str; 11] =
    ["claim", "lhs", "rhs", "pass", "witness", "constant", "exact|mc", "ci", "relation", "input_digest", "details"];

/// CSV view: one row per report (or per aggregated row), every field kept;
/// nested values are embedded as JSON text.
pub fn to_csv(doc: &Document) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let manifest = serde_json::to_string(&doc.manifest).expect("serializable");
    let oracle = doc.oracle.as_ref().map(|o| serde_json::to_string(o).expect("serializable")).unwrap_or_default();
    let csv_err = |e: csv::Error| CliError::Input(e.to_string());
    if let Some(r) = &doc.report {
        let row = serde_json::to_value(r.csv_row()).expect("serializable");
        let mut header: Vec<String> = REPORT_COLUMNS.iter().map(|c| c.to_string()).collect();
        let mut fields: Vec<String> = REPORT_COLUMNS.iter().map(|c| cell(row.get(*c).unwrap_or(&Value::Null))).collect();
        header.extend(["oracle".into(), "manifest".into()]);
        fields.extend([oracle, manifest]);
        w.write_record(&header).map_err(csv_err)?;
        w.write_record(&fields).map_err(csv_err)?;
    } else if let Some(s) = &doc.sweep {
        w.write_record(["claim", "direction", "constant", "bisection", "instances", "per_instance", "details", "manifest"])
            .map_err(csv_err)?;
        w.write_record([
            s.claim.clone(),
            s.direction.clone(),
            s.constant.to_string(),
            s.bisection.to_string(),
            s.instances.to_string(),
            serde_json::to_string(&s.per_instance).expect("serializable"),
            s.details.to_string(),
            manifest,
        ])
        .map_err(csv_err)?;
    } else if let Some(rows) = doc.result.get("rows").and_then(Value::as_array) {
        let header: Vec<String> = rows
            .first()
            .and_then(Value::as_object)
            .map(|o| o.keys().cloned().collect())
            .unwrap_or_default();
        let mut full = header.clone();
        full.push("manifest".into());
        w.write_record(&full).map_err(csv_err)?;
        for r in rows {
            let mut fields: Vec<String> = header.iter().map(|k| cell(r.get(k).unwrap_or(&Value::Null))).collect();
            fields.push(manifest.clone());
            w.write_record(&fields).map_err(csv_err)?;
        }
    } else {
        let obj = doc.result.as_object().cloned().unwrap_or_default();
        let mut header: Vec<String> = vec!["command".into()];
        header.extend(obj.keys().cloned());
        header.extend(["oracle".into(), "manifest".into()]);
        w.write_record(&header).map_err(csv_err)?;
        let mut fields = vec![doc.command.clone()];
        fields.extend(obj.values().map(cell));
        fields.extend([oracle, manifest]);
        w.write_record(&fields).map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Input(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv is utf-8"))
}

pub fn render(doc: &Document, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => Ok(serde_json::to_string_pretty(doc).expect("serializable") + "\n"),
        Format::Csv => to_csv(doc),
    }
}

/// Writes to `out` or standard output.
pub fn emit(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| CliError::Input(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
