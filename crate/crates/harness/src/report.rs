//! Reports and the sinks they are written to.

use crate::error::{HarnessError, HarnessResult};
use crate::manifest::{ExperimentManifest, ParamValue, Sink};
use crate::runner::Artifact;
use serde::{Deserialize, Serialize};
use slelab_core::analysis::{Estimate, ExponentEstimate, Z95};
use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

/// Version of the JSON and CSV layouts below.
pub const SCHEMA_VERSION: u32 = 1;

/// Identifier of the per-trial seed rule, `mix64` being the SplitMix64
/// finalizer.
pub const SEED_RULE: &str = "mix64(mix64(master_seed) + 0x9e3779b97f4a7c15 * index)";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub index: u64,
    pub seed: u64,
    pub values: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FailedTrial {
    pub index: u64,
    pub seed: u64,
    pub message: String,
}

/// An estimate over trials, with a 95% interval and, when one is known, the
/// value it should approach.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Aggregate {
    pub name: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, ParamValue>,
    pub value: f64,
    pub stderr: f64,
    pub ci_lo: f64,
    pub ci_hi: f64,
    pub trial_count: u64,
    pub reference: Option<f64>,
}

impl Aggregate {
    pub fn new(name: &str, params: BTreeMap<String, ParamValue>, e: Estimate, reference: Option<f64>) -> Self {
        Aggregate {
            name: name.to_string(),
            params,
            value: e.value,
            stderr: e.stderr,
            ci_lo: e.ci_lo,
            ci_hi: e.ci_hi,
            trial_count: e.trials as u64,
            reference,
        }
    }

    /// A fitted exponent; `points` is the number of scales in the fit.
    pub fn fit(name: &str, fit: &ExponentEstimate, points: usize, reference: Option<f64>) -> Self {
        Aggregate {
            name: name.to_string(),
            params: BTreeMap::new(),
            value: fit.value,
            stderr: fit.stderr,
            ci_lo: fit.value - Z95 * fit.stderr,
            ci_hi: fit.value + Z95 * fit.stderr,
            trial_count: points as u64,
            reference,
        }
    }

    /// Whether `target` lies within `sigmas` standard errors of the value.
    pub fn within(&self, target: f64, sigmas: f64) -> bool {
        (self.value - target).abs() <= sigmas * self.stderr
    }
}

/// A plot series of `[x, y, yerr]` rows.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Series {
    pub name: String,
    pub x_label: String,
    pub y_label: String,
    pub points: Vec<[f64; 3]>,
}

impl Series {
    pub fn new(name: &str, x_label: &str, y_label: &str, points: Vec<[f64; 3]>) -> Self {
        Series { name: name.into(), x_label: x_label.into(), y_label: y_label.into(), points }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    /// The manifest with every parameter resolved.
    pub manifest: ExperimentManifest,
    pub code_version: String,
    pub seed_rule: String,
    /// Number of tasks run; equals `trials` except for per-radius sweeps.
    pub task_count: u64,
    pub wall_time_secs: f64,
    pub failed_trials: Vec<FailedTrial>,
    pub trials: Option<Vec<TrialRecord>>,
    pub aggregates: Vec<Aggregate>,
    pub series: Vec<Series>,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports contain only finite numbers")
    }

    pub fn from_json(text: &str) -> HarnessResult<Self> {
        let report: Report = serde_json::from_str(text).map_err(|e| HarnessError::Parse(format!("report JSON: {e}")))?;
        if report.schema_version != SCHEMA_VERSION {
            return Err(HarnessError::Parse(format!(
                "report schema version {} is not supported (expected {SCHEMA_VERSION})",
                report.schema_version
            )));
        }
        Ok(report)
    }

    pub fn aggregate(&self, name: &str) -> Option<&Aggregate> {
        self.aggregates.iter().find(|a| a.name == name)
    }

    /// The CSV form: a header and one row per aggregate. `param_json` holds
    /// the resolved parameters together with the aggregate's name and its
    /// own parameters.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["experiment", "param_json", "trial_count", "estimate", "stderr", "ci_lo", "ci_hi", "seed"])
            .expect("writing to memory");
        for a in &self.aggregates {
            let mut params: BTreeMap<String, serde_json::Value> =
                self.manifest.params.iter().map(|(k, v)| (k.clone(), serde_json::to_value(v).unwrap())).collect();
            params.extend(a.params.iter().map(|(k, v)| (k.clone(), serde_json::to_value(v).unwrap())));
            params.insert("aggregate".into(), a.name.clone().into());
            let params = serde_json::to_string(&params).unwrap();
            w.write_record([
                self.manifest.experiment.name(),
                &params,
                &a.trial_count.to_string(),
                &a.value.to_string(),
                &a.stderr.to_string(),
                &a.ci_lo.to_string(),
                &a.ci_hi.to_string(),
                &self.manifest.master_seed.to_string(),
            ])
            .expect("writing to memory");
        }
        String::from_utf8(w.into_inner().expect("writing to memory")).expect("CSV of UTF-8 fields")
    }

    /// A series as CSV with columns `x, y, yerr`.
    pub fn series_csv(series: &Series) -> String {
        let mut s = String::from("x,y,yerr\n");
        for [x, y, e] in &series.points {
            s.push_str(&format!("{x},{y},{e}\n"));
        }
        s
    }
}

fn write(path: PathBuf, contents: &str, written: &mut Vec<PathBuf>) -> HarnessResult<()> {
    fs::write(&path, contents).map_err(|e| HarnessError::io(&path, e))?;
    written.push(path);
    Ok(())
}

/// Writes the report to every sink named in its manifest under the directory
/// `out`, creating it if needed, and returns the files written.
///
/// * `json`: `report.json`
/// * `csv`: `report.csv`
/// * `plot-data`: `<series>.plot.csv` for each series
/// * `dump`: `dump/trial-<index>.txt` for each artifact
pub fn emit_report(report: &Report, artifacts: &[Artifact], out: &Path) -> HarnessResult<Vec<PathBuf>> {
    fs::create_dir_all(out).map_err(|e| HarnessError::io(out, e))?;
    let mut written = Vec::new();
    for sink in &report.manifest.outputs {
        match sink {
            Sink::Json => write(out.join("report.json"), &report.to_json(), &mut written)?,
            Sink::Csv => write(out.join("report.csv"), &report.to_csv(), &mut written)?,
            Sink::PlotData => {
                for s in &report.series {
                    write(out.join(format!("{}.plot.csv", s.name)), &Report::series_csv(s), &mut written)?;
                }
            }
            Sink::Dump => {
                let dir = out.join("dump");
                fs::create_dir_all(&dir).map_err(|e| HarnessError::io(&dir, e))?;
                for a in artifacts {
                    write(dir.join(format!("trial-{:06}.txt", a.index)), &a.text, &mut written)?;
                }
            }
        }
    }
    Ok(written)
}
