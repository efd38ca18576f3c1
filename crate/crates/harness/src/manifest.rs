//! Experiment manifests and their TOML form.
//!
//! ```toml
//! experiment = "perc-crossing"
//! trials = 10000
//! master_seed = 1
//! outputs = ["json", "csv"]
//!
//! [params]
//! domain = "triangle"
//! x = 0.5
//! mesh = 100
//! ```
//!
//! `keep_trials = false` drops per-trial records from the report. Seeds
//! above `i64::MAX` are written as decimal strings.

use crate::error::{HarnessError, HarnessResult};
use crate::experiments::{ExperimentKind, ParamKind};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// A parameter value as written in a manifest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ParamValue {
    Int(i64),
    Float(f64),
    Text(String),
    List(Vec<f64>),
}

impl ParamValue {
    fn from_toml(v: &toml::Value) -> Option<Self> {
        Some(match v {
            toml::Value::Integer(i) => ParamValue::Int(*i),
            toml::Value::Float(f) => ParamValue::Float(*f),
            toml::Value::String(s) => ParamValue::Text(s.clone()),
            toml::Value::Array(items) => ParamValue::List(
                items
                    .iter()
                    .map(|x| match x {
                        toml::Value::Integer(i) => Some(*i as f64),
                        toml::Value::Float(f) => Some(*f),
                        _ => None,
                    })
                    .collect::<Option<Vec<f64>>>()?,
            ),
            _ => return None,
        })
    }

    fn to_toml(&self) -> toml::Value {
        match self {
            ParamValue::Int(i) => toml::Value::Integer(*i),
            ParamValue::Float(f) => toml::Value::Float(*f),
            ParamValue::Text(s) => toml::Value::String(s.clone()),
            ParamValue::List(v) => toml::Value::Array(v.iter().map(|f| toml::Value::Float(*f)).collect()),
        }
    }

    /// Parses a command-line value: integer, float, comma-separated list of
    /// numbers, or else text.
    pub fn parse_cli(s: &str) -> Self {
        if let Ok(i) = s.parse::<i64>() {
            return ParamValue::Int(i);
        }
        if let Ok(f) = s.parse::<f64>() {
            return ParamValue::Float(f);
        }
        if s.contains(',') {
            if let Ok(v) = s.split(',').map(|t| t.trim().parse::<f64>()).collect::<Result<Vec<_>, _>>() {
                return ParamValue::List(v);
            }
        }
        ParamValue::Text(s.to_string())
    }

    pub fn describe(&self) -> String {
        match self {
            ParamValue::Int(i) => i.to_string(),
            ParamValue::Float(f) => f.to_string(),
            ParamValue::Text(s) => format!("\"{s}\""),
            ParamValue::List(v) => format!("{v:?}"),
        }
    }
}

/// Where a report goes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Sink {
    Csv,
    Json,
    PlotData,
    Dump,
}

impl Sink {
    pub const ALL: [Sink; 4] = [Sink::Csv, Sink::Json, Sink::PlotData, Sink::Dump];

    pub fn name(self) -> &'static str {
        match self {
            Sink::Csv => "csv",
            Sink::Json => "json",
            Sink::PlotData => "plot-data",
            Sink::Dump => "dump",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Sink::ALL.into_iter().find(|k| k.name() == s)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentManifest {
    pub experiment: ExperimentKind,
    pub params: BTreeMap<String, ParamValue>,
    pub trials: u64,
    pub master_seed: u64,
    pub outputs: Vec<Sink>,
    pub keep_trials: bool,
}

const TOP_LEVEL_KEYS: [&str; 6] = ["experiment", "params", "trials", "master_seed", "outputs", "keep_trials"];

impl ExperimentManifest {
    /// A manifest with no explicit parameters, writing JSON.
    pub fn new(experiment: ExperimentKind, trials: u64, master_seed: u64) -> Self {
        ExperimentManifest {
            experiment,
            params: BTreeMap::new(),
            trials,
            master_seed,
            outputs: vec![Sink::Json],
            keep_trials: true,
        }
    }

    pub fn with_param(mut self, key: &str, value: ParamValue) -> Self {
        self.params.insert(key.to_string(), value);
        self
    }

    /// Parses and validates a TOML manifest, reporting every problem found.
    pub fn from_toml(text: &str) -> HarnessResult<Self> {
        let table: toml::Table = text.parse().map_err(|e: toml::de::Error| HarnessError::Validation(vec![e.to_string()]))?;
        let mut errors = Vec::new();
        for key in table.keys() {
            if !TOP_LEVEL_KEYS.contains(&key.as_str()) {
                errors.push(format!("unknown key '{key}'"));
            }
        }
        let experiment = match table.get("experiment") {
            Some(toml::Value::String(name)) => match ExperimentKind::from_name(name) {
                Some(k) => Some(k),
                None => {
                    let known: Vec<&str> = ExperimentKind::ALL.iter().map(|k| k.name()).collect();
                    errors.push(format!("unknown experiment '{name}' (expected one of {})", known.join(", ")));
                    None
                }
            },
            Some(_) => {
                errors.push("'experiment' must be a string".into());
                None
            }
            None => {
                errors.push("missing 'experiment'".into());
                None
            }
        };
        let trials = match table.get("trials") {
            Some(toml::Value::Integer(n)) if *n >= 0 => *n as u64,
            Some(_) => {
                errors.push("'trials' must be a nonnegative integer".into());
                0
            }
            None => {
                errors.push("missing 'trials'".into());
                0
            }
        };
        let master_seed = match table.get("master_seed") {
            Some(toml::Value::Integer(n)) if *n >= 0 => *n as u64,
            Some(toml::Value::String(s)) if s.parse::<u64>().is_ok() => s.parse().unwrap(),
            Some(_) => {
                errors.push("'master_seed' must be an unsigned 64-bit integer".into());
                0
            }
            None => {
                errors.push("missing 'master_seed'".into());
                0
            }
        };
        let mut outputs = Vec::new();
        match table.get("outputs") {
            None => outputs.push(Sink::Json),
            Some(toml::Value::Array(items)) => {
                for item in items {
                    match item.as_str().and_then(Sink::from_name) {
                        Some(s) if !outputs.contains(&s) => outputs.push(s),
                        Some(s) => errors.push(format!("output '{}' listed twice", s.name())),
                        None => errors.push(format!("unknown output {item} (expected csv, json, plot-data or dump)")),
                    }
                }
            }
            Some(_) => errors.push("'outputs' must be a list".into()),
        }
        let keep_trials = match table.get("keep_trials") {
            None => true,
            Some(toml::Value::Boolean(b)) => *b,
            Some(_) => {
                errors.push("'keep_trials' must be a boolean".into());
                true
            }
        };
        let mut params = BTreeMap::new();
        match table.get("params") {
            None => {}
            Some(toml::Value::Table(t)) => {
                for (k, v) in t {
                    match ParamValue::from_toml(v) {
                        Some(p) => {
                            params.insert(k.clone(), p);
                        }
                        None => errors.push(format!("param '{k}' has an unsupported value {v}")),
                    }
                }
            }
            Some(_) => errors.push("'params' must be a table".into()),
        }
        let Some(experiment) = experiment else {
            return Err(HarnessError::Validation(errors));
        };
        let manifest = ExperimentManifest { experiment, params, trials, master_seed, outputs, keep_trials };
        errors.extend(manifest.problems());
        if errors.is_empty() {
            Ok(manifest)
        } else {
            Err(HarnessError::Validation(errors))
        }
    }

    pub fn to_toml(&self) -> String {
        let mut t = toml::Table::new();
        t.insert("experiment".into(), toml::Value::String(self.experiment.name().into()));
        t.insert("trials".into(), toml::Value::Integer(self.trials as i64));
        let seed = match i64::try_from(self.master_seed) {
            Ok(s) => toml::Value::Integer(s),
            Err(_) => toml::Value::String(self.master_seed.to_string()),
        };
        t.insert("master_seed".into(), seed);
        t.insert(
            "outputs".into(),
            toml::Value::Array(self.outputs.iter().map(|s| toml::Value::String(s.name().into())).collect()),
        );
        t.insert("keep_trials".into(), toml::Value::Boolean(self.keep_trials));
        let params: toml::Table = self.params.iter().map(|(k, v)| (k.clone(), v.to_toml())).collect();
        t.insert("params".into(), toml::Value::Table(params));
        toml::to_string(&t).expect("manifest tables always serialise")
    }

    /// Every violation of the experiment's parameter schema.
    pub fn problems(&self) -> Vec<String> {
        let mut errors = Vec::new();
        let specs = self.experiment.param_specs();
        for key in self.params.keys() {
            if !specs.iter().any(|s| s.name == key) {
                let known: Vec<&str> = specs.iter().map(|s| s.name).collect();
                errors.push(format!(
                    "unknown param '{key}' for {} (accepted: {})",
                    self.experiment.name(),
                    known.join(", ")
                ));
            }
        }
        for spec in specs {
            if let Some(v) = self.params.get(spec.name) {
                if let Err(e) = spec.check(v) {
                    errors.push(format!("param '{}': {e}", spec.name));
                }
            }
        }
        if self.outputs.contains(&Sink::Dump) && !self.experiment.has_artifacts() {
            errors.push(format!("{} has no per-trial artifacts to dump", self.experiment.name()));
        }
        if self.trials > u32::MAX as u64 {
            errors.push("'trials' must be below 2^32".into());
        }
        errors
    }

    pub fn validate(&self) -> HarnessResult<()> {
        let errors = self.problems();
        if errors.is_empty() {
            Ok(())
        } else {
            Err(HarnessError::Validation(errors))
        }
    }

    /// The manifest with every parameter present, defaults filled in and
    /// integers given for real parameters converted.
    pub fn resolved(&self) -> HarnessResult<Self> {
        self.validate()?;
        let mut params = BTreeMap::new();
        for spec in self.experiment.param_specs() {
            let v = self.params.get(spec.name).cloned().unwrap_or_else(|| (spec.default)());
            let v = match (spec.kind, v) {
                (ParamKind::Float { .. }, ParamValue::Int(i)) => ParamValue::Float(i as f64),
                (_, v) => v,
            };
            params.insert(spec.name.to_string(), v);
        }
        Ok(ExperimentManifest { params, ..self.clone() })
    }
}

/// Typed read access to resolved parameters.
#[derive(Debug, Clone, Copy)]
pub struct Params<'a>(pub &'a BTreeMap<String, ParamValue>);

impl Params<'_> {
    pub fn float(&self, key: &str) -> f64 {
        match self.0.get(key) {
            Some(ParamValue::Float(f)) => *f,
            Some(ParamValue::Int(i)) => *i as f64,
            other => panic!("param {key} is not a number: {other:?}"),
        }
    }

    pub fn int(&self, key: &str) -> i64 {
        match self.0.get(key) {
            Some(ParamValue::Int(i)) => *i,
            other => panic!("param {key} is not an integer: {other:?}"),
        }
    }

    pub fn text(&self, key: &str) -> &str {
        match self.0.get(key) {
            Some(ParamValue::Text(s)) => s,
            other => panic!("param {key} is not text: {other:?}"),
        }
    }

    pub fn list(&self, key: &str) -> &[f64] {
        match self.0.get(key) {
            Some(ParamValue::List(v)) => v,
            other => panic!("param {key} is not a list: {other:?}"),
        }
    }
}
