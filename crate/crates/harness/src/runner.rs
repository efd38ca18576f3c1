//! Parallel execution of a manifest's trials.

use crate::error::{HarnessError, HarnessResult};
use crate::experiments::TrialOutput;
use crate::manifest::{ExperimentManifest, Params, Sink};
use crate::report::{FailedTrial, Report, TrialRecord, SCHEMA_VERSION, SEED_RULE};
use rayon::prelude::*;
use slelab_core::rng::derive_trial_seed;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

/// Environment variable holding the default worker count.
pub const WORKERS_ENV: &str = "SLELAB_WORKERS";

/// Text dump of the object sampled by one trial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Artifact {
    pub index: u64,
    pub text: String,
}

/// Worker count from `SLELAB_WORKERS`, else the available parallelism.
pub fn default_workers() -> usize {
    std::env::var(WORKERS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

pub fn run_experiment(manifest: &ExperimentManifest, workers: usize) -> HarnessResult<Report> {
    run_experiment_with_artifacts(manifest, workers).map(|(report, _)| report)
}

/// Runs every trial on `workers` threads and folds the outcomes in index
/// order. Trials that fail or panic are listed in `failed_trials`; the run
/// carries on. Artifacts are collected only when the manifest asks for a
/// dump.
pub fn run_experiment_with_artifacts(manifest: &ExperimentManifest, workers: usize) -> HarnessResult<(Report, Vec<Artifact>)> {
    let start = Instant::now();
    let resolved = manifest.resolved()?;
    let kind = resolved.experiment;
    let params = Params(&resolved.params);
    let trials = resolved.trials;
    let tasks = kind.task_count(params, trials);
    let dump = resolved.outputs.contains(&Sink::Dump);
    let master = resolved.master_seed;

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| HarnessError::Parse(format!("cannot start worker pool: {e}")))?;
    let outcomes: Vec<Result<TrialOutput, String>> = pool.install(|| {
        (0..tasks)
            .into_par_iter()
            .map(|i| {
                let seed = derive_trial_seed(master, i);
                catch_unwind(AssertUnwindSafe(|| kind.run_trial(params, trials, i, seed, dump)))
                    .unwrap_or_else(|payload| Err(format!("panicked: {}", panic_message(payload.as_ref()))))
            })
            .collect()
    });

    let mut records = Vec::new();
    let mut failed = Vec::new();
    let mut artifacts = Vec::new();
    for (i, outcome) in outcomes.into_iter().enumerate() {
        let index = i as u64;
        let seed = derive_trial_seed(master, index);
        match outcome {
            Ok(mut out) => {
                out.values.retain(|_, v| v.is_finite());
                if let Some(text) = out.artifact {
                    artifacts.push(Artifact { index, text });
                }
                records.push(TrialRecord { index, seed, values: out.values });
            }
            Err(message) => failed.push(FailedTrial { index, seed, message }),
        }
    }
    let (aggregates, series) = kind.aggregate(params, &records);
    let report = Report {
        schema_version: SCHEMA_VERSION,
        code_version: env!("CARGO_PKG_VERSION").to_string(),
        seed_rule: SEED_RULE.to_string(),
        task_count: tasks,
        wall_time_secs: start.elapsed().as_secs_f64(),
        failed_trials: failed,
        trials: resolved.keep_trials.then_some(records),
        aggregates,
        series,
        manifest: resolved,
    };
    Ok((report, artifacts))
}

fn panic_message(payload: &(dyn std::any::Any + Send)) -> String {
    if let Some(s) = payload.downcast_ref::<&str>() {
        s.to_string()
    } else if let Some(s) = payload.downcast_ref::<String>() {
        s.clone()
    } else {
        "non-string panic payload".into()
    }
}
