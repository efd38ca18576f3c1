//! Reproducible experiment runs over the `slelab-core` samplers.
//!
//! An [`ExperimentManifest`] names an experiment, its parameters, a trial
//! count and a master seed. [`run_experiment`] executes the trials in
//! parallel, trial `i` seeded with `derive_trial_seed(master_seed, i)`, and
//! folds the results in index order into a [`Report`], so the report is the
//! same for every worker count. [`emit_report`] writes it as JSON, CSV or
//! plot data.

mod error;
mod experiments;
mod manifest;
mod report;
mod runner;

pub use error::{HarnessError, HarnessResult};
pub use experiments::{ExperimentKind, ParamKind, ParamSpec, TrialOutput, MIN_DIMENSION_SITES};
pub use manifest::{ExperimentManifest, ParamValue, Params, Sink};
pub use report::{emit_report, Aggregate, FailedTrial, Report, Series, TrialRecord, SCHEMA_VERSION};
pub use runner::{default_workers, run_experiment, run_experiment_with_artifacts, Artifact, WORKERS_ENV};
pub use slelab_core::rng::derive_trial_seed;
