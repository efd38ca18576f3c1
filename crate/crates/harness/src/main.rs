use clap::{Args, Parser, Subcommand};
use slelab::{
    default_workers, emit_report, run_experiment_with_artifacts, ExperimentKind, ExperimentManifest, HarnessError,
    HarnessResult, ParamValue, Report, Sink, WORKERS_ENV,
};
use slelab_core::lattice::{cluster_crossing, parse_coloring, parse_path, Coloring};
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

/// Monte Carlo experiments on SLE, percolation, loop-erased walks and
/// spanning trees.
#[derive(Parser)]
#[command(name = "slelab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample SLE traces.
    SleTrace(RunArgs),
    /// Estimate the probability that SLE avoids a slit.
    SleRestriction(RunArgs),
    /// Estimate which side of (0, 1) SLE started at x first touches.
    SleCrossing(RunArgs),
    /// Estimate percolation crossing probabilities.
    PercCrossing(RunArgs),
    /// Measure how the length of loop-erased walks grows with radius.
    LerwGrowth(RunArgs),
    /// Frontier, pioneer and cut points of random walks, or two-walk
    /// non-intersection.
    BmExceptional(RunArgs),
    /// Box-counting dimension of loop-erased walks or SLE traces.
    DimEstimate(RunArgs),
    /// Check that spanning-tree Peano curves fill the grid.
    UstPeano(RunArgs),
    /// Run the experiment named in a manifest file.
    Run {
        manifest: PathBuf,
        #[command(flatten)]
        exec: ExecArgs,
    },
    /// Check a manifest and print it with defaults filled in.
    Validate { manifest: PathBuf },
    /// Re-emit a JSON report to other sinks.
    Report {
        report: PathBuf,
        /// Sinks to write, comma separated (default: those in the report).
        #[arg(long, value_delimiter = ',')]
        outputs: Vec<String>,
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
    /// Summarise a dumped lattice path, coloring or trace.
    Inspect { file: PathBuf },
}

#[derive(Args)]
struct ExecArgs {
    /// Output directory.
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Worker threads.
    #[arg(long, env = WORKERS_ENV)]
    workers: Option<usize>,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, default_value_t = 100)]
    trials: u64,
    /// Master seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    kappa: Option<f64>,
    #[arg(long)]
    dt: Option<f64>,
    #[arg(long)]
    mesh: Option<i64>,
    #[arg(long)]
    x: Option<f64>,
    /// Radii for lerw-growth, comma separated.
    #[arg(long, value_delimiter = ',')]
    radius_set: Option<Vec<f64>>,
    /// Any other parameter, as key=value. Repeatable.
    #[arg(long = "param", value_name = "KEY=VALUE")]
    params: Vec<String>,
    /// Sinks, comma separated: csv, json, plot-data, dump.
    #[arg(long, value_delimiter = ',', default_value = "json")]
    outputs: Vec<String>,
    /// Leave per-trial records out of the report.
    #[arg(long)]
    no_trial_records: bool,
    /// Read everything but the output directory and workers from this file.
    #[arg(long)]
    manifest: Option<PathBuf>,
    #[command(flatten)]
    exec: ExecArgs,
}

fn parse_sinks(names: &[String]) -> HarnessResult<Vec<Sink>> {
    let mut errors = Vec::new();
    let sinks = names
        .iter()
        .filter_map(|n| {
            let s = Sink::from_name(n.trim());
            if s.is_none() {
                errors.push(format!("unknown output '{n}' (accepted: csv, json, plot-data, dump)"));
            }
            s
        })
        .collect();
    if errors.is_empty() {
        Ok(sinks)
    } else {
        Err(HarnessError::Validation(errors))
    }
}

fn read(path: &Path) -> HarnessResult<String> {
    fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))
}

fn manifest_from_args(kind: ExperimentKind, args: &RunArgs) -> HarnessResult<ExperimentManifest> {
    if let Some(path) = &args.manifest {
        let m = ExperimentManifest::from_toml(&read(path)?)?;
        if m.experiment != kind {
            return Err(HarnessError::Validation(vec![format!(
                "manifest is for {}, not {}",
                m.experiment.name(),
                kind.name()
            )]));
        }
        return Ok(m);
    }
    let mut m = ExperimentManifest::new(kind, args.trials, args.seed);
    m.outputs = parse_sinks(&args.outputs)?;
    m.keep_trials = !args.no_trial_records;
    let mut errors = Vec::new();
    let flags = [
        ("kappa", args.kappa.map(ParamValue::Float)),
        ("dt", args.dt.map(ParamValue::Float)),
        ("mesh", args.mesh.map(ParamValue::Int)),
        ("x", args.x.map(ParamValue::Float)),
        ("radius_set", args.radius_set.clone().map(ParamValue::List)),
    ];
    for (key, value) in flags {
        if let Some(v) = value {
            m.params.insert(key.to_string(), v);
        }
    }
    for kv in &args.params {
        match kv.split_once('=') {
            Some((k, v)) => {
                m.params.insert(k.trim().to_string(), ParamValue::parse_cli(v.trim()));
            }
            None => errors.push(format!("--param '{kv}' is not of the form key=value")),
        }
    }
    errors.extend(m.problems());
    if errors.is_empty() {
        Ok(m)
    } else {
        Err(HarnessError::Validation(errors))
    }
}

fn execute(manifest: &ExperimentManifest, exec: &ExecArgs) -> HarnessResult<ExitCode> {
    let workers = exec.workers.unwrap_or_else(default_workers);
    let (report, artifacts) = run_experiment_with_artifacts(manifest, workers)?;
    for a in &report.aggregates {
        let params: Vec<String> = a.params.iter().map(|(k, v)| format!("{k}={}", v.describe())).collect();
        let reference = a.reference.map(|r| format!("  (reference {r:.6})")).unwrap_or_default();
        println!(
            "{}{} = {:.6} ± {:.6}  [{:.6}, {:.6}]  n={}{reference}",
            a.name,
            if params.is_empty() { String::new() } else { format!("[{}]", params.join(",")) },
            a.value,
            a.stderr,
            a.ci_lo,
            a.ci_hi,
            a.trial_count
        );
    }
    let written = emit_report(&report, &artifacts, &exec.out)?;
    let (dumps, files): (Vec<_>, Vec<_>) = written.iter().partition(|p| p.parent().is_some_and(|d| d.ends_with("dump")));
    for path in files {
        println!("wrote {}", path.display());
    }
    if !dumps.is_empty() {
        println!("wrote {} trial dumps to {}", dumps.len(), exec.out.join("dump").display());
    }
    if report.failed_trials.is_empty() {
        Ok(ExitCode::SUCCESS)
    } else {
        for f in &report.failed_trials {
            eprintln!("trial {} (seed {}) failed: {}", f.index, f.seed, f.message);
        }
        Ok(ExitCode::from(2))
    }
}

fn inspect(path: &Path) -> HarnessResult<()> {
    let text = read(path)?;
    let header = text.lines().next().unwrap_or("");
    if header.starts_with("# slelab lattice-path") {
        let p = parse_path(&text)?;
        println!("lattice path: {} steps on {}", p.len(), p.adjacency.name());
        println!("distinct sites: {}", p.distinct_sites().len());
        println!("simple: {}", p.is_simple());
        if let (Some(a), Some(b)) = (p.first(), p.last()) {
            println!("from {a:?} to {b:?}");
        }
    } else if header.starts_with("# slelab coloring") {
        let c = parse_coloring(&text)?;
        let sites = c.region().sites();
        let white = sites.iter().filter(|&&s| c.is_white(s)).count();
        println!("coloring of {:?}: {} sites, {} white", c.region(), sites.len(), white);
        for (name, arc) in c.arcs() {
            println!("arc {name}: {} sites", arc.len());
        }
        let names: Vec<&str> = c.arcs().iter().map(|(n, _)| n.as_str()).collect();
        if names.len() >= 2 {
            let (a, b) = (names[0], names[names.len() - 1]);
            println!("white crossing {a} -> {b}: {}", cluster_crossing(&c, a, b)?);
        }
    } else if header.starts_with("# slelab trace") {
        let n = text.lines().filter(|l| !l.starts_with('#') && !l.trim().is_empty()).count();
        println!("trace: {n} points");
    } else {
        return Err(HarnessError::Parse(format!("{}: unrecognised file header '{header}'", path.display())));
    }
    Ok(())
}

fn run(cli: Cli) -> HarnessResult<ExitCode> {
    let (kind, args) = match cli.command {
        Command::SleTrace(a) => (ExperimentKind::SleTrace, a),
        Command::SleRestriction(a) => (ExperimentKind::SleRestriction, a),
        Command::SleCrossing(a) => (ExperimentKind::SleCrossing, a),
        Command::PercCrossing(a) => (ExperimentKind::PercCrossing, a),
        Command::LerwGrowth(a) => (ExperimentKind::LerwGrowth, a),
        Command::BmExceptional(a) => (ExperimentKind::BmExceptional, a),
        Command::DimEstimate(a) => (ExperimentKind::DimEstimate, a),
        Command::UstPeano(a) => (ExperimentKind::UstPeano, a),
        Command::Run { manifest, exec } => {
            let m = ExperimentManifest::from_toml(&read(&manifest)?)?;
            return execute(&m, &exec);
        }
        Command::Validate { manifest } => {
            let m = ExperimentManifest::from_toml(&read(&manifest)?)?.resolved()?;
            print!("{}", m.to_toml());
            return Ok(ExitCode::SUCCESS);
        }
        Command::Report { report, outputs, out } => {
            let mut r = Report::from_json(&read(&report)?)?;
            if !outputs.is_empty() {
                r.manifest.outputs = parse_sinks(&outputs)?;
            }
            for path in emit_report(&r, &[], &out)? {
                println!("wrote {}", path.display());
            }
            return Ok(ExitCode::SUCCESS);
        }
        Command::Inspect { file } => {
            inspect(&file)?;
            return Ok(ExitCode::SUCCESS);
        }
    };
    let manifest = manifest_from_args(kind, &args)?;
    execute(&manifest, &args.exec)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
