//! The experiments a manifest can name: parameter schemas, one trial, and
//! the fold of trial records into aggregates.

use crate::manifest::{ParamValue, Params};
use crate::report::{Aggregate, Series, TrialRecord};
use serde::{Deserialize, Serialize};
use slelab_core::analysis::{
    box_counting_dimension, cardy_halfplane, cardy_triangle, first_meeting, power_law_fit, site_points, CrossingDomain,
    CrossingSetup, Estimate, ExponentName,
};
use slelab_core::lattice::{
    cut_times, frontier_sites, lerw_sample, percolation_sample, pioneer_times, sample_srw, ust_peano_curve, wilson_ust,
    write_coloring, write_path, RegionGraph,
};
use slelab_core::loewner::{Hull, Trace};
use slelab_core::rng::derive_trial_seed;
use slelab_core::sle::{
    avoidance_trial, chordal_crossing, min_self_distance, restriction_probability, sample_chordal_trace_strided,
    sample_radial_trace_strided, sle_dimension, AvoidanceConfig, AvoidanceOutcome, Crossing, SleParams,
};
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    SleTrace,
    SleRestriction,
    SleCrossing,
    PercCrossing,
    LerwGrowth,
    BmExceptional,
    DimEstimate,
    UstPeano,
}

/// Type and admissible range of a parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ParamKind {
    /// A real number in `[min, max]`, with either end optionally excluded.
    Float { min: f64, max: f64, open_min: bool, open_max: bool },
    Int { min: i64, max: i64 },
    Choice(&'static [&'static str]),
    /// A nonempty list of integers in `[min, max]`, strictly increasing.
    IntList { min: i64, max: i64 },
}

#[derive(Debug, Clone, Copy)]
pub struct ParamSpec {
    pub name: &'static str,
    pub kind: ParamKind,
    pub default: fn() -> ParamValue,
    pub help: &'static str,
}

impl ParamSpec {
    pub fn check(&self, v: &ParamValue) -> Result<(), String> {
        match (self.kind, v) {
            (ParamKind::Float { min, max, open_min, open_max }, ParamValue::Float(_) | ParamValue::Int(_)) => {
                let x = match v {
                    ParamValue::Float(f) => *f,
                    ParamValue::Int(i) => *i as f64,
                    _ => unreachable!(),
                };
                let lo_ok = if open_min { x > min } else { x >= min };
                let hi_ok = if open_max { x < max } else { x <= max };
                if lo_ok && hi_ok && x.is_finite() {
                    Ok(())
                } else {
                    Err(format!(
                        "{x} is outside {}{min}, {max}{}",
                        if open_min { "(" } else { "[" },
                        if open_max { ")" } else { "]" }
                    ))
                }
            }
            (ParamKind::Int { min, max }, ParamValue::Int(i)) => {
                if (min..=max).contains(i) {
                    Ok(())
                } else {
                    Err(format!("{i} is outside [{min}, {max}]"))
                }
            }
            (ParamKind::Choice(options), ParamValue::Text(s)) => {
                if options.contains(&s.as_str()) {
                    Ok(())
                } else {
                    Err(format!("\"{s}\" is not one of {}", options.join(", ")))
                }
            }
            (ParamKind::IntList { min, max }, ParamValue::List(items)) => {
                if items.is_empty() {
                    return Err("list is empty".into());
                }
                if let Some(x) = items.iter().find(|x| x.fract() != 0.0 || **x < min as f64 || **x > max as f64) {
                    return Err(format!("{x} is not an integer in [{min}, {max}]"));
                }
                if items.windows(2).any(|w| w[1] <= w[0]) {
                    return Err("values must be strictly increasing".into());
                }
                Ok(())
            }
            (kind, v) => Err(format!("expected {}, got {}", kind_name(kind), v.describe())),
        }
    }
}

fn kind_name(kind: ParamKind) -> &'static str {
    match kind {
        ParamKind::Float { .. } => "a number",
        ParamKind::Int { .. } => "an integer",
        ParamKind::Choice(_) => "a string",
        ParamKind::IntList { .. } => "a list of integers",
    }
}

const fn float(min: f64, max: f64) -> ParamKind {
    ParamKind::Float { min, max, open_min: false, open_max: false }
}

const fn positive(max: f64) -> ParamKind {
    ParamKind::Float { min: 0.0, max, open_min: true, open_max: false }
}

const KAPPA: ParamKind = float(0.0, 1000.0);
const UNIT_OPEN: ParamKind = ParamKind::Float { min: 0.0, max: 1.0, open_min: true, open_max: true };

macro_rules! param {
    ($name:literal, $kind:expr, $default:expr, $help:literal) => {
        ParamSpec { name: $name, kind: $kind, default: || $default, help: $help }
    };
}

const SLE_TRACE: &[ParamSpec] = &[
    param!("kappa", KAPPA, ParamValue::Float(8.0 / 3.0), "SLE parameter"),
    param!("duration", positive(1e4), ParamValue::Float(1.0), "capacity time of the trace"),
    param!("dt", positive(1.0), ParamValue::Float(1e-3), "time step"),
    param!("geometry", ParamKind::Choice(&["chordal", "radial"]), ParamValue::Text("chordal".into()), "chordal or radial"),
    param!("stride", ParamKind::Int { min: 1, max: 1 << 30 }, ParamValue::Int(1), "keep every stride-th trace point"),
];

const SLE_RESTRICTION: &[ParamSpec] = &[
    param!("kappa", KAPPA, ParamValue::Float(8.0 / 3.0), "SLE parameter"),
    param!("x", float(-1e3, 1e3), ParamValue::Float(1.0), "base of the vertical slit"),
    param!("h", positive(1e3), ParamValue::Float(1.0), "height of the vertical slit"),
    param!("dt", positive(1.0), ParamValue::Float(1e-3), "smallest time step"),
    param!("growth", float(0.0, 1.0), ParamValue::Float(1e-3), "time step as a fraction of elapsed time"),
    param!("horizon", positive(1e12), ParamValue::Float(1e4), "capacity time after which a trial is undecided"),
    param!(
        "escape_ratio",
        ParamKind::Float { min: 1.0, max: 1e9, open_min: true, open_max: false },
        ParamValue::Float(50.0),
        "distance-to-size ratio at which the curve has escaped the hull"
    ),
];

const SLE_CROSSING: &[ParamSpec] = &[
    param!("x", UNIT_OPEN, ParamValue::Float(0.25), "starting point in (0, 1)"),
    param!("kappa", KAPPA, ParamValue::Float(6.0), "SLE parameter"),
    param!("dt", positive(1.0), ParamValue::Float(1e-3), "time step near the targets"),
    param!("horizon", positive(1e12), ParamValue::Float(1e6), "capacity time after which a trial is undecided"),
];

const PERC_CROSSING: &[ParamSpec] = &[
    param!("domain", ParamKind::Choice(&["triangle", "square"]), ParamValue::Text("triangle".into()), "triangle (Carleson arcs) or square (rhombus)"),
    param!("x", ParamKind::Float { min: 0.0, max: 1.0, open_min: true, open_max: false }, ParamValue::Float(0.5), "Carleson arc fraction"),
    param!("mesh", ParamKind::Int { min: 2, max: 100_000 }, ParamValue::Int(100), "sites per side"),
];

const LERW_GROWTH: &[ParamSpec] = &[param!(
    "radius_set",
    ParamKind::IntList { min: 1, max: 100_000 },
    ParamValue::List(vec![16.0, 32.0, 64.0, 128.0]),
    "radii at which to measure the mean LERW length"
)];

const BM_EXCEPTIONAL: &[ParamSpec] = &[
    param!(
        "measure",
        ParamKind::Choice(&["dimensions", "nonintersection"]),
        ParamValue::Text("dimensions".into()),
        "cut/frontier/pioneer dimensions, or two-walk non-intersection"
    ),
    param!("steps", ParamKind::Int { min: 1, max: 1 << 32 }, ParamValue::Int(1_000_000), "walk length for dimensions"),
    param!(
        "ns",
        ParamKind::IntList { min: 1, max: 1 << 32 },
        ParamValue::List((7..=13).map(|k| (1u64 << k) as f64).collect()),
        "walk lengths for non-intersection"
    ),
];

const DIM_ESTIMATE: &[ParamSpec] = &[
    param!("source", ParamKind::Choice(&["lerw", "sle-radial", "sle-chordal"]), ParamValue::Text("lerw".into()), "point set to measure"),
    param!("radius", ParamKind::Int { min: 2, max: 100_000 }, ParamValue::Int(128), "LERW radius"),
    param!("kappa", KAPPA, ParamValue::Float(2.0), "SLE parameter"),
    param!("duration", positive(1e4), ParamValue::Float(0.5), "SLE capacity time"),
    param!("dt", positive(1.0), ParamValue::Float(5e-5), "SLE time step"),
];

const UST_PEANO: &[ParamSpec] = &[
    param!("width", ParamKind::Int { min: 1, max: 4096 }, ParamValue::Int(16), "grid width"),
    param!("height", ParamKind::Int { min: 1, max: 4096 }, ParamValue::Int(16), "grid height"),
];

/// Exceptional sets smaller than this get no dimension estimate; their
/// trials drop out of the dimension means.
pub const MIN_DIMENSION_SITES: usize = 100;

/// What one trial produced.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TrialOutput {
    pub values: BTreeMap<String, f64>,
    /// Text dump of the sampled object, when requested.
    pub artifact: Option<String>,
}

impl TrialOutput {
    fn set(&mut self, key: &str, v: f64) {
        self.values.insert(key.to_string(), v);
    }
}

fn flag(b: bool) -> f64 {
    if b {
        1.0
    } else {
        0.0
    }
}

fn core<T>(r: slelab_core::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn trace_text(trace: &Trace) -> String {
    let mut s = String::from("# slelab trace v1\n");
    for (p, t) in trace.points.iter().zip(&trace.times) {
        s.push_str(&format!("{t} {} {}\n", p.re, p.im));
    }
    s
}

/// Values of `key` across records that have it.
fn column(records: &[TrialRecord], key: &str) -> Vec<f64> {
    records.iter().filter_map(|r| r.values.get(key).copied()).collect()
}

fn proportion(records: &[TrialRecord], key: &str) -> Option<Estimate> {
    let v = column(records, key);
    Estimate::proportion(v.iter().filter(|&&x| x == 1.0).count(), v.len()).ok()
}

fn mean(records: &[TrialRecord], key: &str) -> Option<Estimate> {
    Estimate::mean(&column(records, key)).ok()
}

fn sle_params(p: Params, seed: u64) -> Result<SleParams, String> {
    core(SleParams::new(p.float("kappa"), p.float("duration"), p.float("dt"), seed))
}

impl ExperimentKind {
    pub const ALL: [ExperimentKind; 8] = [
        ExperimentKind::SleTrace,
        ExperimentKind::SleRestriction,
        ExperimentKind::SleCrossing,
        ExperimentKind::PercCrossing,
        ExperimentKind::LerwGrowth,
        ExperimentKind::BmExceptional,
        ExperimentKind::DimEstimate,
        ExperimentKind::UstPeano,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::SleTrace => "sle-trace",
            ExperimentKind::SleRestriction => "sle-restriction",
            ExperimentKind::SleCrossing => "sle-crossing",
            ExperimentKind::PercCrossing => "perc-crossing",
            ExperimentKind::LerwGrowth => "lerw-growth",
            ExperimentKind::BmExceptional => "bm-exceptional",
            ExperimentKind::DimEstimate => "dim-estimate",
            ExperimentKind::UstPeano => "ust-peano",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == s)
    }

    pub fn param_specs(self) -> &'static [ParamSpec] {
        match self {
            ExperimentKind::SleTrace => SLE_TRACE,
            ExperimentKind::SleRestriction => SLE_RESTRICTION,
            ExperimentKind::SleCrossing => SLE_CROSSING,
            ExperimentKind::PercCrossing => PERC_CROSSING,
            ExperimentKind::LerwGrowth => LERW_GROWTH,
            ExperimentKind::BmExceptional => BM_EXCEPTIONAL,
            ExperimentKind::DimEstimate => DIM_ESTIMATE,
            ExperimentKind::UstPeano => UST_PEANO,
        }
    }

    /// Whether trials can dump the object they sampled.
    pub fn has_artifacts(self) -> bool {
        matches!(
            self,
            ExperimentKind::SleTrace | ExperimentKind::PercCrossing | ExperimentKind::LerwGrowth | ExperimentKind::UstPeano
        )
    }

    /// Number of independent tasks behind `trials`: one per trial, except
    /// LERW growth which runs `trials` samples at every radius.
    pub fn task_count(self, p: Params, trials: u64) -> u64 {
        match self {
            ExperimentKind::LerwGrowth => trials * p.list("radius_set").len() as u64,
            _ => trials,
        }
    }

    /// Runs task `task` with its derived seed.
    pub fn run_trial(self, p: Params, trials: u64, task: u64, seed: u64, artifact: bool) -> Result<TrialOutput, String> {
        let mut out = TrialOutput::default();
        match self {
            ExperimentKind::SleTrace => {
                let params = sle_params(p, seed)?;
                let stride = p.int("stride") as usize;
                let trace = match p.text("geometry") {
                    "radial" => core(sample_radial_trace_strided(&params, stride))?,
                    _ => core(sample_chordal_trace_strided(&params, stride))?,
                };
                out.set("points", trace.len() as f64);
                out.set("min_self_distance", min_self_distance(&trace));
                if let Ok(d) = box_counting_dimension(&trace.xy(), trace.mean_step_length()) {
                    out.set("dimension", d.value);
                }
                let tip = trace.points.last().copied().unwrap_or_default();
                out.set("tip_re", tip.re);
                out.set("tip_im", tip.im);
                if artifact {
                    out.artifact = Some(trace_text(&trace));
                }
            }
            ExperimentKind::SleRestriction => {
                let hull = core(Hull::slit(p.float("x"), p.float("h")))?;
                let config = AvoidanceConfig {
                    kappa: p.float("kappa"),
                    dt: p.float("dt"),
                    growth: p.float("growth"),
                    horizon: p.float("horizon"),
                    escape_ratio: p.float("escape_ratio"),
                    ..AvoidanceConfig::default()
                };
                match core(avoidance_trial(&hull, &config, seed))? {
                    AvoidanceOutcome::Hit { time } => {
                        out.set("avoided", 0.0);
                        out.set("undecided", 0.0);
                        out.set("time", time);
                    }
                    AvoidanceOutcome::Escaped { time } => {
                        out.set("avoided", 1.0);
                        out.set("undecided", 0.0);
                        out.set("time", time);
                    }
                    AvoidanceOutcome::Undecided => {
                        out.set("avoided", 1.0);
                        out.set("undecided", 1.0);
                    }
                }
            }
            ExperimentKind::SleCrossing => {
                match core(chordal_crossing(p.float("x"), p.float("kappa"), p.float("dt"), p.float("horizon"), seed))? {
                    Crossing::Decided(o) => {
                        out.set("decided", 1.0);
                        out.set("hit_left", flag(o.hit_left));
                        out.set("stop_step", o.stop_step as f64);
                    }
                    Crossing::Undecided { steps } => {
                        out.set("decided", 0.0);
                        out.set("stop_step", steps as f64);
                    }
                }
            }
            ExperimentKind::PercCrossing => {
                let domain = perc_domain(p);
                let mesh = p.int("mesh") as u32;
                let setup = core(CrossingSetup::new(domain, mesh))?;
                out.set("crossed", flag(setup.trial(seed)));
                if artifact {
                    let mut c = core(percolation_sample(setup.region, seed))?;
                    if let CrossingDomain::CarlesonTriangle { x } = domain {
                        c = core(c.with_arcs(core(setup.region.carleson_arcs(x))?.to_vec()))?;
                    }
                    out.artifact = Some(write_coloring(&c));
                }
            }
            ExperimentKind::LerwGrowth => {
                let radii = p.list("radius_set");
                let r = radii[(task / trials.max(1)) as usize] as u32;
                let path = core(lerw_sample(r, seed))?;
                out.set("radius", r as f64);
                out.set("length", path.len() as f64);
                if artifact {
                    out.artifact = Some(write_path(&path));
                }
            }
            ExperimentKind::BmExceptional => match p.text("measure") {
                "nonintersection" => {
                    let max = *p.list("ns").last().unwrap() as usize;
                    let meet = first_meeting(max, derive_trial_seed(seed, 0), derive_trial_seed(seed, 1));
                    out.set("meeting_step", meet.map_or(-1.0, |k| k as f64));
                }
                _ => {
                    let path = sample_srw(p.int("steps") as usize, seed);
                    let frontier = frontier_sites(&path);
                    let mut pioneers: Vec<_> = pioneer_times(&path, None).into_iter().map(|k| path.points[k]).collect();
                    pioneers.sort_unstable();
                    pioneers.dedup();
                    let cuts: Vec<_> = cut_times(&path).into_iter().map(|k| path.points[k]).collect();
                    out.set("frontier_sites", frontier.len() as f64);
                    out.set("pioneer_sites", pioneers.len() as f64);
                    out.set("cut_times", cuts.len() as f64);
                    for (key, sites) in [("frontier_dim", frontier), ("pioneer_dim", pioneers), ("cut_dim", cuts)] {
                        if sites.len() < MIN_DIMENSION_SITES {
                            continue;
                        }
                        if let Ok(d) = box_counting_dimension(&site_points(sites), 1.0) {
                            out.set(key, d.value);
                        }
                    }
                }
            },
            ExperimentKind::DimEstimate => {
                let (points, resolution) = match p.text("source") {
                    "lerw" => {
                        let path = core(lerw_sample(p.int("radius") as u32, seed))?;
                        (site_points(path.points.iter().copied()), 1.0)
                    }
                    source => {
                        let params = sle_params(p, seed)?;
                        let trace = if source == "sle-radial" {
                            core(sample_radial_trace_strided(&params, 1))?
                        } else {
                            core(sample_chordal_trace_strided(&params, 1))?
                        };
                        (trace.xy(), trace.mean_step_length())
                    }
                };
                out.set("points", points.len() as f64);
                out.set("dimension", core(box_counting_dimension(&points, resolution))?.value);
            }
            ExperimentKind::UstPeano => {
                let (w, h) = (p.int("width") as usize, p.int("height") as usize);
                let graph = core(RegionGraph::grid(w, h))?;
                let tree = core(wilson_ust(&graph, &[0], seed))?;
                let curve = core(ust_peano_curve(&tree))?;
                let distinct = curve.distinct_sites().len();
                let expected = 4 * w * h;
                out.set("vertices", curve.points.len() as f64);
                out.set("visits_all_once", flag(curve.points.len() == expected && distinct == expected));
                if artifact {
                    out.artifact = Some(write_path(&curve));
                }
            }
        }
        Ok(out)
    }

    /// Folds successful trial records, in task order, into aggregates and
    /// plot series.
    pub fn aggregate(self, p: Params, records: &[TrialRecord]) -> (Vec<Aggregate>, Vec<Series>) {
        let mut aggs = Vec::new();
        let mut series = Vec::new();
        let none = BTreeMap::new;
        match self {
            ExperimentKind::SleTrace => {
                let simple: Vec<TrialRecord> = records
                    .iter()
                    .map(|r| {
                        let d = r.values.get("min_self_distance").copied().unwrap_or(0.0);
                        TrialRecord { values: [("simple".to_string(), flag(d > 0.0))].into(), ..r.clone() }
                    })
                    .collect();
                if let Some(e) = proportion(&simple, "simple") {
                    aggs.push(Aggregate::new("simple_fraction", none(), e, None));
                }
                if let Some(e) = mean(records, "dimension") {
                    aggs.push(Aggregate::new("dimension", none(), e, sle_dimension(p.float("kappa")).ok()));
                }
            }
            ExperimentKind::SleRestriction => {
                let exact = Hull::slit(p.float("x"), p.float("h")).and_then(|h| restriction_probability(&h)).ok();
                let exact = exact.filter(|_| (p.float("kappa") - 8.0 / 3.0).abs() < 1e-12);
                if let Some(e) = proportion(records, "avoided") {
                    aggs.push(Aggregate::new("avoidance", none(), e, exact));
                }
                if let Some(e) = proportion(records, "undecided") {
                    aggs.push(Aggregate::new("undecided_fraction", none(), e, None));
                }
            }
            ExperimentKind::SleCrossing => {
                let reference = if p.float("kappa") == 6.0 { cardy_halfplane(1.0 - p.float("x")).ok() } else { None };
                if let Some(e) = proportion(records, "hit_left") {
                    aggs.push(Aggregate::new("hit_left", none(), e, reference));
                }
                let undecided: Vec<TrialRecord> = records
                    .iter()
                    .map(|r| TrialRecord {
                        values: [("undecided".to_string(), 1.0 - r.values.get("decided").copied().unwrap_or(0.0))].into(),
                        ..r.clone()
                    })
                    .collect();
                if let Some(e) = proportion(&undecided, "undecided") {
                    aggs.push(Aggregate::new("undecided_fraction", none(), e, None));
                }
            }
            ExperimentKind::PercCrossing => {
                let reference = match perc_domain(p) {
                    CrossingDomain::CarlesonTriangle { x } => cardy_triangle(x).ok(),
                    CrossingDomain::ConformalSquare => Some(0.5),
                };
                if let Some(e) = proportion(records, "crossed") {
                    aggs.push(Aggregate::new("crossing", none(), e, reference));
                }
            }
            ExperimentKind::LerwGrowth => {
                let mut points = Vec::new();
                let mut rows = Vec::new();
                for &r in p.list("radius_set") {
                    let at_r: Vec<TrialRecord> = records.iter().filter(|t| t.values.get("radius") == Some(&r)).cloned().collect();
                    if let Some(e) = mean(&at_r, "length") {
                        let params = [("radius".to_string(), ParamValue::Int(r as i64))].into();
                        aggs.push(Aggregate::new("mean_length", params, e, None));
                        rows.push([r, e.value, e.stderr]);
                        if e.trials >= 2 {
                            points.push((r, e.value, e.stderr));
                        }
                    }
                }
                if let Ok(fit) = power_law_fit(&points, ExponentName::LerwGrowth) {
                    aggs.push(Aggregate::fit("growth_exponent", &fit, points.len(), Some(1.25)));
                }
                if !rows.is_empty() {
                    series.push(Series::new("mean_length", "radius", "mean_length", rows));
                }
            }
            ExperimentKind::BmExceptional => match p.text("measure") {
                "nonintersection" => {
                    let meets = column(records, "meeting_step");
                    let mut rows = Vec::new();
                    let mut points = Vec::new();
                    for &n in p.list("ns") {
                        let disjoint = meets.iter().filter(|&&m| m < 0.0 || m > n).count();
                        if let Ok(e) = Estimate::proportion(disjoint, meets.len()) {
                            let params = [("n".to_string(), ParamValue::Int(n as i64))].into();
                            aggs.push(Aggregate::new("nonintersection", params, e, None));
                            rows.push([n, e.value, e.stderr]);
                            if e.value > 0.0 {
                                points.push((n.powf(-0.5), e.value, e.stderr));
                            }
                        }
                    }
                    if let Ok(fit) = power_law_fit(&points, ExponentName::Eta1) {
                        aggs.push(Aggregate::fit("eta1", &fit, points.len(), Some(1.25)));
                    }
                    if !rows.is_empty() {
                        series.push(Series::new("nonintersection", "n", "probability", rows));
                    }
                }
                _ => {
                    for (key, target) in [("frontier_dim", 4.0 / 3.0), ("pioneer_dim", 1.75), ("cut_dim", 0.75)] {
                        if let Some(e) = mean(records, key) {
                            aggs.push(Aggregate::new(key, none(), e, Some(target)));
                        }
                    }
                }
            },
            ExperimentKind::DimEstimate => {
                let reference = match p.text("source") {
                    "lerw" => Some(1.25),
                    _ => sle_dimension(p.float("kappa")).ok(),
                };
                if let Some(e) = mean(records, "dimension") {
                    aggs.push(Aggregate::new("dimension", none(), e, reference));
                }
            }
            ExperimentKind::UstPeano => {
                if let Some(e) = proportion(records, "visits_all_once") {
                    aggs.push(Aggregate::new("space_filling", none(), e, Some(1.0)));
                }
            }
        }
        (aggs, series)
    }
}

fn perc_domain(p: Params) -> CrossingDomain {
    match p.text("domain") {
        "square" => CrossingDomain::ConformalSquare,
        _ => CrossingDomain::CarlesonTriangle { x: p.float("x") },
    }
}
