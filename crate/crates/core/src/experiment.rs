//! Multi-run controller comparisons.
//!
//! ```toml
//! scenario = "noisy"
//! output_dir = "out/noisy"        # optional, relative to this file
//! repetitions = 10                # seeds base_seed .. base_seed + repetitions
//! base_seed = 1                   # or an explicit list: seeds = [3, 5, 8]
//! band = 0.005                    # optional settling band, rad
//! checks = ["settling_time", "post_settle_rms"]
//!
//! [sim]                           # same keys as a system config's [sim]
//! noise_sigma = 0.01
//!
//! [[variants]]
//! name = "t1"
//! controller = "t1"
//! config = "../configs/pendulum_t1.toml"   # optional, builtin pendulum if absent
//! ```
//!
//! Each check compares every type-1 variant against every type-2 variant
//! and passes when the type-2 mean is not larger.

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::{ControllerKind, SimSection, SystemConfig};
use crate::pendulum::{compute_metrics, run_closed_loop, Metrics, SimConfig, Trace, DEFAULT_BAND};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSpec {
    pub scenario: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_dir: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seeds: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub repetitions: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base_seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub band: Option<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<Metric>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sim: Option<SimSection>,
    pub variants: Vec<VariantSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VariantSpec {
    pub name: String,
    pub controller: ControllerKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    SettlingTime,
    Overshoot,
    Ise,
    PostSettleRms,
}

impl Metric {
    pub const ALL: [Metric; 4] = [
        Metric::SettlingTime,
        Metric::Overshoot,
        Metric::Ise,
        Metric::PostSettleRms,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Metric::SettlingTime => "settling_time",
            Metric::Overshoot => "overshoot",
            Metric::Ise => "ise",
            Metric::PostSettleRms => "post_settle_rms",
        }
    }

    fn of(self, m: &Metrics) -> Option<f64> {
        match self {
            Metric::SettlingTime => m.settling_time,
            Metric::Overshoot => Some(m.overshoot),
            Metric::Ise => Some(m.ise),
            Metric::PostSettleRms => Some(m.post_settle_rms),
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn bad(key: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Config {
        key: key.into(),
        message: message.into(),
    }
}

/// A variant with its system loaded.
#[derive(Debug, Clone)]
pub struct LoadedVariant {
    pub name: String,
    pub controller: ControllerKind,
    pub system: SystemConfig,
}

impl ExperimentSpec {
    pub fn from_toml_str(s: &str) -> Result<Self> {
        toml::from_str(s).map_err(|e| Error::Parse(e.to_string().trim_end().to_string()))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml_str(&text)
    }

    pub fn seed_schedule(&self) -> Result<Vec<u64>> {
        let seeds = match (&self.seeds, self.repetitions) {
            (Some(_), Some(_)) => {
                return Err(bad("seeds", "give `seeds` or `repetitions`, not both"))
            }
            (Some(s), None) => {
                if self.base_seed.is_some() {
                    return Err(bad("base_seed", "only applies to `repetitions`"));
                }
                s.clone()
            }
            (None, reps) => {
                let base = self.base_seed.unwrap_or(0);
                let reps = reps.unwrap_or(1);
                (0..reps)
                    .map(|k| {
                        base.checked_add(k)
                            .ok_or_else(|| bad("base_seed", "seed schedule overflows u64"))
                    })
                    .collect::<Result<_>>()?
            }
        };
        if seeds.is_empty() {
            return Err(bad("seeds", "at least one seed required"));
        }
        let mut seen = BTreeSet::new();
        for s in &seeds {
            if !seen.insert(s) {
                return Err(bad("seeds", format!("seed {s} repeated")));
            }
        }
        Ok(seeds)
    }

    pub fn band(&self) -> Result<f64> {
        match self.band {
            Some(b) if !(b.is_finite() && b > 0.0) => {
                Err(bad("band", format!("must be > 0, got {b}")))
            }
            b => Ok(b.unwrap_or(DEFAULT_BAND)),
        }
    }

    /// Base simulation settings; the seed is replaced per repetition.
    pub fn base_sim(&self) -> Result<SimConfig> {
        let cfg = self
            .sim
            .as_ref()
            .map(|s| s.apply(&SimConfig::default()))
            .unwrap_or_default();
        cfg.validate().map_err(|e| bad("sim", e.to_string()))?;
        Ok(cfg)
    }

    /// Validates the experiment and loads every variant's system. Relative
    /// config paths resolve against `base_dir`.
    pub fn load_variants(&self, base_dir: &Path) -> Result<Vec<LoadedVariant>> {
        if self.variants.is_empty() {
            return Err(bad("variants", "at least one variant required"));
        }
        let mut names = BTreeSet::new();
        self.variants
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let key = format!("variants[{i}]");
                let safe = !v.name.is_empty()
                    && v.name
                        .chars()
                        .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-');
                if !safe {
                    return Err(bad(
                        format!("{key}.name"),
                        "must be non-empty ASCII letters, digits, `_` or `-`",
                    ));
                }
                if !names.insert(v.name.as_str()) {
                    return Err(bad(format!("{key}.name"), format!("`{}` repeated", v.name)));
                }
                let system = match &v.config {
                    None => SystemConfig::pendulum(v.controller),
                    Some(p) => SystemConfig::load(base_dir.join(p)).map_err(|e| match e {
                        Error::Config { key: k, message } => {
                            bad(format!("{key}.config: {k}"), message)
                        }
                        other => bad(format!("{key}.config"), other.to_string()),
                    })?,
                };
                // build once up front so a bad system is a config error, not a failed run
                system
                    .build_controller(v.controller)
                    .map_err(|e| bad(format!("{key}.config"), e.to_string()))?;
                system
                    .plant()
                    .map_err(|e| bad(format!("{key}.config"), e.to_string()))?;
                Ok(LoadedVariant {
                    name: v.name.clone(),
                    controller: v.controller,
                    system,
                })
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    pub variant: String,
    pub controller: ControllerKind,
    pub seed: u64,
    pub metrics: Option<Metrics>,
    pub undefined_outputs: usize,
    /// Set when the run stopped early or could not start.
    pub failure: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Stat {
    pub n: usize,
    pub mean: f64,
    /// Sample standard deviation; 0 for a single value.
    pub std: f64,
}

impl Stat {
    fn of(xs: &[f64]) -> Option<Stat> {
        if xs.is_empty() {
            return None;
        }
        let n = xs.len();
        let mean = xs.iter().sum::<f64>() / n as f64;
        let std = if n > 1 {
            (xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64).sqrt()
        } else {
            0.0
        };
        Some(Stat { n, mean, std })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VariantSummary {
    pub name: String,
    pub controller: ControllerKind,
    pub runs: usize,
    pub failed: usize,
    pub settled: usize,
    /// Per metric, over the runs where it is defined. Settling time only
    /// counts settled runs.
    pub stats: Vec<(Metric, Option<Stat>)>,
}

impl VariantSummary {
    pub fn stat(&self, m: Metric) -> Option<Stat> {
        self.stats
            .iter()
            .find(|(k, _)| *k == m)
            .and_then(|(_, s)| *s)
    }

    /// Mean of `m` if every run produced it.
    fn complete_mean(&self, m: Metric) -> Option<f64> {
        self.stat(m).filter(|s| s.n == self.runs).map(|s| s.mean)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Delta {
    pub from: String,
    pub to: String,
    pub metric: Metric,
    /// `mean(to) - mean(from)`.
    pub value: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub metric: Metric,
    pub t1: String,
    pub it2: String,
    pub t1_mean: Option<f64>,
    pub it2_mean: Option<f64>,
    pub passed: bool,
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = |x: Option<f64>| x.map_or("n/a".to_string(), |x| format!("{x:.6}"));
        write!(
            f,
            "{} mean {}({}) <= mean {}({}): {} vs {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.metric,
            self.it2,
            self.metric,
            self.t1,
            v(self.it2_mean),
            v(self.t1_mean)
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonReport {
    pub scenario: String,
    pub seeds: Vec<u64>,
    pub band: f64,
    /// Sorted by variant order in the experiment file, then seed.
    pub runs: Vec<RunResult>,
    pub summaries: Vec<VariantSummary>,
    pub deltas: Vec<Delta>,
    pub checks: Vec<CheckResult>,
}

/// Output of [`run_experiment`]: the report plus the trace of the first
/// seed of every variant.
#[derive(Debug, Clone)]
pub struct ExperimentOutput {
    pub report: ComparisonReport,
    pub traces: Vec<(String, Trace)>,
}

/// Runs every variant under every seed, in parallel.
pub fn run_experiment(spec: &ExperimentSpec, base_dir: &Path) -> Result<ExperimentOutput> {
    let seeds = spec.seed_schedule()?;
    let band = spec.band()?;
    let base = spec.base_sim()?;
    let variants = spec.load_variants(base_dir)?;

    let jobs: Vec<(usize, usize)> = (0..variants.len())
        .flat_map(|v| (0..seeds.len()).map(move |s| (v, s)))
        .collect();
    let mut results: Vec<(usize, usize, RunResult, Option<Trace>)> = jobs
        .par_iter()
        .map(|&(vi, si)| {
            let v = &variants[vi];
            let cfg = SimConfig {
                seed: seeds[si],
                ..base.clone()
            };
            let (run, trace) = run_one(v, &cfg, band);
            (vi, si, run, if si == 0 { trace } else { None })
        })
        .collect();
    results.sort_by_key(|(vi, si, ..)| (*vi, *si));

    let mut runs = Vec::with_capacity(results.len());
    let mut traces = Vec::new();
    for (vi, _, run, trace) in results {
        if let Some(t) = trace {
            traces.push((variants[vi].name.clone(), t));
        }
        runs.push(run);
    }

    let summaries: Vec<VariantSummary> = variants
        .iter()
        .map(|v| summarize(v, runs.iter().filter(|r| r.variant == v.name)))
        .collect();

    let mut deltas = Vec::new();
    for (i, a) in summaries.iter().enumerate() {
        for b in &summaries[i + 1..] {
            for m in Metric::ALL {
                let value = match (a.stat(m), b.stat(m)) {
                    (Some(x), Some(y)) => Some(y.mean - x.mean),
                    _ => None,
                };
                deltas.push(Delta {
                    from: a.name.clone(),
                    to: b.name.clone(),
                    metric: m,
                    value,
                });
            }
        }
    }

    let mut checks = Vec::new();
    for &m in &spec.checks {
        for a in summaries
            .iter()
            .filter(|s| s.controller == ControllerKind::T1)
        {
            for b in summaries
                .iter()
                .filter(|s| s.controller == ControllerKind::It2)
            {
                let (t1_mean, it2_mean) = (a.complete_mean(m), b.complete_mean(m));
                let passed = matches!((t1_mean, it2_mean), (Some(x), Some(y)) if y <= x);
                checks.push(CheckResult {
                    metric: m,
                    t1: a.name.clone(),
                    it2: b.name.clone(),
                    t1_mean,
                    it2_mean,
                    passed,
                });
            }
        }
    }

    Ok(ExperimentOutput {
        report: ComparisonReport {
            scenario: spec.scenario.clone(),
            seeds,
            band,
            runs,
            summaries,
            deltas,
            checks,
        },
        traces,
    })
}

fn run_one(v: &LoadedVariant, cfg: &SimConfig, band: f64) -> (RunResult, Option<Trace>) {
    let mut run = RunResult {
        variant: v.name.clone(),
        controller: v.controller,
        seed: cfg.seed,
        metrics: None,
        undefined_outputs: 0,
        failure: None,
    };
    let outcome = (|| {
        let controller = v.system.build_controller(v.controller)?;
        let plant = v.system.plant()?;
        run_closed_loop(cfg, &plant, controller.as_ref())
    })();
    match outcome {
        Err(e) => {
            run.failure = Some(e.to_string());
            (run, None)
        }
        Ok(trace) => {
            run.undefined_outputs = trace.undefined_outputs;
            run.failure = trace.aborted.clone();
            if run.failure.is_none() {
                match compute_metrics(&trace, band) {
                    Ok(m) => run.metrics = Some(m),
                    Err(e) => run.failure = Some(e.to_string()),
                }
            }
            (run, Some(trace))
        }
    }
}

fn summarize<'a>(v: &LoadedVariant, runs: impl Iterator<Item = &'a RunResult>) -> VariantSummary {
    let runs: Vec<&RunResult> = runs.collect();
    let metrics: Vec<&Metrics> = runs.iter().filter_map(|r| r.metrics.as_ref()).collect();
    let stats = Metric::ALL
        .iter()
        .map(|&m| {
            let xs: Vec<f64> = metrics.iter().filter_map(|x| m.of(x)).collect();
            (m, Stat::of(&xs))
        })
        .collect();
    VariantSummary {
        name: v.name.clone(),
        controller: v.controller,
        runs: runs.len(),
        failed: runs.iter().filter(|r| r.failure.is_some()).count(),
        settled: metrics.iter().filter(|m| m.settled()).count(),
        stats,
    }
}

fn opt(x: Option<f64>) -> String {
    x.map_or(String::new(), |x| format!("{x:?}"))
}

impl ComparisonReport {
    pub fn failed_runs(&self) -> usize {
        self.runs.iter().filter(|r| r.failure.is_some()).count()
    }

    pub fn passed(&self) -> bool {
        self.failed_runs() == 0 && self.checks.iter().all(|c| c.passed)
    }

    pub fn summary(&self, variant: &str) -> Option<&VariantSummary> {
        self.summaries.iter().find(|s| s.name == variant)
    }

    /// One row per run; an empty settling time means the run did not settle.
    pub fn runs_csv(&self) -> String {
        let mut s = String::from(
            "variant,controller,seed,settling_time,overshoot,ise,post_settle_rms,undefined_outputs,status\n",
        );
        for r in &self.runs {
            let m = r.metrics.as_ref();
            let status = match (&r.failure, m) {
                (Some(_), _) => "failed",
                (None, Some(m)) if m.settled() => "settled",
                _ => "not_settled",
            };
            let _ = writeln!(
                s,
                "{},{},{},{},{},{},{},{},{}",
                r.variant,
                r.controller,
                r.seed,
                opt(m.and_then(|m| m.settling_time)),
                opt(m.map(|m| m.overshoot)),
                opt(m.map(|m| m.ise)),
                opt(m.map(|m| m.post_settle_rms)),
                r.undefined_outputs,
                status
            );
        }
        s
    }

    /// Mean and standard deviation per variant and metric.
    pub fn summary_csv(&self) -> String {
        let mut s = String::from("variant,controller,metric,n,mean,std\n");
        for v in &self.summaries {
            for (m, st) in &v.stats {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{}",
                    v.name,
                    v.controller,
                    m,
                    st.map_or(0, |x| x.n),
                    opt(st.map(|x| x.mean)),
                    opt(st.map(|x| x.std))
                );
            }
        }
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "scenario {}: {} variant(s) x {} seed(s), band {} rad",
            self.scenario,
            self.summaries.len(),
            self.seeds.len(),
            self.band
        );
        let _ = writeln!(
            s,
            "\n{:<12} {:<4} {:>5} {:>7} {:>7}  {:<22} {:<22} {:<22} {:<22}",
            "variant",
            "ctl",
            "runs",
            "failed",
            "settled",
            "settling_time s",
            "overshoot rad",
            "ise",
            "post_settle_rms rad"
        );
        for v in &self.summaries {
            let cell = |m: Metric| {
                v.stat(m)
                    .map_or("n/a".into(), |x| format!("{:.5} +- {:.5}", x.mean, x.std))
            };
            let _ = writeln!(
                s,
                "{:<12} {:<4} {:>5} {:>7} {:>7}  {:<22} {:<22} {:<22} {:<22}",
                v.name,
                v.controller.to_string(),
                v.runs,
                v.failed,
                v.settled,
                cell(Metric::SettlingTime),
                cell(Metric::Overshoot),
                cell(Metric::Ise),
                cell(Metric::PostSettleRms)
            );
        }
        if !self.deltas.is_empty() {
            let _ = writeln!(s, "\ndeltas (mean of second minus mean of first):");
            for d in &self.deltas {
                let _ = writeln!(
                    s,
                    "  {} -> {} {:<16} {}",
                    d.from,
                    d.to,
                    d.metric.name(),
                    d.value.map_or("n/a".into(), |x| format!("{x:+.6}"))
                );
            }
        }
        if !self.checks.is_empty() {
            let _ = writeln!(s, "\nchecks:");
            for c in &self.checks {
                let _ = writeln!(s, "  {c}");
            }
        }
        for r in self.runs.iter().filter(|r| r.failure.is_some()) {
            let _ = writeln!(
                s,
                "\nrun {} seed {} failed: {}",
                r.variant,
                r.seed,
                r.failure.as_deref().unwrap_or_default()
            );
        }
        let _ = writeln!(s, "\n{}", if self.passed() { "PASS" } else { "FAIL" });
        s
    }
}

/// Gnuplot script overlaying `y(t)` of the given trace files.
pub fn gnuplot_script(title: &str, traces: &[(String, String)]) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "set datafile separator ','");
    let _ = writeln!(s, "set title '{}'", title.replace('\'', ""));
    let _ = writeln!(s, "set xlabel 't (s)'");
    let _ = writeln!(s, "set ylabel 'y (rad)'");
    let _ = writeln!(s, "set grid");
    let _ = writeln!(s, "set key top right");
    let plots: Vec<String> = traces
        .iter()
        .map(|(name, file)| format!("'{file}' using 1:2 skip 1 with lines title '{name}'"))
        .collect();
    let _ = writeln!(s, "plot {}", plots.join(", \\\n     "));
    s
}
