//! Self-check suites run by `it2flc verify`.
//!
//! Each suite compares the library against an independent computation and
//! counts the cases whose error exceeds the suite tolerance.

use std::collections::BTreeMap;
use std::f64::consts::FRAC_PI_4;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::it2::count_fou_violations;
use crate::oracle::{fou_centroid_bruteforce, km_defuzz};
use crate::pendulum::{
    pendulum_it2, pendulum_t1, run_closed_loop, PlantParams, SimConfig, BLUR_DELTA,
};
use crate::{
    combine_centroid, make_triangle, Error, Result, SampledMF, Universe, DEFAULT_GRID_SIZE,
};

/// Strip count for the brute force footprint centroid.
pub const BRUTEFORCE_RESOLUTION: usize = 10_000;
/// Nodes per axis of the input grid scanned for footprint ordering.
pub const ORDER_GRID: usize = 101;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    /// Decomposed system with zero blur against the type-1 system.
    ZeroBlur,
    /// Closed-form combiner against the brute force footprint centroid.
    Combiner,
    /// Lower aggregate never above the upper one over an input grid.
    FouOrder,
    /// Combiner against the Karnik-Mendel midpoint along a closed-loop run.
    KmProximity,
}

impl Suite {
    pub const ALL: [Suite; 4] = [
        Suite::ZeroBlur,
        Suite::Combiner,
        Suite::FouOrder,
        Suite::KmProximity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::ZeroBlur => "zero_blur",
            Suite::Combiner => "combiner",
            Suite::FouOrder => "fou_order",
            Suite::KmProximity => "km_proximity",
        }
    }

    /// Cases drawn when `--cases` is not given. The ordering suite always
    /// scans the full grid.
    pub fn default_cases(self) -> usize {
        match self {
            Suite::ZeroBlur => 1000,
            Suite::Combiner => 100,
            Suite::FouOrder => ORDER_GRID * ORDER_GRID,
            Suite::KmProximity => 50,
        }
    }

    /// Absolute for `zero_blur` and `fou_order`, a fraction of the output
    /// span for `combiner` and `km_proximity`.
    pub fn default_tolerance(self) -> f64 {
        match self {
            Suite::ZeroBlur => 1e-9,
            Suite::Combiner => 1e-4,
            Suite::FouOrder => 0.0,
            Suite::KmProximity => 0.1,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Suite::ALL.iter().map(|x| x.name()).collect();
                Error::InvalidParameter(format!(
                    "unknown suite `{s}`, expected one of {}",
                    names.join(", ")
                ))
            })
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct VerifyOptions {
    /// Overrides the case count of the randomized suites.
    pub cases: Option<usize>,
    pub seed: u64,
    pub tolerances: BTreeMap<Suite, f64>,
}

impl VerifyOptions {
    pub fn tolerance(&self, suite: Suite) -> f64 {
        self.tolerances
            .get(&suite)
            .copied()
            .unwrap_or(suite.default_tolerance())
    }

    fn cases(&self, suite: Suite) -> usize {
        match suite {
            Suite::FouOrder => suite.default_cases(),
            _ => self.cases.unwrap_or(suite.default_cases()),
        }
    }

    fn rng(&self, suite: Suite) -> ChaCha8Rng {
        // one independent stream per suite
        ChaCha8Rng::seed_from_u64(self.seed ^ ((suite as u64 + 1) << 56))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub cases: usize,
    pub failures: usize,
    /// Largest error seen, in the suite's tolerance units.
    pub worst: f64,
    pub tolerance: f64,
    pub elapsed: Duration,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.cases > 0 && self.failures == 0
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<13} {} {}/{} passed, worst {:.3e}, tolerance {:e}, {:.2?}",
            self.suite.name(),
            if self.passed() { "PASS" } else { "FAIL" },
            self.cases - self.failures,
            self.cases,
            self.worst,
            self.tolerance,
            self.elapsed
        )
    }
}

struct Tally {
    cases: usize,
    failures: usize,
    worst: f64,
    tol: f64,
}

impl Tally {
    fn new(tol: f64) -> Self {
        Self {
            cases: 0,
            failures: 0,
            worst: 0.0,
            tol,
        }
    }

    fn record(&mut self, err: f64) {
        self.cases += 1;
        if err.is_nan() || err > self.tol {
            self.failures += 1;
        }
        if err.is_nan() || err > self.worst {
            self.worst = err;
        }
    }
}

pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> Result<SuiteReport> {
    let start = Instant::now();
    let mut tally = Tally::new(opts.tolerance(suite));
    let n = opts.cases(suite);
    let mut rng = opts.rng(suite);
    match suite {
        Suite::ZeroBlur => {
            let t1 = pendulum_t1(DEFAULT_GRID_SIZE);
            let it2 = pendulum_it2(0.0, DEFAULT_GRID_SIZE)?;
            for _ in 0..n {
                let x = [
                    rng.random_range(-FRAC_PI_4..=FRAC_PI_4),
                    rng.random_range(-FRAC_PI_4..=FRAC_PI_4),
                ];
                tally.record((it2.output_value(&x)? - t1.output_value(&x)?).abs());
            }
        }
        Suite::Combiner => {
            for _ in 0..n {
                let (upper, lower) = random_fou_pair(&mut rng, DEFAULT_GRID_SIZE);
                let y = combine_centroid(&upper, &lower)?.y;
                let reference = fou_centroid_bruteforce(&upper, &lower, BRUTEFORCE_RESOLUTION)?;
                tally.record((y - reference).abs() / upper.universe().span());
            }
        }
        Suite::FouOrder => {
            let it2 = pendulum_it2(BLUR_DELTA, DEFAULT_GRID_SIZE)?;
            let node = |i: usize| -FRAC_PI_4 + 2.0 * FRAC_PI_4 * i as f64 / (ORDER_GRID - 1) as f64;
            for i in 0..ORDER_GRID {
                for j in 0..ORDER_GRID {
                    let (u, l) = it2.evaluate_paths(&[node(i), node(j)])?;
                    let excess = u
                        .mu()
                        .iter()
                        .zip(l.mu())
                        .fold(0.0_f64, |m, (u, l)| m.max(l - u));
                    debug_assert_eq!(count_fou_violations(&u, &l)? > 0, excess > 0.0);
                    tally.record(excess);
                }
            }
        }
        Suite::KmProximity => {
            let it2 = pendulum_it2(BLUR_DELTA, DEFAULT_GRID_SIZE)?;
            for (e, e_dot) in trajectory_inputs(&it2, n)? {
                let (u, l) = it2.evaluate_paths(&[e, e_dot])?;
                let y = combine_centroid(&u, &l)?.y;
                tally.record((y - km_defuzz(&u, &l)?).abs() / u.universe().span());
            }
        }
    }
    Ok(SuiteReport {
        suite,
        cases: tally.cases,
        failures: tally.failures,
        worst: tally.worst,
        tolerance: tally.tol,
        elapsed: start.elapsed(),
    })
}

pub fn run_all(opts: &VerifyOptions) -> Result<Vec<SuiteReport>> {
    Suite::ALL.iter().map(|&s| run_suite(s, opts)).collect()
}

/// Controller inputs at `count` evenly spaced steps of the noise-free
/// default closed-loop run of `controller`.
pub fn trajectory_inputs(
    controller: &dyn crate::Controller,
    count: usize,
) -> Result<Vec<(f64, f64)>> {
    let cfg = SimConfig::default();
    let trace = run_closed_loop(&cfg, &PlantParams::default(), controller)?;
    if let Some(why) = &trace.aborted {
        return Err(Error::InvalidParameter(format!(
            "reference run aborted: {why}"
        )));
    }
    let last = trace.len() - 1;
    Ok((0..count)
        .map(|k| {
            let i = if count > 1 { k * last / (count - 1) } else { 0 };
            let r = &trace.rows[i];
            (
                r.e_measured,
                (-r.y_dot).clamp(-cfg.saturation, cfg.saturation),
            )
        })
        .collect())
}

/// A random `(upper, lower)` aggregate pair with `lower <= upper`: upper is
/// the max of one to four clipped triangles, lower the max of narrower
/// triangles inside them clipped lower still. The lower set may be empty.
pub fn random_fou_pair<R: Rng>(rng: &mut R, grid_size: usize) -> (SampledMF, SampledMF) {
    let lo = rng.random_range(-100.0..100.0);
    let span = rng.random_range(0.5..200.0);
    let universe = Universe::new(lo, lo + span).expect("positive span");
    let mut upper = vec![0.0_f64; grid_size];
    let mut lower = vec![0.0_f64; grid_size];
    let x = |i: usize| lo + span * i as f64 / (grid_size - 1) as f64;
    for _ in 0..rng.random_range(1..=4) {
        let b = lo + span * rng.random_range(0.0..=1.0);
        let wl = span * rng.random_range(0.02..0.6);
        let wr = span * rng.random_range(0.02..0.6);
        let h = rng.random_range(0.05..=1.0);
        let outer = make_triangle(b - wl, b, b + wr).expect("ordered vertices");
        let shrink = rng.random_range(0.1..=1.0);
        let inner = make_triangle(b - wl * shrink, b, b + wr * shrink).expect("ordered vertices");
        let hl = if rng.random_bool(0.2) {
            0.0
        } else {
            h * rng.random_range(0.0..=1.0)
        };
        for i in 0..grid_size {
            upper[i] = upper[i].max(outer.eval(x(i)).min(h));
            lower[i] = lower[i].max(inner.eval(x(i)).min(hl));
        }
    }
    for (l, u) in lower.iter_mut().zip(&upper) {
        *l = l.min(*u);
    }
    (
        SampledMF::new(universe, upper).expect("degrees in [0, 1]"),
        SampledMF::new(universe, lower).expect("degrees in [0, 1]"),
    )
}
