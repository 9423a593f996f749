//! Acceptance criteria. Runs without the libtest harness so that every
//! criterion prints one PASS/FAIL line; exits non-zero if any fails.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use it2flc::it2::count_fou_violations;
use it2flc::oracle::{fou_centroid_bruteforce, km_defuzz};
use it2flc::pendulum::{
    compute_metrics, dynamics, pendulum_it2, pendulum_t1, rk4_step, run_closed_loop, PendulumState,
    PlantParams, SimConfig, Trace, BLUR_DELTA, DEFAULT_BAND,
};
use it2flc::verify::random_fou_pair;
use it2flc::{combine_centroid, Controller, SampledMF, DEFAULT_GRID_SIZE};

type Outcome = Result<String, String>;

fn check(cond: bool, detail: String) -> Outcome {
    if cond {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn sat() -> f64 {
    FRAC_PI_4
}

fn run(controller: &dyn Controller, cfg: &SimConfig) -> (Trace, Duration) {
    let start = Instant::now();
    let tr = run_closed_loop(cfg, &PlantParams::default(), controller).expect("valid config");
    (tr, start.elapsed())
}

/// Centroid of the region between the linear interpolants of two sampled
/// sets, integrated exactly segment by segment.
fn exact_fou_centroid(upper: &SampledMF, lower: &SampledMF) -> f64 {
    let (mut area, mut moment) = (0.0, 0.0);
    let h: Vec<f64> = upper
        .mu()
        .iter()
        .zip(lower.mu())
        .map(|(u, l)| u - l)
        .collect();
    let hu = upper.mu();
    let fou = h.iter().sum::<f64>() > 0.0;
    let g = if fou { &h[..] } else { hu };
    for i in 0..g.len() - 1 {
        let (x0, x1) = (upper.x(i), upper.x(i + 1));
        let dx = x1 - x0;
        area += 0.5 * (g[i] + g[i + 1]) * dx;
        moment += dx * (x0 * (2.0 * g[i] + g[i + 1]) + x1 * (g[i] + 2.0 * g[i + 1])) / 6.0;
    }
    moment / area
}

fn c1_zero_blur() -> Outcome {
    let start = Instant::now();
    let t1 = pendulum_t1(DEFAULT_GRID_SIZE);
    let it2 = pendulum_it2(0.0, DEFAULT_GRID_SIZE).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let x = [
            rng.random_range(-sat()..=sat()),
            rng.random_range(-sat()..=sat()),
        ];
        worst = worst.max((it2.output_value(&x).unwrap() - t1.output_value(&x).unwrap()).abs());
    }
    let t = start.elapsed();
    check(
        worst <= 1e-9 && t < Duration::from_secs(5),
        format!("1000 inputs, max |it2 - t1| = {worst:e} (<= 1e-9), {t:.2?} (< 5 s)"),
    )
}

fn c2_combiner_oracle() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    let (mut worst, mut worst_exact): (f64, f64) = (0.0, 0.0);
    for _ in 0..200 {
        let (u, l) = random_fou_pair(&mut rng, DEFAULT_GRID_SIZE);
        let span = u.universe().span();
        let y = combine_centroid(&u, &l).unwrap().y;
        let bf = fou_centroid_bruteforce(&u, &l, 10_000).unwrap();
        worst = worst.max((y - bf).abs() / span);
        worst_exact = worst_exact.max((y - exact_fou_centroid(&u, &l)).abs() / span);
    }
    let t = start.elapsed();
    check(
        worst <= 1e-4 && worst_exact <= 1e-4 && t < Duration::from_secs(10),
        format!(
            "200 pairs, max |y - brute force| = {worst:.2e} span, max |y - exact| = {worst_exact:.2e} span (<= 1e-4), {t:.2?} (< 10 s)"
        ),
    )
}

fn c3_fou_ordering() -> Outcome {
    let it2 = pendulum_it2(BLUR_DELTA, DEFAULT_GRID_SIZE).unwrap();
    let node = |i: usize| -sat() + 2.0 * sat() * i as f64 / 100.0;
    let mut violations = 0;
    for i in 0..101 {
        for j in 0..101 {
            let (u, l) = it2.evaluate_paths(&[node(i), node(j)]).unwrap();
            violations += count_fou_violations(&u, &l).unwrap();
        }
    }
    check(
        violations == 0,
        format!("101 x 101 inputs x {DEFAULT_GRID_SIZE} nodes, {violations} violations"),
    )
}

struct NoiseFree {
    t1: Trace,
    it2: Trace,
    t1_time: Duration,
    it2_time: Duration,
}

fn noise_free_runs() -> NoiseFree {
    let cfg = SimConfig::default();
    assert_eq!(
        (cfg.theta0, cfg.theta_dot0, cfg.noise_sigma),
        (0.1, 0.0, 0.0)
    );
    let (t1, t1_time) = run(&pendulum_t1(DEFAULT_GRID_SIZE), &cfg);
    let (it2, it2_time) = run(&pendulum_it2(BLUR_DELTA, DEFAULT_GRID_SIZE).unwrap(), &cfg);
    NoiseFree {
        t1,
        it2,
        t1_time,
        it2_time,
    }
}

/// First time after which |y| < band for the rest of the trace, computed
/// directly from the rows.
fn settle(tr: &Trace) -> Option<f64> {
    let mut t = None;
    for r in tr.rows.iter().rev() {
        if r.y.abs() >= DEFAULT_BAND {
            break;
        }
        t = Some(r.t);
    }
    t
}

fn c4_stabilization(nf: &NoiseFree) -> Outcome {
    let (s1, s2) = (settle(&nf.t1), settle(&nf.it2));
    let end = |tr: &Trace| tr.rows.last().unwrap().t;
    let ok = |s: Option<f64>, tr: &Trace| {
        tr.aborted.is_none() && s.is_some_and(|s| s <= 5.0) && (end(tr) - 5.0).abs() < 1e-9
    };
    let lim = Duration::from_secs(5);
    check(
        ok(s1, &nf.t1) && ok(s2, &nf.it2) && nf.t1_time < lim && nf.it2_time < lim,
        format!(
            "settling t1 {s1:?} s, it2 {s2:?} s (hold |y| < 0.005 through 5 s); runtimes {:.2?}, {:.2?} (< 5 s)",
            nf.t1_time, nf.it2_time
        ),
    )
}

fn c5_it2_faster(nf: &NoiseFree) -> Outcome {
    let m1 = compute_metrics(&nf.t1, DEFAULT_BAND).unwrap().settling_time;
    let m2 = compute_metrics(&nf.it2, DEFAULT_BAND)
        .unwrap()
        .settling_time;
    let agree = m1 == settle(&nf.t1) && m2 == settle(&nf.it2);
    check(
        agree && matches!((m1, m2), (Some(a), Some(b)) if b <= a),
        format!("settling it2 {m2:?} s <= t1 {m1:?} s"),
    )
}

fn c6_noise_robustness() -> Outcome {
    let t1 = pendulum_t1(DEFAULT_GRID_SIZE);
    let it2 = pendulum_it2(BLUR_DELTA, DEFAULT_GRID_SIZE).unwrap();
    let rms = |tr: &Trace| {
        let rows = &tr.rows[tr.len() - tr.len().div_ceil(4)..];
        (rows.iter().map(|r| r.y * r.y).sum::<f64>() / rows.len() as f64).sqrt()
    };
    let (mut a, mut b) = (0.0, 0.0);
    for seed in 1..=10u64 {
        let cfg = SimConfig {
            noise_sigma: 0.01,
            seed,
            ..Default::default()
        };
        let (x, _) = run(&t1, &cfg);
        let (y, _) = run(&it2, &cfg);
        assert!(x.aborted.is_none() && y.aborted.is_none());
        let (rx, ry) = (rms(&x), rms(&y));
        assert!((rx - compute_metrics(&x, DEFAULT_BAND).unwrap().post_settle_rms).abs() < 1e-15);
        a += rx / 10.0;
        b += ry / 10.0;
    }
    check(
        b <= a,
        format!("sigma 0.01, seeds 1..=10: mean rms it2 {b:.6} <= t1 {a:.6} rad"),
    )
}

fn c7_km_proximity(nf: &NoiseFree) -> Outcome {
    let it2 = pendulum_it2(BLUR_DELTA, DEFAULT_GRID_SIZE).unwrap();
    let rows = &nf.it2.rows;
    let mut worst: f64 = 0.0;
    for k in 0..50 {
        let r = &rows[k * (rows.len() - 1) / 49];
        let x = [r.e_measured, (-r.y_dot).clamp(-sat(), sat())];
        let (u, l) = it2.evaluate_paths(&x).unwrap();
        let y = combine_centroid(&u, &l).unwrap().y;
        worst = worst.max((y - km_defuzz(&u, &l).unwrap()).abs() / u.universe().span());
    }
    check(
        worst <= 0.1,
        format!(
            "50 trajectory aggregates, max |y - km| = {:.2}% of span (<= 10%)",
            100.0 * worst
        ),
    )
}

fn c8_dynamics() -> Outcome {
    let p = PlantParams::default();
    let rest = PendulumState {
        y: 0.0,
        y_dot: 0.0,
        f_bar: 0.0,
    };
    let d0 = dynamics(&rest, 0.0, &p).unwrap();
    let d1 = dynamics(&PendulumState { f_bar: 1.5, ..rest }, 0.0, &p).unwrap();
    let d2 = dynamics(
        &PendulumState {
            y: FRAC_PI_2,
            ..rest
        },
        0.0,
        &p,
    )
    .unwrap();
    // direct substitution
    let e0 = d0.y.abs().max(d0.y_dot.abs()).max(d0.f_bar.abs());
    let e1 = (d1.y_dot - (0.0 + 1.0 * (-1.5 / 1.5)) / (2.0 / 3.0 - 1.0 / 6.0))
        .abs()
        .max((d1.f_bar + 150.0).abs());
    let e2 = (d2.y_dot - 9.8 / (2.0 / 3.0)).abs();
    let subst = e0.max(e1).max(e2);

    let (f, dt) = (1.0, 1e-3);
    let mut s = rest;
    let mut rk: f64 = 0.0;
    for k in 1..=1000 {
        s = rk4_step(&s, f, dt, &p).unwrap();
        rk = rk.max((s.f_bar - f * (1.0 - (-100.0 * k as f64 * dt).exp())).abs());
    }
    check(
        subst <= 1e-12 && rk <= 1e-6,
        format!("substitution error {subst:e} (<= 1e-12), actuator RK4 error {rk:.2e} (<= 1e-6)"),
    )
}

fn c9_symmetry() -> Outcome {
    let t1 = pendulum_t1(DEFAULT_GRID_SIZE);
    let it2 = pendulum_it2(BLUR_DELTA, DEFAULT_GRID_SIZE).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(909);
    let (mut w1, mut w2): (f64, f64) = (0.0, 0.0);
    for _ in 0..500 {
        let (e, de) = (
            rng.random_range(-sat()..=sat()),
            rng.random_range(-sat()..=sat()),
        );
        w1 = w1
            .max((t1.output_value(&[e, de]).unwrap() + t1.output_value(&[-e, -de]).unwrap()).abs());
        w2 = w2.max(
            (it2.output_value(&[e, de]).unwrap() + it2.output_value(&[-e, -de]).unwrap()).abs(),
        );
    }
    let mut wt: f64 = 0.0;
    for c in [&t1 as &dyn Controller, &it2] {
        let pos = SimConfig {
            theta0: 0.1,
            theta_dot0: 0.05,
            ..Default::default()
        };
        let neg = SimConfig {
            theta0: -0.1,
            theta_dot0: -0.05,
            ..Default::default()
        };
        let (a, _) = run(c, &pos);
        let (b, _) = run(c, &neg);
        for (x, y) in a.rows.iter().zip(&b.rows) {
            wt = wt.max((x.y + y.y).abs());
        }
    }
    check(
        w1 <= 1e-6 && w2 <= 1e-6 && wt <= 1e-9,
        format!("500 points: t1 {w1:.1e}, it2 {w2:.1e} (<= 1e-6); trajectory negation {wt:.1e} (<= 1e-9)"),
    )
}

fn c10_determinism() -> Outcome {
    let exe = env!("CARGO_BIN_EXE_it2flc");
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..");
    let dir = tempfile::tempdir().unwrap();
    let sim = |out: &str| {
        Command::new(exe)
            .args(["simulate", "--config"])
            .arg(root.join("configs/pendulum_it2.toml"))
            .args([
                "--controller",
                "it2",
                "--noise-sigma",
                "0.01",
                "--seed",
                "42",
                "--out",
            ])
            .arg(dir.path().join(out))
            .output()
            .unwrap()
    };
    let (a, b) = (sim("a.csv"), sim("b.csv"));
    let fa = std::fs::read(dir.path().join("a.csv")).unwrap_or_default();
    let fb = std::fs::read(dir.path().join("b.csv")).unwrap_or_default();
    let identical = a.status.success()
        && b.status.success()
        && !fa.is_empty()
        && fa == fb
        && a.stdout == b.stdout;
    let verify = Command::new(exe).arg("verify").output().unwrap();
    check(
        identical && verify.status.code() == Some(0),
        format!(
            "simulate twice: {} bytes, identical = {identical}; verify exit {:?}",
            fa.len(),
            verify.status.code()
        ),
    )
}

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn main() {
    let nf = noise_free_runs();
    let criteria: Vec<Criterion> = vec![
        ("zero-blur collapse", Box::new(c1_zero_blur)),
        (
            "combiner matches brute-force centroid",
            Box::new(c2_combiner_oracle),
        ),
        ("FOU ordering preserved", Box::new(c3_fou_ordering)),
        (
            "both controllers stabilize",
            Box::new(|| c4_stabilization(&nf)),
        ),
        ("type-2 settles no later", Box::new(|| c5_it2_faster(&nf))),
        (
            "type-2 less affected by noise",
            Box::new(c6_noise_robustness),
        ),
        (
            "combiner close to Karnik-Mendel",
            Box::new(|| c7_km_proximity(&nf)),
        ),
        ("dynamics and integrator", Box::new(c8_dynamics)),
        ("symmetry", Box::new(c9_symmetry)),
        ("determinism", Box::new(c10_determinism)),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(f))
            .unwrap_or_else(|_| Err("panicked".into()));
        let (tag, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!(
            "criterion {:>2} {tag} {name}: {detail} [{:.2?}]",
            i + 1,
            start.elapsed()
        );
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
