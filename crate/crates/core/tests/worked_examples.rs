//! Worked input/output examples, each checked against a value computed
//! independently in the test (closed form, substitution or a pointwise
//! evaluation) rather than against the library itself.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use it2flc::it2::blur_mf;
use it2flc::oracle::{fou_centroid_bruteforce, km_centroid};
use it2flc::pendulum::{
    compute_metrics, dynamics, pendulum_inputs, pendulum_it2, pendulum_t1, rk4_step, GaussianNoise,
    PendulumState, PlantParams, Trace, TraceRow, BLUR_DELTA, FORCE_RANGE,
};
use it2flc::{
    blur_variable, combine_centroid, decompose, make_triangle, LinguisticVariable, Rule, RuleBase,
    SampledMF, T1System, Universe,
};

/// Triangle degree written out directly, independent of the MF type.
fn tri(a: f64, b: f64, c: f64, x: f64) -> f64 {
    if x <= a || x >= c {
        0.0
    } else if x <= b {
        (x - a) / (b - a)
    } else {
        (c - x) / (c - b)
    }
}

fn sampled(a: f64, b: f64, c: f64, u: Universe, n: usize) -> SampledMF {
    SampledMF::sample(&make_triangle(a, b, c).unwrap(), u, n).unwrap()
}

#[test]
fn overlap_midpoint_splits_degree() {
    let [error, _] = pendulum_inputs();
    let x = -FRAC_PI_4 / 2.0;
    let d = error.degrees(x);
    // N falls from 1 at -pi/4 to 0 at 0, Z rises from 0 at -pi/4 to 1 at 0
    assert!((d[0] - 0.5).abs() < 1e-12 && (d[1] - 0.5).abs() < 1e-12 && d[2] == 0.0);
    assert!((d.iter().sum::<f64>() - 1.0).abs() < 1e-12);
}

#[test]
fn two_half_fired_adjacent_consequents() {
    let u = Universe::new(0.0, 4.0).unwrap();
    let input = LinguisticVariable::new(
        "x",
        Universe::new(0.0, 1.0).unwrap(),
        vec![
            ("A".into(), make_triangle(0.0, 0.0, 1.0).unwrap()),
            ("B".into(), make_triangle(0.0, 1.0, 1.0).unwrap()),
        ],
    )
    .unwrap();
    let output = LinguisticVariable::new(
        "y",
        u,
        vec![
            ("L".into(), make_triangle(0.0, 1.0, 2.5).unwrap()),
            ("R".into(), make_triangle(1.5, 3.0, 4.0).unwrap()),
        ],
    )
    .unwrap();
    let rules = RuleBase::new(vec![Rule::new(["A"], "L"), Rule::new(["B"], "R")]).unwrap();
    let sys = T1System::new(vec![input], output, rules, 401).unwrap();
    let agg = sys.infer(&[0.5]).unwrap();
    for (i, m) in agg.mu().iter().enumerate() {
        let x = agg.x(i);
        let expect = tri(0.0, 1.0, 2.5, x)
            .min(0.5)
            .max(tri(1.5, 3.0, 4.0, x).min(0.5));
        assert!((m - expect).abs() < 1e-12, "x={x}");
    }
}

#[test]
fn clipped_triangle_area_and_centroid() {
    let u = Universe::new(0.0, 2.0).unwrap();
    let mu: Vec<f64> = sampled(0.0, 1.0, 2.0, u, 1001)
        .mu()
        .iter()
        .map(|m| m.min(0.5))
        .collect();
    let c = SampledMF::new(u, mu).unwrap().centroid().unwrap();
    // trapezoid with bases 2 and 1, height 0.5
    let area = 0.5 * (2.0 + 1.0) / 2.0;
    assert!((c.area - area).abs() < 2e-3);
    assert!((c.value - 1.0).abs() < 1e-9);
}

#[test]
fn t1_corner_is_positive_shoulder_centroid() {
    let sys = pendulum_t1(1001);
    let y = sys.output_value(&[-FRAC_PI_4, -FRAC_PI_4]).unwrap();
    // only (N, N) -> P fires, at full strength: a right triangle on [0, F]
    // rising to the edge, centroid at 2F/3
    assert!((y - 2.0 * FORCE_RANGE / 3.0).abs() < 1e-3, "{y}");
}

#[test]
fn blur_by_sixteenth_pi() {
    let u = Universe::new(-FRAC_PI_4, FRAC_PI_4).unwrap();
    let d = PI / 16.0;
    let (lower, upper) =
        blur_mf(&make_triangle(-FRAC_PI_4, 0.0, FRAC_PI_4).unwrap(), d, u).unwrap();
    let close = |v: &[(f64, f64)], want: &[(f64, f64)]| {
        assert_eq!(v.len(), want.len(), "{v:?}");
        for (a, b) in v.iter().zip(want) {
            assert!(
                (a.0 - b.0).abs() < 1e-12 && (a.1 - b.1).abs() < 1e-12,
                "{v:?}"
            );
        }
    };
    // upper (-5pi/16, 0, 5pi/16) truncated to the universe keeps its value at the edge
    let edge = tri(-5.0 * d, 0.0, 5.0 * d, -FRAC_PI_4);
    let up = upper.vertices();
    assert!((up[0].0 + FRAC_PI_4).abs() < 1e-12 && (up[0].1 - edge).abs() < 1e-12);
    for k in 0..=20 {
        let x = -FRAC_PI_4 + k as f64 * FRAC_PI_4 / 10.0;
        assert!((upper.eval(x) - tri(-5.0 * d, 0.0, 5.0 * d, x)).abs() < 1e-12);
    }
    close(
        lower.vertices(),
        &[(-3.0 * d, 0.0), (0.0, 1.0), (3.0 * d, 0.0)],
    );

    let (lower, upper) =
        blur_mf(&make_triangle(-FRAC_PI_4, -FRAC_PI_4, 0.0).unwrap(), d, u).unwrap();
    close(upper.vertices(), &[(-FRAC_PI_4, 1.0), (d, 0.0)]);
    close(lower.vertices(), &[(-FRAC_PI_4, 1.0), (-d, 0.0)]);
    for k in 0..=20 {
        let x = -FRAC_PI_4 + k as f64 * FRAC_PI_4 / 10.0;
        assert!(lower.eval(x) <= upper.eval(x));
    }
}

#[test]
fn blur_band_fires_upper_path_only() {
    let u = Universe::new(0.0, 2.0).unwrap();
    let input = LinguisticVariable::new(
        "x",
        u,
        vec![("A".into(), make_triangle(0.0, 1.0, 2.0).unwrap())],
    )
    .unwrap();
    let output = LinguisticVariable::new(
        "y",
        u,
        vec![("B".into(), make_triangle(0.0, 1.0, 2.0).unwrap())],
    )
    .unwrap();
    let blurred = blur_variable(&input, 0.5).unwrap();
    let rules = RuleBase::new(vec![Rule::new(["A"], "B")]).unwrap();
    let sys = decompose(&[blurred], &output, &rules, 201).unwrap();
    // lower A is (0.5, 1, 1.5); 0.3 lies outside it but inside the upper support
    let (up, lo) = sys.evaluate_paths(&[0.3]).unwrap();
    assert!(lo.mu().iter().all(|&m| m == 0.0));
    assert!(up.area() > 0.0);
    let r = combine_centroid(&up, &lo).unwrap();
    assert_eq!(r.a_lower, 0.0);
    assert!((r.y - 1.0).abs() < 1e-9);
}

#[test]
fn combiner_examples() {
    let u = Universe::new(0.0, 4.0).unwrap();
    let y = combine_centroid(
        &sampled(0.0, 2.0, 4.0, u, 1001),
        &sampled(1.0, 2.0, 3.0, u, 1001),
    )
    .unwrap()
    .y;
    assert!((y - 2.0).abs() < 1e-9);

    let (up, lo) = (
        sampled(0.0, 1.0, 4.0, u, 1001),
        sampled(0.5, 1.0, 2.0, u, 1001),
    );
    let y = combine_centroid(&up, &lo).unwrap().y;
    assert!((y - fou_centroid_bruteforce(&up, &lo, 10_000).unwrap()).abs() <= 1e-4 * 4.0);
    // closed form: region between two triangles, centroids (a+b+c)/3, areas (c-a)/2
    let (au, al) = (2.0, 0.75);
    let (cu, cl) = (5.0 / 3.0, 3.5 / 3.0);
    assert!((y - (cu * au - cl * al) / (au - al)).abs() < 1e-5, "{y}");
}

#[test]
fn km_close_to_combiner_on_pendulum() {
    let sys = pendulum_it2(BLUR_DELTA, 1001).unwrap();
    let (up, lo) = sys.evaluate_paths(&[0.1, 0.0]).unwrap();
    let y = combine_centroid(&up, &lo).unwrap().y;
    let iv = km_centroid(&up, &lo).unwrap();
    let span = 2.0 * FORCE_RANGE;
    assert!(
        iv.contains(y) || (iv.midpoint() - y).abs() <= 0.1 * span,
        "{iv:?} vs {y}"
    );
}

#[test]
fn dynamics_by_substitution() {
    let p = PlantParams::default();
    let s = |y, y_dot, f_bar| PendulumState { y, y_dot, f_bar };
    let d = dynamics(&s(0.0, 0.0, 1.5), 0.0, &p).unwrap();
    assert!((d.y_dot + 2.0).abs() < 1e-12 && (d.f_bar + 150.0).abs() < 1e-12);
    let d = dynamics(&s(FRAC_PI_2, 0.0, 0.0), 0.0, &p).unwrap();
    assert!((d.y_dot - 1.5 * 9.8).abs() < 1e-12);
}

#[test]
fn actuator_lag_matches_closed_form() {
    let p = PlantParams::default();
    // the error is linear in f: about 3.3e-7 per newton of command
    let f = 1.0;
    let mut s = PendulumState {
        y: 0.0,
        y_dot: 0.0,
        f_bar: 0.0,
    };
    let mut worst: f64 = 0.0;
    for k in 1..=1000 {
        s = rk4_step(&s, f, 1e-3, &p).unwrap();
        let t = k as f64 * 1e-3;
        worst = worst.max((s.f_bar - f * (1.0 - (-100.0 * t).exp())).abs());
    }
    assert!(worst < 1e-6, "{worst}");
}

#[test]
fn halving_step_is_fourth_order() {
    let p = PlantParams::default();
    let endpoint = |dt: f64| {
        let mut s = PendulumState {
            y: 0.1,
            y_dot: 0.0,
            f_bar: 0.0,
        };
        for _ in 0..(1.0 / dt).round() as usize {
            s = rk4_step(&s, 5.0, dt, &p).unwrap();
        }
        s.y
    };
    let (a, b, c) = (endpoint(4e-3), endpoint(2e-3), endpoint(1e-3));
    let ratio = (a - b) / (b - c);
    assert!((12.0..20.0).contains(&ratio), "{ratio}");
}

#[test]
fn noise_sample_std() {
    let mut n = GaussianNoise::new(11, 0.01).unwrap();
    let xs: Vec<f64> = (0..100_000).map(|_| n.sample()).collect();
    let mean = xs.iter().sum::<f64>() / xs.len() as f64;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (xs.len() - 1) as f64;
    assert!((var.sqrt() / 0.01 - 1.0).abs() < 0.02);
}

#[test]
fn exponential_decay_settling() {
    let dt = 1e-3;
    let rows = (0..=10_000)
        .map(|k| {
            let t = k as f64 * dt;
            TraceRow {
                t,
                y: 0.1 * (-t).exp(),
                y_dot: 0.0,
                f_bar: 0.0,
                e_measured: 0.0,
                f_command: 0.0,
            }
        })
        .collect();
    let tr = Trace {
        dt,
        rows,
        undefined_outputs: 0,
        aborted: None,
    };
    let m = compute_metrics(&tr, 0.005).unwrap();
    let ts = m.settling_time.unwrap();
    assert!((ts - 20f64.ln()).abs() <= dt, "{ts}");
    assert_eq!(m.overshoot, 0.0);
}

#[test]
fn reference_scenario_transient_is_bounded() {
    use it2flc::pendulum::{run_closed_loop, SimConfig};
    let cfg = SimConfig::default();
    let p = PlantParams::default();
    let t1 = pendulum_t1(1001);
    let it2 = pendulum_it2(BLUR_DELTA, 1001).unwrap();
    for c in [&t1 as &dyn it2flc::Controller, &it2] {
        let tr = run_closed_loop(&cfg, &p, c).unwrap();
        let peak = tr.rows.iter().map(|r| r.y.abs()).fold(0.0, f64::max);
        assert!(peak <= 2.0 * cfg.theta0, "{peak}");
    }
}
