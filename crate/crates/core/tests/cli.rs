use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn it2flc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_it2flc"))
        .args(args)
        .env_remove("IT2FLC_OUT_DIR")
        .output()
        .unwrap()
}

fn config(name: &str) -> String {
    root()
        .join("configs")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn simulate_writes_decaying_trace() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t1.csv");
    let o = it2flc(&[
        "simulate",
        "--config",
        &config("pendulum_t1.toml"),
        "--controller",
        "t1",
        "--out",
        out.to_str().unwrap(),
        "--duration",
        "2",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let summary = String::from_utf8(o.stdout).unwrap();
    assert_eq!(summary.lines().count(), 1);
    assert!(summary.starts_with("controller=t1 rows=2001 "), "{summary}");
    let csv = std::fs::read_to_string(out).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("t,y,y_dot,f_bar,e_measured,f_command"));
    let ys: Vec<f64> = lines
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(ys.len(), 2001);
    assert_eq!(ys[0], 0.1);
    assert!(ys[2000].abs() < 0.05);
}

#[test]
fn noise_free_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let p = dir.path().join(name);
        let o = it2flc(&[
            "simulate",
            "--config",
            &config("pendulum_it2.toml"),
            "--controller",
            "it2",
            "--out",
            p.to_str().unwrap(),
            "--noise-sigma",
            "0",
            "--seed",
            "5",
            "--duration",
            "1",
        ]);
        assert!(o.status.success(), "{}", stderr(&o));
        std::fs::read(p).unwrap()
    };
    assert_eq!(run("a.csv"), run("b.csv"));
}

#[test]
fn usage_and_config_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.csv");
    let out = out.to_str().unwrap();
    let o = it2flc(&[
        "simulate",
        "--config",
        "/nonexistent.toml",
        "--controller",
        "t1",
        "--out",
        out,
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("/nonexistent.toml"));

    let bad = dir.path().join("bad.toml");
    let text = std::fs::read_to_string(config("pendulum_t1.toml"))
        .unwrap()
        .replacen("universe = [-50.0, 50.0]", "universe = [50.0, -50.0]", 1);
    std::fs::write(&bad, text).unwrap();
    let o = it2flc(&[
        "simulate",
        "--config",
        bad.to_str().unwrap(),
        "--controller",
        "t1",
        "--out",
        out,
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("output.universe"), "{}", stderr(&o));

    let o = it2flc(&[
        "simulate",
        "--config",
        &config("pendulum_t1.toml"),
        "--controller",
        "t3",
        "--out",
        out,
    ]);
    assert_eq!(o.status.code(), Some(2));
    let o = it2flc(&[
        "simulate",
        "--config",
        &config("pendulum_t1.toml"),
        "--controller",
        "t1",
        "--out",
        out,
        "--dt",
        "-1",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let o = it2flc(&["verify", "--tolerance", "nope=1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_zero_tolerance_fails() {
    let o = it2flc(&["verify", "--cases", "3", "--tolerance", "0"]);
    assert_eq!(o.status.code(), Some(1));
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("combiner      FAIL"), "{text}");
}

#[test]
fn compare_single_variant_with_plot() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("one.toml");
    std::fs::write(
        &spec,
        format!(
            "scenario = \"one\"\noutput_dir = \"report\"\nseeds = [3]\n[sim]\nduration = 1.0\n[[variants]]\nname = \"t1\"\ncontroller = \"t1\"\nconfig = {:?}\n",
            config("pendulum_t1.toml")
        ),
    )
    .unwrap();
    let o = it2flc(&["compare", spec.to_str().unwrap(), "--plot"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let report = dir.path().join("report");
    for f in [
        "report.csv",
        "summary.csv",
        "report.txt",
        "plot.gp",
        "trace_t1.csv",
    ] {
        assert!(report.join(f).exists(), "{f}");
    }
    let text = std::fs::read_to_string(report.join("report.txt")).unwrap();
    assert!(!text.contains("deltas"));
    // the plot script references only files that were written
    let gp = std::fs::read_to_string(report.join("plot.gp")).unwrap();
    for name in gp.split('\'').filter(|s| s.ends_with(".csv")) {
        assert!(report.join(name).exists(), "{name}");
    }
}

#[test]
fn compare_out_dir_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("one.toml");
    std::fs::write(&spec, "scenario = \"env\"\n[sim]\nduration = 0.2\n[[variants]]\nname = \"a\"\ncontroller = \"it2\"\n").unwrap();
    let target = dir.path().join("from_env");
    let o = Command::new(env!("CARGO_BIN_EXE_it2flc"))
        .args(["compare", spec.to_str().unwrap()])
        .env("IT2FLC_OUT_DIR", &target)
        .output()
        .unwrap();
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(target.join("report.csv").exists());
}

#[test]
fn compare_failing_check_exits_1() {
    // a type-1 run that never settles inside 0.5 s makes the check fail
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("short.toml");
    std::fs::write(
        &spec,
        "scenario = \"short\"\nchecks = [\"settling_time\"]\n[sim]\nduration = 0.5\n[[variants]]\nname = \"t1\"\ncontroller = \"t1\"\n[[variants]]\nname = \"it2\"\ncontroller = \"it2\"\n",
    )
    .unwrap();
    let o = it2flc(&[
        "compare",
        spec.to_str().unwrap(),
        "--out-dir",
        dir.path().join("r").to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1), "{}", stderr(&o));
}

#[test]
fn bench_csv_shape() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("bench.csv");
    let o = it2flc(&[
        "bench",
        "--cases",
        "4",
        "--grid-sizes",
        "101,201",
        "--repeats",
        "1",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let csv = std::fs::read_to_string(out).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next(),
        Some("method,grid_size,case_id,y,iterations,nanoseconds")
    );
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 2 * 2 * 4);
    for r in &rows {
        assert_eq!(r.len(), 6);
        r[3].parse::<f64>().unwrap();
        r[5].parse::<u128>().unwrap();
        match r[0] {
            "combine" => assert_eq!(r[4], "n/a"),
            "km" => assert!(r[4].parse::<usize>().unwrap() >= 1),
            m => panic!("method {m}"),
        }
    }
}
