use std::path::{Path, PathBuf};

use super::{default_out_dir, write_file, CliError};
use crate::experiment::{gnuplot_script, run_experiment, ExperimentSpec};

#[derive(Debug, clap::Args)]
pub(crate) struct Args {
    /// Experiment file (TOML).
    #[arg(value_name = "EXPERIMENT")]
    spec: PathBuf,
    /// Report directory. Defaults to the experiment file's `output_dir`, then
    /// `$IT2FLC_OUT_DIR`, then `out`.
    #[arg(long)]
    out_dir: Option<PathBuf>,
    /// Also write the first-seed trace of every variant and a gnuplot
    /// script overlaying them.
    #[arg(long)]
    plot: bool,
}

pub(crate) fn run(a: Args) -> Result<(), CliError> {
    let spec = ExperimentSpec::load(&a.spec)?;
    let base_dir = a.spec.parent().unwrap_or(Path::new("")).to_path_buf();
    let out_dir = a
        .out_dir
        .clone()
        .or_else(|| spec.output_dir.as_ref().map(|d| base_dir.join(d)))
        .unwrap_or_else(default_out_dir);

    let out = run_experiment(&spec, &base_dir)?;
    let report = &out.report;
    write_file(&out_dir.join("report.csv"), report.runs_csv().as_bytes())?;
    write_file(
        &out_dir.join("summary.csv"),
        report.summary_csv().as_bytes(),
    )?;
    let text = report.to_text();
    write_file(&out_dir.join("report.txt"), text.as_bytes())?;

    if a.plot {
        let mut files = Vec::new();
        for (name, trace) in &out.traces {
            let file = format!("trace_{name}.csv");
            write_file(&out_dir.join(&file), trace.to_csv_string().as_bytes())?;
            files.push((name.clone(), file));
        }
        let script = gnuplot_script(&report.scenario, &files);
        write_file(&out_dir.join("plot.gp"), script.as_bytes())?;
    }

    print!("{text}");
    println!("report written to {}", out_dir.display());
    if report.passed() {
        Ok(())
    } else {
        Err(CliError::Failure(format!(
            "comparison failed: {} failed run(s), {} failed check(s)",
            report.failed_runs(),
            report.checks.iter().filter(|c| !c.passed).count()
        )))
    }
}
