use std::path::PathBuf;

use clap::builder::PossibleValuesParser;
use clap::builder::TypedValueParser;

use super::{write_file, CliError};
use crate::config::{ControllerKind, SystemConfig};
use crate::pendulum::{compute_metrics, run_closed_loop, DEFAULT_BAND};

pub(crate) fn controller_parser() -> impl TypedValueParser<Value = ControllerKind> {
    PossibleValuesParser::new(["t1", "it2"])
        .map(|s| s.parse::<ControllerKind>().expect("listed value"))
}

#[derive(Debug, clap::Args)]
pub(crate) struct Args {
    /// System config (TOML).
    #[arg(long)]
    config: PathBuf,
    #[arg(long, value_parser = controller_parser())]
    controller: ControllerKind,
    /// Trace CSV to write.
    #[arg(long)]
    out: PathBuf,
    /// Std of the noise added to the error input, rad.
    #[arg(long)]
    noise_sigma: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Step, s.
    #[arg(long)]
    dt: Option<f64>,
    /// Simulated time, s.
    #[arg(long)]
    duration: Option<f64>,
    /// Initial angle, rad.
    #[arg(long)]
    theta0: Option<f64>,
}

pub(crate) fn run(a: Args) -> Result<(), CliError> {
    let system = SystemConfig::load(&a.config)?;
    let mut cfg = system.sim_config()?;
    if let Some(v) = a.noise_sigma {
        cfg.noise_sigma = v;
    }
    if let Some(v) = a.seed {
        cfg.seed = v;
    }
    if let Some(v) = a.dt {
        cfg.dt = v;
    }
    if let Some(v) = a.duration {
        cfg.duration = v;
    }
    if let Some(v) = a.theta0 {
        cfg.theta0 = v;
    }
    cfg.validate()?;
    let controller = system.build_controller(a.controller)?;
    let trace = run_closed_loop(&cfg, &system.plant()?, controller.as_ref())?;
    write_file(&a.out, trace.to_csv_string().as_bytes())?;

    let m = compute_metrics(&trace, DEFAULT_BAND)?;
    println!(
        "controller={} rows={} settling_time={} overshoot={} ise={} post_settle_rms={} undefined_outputs={}",
        a.controller,
        trace.len(),
        m.settling_time.map_or("none".to_string(), |t| t.to_string()),
        m.overshoot,
        m.ise,
        m.post_settle_rms,
        trace.undefined_outputs
    );
    match trace.aborted {
        Some(why) => Err(CliError::Failure(format!("simulation aborted: {why}"))),
        None => Ok(()),
    }
}
