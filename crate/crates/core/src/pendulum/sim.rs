use std::f64::consts::FRAC_PI_4;
use std::io::{BufRead, Write};

use super::{controller_input, rk4_step, Controller, GaussianNoise, PendulumState, PlantParams};
use crate::{Error, Result};

pub const TRACE_HEADER: &str = "t,y,y_dot,f_bar,e_measured,f_command";

#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    /// Integration and control period, s.
    pub dt: f64,
    /// Simulated time, s.
    pub duration: f64,
    /// Initial angle, rad.
    pub theta0: f64,
    /// Initial angular velocity, rad/s.
    pub theta_dot0: f64,
    /// Std of the Gaussian noise added to the error input, rad.
    pub noise_sigma: f64,
    pub seed: u64,
    /// Input saturation bound, rad (and rad/s for the derivative).
    pub saturation: f64,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self {
            dt: 1e-3,
            duration: 5.0,
            theta0: 0.1,
            theta_dot0: 0.0,
            noise_sigma: 0.0,
            seed: 0,
            saturation: FRAC_PI_4,
        }
    }
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidParameter(m));
        if !(self.dt.is_finite() && self.dt > 0.0) {
            return bad(format!("dt must be > 0, got {}", self.dt));
        }
        if !(self.duration.is_finite() && self.duration >= self.dt) {
            return bad(format!("duration must be >= dt, got {}", self.duration));
        }
        if !(self.noise_sigma.is_finite() && self.noise_sigma >= 0.0) {
            return bad(format!(
                "noise_sigma must be >= 0, got {}",
                self.noise_sigma
            ));
        }
        if !(self.saturation.is_finite() && self.saturation > 0.0) {
            return bad(format!("saturation must be > 0, got {}", self.saturation));
        }
        if !(self.theta0.is_finite() && self.theta_dot0.is_finite()) {
            return bad("initial state must be finite".into());
        }
        Ok(())
    }

    pub fn steps(&self) -> usize {
        (self.duration / self.dt).round() as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceRow {
    pub t: f64,
    pub y: f64,
    pub y_dot: f64,
    pub f_bar: f64,
    pub e_measured: f64,
    pub f_command: f64,
}

/// Per-step record of a closed-loop run.
#[derive(Debug, Clone, PartialEq)]
pub struct Trace {
    pub dt: f64,
    pub rows: Vec<TraceRow>,
    /// Steps where the controller had no defined output and 0 N was applied.
    pub undefined_outputs: usize,
    /// Set when the run stopped early; the rows recorded so far are kept.
    pub aborted: Option<String>,
}

impl Trace {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// CSV with [`TRACE_HEADER`]; every value in shortest round-trip form.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "{TRACE_HEADER}")?;
        for r in &self.rows {
            writeln!(
                w,
                "{:?},{:?},{:?},{:?},{:?},{:?}",
                r.t, r.y, r.y_dot, r.f_bar, r.e_measured, r.f_command
            )?;
        }
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)
            .expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("CSV output is ASCII")
    }

    /// Reads rows back from [`Trace::write_csv`] output. `dt` is taken from
    /// the first two rows.
    pub fn read_csv<R: BufRead>(r: R) -> Result<Self> {
        let mut lines = r.lines();
        let header = lines
            .next()
            .transpose()
            .map_err(|e| Error::InvalidParameter(e.to_string()))?;
        if header.as_deref() != Some(TRACE_HEADER) {
            return Err(Error::InvalidParameter(format!(
                "expected trace header `{TRACE_HEADER}`"
            )));
        }
        let mut rows = Vec::new();
        for (n, line) in lines.enumerate() {
            let line = line.map_err(|e| Error::InvalidParameter(e.to_string()))?;
            let v = line
                .split(',')
                .map(str::parse::<f64>)
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| Error::InvalidParameter(format!("row {}: {e}", n + 1)))?;
            if v.len() != 6 {
                return Err(Error::InvalidParameter(format!(
                    "row {} has {} fields",
                    n + 1,
                    v.len()
                )));
            }
            rows.push(TraceRow {
                t: v[0],
                y: v[1],
                y_dot: v[2],
                f_bar: v[3],
                e_measured: v[4],
                f_command: v[5],
            });
        }
        let dt = if rows.len() >= 2 {
            rows[1].t - rows[0].t
        } else {
            0.0
        };
        Ok(Self {
            dt,
            rows,
            undefined_outputs: 0,
            aborted: None,
        })
    }
}

/// Simulates the closed loop. Each step: draw noise, form the saturated
/// controller inputs, evaluate the controller, record the row, then advance
/// the plant one RK4 step with the force held.
pub fn run_closed_loop(
    cfg: &SimConfig,
    plant: &PlantParams,
    controller: &dyn Controller,
) -> Result<Trace> {
    cfg.validate()?;
    let mut noise = GaussianNoise::new(cfg.seed, cfg.noise_sigma)?;
    let steps = cfg.steps();
    let mut trace = Trace {
        dt: cfg.dt,
        rows: Vec::with_capacity(steps + 1),
        undefined_outputs: 0,
        aborted: None,
    };
    let mut state = PendulumState {
        y: cfg.theta0,
        y_dot: cfg.theta_dot0,
        f_bar: 0.0,
    };
    for k in 0..=steps {
        let t = k as f64 * cfg.dt;
        let (e, e_dot) = controller_input(&state, noise.sample(), cfg.saturation);
        let f = match controller.command(e, e_dot) {
            Ok(f) => f,
            Err(Error::UndefinedOutput | Error::UndefinedCentroid) => {
                trace.undefined_outputs += 1;
                0.0
            }
            Err(err) => {
                trace.aborted = Some(format!("controller failed at t = {t}: {err}"));
                break;
            }
        };
        trace.rows.push(TraceRow {
            t,
            y: state.y,
            y_dot: state.y_dot,
            f_bar: state.f_bar,
            e_measured: e,
            f_command: f,
        });
        if k == steps {
            break;
        }
        match rk4_step(&state, f, cfg.dt, plant) {
            Ok(next) => state = next,
            Err(err) => {
                trace.aborted = Some(format!("integration failed after t = {t}: {err}"));
                break;
            }
        }
    }
    Ok(trace)
}
