//! Inverted pendulum plant and closed-loop simulation.
//!
//! The plant models the pole angle only, driven through a first-order
//! actuator:
//!
//! ```text
//! y''  = [g sin y + cos y * (-f_bar - 0.25 y'^2 sin y) / 1.5] / (2/3 - cos^2(y) / 6)
//! f_bar' = -100 f_bar + 100 f
//! ```

mod flc;
mod metrics;
mod noise;
mod sim;

pub use flc::{
    pendulum_inputs, pendulum_it2, pendulum_output, pendulum_rules, pendulum_t1, BLUR_DELTA,
    ERROR_RANGE, FORCE_RANGE, FORCE_Z_FOOT,
};
pub use metrics::{compute_metrics, Metrics, DEFAULT_BAND};
pub use noise::GaussianNoise;
pub use sim::{run_closed_loop, SimConfig, Trace, TraceRow, TRACE_HEADER};

use crate::{DecomposedSystem, Error, Result, T1System};

/// Anything that maps `(error, error derivative)` to a force command.
pub trait Controller: Send + Sync {
    fn command(&self, e: f64, e_dot: f64) -> Result<f64>;
}

impl Controller for T1System {
    fn command(&self, e: f64, e_dot: f64) -> Result<f64> {
        self.output_value(&[e, e_dot])
    }
}

impl Controller for DecomposedSystem {
    fn command(&self, e: f64, e_dot: f64) -> Result<f64> {
        self.output_value(&[e, e_dot])
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PendulumState {
    /// Angle from upright, rad.
    pub y: f64,
    /// Angular velocity, rad/s.
    pub y_dot: f64,
    /// Actuator output force, N.
    pub f_bar: f64,
}

impl PendulumState {
    pub fn is_finite(&self) -> bool {
        self.y.is_finite() && self.y_dot.is_finite() && self.f_bar.is_finite()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlantParams {
    /// Gravitational acceleration, m/s^2.
    pub g: f64,
}

impl Default for PlantParams {
    fn default() -> Self {
        Self { g: 9.8 }
    }
}

impl PlantParams {
    pub fn new(g: f64) -> Result<Self> {
        if !(g.is_finite() && g > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "gravity must be > 0, got {g}"
            )));
        }
        Ok(Self { g })
    }
}

/// Time derivative `(y', y'', f_bar')` of the state under commanded force `f`.
pub fn dynamics(s: &PendulumState, f: f64, p: &PlantParams) -> Result<PendulumState> {
    if !s.is_finite() || !f.is_finite() {
        return Err(Error::NonFinite(format!("plant input {s:?}, f = {f}")));
    }
    let (sin, cos) = s.y.sin_cos();
    let num = p.g * sin + cos * ((-s.f_bar - 0.25 * s.y_dot * s.y_dot * sin) / 1.5);
    let den = 2.0 / 3.0 - cos * cos / 6.0;
    Ok(PendulumState {
        y: s.y_dot,
        y_dot: num / den,
        f_bar: -100.0 * s.f_bar + 100.0 * f,
    })
}

fn axpy(s: &PendulumState, h: f64, d: &PendulumState) -> PendulumState {
    PendulumState {
        y: s.y + h * d.y,
        y_dot: s.y_dot + h * d.y_dot,
        f_bar: s.f_bar + h * d.f_bar,
    }
}

/// One classical fourth-order Runge-Kutta step with `f` held constant.
pub fn rk4_step(s: &PendulumState, f: f64, dt: f64, p: &PlantParams) -> Result<PendulumState> {
    if !(dt.is_finite() && dt > 0.0) {
        return Err(Error::InvalidParameter(format!("dt must be > 0, got {dt}")));
    }
    let k1 = dynamics(s, f, p)?;
    let k2 = dynamics(&axpy(s, 0.5 * dt, &k1), f, p)?;
    let k3 = dynamics(&axpy(s, 0.5 * dt, &k2), f, p)?;
    let k4 = dynamics(&axpy(s, dt, &k3), f, p)?;
    let next = PendulumState {
        y: s.y + dt / 6.0 * (k1.y + 2.0 * k2.y + 2.0 * k3.y + k4.y),
        y_dot: s.y_dot + dt / 6.0 * (k1.y_dot + 2.0 * k2.y_dot + 2.0 * k3.y_dot + k4.y_dot),
        f_bar: s.f_bar + dt / 6.0 * (k1.f_bar + 2.0 * k2.f_bar + 2.0 * k3.f_bar + k4.f_bar),
    };
    if !next.is_finite() {
        return Err(Error::NonFinite(format!("state after RK4 step: {next:?}")));
    }
    Ok(next)
}

/// Controller inputs for a zero reference: `e = -y + noise`,
/// `e_dot = -y'`, both saturated to `[-sat, sat]`.
pub fn controller_input(s: &PendulumState, noise: f64, sat: f64) -> (f64, f64) {
    let e = (-s.y + noise).clamp(-sat, sat);
    let e_dot = (-s.y_dot).clamp(-sat, sat);
    (e, e_dot)
}
