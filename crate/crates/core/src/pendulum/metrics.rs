use super::Trace;
use crate::{Error, Result};

/// Settling band around upright, rad.
pub const DEFAULT_BAND: f64 = 0.005;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Metrics {
    /// First time after which `|y| < band` for the rest of the run; `None`
    /// if the last sample is still outside the band.
    pub settling_time: Option<f64>,
    /// Largest excursion to the opposite side of the initial angle, rad.
    pub overshoot: f64,
    /// Integral of `y^2` over the run.
    pub ise: f64,
    /// RMS of `y` over the last quarter of the run, rad.
    pub post_settle_rms: f64,
}

impl Metrics {
    pub fn settled(&self) -> bool {
        self.settling_time.is_some()
    }
}

pub fn compute_metrics(trace: &Trace, band: f64) -> Result<Metrics> {
    let rows = &trace.rows;
    if rows.is_empty() {
        return Err(Error::InvalidParameter("empty trace".into()));
    }
    if !(band.is_finite() && band > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "band must be > 0, got {band}"
        )));
    }
    let settling_time = match rows.iter().rposition(|r| r.y.abs() >= band) {
        None => Some(rows[0].t),
        Some(i) if i + 1 < rows.len() => Some(rows[i + 1].t),
        Some(_) => None,
    };

    let y0 = rows[0].y;
    let side = if y0 > 0.0 {
        1.0
    } else if y0 < 0.0 {
        -1.0
    } else {
        0.0
    };
    let overshoot = match rows.iter().position(|r| r.y * side <= 0.0) {
        Some(i) if side != 0.0 => rows[i..].iter().fold(0.0_f64, |m, r| m.max(-side * r.y)),
        _ => 0.0,
    };

    let ise = rows.iter().map(|r| r.y * r.y).sum::<f64>() * trace.dt;

    let tail = &rows[rows.len() - rows.len().div_ceil(4)..];
    let post_settle_rms = (tail.iter().map(|r| r.y * r.y).sum::<f64>() / tail.len() as f64).sqrt();

    Ok(Metrics {
        settling_time,
        overshoot,
        ise,
        post_settle_rms,
    })
}
