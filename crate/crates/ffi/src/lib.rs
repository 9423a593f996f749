//! C ABI over `it2flc`.
//!
//! Every fallible function returns an [`It2flcStatus`]; on anything other
//! than `IT2FLC_STATUS_OK` a message is kept per thread and can be read with
//! [`it2flc_last_error`]. Controllers and traces are opaque handles that
//! must be released with their `_free` function. Panics never cross the
//! boundary; they surface as `IT2FLC_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use it2flc::config::{ControllerKind, SystemConfig};
use it2flc::oracle::km_centroid;
use it2flc::pendulum::{
    compute_metrics, pendulum_it2, pendulum_t1, run_closed_loop, PlantParams, SimConfig, Trace,
    BLUR_DELTA,
};
use it2flc::{combine_centroid, DecomposedSystem, Error, SampledMF, T1System, Universe};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum It2flcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    /// Config text could not be read, parsed or built.
    Config = 3,
    /// No rule fired, so the output (or centroid) does not exist.
    Undefined = 4,
    /// The simulation produced a non-finite state.
    NonFinite = 5,
    Panic = 99,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum It2flcKind {
    T1 = 0,
    It2 = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct It2flcSimConfig {
    pub dt: f64,
    pub duration: f64,
    pub theta0: f64,
    pub theta_dot0: f64,
    pub noise_sigma: f64,
    pub seed: u64,
    pub saturation: f64,
    /// Gravitational acceleration of the plant.
    pub g: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct It2flcTraceRow {
    pub t: f64,
    pub y: f64,
    pub y_dot: f64,
    pub f_bar: f64,
    pub e_measured: f64,
    pub f_command: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct It2flcMetrics {
    /// NaN when the run never settled.
    pub settling_time: f64,
    pub overshoot: f64,
    pub ise: f64,
    pub post_settle_rms: f64,
}

enum System {
    T1(T1System),
    It2(DecomposedSystem),
}

/// Opaque controller handle.
pub struct It2flcController {
    system: System,
    sim: SimConfig,
    plant: PlantParams,
}

/// Opaque simulation result.
pub struct It2flcTrace {
    trace: Trace,
    message: Option<CString>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn status_of(e: &Error) -> It2flcStatus {
    match e {
        Error::Config { .. } | Error::Parse(_) | Error::Io(_) => It2flcStatus::Config,
        Error::UndefinedCentroid | Error::UndefinedOutput => It2flcStatus::Undefined,
        Error::NonFinite(_) => It2flcStatus::NonFinite,
        _ => It2flcStatus::InvalidArgument,
    }
}

struct Fail(It2flcStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(It2flcStatus::NullPointer, format!("{what} is null"))
}

fn invalid(msg: impl Into<String>) -> Fail {
    Fail(It2flcStatus::InvalidArgument, msg.into())
}

/// Runs `f`, turning errors and panics into a status plus message.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> It2flcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            It2flcStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("panic: {msg}"));
            It2flcStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| invalid(format!("{what} is not valid UTF-8")))
}

unsafe fn slice_arg<'a>(p: *const f64, len: usize, what: &str) -> Result<&'a [f64], Fail> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn out_arg<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or_else(|| null(what))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

fn kind(k: It2flcKind) -> ControllerKind {
    match k {
        It2flcKind::T1 => ControllerKind::T1,
        It2flcKind::It2 => ControllerKind::It2,
    }
}

fn from_config(c: &SystemConfig, k: It2flcKind) -> Result<It2flcController, Fail> {
    let system = match kind(k) {
        ControllerKind::T1 => System::T1(c.build_t1()?),
        ControllerKind::It2 => System::It2(c.build_it2()?),
    };
    Ok(It2flcController {
        system,
        sim: c.sim_config()?,
        plant: c.plant()?,
    })
}

fn sim_of(c: &It2flcSimConfig) -> (SimConfig, PlantParams) {
    (
        SimConfig {
            dt: c.dt,
            duration: c.duration,
            theta0: c.theta0,
            theta_dot0: c.theta_dot0,
            noise_sigma: c.noise_sigma,
            seed: c.seed,
            saturation: c.saturation,
        },
        PlantParams { g: c.g },
    )
}

fn sim_to(s: &SimConfig, p: &PlantParams) -> It2flcSimConfig {
    It2flcSimConfig {
        dt: s.dt,
        duration: s.duration,
        theta0: s.theta0,
        theta_dot0: s.theta_dot0,
        noise_sigma: s.noise_sigma,
        seed: s.seed,
        saturation: s.saturation,
        g: p.g,
    }
}

fn publish<T>(out: &mut *mut T, value: T) {
    *out = Box::into_raw(Box::new(value));
}

/// Message for the last failed call on this thread, or NULL after a
/// successful one. Valid until the next call into the library from this
/// thread.
#[no_mangle]
pub extern "C" fn it2flc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Static, NUL-terminated name of a status code.
#[no_mangle]
pub extern "C" fn it2flc_status_name(status: It2flcStatus) -> *const c_char {
    let s: &'static CStr = match status {
        It2flcStatus::Ok => c"ok",
        It2flcStatus::NullPointer => c"null pointer",
        It2flcStatus::InvalidArgument => c"invalid argument",
        It2flcStatus::Config => c"config error",
        It2flcStatus::Undefined => c"undefined output",
        It2flcStatus::NonFinite => c"non-finite state",
        It2flcStatus::Panic => c"panic",
    };
    s.as_ptr()
}

/// Library version, NUL-terminated.
#[no_mangle]
pub extern "C" fn it2flc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// The built-in pendulum controller. `grid_size` 0 selects the default.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for a handle.
#[no_mangle]
pub unsafe extern "C" fn it2flc_controller_pendulum(
    kind: It2flcKind,
    grid_size: usize,
    out: *mut *mut It2flcController,
) -> It2flcStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let grid = if grid_size == 0 {
            it2flc::DEFAULT_GRID_SIZE
        } else {
            grid_size
        };
        if grid < 2 {
            return Err(invalid(format!("grid_size must be at least 2, got {grid}")));
        }
        let system = match kind {
            It2flcKind::T1 => System::T1(pendulum_t1(grid)),
            It2flcKind::It2 => System::It2(pendulum_it2(BLUR_DELTA, grid)?),
        };
        publish(
            out,
            It2flcController {
                system,
                sim: SimConfig::default(),
                plant: PlantParams::default(),
            },
        );
        Ok(())
    })
}

/// Builds a controller from TOML config text.
///
/// # Safety
/// `toml` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn it2flc_controller_from_toml(
    toml: *const c_char,
    kind: It2flcKind,
    out: *mut *mut It2flcController,
) -> It2flcStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let c = SystemConfig::from_toml_str(str_arg(toml, "toml")?)?;
        publish(out, from_config(&c, kind)?);
        Ok(())
    })
}

/// Builds a controller from a TOML config file.
///
/// # Safety
/// `path` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn it2flc_controller_from_file(
    path: *const c_char,
    kind: It2flcKind,
    out: *mut *mut It2flcController,
) -> It2flcStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let c = SystemConfig::load(str_arg(path, "path")?)?;
        publish(out, from_config(&c, kind)?);
        Ok(())
    })
}

/// Releases a controller. NULL is ignored.
///
/// # Safety
/// `ctrl` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn it2flc_controller_free(ctrl: *mut It2flcController) {
    if !ctrl.is_null() {
        drop(Box::from_raw(ctrl));
    }
}

/// Number of inputs the controller expects; 0 for NULL.
///
/// # Safety
/// `ctrl` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn it2flc_controller_arity(ctrl: *const It2flcController) -> usize {
    match ctrl.as_ref().map(|c| &c.system) {
        None => 0,
        Some(System::T1(s)) => s.arity(),
        Some(System::It2(s)) => s.arity(),
    }
}

/// Crisp output for `n` inputs.
///
/// # Safety
/// `ctrl` must be a live handle, `inputs` must hold `n` doubles and `out`
/// must be writable.
#[no_mangle]
pub unsafe extern "C" fn it2flc_controller_evaluate(
    ctrl: *const It2flcController,
    inputs: *const f64,
    n: usize,
    out: *mut f64,
) -> It2flcStatus {
    guard(|| {
        let c = handle(ctrl, "ctrl")?;
        let x = slice_arg(inputs, n, "inputs")?;
        let out = out_arg(out, "out")?;
        *out = match &c.system {
            System::T1(s) => s.output_value(x)?,
            System::It2(s) => s.output_value(x)?,
        };
        Ok(())
    })
}

/// Simulation settings carried by the controller: the config's `[sim]` and
/// `[plant]` sections, or the defaults for built-in controllers.
///
/// # Safety
/// `ctrl` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn it2flc_controller_sim_config(
    ctrl: *const It2flcController,
    out: *mut It2flcSimConfig,
) -> It2flcStatus {
    guard(|| {
        let c = handle(ctrl, "ctrl")?;
        *out_arg(out, "out")? = sim_to(&c.sim, &c.plant);
        Ok(())
    })
}

/// Default simulation settings.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn it2flc_sim_config_default(out: *mut It2flcSimConfig) -> It2flcStatus {
    guard(|| {
        *out_arg(out, "out")? = sim_to(&SimConfig::default(), &PlantParams::default());
        Ok(())
    })
}

fn pair(lo: f64, hi: f64, upper: &[f64], lower: &[f64]) -> Result<(SampledMF, SampledMF), Fail> {
    if upper.len() != lower.len() {
        return Err(invalid(format!(
            "upper has {} samples, lower {}",
            upper.len(),
            lower.len()
        )));
    }
    let u = Universe::new(lo, hi)?;
    Ok((
        SampledMF::new(u, upper.to_vec())?,
        SampledMF::new(u, lower.to_vec())?,
    ))
}

/// Centroid of the region between two aggregates sampled on the same
/// uniform grid over `[lo, hi]`.
///
/// # Safety
/// `upper` and `lower` must hold `n` doubles each; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn it2flc_combine_centroid(
    lo: f64,
    hi: f64,
    upper: *const f64,
    lower: *const f64,
    n: usize,
    out: *mut f64,
) -> It2flcStatus {
    guard(|| {
        let (u, l) = pair(
            lo,
            hi,
            slice_arg(upper, n, "upper")?,
            slice_arg(lower, n, "lower")?,
        )?;
        let out = out_arg(out, "out")?;
        *out = combine_centroid(&u, &l)?.y;
        Ok(())
    })
}

/// Karnik-Mendel centroid interval `[c_l, c_r]` of the same sampled pair.
///
/// # Safety
/// `upper` and `lower` must hold `n` doubles each; `c_l` and `c_r` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn it2flc_km_centroid(
    lo: f64,
    hi: f64,
    upper: *const f64,
    lower: *const f64,
    n: usize,
    c_l: *mut f64,
    c_r: *mut f64,
) -> It2flcStatus {
    guard(|| {
        let (u, l) = pair(
            lo,
            hi,
            slice_arg(upper, n, "upper")?,
            slice_arg(lower, n, "lower")?,
        )?;
        let c_l = out_arg(c_l, "c_l")?;
        let c_r = out_arg(c_r, "c_r")?;
        let iv = km_centroid(&u, &l)?;
        *c_l = iv.c_l;
        *c_r = iv.c_r;
        Ok(())
    })
}

/// Runs the closed loop with a two-input controller. `cfg` NULL uses the
/// controller's own settings. A run that stops on a non-finite state still
/// yields a trace; see [`it2flc_trace_aborted`].
///
/// # Safety
/// `ctrl` must be a live handle, `cfg` NULL or readable, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn it2flc_simulate(
    ctrl: *const It2flcController,
    cfg: *const It2flcSimConfig,
    out: *mut *mut It2flcTrace,
) -> It2flcStatus {
    guard(|| {
        let c = handle(ctrl, "ctrl")?;
        let out = out_arg(out, "out")?;
        let (sim, plant) = match cfg.as_ref() {
            Some(cfg) => sim_of(cfg),
            None => (c.sim.clone(), c.plant),
        };
        let plant = PlantParams::new(plant.g)?;
        let trace = match &c.system {
            System::T1(s) if s.arity() == 2 => run_closed_loop(&sim, &plant, s)?,
            System::It2(s) if s.arity() == 2 => run_closed_loop(&sim, &plant, s)?,
            _ => return Err(invalid("the pendulum loop needs a two-input controller")),
        };
        let message = trace
            .aborted
            .as_deref()
            .map(|m| CString::new(m.replace('\0', " ")).unwrap_or_default());
        publish(out, It2flcTrace { trace, message });
        Ok(())
    })
}

/// Releases a trace. NULL is ignored.
///
/// # Safety
/// `trace` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn it2flc_trace_free(trace: *mut It2flcTrace) {
    if !trace.is_null() {
        drop(Box::from_raw(trace));
    }
}

/// Number of recorded rows; 0 for NULL.
///
/// # Safety
/// `trace` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn it2flc_trace_len(trace: *const It2flcTrace) -> usize {
    trace.as_ref().map_or(0, |t| t.trace.rows.len())
}

/// Steps at which the controller output was undefined and 0 was applied.
///
/// # Safety
/// `trace` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn it2flc_trace_undefined_outputs(trace: *const It2flcTrace) -> usize {
    trace.as_ref().map_or(0, |t| t.trace.undefined_outputs)
}

/// Why the run stopped early, or NULL if it ran to the end. Lives as long
/// as the trace.
///
/// # Safety
/// `trace` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn it2flc_trace_aborted(trace: *const It2flcTrace) -> *const c_char {
    trace
        .as_ref()
        .and_then(|t| t.message.as_ref())
        .map_or(ptr::null(), |m| m.as_ptr())
}

/// Copies row `index`.
///
/// # Safety
/// `trace` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn it2flc_trace_row(
    trace: *const It2flcTrace,
    index: usize,
    out: *mut It2flcTraceRow,
) -> It2flcStatus {
    guard(|| {
        let t = handle(trace, "trace")?;
        let out = out_arg(out, "out")?;
        let r = t.trace.rows.get(index).ok_or_else(|| {
            invalid(format!(
                "row {index} out of range (len {})",
                t.trace.rows.len()
            ))
        })?;
        *out = It2flcTraceRow {
            t: r.t,
            y: r.y,
            y_dot: r.y_dot,
            f_bar: r.f_bar,
            e_measured: r.e_measured,
            f_command: r.f_command,
        };
        Ok(())
    })
}

/// Settling time, overshoot, ISE and tail RMS of the angle with settling
/// band `band` (rad).
///
/// # Safety
/// `trace` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn it2flc_trace_metrics(
    trace: *const It2flcTrace,
    band: f64,
    out: *mut It2flcMetrics,
) -> It2flcStatus {
    guard(|| {
        let t = handle(trace, "trace")?;
        let out = out_arg(out, "out")?;
        let m = compute_metrics(&t.trace, band)?;
        *out = It2flcMetrics {
            settling_time: m.settling_time.unwrap_or(f64::NAN),
            overshoot: m.overshoot,
            ise: m.ise,
            post_settle_rms: m.post_settle_rms,
        };
        Ok(())
    })
}

/// Writes the trace as CSV to `path`.
///
/// # Safety
/// `trace` must be a live handle and `path` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn it2flc_trace_write_csv(
    trace: *const It2flcTrace,
    path: *const c_char,
) -> It2flcStatus {
    guard(|| {
        let t = handle(trace, "trace")?;
        let path = str_arg(path, "path")?;
        std::fs::write(path, t.trace.to_csv_string())
            .map_err(|e| Fail(It2flcStatus::InvalidArgument, format!("{path}: {e}")))
    })
}
