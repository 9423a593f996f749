#ifndef IT2FLC_H
#define IT2FLC_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum It2flcStatus {
  IT2FLC_STATUS_OK = 0,
  IT2FLC_STATUS_NULL_POINTER = 1,
  IT2FLC_STATUS_INVALID_ARGUMENT = 2,
  /*
   Config text could not be read, parsed or built.
   */
  IT2FLC_STATUS_CONFIG = 3,
  /*
   No rule fired, so the output (or centroid) does not exist.
   */
  IT2FLC_STATUS_UNDEFINED = 4,
  /*
   The simulation produced a non-finite state.
   */
  IT2FLC_STATUS_NON_FINITE = 5,
  IT2FLC_STATUS_PANIC = 99,
} It2flcStatus;

typedef enum It2flcKind {
  IT2FLC_KIND_T1 = 0,
  IT2FLC_KIND_IT2 = 1,
} It2flcKind;

/*
 Opaque controller handle.
 */
typedef struct It2flcController It2flcController;

/*
 Opaque simulation result.
 */
typedef struct It2flcTrace It2flcTrace;

typedef struct It2flcSimConfig {
  double dt;
  double duration;
  double theta0;
  double theta_dot0;
  double noise_sigma;
  uint64_t seed;
  double saturation;
  /*
   Gravitational acceleration of the plant.
   */
  double g;
} It2flcSimConfig;

typedef struct It2flcTraceRow {
  double t;
  double y;
  double y_dot;
  double f_bar;
  double e_measured;
  double f_command;
} It2flcTraceRow;

typedef struct It2flcMetrics {
  /*
   NaN when the run never settled.
   */
  double settling_time;
  double overshoot;
  double ise;
  double post_settle_rms;
} It2flcMetrics;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message for the last failed call on this thread, or NULL after a
 successful one. Valid until the next call into the library from this
 thread.
 */
const char *it2flc_last_error(void);

/*
 Static, NUL-terminated name of a status code.
 */
const char *it2flc_status_name(enum It2flcStatus status);

/*
 Library version, NUL-terminated.
 */
const char *it2flc_version(void);

/*
 The built-in pendulum controller. `grid_size` 0 selects the default.

 # Safety
 `out` must be a valid pointer to writable storage for a handle.
 */
enum It2flcStatus it2flc_controller_pendulum(enum It2flcKind kind,
                                             size_t grid_size,
                                             struct It2flcController **out);

/*
 Builds a controller from TOML config text.

 # Safety
 `toml` must be a NUL-terminated string; `out` must be writable.
 */
enum It2flcStatus it2flc_controller_from_toml(const char *toml,
                                              enum It2flcKind kind,
                                              struct It2flcController **out);

/*
 Builds a controller from a TOML config file.

 # Safety
 `path` must be a NUL-terminated string; `out` must be writable.
 */
enum It2flcStatus it2flc_controller_from_file(const char *path,
                                              enum It2flcKind kind,
                                              struct It2flcController **out);

/*
 Releases a controller. NULL is ignored.

 # Safety
 `ctrl` must come from this library and not be used afterwards.
 */
void it2flc_controller_free(struct It2flcController *ctrl);

/*
 Number of inputs the controller expects; 0 for NULL.

 # Safety
 `ctrl` must be NULL or a live handle.
 */
size_t it2flc_controller_arity(const struct It2flcController *ctrl);

/*
 Crisp output for `n` inputs.

 # Safety
 `ctrl` must be a live handle, `inputs` must hold `n` doubles and `out`
 must be writable.
 */
enum It2flcStatus it2flc_controller_evaluate(const struct It2flcController *ctrl,
                                             const double *inputs,
                                             size_t n,
                                             double *out);

/*
 Simulation settings carried by the controller: the config's `[sim]` and
 `[plant]` sections, or the defaults for built-in controllers.

 # Safety
 `ctrl` must be a live handle and `out` writable.
 */
enum It2flcStatus it2flc_controller_sim_config(const struct It2flcController *ctrl,
                                               struct It2flcSimConfig *out);

/*
 Default simulation settings.

 # Safety
 `out` must be writable.
 */
enum It2flcStatus it2flc_sim_config_default(struct It2flcSimConfig *out);

/*
 Centroid of the region between two aggregates sampled on the same
 uniform grid over `[lo, hi]`.

 # Safety
 `upper` and `lower` must hold `n` doubles each; `out` must be writable.
 */
enum It2flcStatus it2flc_combine_centroid(double lo,
                                          double hi,
                                          const double *upper,
                                          const double *lower,
                                          size_t n,
                                          double *out);

/*
 Karnik-Mendel centroid interval `[c_l, c_r]` of the same sampled pair.

 # Safety
 `upper` and `lower` must hold `n` doubles each; `c_l` and `c_r` must be
 writable.
 */
enum It2flcStatus it2flc_km_centroid(double lo,
                                     double hi,
                                     const double *upper,
                                     const double *lower,
                                     size_t n,
                                     double *c_l,
                                     double *c_r);

/*
 Runs the closed loop with a two-input controller. `cfg` NULL uses the
 controller's own settings. A run that stops on a non-finite state still
 yields a trace; see [`it2flc_trace_aborted`].

 # Safety
 `ctrl` must be a live handle, `cfg` NULL or readable, `out` writable.
 */
enum It2flcStatus it2flc_simulate(const struct It2flcController *ctrl,
                                  const struct It2flcSimConfig *cfg,
                                  struct It2flcTrace **out);

/*
 Releases a trace. NULL is ignored.

 # Safety
 `trace` must come from this library and not be used afterwards.
 */
void it2flc_trace_free(struct It2flcTrace *trace);

/*
 Number of recorded rows; 0 for NULL.

 # Safety
 `trace` must be NULL or a live handle.
 */
size_t it2flc_trace_len(const struct It2flcTrace *trace);

/*
 Steps at which the controller output was undefined and 0 was applied.

 # Safety
 `trace` must be NULL or a live handle.
 */
size_t it2flc_trace_undefined_outputs(const struct It2flcTrace *trace);

/*
 Why the run stopped early, or NULL if it ran to the end. Lives as long
 as the trace.

 # Safety
 `trace` must be NULL or a live handle.
 */
const char *it2flc_trace_aborted(const struct It2flcTrace *trace);

/*
 Copies row `index`.

 # Safety
 `trace` must be a live handle and `out` writable.
 */
enum It2flcStatus it2flc_trace_row(const struct It2flcTrace *trace,
                                   size_t index,
                                   struct It2flcTraceRow *out);

/*
 Settling time, overshoot, ISE and tail RMS of the angle with settling
 band `band` (rad).

 # Safety
 `trace` must be a live handle and `out` writable.
 */
enum It2flcStatus it2flc_trace_metrics(const struct It2flcTrace *trace,
                                       double band,
                                       struct It2flcMetrics *out);

/*
 Writes the trace as CSV to `path`.

 # Safety
 `trace` must be a live handle and `path` a NUL-terminated string.
 */
enum It2flcStatus it2flc_trace_write_csv(const struct It2flcTrace *trace, const char *path);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* IT2FLC_H */
