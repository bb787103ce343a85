/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#ifndef DEPHASIM_H
#define DEPHASIM_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define DPH_VARIANT_PAPER 0

#define DPH_VARIANT_PAIRWISE 1

typedef enum DphStatus {
  DPH_STATUS_OK = 0,
  DPH_STATUS_INVALID_ARGUMENT = 1,
  DPH_STATUS_CONTRACT_VIOLATION = 2,
  DPH_STATUS_NUMERICAL_FAILURE = 3,
  DPH_STATUS_NULL_POINTER = 4,
  DPH_STATUS_INDEX_OUT_OF_RANGE = 5,
  DPH_STATUS_PANIC = 6,
} DphStatus;

/*
 Result of a measure computation, including its backflow intervals.
 */
typedef struct DphMeasure DphMeasure;

/*
 Qubit register plus bath parameters.
 */
typedef struct DphSystem DphSystem;

typedef struct DphKernels {
  double gamma;
  double delta;
  double gamma_rate;
  double delta_rate;
} DphKernels;

typedef struct DphMeasureSummary {
  double blp;
  double entropy;
  size_t interval_count;
} DphMeasureSummary;

typedef struct DphInterval {
  double t_start;
  double t_end;
  double d_start;
  double d_end;
  double s_start;
  double s_end;
  /*
   Nonzero when the interval opens at a zero of the partner factor.
   */
  uint8_t kink_start;
} DphInterval;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message for the most recent failure on this thread, or an empty string.

 The pointer stays valid until the next `dph_` call on the same thread.
 */
const char *dph_last_error(void);

/*
 Create a system. Pass `beta = INFINITY` for zero temperature.

 # Safety
 `out` must be a valid pointer to writable storage for one handle.
 */
enum DphStatus dph_system_new(uint32_t qubits,
                              double omega0,
                              uint32_t variant,
                              double horizon,
                              double coupling,
                              double ohmicity,
                              double cutoff,
                              double beta,
                              struct DphSystem **out);

/*
 # Safety
 `system` must be null or a handle from [`dph_system_new`] not yet freed.
 */
void dph_system_free(struct DphSystem *system);

/*
 Decoherence exponent, indirect interaction and their time derivatives.

 # Safety
 `system` must be a live handle; `out` must be writable.
 */
enum DphStatus dph_kernels(const struct DphSystem *system, double t, struct DphKernels *out);

/*
 Trace distance between the two evolved states at time `t`.

 # Safety
 `system` must be a live handle; `out` must be writable.
 */
enum DphStatus dph_trace_distance(const struct DphSystem *system, double t, double *out);

/*
 Relative entropy between the two evolved states as a function of their trace distance.

 # Safety
 `out` must be writable.
 */
enum DphStatus dph_relative_entropy(double trace_distance, double *out);

/*
 Compute both measures over `[0, T]`. Pass `tol <= 0` for the default `1e-9 T`.

 # Safety
 `system` must be a live handle; `out` must be writable.
 */
enum DphStatus dph_measure(const struct DphSystem *system,
                           size_t grid_points,
                           double tol,
                           struct DphMeasure **out);

/*
 # Safety
 `measure` must be a live handle; `out` must be writable.
 */
enum DphStatus dph_measure_summary(const struct DphMeasure *measure, struct DphMeasureSummary *out);

/*
 # Safety
 `measure` must be a live handle; `out` must be writable.
 */
enum DphStatus dph_measure_interval(const struct DphMeasure *measure,
                                    size_t index,
                                    struct DphInterval *out);

/*
 # Safety
 `measure` must be null or a handle from [`dph_measure`] not yet freed.
 */
void dph_measure_free(struct DphMeasure *measure);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DEPHASIM_H */
