#ifndef WALKMATCH_H
#define WALKMATCH_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Result code of every fallible call.
 */
typedef enum WmStatus {
  WM_STATUS_OK = 0,
  WM_STATUS_NULL_POINTER = 1,
  WM_STATUS_INVALID_GRAPH = 2,
  WM_STATUS_INVALID_SCHEDULE = 3,
  WM_STATUS_INVALID_DISTRIBUTION = 4,
  WM_STATUS_CONSTRUCTION_FAILED = 5,
  WM_STATUS_OUT_OF_RANGE = 6,
  WM_STATUS_BUFFER_TOO_SMALL = 7,
  WM_STATUS_PANIC = 8,
} WmStatus;

/*
 Opaque graph handle.
 */
typedef struct WmGraph WmGraph;

/*
 Opaque schedule handle.
 */
typedef struct WmSchedule WmSchedule;

/*
 Opaque handle to a quantum walk co-evolving with its classical walk.
 */
typedef struct WmWalk WmWalk;

/*
 Summary of a verified run. `oracle_worst` is NaN when the dense check was skipped.
 */
typedef struct WmReport {
  size_t horizon;
  double max_abs_deviation;
  double unitarity_worst;
  double norm_worst;
  double closed_form_worst;
  double oracle_worst;
  bool shift_involution;
  bool passed;
} WmReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Copies the last error message of this thread into `buf` (NUL-terminated,
 truncated to `len`). Returns the buffer size needed for the full message.

 # Safety
 `buf` must be null or point to `len` writable bytes.
 */
size_t wm_last_error_message(char *buf, size_t len);

/*
 Builds a graph from `edge_count` unordered pairs stored as
 `edges[2 * i], edges[2 * i + 1]`. Vertex ids must be dense from zero.

 # Safety
 `edges` must point to `2 * edge_count` values; `out` must be writable.
 */
enum WmStatus wm_graph_new(const size_t *edges, size_t edge_count, struct WmGraph **out);

/*
 # Safety
 `graph` must be null or a handle from [`wm_graph_new`] not yet freed.
 */
void wm_graph_free(struct WmGraph *graph);

/*
 Vertex count, or 0 for a null handle.

 # Safety
 `graph` must be null or a live handle.
 */
size_t wm_graph_vertex_count(const struct WmGraph *graph);

/*
 Number of directed edges (walker dimension), or 0 for a null handle.

 # Safety
 `graph` must be null or a live handle.
 */
size_t wm_graph_dimension(const struct WmGraph *graph);

/*
 The `coin`-th smallest neighbor of `vertex`.

 # Safety
 `graph` must be a live handle and `out` writable.
 */
enum WmStatus wm_graph_eta(const struct WmGraph *graph, size_t vertex, size_t coin, size_t *out);

/*
 Position of `from` among the sorted neighbors of `to`.

 # Safety
 `graph` must be a live handle and `out` writable.
 */
enum WmStatus wm_graph_sigma(const struct WmGraph *graph, size_t from, size_t to, size_t *out);

/*
 A single column-major `n x n` matrix used at every step.

 # Safety
 `graph` must be a live handle, `matrix` must point to `len` values, and
 `out` must be writable.
 */
enum WmStatus wm_schedule_homogeneous(const struct WmGraph *graph,
                                      const double *matrix,
                                      size_t len,
                                      struct WmSchedule **out);

/*
 `count` column-major matrices stored back to back.

 # Safety
 `graph` must be a live handle, `matrices` must point to `count * n * n`
 values, and `out` must be writable.
 */
enum WmStatus wm_schedule_sequence(const struct WmGraph *graph,
                                   const double *matrices,
                                   size_t count,
                                   struct WmSchedule **out);

/*
 Seeded random matrices, regenerated at every step.

 # Safety
 `out` must be writable.
 */
enum WmStatus wm_schedule_random(uint64_t seed, struct WmSchedule **out);

/*
 # Safety
 `schedule` must be null or a live handle.
 */
void wm_schedule_free(struct WmSchedule *schedule);

/*
 Starts a matched walk from `pi0` (length `n`). The walk keeps its own
 copies of the graph and schedule.

 # Safety
 Handles must be live, `pi0` must point to `n` values, `out` writable.
 */
enum WmStatus wm_walk_new(const struct WmGraph *graph,
                          const struct WmSchedule *schedule,
                          const double *pi0,
                          size_t n,
                          struct WmWalk **out);

/*
 Builds `W(t)` and advances the quantum and classical walks by one step.

 # Safety
 `walk` must be a live handle.
 */
enum WmStatus wm_walk_step(struct WmWalk *walk);

/*
 Number of steps taken, or 0 for a null handle.

 # Safety
 `walk` must be null or a live handle.
 */
size_t wm_walk_time(const struct WmWalk *walk);

/*
 Writes `mu(v, t)` for every vertex into `out` (`len >= n`).

 # Safety
 `walk` must be a live handle and `out` must point to `len` writable values.
 */
enum WmStatus wm_walk_vertex_probabilities(const struct WmWalk *walk, double *out, size_t len);

/*
 Writes the classical distribution `pi(t)` into `out` (`len >= n`).

 # Safety
 `walk` must be a live handle and `out` must point to `len` writable values.
 */
enum WmStatus wm_walk_classical_probabilities(const struct WmWalk *walk, double *out, size_t len);

/*
 Writes amplitudes as interleaved `re, im` pairs (`len >= 2 * dimension`).

 # Safety
 `walk` must be a live handle and `out` must point to `len` writable values.
 */
enum WmStatus wm_walk_amplitudes(const struct WmWalk *walk, double *out, size_t len);

/*
 # Safety
 `walk` must be null or a live handle.
 */
void wm_walk_free(struct WmWalk *walk);

/*
 Runs and verifies `steps` matched steps. Returns `WM_STATUS_OK` whenever a
 report was produced; check `out->passed` for the verdict.

 # Safety
 Handles must be live, `pi0` must point to `n` values, `out` writable.
 */
enum WmStatus wm_run_matched(const struct WmGraph *graph,
                             const struct WmSchedule *schedule,
                             const double *pi0,
                             size_t n,
                             size_t steps,
                             double tolerance,
                             struct WmReport *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WALKMATCH_H */
