#ifndef SADDLE_H
#define SADDLE_H

/* Generated by cbindgen from the saddle-ffi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible entry point.
 */
typedef enum SaddleStatus {
  SaddleStatus_Ok = 0,
  SaddleStatus_NullArgument = 1,
  SaddleStatus_InvalidArgument = 2,
  SaddleStatus_DimensionMismatch = 3,
  SaddleStatus_NonFinite = 4,
  SaddleStatus_ScheduleExhausted = 5,
  SaddleStatus_EigenFailure = 6,
  SaddleStatus_IndexOutOfRange = 7,
  SaddleStatus_Panic = 8,
} SaddleStatus;

/**
 * How the initial point is chosen.
 */
typedef enum SaddleInitKind {
  /**
   * Zero vector, projected into the feasible sets.
   */
  SaddleInitKind_Zero = 0,
  /**
   * Uniform in a ball of `init_radius`, projected.
   */
  SaddleInitKind_Random = 1,
  /**
   * Explicit concatenated (x, y) of length n_x + n_y in `init_values`.
   */
  SaddleInitKind_Explicit = 2,
} SaddleInitKind;

typedef struct SaddleProblemHandle SaddleProblemHandle;

typedef struct SaddleReportHandle SaddleReportHandle;

typedef struct SaddleRunHandle SaddleRunHandle;

typedef struct SaddleScheduleHandle SaddleScheduleHandle;

/**
 * Solve options. Start from [`saddle_solve_options_default`] and adjust.
 */
typedef struct SaddleSolveOptions {
  /**
   * Number of update steps K; the trace covers k = 0..=K.
   */
  uint64_t iters;
  uint64_t seed;
  /**
   * Trace thinning; k = 0 and k = K are always recorded.
   */
  uint64_t record_every;
  /**
   * Keep per-iterate data so the run can be certified.
   */
  bool store_iterates;
  enum SaddleInitKind init_kind;
  double init_radius;
  const double *init_values;
  uint64_t init_len;
} SaddleSolveOptions;

/**
 * One trace record. `dist_to_ref` is NaN (and `has_dist_to_ref` false)
 * when the problem carries no reference point.
 */
typedef struct SaddleTraceRow {
  uint64_t k;
  double t_k;
  double f_iter;
  double f_weighted;
  double f_avg_point;
  double subgrad_norm;
  double dist_to_ref;
  bool has_dist_to_ref;
} SaddleTraceRow;

/**
 * One certificate check. `name` stays valid while the report handle
 * lives.
 */
typedef struct SaddleReportRow {
  const char *name;
  bool applicable;
  double worst_violation;
  uint64_t k_at_worst;
  bool pass;
} SaddleReportRow;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread. Never null;
 * valid until the next failing call on the same thread.
 */
const char *saddle_last_error_message(void);

/**
 * Scalar Lagrangian with saddle (2, 2) and value 5.
 */
enum SaddleStatus saddle_problem_toy_new(struct SaddleProblemHandle **out);

/**
 * Matrix game x'Cy on probability simplices; payoff is rows×cols
 * row-major.
 */
enum SaddleStatus saddle_problem_matrix_game_new(uint64_t rows,
                                                 uint64_t cols,
                                                 const double *payoff,
                                                 struct SaddleProblemHandle **out);

/**
 * Lagrangian of the inequality-form LP min{c'x : Ax <= b}; a is m×n
 * row-major, b has m entries, c has n entries.
 */
enum SaddleStatus saddle_problem_lp_new(uint64_t m,
                                        uint64_t n,
                                        const double *a,
                                        const double *b,
                                        const double *c,
                                        struct SaddleProblemHandle **out);

/**
 * Lagrangian of min ½‖u‖² + gamma‖x‖₁ s.t. u = Ax − b; primal block is
 * (x, u) of length n + m.
 */
enum SaddleStatus saddle_problem_lsl1_new(uint64_t m,
                                          uint64_t n,
                                          const double *a,
                                          const double *b,
                                          double gamma,
                                          struct SaddleProblemHandle **out);

/**
 * Robust portfolio problem; sigma is the n×n nominal covariance
 * (row-major, must be positive definite), rho the mean uncertainty
 * radii, eta in (0,1), gamma > 0.
 */
enum SaddleStatus saddle_problem_markowitz_new(uint64_t n,
                                               const double *mu,
                                               const double *sigma,
                                               const double *rho,
                                               double eta,
                                               double gamma,
                                               struct SaddleProblemHandle **out);

/**
 * Attach an externally known saddle value (used for dist-to-reference
 * columns and convergence summaries).
 */
enum SaddleStatus saddle_problem_set_reference_value(struct SaddleProblemHandle *problem,
                                                     double value);

enum SaddleStatus saddle_problem_dims(const struct SaddleProblemHandle *problem,
                                      uint64_t *n_x,
                                      uint64_t *n_y);

void saddle_problem_free(struct SaddleProblemHandle *problem);

enum SaddleStatus saddle_schedule_constant_new(double alpha, struct SaddleScheduleHandle **out);

/**
 * Finite-horizon schedule t_k = 1/(horizon+1−k); pass `reversed = true`
 * for the flipped (descending) ordering.
 */
enum SaddleStatus saddle_schedule_reversed_harmonic_new(uint64_t horizon,
                                                        bool reversed,
                                                        struct SaddleScheduleHandle **out);

enum SaddleStatus saddle_schedule_harmonic_new(struct SaddleScheduleHandle **out);

enum SaddleStatus saddle_schedule_custom_new(const double *steps,
                                             uint64_t len,
                                             struct SaddleScheduleHandle **out);

void saddle_schedule_free(struct SaddleScheduleHandle *schedule);

enum SaddleStatus saddle_solve_options_default(struct SaddleSolveOptions *out);

enum SaddleStatus saddle_solve(const struct SaddleProblemHandle *problem,
                               const struct SaddleScheduleHandle *schedule,
                               const struct SaddleSolveOptions *options,
                               struct SaddleRunHandle **out);

uint64_t saddle_run_trace_len(const struct SaddleRunHandle *run);

enum SaddleStatus saddle_run_trace_row(const struct SaddleRunHandle *run,
                                       uint64_t index,
                                       struct SaddleTraceRow *out);

/**
 * Copy the final step-weighted averages into caller buffers of exactly
 * n_x and n_y entries.
 */
enum SaddleStatus saddle_run_final_average(const struct SaddleRunHandle *run,
                                           double *x_out,
                                           uint64_t x_len,
                                           double *y_out,
                                           uint64_t y_len);

/**
 * max over the run of ‖(g_k, h_k)‖.
 */
double saddle_run_empirical_subgrad_bound(const struct SaddleRunHandle *run);

void saddle_run_free(struct SaddleRunHandle *run);

/**
 * Evaluate every certificate check on a run that stored its iterates.
 */
enum SaddleStatus saddle_certify(const struct SaddleProblemHandle *problem,
                                 const struct SaddleRunHandle *run,
                                 struct SaddleReportHandle **out);

uint64_t saddle_report_len(const struct SaddleReportHandle *report);

enum SaddleStatus saddle_report_row(const struct SaddleReportHandle *report,
                                    uint64_t index,
                                    struct SaddleReportRow *out);

/**
 * True iff every applicable check passed.
 */
bool saddle_report_all_pass(const struct SaddleReportHandle *report);

void saddle_report_free(struct SaddleReportHandle *report);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SADDLE_H */
