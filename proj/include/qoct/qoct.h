/* C interface of the qoct library. Every entry point returns a qoct_status;
 * on failure qoct_last_error() describes the problem for the calling thread.
 * Handles returned through out-parameters are owned by the caller and must be
 * released with the matching *_free function. */
#ifndef QOCT_QOCT_H
#define QOCT_QOCT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(QOCT_BUILDING_LIBRARY)
#    define QOCT_API __declspec(dllexport)
#  else
#    define QOCT_API __declspec(dllimport)
#  endif
#else
#  define QOCT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qoct_status {
  QOCT_OK = 0,
  QOCT_ERR_DOMAIN = 1,
  QOCT_ERR_NO_SOLUTION = 2,
  QOCT_ERR_REGIME = 3,
  QOCT_ERR_BRACKET = 4,
  QOCT_ERR_TIMEOUT = 5,
  QOCT_ERR_STEP = 6,
  QOCT_ERR_CONSISTENCY = 7,
  QOCT_ERR_DEPTH = 8,
  QOCT_ERR_INTERNAL = 9,
  QOCT_ERR_NULL_ARG = 10
} qoct_status;

typedef enum qoct_regime {
  QOCT_REGIME_ZERO = 0,
  QOCT_REGIME_SUB_CRITICAL = 1,
  QOCT_REGIME_CRITICAL = 2,
  QOCT_REGIME_SUPER_CRITICAL = 3,
  QOCT_REGIME_ALPHA_ABOVE_ONE = 4
} qoct_regime;

typedef enum qoct_face {
  QOCT_FACE_PSI1 = 0,
  QOCT_FACE_PSI2 = 1,
  QOCT_FACE_TARGET = 2
} qoct_face;

typedef enum qoct_mode { QOCT_MODE_TIME = 0, QOCT_MODE_ENERGY = 1 } qoct_mode;

typedef struct qoct_segment {
  double u1;
  double u2;
  double duration;
} qoct_segment;

/* One trajectory sample. param identifies the extremal in sweeps (first
 * switching time or m3(0)) and is 0 elsewhere. */
typedef struct qoct_sample {
  double t;
  double psi[3];
  double u1;
  double u2;
  double param;
} qoct_sample;

typedef struct qoct_alpha_point {
  double alpha;
  double m3_0;
  double transfer_time;
} qoct_alpha_point;

typedef struct qoct_level_spec {
  double e1;
  double e2;
  double e3;
  double xi1;
  double xi2;
} qoct_level_spec;

typedef struct qoct_lift_point {
  double t;
  double re[3];
  double im[3];
  double reduced[3]; /* real reference trajectory on the same grid */
} qoct_lift_point;

typedef struct qoct_law qoct_law;
typedef struct qoct_trajectory qoct_trajectory;
typedef struct qoct_lift_result qoct_lift_result;

QOCT_API const char* qoct_last_error(void);
QOCT_API const char* qoct_status_name(qoct_status status);
QOCT_API const char* qoct_regime_name(qoct_regime regime);
QOCT_API const char* qoct_face_name(qoct_face face);

/* Minimum time. */
QOCT_API qoct_status qoct_min_time_law(double alpha, qoct_law** out);
/* reject_boundary != 0 rejects alpha < 1 targets on psi1 = 0 below psi3 = alpha. */
QOCT_API qoct_status qoct_synthesis_law(double alpha, const double target[3],
                                        int reject_boundary, qoct_law** out);
QOCT_API size_t qoct_law_size(const qoct_law* law);
QOCT_API qoct_status qoct_law_segment(const qoct_law* law, size_t index, qoct_segment* out);
QOCT_API double qoct_law_total_time(const qoct_law* law);
/* Exact endpoint from (1,0,0). */
QOCT_API qoct_status qoct_law_endpoint(const qoct_law* law, double out[3]);
QOCT_API qoct_status qoct_law_sample(const qoct_law* law, double dt, qoct_trajectory** out);
QOCT_API void qoct_law_free(qoct_law* law);

/* Minimum energy. */
QOCT_API qoct_status qoct_classify(double alpha, double m3_0, qoct_regime* out);
QOCT_API qoct_status qoct_solve_m3(double alpha, double tol, double* out);
QOCT_API qoct_status qoct_transfer_time(double alpha, double m3_0, double* out);
QOCT_API qoct_status qoct_m3_bounds(double alpha, double* lower, double* upper);
QOCT_API qoct_status qoct_exit_face(double alpha, double m3_0, qoct_face* face, double* t_exit);

/* Trajectories. */
QOCT_API size_t qoct_trajectory_size(const qoct_trajectory* traj);
QOCT_API qoct_status qoct_trajectory_sample(const qoct_trajectory* traj, size_t index,
                                            qoct_sample* out);
QOCT_API void qoct_trajectory_free(qoct_trajectory* traj);

/* Sweeps. Extremals are concatenated; each one starts again at t = 0. */
QOCT_API qoct_status qoct_sweep_synthesis(double alpha, qoct_mode mode, size_t n, double dt,
                                          qoct_trajectory** out);
/* Writes n points into out. */
QOCT_API qoct_status qoct_sweep_alpha(double from, double to, size_t n, double tol,
                                      int log_spacing, qoct_alpha_point* out);

/* Resonant lift of the optimal controls of the given cost, simulated with
 * step h from (1,0,0), one sample kept every `stride` steps. */
QOCT_API qoct_status qoct_lift_simulate(double alpha, qoct_mode mode, const qoct_level_spec* spec,
                                        double h, size_t stride, qoct_lift_result** out);
QOCT_API double qoct_lift_final_population(const qoct_lift_result* res);
QOCT_API double qoct_lift_max_population_error(const qoct_lift_result* res);
QOCT_API size_t qoct_lift_size(const qoct_lift_result* res);
QOCT_API qoct_status qoct_lift_sample(const qoct_lift_result* res, size_t index,
                                      qoct_lift_point* out);
QOCT_API void qoct_lift_free(qoct_lift_result* res);

/* Random-search oracle; best_law may be NULL. best_time is +inf without a hit. */
QOCT_API qoct_status qoct_oracle_search(double alpha, size_t n_candidates, size_t max_segments,
                                        uint64_t seed, double* best_time, qoct_law** best_law);

/* Acceptance suite. The callback (may be NULL) sees each criterion as it
 * finishes. */
typedef void (*qoct_verify_callback)(int id, const char* name, int passed, const char* detail,
                                     double seconds, void* user);
QOCT_API qoct_status qoct_verify(int fast, qoct_verify_callback callback, void* user,
                                 int* n_failed);

#ifdef __cplusplus
}
#endif

#endif
