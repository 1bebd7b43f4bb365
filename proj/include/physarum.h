/* C interface to the physarum flow solver.
 *
 * All functions returning phys_status report PHYS_OK on success; on failure
 * a thread-local message with details is available from phys_last_error().
 * Objects returned through out-parameters are owned by the caller and must
 * be released with the matching *_free function.
 */
#ifndef PHYSARUM_H
#define PHYSARUM_H

#include <stddef.h>

#if defined(_WIN32) && defined(PHYS_BUILD)
#define PHYS_API __declspec(dllexport)
#elif defined(__GNUC__) && defined(PHYS_BUILD)
#define PHYS_API __attribute__((visibility("default")))
#else
#define PHYS_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum phys_status {
    PHYS_OK = 0,
    PHYS_ERR_EMPTY_INSTANCE,
    PHYS_ERR_RANK_DEFICIENT,
    PHYS_ERR_NONPOSITIVE_COST,
    PHYS_ERR_ZERO_RHS,
    PHYS_ERR_DISCONNECTED_GRAPH,
    PHYS_ERR_UNBALANCED_SUPPLIES,
    PHYS_ERR_PARSE,
    PHYS_ERR_SCHEMA,
    PHYS_ERR_NOT_POSITIVE_DEFINITE,
    PHYS_ERR_ASYMMETRIC_INPUT,
    PHYS_ERR_DIMENSION_MISMATCH,
    PHYS_ERR_SINGULAR_LAPLACIAN,
    PHYS_ERR_NONPOSITIVE_STATE,
    PHYS_ERR_STEP_COLLAPSE,
    PHYS_ERR_POSITIVITY_VIOLATION,
    PHYS_ERR_ZERO_COST,
    PHYS_ERR_NOT_NORMALIZED,
    PHYS_ERR_ABSOLUTE_CONTINUITY,
    PHYS_ERR_INFEASIBLE_START,
    PHYS_ERR_INFEASIBLE_CANDIDATE,
    PHYS_ERR_INFEASIBLE,
    PHYS_ERR_TOO_LARGE,
    PHYS_ERR_SINGULAR_SYSTEM,
    PHYS_ERR_NOT_SIMPLEX,
    PHYS_ERR_NONPOSITIVE_PRIMAL,
    PHYS_ERR_INVALID_ARGUMENT,
    PHYS_ERR_IO,
    PHYS_ERR_INTERNAL
} phys_status;

typedef struct phys_instance phys_instance;
typedef struct phys_oracle phys_oracle;
typedef struct phys_trace phys_trace;

PHYS_API const char* phys_version(void);
PHYS_API const char* phys_status_name(phys_status status);
/* Message describing the most recent failure on this thread. */
PHYS_API const char* phys_last_error(void);

/* ---- instances ------------------------------------------------------- */

/* Parse and validate a JSON instance (LP or network object format). */
PHYS_API phys_status phys_instance_load_json(const char* text, phys_instance** out);
PHYS_API phys_status phys_instance_load_file(const char* path, phys_instance** out);
/* Build and validate from dense data; a is row-major rows x cols. */
PHYS_API phys_status phys_instance_create(int rows, int cols, const double* a,
                                          const double* b, const double* c,
                                          const char* name, phys_instance** out);
/* Deterministic random instance that is feasible by construction; the
 * strictly positive feasible point used to build it is written to
 * feasible_point (length cols) when non-NULL. */
PHYS_API phys_status phys_instance_random(int rows, int cols, unsigned long long seed,
                                          double* feasible_point, phys_instance** out);
/* Serialize to the JSON LP format; free the string with phys_string_free. */
PHYS_API phys_status phys_instance_save_json(const phys_instance* inst, char** out);
PHYS_API void phys_string_free(char* s);
PHYS_API void phys_instance_free(phys_instance* inst);

PHYS_API int phys_instance_rows(const phys_instance* inst);
PHYS_API int phys_instance_cols(const phys_instance* inst);
PHYS_API const char* phys_instance_name(const phys_instance* inst);
PHYS_API int phys_instance_is_simplex(const phys_instance* inst);
PHYS_API phys_status phys_instance_costs(const phys_instance* inst, double* out, int len);

/* ---- exact oracle ----------------------------------------------------- */

PHYS_API phys_status phys_oracle_solve(const phys_instance* inst, phys_oracle** out);
PHYS_API double phys_oracle_opt(const phys_oracle* oracle);
PHYS_API phys_status phys_oracle_x_star(const phys_oracle* oracle, double* out, int len);
PHYS_API int phys_oracle_vertex_count(const phys_oracle* oracle);
PHYS_API phys_status phys_oracle_vertex(const phys_oracle* oracle, int k, double* out,
                                        int len);
PHYS_API void phys_oracle_free(phys_oracle* oracle);

/* ---- integration ------------------------------------------------------ */

typedef enum phys_method { PHYS_METHOD_EULER = 0, PHYS_METHOD_RK4 = 1 } phys_method;

typedef struct phys_integration_config {
    phys_method method;
    double initial_step;
    double max_time;
    double positivity_floor_ratio;
    int adaptive;
    double rel_tol;
    double trace_interval;
} phys_integration_config;

/* Fill with the defaults: rk4, step 1e-2, max_time 30, floor 0.5,
 * adaptive with tolerance 1e-6, trace every 0.1. */
PHYS_API void phys_integration_config_init(phys_integration_config* config);

/* Integrate from x0 (length n). oracle may be NULL; when given, per-sample
 * KL and potential diagnostics are recorded. */
PHYS_API phys_status phys_integrate(const phys_instance* inst, const double* x0, int n,
                                    const phys_integration_config* config,
                                    const phys_oracle* oracle, phys_trace** out);

typedef struct phys_run_stats {
    long steps;
    long rejections;
    long regularizations;
    int converged;
    double final_time;
} phys_run_stats;

PHYS_API int phys_trace_size(const phys_trace* trace);
PHYS_API int phys_trace_has_diagnostics(const phys_trace* trace);
/* Read record i. Any output pointer may be NULL; x must hold x_len >= cols
 * entries when non-NULL. kl and potential are set to NaN when absent. */
PHYS_API phys_status phys_trace_record(const phys_trace* trace, int i, double* t,
                                       double* x, int x_len, double* cost,
                                       double* energy, double* infeasibility,
                                       double* kl, double* potential);
PHYS_API phys_status phys_trace_stats(const phys_trace* trace, phys_run_stats* out);
PHYS_API void phys_trace_free(phys_trace* trace);

/* ---- scalar diagnostics ------------------------------------------------ */

PHYS_API phys_status phys_cost(const phys_instance* inst, const double* x, int n,
                               double* out);
PHYS_API phys_status phys_energy(const phys_instance* inst, const double* x, int n,
                                 double* out);
PHYS_API phys_status phys_infeasibility(const phys_instance* inst, const double* x,
                                        int n, double* out);
PHYS_API phys_status phys_potential(const phys_instance* inst, const double* x, int n,
                                    const phys_oracle* oracle, double* out);
PHYS_API phys_status phys_bound_time_kl(const phys_instance* inst, const double* x0,
                                        int n, const phys_oracle* oracle, double eps,
                                        double* out);
PHYS_API phys_status phys_bound_time_mu(const phys_instance* inst, const double* x0,
                                        int n, const phys_oracle* oracle, double eps,
                                        double* out);
/* Average of all nonnegative basic solutions; a feasible starting point with
 * strictly positive entries whenever one exists on the vertex hull.
 * Fails with PHYS_ERR_INFEASIBLE when the average has a zero coordinate. */
PHYS_API phys_status phys_feasible_interior_point(const phys_instance* inst, double* out,
                                                  int len);

/* ---- mirror-descent comparison ---------------------------------------- */

/* Integrate the primal flow and the dual descent dynamics side by side over
 * [0, horizon] and report the largest sup-norm gap at shared sample times.
 * config may be NULL for defaults. */
PHYS_API phys_status phys_md_compare(const phys_instance* inst, const double* x0, int n,
                                     double horizon,
                                     const phys_integration_config* config,
                                     double* max_deviation);

#ifdef __cplusplus
}
#endif

#endif /* PHYSARUM_H */
