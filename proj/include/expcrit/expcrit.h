/* expcrit - completeness criteria for exponential systems: C API.
 *
 * Numerical machinery for zero sequences of Bernstein spaces and
 * completeness of exponential systems on a segment: Poisson integrals,
 * principal-value Hilbert transforms, admissibility checks for the test
 * function class, the completeness functional, sector and
 * Beurling-Malliavin style criteria.
 *
 * All functions return ec_status; EC_OK is 0.  On failure a thread-local
 * message is available from ec_last_error().  Strings returned through
 * char** out-parameters are heap-allocated; release them with
 * ec_string_free().
 */

#ifndef EXPCRIT_H
#define EXPCRIT_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ec_status {
  EC_OK = 0,
  EC_ERR_INVALID = 2, /* bad input / config validation */
  EC_ERR_NUMERIC = 3  /* quadrature or criterion gave up */
} ec_status;

typedef struct ec_sequence ec_sequence;
typedef struct ec_testfn ec_testfn;
typedef struct ec_quad_config ec_quad_config;

typedef struct ec_quad_result {
  double value;
  double abs_error;
  int status; /* 0 converged, 1 max_refinement, 2 singular_failure */
  long evaluations;
} ec_quad_result;

const char* ec_version(void);
const char* ec_last_error(void);
void ec_string_free(char* s);

/* ---- sequences: {"kind": ..., "params": {...}, "count": N} ---- */
ec_status ec_sequence_from_json(const char* json, ec_sequence** out);
void ec_sequence_free(ec_sequence* seq);
long ec_sequence_count(const ec_sequence* seq);
ec_status ec_sequence_point(const ec_sequence* seq, long index /* 1-based */,
                            double* re, double* im);

/* ---- test functions: {"family": ..., "params": {...}} ---- */
ec_status ec_testfn_from_json(const char* json, ec_testfn** out);
void ec_testfn_free(ec_testfn* phi);
double ec_testfn_eval(const ec_testfn* phi, double x);
double ec_testfn_support_radius(const ec_testfn* phi);
/* membership report as JSON */
ec_status ec_testfn_verify(const ec_testfn* phi, const ec_quad_config* cfg,
                           char** report_json);

/* ---- quadrature configuration (NULL means defaults) ---- */
ec_status ec_quad_config_create(double rel_tol, double abs_tol, int max_depth,
                                ec_quad_config** out);
void ec_quad_config_free(ec_quad_config* cfg);

/* ---- transforms ---- */
ec_status ec_poisson(const ec_testfn* phi, double re, double im,
                     const ec_quad_config* cfg, ec_quad_result* out);
ec_status ec_hilbert(const ec_testfn* phi, double x, const ec_quad_config* cfg,
                     ec_quad_result* out);
ec_status ec_hilbert_derivative(const ec_testfn* phi, double x,
                                const ec_quad_config* cfg, ec_quad_result* out);

/* ---- completeness functional; type_json is {"sigma": s} or {"d": d} ---- */
ec_status ec_functional_evaluate(const ec_sequence* seq, const ec_testfn* phi,
                                 const char* type_json,
                                 const ec_quad_config* cfg, char** report_json);

/* ---- full subcommand runner (what the CLI calls) ----
 * subcommand: verify-testfn | poisson | hilbert | functional | classify |
 *             bm-radius | search | sweep
 * csv_out may be NULL; when given it receives plot data for subcommands
 * that produce it (sweep), else NULL. */
ec_status ec_run(const char* subcommand, const char* config_json,
                 char** report_json, char** csv_out);

#ifdef __cplusplus
}
#endif

#endif /* EXPCRIT_H */
