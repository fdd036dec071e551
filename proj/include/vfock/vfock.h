/*
 * C interface to the vfock library: boundedness and compactness of Volterra
 * and multiplication operators between weighted spaces of entire functions.
 *
 * Objects are opaque handles owned by the caller and released with the
 * matching *_free function. Every fallible call returns a vf_status; on
 * failure a message is available from vf_last_error() (thread-local, valid
 * until the next failing call on the same thread).
 */
#ifndef VFOCK_VFOCK_H
#define VFOCK_VFOCK_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(VFOCK_BUILDING_LIBRARY)
#    define VFOCK_API __declspec(dllexport)
#  else
#    define VFOCK_API __declspec(dllimport)
#  endif
#else
#  define VFOCK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum vf_status {
  VF_OK = 0,
  VF_E_INVALID_ARGUMENT = 1,  /* null handle/pointer */
  VF_E_PARAMETER = 2,         /* out-of-range weight or grid parameter */
  VF_E_UNSUPPORTED_FAMILY = 3,
  VF_E_DOMAIN_COVERAGE = 4,
  VF_E_INCONCLUSIVE = 5,
  VF_E_PRECONDITION = 6,
  VF_E_CONSISTENCY = 7,
  VF_E_PARTIAL_ORACLE = 8,
  VF_E_CONFIG = 9,
  VF_E_INTERNAL = 10
} vf_status;

typedef enum vf_verdict { VF_UNBOUNDED = 0, VF_BOUNDED = 1, VF_COMPACT = 2 } vf_verdict;

typedef struct vf_weight vf_weight;
typedef struct vf_growth vf_growth;
typedef struct vf_poly vf_poly;
typedef struct vf_run vf_run;

VFOCK_API const char* vf_version(void);
VFOCK_API const char* vf_last_error(void);
VFOCK_API const char* vf_status_name(vf_status status);
VFOCK_API const char* vf_verdict_name(vf_verdict verdict);

/* Weights. `json` is a weight object such as {"family":"exp_power","alpha":1,"p":2}. */
VFOCK_API vf_status vf_weight_from_json(const char* json, vf_weight** out);
VFOCK_API void vf_weight_free(vf_weight* w);
VFOCK_API vf_status vf_weight_log_value(const vf_weight* w, double r, double* out);
/* JSON ConditionReport for one of "axioms", "kp", "two_weight", "essentialness"
 * on the default grids. Release with vf_string_free. */
VFOCK_API vf_status vf_weight_check(const vf_weight* w, const char* check, int* passed, char** report_json);

/* Growth function phi = 1/w. */
VFOCK_API vf_status vf_growth_from_weight(const vf_weight* w, vf_growth** out);
VFOCK_API void vf_growth_free(vf_growth* g);
VFOCK_API vf_status vf_growth_r_phi(const vf_growth* g, double* out);
VFOCK_API vf_status vf_growth_log_phi_prime(const vf_growth* g, double r, double* out);
VFOCK_API vf_status vf_growth_kp_ratio(const vf_growth* g, double r, double* out);
/* log u_phi(r) */
VFOCK_API vf_status vf_growth_log_u(const vf_growth* g, double r, double* out);

/* Truncated Taylor series; re[n] + i im[n] multiplies z^n. `im` may be NULL. */
VFOCK_API vf_status vf_poly_from_coeffs(const double* re, const double* im, size_t count, vf_poly** out);
/* {"coeffs": [[re, im], ...]} or {"named": "exp", "scale": s, "truncation": N} */
VFOCK_API vf_status vf_poly_from_json(const char* json, vf_poly** out);
VFOCK_API void vf_poly_free(vf_poly* p);
VFOCK_API vf_status vf_poly_degree(const vf_poly* p, long* out);
VFOCK_API vf_status vf_poly_coeff(const vf_poly* p, size_t n, double* re, double* im);
VFOCK_API vf_status vf_poly_evaluate(const vf_poly* p, double re, double im, double* out_re, double* out_im);
VFOCK_API vf_status vf_poly_log_majorant(const vf_poly* p, double r, double* out);
/* New handles for D f, J f and V_g f (truncated at n_out). */
VFOCK_API vf_status vf_poly_differentiate(const vf_poly* f, vf_poly** out);
VFOCK_API vf_status vf_poly_integrate(const vf_poly* f, vf_poly** out);
VFOCK_API vf_status vf_poly_volterra(const vf_poly* g, const vf_poly* f, size_t n_out, vf_poly** out);
/* log ||f||_v on the grid {0} + 400 log-spaced radii up to r_max. */
VFOCK_API vf_status vf_poly_weighted_norm_log(const vf_poly* f, const vf_weight* v, double r_max,
                                              double* log_norm, double* argmax);

VFOCK_API vf_status vf_monomial_norm_log(const vf_weight* v, size_t n, double* out);
/* log v_M(r) from a table of monomial norms up to degree max_degree. */
VFOCK_API vf_status vf_assoc_upper_log(const vf_weight* v, size_t max_degree, double r, double* out);

VFOCK_API vf_status vf_oracle_exp_power(double alpha, double p, long deg, vf_verdict* out);
/* Full V_g pipeline with default options. */
VFOCK_API vf_status vf_classify_volterra(const vf_weight* v, const vf_weight* w, const vf_poly* g,
                                         vf_verdict* out, char** classification_json);

VFOCK_API void vf_string_free(char* s);

/* Command runners. `config_json` is a RunConfig JSON document. The result
 * carries an exit code (0 ok, 1 checks failed, 2 bad config, 3 inconclusive,
 * 4 hypothesis failure, 5 coverage, 6 oracle disagreement, 7 internal) and
 * named artifacts (file name + content). */
VFOCK_API vf_status vf_cmd_weight_check(const char* config_json, vf_run** out);
VFOCK_API vf_status vf_cmd_classify(const char* config_json, const char* op, vf_run** out);
VFOCK_API vf_status vf_cmd_corollary_table(double alpha, const double* p_values, size_t p_count, int max_deg,
                                           const char* config_json, vf_run** out);
VFOCK_API vf_status vf_cmd_lp_check(const char* config_json, vf_run** out);

VFOCK_API int vf_run_exit_code(const vf_run* run);
VFOCK_API const char* vf_run_message(const vf_run* run);
VFOCK_API size_t vf_run_artifact_count(const vf_run* run);
VFOCK_API const char* vf_run_artifact_name(const vf_run* run, size_t i);
VFOCK_API const char* vf_run_artifact_content(const vf_run* run, size_t i);
VFOCK_API void vf_run_free(vf_run* run);

#ifdef __cplusplus
}
#endif

#endif /* VFOCK_VFOCK_H */
