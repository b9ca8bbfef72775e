#ifndef ROBINSPEC_H
#define ROBINSPEC_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define RS_API __declspec(dllexport)
#else
#define RS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rs_status {
    RS_OK = 0,
    RS_INVALID_ARGUMENT = 1,
    RS_NON_REGULAR_CURVE,
    RS_NOT_CLOSED,
    RS_DEGENERATE_MAXIMUM,
    RS_NOT_ORTHOGONAL,
    RS_NO_ROOT,
    RS_WEIGHT_NOT_POSITIVE,
    RS_NON_NEGATIVE_GAMMA,
    RS_MISSING_COEFFICIENTS,
    RS_JET_TOO_SHORT,
    RS_INTERNAL_SOLVABILITY_FAILURE,
    RS_EIKONAL_NOT_SOLVABLE,
    RS_ORDER_UNAVAILABLE,
    RS_RESOLUTION_TOO_LOW,
    RS_COLLAR_TOO_DEEP,
    RS_TRUNCATION_SUSPECT,
    RS_BRACKET_FAILURE,
    RS_NOT_CONVERGED,
    RS_INSUFFICIENT_POINTS,
    RS_IO_FAILURE,
    RS_PARSE_ERROR,
    RS_INTERNAL
} rs_status;

RS_API const char* rs_version(void);
RS_API const char* rs_status_name(rs_status s);
/* message of the last failing call on this thread; "" if none */
RS_API const char* rs_last_error(void);

/* ---- curves ---- */

/* Boundary curve re-originated at a curvature maximum. */
typedef struct rs_curve rs_curve;

typedef struct rs_curve_info {
    double period;
    double kappa_max;
    double k2;
    /* half-width of the selected well when several maxima exist, else 0 */
    double window;
    int unique_max;
    size_t n_sites;
} rs_curve_info;

/* site < 0: the unique maximum, or site 0 when there are several */
RS_API rs_status rs_curve_from_json(const char* json, size_t n_samples, long site, rs_curve** out);
RS_API rs_status rs_curve_from_file(const char* path, size_t n_samples, long site, rs_curve** out);
RS_API void rs_curve_free(rs_curve* c);
RS_API rs_status rs_curve_get_info(const rs_curve* c, rs_curve_info* out);
RS_API size_t rs_curve_warning_count(const rs_curve* c);
RS_API const char* rs_curve_warning(const rs_curve* c, size_t i);
/* kappa^{(m)}(0), m = 0..order; out has order + 1 slots */
RS_API rs_status rs_curve_jet(const rs_curve* c, size_t order, double* out);

/* ---- one-dimensional model operators ---- */

typedef struct rs_model_pair {
    double lambda;
    double lambda_plus_one;
    double w;
    double A;
    double L;
    double root_residual;
    double lambda2;
    int second_nonnegative;
} rs_model_pair;

RS_API rs_status rs_model_transcendental(double L, rs_model_pair* out);
/* grid_n points per unit length; out has k slots */
RS_API rs_status rs_model_fd_H0h(double L, size_t grid_n, size_t k, double* out);
RS_API rs_status rs_model_fd_Hbetah(double L, double h, double beta, size_t grid_n, size_t k, double* out);

/* ---- expansions ---- */

typedef struct rs_term {
    char label[32];
    double power;
    double coefficient;
    double value;
} rs_term;

typedef struct rs_local_data {
    double kappa_max;
    double k2;
    int n;
    /* zeta_0..zeta_{n_zeta - 1}; may be NULL */
    const double* zeta;
    size_t n_zeta;
} rs_local_data;

RS_API rs_status rs_gamma_to_h(double gamma, double* h);
RS_API rs_status rs_h_to_gamma(double h, double* gamma);
/* M < 0: three terms. terms may be NULL; *n_terms receives the count when not NULL */
RS_API rs_status rs_expand_lambda(double gamma, const rs_local_data* d, int M, double* value, rs_term* terms,
                                  size_t cap, size_t* n_terms);
RS_API rs_status rs_expand_mu(double h, const rs_local_data* d, int M, double* value, rs_term* terms, size_t cap,
                              size_t* n_terms);

/* ---- correction coefficients ---- */

typedef struct rs_corrections rs_corrections;

RS_API rs_status rs_corrections_from_curve(const rs_curve* c, int n, int M, int exact, rs_corrections** out);
RS_API rs_status rs_corrections_from_jet(const double* jet, size_t len, int n, int M, int exact, rs_corrections** out);
RS_API void rs_corrections_free(rs_corrections* r);
RS_API size_t rs_corrections_count(const rs_corrections* r);
RS_API double rs_corrections_zeta(const rs_corrections* r, size_t j);
/* exact path only, else NULL */
RS_API const char* rs_corrections_zeta_exact(const rs_corrections* r, size_t j);
/* exact path: identically zero; float path: |zeta_j| < 1e-8 max(1, |zeta_1|) */
RS_API int rs_corrections_zeta_is_zero(const rs_corrections* r, size_t j);
RS_API double rs_corrections_omega(const rs_corrections* r);

/* ---- WKB ---- */

typedef struct rs_wkb rs_wkb;

RS_API rs_status rs_wkb_solve(const rs_curve* c, int L, rs_wkb** out);
RS_API void rs_wkb_free(rs_wkb* w);
RS_API size_t rs_wkb_mu_count(const rs_wkb* w);
RS_API double rs_wkb_mu(const rs_wkb* w, size_t l);
RS_API double rs_wkb_eikonal_residual(const rs_wkb* w);
RS_API double rs_wkb_transport_residual(const rs_wkb* w);
RS_API size_t rs_wkb_sample_count(const rs_wkb* w);
RS_API rs_status rs_wkb_sample(const rs_wkb* w, size_t i, double* s, double* theta, double* xi0);
RS_API size_t rs_wkb_warning_count(const rs_wkb* w);
RS_API const char* rs_wkb_warning(const rs_wkb* w, size_t i);

/* ---- numerical solvers ---- */

/* values and residuals have k slots; residuals may be NULL */
RS_API rs_status rs_solve_boundary(const rs_curve* c, double gamma, size_t k, size_t n_modes, double* values,
                                   double* residuals);

typedef struct rs_collar_grid {
    size_t n_s;
    size_t n_t;
    double depth_mult;
} rs_collar_grid;

typedef struct rs_decay {
    double alpha_t;
    double alpha_s;
    double tail_mass_t;
    double deep_mass;
    double r2_quadratic;
    double r2_linear;
} rs_decay;

/* grid NULL: defaults. decay (ground state) may be NULL. */
RS_API rs_status rs_solve_collar(const rs_curve* c, double h, size_t k, const rs_collar_grid* grid, uint64_t seed,
                                 double* mu, double* residuals, rs_decay* decay);
RS_API rs_status rs_shoot_disc(double R, double h, double* mu, double* robin_residual);

/* ---- convergence harness ---- */

typedef struct rs_sweep {
    const char* curve_json;
    long site;
    const double* h;
    size_t n_h;
    const int* levels;
    size_t n_levels;
    int order;
    int run_collar;
    int run_boundary;
    int richardson;
    rs_collar_grid grid;
    size_t boundary_modes;
    uint64_t seed;
    unsigned workers;
} rs_sweep;

typedef struct rs_report rs_report;

RS_API void rs_sweep_defaults(rs_sweep* s);
RS_API rs_status rs_verify(const rs_sweep* s, rs_report** out);
RS_API void rs_report_free(rs_report* r);
RS_API int rs_report_all_pass(const rs_report* r);
/* owned by the report */
RS_API const char* rs_report_json(const rs_report* r);
RS_API size_t rs_report_check_count(const rs_report* r);
RS_API rs_status rs_report_check(const rs_report* r, size_t i, const char** name, int* pass, double* value,
                                 double* target);
/* "csv" or "json" */
RS_API rs_status rs_report_emit(const rs_report* r, const char* format, const char* path);
RS_API rs_status rs_self_test(double* max_error, int* pass);

#ifdef __cplusplus
}
#endif

#endif
