/* latk — planar lattice energy toolkit.
 *
 * C interface to the lattice-energy core: 1-D theta evaluation, Gaussian
 * lattice sums and their difference energy, reduction to the fundamental
 * domain of the symmetry group, minimization along the critical ray,
 * phase classification and thresholds, and the inequality verification
 * suites.
 *
 * Conventions:
 *   - every function returns a latk_status; results go to out-parameters;
 *   - a thread-local message for the last failure is available via
 *     latk_last_error();
 *   - an opaque latk_options carries evaluation settings (see the key list
 *     at latk_options_set); NULL means defaults everywhere.
 */

#ifndef LATK_H
#define LATK_H

#include <stddef.h>

#if defined(_WIN32)
#define LATK_API __declspec(dllexport)
#else
#define LATK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum latk_status {
    LATK_OK = 0,
    LATK_ERR_DOMAIN = 1,      /* argument outside the mathematical domain */
    LATK_ERR_USAGE = 2,       /* null pointer, unknown key, malformed input */
    LATK_ERR_IO = 3,          /* reserved for callers; not raised by the core */
    LATK_ERR_CHECK_FAILED = 4,/* a verification suite reported violations */
    LATK_ERR_CONVERGENCE = 5, /* series failed to converge within the caps */
    LATK_ERR_REDUCTION = 6,
    LATK_ERR_THRESHOLD = 7,   /* threshold predicate failed to bracket */
    LATK_ERR_EVAL = 8,
    LATK_ERR_INTERNAL = 9
} latk_status;

LATK_API const char* latk_status_message(latk_status s);
LATK_API const char* latk_last_error(void);
LATK_API const char* latk_version(void);

/* ------------------------------------------------------------------ */
/* options                                                             */
/* ------------------------------------------------------------------ */

typedef struct latk_options latk_options;

LATK_API latk_options* latk_options_new(void);
LATK_API void latk_options_free(latk_options* opt);

/* Settable keys: abs_tol, max_terms, switch_threshold, y_max, x_tol,
 * f_tol, max_iter, scan_ratio, grid_n. The left end of the critical ray
 * (y_min = sqrt(3)/2) is fixed and only readable. */
LATK_API latk_status latk_options_set(latk_options* opt, const char* key, double value);
LATK_API latk_status latk_options_get(const latk_options* opt, const char* key, double* value);

/* ------------------------------------------------------------------ */
/* 1-D theta function and tail series                                  */
/* ------------------------------------------------------------------ */

LATK_API latk_status latk_theta(const latk_options* opt, double X, double Y, double* out);
LATK_API latk_status latk_theta_dx(const latk_options* opt, double X, double Y, double* out);
LATK_API latk_status latk_theta_dy(const latk_options* opt, double X, double Y, double* out);
LATK_API latk_status latk_theta_dxdy(const latk_options* opt, double X, double Y, double* out);

typedef enum latk_aux_series {
    LATK_AUX_MU = 0,
    LATK_AUX_NU = 1,
    LATK_AUX_MU_HAT = 2,
    LATK_AUX_NU_HAT = 3,
    LATK_AUX_DELTA = 4
} latk_aux_series;

LATK_API latk_status latk_aux(const latk_options* opt, latk_aux_series kind, double x, double* out);

/* ------------------------------------------------------------------ */
/* lattice energies                                                    */
/* ------------------------------------------------------------------ */

typedef struct latk_energy {
    double value;
    double est_error; /* rigorous truncation bound */
} latk_energy;

LATK_API latk_status latk_theta2d(const latk_options* opt, double alpha, double x, double y,
                                  latk_energy* out);
LATK_API latk_status latk_kernel_direct(const latk_options* opt, double alpha, double x, double y,
                                        latk_energy* out);
LATK_API latk_status latk_kernel_expansion(const latk_options* opt, double alpha, double x,
                                           double y, latk_energy* out);
LATK_API latk_status latk_diff_energy(const latk_options* opt, double alpha, double b, double x,
                                      double y, latk_energy* out);
LATK_API latk_status latk_diff_energy_grad(const latk_options* opt, double alpha, double b,
                                           double x, double y, double* dx, double* dy);

/* 1 when (alpha, b) lies in the parameter range the phase classification
 * is established for; 0 otherwise (alpha < 2). */
LATK_API int latk_theorem_covered(double alpha, double b);
/* 1 when b >= 2 sqrt(2) - 1e-9 (no-minimizer regime). */
LATK_API int latk_nonexistence_regime(double alpha, double b);

/* ------------------------------------------------------------------ */
/* fundamental-domain reduction                                        */
/* ------------------------------------------------------------------ */

/* Reduces (x, y) into the closed domain {|z| >= 1, 0 <= x <= 1/2}. The
 * applied generator word ("I" invert, "R" reflect, "T<k>" translate) is
 * written to `word` when non-NULL (truncated to word_cap, always 0-ended). */
LATK_API latk_status latk_reduce(const latk_options* opt, double x, double y, double* out_x,
                                 double* out_y, char* word, size_t word_cap);

/* Applies a generator word to (x, y). */
LATK_API latk_status latk_apply_word(const char* word, double x, double y, double* out_x,
                                     double* out_y);

LATK_API int latk_is_on_gamma_c(double x, double y, double tol);

/* ------------------------------------------------------------------ */
/* minimization and phases                                             */
/* ------------------------------------------------------------------ */

typedef enum latk_min_kind {
    LATK_MIN_INTERIOR = 0,
    LATK_MIN_LEFT_ENDPOINT_HEXAGONAL = 1,
    LATK_MIN_CEILING_HIT = 2
} latk_min_kind;

typedef struct latk_min_result {
    double x, y;
    double value;
    int kind; /* latk_min_kind */
    long iterations;
} latk_min_result;

LATK_API latk_status latk_minimize_gamma_c(const latk_options* opt, double alpha, double b,
                                           latk_min_result* out);
LATK_API latk_status latk_minimize_2d(const latk_options* opt, double alpha, double b,
                                      latk_min_result* out);

typedef enum latk_phase {
    LATK_PHASE_HEXAGONAL = 0,
    LATK_PHASE_SKINNY_RHOMBIC = 1,
    LATK_PHASE_NONEXISTENT = 2
} latk_phase;

typedef struct latk_phase_result {
    double alpha, b;
    int phase; /* latk_phase */
    double y_b;
    double energy;
} latk_phase_result;

LATK_API latk_status latk_classify_phase(const latk_options* opt, double alpha, double b,
                                         latk_phase_result* out);
LATK_API const char* latk_phase_name(int phase);

typedef struct latk_threshold {
    double alpha;
    double b_c1;
    double bracket_width;
} latk_threshold;

LATK_API latk_status latk_find_bc1(const latk_options* opt, double alpha, double tol,
                                   latk_threshold* out);

typedef struct latk_certificate {
    double min_margin; /* min of -dE/dx over the grid */
    long points;
    long violations;
} latk_certificate;

LATK_API latk_status latk_certify_transversal(const latk_options* opt, double alpha, double b,
                                              int nx, int ny, double y_max,
                                              latk_certificate* out);

/* Energy along x = 1/2 at increasing y samples vs the leading large-y form. */
typedef struct latk_asym_report {
    int strictly_decreasing;
    int all_positive;
    int negative_at_end;
    double rel_dev_at_last;
} latk_asym_report;

LATK_API latk_status latk_nonexistence_asymptotics(const latk_options* opt, double alpha, double b,
                                                   const double* ys, size_t n, double* energies,
                                                   latk_asym_report* out);

/* ------------------------------------------------------------------ */
/* verification suites                                                 */
/* ------------------------------------------------------------------ */

typedef struct latk_report latk_report;

/* suite: "theta", "transversal", "curvature", "comparison", "decay",
 * "constants", or "all"; grid_n <= 0 selects the default density. */
LATK_API latk_status latk_verify_run(const latk_options* opt, const char* suite, int grid_n,
                                     latk_report** out);
LATK_API void latk_report_free(latk_report* rep);
LATK_API size_t latk_report_size(const latk_report* rep);
LATK_API latk_status latk_report_entry(const latk_report* rep, size_t i, const char** name,
                                       const char** hypothesis, double* margin, long* points,
                                       long* violations, int* passed);
LATK_API int latk_report_all_passed(const latk_report* rep);

/* Named proof sum (S1..S4, S3a..S3d, M1..M4, E1..E4, P1..P3) at (alpha, y). */
LATK_API latk_status latk_proof_sum(const latk_options* opt, const char* which, double alpha,
                                    double y, double* out);

#ifdef __cplusplus
}
#endif

#endif /* LATK_H */
