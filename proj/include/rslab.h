/*
 * rslab — exact numerical laboratory for the Rankin-Selberg error term
 * Delta(x) and its short-interval differences.
 *
 * C API over the C++ core: opaque handles, status codes, no exceptions
 * across the boundary.  All functions are safe to call concurrently on
 * distinct handles; completed tables are immutable and may be shared
 * across threads.
 */
#ifndef RSLAB_H
#define RSLAB_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
    RSLAB_OK = 0,
    RSLAB_ERR_ARGUMENT = 1,  /* bad parameter value */
    RSLAB_ERR_RANGE = 2,     /* request outside the table */
    RSLAB_ERR_FORMAT = 3,    /* malformed import file */
    RSLAB_ERR_CORRUPT = 4,   /* cache magic/version/checksum mismatch */
    RSLAB_ERR_OVERFLOW = 5,  /* value does not fit 128 bits */
    RSLAB_ERR_RESOURCE = 6,  /* beyond configured sieve limits */
    RSLAB_ERR_IO = 7,
    RSLAB_ERR_INTERNAL = 8
} rslab_status;

/* Message for the most recent failure on this thread. */
const char* rslab_last_error(void);

/* ---- coefficient tables ---------------------------------------------- */

typedef struct rslab_table rslab_table;

/* Sieve tau, c, b, mu, d and prefix sums up to n_max. */
rslab_status rslab_table_build(uint64_t n_max, rslab_table** out);
rslab_status rslab_table_load(const char* path, rslab_table** out);
rslab_status rslab_table_save(const rslab_table* t, const char* path);
/* Text import: one "n tau(n)" per line, contiguous from n = 1; rejected if
 * it disagrees with the bundled sieve anywhere below 1e4. */
rslab_status rslab_table_import(const char* path, rslab_table** out);
void rslab_table_free(rslab_table* t);

uint64_t rslab_table_nmax(const rslab_table* t);
/* tau(n) as a signed 128-bit value split into high/low 64-bit halves. */
rslab_status rslab_table_tau(const rslab_table* t, uint64_t n, int64_t* hi, uint64_t* lo);
rslab_status rslab_table_c(const rslab_table* t, uint64_t n, double* out);
rslab_status rslab_table_b(const rslab_table* t, uint64_t n, double* out);
rslab_status rslab_table_mobius(const rslab_table* t, uint64_t n, int* out);
rslab_status rslab_table_divisor_count(const rslab_table* t, uint64_t n, uint32_t* out);

/* Compares the sieve against the independent Eisenstein-series oracle for
 * all n <= upto (upto <= 1e4).  RSLAB_OK only on exact agreement. */
rslab_status rslab_oracle_check(const rslab_table* t, uint64_t upto);

/* ---- error terms ------------------------------------------------------ */

enum { RSLAB_MEAN_LSQ = 0, RSLAB_MEAN_DIFFQUOT = 1 };

typedef struct {
    double value;
    double uncertainty; /* half-width of the spread across subsamples */
    int method;
    char sample[128];
} rslab_mean_estimate;

rslab_status rslab_estimate_c(const rslab_table* t, int method, rslab_mean_estimate* out);

/* sum_{n<=x} c_n */
rslab_status rslab_partial_sum_c(const rslab_table* t, double x, double* out);
/* Delta(x) = sum_{n<=x} c_n - C x */
rslab_status rslab_delta(const rslab_table* t, double x, double c_mean, double* out);
/* sum_{n<=x} tau(n)^2 and the running estimate D = value / x^12 */
rslab_status rslab_sum_a_squared(const rslab_table* t, double x, double* value,
                                 double* d_estimate);

/* ---- divisor baseline -------------------------------------------------- */

typedef struct rslab_divisor rslab_divisor;

rslab_status rslab_divisor_build(uint64_t n_max, rslab_divisor** out);
void rslab_divisor_free(rslab_divisor* d);
/* Delta_2(x) = sum_{n<=x} d(n) - x(log x + 2 gamma - 1) */
rslab_status rslab_delta2(const rslab_divisor* d, double x, double* out);

/* Cubic fit of M2(X,U)/(XU) in log(sqrt(X)/U) over the given U values,
 * pooled over a descending bracket of X values (X/4 .. X) to decorrelate
 * the fit coordinates; coeffs[3] is the leading coefficient (target
 * 8/pi^2).  m2_over_xu may be NULL, otherwise it receives one normalized
 * moment per U at the nominal X. */
rslab_status rslab_divisor_leading_coefficient(const rslab_divisor* d, uint64_t x,
                                               const uint64_t* us, size_t nu,
                                               double coeffs[4], double* m2_over_xu);

/* ---- truncated Voronoi expansion --------------------------------------- */

rslab_status rslab_voronoi_delta(const rslab_table* t, double x, uint64_t k, double* out);

/* Truncation error against exact Delta over the K grid: rms of
 * window-averaged signed errors over jittered windows near x, with the
 * log-log slope and intercept of the fit.  errors_out may be NULL,
 * otherwise it receives nk entries. */
rslab_status rslab_voronoi_scan(const rslab_table* t, double c_mean, double x,
                                const uint64_t* ks, size_t nk, double* slope,
                                double* intercept, double* errors_out);

/* ---- short-interval mean squares ---------------------------------------- */

/* Delta(m+U) - Delta(m) */
rslab_status rslab_window_diff(const rslab_table* t, double m, double u, double c_mean,
                               double* out);

typedef struct {
    uint64_t x;
    double u;
    double continuous_ms;  /* int_X^{2X} (Delta(x+U)-Delta(x))^2 dx */
    double discrete_ms;    /* sum over X < n <= 2X */
    double shifted_ms;     /* sum over X <= m <= 2X-1 */
    uint64_t breakpoints;
    double max_window;
} rslab_interval_ms;

rslab_status rslab_mean_square(const rslab_table* t, uint64_t x, double u, double c_mean,
                               rslab_interval_ms* out);

/* min(X^{1+2 beta}, X U^2) */
rslab_status rslab_trivial_envelope(double x, double u, double beta, double* out);

typedef struct {
    uint64_t x;
    double u_exp;
    double u;
    double continuous_ms;
    double discrete_ms;
    double shifted_ms;
    double trivial_env;
    double theorem1_env;
    double lindelofz_env;
    double ratio_trivial;
    double ratio_theorem1;
    double ratio_lindelofz;
    double window_over_sqrtu;
    int ok; /* 0: cell skipped (window leaves the table) */
} rslab_sweep_cell;

/* U = X^u over the (X, u) grid; cells laid out X-major.  k0_out receives the
 * fitted constants for the trivial, theorem1 and lindelofZ envelopes. */
rslab_status rslab_sweep(const rslab_table* t, double c_mean, double mu, const uint64_t* xs,
                         size_t nx, const double* us, size_t nu, int threads,
                         rslab_sweep_cell* cells, double k0_out[3]);

/* ---- exponent formulas and fitting -------------------------------------- */

/* beta = 2/(5 - 4 mu) */
rslab_status rslab_beta_of_mu(double mu, double* out);
/* alpha = (9 + 12 mu)/(7 + 4 mu), gamma = 8/(7 + 4 mu) */
rslab_status rslab_theorem1_exponents(double mu, double* alpha, double* gamma);
/* U-exponent window where the theorem1 bound beats the trivial one */
rslab_status rslab_improvement_range(double mu, double* u_low, double* u_high, int* nonempty);
/* T = X^{3/(7/2+2mu)} U^{-2/(7/2+2mu)}; within_x reports T <= X */
rslab_status rslab_optimal_t(double x, double u, double mu, double* out, int* within_x);

typedef struct {
    double slope;
    double intercept;
    double residual_rms;
    uint64_t points;
} rslab_exponent_fit;

/* OLS of log(value) on log(scale); all inputs must be positive. */
rslab_status rslab_fit_exponent(const double* scales, const double* values, size_t n,
                                rslab_exponent_fit* out);

#ifdef __cplusplus
}
#endif

#endif /* RSLAB_H */
