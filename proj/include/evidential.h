/* C API for the evidential statistics library.
 *
 * Conventions:
 *  - every fallible function returns an ev_status; outputs go through
 *    pointers and are written only on EV_OK
 *  - ev_last_error() describes the most recent failure on this thread
 *  - ev_report is an opaque handle, released with ev_report_free
 *  - string rendering uses the two-call pattern: pass NULL/0 to size, then
 *    call again with a buffer of at least *len + 1 bytes
 */
#ifndef EVIDENTIAL_H
#define EVIDENTIAL_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#ifndef EV_API
#if defined(_WIN32)
#define EV_API __declspec(dllexport)
#elif defined(__GNUC__)
#define EV_API __attribute__((visibility("default")))
#else
#define EV_API
#endif
#endif

typedef enum ev_status {
  EV_OK = 0,
  EV_ERR_DOMAIN = 1,           /* argument outside its mathematical domain */
  EV_ERR_INVALID_ARGUMENT = 2, /* structural misuse (sizes, null, ranges) */
  EV_ERR_BUFFER_TOO_SMALL = 3,
  EV_ERR_INTERNAL = 4
} ev_status;

typedef enum ev_method {
  EV_METHOD_MARSMAN = 0,
  EV_METHOD_MLE = 1,
  EV_METHOD_GOODMAN = 2,
  EV_METHOD_SELLKE = 3
} ev_method;

typedef enum ev_format {
  EV_FORMAT_TEXT = 0,
  EV_FORMAT_CSV = 1,
  EV_FORMAT_JSON = 2
} ev_format;

typedef enum ev_field_kind {
  EV_FIELD_NUMBER = 0,
  EV_FIELD_BOOLEAN = 1,
  EV_FIELD_TEXT = 2
} ev_field_kind;

EV_API const char* ev_version(void);
EV_API const char* ev_status_message(ev_status status);
/* Description of the latest failure on the calling thread; never NULL. */
EV_API const char* ev_last_error(void);

/* --- normal distribution --------------------------------------------- */

EV_API ev_status ev_std_normal_pdf(double x, double* out);
EV_API ev_status ev_std_normal_cdf(double x, double* out);
EV_API ev_status ev_std_normal_quantile(double p, double* out);
/* Upper tail P(X >= k) for X ~ Binomial(n, p0). */
EV_API ev_status ev_binomial_tail(uint64_t n, uint64_t k, double p0,
                                  double* out);

/* --- calibrations ------------------------------------------------------ */

EV_API ev_status ev_mle_lr(double p, double* out);
EV_API ev_status ev_goodman_lr(double z, double* out);
EV_API ev_status ev_marsman_lr(double p, double* out);
/* raw = -e p ln p; bound = raw clamped to 1 outside validity (p >= 1/e). */
EV_API ev_status ev_sellke_mbf(double p, double* raw, double* bound,
                               int* valid);
EV_API ev_status ev_posterior_from_lr(double lr, double prior_odds,
                                      double* out);

EV_API const char* ev_method_key(ev_method m);
EV_API const char* ev_method_label(ev_method m);
EV_API const char* ev_method_formula(ev_method m);
EV_API const char* ev_method_prior(ev_method m);

typedef struct ev_calibration_row {
  int method; /* ev_method */
  double lr;  /* favored-direction form; sellke shows 1/raw */
  double posterior;
  int valid; /* 0 only for sellke rows with p >= 1/e */
} ev_calibration_row;

/* Four rows at p = Phi(-|z|), sorted by descending LR (sellke ranked by its
 * validity-bounded value); ties keep marsman, mle, goodman, sellke order. */
EV_API ev_status ev_calibration_table(double z, double prior_odds,
                                      ev_calibration_row out_rows[4]);

/* --- ROC geometry ------------------------------------------------------ */

typedef struct ev_roc_point {
  double cutoff;
  double fpr;
  double tpr;
} ev_roc_point;

EV_API ev_status ev_roc_point_at(double separation, double cutoff,
                                 ev_roc_point* out);
/* Secant forms require an interior point (rates within [1e-12, 1-1e-12]);
 * out parameters may be NULL when a value is not wanted. */
EV_API ev_status ev_roc_secants(const ev_roc_point* pt, double* lr_positive,
                                double* lr_negative, double* lr_product);
EV_API ev_status ev_roc_tangent(double separation, double cutoff,
                                double* out);

typedef struct ev_convexity_report {
  int monotone_increasing;
  int slopes_strictly_decreasing;
  size_t points;
  double max_slope_increase;
  double max_tangent_secant_gap;
} ev_convexity_report;

/* cutoffs must be strictly ascending with at least 3 entries. */
EV_API ev_status ev_roc_convexity(double separation, const double* cutoffs,
                                  size_t n_cutoffs, ev_convexity_report* out);

/* --- evidential reports ------------------------------------------------ */

typedef enum ev_direction {
  EV_DIRECTION_UNSPECIFIED = 0, /* orient toward the observed direction */
  EV_DIRECTION_GREATER = 1,
  EV_DIRECTION_LESS = 2
} ev_direction;

typedef struct ev_report ev_report;

/* Report for an estimate theta_obs with standard error se tested against
 * the dividing value delta, with prior odds on the favored direction. */
EV_API ev_status ev_report_trial(double theta_obs, double se, double delta,
                                 ev_direction favored, double prior_odds,
                                 ev_report** out);
/* Normal-approximation report for a k-of-n poll against the dividing share
 * p0 (favored direction: greater), plus the exact binomial tail. */
EV_API ev_status ev_report_poll(uint64_t n, uint64_t k, double p0,
                                double prior_odds, ev_report** out);
EV_API void ev_report_free(ev_report* report);

EV_API ev_status ev_report_field_count(const ev_report* report, size_t* out);
EV_API ev_status ev_report_field_name(const ev_report* report, size_t index,
                                      const char** out);
EV_API ev_status ev_report_field_kind(const ev_report* report, size_t index,
                                      ev_field_kind* out);
/* Numeric value; booleans read as 0.0/1.0. Text fields are EV_ERR_DOMAIN. */
EV_API ev_status ev_report_value(const ev_report* report, const char* name,
                                 double* out);
EV_API ev_status ev_report_text(const ev_report* report, const char* name,
                                const char** out);

/* Renders the report; writes at most cap bytes including the terminator and
 * stores the full untruncated length (excluding the terminator) in *len.
 * Returns EV_ERR_BUFFER_TOO_SMALL when cap is insufficient. */
EV_API ev_status ev_report_render(const ev_report* report, ev_format format,
                                  int precision, char* buf, size_t cap,
                                  size_t* len);

/* --- inference scalars -------------------------------------------------- */

EV_API ev_status ev_z_statistic(double theta_obs, double se, double delta,
                                double* out);
EV_API ev_status ev_one_sided_p(double theta_obs, double se, double delta,
                                double* out);
EV_API ev_status ev_two_sided_p(double theta_obs, double se, double delta,
                                double* out);
EV_API ev_status ev_power(double alpha, double effect, double* out);
/* Power at alpha = p against the effect that produced p; p in (0, 0.5). */
EV_API ev_status ev_observed_power(double p, double* out);

/* --- monte carlo -------------------------------------------------------- */

typedef struct ev_mc_estimate {
  double estimate;
  double std_error;
  uint64_t n_sims;
  uint64_t seed;
} ev_mc_estimate;

/* Frequency of theta_hat >= cutoff, theta_hat ~ N(true_theta, se^2).
 * Bit-identical for any workers value; workers = 0 uses all cores. */
EV_API ev_status ev_mc_exceedance(uint64_t seed, uint64_t n_sims,
                                  double true_theta, double se, double cutoff,
                                  unsigned workers, ev_mc_estimate* out);

typedef struct ev_mc_secant_comparison {
  ev_mc_estimate fpr;
  ev_mc_estimate tpr;
  double analytic_fpr;
  double analytic_tpr;
  double empirical_lr;
  double empirical_lr_se;
  double analytic_secant_lr;
  double analytic_tangent_lr;
  int tangent_differs;
} ev_mc_secant_comparison;

EV_API ev_status ev_mc_secant_comparison_run(double separation, double cutoff,
                                             uint64_t n_sims, uint64_t seed,
                                             unsigned workers,
                                             ev_mc_secant_comparison* out);

EV_API ev_status ev_mc_sign_error(double true_theta, double se, double delta,
                                  uint64_t n_sims, uint64_t seed,
                                  unsigned workers, ev_mc_estimate* out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* EVIDENTIAL_H */
