#include "evidential.h"

#include <cstring>
#include <string>
#include <utility>
#include <vector>

#include "evidential/calibration.hpp"
#include "evidential/inference.hpp"
#include "evidential/montecarlo.hpp"
#include "evidential/normal.hpp"
#include "evidential/report_io.hpp"
#include "evidential/roc.hpp"

namespace ev = evidential;

namespace {

thread_local std::string g_last_error = "no error";

ev_status fail(ev_status s, const char* msg) {
  g_last_error = msg;
  return s;
}

template <typename F>
ev_status guarded(F&& body) {
  try {
    return body();
  } catch (const std::domain_error& e) {
    return fail(EV_ERR_DOMAIN, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(EV_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(EV_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(EV_ERR_INTERNAL, "unknown error");
  }
}

ev_status require(const void* p) {
  return p ? EV_OK
           : fail(EV_ERR_INVALID_ARGUMENT, "null pointer argument");
}

ev::Method to_method(ev_method m) {
  switch (m) {
    case EV_METHOD_MARSMAN: return ev::Method::marsman;
    case EV_METHOD_MLE: return ev::Method::mle_lr;
    case EV_METHOD_GOODMAN: return ev::Method::goodman;
    case EV_METHOD_SELLKE: return ev::Method::sellke;
  }
  throw std::invalid_argument("unknown method");
}

ev_method from_method(ev::Method m) {
  switch (m) {
    case ev::Method::marsman: return EV_METHOD_MARSMAN;
    case ev::Method::mle_lr: return EV_METHOD_MLE;
    case ev::Method::goodman: return EV_METHOD_GOODMAN;
    case ev::Method::sellke: return EV_METHOD_SELLKE;
  }
  return EV_METHOD_MARSMAN;
}

ev_mc_estimate convert(const ev::McEstimate& e) {
  return ev_mc_estimate{e.estimate, e.std_error, e.n_sims, e.seed};
}

}  // namespace

struct ev_report {
  std::vector<ev::ReportField> fields;
};

extern "C" {

const char* ev_version(void) { return "0.1.0"; }

const char* ev_status_message(ev_status status) {
  switch (status) {
    case EV_OK: return "ok";
    case EV_ERR_DOMAIN: return "domain error";
    case EV_ERR_INVALID_ARGUMENT: return "invalid argument";
    case EV_ERR_BUFFER_TOO_SMALL: return "buffer too small";
    case EV_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* ev_last_error(void) { return g_last_error.c_str(); }

ev_status ev_std_normal_pdf(double x, double* out) {
  if (ev_status s = require(out)) return s;
  return guarded([&] {
    *out = ev::std_normal_pdf(ev::ZScore(x));
    return EV_OK;
  });
}

ev_status ev_std_normal_cdf(double x, double* out) {
  if (ev_status s = require(out)) return s;
  return guarded([&] {
    *out = ev::std_normal_cdf(ev::ZScore(x)).value();
    return EV_OK;
  });
}

ev_status ev_std_normal_quantile(double p, double* out) {
  if (ev_status s = require(out)) return s;
  return guarded([&] {
    *out = ev::std_normal_quantile(ev::Probability::from(p)).value();
    return EV_OK;
  });
}

ev_status ev_binomial_tail(uint64_t n, uint64_t k, double p0, double* out) {
  if (ev_status s = require(out)) return s;
  return guarded([&] {
    *out = ev::binomial_tail(n, k, ev::Probability::from(p0)).value();
    return EV_OK;
  });
}

ev_status ev_mle_lr(double p, double* out) {
  if (ev_status s = require(out)) return s;
  return guarded([&] {
    *out = ev::mle_lr(ev::Probability::from(p)).value();
    return EV_OK;
  });
}

ev_status ev_goodman_lr(double z, double* out) {
  if (ev_status s = require(out)) return s;
  return guarded([&] {
    *out = ev::goodman_lr(ev::ZScore(z)).value();
    return EV_OK;
  });
}

ev_status ev_marsman_lr(double p, double* out) {
  if (ev_status s = require(out)) return s;
  return guarded([&] {
    *out = ev::marsman_lr(ev::Probability::from(p)).value();
    return EV_OK;
  });
}

ev_status ev_sellke_mbf(double p, double* raw, double* bound, int* valid) {
  return guarded([&] {
    const ev::SellkeResult r = ev::sellke_mbf(ev::Probability::from(p));
    if (raw) *raw = r.raw;
    if (bound) *bound = r.bound;
    if (valid) *valid = r.valid ? 1 : 0;
    return EV_OK;
  });
}

ev_status ev_posterior_from_lr(double lr, double prior_odds, double* out) {
  if (ev_status s = require(out)) return s;
  return guarded([&] {
    *out = ev::posterior_from_lr(ev::LikelihoodRatio(lr), ev::Odds(prior_odds))
               .value();
    return EV_OK;
  });
}

const char* ev_method_key(ev_method m) {
  return ev::method_key(to_method(m));
}
const char* ev_method_label(ev_method m) {
  return ev::method_label(to_method(m));
}
const char* ev_method_formula(ev_method m) {
  return ev::method_formula(to_method(m));
}
const char* ev_method_prior(ev_method m) {
  return ev::method_prior(to_method(m));
}

ev_status ev_calibration_table(double z, double prior_odds,
                               ev_calibration_row out_rows[4]) {
  if (ev_status s = require(out_rows)) return s;
  return guarded([&] {
    const auto rows =
        ev::calibration_table(ev::ZScore(z), ev::Odds(prior_odds));
    for (std::size_t i = 0; i < 4; ++i) {
      out_rows[i].method = from_method(rows[i].method);
      out_rows[i].lr = rows[i].lr.value();
      out_rows[i].posterior = rows[i].posterior.value();
      out_rows[i].valid = rows[i].calibration_valid ? 1 : 0;
    }
    return EV_OK;
  });
}

ev_status ev_roc_point_at(double separation, double cutoff,
                          ev_roc_point* out) {
  if (ev_status s = require(out)) return s;
  return guarded([&] {
    const ev::RocPoint pt = ev::roc_point(ev::RocModel(separation), cutoff);
    *out = ev_roc_point{pt.cutoff, pt.fpr.value(), pt.tpr.value()};
    return EV_OK;
  });
}

ev_status ev_roc_secants(const ev_roc_point* pt, double* lr_positive,
                         double* lr_negative, double* lr_product) {
  if (ev_status s = require(pt)) return s;
  return guarded([&] {
    const ev::RocPoint point{ev::Probability::from_closed(pt->fpr),
                             ev::Probability::from_closed(pt->tpr),
                             pt->cutoff};
    if (lr_positive) *lr_positive = ev::positive_secant_lr(point).value();
    if (lr_negative) *lr_negative = ev::negative_secant_lr(point).value();
    if (lr_product) *lr_product = ev::secant_product_lr(point).value();
    return EV_OK;
  });
}

ev_status ev_roc_tangent(double separation, double cutoff, double* out) {
  if (ev_status s = require(out)) return s;
  return guarded([&] {
    *out = ev::tangent_lr(ev::RocModel(separation), cutoff).value();
    return EV_OK;
  });
}

ev_status ev_roc_convexity(double separation, const double* cutoffs,
                           size_t n_cutoffs, ev_convexity_report* out) {
  if (ev_status s = require(out)) return s;
  if (ev_status s = require(cutoffs)) return s;
  return guarded([&] {
    const ev::ConvexityReport r = ev::convexity_check(
        ev::RocModel(separation), std::span(cutoffs, n_cutoffs));
    *out = ev_convexity_report{r.monotone_increasing ? 1 : 0,
                               r.slopes_strictly_decreasing ? 1 : 0, r.points,
                               r.max_slope_increase, r.max_tangent_secant_gap};
    return EV_OK;
  });
}

ev_status ev_report_trial(double theta_obs, double se, double delta,
                          ev_direction favored, double prior_odds,
                          ev_report** out) {
  if (ev_status s = require(out)) return s;
  return guarded([&] {
    ev::TrialSpec trial;
    trial.theta_obs = theta_obs;
    trial.se = se;
    trial.delta = delta;
    switch (favored) {
      case EV_DIRECTION_UNSPECIFIED: break;
      case EV_DIRECTION_GREATER: trial.favored = ev::Direction::greater; break;
      case EV_DIRECTION_LESS: trial.favored = ev::Direction::less; break;
      default: throw std::invalid_argument("unknown direction");
    }
    const ev::EvidentialReport report =
        ev::evidential_report(trial, ev::Odds(prior_odds));
    *out = new ev_report{ev::report_fields(report)};
    return EV_OK;
  });
}

ev_status ev_report_poll(uint64_t n, uint64_t k, double p0, double prior_odds,
                         ev_report** out) {
  if (ev_status s = require(out)) return s;
  return guarded([&] {
    ev::PollSpec poll;
    poll.n = n;
    poll.k = k;
    poll.p0 = ev::Probability::from(p0);
    const ev::PollReport report = ev::poll_report(poll, ev::Odds(prior_odds));
    *out = new ev_report{ev::report_fields(report)};
    return EV_OK;
  });
}

void ev_report_free(ev_report* report) { delete report; }

ev_status ev_report_field_count(const ev_report* report, size_t* out) {
  if (ev_status s = require(report)) return s;
  if (ev_status s = require(out)) return s;
  *out = report->fields.size();
  return EV_OK;
}

ev_status ev_report_field_name(const ev_report* report, size_t index,
                               const char** out) {
  if (ev_status s = require(report)) return s;
  if (ev_status s = require(out)) return s;
  if (index >= report->fields.size())
    return fail(EV_ERR_INVALID_ARGUMENT, "field index out of range");
  *out = report->fields[index].name.c_str();
  return EV_OK;
}

ev_status ev_report_field_kind(const ev_report* report, size_t index,
                               ev_field_kind* out) {
  if (ev_status s = require(report)) return s;
  if (ev_status s = require(out)) return s;
  if (index >= report->fields.size())
    return fail(EV_ERR_INVALID_ARGUMENT, "field index out of range");
  *out = static_cast<ev_field_kind>(report->fields[index].kind);
  return EV_OK;
}

static const ev::ReportField* find_field(const ev_report* report,
                                         const char* name) {
  for (const ev::ReportField& f : report->fields) {
    if (f.name == name) return &f;
  }
  return nullptr;
}

ev_status ev_report_value(const ev_report* report, const char* name,
                          double* out) {
  if (ev_status s = require(report)) return s;
  if (ev_status s = require(name)) return s;
  if (ev_status s = require(out)) return s;
  const ev::ReportField* f = find_field(report, name);
  if (!f) return fail(EV_ERR_INVALID_ARGUMENT, "no such field");
  switch (f->kind) {
    case ev::FieldKind::number: *out = f->num; return EV_OK;
    case ev::FieldKind::boolean: *out = f->flag ? 1.0 : 0.0; return EV_OK;
    case ev::FieldKind::text:
      return fail(EV_ERR_DOMAIN, "field is text, use ev_report_text");
  }
  return fail(EV_ERR_INTERNAL, "corrupt field kind");
}

ev_status ev_report_text(const ev_report* report, const char* name,
                         const char** out) {
  if (ev_status s = require(report)) return s;
  if (ev_status s = require(name)) return s;
  if (ev_status s = require(out)) return s;
  const ev::ReportField* f = find_field(report, name);
  if (!f) return fail(EV_ERR_INVALID_ARGUMENT, "no such field");
  if (f->kind != ev::FieldKind::text)
    return fail(EV_ERR_DOMAIN, "field is not text, use ev_report_value");
  *out = f->str.c_str();
  return EV_OK;
}

ev_status ev_report_render(const ev_report* report, ev_format format,
                           int precision, char* buf, size_t cap, size_t* len) {
  if (ev_status s = require(report)) return s;
  if (ev_status s = require(len)) return s;
  return guarded([&] {
    std::string rendered;
    switch (format) {
      case EV_FORMAT_TEXT:
        rendered = ev::render_text(report->fields, precision);
        break;
      case EV_FORMAT_CSV:
        rendered = ev::render_csv(report->fields, precision);
        break;
      case EV_FORMAT_JSON:
        rendered = ev::render_json(report->fields);
        break;
      default: throw std::invalid_argument("unknown format");
    }
    *len = rendered.size();
    if (!buf || cap < rendered.size() + 1)
      return fail(EV_ERR_BUFFER_TOO_SMALL, "render buffer too small");
    std::memcpy(buf, rendered.c_str(), rendered.size() + 1);
    return EV_OK;
  });
}

ev_status ev_z_statistic(double theta_obs, double se, double delta,
                         double* out) {
  if (ev_status s = require(out)) return s;
  return guarded([&] {
    ev::TrialSpec trial;
    trial.theta_obs = theta_obs;
    trial.se = se;
    trial.delta = delta;
    *out = ev::z_statistic(trial).value();
    return EV_OK;
  });
}

ev_status ev_one_sided_p(double theta_obs, double se, double delta,
                         double* out) {
  if (ev_status s = require(out)) return s;
  return guarded([&] {
    ev::TrialSpec trial;
    trial.theta_obs = theta_obs;
    trial.se = se;
    trial.delta = delta;
    *out = ev::one_sided_p(trial).value();
    return EV_OK;
  });
}

ev_status ev_two_sided_p(double theta_obs, double se, double delta,
                         double* out) {
  if (ev_status s = require(out)) return s;
  return guarded([&] {
    ev::TrialSpec trial;
    trial.theta_obs = theta_obs;
    trial.se = se;
    trial.delta = delta;
    *out = ev::two_sided_p(trial).value();
    return EV_OK;
  });
}

ev_status ev_power(double alpha, double effect, double* out) {
  if (ev_status s = require(out)) return s;
  return guarded([&] {
    *out = ev::power(ev::Probability::from(alpha), ev::ZScore(effect)).value();
    return EV_OK;
  });
}

ev_status ev_observed_power(double p, double* out) {
  if (ev_status s = require(out)) return s;
  return guarded([&] {
    *out = ev::observed_power(ev::Probability::from(p)).value();
    return EV_OK;
  });
}

ev_status ev_mc_exceedance(uint64_t seed, uint64_t n_sims, double true_theta,
                           double se, double cutoff, unsigned workers,
                           ev_mc_estimate* out) {
  if (ev_status s = require(out)) return s;
  return guarded([&] {
    ev::McConfig cfg;
    cfg.seed = seed;
    cfg.n_sims = n_sims;
    cfg.true_theta = true_theta;
    cfg.se = se;
    cfg.cutoff = cutoff;
    cfg.workers = workers;
    *out = convert(ev::estimate_exceedance(cfg));
    return EV_OK;
  });
}

ev_status ev_mc_secant_comparison_run(double separation, double cutoff,
                                      uint64_t n_sims, uint64_t seed,
                                      unsigned workers,
                                      ev_mc_secant_comparison* out) {
  if (ev_status s = require(out)) return s;
  return guarded([&] {
    const ev::SecantComparison r =
        ev::compare_secant_lr(separation, cutoff, n_sims, seed, workers);
    *out = ev_mc_secant_comparison{convert(r.fpr),
                                   convert(r.tpr),
                                   r.analytic_fpr,
                                   r.analytic_tpr,
                                   r.empirical_lr,
                                   r.empirical_lr_se,
                                   r.analytic_secant_lr,
                                   r.analytic_tangent_lr,
                                   r.tangent_differs ? 1 : 0};
    return EV_OK;
  });
}

ev_status ev_mc_sign_error(double true_theta, double se, double delta,
                           uint64_t n_sims, uint64_t seed, unsigned workers,
                           ev_mc_estimate* out) {
  if (ev_status s = require(out)) return s;
  return guarded([&] {
    *out = convert(
        ev::sign_error_frequency(true_theta, se, delta, n_sims, seed, workers));
    return EV_OK;
  });
}

}  // extern "C"
