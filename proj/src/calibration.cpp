#include "evidential/calibration.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace evidential {

const char* method_key(Method m) noexcept {
  switch (m) {
    case Method::marsman: return "marsman";
    case Method::mle_lr: return "mle";
    case Method::goodman: return "goodman";
    case Method::sellke: return "sellke";
  }
  return "?";
}

const char* method_label(Method m) noexcept {
  switch (m) {
    case Method::marsman: return "Marsman";
    case Method::mle_lr: return "MLE-LR";
    case Method::goodman: return "Goodman";
    case Method::sellke: return "Sellke";
  }
  return "?";
}

const char* method_formula(Method m) noexcept {
  switch (m) {
    case Method::marsman: return "(1-P)/P";
    case Method::mle_lr: return "0.25/(P-P^2)";
    case Method::goodman: return "exp(Z^2/2)";
    case Method::sellke: return "1/(-e P ln P)";
  }
  return "?";
}

const char* method_prior(Method m) noexcept {
  switch (m) {
    case Method::marsman: return "uniform over effect signs, diffuse effect size";
    case Method::mle_lr: return "maximum-likelihood effect vs its sign mirror";
    case Method::goodman: return "observed effect vs zero effect";
    case Method::sellke: return "least favorable prior on the alternative";
  }
  return "?";
}

LikelihoodRatio mle_lr(Probability p) {
  const double v = p.value();
  // p*(1-p), not p - p^2: no cancellation near either endpoint.
  return LikelihoodRatio(0.25 / (v * (1.0 - v)));
}

LikelihoodRatio goodman_lr(ZScore z) {
  const double v = z.value();
  return LikelihoodRatio(std::exp(0.5 * v * v));
}

LikelihoodRatio marsman_lr(Probability p) {
  const double v = p.value();
  return LikelihoodRatio((1.0 - v) / v);
}

LikelihoodRatio SellkeResult::oriented() const {
  return LikelihoodRatio(1.0 / bound);
}

LikelihoodRatio SellkeResult::oriented_raw() const {
  return LikelihoodRatio(1.0 / raw);
}

SellkeResult sellke_mbf(Probability p) {
  const double v = p.value();
  const double raw = -std::numbers::e * v * std::log(v);
  const bool valid = v < 1.0 / std::numbers::e;
  return SellkeResult{raw, valid ? raw : 1.0, valid};
}

Probability posterior_from_lr(LikelihoodRatio lr, Odds prior) {
  const double po = prior.value() * lr.value();
  if (!std::isfinite(po))
    return Probability::from(detail::clamp_open_unit(1.0));
  return Probability::from(detail::clamp_open_unit(po / (1.0 + po)));
}

Probability p_from_z(ZScore z) {
  return Probability::from(
      detail::clamp_open_unit(detail::norm_cdf(-std::fabs(z.value()))));
}

std::vector<CalibrationRow> calibration_table(ZScore z, Odds prior) {
  const Probability p = p_from_z(z);
  const SellkeResult sellke = sellke_mbf(p);

  const auto row = [&](Method m, LikelihoodRatio lr, bool valid) {
    return CalibrationRow{m, lr, posterior_from_lr(lr, prior),
                          method_prior(m), valid};
  };
  std::vector<CalibrationRow> rows;
  rows.reserve(4);
  rows.push_back(row(Method::marsman, marsman_lr(p), true));
  rows.push_back(row(Method::mle_lr, mle_lr(p), true));
  rows.push_back(row(Method::goodman, goodman_lr(z), true));
  rows.push_back(row(Method::sellke, sellke.oriented_raw(), sellke.valid));

  const auto sort_key = [&](const CalibrationRow& r) {
    // Out-of-validity sellke values sort by the bounded form (1/1 = 1) so
    // they sink to the bottom instead of ranking on an invalid number.
    if (r.method == Method::sellke) return sellke.oriented().value();
    return r.lr.value();
  };
  std::stable_sort(rows.begin(), rows.end(),
                   [&](const CalibrationRow& a, const CalibrationRow& b) {
                     return sort_key(a) > sort_key(b);
                   });
  return rows;
}

}  // namespace evidential
