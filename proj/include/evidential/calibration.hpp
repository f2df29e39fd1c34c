#pragma once

#include <string>
#include <vector>

#include "evidential/normal.hpp"
#include "evidential/types.hpp"

namespace evidential {

// 0.25/(p - p^2): likelihood ratio of the maximum-likelihood alternative
// against the sign-mirrored effect. Always >= 1, equal to 1 only at p = 0.5.
LikelihoodRatio mle_lr(Probability p);

// exp(z^2/2): mean-vs-null likelihood ratio at the observed effect.
LikelihoodRatio goodman_lr(ZScore z);

// (1-p)/p: posterior odds of the observed direction under a uniform prior
// over effect signs and a diffuse effect-size prior.
LikelihoodRatio marsman_lr(Probability p);

// Minimum Bayes factor bound -e p ln p, valid for p < 1/e.
struct SellkeResult {
  double raw;    // formula value, null-favoring form
  double bound;  // raw where the calibration is valid, otherwise 1
  bool valid;    // p < 1/e

  // Favored-direction forms: 1/bound and 1/raw. Tables display 1/raw along
  // with the validity flag, so out-of-range values stay visible.
  LikelihoodRatio oriented() const;
  LikelihoodRatio oriented_raw() const;
};
SellkeResult sellke_mbf(Probability p);

// posterior = prior*lr / (1 + prior*lr), clamped into (0,1) when the odds
// product overflows double range.
Probability posterior_from_lr(LikelihoodRatio lr, Odds prior);

struct CalibrationRow {
  Method method;
  LikelihoodRatio lr;  // favored-direction form
  Probability posterior;
  std::string prior_description;
  bool calibration_valid;  // false only for sellke rows with p >= 1/e
};

// One-sided p from a standardized effect: p = Phi(-|z|).
Probability p_from_z(ZScore z);

// The four calibrations evaluated at p = Phi(-|z|), sorted by descending
// likelihood ratio. The sellke sort key uses the validity-bounded value, and
// ties keep the marsman, mle, goodman, sellke order.
std::vector<CalibrationRow> calibration_table(ZScore z, Odds prior);

}  // namespace evidential
