#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "evidential/calibration.hpp"
#include "evidential/types.hpp"

namespace evidential {

struct TrialSpec {
  double theta_obs = 0.0;
  double se = 1.0;
  double delta = 0.0;  // dividing value the effect is tested against
  // Direction favored before seeing the data. When absent, reports orient
  // their likelihood ratios toward the observed direction.
  std::optional<Direction> favored;
  std::optional<std::uint64_t> n;
};

ZScore z_statistic(const TrialSpec& trial);         // (theta_obs - delta)/se
Probability one_sided_p(const TrialSpec& trial);    // Phi(-|z|)
Probability two_sided_p(const TrialSpec& trial);    // min(1, 2*Phi(-|z|)), closed

struct EvidentialReport {
  ZScore z;
  Probability p_one_sided;
  Probability p_two_sided;
  bool observed_matches_favored;  // true when favored was unspecified
  bool oriented_to_observed;      // true when favored was unspecified
  // Calibration rows oriented toward the favored direction (observed
  // direction when none was favored); LRs below 1 mean evidence against.
  std::vector<CalibrationRow> rows;
  Probability posterior_favored;  // mle calibration, prior odds applied
  Probability sign_error_prob;    // 1 - posterior of the observed direction
  Probability observed_power;     // power at alpha = p against effect z: 1/2
  double sellke_raw;              // -e p ln p at the one-sided p
  bool sellke_valid;              // p < 1/e
};

// prior: odds on the favored direction (on the observed one when no favored
// direction is given).
EvidentialReport evidential_report(const TrialSpec& trial, Odds prior);

// Power of the one-sided level-alpha test against a standardized effect:
// 1 - Phi(Phi^-1(1-alpha) - effect).
Probability power(Probability alpha, ZScore effect);

// Power evaluated at alpha = p against the effect that produced p. Equals
// one half identically; computed, not hardcoded, so the identity is checked
// by construction. Requires p in (0, 0.5).
Probability observed_power(Probability p);

struct PollSpec {
  std::uint64_t n = 0;
  std::uint64_t k = 0;
  Probability p0 = Probability::from(0.5);  // dividing share
};

struct PollReport {
  PollSpec poll;
  TrialSpec trial;  // derived: theta = k/n, delta = p0, se anchored at p0
  EvidentialReport report;
  Probability exact_binomial_tail;  // P(X >= k), X ~ Binomial(n, p0)
};

// Normal-approximation evidential report for a k-of-n poll against the
// dividing share p0, favored direction "greater". The standard error uses
// the null share p0, so a lead of one SE above 50 percent gives z = 1
// exactly. The exact binomial tail is attached for comparison.
PollReport poll_report(const PollSpec& poll, Odds prior);

}  // namespace evidential
