#include "evidential/inference.hpp"

#include <algorithm>
#include <cmath>

#include "evidential/normal.hpp"

namespace evidential {
namespace {

void validate(const TrialSpec& trial) {
  if (!std::isfinite(trial.theta_obs))
    throw std::domain_error("trial: theta_obs must be finite");
  if (!std::isfinite(trial.delta))
    throw std::domain_error("trial: delta must be finite");
  if (!(std::isfinite(trial.se) && trial.se > 0.0))
    throw std::domain_error("trial: se must be positive and finite");
}

Probability power_impl(double zcrit, double effect) {
  return Probability::from(
      detail::clamp_open_unit(1.0 - detail::norm_cdf(zcrit - effect)));
}

// alpha = p makes the critical value equal the observed effect, so the
// subtraction in power_impl vanishes identically and the result is 1/2.
Probability observed_power_impl(double p) {
  const double z_obs = -detail::norm_quantile(p);
  return power_impl(z_obs, z_obs);
}

}  // namespace

ZScore z_statistic(const TrialSpec& trial) {
  validate(trial);
  return ZScore((trial.theta_obs - trial.delta) / trial.se);
}

Probability one_sided_p(const TrialSpec& trial) {
  return p_from_z(z_statistic(trial));
}

Probability two_sided_p(const TrialSpec& trial) {
  return Probability::from_closed(
      std::min(1.0, 2.0 * one_sided_p(trial).value()));
}

Probability power(Probability alpha, ZScore effect) {
  const double zcrit = -detail::norm_quantile(alpha.value());
  return power_impl(zcrit, effect.value());
}

Probability observed_power(Probability p) {
  if (!(p.value() < 0.5))
    throw std::domain_error("observed_power: p must lie in (0, 0.5)");
  return observed_power_impl(p.value());
}

EvidentialReport evidential_report(const TrialSpec& trial, Odds prior) {
  const ZScore z = z_statistic(trial);
  const Probability p1 = one_sided_p(trial);
  const Probability p2 = two_sided_p(trial);

  const bool oriented_to_observed = !trial.favored.has_value();
  bool matches = true;
  if (trial.favored && z.value() != 0.0) {
    const Direction observed =
        z.value() < 0.0 ? Direction::less : Direction::greater;
    matches = observed == *trial.favored;
  }

  auto rows = calibration_table(z, prior);
  if (!matches) {
    // The observation points away from the favored direction: every LR
    // flips below 1 and the posteriors follow.
    for (CalibrationRow& r : rows) {
      r.lr = r.lr.inverted();
      r.posterior = posterior_from_lr(r.lr, prior);
    }
  }

  double posterior_favored = 0.0;
  for (const CalibrationRow& r : rows) {
    if (r.method == Method::mle_lr) posterior_favored = r.posterior.value();
  }

  // Posterior of the observed direction uses the same mle calibration but
  // with the prior odds flipped when the observation opposes the favored
  // side; its complement is the sign-error risk.
  const Odds prior_observed(matches ? prior.value() : 1.0 / prior.value());
  const Probability posterior_observed =
      posterior_from_lr(mle_lr(p1), prior_observed);

  const SellkeResult sellke = sellke_mbf(p1);

  return EvidentialReport{
      z,
      p1,
      p2,
      matches,
      oriented_to_observed,
      std::move(rows),
      Probability::from(posterior_favored),
      Probability::from(
          detail::clamp_open_unit(1.0 - posterior_observed.value())),
      observed_power_impl(p1.value()),
      sellke.raw,
      sellke.valid};
}

PollReport poll_report(const PollSpec& poll, Odds prior) {
  if (poll.n < 1) throw std::domain_error("poll: n must be >= 1");
  if (poll.k > poll.n) throw std::domain_error("poll: k must not exceed n");
  const double p0 = poll.p0.value();

  TrialSpec trial;
  trial.theta_obs = static_cast<double>(poll.k) / static_cast<double>(poll.n);
  trial.delta = p0;
  // Null-anchored standard error: sqrt(p0 q0 / n). With p0 = 1/2, a share
  // one SE above half gives z = 1 exactly.
  trial.se = std::sqrt(p0 * (1.0 - p0) / static_cast<double>(poll.n));
  trial.favored = Direction::greater;
  trial.n = poll.n;

  return PollReport{poll, trial, evidential_report(trial, prior),
                    binomial_tail(poll.n, poll.k, poll.p0)};
}

}  // namespace evidential
