#pragma once

#include <cstdint>

#include "evidential/types.hpp"

namespace evidential {

struct McConfig {
  std::uint64_t seed = 0;
  std::uint64_t n_sims = 1'000'000;
  double true_theta = 0.0;
  double se = 1.0;
  double cutoff = 0.0;  // +-infinity accepted as degenerate sentinels
  // Number of threads to fan the counter range across. Purely an execution
  // detail: results are bit-identical for any value. 0 picks the hardware
  // concurrency.
  unsigned workers = 1;
};

struct McEstimate {
  double estimate;   // fraction of draws in the event, in [0,1]
  double std_error;  // sqrt(estimate*(1-estimate)/n_sims)
  std::uint64_t n_sims;
  std::uint64_t seed;
};

// Frequency of theta_hat >= cutoff with theta_hat ~ N(true_theta, se^2),
// sampled by inverse transform from the counter stream.
McEstimate estimate_exceedance(const McConfig& cfg);

struct SecantComparison {
  McEstimate fpr;  // exceedance under separation 0
  McEstimate tpr;  // exceedance under the signal separation
  double analytic_fpr;
  double analytic_tpr;
  double empirical_lr;     // t(1-t)/(f(1-f)) from the two estimates
  double empirical_lr_se;  // delta-method standard error
  double analytic_secant_lr;
  double analytic_tangent_lr;
  // True when the tangent and secant-product forms genuinely disagree at
  // this cutoff; they merge only in the vanishing-separation limit.
  bool tangent_differs;
};

// Simulates both error rates of the threshold test at the given cutoff and
// compares the empirical secant-product likelihood ratio against the
// analytic secant and tangent forms.
SecantComparison compare_secant_lr(double separation, double cutoff,
                                   std::uint64_t n_sims, std::uint64_t seed,
                                   unsigned workers = 1);

// Frequency of the point estimate landing on the far side of delta from
// true_theta (draws exactly at delta do not count).
McEstimate sign_error_frequency(double true_theta, double se, double delta,
                                std::uint64_t n_sims, std::uint64_t seed,
                                unsigned workers = 1);

}  // namespace evidential
