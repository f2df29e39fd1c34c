#pragma once

#include <cstddef>
#include <span>

#include "evidential/types.hpp"

namespace evidential {

// Binormal shift model: noise scores are N(0,1), signal scores N(delta,1).
class RocModel {
 public:
  explicit RocModel(double separation) : separation_(separation) {
    if (!(std::isfinite(separation) && separation >= 0.0))
      throw std::domain_error("roc separation must be finite and >= 0");
  }
  double separation() const noexcept { return separation_; }

 private:
  double separation_;
};

struct RocPoint {
  Probability fpr;  // closed interval: corners appear at extreme cutoffs
  Probability tpr;
  double cutoff;
};

// fpr = 1 - Phi(c), tpr = 1 - Phi(c - delta) for the cutoff c.
RocPoint roc_point(const RocModel& model, double cutoff);

// Secant slopes of the ROC curve through its corners, and the tangent slope
// at the point itself. Secant forms require an interior point: fpr and tpr
// within [1e-12, 1 - 1e-12].
LikelihoodRatio positive_secant_lr(const RocPoint& pt);  // tpr/fpr
LikelihoodRatio negative_secant_lr(const RocPoint& pt);  // (1-tpr)/(1-fpr)
LikelihoodRatio secant_product_lr(const RocPoint& pt);   // (tpr-tpr^2)/(fpr-fpr^2)
LikelihoodRatio tangent_lr(const RocModel& model, double cutoff);

struct ConvexityReport {
  bool monotone_increasing = false;
  bool slopes_strictly_decreasing = false;
  std::size_t points = 0;
  double max_slope_increase = 0.0;      // largest chord-slope rise; > 0 is a violation
  double max_tangent_secant_gap = 0.0;  // diagnostic: |tangent - secant product|
  bool proper() const noexcept {
    return monotone_increasing && slopes_strictly_decreasing;
  }
};

// Samples the curve on a strictly ascending cutoff grid (>= 3 points) and
// checks the proper-curve geometry: tpr monotone in fpr and chord slopes
// strictly decreasing left to right. The tangent-vs-secant-product gap is
// reported as a diagnostic, never asserted to vanish: the two coincide only
// in the vanishing-separation limit.
ConvexityReport convexity_check(const RocModel& model,
                                std::span<const double> cutoffs);

}  // namespace evidential
