#include "evidential/roc.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "evidential/normal.hpp"

namespace evidential {
namespace {

constexpr double kInteriorMargin = 1e-12;

bool interior(double v) noexcept {
  return v >= kInteriorMargin && v <= 1.0 - kInteriorMargin;
}

void require_interior(const RocPoint& pt) {
  if (!interior(pt.fpr.value()) || !interior(pt.tpr.value()))
    throw std::domain_error(
        "secant likelihood ratios need an interior ROC point");
}

}  // namespace

RocPoint roc_point(const RocModel& model, double cutoff) {
  if (!std::isfinite(cutoff))
    throw std::domain_error("roc cutoff must be finite");
  // 1 - Phi(c) computed as Phi(-c): exact by the erfc reflection, no
  // cancellation in the small-fpr tail.
  const double fpr = detail::norm_cdf(-cutoff);
  const double tpr = detail::norm_cdf(model.separation() - cutoff);
  return RocPoint{Probability::from_closed(fpr), Probability::from_closed(tpr),
                  cutoff};
}

LikelihoodRatio positive_secant_lr(const RocPoint& pt) {
  require_interior(pt);
  return LikelihoodRatio(pt.tpr.value() / pt.fpr.value());
}

LikelihoodRatio negative_secant_lr(const RocPoint& pt) {
  require_interior(pt);
  return LikelihoodRatio((1.0 - pt.tpr.value()) / (1.0 - pt.fpr.value()));
}

LikelihoodRatio secant_product_lr(const RocPoint& pt) {
  require_interior(pt);
  const double t = pt.tpr.value();
  const double f = pt.fpr.value();
  // t*(1-t) / (f*(1-f)) keeps full precision near both axes, where the
  // literal (t - t^2) form would cancel.
  return LikelihoodRatio((t * (1.0 - t)) / (f * (1.0 - f)));
}

LikelihoodRatio tangent_lr(const RocModel& model, double cutoff) {
  if (!std::isfinite(cutoff))
    throw std::domain_error("roc cutoff must be finite");
  const double d = model.separation();
  // Density ratio phi(c - delta)/phi(c) = exp(delta*c - delta^2/2).
  return LikelihoodRatio(std::exp(d * cutoff - 0.5 * d * d));
}

ConvexityReport convexity_check(const RocModel& model,
                                std::span<const double> cutoffs) {
  if (cutoffs.size() < 3)
    throw std::invalid_argument("convexity_check: need at least 3 cutoffs");
  for (std::size_t i = 1; i < cutoffs.size(); ++i) {
    if (!(cutoffs[i] > cutoffs[i - 1]))
      throw std::invalid_argument(
          "convexity_check: cutoffs must be strictly ascending");
  }

  // Walk the curve in fpr order: descending cutoffs.
  const std::size_t n = cutoffs.size();
  std::vector<RocPoint> pts;
  pts.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    pts.push_back(roc_point(model, cutoffs[n - 1 - i]));

  ConvexityReport report;
  report.points = n;
  report.monotone_increasing = true;
  for (std::size_t i = 1; i < n; ++i) {
    if (pts[i].tpr.value() < pts[i - 1].tpr.value())
      report.monotone_increasing = false;
  }

  // Chord slopes between consecutive grid points, defined where fpr moves.
  std::vector<double> slopes;
  slopes.reserve(n - 1);
  for (std::size_t i = 1; i < n; ++i) {
    const double df = pts[i].fpr.value() - pts[i - 1].fpr.value();
    if (df > 0.0)
      slopes.push_back((pts[i].tpr.value() - pts[i - 1].tpr.value()) / df);
  }
  report.slopes_strictly_decreasing = slopes.size() >= 2;
  for (std::size_t i = 1; i < slopes.size(); ++i) {
    const double rise = slopes[i] - slopes[i - 1];
    if (rise >= 0.0) report.slopes_strictly_decreasing = false;
    report.max_slope_increase = std::max(report.max_slope_increase, rise);
  }

  for (const RocPoint& pt : pts) {
    if (!interior(pt.fpr.value()) || !interior(pt.tpr.value())) continue;
    const double gap = std::fabs(tangent_lr(model, pt.cutoff).value() -
                                 secant_product_lr(pt).value());
    report.max_tangent_secant_gap =
        std::max(report.max_tangent_secant_gap, gap);
  }
  return report;
}

}  // namespace evidential
