#pragma once

#include <cmath>
#include <stdexcept>

namespace evidential {

enum class Direction { greater, less };

// Orientation of a likelihood ratio. favored_direction means values above 1
// support the favored (or observed) direction; null_favoring is the raw
// minimum-Bayes-factor form where small values argue against the null.
enum class Orientation { favored_direction, null_favoring };

enum class Method { marsman, mle_lr, goodman, sellke };

// Short key used in field names and CLI flags ("marsman", "mle", ...).
const char* method_key(Method m) noexcept;
// Display label ("Marsman et al (2017)", "MLE-LR", ...).
const char* method_label(Method m) noexcept;
const char* method_formula(Method m) noexcept;
const char* method_prior(Method m) noexcept;

// Probability constrained to the open unit interval. Operations whose
// contract admits the endpoints construct values via from_closed().
class Probability {
 public:
  static Probability from(double v) {
    if (!(v > 0.0 && v < 1.0))  // also rejects NaN
      throw std::domain_error("probability must lie strictly in (0,1)");
    return Probability(v);
  }
  static Probability from_closed(double v) {
    if (!(v >= 0.0 && v <= 1.0))
      throw std::domain_error("probability must lie in [0,1]");
    return Probability(v);
  }
  double value() const noexcept { return v_; }

 private:
  explicit Probability(double v) noexcept : v_(v) {}
  double v_;
};

// Standardized effect size: an effect divided by its standard error.
class ZScore {
 public:
  explicit ZScore(double v) : v_(v) {
    if (!std::isfinite(v)) throw std::domain_error("z-score must be finite");
  }
  double value() const noexcept { return v_; }

 private:
  double v_;
};

class LikelihoodRatio {
 public:
  explicit LikelihoodRatio(double v, Orientation o = Orientation::favored_direction)
      : v_(v), o_(o) {
    if (!(std::isfinite(v) && v > 0.0))
      throw std::domain_error("likelihood ratio must be positive and finite");
  }
  double value() const noexcept { return v_; }
  Orientation orientation() const noexcept { return o_; }
  LikelihoodRatio inverted() const { return LikelihoodRatio(1.0 / v_, o_); }

 private:
  double v_;
  Orientation o_;
};

// Odds form of a probability: odds = p/(1-p), p = odds/(1+odds).
class Odds {
 public:
  explicit Odds(double v) : v_(v) {
    if (!(std::isfinite(v) && v > 0.0))
      throw std::domain_error("odds must be positive and finite");
  }
  static Odds from_probability(Probability p) {
    return Odds(p.value() / (1.0 - p.value()));
  }
  Probability to_probability() const;
  double value() const noexcept { return v_; }

 private:
  double v_;
};

namespace detail {

// Nudges a mathematically-in-(0,1) quantity whose double rounding landed on
// an endpoint back into the open interval.
inline double clamp_open_unit(double v) noexcept {
  constexpr double kBelowOne = 1.0 - 0x1.0p-53;
  if (v <= 0.0) return 0x1.0p-1074;
  if (v >= 1.0) return kBelowOne;
  return v;
}

}  // namespace detail

inline Probability Odds::to_probability() const {
  return Probability::from(detail::clamp_open_unit(v_ / (1.0 + v_)));
}

}  // namespace evidential
