#include "evidential/normal.hpp"

#include <algorithm>
#include <cmath>

namespace evidential {
namespace detail {
namespace {

// Coefficients from W. J. Cody's CALERF (SPECFUN), rational Chebyshev
// approximations for erf/erfc; see Cody, Math. Comp. 23 (1969) 631-637.
// Relative error below ~6e-15 across the double range.
constexpr double kErfA[5] = {3.16112374387056560e00, 1.13864154151050156e02,
                             3.77485237685302021e02, 3.20937758913846947e03,
                             1.85777706184603153e-1};
constexpr double kErfB[4] = {2.36012909523441209e01, 2.44024637934444173e02,
                             1.28261652607737228e03, 2.84423683343917062e03};
constexpr double kErfC[9] = {5.64188496988670089e-1, 8.88314979438837594e00,
                             6.61191906371416295e01, 2.98635138197400131e02,
                             8.81952221241769090e02, 1.71204761263407058e03,
                             2.05107837782607147e03, 1.23033935479799725e03,
                             2.15311535474403846e-8};
constexpr double kErfD[8] = {1.57449261107098347e01, 1.17693950891312499e02,
                             5.37181101862009858e02, 1.62138957456669019e03,
                             3.29079923573345963e03, 4.36261909014324716e03,
                             3.43936767414372164e03, 1.23033935480374942e03};
constexpr double kErfP[6] = {3.05326634961232344e-1, 3.60344899949804439e-1,
                             1.25781726111229246e-1, 1.60837851487422766e-2,
                             6.58749161529837803e-4, 1.63153871373020978e-2};
constexpr double kErfQ[5] = {2.56852019228982242e00, 1.87295284992346047e00,
                             5.27905102951428412e-1, 6.05183413124413191e-2,
                             2.33520497626869185e-3};

constexpr double kInvSqrtPi = 5.6418958354775628695e-1;   // 1/sqrt(pi)
constexpr double kInvSqrt2 = 7.0710678118654752440e-1;    // 1/sqrt(2)
constexpr double kInvSqrt2Pi = 3.9894228040143267794e-1;  // 1/sqrt(2*pi)

// exp(-y^2) computed as exp(-ysq^2)*exp(-(y-ysq)(y+ysq)) with ysq a 1/16
// grid truncation of y, so the squared argument is exact (Cody's trick).
double exp_neg_square(double y) noexcept {
  const double ysq = std::floor(y * 16.0) / 16.0;
  const double del = (y - ysq) * (y + ysq);
  return std::exp(-ysq * ysq) * std::exp(-del);
}

}  // namespace

double erfc_cody(double x) {
  const double y = std::fabs(x);
  if (y <= 0.46875) {
    const double ysq = y > 1.11e-16 ? y * y : 0.0;
    double xnum = kErfA[4] * ysq;
    double xden = ysq;
    for (int i = 0; i < 3; ++i) {
      xnum = (xnum + kErfA[i]) * ysq;
      xden = (xden + kErfB[i]) * ysq;
    }
    const double erf_val = x * (xnum + kErfA[3]) / (xden + kErfB[3]);
    return 1.0 - erf_val;
  }
  double result;
  if (y <= 4.0) {
    double xnum = kErfC[8] * y;
    double xden = y;
    for (int i = 0; i < 7; ++i) {
      xnum = (xnum + kErfC[i]) * y;
      xden = (xden + kErfD[i]) * y;
    }
    result = (xnum + kErfC[7]) / (xden + kErfD[7]);
    result *= exp_neg_square(y);
  } else {
    const double ysq = 1.0 / (y * y);
    double xnum = kErfP[5] * ysq;
    double xden = ysq;
    for (int i = 0; i < 4; ++i) {
      xnum = (xnum + kErfP[i]) * ysq;
      xden = (xden + kErfQ[i]) * ysq;
    }
    result = ysq * (xnum + kErfP[4]) / (xden + kErfQ[4]);
    result = (kInvSqrtPi - result) / y;
    result *= exp_neg_square(y);
  }
  // Reflection erfc(-y) = 2 - erfc(y) keeps cdf(x) + cdf(-x) = 1 exact.
  return x < 0.0 ? 2.0 - result : result;
}

double norm_pdf(double x) noexcept {
  return kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

double norm_cdf(double x) noexcept { return 0.5 * erfc_cody(-x * kInvSqrt2); }

namespace {

// Acklam's rational approximation to the normal quantile (2003 algorithm),
// relative error < 1.15e-9; refined below by two Newton steps to full
// double precision. Only the lower half is needed after symmetry reduction.
constexpr double kAcklamA[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                -2.759285104469687e+02, 1.383577518672690e+02,
                                -3.066479806614716e+01, 2.506628277459239e+00};
constexpr double kAcklamB[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                -1.556989798598866e+02, 6.680131188771972e+01,
                                -1.328068155288572e+01};
constexpr double kAcklamC[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                -2.400758277161838e+00, -2.549732539343734e+00,
                                4.374664141464968e+00,  2.938163982698783e+00};
constexpr double kAcklamD[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                                2.445134137142996e+00, 3.754408661907416e+00};
constexpr double kAcklamPLow = 0.02425;

double acklam_estimate(double p) noexcept {  // pre: 0 < p <= 0.5
  if (p < kAcklamPLow) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((kAcklamC[0] * q + kAcklamC[1]) * q + kAcklamC[2]) * q +
              kAcklamC[3]) *
                 q +
             kAcklamC[4]) *
                q +
            kAcklamC[5]) /
           ((((kAcklamD[0] * q + kAcklamD[1]) * q + kAcklamD[2]) * q +
             kAcklamD[3]) *
                q +
            1.0);
  }
  const double q = p - 0.5;
  const double r = q * q;
  return (((((kAcklamA[0] * r + kAcklamA[1]) * r + kAcklamA[2]) * r +
            kAcklamA[3]) *
               r +
           kAcklamA[4]) *
              r +
          kAcklamA[5]) *
         q /
         (((((kAcklamB[0] * r + kAcklamB[1]) * r + kAcklamB[2]) * r +
            kAcklamB[3]) *
               r +
           kAcklamB[4]) *
              r +
          1.0);
}

}  // namespace

double norm_quantile(double p) noexcept {
  // Symmetric reduction: refine in the lower tail where cdf(x) - pm is well
  // conditioned, then restore the sign.
  const bool upper = p > 0.5;
  const double pm = upper ? 1.0 - p : p;
  double x = acklam_estimate(pm);
  for (int i = 0; i < 2; ++i) {
    const double d = norm_pdf(x);
    if (d <= 0.0) break;  // beyond the double tail; keep the estimate
    x -= (norm_cdf(x) - pm) / d;
  }
  return upper ? -x : x;
}

}  // namespace detail

double std_normal_pdf(ZScore x) { return detail::norm_pdf(x.value()); }

Probability std_normal_cdf(ZScore x) {
  return Probability::from_closed(detail::norm_cdf(x.value()));
}

ZScore std_normal_quantile(Probability p) {
  return ZScore(detail::norm_quantile(p.value()));
}

Probability binomial_tail(std::uint64_t n, std::uint64_t k, Probability p0) {
  if (n < 1) throw std::invalid_argument("binomial_tail: n must be >= 1");
  if (k > n) throw std::invalid_argument("binomial_tail: k must not exceed n");
  if (k == 0) return Probability::from_closed(1.0);

  const double p = p0.value();
  const double log_p = std::log(p);
  const double log_q = std::log1p(-p);
  const double nd = static_cast<double>(n);

  // Terms rise up to the mode floor((n+1)p) and fall beyond it, so summing
  // outward from max(k, mode) adds strictly decreasing contributions.
  const double mode_d = std::floor((nd + 1.0) * p);
  const std::uint64_t mode =
      mode_d >= nd ? n : static_cast<std::uint64_t>(mode_d);
  const std::uint64_t peak = std::max(k, mode);

  const auto log_term = [&](std::uint64_t i) {
    const double id = static_cast<double>(i);
    return std::lgamma(nd + 1.0) - std::lgamma(id + 1.0) -
           std::lgamma(nd - id + 1.0) + id * log_p + (nd - id) * log_q;
  };
  const double log_peak = log_term(peak);

  // Relative term values via the ratio recurrence; both directions decrease,
  // so a strict cutoff leaves at most n * 1e-25 of the mass behind.
  constexpr double kCut = 1e-25;
  double sum = 1.0;
  double t = 1.0;
  for (std::uint64_t i = peak; i < n; ++i) {
    t *= (static_cast<double>(n - i) / static_cast<double>(i + 1)) *
         (p / (1.0 - p));
    sum += t;
    if (t < sum * kCut) break;
  }
  t = 1.0;
  for (std::uint64_t i = peak; i > k; --i) {
    t *= (static_cast<double>(i) / static_cast<double>(n - i + 1)) *
         ((1.0 - p) / p);
    sum += t;
    if (t < sum * kCut) break;
  }

  const double tail = std::exp(log_peak + std::log(sum));
  return Probability::from_closed(std::min(tail, 1.0));
}

}  // namespace evidential
