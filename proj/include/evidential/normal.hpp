#pragma once

#include <cstdint>

#include "evidential/types.hpp"

namespace evidential {

// Standard normal density at x.
double std_normal_pdf(ZScore x);

// Standard normal CDF. Absolute error stays below ~1e-15; far tails
// underflow gracefully to 0 and 1, hence the closed-interval result.
Probability std_normal_cdf(ZScore x);

// Inverse standard normal CDF, accurate to full double precision.
ZScore std_normal_quantile(Probability p);

// Upper tail P(X >= k) for X ~ Binomial(n, p0), summed in log space from
// the largest term outward so distant tails neither underflow nor lose
// precision to cancellation. k = 0 returns exactly 1.
Probability binomial_tail(std::uint64_t n, std::uint64_t k, Probability p0);

namespace detail {

// Raw-double kernels behind the typed wrappers; used directly where the
// wrapper's validation would be redundant (hot loops, internal callers).
double erfc_cody(double x);
double norm_pdf(double x) noexcept;
double norm_cdf(double x) noexcept;
double norm_quantile(double p) noexcept;  // pre: 0 < p < 1

}  // namespace detail

}  // namespace evidential
