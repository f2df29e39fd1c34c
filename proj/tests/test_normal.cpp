#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "evidential/normal.hpp"
#include "oracle.hpp"

using namespace evidential;

namespace {

double rel_err(double got, double want) {
  return std::fabs(got - want) / std::fabs(want);
}

}  // namespace

TEST_CASE("pdf at pinned points") {
  CHECK(rel_err(std_normal_pdf(ZScore(0.0)), 0.398942280401432678) < 1e-15);
  CHECK(rel_err(std_normal_pdf(ZScore(1.0)), 0.241970724519143350) < 1e-15);
  CHECK(std_normal_pdf(ZScore(-1.0)) == std_normal_pdf(ZScore(1.0)));
  CHECK(std_normal_pdf(ZScore(40.0)) == 0.0);  // graceful underflow
}

TEST_CASE("cdf at pinned points") {
  struct Ref {
    double x, value;
  } refs[] = {
      {0.0, 0.5},
      {-1.0, 0.158655253931457051},
      {1.0, 0.841344746068542949},
      {-1.96, 0.0249978951482204341},
      {-0.5, 0.308537538725986896},
      {-2.5, 0.00620966532577613517},
      {1.959963984540054, 0.975},
      {-6.0, 9.865876450376981407e-10},
      {-8.0, 6.220960574271784124e-16},
  };
  for (const Ref& r : refs) {
    CAPTURE(r.x);
    CHECK(std::fabs(std_normal_cdf(ZScore(r.x)).value() - r.value) <=
          1e-15 + 1e-14 * r.value);
  }
}

// Capped at 37: below Phi(-37) ~ 5.7e-300 results go subnormal and the
// representation itself quantizes away relative accuracy.
TEST_CASE("cdf against the reference implementation across [-37, 37]") {
  std::mt19937_64 gen(101);
  std::uniform_real_distribution<double> wide(-37.0, 37.0);
  for (int i = 0; i < 20000; ++i) {
    const double x = wide(gen);
    const long double want = evidential::testing::phi_ref(x);
    const double got = std_normal_cdf(ZScore(x)).value();
    if (want <= 0.0L) continue;
    const double rel = static_cast<double>(std::fabs(got - want) / want);
    // Tail headroom: rounding the argument product x/sqrt(2) alone moves
    // erfc by about x^2 * eps, so the bound widens quadratically.
    CHECK(rel < 1e-14 + x * x * 3e-16);
  }
}

TEST_CASE("reflection identity cdf(x) + cdf(-x) = 1 is exact") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> wide(-10.0, 10.0);
  for (int i = 0; i < 5000; ++i) {
    const double x = wide(gen);
    const double sum = std_normal_cdf(ZScore(x)).value() +
                       std_normal_cdf(ZScore(-x)).value();
    CHECK(sum == 1.0);
  }
}

TEST_CASE("cdf is monotone nondecreasing") {
  double prev = 0.0;
  for (int i = 0; i <= 4000; ++i) {
    const double x = -20.0 + i * 0.01;
    const double v = std_normal_cdf(ZScore(x)).value();
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("quantile at pinned points") {
  CHECK(std_normal_quantile(Probability::from(0.5)).value() == 0.0);
  CHECK(std::fabs(std_normal_quantile(Probability::from(0.975)).value() -
                  1.95996398454005424) < 1e-13);
  CHECK(std::fabs(std_normal_quantile(Probability::from(0.1586553)).value() -
                  (-0.999999809611106242)) < 1e-13);
  CHECK(std::fabs(std_normal_quantile(Probability::from(0.84)).value() -
                  0.994457883209753168) < 1e-13);
}

TEST_CASE("quantile round-trips with cdf") {
  // x-side round trip: Q(Phi(x)) = x. Stops at x = 4 because above that the
  // rounding of p into the [1 - eps, 1] band alone costs ulp(1)/pdf(x),
  // which passes 1e-11 near x = 5 no matter how exact the inverse is.
  for (int i = 0; i <= 1200; ++i) {
    const double x = -8.0 + i * 0.01;
    const double p = std_normal_cdf(ZScore(x)).value();
    const double back = std_normal_quantile(Probability::from(p)).value();
    CHECK(std::fabs(back - x) < 1e-11);
  }
  // p-side round trip: Phi(Q(p)) = p, absolute, across the working range.
  std::mt19937_64 pgen(17);
  std::uniform_real_distribution<double> pd(1e-6, 1.0 - 1e-6);
  for (int i = 0; i < 5000; ++i) {
    const double p = pd(pgen);
    const double x = std_normal_quantile(Probability::from(p)).value();
    CHECK(std::fabs(std_normal_cdf(ZScore(x)).value() - p) <= 1e-12);
  }
  // p-side round trip: Phi(Q(p)) = p, relative in the tails.
  std::mt19937_64 gen(13);
  std::uniform_real_distribution<double> logu(-34.0, -0.7);
  for (int i = 0; i < 5000; ++i) {
    const double p = std::exp(logu(gen));
    const double x = std_normal_quantile(Probability::from(p)).value();
    const double back = std_normal_cdf(ZScore(x)).value();
    CHECK(rel_err(back, p) < 1e-13);
  }
}

TEST_CASE("quantile antisymmetry") {
  // Below p ~ 1e-3 the rounding of the literal 1-p dominates: the quantile
  // magnifies that eps/2 absolute wobble by 1/pdf, which dwarfs the
  // library's own error. The pairs here keep 1-p essentially exact.
  for (double p : {1e-3, 0.01, 0.2, 0.4, 0.499}) {
    const double lo = std_normal_quantile(Probability::from(p)).value();
    const double hi = std_normal_quantile(Probability::from(1.0 - p)).value();
    CHECK(std::fabs(lo + hi) < 1e-13 * std::max(1.0, std::fabs(lo)));
  }
}

TEST_CASE("quantile survives extreme tails") {
  const double x = std_normal_quantile(Probability::from(5e-324)).value();
  CHECK(x < -38.0);
  CHECK(std::isfinite(x));
}

TEST_CASE("domain violations are rejected") {
  CHECK_THROWS_AS(Probability::from(0.0), std::domain_error);
  CHECK_THROWS_AS(Probability::from(1.0), std::domain_error);
  CHECK_THROWS_AS(Probability::from(-0.1), std::domain_error);
  CHECK_THROWS_AS(Probability::from(1.5), std::domain_error);
  CHECK_THROWS_AS(Probability::from_closed(-0.1), std::domain_error);
  CHECK_THROWS_AS(Probability::from_closed(1.0 + 1e-9), std::domain_error);
  CHECK_THROWS_AS(ZScore(std::nan("")), std::domain_error);
  CHECK_THROWS_AS(ZScore{INFINITY}, std::domain_error);
}

TEST_CASE("binomial tail pinned values") {
  const Probability half = Probability::from(0.5);
  CHECK(binomial_tail(100, 0, half).value() == 1.0);
  CHECK(rel_err(binomial_tail(1, 1, half).value(), 0.5) < 1e-14);
  CHECK(rel_err(binomial_tail(100, 55, half).value(), 0.184100808663348118) <
        1e-13);
  CHECK(rel_err(binomial_tail(100, 50, half).value(), 0.539794618693589381) <
        1e-13);
  CHECK(rel_err(binomial_tail(100, 45, half).value(), 0.864373487963082635) <
        1e-13);
  CHECK(rel_err(binomial_tail(10, 10, Probability::from(0.9)).value(),
                0.3486784401) < 1e-14);
  // Large-n case whose individual terms underflow without log-space work.
  // The start term comes from exp(lgamma(n+1) - ...) with lgamma near 1.3e7,
  // whose last-ulp error alone is ~2e-9 after exponentiation; the loose
  // bound reflects that, not the summation.
  CHECK(rel_err(binomial_tail(1000000, 500500, half).value(),
                0.158897345681652769) < 2e-9);
}

TEST_CASE("binomial tail against the reference implementation") {
  std::mt19937_64 gen(23);
  std::uniform_int_distribution<std::uint64_t> nd(1, 400);
  std::uniform_real_distribution<double> pd(0.02, 0.98);
  for (int i = 0; i < 300; ++i) {
    const std::uint64_t n = nd(gen);
    const std::uint64_t k =
        std::uniform_int_distribution<std::uint64_t>(0, n)(gen);
    const double p = pd(gen);
    const long double want = evidential::testing::binomial_tail_ref(n, k, p);
    const double got = binomial_tail(n, k, Probability::from(p)).value();
    CAPTURE(n);
    CAPTURE(k);
    CAPTURE(p);
    CHECK(std::fabs(got - static_cast<double>(want)) <=
          1e-14 + 1e-12 * static_cast<double>(want));
  }
}

TEST_CASE("binomial tail is monotone in k and matches complement rule") {
  const Probability p = Probability::from(0.37);
  double prev = 1.0;
  for (std::uint64_t k = 0; k <= 60; ++k) {
    const double v = binomial_tail(60, k, p).value();
    CHECK(v <= prev + 1e-15);
    prev = v;
  }
  // P(X >= k; p) + P(Y >= n-k+1; 1-p) = 1 with Y counting failures.
  for (std::uint64_t k = 1; k <= 60; ++k) {
    const double a = binomial_tail(60, k, p).value();
    const double b =
        binomial_tail(60, 60 - k + 1, Probability::from(1.0 - 0.37)).value();
    CHECK(std::fabs(a + b - 1.0) < 1e-13);
  }
}

TEST_CASE("binomial tail approaches the normal tail with continuity correction") {
  // For n = 10000, p0 = 0.5: P(X >= k) ~ Phi(-(k - 0.5 - n p0)/sqrt(n p0 q0)).
  const std::uint64_t n = 10000;
  const double np = 5000.0, sd = 50.0;
  for (std::uint64_t k : {5000ULL, 5050ULL, 5100ULL, 5200ULL}) {
    const double exact = binomial_tail(n, k, Probability::from(0.5)).value();
    const double approx = detail::norm_cdf(
        -((static_cast<double>(k) - 0.5 - np) / sd));
    CHECK(std::fabs(exact - approx) < 0.01);
  }
}

TEST_CASE("binomial tail input validation") {
  CHECK_THROWS_AS(binomial_tail(0, 0, Probability::from(0.5)),
                  std::invalid_argument);
  CHECK_THROWS_AS(binomial_tail(10, 11, Probability::from(0.5)),
                  std::invalid_argument);
}
