#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <set>

#include "doctest.h"
#include "evidential/montecarlo.hpp"
#include "evidential/normal.hpp"
#include "evidential/rng.hpp"

using namespace evidential;

namespace {

McConfig config(std::uint64_t seed, double theta, double se, double cutoff,
                std::uint64_t n_sims = 1'000'000, unsigned workers = 1) {
  McConfig cfg;
  cfg.seed = seed;
  cfg.n_sims = n_sims;
  cfg.true_theta = theta;
  cfg.se = se;
  cfg.cutoff = cutoff;
  cfg.workers = workers;
  return cfg;
}

}  // namespace

TEST_CASE("counter rng basics") {
  const CounterRng rng(42, 0);
  // Pure function of the index.
  CHECK(rng.bits(0) == CounterRng(42, 0).bits(0));
  CHECK(rng.bits(0) != rng.bits(1));
  CHECK(CounterRng(42, 0).bits(5) != CounterRng(42, 1).bits(5));
  CHECK(CounterRng(42, 0).bits(5) != CounterRng(43, 0).bits(5));

  double sum = 0.0;
  std::set<std::uint64_t> seen;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform(i);
    CHECK(u > 0.0);
    CHECK(u < 1.0);
    sum += u;
    seen.insert(rng.bits(i));
  }
  // No collisions among 1e5 64-bit outputs, mean near 1/2 (4 sigma).
  CHECK(seen.size() == static_cast<std::size_t>(n));
  CHECK(std::fabs(sum / n - 0.5) < 4.0 / std::sqrt(12.0 * n));
}

TEST_CASE("exceedance estimates are bit-identical across worker counts") {
  const McEstimate base = estimate_exceedance(config(7, 0.0, 1.0, 1.0));
  // Frozen anchor: 158531 hits out of 1e6 for this seed. Any change to the
  // counter stream, the mixer or the quantile path lands here first.
  CHECK(base.estimate == 0.158531);
  for (unsigned workers : {2u, 3u, 8u, 0u}) {
    const McEstimate other =
        estimate_exceedance(config(7, 0.0, 1.0, 1.0, 1'000'000, workers));
    CHECK(other.estimate == base.estimate);
    CHECK(other.std_error == base.std_error);
  }
  // And across repeated runs.
  const McEstimate again = estimate_exceedance(config(7, 0.0, 1.0, 1.0));
  CHECK(again.estimate == base.estimate);
}

TEST_CASE("different seeds give different estimates") {
  const McEstimate a = estimate_exceedance(config(1, 0.0, 1.0, 1.0));
  const McEstimate b = estimate_exceedance(config(2, 0.0, 1.0, 1.0));
  CHECK(a.estimate != b.estimate);
  CHECK(a.seed == 1);
  CHECK(b.seed == 2);
}

TEST_CASE("exceedance matches the analytic tail within four sigma") {
  struct Case {
    double theta, se, cutoff, want;
  } cases[] = {
      {0.0, 1.0, 1.0, 0.158655253931457051},
      {1.0, 1.0, 1.0, 0.5},
      {0.0, 1.0, 1.96, 0.0249978951482204341},
      {0.0, 2.0, 1.0, 0.308537538725986896},
      {3.0, 0.5, 2.0, 0.977249868051820793},
  };
  std::uint64_t seed = 11;
  for (const Case& c : cases) {
    const McEstimate est =
        estimate_exceedance(config(seed++, c.theta, c.se, c.cutoff));
    CAPTURE(c.cutoff);
    CHECK(std::fabs(est.estimate - c.want) < 4.0 * est.std_error);
    // Reported standard error honours its own definition.
    CHECK(est.std_error ==
          std::sqrt(est.estimate * (1.0 - est.estimate) /
                    static_cast<double>(est.n_sims)));
  }
}

TEST_CASE("infinite cutoffs degenerate cleanly") {
  const McEstimate all =
      estimate_exceedance(config(3, 0.0, 1.0, -INFINITY, 10'000));
  CHECK(all.estimate == 1.0);
  CHECK(all.std_error == 0.0);
  const McEstimate none =
      estimate_exceedance(config(3, 0.0, 1.0, INFINITY, 10'000));
  CHECK(none.estimate == 0.0);
}

TEST_CASE("secant comparison at separation 1, cutoff 1") {
  const SecantComparison r = compare_secant_lr(1.0, 1.0, 1'000'000, 19, 3);
  CHECK(std::fabs(r.analytic_fpr - 0.158655253931457051) < 1e-14);
  CHECK(std::fabs(r.analytic_tpr - 0.5) < 1e-14);
  CHECK(std::fabs(r.analytic_secant_lr - 1.87288694810345358) < 1e-12);
  CHECK(std::fabs(r.analytic_tangent_lr - 1.64872127070012815) < 1e-14);
  CHECK(r.tangent_differs);
  CHECK(std::fabs(r.fpr.estimate - r.analytic_fpr) < 4.0 * r.fpr.std_error);
  CHECK(std::fabs(r.tpr.estimate - r.analytic_tpr) < 4.0 * r.tpr.std_error);
  CHECK(std::fabs(r.empirical_lr - r.analytic_secant_lr) <
        4.0 * r.empirical_lr_se);
  // The empirical estimate must discriminate the two analytic forms: the
  // gap between them dwarfs the Monte Carlo uncertainty at 1e6 draws.
  CHECK(std::fabs(r.analytic_secant_lr - r.analytic_tangent_lr) >
        10.0 * r.empirical_lr_se);
}

TEST_CASE("secant comparison collapses on zero separation") {
  const SecantComparison r = compare_secant_lr(0.0, 0.7, 200'000, 23, 2);
  CHECK(r.analytic_secant_lr == 1.0);
  CHECK(r.analytic_tangent_lr == 1.0);
  CHECK_FALSE(r.tangent_differs);
  CHECK(std::fabs(r.empirical_lr - 1.0) < 4.0 * r.empirical_lr_se);
}

TEST_CASE("secant comparison streams are independent but reproducible") {
  const SecantComparison a = compare_secant_lr(1.0, 1.0, 100'000, 29);
  const SecantComparison b = compare_secant_lr(1.0, 1.0, 100'000, 29, 4);
  CHECK(a.fpr.estimate == b.fpr.estimate);
  CHECK(a.tpr.estimate == b.tpr.estimate);
  // Catches the degenerate bug of running both rates on one stream with the
  // separation dropped.
  CHECK(a.fpr.estimate != a.tpr.estimate);
}

TEST_CASE("sign error frequency matches the analytic mirror tail") {
  // True effect one SE above the dividing value: crossing probability
  // Phi(-1); two SEs: Phi(-2).
  const McEstimate one_se = sign_error_frequency(1.0, 1.0, 0.0, 1'000'000, 37);
  CHECK(std::fabs(one_se.estimate - 0.158655253931457051) <
        4.0 * one_se.std_error);
  const McEstimate two_se = sign_error_frequency(0.5, 0.25, 0.0, 1'000'000, 41);
  CHECK(std::fabs(two_se.estimate - 0.0227501319481792072) <
        4.0 * two_se.std_error);
  // Below the dividing value, errors are crossings upward.
  const McEstimate below = sign_error_frequency(-1.0, 1.0, 0.0, 1'000'000, 43);
  CHECK(std::fabs(below.estimate - 0.158655253931457051) <
        4.0 * below.std_error);
}

TEST_CASE("monte carlo input validation") {
  CHECK_THROWS_AS(estimate_exceedance(config(1, 0.0, 0.0, 1.0)),
                  std::domain_error);
  CHECK_THROWS_AS(estimate_exceedance(config(1, 0.0, -2.0, 1.0)),
                  std::domain_error);
  CHECK_THROWS_AS(estimate_exceedance(config(1, NAN, 1.0, 1.0)),
                  std::domain_error);
  CHECK_THROWS_AS(estimate_exceedance(config(1, 0.0, 1.0, NAN)),
                  std::domain_error);
  CHECK_THROWS_AS(estimate_exceedance(config(1, 0.0, 1.0, 1.0, 0)),
                  std::domain_error);
  CHECK_THROWS_AS(compare_secant_lr(-1.0, 1.0, 100, 1), std::domain_error);
  CHECK_THROWS_AS(compare_secant_lr(1.0, INFINITY, 100, 1),
                  std::domain_error);
  CHECK_THROWS_AS(sign_error_frequency(0.5, 1.0, 0.5, 100, 1),
                  std::domain_error);
}
