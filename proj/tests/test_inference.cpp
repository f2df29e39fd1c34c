#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "evidential/inference.hpp"
#include "evidential/normal.hpp"

using namespace evidential;

namespace {

double rel_err(double got, double want) {
  return std::fabs(got - want) / std::fabs(want);
}

TrialSpec make_trial(double theta, double se, double delta) {
  TrialSpec t;
  t.theta_obs = theta;
  t.se = se;
  t.delta = delta;
  return t;
}

const CalibrationRow& row_of(const EvidentialReport& r, Method m) {
  for (const CalibrationRow& row : r.rows)
    if (row.method == m) return row;
  throw std::logic_error("method row missing");
}

}  // namespace

TEST_CASE("z_statistic arithmetic") {
  CHECK(z_statistic(make_trial(0.7, 2.0, 0.7)).value() == 0.0);
  CHECK(z_statistic(make_trial(1.96, 1.0, 0.0)).value() == 1.96);
  CHECK(z_statistic(make_trial(3.0, 2.0, 1.0)).value() == 1.0);
  CHECK(z_statistic(make_trial(-1.0, 0.5, 1.0)).value() == -4.0);
}

TEST_CASE("trial validation") {
  CHECK_THROWS_AS(z_statistic(make_trial(1.0, 0.0, 0.0)), std::domain_error);
  CHECK_THROWS_AS(z_statistic(make_trial(1.0, -1.0, 0.0)), std::domain_error);
  CHECK_THROWS_AS(z_statistic(make_trial(NAN, 1.0, 0.0)), std::domain_error);
  CHECK_THROWS_AS(z_statistic(make_trial(0.0, 1.0, INFINITY)),
                  std::domain_error);
}

TEST_CASE("one- and two-sided p pinned values") {
  CHECK(one_sided_p(make_trial(0.0, 1.0, 0.0)).value() == 0.5);
  CHECK(rel_err(one_sided_p(make_trial(1.96, 1.0, 0.0)).value(),
                0.0249978951482204341) < 1e-14);
  CHECK(rel_err(one_sided_p(make_trial(1.0, 1.0, 0.0)).value(),
                0.158655253931457051) < 1e-14);
  CHECK(two_sided_p(make_trial(0.0, 1.0, 0.0)).value() == 1.0);
  CHECK(rel_err(two_sided_p(make_trial(1.0, 1.0, 0.0)).value(),
                0.317310507862914103) < 1e-14);
  // The conventional 1.96 determines p = 0.05 only to four digits; the
  // exact quantile nails it.
  CHECK(rel_err(two_sided_p(make_trial(1.96, 1.0, 0.0)).value(),
                0.0499957902964408682) < 1e-14);
  CHECK(std::fabs(
            two_sided_p(make_trial(1.95996398454005424, 1.0, 0.0)).value() -
            0.05) < 1e-15);
}

TEST_CASE("one-sided p never exceeds one half and is sign-symmetric") {
  std::mt19937_64 gen(59);
  std::uniform_real_distribution<double> zd(-6.0, 6.0);
  for (int i = 0; i < 2000; ++i) {
    const double z = zd(gen);
    const double p = one_sided_p(make_trial(z, 1.0, 0.0)).value();
    const double mirrored = one_sided_p(make_trial(-z, 1.0, 0.0)).value();
    CHECK(p <= 0.5);
    CHECK(p == mirrored);
    // Exact doubling below the cap.
    const double p2 = two_sided_p(make_trial(z, 1.0, 0.0)).value();
    if (2.0 * p <= 1.0) CHECK(p2 == 2.0 * p);
  }
}

TEST_CASE("evidential report on the one-SE trial") {
  TrialSpec t = make_trial(1.0, 1.0, 0.0);
  t.favored = Direction::greater;
  const EvidentialReport r = evidential_report(t, Odds(1.0));

  CHECK(r.z.value() == 1.0);
  CHECK(r.observed_matches_favored);
  CHECK_FALSE(r.oriented_to_observed);
  CHECK(rel_err(row_of(r, Method::mle_lr).lr.value(), 1.87288694810345358) <
        1e-13);
  CHECK(rel_err(r.posterior_favored.value(), 0.651918081684295472) < 1e-13);
  CHECK(rel_err(r.sign_error_prob.value(), 0.348081918315704528) < 1e-13);
  // Complement identity holds exactly when orientation matches.
  CHECK(std::fabs(r.sign_error_prob.value() +
                  r.posterior_favored.value() - 1.0) <= 1e-16);
  CHECK(r.observed_power.value() == 0.5);
  CHECK(rel_err(r.sellke_raw, 0.79397684103290852) < 1e-13);
  CHECK(r.sellke_valid);
}

TEST_CASE("orientation inversion when the observation opposes the favored side") {
  TrialSpec up = make_trial(1.0, 1.0, 0.0);
  up.favored = Direction::greater;
  TrialSpec down = make_trial(-1.0, 1.0, 0.0);
  down.favored = Direction::greater;

  const EvidentialReport ru = evidential_report(up, Odds(1.0));
  const EvidentialReport rd = evidential_report(down, Odds(1.0));

  CHECK_FALSE(rd.observed_matches_favored);
  const double lr_up = row_of(ru, Method::mle_lr).lr.value();
  const double lr_down = row_of(rd, Method::mle_lr).lr.value();
  CHECK(rel_err(lr_down, 1.0 / lr_up) < 1e-12);
  CHECK(rel_err(lr_down, 0.533935057325607733) < 1e-12);
  CHECK(std::fabs(ru.posterior_favored.value() + rd.posterior_favored.value() -
                  1.0) < 1e-12);
  // Sign error on the inverted side: the observed direction is 'less', its
  // posterior is the up-trial's posterior, so risk = 1 - that.
  CHECK(rel_err(rd.sign_error_prob.value(),
                1.0 - ru.posterior_favored.value()) < 1e-12);
  // All four rows flip below 1.
  for (const CalibrationRow& row : rd.rows) CHECK(row.lr.value() < 1.0);
}

TEST_CASE("favored direction 'less' mirrors 'greater'") {
  TrialSpec t = make_trial(-2.0, 1.0, 0.0);
  t.favored = Direction::less;
  const EvidentialReport r = evidential_report(t, Odds(1.0));
  CHECK(r.observed_matches_favored);
  CHECK(row_of(r, Method::mle_lr).lr.value() > 1.0);
}

TEST_CASE("no favored direction orients to the observed side") {
  const EvidentialReport up = evidential_report(make_trial(1.5, 1.0, 0.0),
                                                Odds(1.0));
  const EvidentialReport down = evidential_report(make_trial(-1.5, 1.0, 0.0),
                                                  Odds(1.0));
  CHECK(up.oriented_to_observed);
  CHECK(up.observed_matches_favored);
  CHECK(down.oriented_to_observed);
  // Same magnitude of evidence either way.
  CHECK(row_of(up, Method::mle_lr).lr.value() ==
        row_of(down, Method::mle_lr).lr.value());
}

TEST_CASE("z = 0 is valid input, not an error") {
  TrialSpec t = make_trial(0.3, 1.0, 0.3);
  t.favored = Direction::greater;
  const EvidentialReport r = evidential_report(t, Odds(3.0));
  CHECK(r.z.value() == 0.0);
  CHECK(r.observed_matches_favored);  // dividing value counts as favored side
  for (const CalibrationRow& row : r.rows) {
    if (row.method == Method::sellke) {
      CHECK_FALSE(row.calibration_valid);
      CHECK(rel_err(row.lr.value(), 1.06147569084608598) < 1e-13);
    } else {
      CHECK(row.lr.value() == 1.0);
    }
  }
  // LR 1 leaves the prior untouched: posterior = 3/(1+3).
  CHECK(rel_err(r.posterior_favored.value(), 0.75) < 1e-15);
  CHECK(r.observed_power.value() == 0.5);
}

TEST_CASE("prior odds propagate through the posterior") {
  TrialSpec t = make_trial(1.0, 1.0, 0.0);
  t.favored = Direction::greater;
  const EvidentialReport r = evidential_report(t, Odds(4.0));
  // posterior odds = 4 * 1.8728869...
  const double want = 4.0 * 1.87288694810345358;
  CHECK(rel_err(r.posterior_favored.value(), want / (1.0 + want)) < 1e-13);
}

TEST_CASE("observed power equals one half on a fine grid") {
  for (int i = 1; i <= 499; ++i) {
    const double p = i * 0.001;
    if (p >= 0.5) break;
    CHECK(observed_power(Probability::from(p)).value() == 0.5);
  }
  CHECK_THROWS_AS(observed_power(Probability::from(0.5)), std::domain_error);
  CHECK_THROWS_AS(observed_power(Probability::from(0.7)), std::domain_error);
}

TEST_CASE("power pinned values and floor property") {
  CHECK(rel_err(power(Probability::from(0.3), ZScore(0.0)).value(), 0.3) <
        1e-13);
  CHECK(std::fabs(power(Probability::from(0.025), ZScore(1.96)).value() -
                  0.5) < 1e-4);
  CHECK(rel_err(power(Probability::from(0.025), ZScore(2.80)).value(),
                0.799555903298112199) < 1e-13);
  // power >= alpha whenever the true effect is nonnegative.
  for (double alpha : {0.001, 0.01, 0.05, 0.2, 0.5, 0.9}) {
    for (double z : {0.0, 0.1, 0.5, 1.0, 2.0, 4.0}) {
      CHECK(power(Probability::from(alpha), ZScore(z)).value() >=
            alpha - 1e-13);
    }
  }
}

TEST_CASE("scale invariance of the whole report") {
  TrialSpec base = make_trial(1.3, 0.6, 0.4);
  base.favored = Direction::greater;
  const EvidentialReport r0 = evidential_report(base, Odds(2.0));
  for (double scale : {1e-7, 0.03, 3.7, 1e9}) {
    TrialSpec t = make_trial(1.3 * scale, 0.6 * scale, 0.4 * scale);
    t.favored = Direction::greater;
    const EvidentialReport r = evidential_report(t, Odds(2.0));
    CHECK(rel_err(r.z.value(), r0.z.value()) < 1e-12);
    CHECK(rel_err(r.p_one_sided.value(), r0.p_one_sided.value()) < 1e-12);
    CHECK(rel_err(row_of(r, Method::mle_lr).lr.value(),
                  row_of(r0, Method::mle_lr).lr.value()) < 1e-12);
  }
}

TEST_CASE("poll report reproduces the 55-of-100 example") {
  PollSpec poll;
  poll.n = 100;
  poll.k = 55;
  const PollReport pr = poll_report(poll, Odds(1.0));

  CHECK(std::fabs(pr.trial.se - 0.05) < 1e-15);
  CHECK(pr.trial.favored.has_value());
  CHECK(*pr.trial.favored == Direction::greater);
  CHECK(std::fabs(pr.report.z.value() - 1.0) < 1e-12);

  const double posts[4] = {0.8413, 0.6519, 0.6225, 0.5574};
  const Method order[4] = {Method::marsman, Method::mle_lr, Method::goodman,
                           Method::sellke};
  for (int i = 0; i < 4; ++i) {
    CAPTURE(i);
    CHECK(std::fabs(row_of(pr.report, order[i]).posterior.value() -
                    posts[i]) < 1e-3);
  }
  // Exact binomial annex vs the normal approximation the report runs on.
  CHECK(rel_err(pr.exact_binomial_tail.value(), 0.184100808663348118) <
        1e-12);
  CHECK(std::fabs(pr.report.p_one_sided.value() - 0.158655253931457051) <
        1e-12);
}

TEST_CASE("poll edge cases") {
  PollSpec even;
  even.n = 100;
  even.k = 50;
  const PollReport pe = poll_report(even, Odds(1.0));
  CHECK(pe.report.z.value() == 0.0);
  CHECK(pe.report.posterior_favored.value() == 0.5);
  CHECK(rel_err(pe.exact_binomial_tail.value(), 0.539794618693589381) <
        1e-12);

  PollSpec trailing;
  trailing.n = 100;
  trailing.k = 45;
  const PollReport pt = poll_report(trailing, Odds(1.0));
  CHECK_FALSE(pt.report.observed_matches_favored);
  CHECK(row_of(pt.report, Method::mle_lr).lr.value() < 1.0);
  // Sign error tracks the observed direction (z = -1 here), so it matches
  // the one-SE value even though the favored side lost.
  CHECK(rel_err(pt.report.sign_error_prob.value(), 0.348081918315704528) <
        1e-12);
  CHECK(pt.report.posterior_favored.value() < 0.5);
  CHECK(rel_err(pt.exact_binomial_tail.value(), 0.864373487963082635) <
        1e-12);

  PollSpec sweep;
  sweep.n = 20;
  sweep.k = 20;
  const PollReport ps = poll_report(sweep, Odds(1.0));
  CHECK(ps.trial.theta_obs == 1.0);
  CHECK(ps.report.observed_matches_favored);

  PollSpec bad;
  bad.n = 0;
  bad.k = 0;
  CHECK_THROWS_AS(poll_report(bad, Odds(1.0)), std::domain_error);
  bad.n = 10;
  bad.k = 11;
  CHECK_THROWS_AS(poll_report(bad, Odds(1.0)), std::domain_error);
}
