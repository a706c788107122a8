#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "minsir/errors.hpp"
#include "minsir/evt.hpp"
#include "minsir/montecarlo.hpp"
#include "minsir/policy.hpp"
#include "minsir/rng.hpp"
#include "minsir/sir.hpp"

using minsir::InvalidParam;
using minsir::sir::SirModel;
using namespace minsir::mc;

namespace {

const SirModel kRayleigh{{0, 1, 1, 1}, {{0, 1, 1, 1}}};
const SirModel kShadowed{{2, 3, 1, 1}, {{2, 2, 1, 1}, {2, 1, 1, 1}}};
const minsir::special::TruncationControl kCtl;

McConfig cfg(std::uint64_t seed, long long trials, int chunks = 4) {
  McConfig c;
  c.seed = seed;
  c.trials = trials;
  c.parallel_chunks = chunks;
  return c;
}

}  // namespace

TEST_CASE("trial seeds are distinct and stable") {
  CHECK(trial_seed(42, 0) == trial_seed(42, 0));
  CHECK(trial_seed(42, 0) != trial_seed(42, 1));
  CHECK(trial_seed(42, 0) != trial_seed(43, 0));
}

TEST_CASE("chunking never changes the result") {
  const std::vector<double> a = simulate_sir(kShadowed, cfg(7, 2000, 1));
  for (int chunks : {3, 8, 64}) {
    const std::vector<double> b = simulate_sir(kShadowed, cfg(7, 2000, chunks));
    CHECK(a == b);  // bitwise
  }
}

TEST_CASE("chunk counts beyond the trial count are clamped") {
  std::vector<double> a = simulate_sir(kRayleigh, cfg(3, 5, 1));
  std::vector<double> b = simulate_sir(kRayleigh, cfg(3, 5, 99));
  CHECK(a == b);
}

TEST_CASE("different seeds give different draws") {
  std::vector<double> a = simulate_sir(kRayleigh, cfg(1, 100));
  std::vector<double> b = simulate_sir(kRayleigh, cfg(2, 100));
  CHECK(a != b);
}

TEST_CASE("Rayleigh SIR median is 1") {
  // P(X/Y <= 1) = 1/2 for i.i.d. unit exponentials.
  const long long n = 200000;
  std::vector<double> s = simulate_sir(kRayleigh, cfg(11, n));
  std::sort(s.begin(), s.end());
  const double p = empirical_cdf(s, 1.0);
  CHECK(std::fabs(p - 0.5) < 4.0 * std::sqrt(0.25 / n));
}

TEST_CASE("empirical CDF tracks the analytic CDF") {
  const long long n = 100000;
  std::vector<double> s = simulate_sir(kShadowed, cfg(21, n));
  std::sort(s.begin(), s.end());
  double sup = 0.0;
  for (double z = 0.05; z <= 3.0; z += 0.07) {
    const double diff = std::fabs(empirical_cdf(s, z) -
                                  minsir::sir::sir_cdf(kShadowed, z, kCtl));
    sup = std::max(sup, diff);
  }
  CHECK(sup < 0.01);
}

TEST_CASE("minimum over twenty receivers tracks the exact law") {
  const long long n = 100000;
  std::vector<double> s = simulate_min_sir(kShadowed, 20, cfg(31, n));
  std::sort(s.begin(), s.end());
  double sup = 0.0;
  for (double z = 0.01; z <= 0.8; z += 0.02) {
    const double diff =
        std::fabs(empirical_cdf(s, z) -
                  minsir::evt::exact_min_cdf(kShadowed, 20, z, kCtl));
    sup = std::max(sup, diff);
  }
  CHECK(sup < 0.01);
}

TEST_CASE("one receiver reduces to the plain SIR simulation") {
  std::vector<double> a = simulate_sir(kShadowed, cfg(5, 500));
  std::vector<double> b = simulate_min_sir(kShadowed, 1, cfg(5, 500));
  CHECK(a == b);
}

TEST_CASE("error shrinks as trials grow") {
  // The 4x run must land inside its own 4-sigma band around the truth.
  const double truth = minsir::sir::sir_cdf(kRayleigh, 0.5, kCtl);
  auto estimate = [&](long long n) {
    std::vector<double> s = simulate_sir(kRayleigh, cfg(17, n));
    std::sort(s.begin(), s.end());
    return empirical_cdf(s, 0.5);
  };
  const long long n = 50000;
  const double sigma_big = std::sqrt(truth * (1 - truth) / double(4 * n));
  CHECK(std::fabs(estimate(4 * n) - truth) < 4.0 * sigma_big);
}

TEST_CASE("outage and rate simulation") {
  minsir::policy::PowerPolicyProblem p;
  p.p_primary = std::pow(10.0, 1.4);
  p.gamma0 = std::pow(2.0, 0.03) - 1.0;
  p.p0 = 0.1;
  p.ps_max = 100.0;
  p.m_users = 10;
  p.primary_model = {{3, 2, 1, 1}, {{2, 2, 1, 1}}};

  minsir::policy::RateProblem r;
  r.l_users = 10;
  r.p_secondary = 1.0;  // ignored; power passed explicitly below
  r.p_primary = p.p_primary;
  r.secondary_model = {{2, 2, 1, 1}, {{3, 3, 1, 1}}};

  const double ps = minsir::policy::optimal_secondary_power(p, kCtl);

  SUBCASE("deterministic across chunkings") {
    OutageRateResult a = simulate_outage_and_rate(p, r, ps, cfg(9, 4000, 1));
    OutageRateResult b = simulate_outage_and_rate(p, r, ps, cfg(9, 4000, 8));
    CHECK(a.primary_outage == b.primary_outage);
    CHECK(a.secondary_outage == b.secondary_outage);
    CHECK(a.rate_per_user == b.rate_per_user);
  }

  SUBCASE("primary outage matches the exact minimum CDF") {
    const long long n = 100000;
    OutageRateResult e = simulate_outage_and_rate(p, r, ps, cfg(13, n));
    const double z = p.gamma0 * ps / p.p_primary;
    const double truth =
        minsir::evt::exact_min_cdf(p.primary_model, p.m_users, z, kCtl);
    const double sigma = std::sqrt(truth * (1 - truth) / n);
    CHECK(std::fabs(e.primary_outage - truth) < 4.0 * sigma);
  }

  SUBCASE("default secondary threshold is the policy threshold") {
    OutageRateResult a = simulate_outage_and_rate(p, r, ps, cfg(9, 2000));
    OutageRateResult b =
        simulate_outage_and_rate(p, r, ps, cfg(9, 2000), p.gamma0);
    CHECK(a.secondary_outage == b.secondary_outage);
  }

  SUBCASE("rate estimate approaches the quadrature value") {
    const long long n = 200000;
    OutageRateResult e = simulate_outage_and_rate(p, r, ps, cfg(19, n));
    minsir::policy::RateProblem rr = r;
    rr.p_secondary = ps;
    const double truth =
        minsir::policy::ergodic_multicast_rate(rr, kCtl) / r.l_users;
    CHECK(std::fabs(e.rate_per_user - truth) < 0.02);
  }
}

TEST_CASE("empirical_cdf behavior") {
  std::vector<double> empty;
  CHECK_THROWS_AS(empirical_cdf(empty, 1.0), InvalidParam);
  std::vector<double> s{1.0, 2.0, 3.0, 4.0};
  CHECK(empirical_cdf(s, 0.5) == 0.0);
  CHECK(empirical_cdf(s, 2.0) == 0.5);  // ties counted as <=
  CHECK(empirical_cdf(s, 9.0) == 1.0);
}

TEST_CASE("simulation input checks") {
  CHECK_THROWS_AS(simulate_sir(kRayleigh, cfg(1, 0)), InvalidParam);
  CHECK_THROWS_AS(simulate_min_sir(kRayleigh, 0, cfg(1, 10)), InvalidParam);
}
