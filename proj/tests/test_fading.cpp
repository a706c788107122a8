#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "minsir/errors.hpp"
#include "minsir/fading.hpp"
#include "minsir/quadrature.hpp"
#include "minsir/rng.hpp"
#include "minsir/special.hpp"

using minsir::InvalidParam;
using namespace minsir::fading;

namespace {

const minsir::special::TruncationControl kCtl;

double pdf(const KappaMuShadowedParams& p, double x) {
  return kmu_shadowed_pdf(p, x, kCtl);
}

std::vector<double> draw(const KappaMuShadowedParams& p, std::size_t n,
                         std::uint64_t seed) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    minsir::mc::RngStream stream(minsir::mc::trial_seed(seed, i));
    out[i] = kmu_shadowed_sample(p, stream);
  }
  return out;
}

// Total mass via the compactifying substitution x = mean t/(1-t).
double total_mass(const KappaMuShadowedParams& p) {
  const double scale = p.mean_power;
  return minsir::quadrature::integrate(
      [&](double t) {
        const double x = scale * t / (1.0 - t);
        return pdf(p, x) * scale / ((1.0 - t) * (1.0 - t));
      },
      0.0, 1.0, 1e-9, 1e-9, 4000);
}

double ks_one_sample(std::vector<double> samples,
                     const std::function<double(double)>& cdf) {
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double ks = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    ks = std::max(ks, std::fabs((i + 1) / n - f));
    ks = std::max(ks, std::fabs(f - i / n));
  }
  return ks;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double ks = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] <= b[j])
      ++i;
    else
      ++j;
    ks = std::max(ks, std::fabs(static_cast<double>(i) / a.size() -
                                static_cast<double>(j) / b.size()));
  }
  return ks;
}

}  // namespace

TEST_CASE("parameter validation") {
  KappaMuShadowedParams p{1.0, 2.0, 1.0, 1.0};
  CHECK_NOTHROW(p.validate());
  CHECK_THROWS_AS((KappaMuShadowedParams{-0.1, 2, 1, 1}.validate()),
                  InvalidParam);
  CHECK_THROWS_AS((KappaMuShadowedParams{1, 0, 1, 1}.validate()),
                  InvalidParam);
  CHECK_THROWS_AS((KappaMuShadowedParams{1, 2, 0, 1}.validate()),
                  InvalidParam);
  CHECK_THROWS_AS((KappaMuShadowedParams{1, 2, 1, 0}.validate()),
                  InvalidParam);
}

TEST_CASE("envelope scales: lambda >= theta with equality only at kappa 0") {
  for (double kappa : {0.0, 0.5, 2.0, 10.0}) {
    for (double m : {0.5, 1.0, 10.0}) {
      KappaMuShadowedParams p{kappa, 2.0, m, 1.5};
      if (kappa == 0.0)
        CHECK(p.lambda() == doctest::Approx(p.theta()).epsilon(1e-14));
      else
        CHECK(p.lambda() > p.theta());
    }
  }
}

TEST_CASE("density spot values") {
  // kappa = 0 collapses to a gamma density.
  CHECK(pdf({0, 1, 1, 1}, 0.7) ==
        doctest::Approx(std::exp(-0.7)).epsilon(1e-12));
  CHECK(pdf({0, 2, 1, 2}, 1.0) ==
        doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
  // Independently computed reference value.
  CHECK(pdf({2, 3, 1, 1}, 0.5) ==
        doctest::Approx(0.82570257217005).epsilon(1e-9));
}

TEST_CASE("density at the origin") {
  CHECK(pdf({2, 3, 1, 1}, 0.0) == 0.0);
  CHECK(pdf({2, 1.2, 1, 1}, 0.0) == 0.0);
  // mu = 1: finite limit theta^(m-1) lambda^(-m).
  CHECK(pdf({2, 1, 0.5, 1}, 0.0) ==
        doctest::Approx(1.34164078649987).epsilon(1e-9));
  CHECK_THROWS_AS(pdf({2, 0.8, 1, 1}, 0.0), InvalidParam);
  CHECK_THROWS_AS(pdf({2, 1, 1, 1}, -0.5), InvalidParam);
}

TEST_CASE("density normalizes to one across the parameter grid") {
  for (double kappa : {0.0, 2.0, 10.0}) {
    for (double mu : {1.0, 2.0, 3.0}) {
      for (double m : {0.5, 1.0, 10.0}) {
        KappaMuShadowedParams p{kappa, mu, m, 1.0};
        CHECK(total_mass(p) == doctest::Approx(1.0).epsilon(1e-6));
      }
    }
  }
}

TEST_CASE("sampler mean matches mean_power within four standard errors") {
  const std::size_t n = 100000;
  for (auto p : {KappaMuShadowedParams{0, 1, 1, 1},
                 KappaMuShadowedParams{2, 3, 1, 1},
                 KappaMuShadowedParams{10, 2, 0.5, 2.5},
                 KappaMuShadowedParams{2, 1, 10, 0.4}}) {
    const std::vector<double> s = draw(p, n, 77);
    double sum = 0.0, sq = 0.0;
    for (double v : s) {
      sum += v;
      sq += v * v;
    }
    const double mean = sum / n;
    const double sd = std::sqrt(sq / n - mean * mean);
    const double se = sd / std::sqrt(static_cast<double>(n));
    CHECK(std::fabs(mean - p.mean_power) < 4.0 * se);
  }
}

TEST_CASE("sampler reduces to gamma at kappa 0") {
  // mu = 2: F(x) = 1 - e^(-x/theta)(1 + x/theta) in closed form.
  KappaMuShadowedParams p{0, 2, 1, 1};
  const double theta = p.theta();
  const double ks = ks_one_sample(draw(p, 100000, 1234), [&](double x) {
    const double t = x / theta;
    return 1.0 - std::exp(-t) * (1.0 + t);
  });
  CHECK(ks < 0.006);
}

TEST_CASE("sampled CDF tracks the integrated density") {
  KappaMuShadowedParams p{2, 2, 1, 1};
  std::vector<double> s = draw(p, 1000000, 99);
  std::sort(s.begin(), s.end());
  double cdf = 0.0, prev = 0.0;
  double sup = 0.0;
  for (double z = 0.1; z <= 4.01; z += 0.13) {
    cdf += minsir::quadrature::integrate([&](double x) { return pdf(p, x); },
                                         prev, z, 1e-10, 1e-10, 2000);
    prev = z;
    const auto it = std::upper_bound(s.begin(), s.end(), z);
    const double emp = static_cast<double>(it - s.begin()) / s.size();
    sup = std::max(sup, std::fabs(emp - cdf));
  }
  CHECK(sup < 0.005);
}

TEST_CASE("mean_power acts as a pure scale") {
  KappaMuShadowedParams base{2, 2, 1, 1};
  KappaMuShadowedParams scaled{2, 2, 1, 3.7};
  std::vector<double> a = draw(scaled, 100000, 5);
  std::vector<double> b = draw(base, 100000, 6);
  for (double& v : b) v *= 3.7;
  CHECK(ks_two_sample(std::move(a), std::move(b)) < 0.01);
}
