#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "minsir/errors.hpp"
#include "minsir/special.hpp"

using minsir::DimensionTooLarge;
using minsir::InvalidParam;
using minsir::NonConvergent;
using minsir::OutOfConvergenceRegion;
using namespace minsir::special;

namespace {

TruncationControl deep(int cap = 500) {
  TruncationControl ctl;
  ctl.per_variable_cap = cap;
  return ctl;
}

// Defining-series partial sum in long double; valid as an oracle where the
// terms do not alternate destructively (z >= 0 or |z| small).
long double series_1f1(double a, double b, double z, int terms) {
  long double term = 1.0L, sum = 1.0L;
  for (int p = 0; p < terms; ++p) {
    term *= (static_cast<long double>(a) + p) * z /
            ((static_cast<long double>(b) + p) * (p + 1));
    sum += term;
  }
  return sum;
}

}  // namespace

TEST_CASE("truncation control validation") {
  TruncationControl ctl;
  CHECK_NOTHROW(ctl.validate());
  ctl.per_variable_cap = 0;
  CHECK_THROWS_AS(ctl.validate(), InvalidParam);
  ctl = TruncationControl{};
  ctl.rel_tol = 0.0;
  CHECK_THROWS_AS(ctl.validate(), InvalidParam);
  ctl = TruncationControl{};
  ctl.abs_tol = -1.0;
  CHECK_THROWS_AS(ctl.validate(), InvalidParam);
}

TEST_CASE("confluent series: closed-form spot values") {
  TruncationControl ctl;
  CHECK(confluent_1f1(1.0, 1.0, 1.5, ctl).value ==
        doctest::Approx(std::exp(1.5)).epsilon(1e-12));
  CHECK(confluent_1f1(1.0, 2.0, 2.0, ctl).value ==
        doctest::Approx((std::exp(2.0) - 1.0) / 2.0).epsilon(1e-12));
  CHECK(confluent_1f1(2.0, 3.0, 0.0, ctl).value == 1.0);
}

TEST_CASE("confluent series: independent oracle spots") {
  // Reference values computed with an independent arbitrary-precision
  // evaluation of the defining series.
  CHECK(confluent_1f1(2.0, 3.0, 30.0, deep()).value ==
        doctest::Approx(688683917476.03).epsilon(1e-9));
  CHECK(confluent_1f1(3.0, 1.5, 8.2, deep()).value ==
        doctest::Approx(52165.917678535).epsilon(1e-9));
  CHECK(confluent_1f1(0.5, 2.5, -40.0, deep()).value ==
        doctest::Approx(0.20755983098224).epsilon(1e-9));
}

TEST_CASE("confluent series: agreement with defining partial sums") {
  // Positive z keeps every term positive, so the partial sum is a sound
  // oracle; small negative z loses no significant digits either.
  for (double a : {0.5, 2.0, 5.0}) {
    for (double b : {1.5, 3.0}) {
      for (double z : {0.5, 3.0, 10.0, 30.0, -0.5, -2.0}) {
        const double want =
            static_cast<double>(series_1f1(a, b, z, 500));
        CHECK(confluent_1f1(a, b, z, deep()).value ==
              doctest::Approx(want).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("confluent series: error conditions") {
  TruncationControl ctl;
  CHECK_THROWS_AS(confluent_1f1(1.0, 0.0, 1.0, ctl), InvalidParam);
  CHECK_THROWS_AS(confluent_1f1(1.0, -2.0, 1.0, ctl), InvalidParam);
  CHECK_NOTHROW(confluent_1f1(1.0, -2.5, 1.0, ctl));  // non-integer b < 0
  TruncationControl tiny;
  tiny.per_variable_cap = 4;
  CHECK_THROWS_AS(confluent_1f1(2.0, 3.0, 25.0, tiny), NonConvergent);
}

TEST_CASE("confluent series: result invariant") {
  const SeriesResult r = confluent_1f1(1.5, 2.5, 7.0, deep());
  CHECK(r.converged);
  CHECK(r.tail_estimate <=
        std::max(1e-14, 1e-10 * std::fabs(r.value)));
  CHECK(r.terms_used >= 2);
}

TEST_CASE("layered series: empty argument gives exactly one") {
  TruncationControl ctl;
  const SeriesResult r =
      lauricella_ed(1, 2.0, {1.0, 2.0}, 3.0, 1.5, {0.0, 0.0}, ctl);
  CHECK(r.value == 1.0);
  CHECK(r.converged);
}

TEST_CASE("layered series: single-variable Gauss reduction") {
  // One variable in the first group collapses to 2F1(1,1;2;1/2) = 2 ln 2.
  const SeriesResult r =
      lauricella_ed(1, 1.0, {1.0}, 2.0, 1.0, {0.5}, deep());
  CHECK(r.value == doctest::Approx(1.38629436111989).epsilon(1e-9));
}

TEST_CASE("layered series: brute-force frozen values") {
  // References from an independent log-space triple sum over the raw
  // multi-index series (120 indices per variable).
  const SeriesResult r1 =
      lauricella_ed(1, 1.5, {0.7, 1.2}, 2.0, 2.5, {0.3, -0.2}, deep(200));
  CHECK(r1.value == doctest::Approx(1.03374352065948).epsilon(1e-9));

  const SeriesResult r2 =
      lauricella_ed(2, 1.5, {0.7, 1.2}, 2.0, 2.5, {0.3, -0.2}, deep(200));
  CHECK(r2.value == doctest::Approx(1.01517717871582).epsilon(1e-9));

  const SeriesResult r3 = lauricella_ed(2, 2.2, {0.9, -0.4, 1.1}, 3.0, 1.7,
                                        {0.25, 0.4, -0.15}, deep(200));
  CHECK(r3.value == doctest::Approx(0.853492825898).epsilon(1e-9));
}

TEST_CASE("layered series: argument and dimension errors") {
  TruncationControl ctl;
  CHECK_THROWS_AS(lauricella_ed(1, 1.0, {1.0}, 2.0, 1.0, {1.0}, ctl),
                  OutOfConvergenceRegion);
  CHECK_THROWS_AS(lauricella_ed(1, 1.0, {1.0}, 2.0, 1.0, {-1.2}, ctl),
                  OutOfConvergenceRegion);
  CHECK_THROWS_AS(lauricella_ed(1, 1.0, {1.0, 1.0}, 2.0, 1.0, {0.5}, ctl),
                  InvalidParam);
  CHECK_THROWS_AS(lauricella_ed(0, 1.0, {1.0}, 2.0, 1.0, {0.5}, ctl),
                  InvalidParam);
  CHECK_THROWS_AS(lauricella_ed(2, 1.0, {1.0}, 2.0, 1.0, {0.5}, ctl),
                  InvalidParam);
  CHECK_THROWS_AS(lauricella_ed(1, 1.0, {1.0}, -1.0, 1.0, {0.5}, ctl),
                  InvalidParam);
  CHECK_THROWS_AS(lauricella_ed(1, 1.0, {1.0, 1.0}, 2.0, 0.0, {0.5, 0.5}, ctl),
                  InvalidParam);
  CHECK_THROWS_AS(lauricella_ed(1, 1.0, std::vector<double>(10, 1.0), 2.0, 1.0,
                                std::vector<double>(10, 0.1), ctl),
                  DimensionTooLarge);
  CHECK_NOTHROW(lauricella_ed(1, 1.0, std::vector<double>(9, 1.0), 2.0, 1.0,
                              std::vector<double>(9, 0.1), ctl));
}

TEST_CASE("layered series: cap exhaustion reports nonconvergence") {
  TruncationControl tiny;
  tiny.per_variable_cap = 2;
  tiny.rel_tol = 1e-12;
  tiny.abs_tol = 1e-300;
  CHECK_THROWS_AS(
      lauricella_ed(1, 1.5, {0.7, 1.2}, 2.0, 2.5, {0.45, -0.4}, tiny),
      NonConvergent);
}

TEST_CASE("layered series: refinement does not move converged values") {
  const SeriesResult coarse =
      lauricella_ed(2, 1.5, {0.7, 1.2}, 2.0, 2.5, {0.3, -0.2}, deep(200));
  const SeriesResult fine =
      lauricella_ed(2, 1.5, {0.7, 1.2}, 2.0, 2.5, {0.3, -0.2}, deep(2000));
  CHECK(coarse.converged);
  CHECK(fine.converged);
  CHECK(std::fabs(coarse.value - fine.value) <=
        std::max(1e-14, 1e-10 * std::fabs(coarse.value)));
}

TEST_CASE("layered series: converged results satisfy the tail bound") {
  for (double x1 : {0.1, 0.4, 0.8}) {
    const SeriesResult r =
        lauricella_ed(1, 2.0, {1.3, 0.8}, 2.5, 1.2, {x1, -0.3}, deep(2000));
    CHECK(r.converged);
    CHECK(r.tail_estimate <= std::max(1e-14, 1e-10 * std::fabs(r.value)));
    CHECK(r.terms_used >= 1);
  }
}

TEST_CASE("regularized incomplete beta") {
  CHECK(regularized_incomplete_beta(1.0, 1.0, 0.37) ==
        doctest::Approx(0.37).epsilon(1e-14));
  CHECK(regularized_incomplete_beta(3.7, 3.7, 0.5) ==
        doctest::Approx(0.5).epsilon(1e-12));
  CHECK(regularized_incomplete_beta(2.0, 5.0, 0.0) == 0.0);
  CHECK(regularized_incomplete_beta(2.0, 5.0, 1.0) == 1.0);

  // Integer case via the binomial tail: I_p(2, 5) = P(Bin(6, p) >= 2).
  const double p = 0.3;
  const double q = 1.0 - p;
  const double want =
      1.0 - (std::pow(q, 6) + 6.0 * p * std::pow(q, 5));
  CHECK(regularized_incomplete_beta(2.0, 5.0, p) ==
        doctest::Approx(want).epsilon(1e-12));

  // Reflection identity on a small grid.
  for (double a : {0.8, 2.5}) {
    for (double b : {1.1, 4.0}) {
      for (double x : {0.2, 0.5, 0.9}) {
        CHECK(regularized_incomplete_beta(a, b, x) +
                  regularized_incomplete_beta(b, a, 1.0 - x) ==
              doctest::Approx(1.0).epsilon(1e-12));
      }
    }
  }
  CHECK_THROWS_AS(regularized_incomplete_beta(0.0, 1.0, 0.5), InvalidParam);
}
