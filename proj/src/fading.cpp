#include "minsir/fading.hpp"

#include <cmath>
#include <random>
#include <string>

#include "minsir/errors.hpp"
#include "minsir/special.hpp"

namespace minsir::fading {

void KappaMuShadowedParams::validate() const {
  if (!(kappa >= 0.0))
    throw InvalidParam("fading: kappa must be nonnegative");
  if (!(mu > 0.0)) throw InvalidParam("fading: mu must be positive");
  if (!(m > 0.0)) throw InvalidParam("fading: m must be positive");
  if (!(mean_power > 0.0))
    throw InvalidParam("fading: mean_power must be positive");
}

namespace {

// log 1F1(a,b,z) for large positive z via the exponential asymptotic
// expansion Gamma(b)/Gamma(a) e^z z^(a-b) sum_j (b-a)_j (1-a)_j / (j! z^j).
// For integer a >= 1 the sum terminates and the result is exact up to an
// e^(-z)-relative remainder; otherwise it truncates at the smallest term.
double log_confluent_large(double a, double b, double z) {
  const bool terminates = a == std::floor(a) && a >= 1.0;
  const int j_stop = terminates ? static_cast<int>(a) - 1 : 200;
  double term = 1.0, sum = 1.0, prev = 1.0;
  for (int j = 0; j < j_stop; ++j) {
    term *= (b - a + j) * (1.0 - a + j) / ((j + 1.0) * z);
    if (!terminates && std::fabs(term) >= std::fabs(prev))
      break;  // divergent regime of the asymptotic series reached
    sum += term;
    prev = term;
    if (std::fabs(term) < 1e-16 * std::fabs(sum)) break;
  }
  return std::lgamma(b) - std::lgamma(a) + z + (a - b) * std::log(z) +
         std::log(sum);
}

// Smallest argument where the truncated expansion above is reliable.
double large_arg_threshold(double a, double b) {
  if (a == std::floor(a) && a >= 1.0) return 60.0;
  return std::max(60.0, 3.0 * (std::fabs(b - a) + 1.0) * (std::fabs(a) + 1.0));
}

}  // namespace

double kmu_shadowed_pdf(const KappaMuShadowedParams& params, double x,
                        const special::TruncationControl& ctl) {
  params.validate();
  if (x < 0.0) throw InvalidParam("fading pdf: x must be nonnegative");
  const double th = params.theta();
  const double lam = params.lambda();

  if (x == 0.0) {
    if (params.mu > 1.0) return 0.0;
    if (params.mu < 1.0)
      throw InvalidParam("fading pdf: density diverges at x = 0 for mu < 1");
    // mu == 1: the power-law factor is flat and the series equals 1.
    return std::exp((params.m - 1.0) * std::log(th) -
                    params.m * std::log(lam));
  }

  const double log_front = (params.mu - 1.0) * std::log(x) - x / th -
                           (params.mu - params.m) * std::log(th) -
                           params.m * std::log(lam) - std::lgamma(params.mu);
  const double arg = x / th - x / lam;
  if (arg > large_arg_threshold(params.m, params.mu))
    return std::exp(log_front +
                    log_confluent_large(params.m, params.mu, arg));

  // The confluent factor needs roughly |arg| terms before its terms decay;
  // widen the caller's budget so moderate arguments stay evaluable.
  special::TruncationControl inner = ctl;
  inner.per_variable_cap = std::max<int>(
      ctl.per_variable_cap, static_cast<int>(4.0 * arg) + 64);
  const special::SeriesResult f11 =
      special::confluent_1f1(params.m, params.mu, arg, inner);
  return std::exp(log_front) * f11.value;
}

double kmu_shadowed_sample(const KappaMuShadowedParams& params,
                           mc::RngStream& stream) {
  params.validate();
  // Gamma-mixed Poisson weight on the dominant-component order, then a
  // conditional gamma envelope: marginalizing reproduces the density.
  std::gamma_distribution<double> shadow(params.m, 1.0 / params.m);
  const double s = shadow(stream.engine);
  const double rate = params.mu * params.kappa * s;
  long p = 0;
  if (rate > 0.0) {
    std::poisson_distribution<long> count(rate);
    p = count(stream.engine);
  }
  std::gamma_distribution<double> envelope(params.mu + static_cast<double>(p),
                                           params.theta());
  return envelope(stream.engine);
}

}  // namespace minsir::fading
