#pragma once

#include "minsir/rng.hpp"
#include "minsir/special.hpp"

namespace minsir::fading {

// One kappa-mu shadowed fading link. kappa is the dominant-to-scattered
// power ratio, mu the number of multipath clusters, m the Nakagami-type
// shadowing severity of the dominant component, mean_power = E[X].
struct KappaMuShadowedParams {
  double kappa = 0.0;
  double mu = 1.0;
  double m = 1.0;
  double mean_power = 1.0;

  void validate() const;  // throws InvalidParam

  // theta = mean/(mu(1+kappa)); lambda = (mu kappa + m) mean/(mu(1+kappa)m).
  // lambda >= theta always, with equality iff kappa = 0.
  double theta() const { return mean_power / (mu * (1.0 + kappa)); }
  double lambda() const {
    return (mu * kappa + m) * mean_power / (mu * (1.0 + kappa) * m);
  }
};

// Density f_X(x) = x^(mu-1) / (theta^(mu-m) lambda^m Gamma(mu)) e^(-x/theta)
//                  * 1F1(m; mu; x/theta - x/lambda).
// At x = 0: returns 0 for mu > 1, the finite formula value for mu = 1, and
// throws InvalidParam for mu < 1 (the x^(mu-1) singularity diverges).
double kmu_shadowed_pdf(const KappaMuShadowedParams& params, double x,
                        const special::TruncationControl& ctl);

// One draw with the law above: s ~ Gamma(m, 1/m), p ~ Poisson(mu kappa s),
// X ~ Gamma(mu + p, theta). Supports any real mu, m > 0.
double kmu_shadowed_sample(const KappaMuShadowedParams& params,
                           mc::RngStream& stream);

}  // namespace minsir::fading
