#pragma once

#include <vector>

#include "minsir/fading.hpp"
#include "minsir/special.hpp"

namespace minsir::sir {

// SIR gamma = X / sum_j Y_j with a kappa-mu shadowed desired link X and
// N >= 1 independent, non-identical kappa-mu shadowed interferers Y_j.
struct SirModel {
  fading::KappaMuShadowedParams signal;
  std::vector<fading::KappaMuShadowedParams> interferers;

  void validate() const;  // throws InvalidParam
};

struct GammaApprox {
  double shape = 1.0;
  double scale = 1.0;
};

// Exact CDF F(z), evaluated through the reformulated Lauricella series whose
// arguments stay inside |x| < 1 for every z (the distinguished interferer is
// the minimum-theta one, chosen internally, so the result is permutation
// invariant by construction). The series depth is enlarged beyond
// ctl.per_variable_cap when the geometric rate bound requires it.
double sir_cdf(const SirModel& model, double z,
               const special::TruncationControl& ctl);

// Same quantity through the complementary-CDF series (1 - K1 z^... E_D).
// Kept as an independently derived cross-check of sir_cdf.
double sir_cdf_ccdf_form(const SirModel& model, double z,
                         const special::TruncationControl& ctl);

// Exact density f(z), z > 0.
double sir_pdf(const SirModel& model, double z,
               const special::TruncationControl& ctl);

// Numerical inverse: the z* with |F(z*) - p| <= 1e-10, found by geometric
// bracketing from z = 1 followed by bisection to interval width 1e-12.
// Throws BracketFailure if doubling/halving cannot enclose p.
double sir_cdf_inverse(const SirModel& model, double p,
                       const special::TruncationControl& ctl);

// Moment-matched gamma surrogate: shape = m mu (1+kappa)^2 /
// (m + mu kappa^2 + 2 m kappa), scale = mean_power / shape.
GammaApprox gamma_moment_match(const fading::KappaMuShadowedParams& params);

// Beta-prime CDF of the ratio of the two gamma surrogates (single
// interferer): I_t(psi1, phi1) at t = y/(1+y), y = z phi2/psi2.
double sir_cdf_betaprime(const GammaApprox& signal_approx,
                         const GammaApprox& interferer_approx, double z);

}  // namespace minsir::sir
