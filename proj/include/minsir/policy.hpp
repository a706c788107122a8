#pragma once

#include <string>

#include "minsir/evt.hpp"

namespace minsir::policy {

// Underlay power policy inputs: the secondary transmitter picks the largest
// power keeping the worst of m_users primary receivers' asymptotic outage at
// threshold gamma0 below p0, capped at ps_max. primary_model is the
// PU-Tx -> PU-Rx link paired with the SU-Tx -> PU-Rx interference link
// (exactly one interferer).
struct PowerPolicyProblem {
  double p_primary = 1.0;  // P_p, linear
  double gamma0 = 0.021;   // minimum acceptable primary SIR
  double p0 = 0.1;         // maximum tolerable outage, in (0,1)
  double ps_max = 100.0;   // transmit power cap, linear
  int m_users = 10;        // number of primary receivers
  sir::SirModel primary_model;

  void validate() const;  // throws InvalidParam
};

// Ergodic multicast rate inputs: l_users secondary receivers, each seeing
// the SU-Tx -> SU-Rx link against PU-Tx -> SU-Rx interference (one
// interferer), with transmit powers p_secondary and p_primary.
struct RateProblem {
  int l_users = 2;
  double p_secondary = 1.0;
  double p_primary = 1.0;
  sir::SirModel secondary_model;

  void validate() const;  // throws InvalidParam
};

// Asymptotic outage of the worst primary receiver at secondary power p_s:
// WeibullMinCdf(gamma0 p_s / P_p) with the law of min over m_users SIRs.
double asymptotic_outage(const PowerPolicyProblem& problem, double p_s,
                         const special::TruncationControl& ctl);

// Largest power meeting the outage constraint, before the cap:
// P_s+ = (P_p a_M / gamma0) (-ln(1-p0))^(1/mu_p).
double secondary_power_uncapped(const PowerPolicyProblem& problem,
                                const special::TruncationControl& ctl);

// min(P_s+, ps_max).
double optimal_secondary_power(const PowerPolicyProblem& problem,
                               const special::TruncationControl& ctl);

// Total asymptotic ergodic multicast rate over l_users receivers (bits/s/Hz):
//   L * Int_0^inf log2(1 + (P_s/P_p) x) WeibullMinPdf(x; a_L, mu_s) dx,
// computed after the substitution x = a_L(-ln u)^(1/mu_s) on u in (0,1).
double ergodic_multicast_rate(const RateProblem& problem,
                              const special::TruncationControl& ctl);

enum class Direction { kIncrease, kDecrease };

// Perturbs one named parameter upward (x1.5 for reals, +10 for user counts)
// and reports whether the uncapped secondary power moves in the expected
// direction. Parameter names: "p_primary", "p0", "gamma0", "m_users",
// "signal.kappa", "signal.mu", "signal.m", "interferer.kappa",
// "interferer.mu", "interferer.m". An explicit new_value overrides the
// default perturbation.
bool observation_monotonicity_check(const PowerPolicyProblem& base,
                                    const std::string& parameter_name,
                                    Direction expected,
                                    const special::TruncationControl& ctl,
                                    double new_value = -1.0);

// Same, with the per-receiver multicast rate as the metric. Parameter names
// as above plus "l_users" and "p_secondary" (model fields address the
// secondary-side links).
bool observation_monotonicity_check(const RateProblem& base,
                                    const std::string& parameter_name,
                                    Direction expected,
                                    const special::TruncationControl& ctl,
                                    double new_value = -1.0);

// Composed check: the parameter perturbs the policy side, the metric is the
// per-receiver multicast rate evaluated at p_secondary =
// optimal_secondary_power of the perturbed policy with the rate problem's
// own interference power held at its baseline (the rate grows with the
// granted power).
bool observation_monotonicity_check(const PowerPolicyProblem& base_policy,
                                    const RateProblem& base_rate,
                                    const std::string& parameter_name,
                                    Direction expected,
                                    const special::TruncationControl& ctl,
                                    double new_value = -1.0);

}  // namespace minsir::policy
