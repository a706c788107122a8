#include "minsir/policy.hpp"

#include <cmath>
#include <string>

#include "minsir/errors.hpp"
#include "minsir/quadrature.hpp"

namespace minsir::policy {

namespace {

// Applies the named perturbation to a one-interferer model.
void apply_to_model(sir::SirModel& model, const std::string& name,
                    double factor, double new_value) {
  double* target = nullptr;
  if (name == "signal.kappa") target = &model.signal.kappa;
  else if (name == "signal.mu") target = &model.signal.mu;
  else if (name == "signal.m") target = &model.signal.m;
  else if (name == "interferer.kappa") target = &model.interferers[0].kappa;
  else if (name == "interferer.mu") target = &model.interferers[0].mu;
  else if (name == "interferer.m") target = &model.interferers[0].m;
  else
    throw InvalidParam("monotonicity check: unknown parameter '" + name + "'");
  *target = new_value >= 0.0 ? new_value : *target * factor;
}

PowerPolicyProblem perturb(const PowerPolicyProblem& base,
                           const std::string& name, double new_value) {
  PowerPolicyProblem out = base;
  if (name == "p_primary")
    out.p_primary = new_value >= 0.0 ? new_value : out.p_primary * 1.5;
  else if (name == "p0")
    out.p0 = new_value >= 0.0 ? new_value : out.p0 * 1.5;
  else if (name == "gamma0")
    out.gamma0 = new_value >= 0.0 ? new_value : out.gamma0 * 1.5;
  else if (name == "m_users")
    out.m_users = new_value >= 0.0 ? static_cast<int>(new_value)
                                   : out.m_users + 10;
  else
    apply_to_model(out.primary_model, name, 1.5, new_value);
  out.validate();
  return out;
}

RateProblem perturb(const RateProblem& base, const std::string& name,
                    double new_value) {
  RateProblem out = base;
  if (name == "l_users")
    out.l_users = new_value >= 0.0 ? static_cast<int>(new_value)
                                   : out.l_users + 10;
  else if (name == "p_secondary")
    out.p_secondary = new_value >= 0.0 ? new_value : out.p_secondary * 1.5;
  else if (name == "p_primary")
    out.p_primary = new_value >= 0.0 ? new_value : out.p_primary * 1.5;
  else
    apply_to_model(out.secondary_model, name, 1.5, new_value);
  out.validate();
  return out;
}

bool moved_as_expected(double before, double after, Direction expected) {
  return expected == Direction::kIncrease ? after > before : after < before;
}

}  // namespace

void PowerPolicyProblem::validate() const {
  if (!(p_primary > 0.0))
    throw InvalidParam("policy: p_primary must be positive");
  if (!(gamma0 > 0.0)) throw InvalidParam("policy: gamma0 must be positive");
  if (!(p0 > 0.0 && p0 < 1.0))
    throw InvalidParam("policy: p0 must lie strictly in (0, 1)");
  if (!(ps_max > 0.0)) throw InvalidParam("policy: ps_max must be positive");
  if (m_users < 2)
    throw InvalidParam("policy: m_users must be >= 2 for the minimum law");
  primary_model.validate();
  if (primary_model.interferers.size() != 1)
    throw InvalidParam("policy: primary_model needs exactly one interferer");
}

void RateProblem::validate() const {
  if (l_users < 2) throw InvalidParam("rate: l_users must be >= 2");
  if (!(p_secondary > 0.0))
    throw InvalidParam("rate: p_secondary must be positive");
  if (!(p_primary > 0.0))
    throw InvalidParam("rate: p_primary must be positive");
  secondary_model.validate();
  if (secondary_model.interferers.size() != 1)
    throw InvalidParam("rate: secondary_model needs exactly one interferer");
}

double asymptotic_outage(const PowerPolicyProblem& problem, double p_s,
                         const special::TruncationControl& ctl) {
  problem.validate();
  if (!(p_s > 0.0)) throw InvalidParam("asymptotic_outage: p_s must be > 0");
  const evt::WeibullMinLaw law =
      evt::asymptotic_min_law(problem.primary_model, problem.m_users, ctl);
  return evt::weibull_min_cdf(law, problem.gamma0 * p_s / problem.p_primary);
}

double secondary_power_uncapped(const PowerPolicyProblem& problem,
                                const special::TruncationControl& ctl) {
  problem.validate();
  const evt::WeibullMinLaw law =
      evt::asymptotic_min_law(problem.primary_model, problem.m_users, ctl);
  const double mu_p = problem.primary_model.signal.mu;
  return problem.p_primary * law.scale / problem.gamma0 *
         std::pow(-std::log1p(-problem.p0), 1.0 / mu_p);
}

double optimal_secondary_power(const PowerPolicyProblem& problem,
                               const special::TruncationControl& ctl) {
  return std::min(secondary_power_uncapped(problem, ctl), problem.ps_max);
}

double ergodic_multicast_rate(const RateProblem& problem,
                              const special::TruncationControl& ctl) {
  problem.validate();
  const evt::WeibullMinLaw law =
      evt::asymptotic_min_law(problem.secondary_model, problem.l_users, ctl);
  const double c = problem.p_secondary / problem.p_primary;
  const double inv_shape = 1.0 / law.shape;
  // u = exp(-(x/a)^shape) maps the Weibull expectation onto (0,1) with a
  // flat weight; log2(1+.) grows only log-log near u = 0.
  const auto integrand = [&](double u) {
    return std::log2(1.0 + c * law.scale * std::pow(-std::log(u), inv_shape));
  };
  const double per_user =
      quadrature::integrate(integrand, 0.0, 1.0, 1e-9, 1e-9, 4000);
  return static_cast<double>(problem.l_users) * per_user;
}

bool observation_monotonicity_check(const PowerPolicyProblem& base,
                                    const std::string& parameter_name,
                                    Direction expected,
                                    const special::TruncationControl& ctl,
                                    double new_value) {
  const double before = secondary_power_uncapped(base, ctl);
  const double after = secondary_power_uncapped(
      perturb(base, parameter_name, new_value), ctl);
  return moved_as_expected(before, after, expected);
}

bool observation_monotonicity_check(const RateProblem& base,
                                    const std::string& parameter_name,
                                    Direction expected,
                                    const special::TruncationControl& ctl,
                                    double new_value) {
  const auto per_user = [&](const RateProblem& r) {
    return ergodic_multicast_rate(r, ctl) / static_cast<double>(r.l_users);
  };
  const double before = per_user(base);
  const double after = per_user(perturb(base, parameter_name, new_value));
  return moved_as_expected(before, after, expected);
}

bool observation_monotonicity_check(const PowerPolicyProblem& base_policy,
                                    const RateProblem& base_rate,
                                    const std::string& parameter_name,
                                    Direction expected,
                                    const special::TruncationControl& ctl,
                                    double new_value) {
  const auto rate_at = [&](const PowerPolicyProblem& policy_problem) {
    RateProblem r = base_rate;
    r.p_secondary = optimal_secondary_power(policy_problem, ctl);
    return ergodic_multicast_rate(r, ctl) / static_cast<double>(r.l_users);
  };
  const double before = rate_at(base_policy);
  const double after = rate_at(perturb(base_policy, parameter_name, new_value));
  return moved_as_expected(before, after, expected);
}

}  // namespace minsir::policy
