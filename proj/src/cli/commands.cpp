#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "csv.hpp"
#include "minsir/errors.hpp"
#include "minsir/evt.hpp"
#include "minsir/montecarlo.hpp"

namespace minsir::cli {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

// Sorted min-SIR samples keyed by the minimum count; one simulation serves
// every sweep row that shares the same K.
class MinSirCache {
 public:
  MinSirCache(const sir::SirModel& model, const mc::McConfig& cfg)
      : model_(model), cfg_(cfg) {}

  const std::vector<double>& sorted(int k) {
    auto it = cache_.find(k);
    if (it == cache_.end()) {
      std::vector<double> s = mc::simulate_min_sir(model_, k, cfg_);
      std::sort(s.begin(), s.end());
      it = cache_.emplace(k, std::move(s)).first;
    }
    return it->second;
  }

 private:
  sir::SirModel model_;
  mc::McConfig cfg_;
  std::map<int, std::vector<double>> cache_;
};

double mean_rate_per_user(const std::vector<double>& min_sir_samples,
                          double power_ratio) {
  double sum = 0.0;
  for (double v : min_sir_samples) sum += std::log2(1.0 + power_ratio * v);
  return sum / static_cast<double>(min_sir_samples.size());
}

[[noreturn]] void config_fail(const std::string& msg) {
  throw ConfigError(msg);
}

policy::PowerPolicyProblem apply_policy_axis(
    const policy::PowerPolicyProblem& base, const std::string& axis,
    double value) {
  policy::PowerPolicyProblem out = base;
  if (axis == "p0")
    out.p0 = value;
  else if (axis == "pp_db")
    out.p_primary = db_to_linear(value);
  else if (axis == "gamma0")
    out.gamma0 = value;
  else if (axis == "m_users")
    out.m_users = static_cast<int>(value);
  else
    config_fail("unsupported sweep axis '" + axis + "' for this command");
  try {
    out.validate();
  } catch (const Error& e) {
    config_fail("sweep value " + CsvWriter::format_number(value) +
                " on axis '" + axis + "': " + e.what());
  }
  return out;
}

}  // namespace

std::size_t cmd_min_cdf(const RunConfig& cfg, const std::string& out_path) {
  if (!cfg.model) config_fail("min-cdf needs a 'model' section");
  if (cfg.z_grid.empty()) config_fail("min-cdf needs a 'z_grid' section");
  const sir::SirModel& model = *cfg.model;
  const int k = cfg.k_users;

  CsvWriter csv("min-cdf", cfg,
                {"z", "exact_cdf", "asymptotic_cdf", "empirical_cdf"});
  csv.add_comment("k_users: " + std::to_string(k));

  std::optional<evt::WeibullMinLaw> law;
  if (k >= 2) {
    law = evt::asymptotic_min_law(model, k, cfg.truncation);
    csv.add_comment("weibull shape: " + CsvWriter::format_number(law->shape) +
                    " scale: " + CsvWriter::format_number(law->scale));
  }

  std::vector<double> samples;
  if (cfg.mc_enabled) {
    samples = mc::simulate_min_sir(model, k, cfg.mc);
    std::sort(samples.begin(), samples.end());
  }

  for (double z : cfg.z_grid) {
    const double exact = evt::exact_min_cdf(model, k, z, cfg.truncation);
    const double asym = law ? evt::weibull_min_cdf(*law, z) : kNan;
    const double emp =
        cfg.mc_enabled ? mc::empirical_cdf(samples, z) : kNan;
    csv.add_row({z, exact, asym, emp});
  }
  csv.write(out_path);
  return csv.rows();
}

std::size_t cmd_power(const RunConfig& cfg, const std::string& out_path) {
  if (!cfg.policy) config_fail("power needs a 'policy' section");
  if (!cfg.sweep) config_fail("power needs a 'sweep' section");
  const SweepSpec& sweep = *cfg.sweep;

  CsvWriter csv("power", cfg,
                {"sweep_value", "a_M", "Ps_plus_dB", "Ps_bar_dB",
                 "asymptotic_outage_at_Ps_bar", "empirical_outage"});
  csv.add_comment("sweep axis: " + sweep.axis);
  csv.add_comment("gamma0: " + CsvWriter::format_number(cfg.policy->gamma0));

  MinSirCache cache(cfg.policy->primary_model, cfg.mc);
  for (double v : sweep.values) {
    const policy::PowerPolicyProblem prob =
        apply_policy_axis(*cfg.policy, sweep.axis, v);
    const evt::WeibullMinLaw law =
        evt::asymptotic_min_law(prob.primary_model, prob.m_users,
                                cfg.truncation);
    const double ps_plus =
        policy::secondary_power_uncapped(prob, cfg.truncation);
    const double ps_bar = std::min(ps_plus, prob.ps_max);
    const double outage =
        policy::asymptotic_outage(prob, ps_bar, cfg.truncation);
    double empirical = kNan;
    if (cfg.mc_enabled) {
      // Unit-power min-SIR draws; the power ratio moves the threshold.
      const double threshold = prob.gamma0 * ps_bar / prob.p_primary;
      empirical = mc::empirical_cdf(cache.sorted(prob.m_users), threshold);
    }
    csv.add_row({v, law.scale, linear_to_db(ps_plus), linear_to_db(ps_bar),
                 outage, empirical});
  }
  csv.write(out_path);
  return csv.rows();
}

std::size_t cmd_rate(const RunConfig& cfg, const std::string& out_path) {
  if (!cfg.rate) config_fail("rate needs a 'rate' section");
  if (!cfg.sweep) config_fail("rate needs a 'sweep' section");
  const SweepSpec& sweep = *cfg.sweep;
  const bool policy_axis =
      sweep.axis == "pp_db" || sweep.axis == "m_users" || sweep.axis == "p0";
  if (policy_axis && !cfg.policy)
    config_fail("rate sweep over '" + sweep.axis +
                "' needs a 'policy' section");
  if (!cfg.rate_ps_db && !cfg.policy)
    config_fail("rate needs either rate.ps_db or a 'policy' section");

  const double base_ps =
      cfg.rate_ps_db ? db_to_linear(*cfg.rate_ps_db)
                     : policy::optimal_secondary_power(*cfg.policy,
                                                       cfg.truncation);

  CsvWriter csv("rate", cfg,
                {"sweep_value", "a_L", "rate_per_user_quadrature",
                 "rate_per_user_mc"});
  csv.add_comment("sweep axis: " + sweep.axis);

  MinSirCache cache(cfg.rate->secondary_model, cfg.mc);
  for (double v : sweep.values) {
    policy::RateProblem prob = *cfg.rate;
    double ps = base_ps;
    if (sweep.axis == "l_users") {
      prob.l_users = static_cast<int>(v);
    } else if (sweep.axis == "ps_db") {
      ps = db_to_linear(v);
    } else if (policy_axis) {
      // Policy-side sweeps grant a new power; the rate-side interference
      // stays at its configured level.
      const policy::PowerPolicyProblem perturbed =
          apply_policy_axis(*cfg.policy, sweep.axis, v);
      ps = policy::optimal_secondary_power(perturbed, cfg.truncation);
    } else {
      config_fail("unsupported sweep axis '" + sweep.axis + "' for rate");
    }
    prob.p_secondary = ps;
    try {
      prob.validate();
    } catch (const Error& e) {
      config_fail("sweep value " + CsvWriter::format_number(v) + ": " +
                  e.what());
    }

    const evt::WeibullMinLaw law = evt::asymptotic_min_law(
        prob.secondary_model, prob.l_users, cfg.truncation);
    const double quad =
        policy::ergodic_multicast_rate(prob, cfg.truncation) /
        static_cast<double>(prob.l_users);
    double sampled = kNan;
    if (cfg.mc_enabled)
      sampled = mean_rate_per_user(cache.sorted(prob.l_users),
                                   ps / prob.p_primary);
    csv.add_row({v, law.scale, quad, sampled});
  }
  csv.write(out_path);
  return csv.rows();
}

std::size_t cmd_simulate(const RunConfig& cfg, const std::string& out_path) {
  if (!cfg.mc_enabled) config_fail("simulate needs mc.trials >= 1");

  if (cfg.simulate_mode == "outage-rate") {
    if (!cfg.policy || !cfg.rate)
      config_fail("simulate outage-rate needs 'policy' and 'rate' sections");
    const double ps =
        cfg.simulate_ps_db
            ? db_to_linear(*cfg.simulate_ps_db)
            : policy::optimal_secondary_power(*cfg.policy, cfg.truncation);
    const mc::OutageRateResult res = mc::simulate_outage_and_rate(
        *cfg.policy, *cfg.rate, ps, cfg.mc, cfg.secondary_threshold);
    CsvWriter csv("simulate", cfg,
                  {"p_s_dB", "primary_outage", "secondary_outage",
                   "rate_per_user"});
    csv.add_comment("mode: outage-rate");
    csv.add_row({linear_to_db(ps), res.primary_outage, res.secondary_outage,
                 res.rate_per_user});
    csv.write(out_path);
    return csv.rows();
  }

  if (!cfg.model) config_fail("simulate needs a 'model' section");
  if (cfg.z_grid.empty()) config_fail("simulate needs a 'z_grid' section");
  const int k = cfg.simulate_mode == "min-sir" ? cfg.k_users : 1;

  std::vector<double> samples = mc::simulate_min_sir(*cfg.model, k, cfg.mc);
  std::sort(samples.begin(), samples.end());

  CsvWriter csv("simulate", cfg, {"z", "empirical_cdf"});
  csv.add_comment("mode: " + cfg.simulate_mode +
                  " k_users: " + std::to_string(k));
  for (double z : cfg.z_grid)
    csv.add_row({z, mc::empirical_cdf(samples, z)});
  csv.write(out_path);
  return csv.rows();
}

}  // namespace minsir::cli
