#pragma once

#include <cstdint>
#include <vector>

#include "minsir/policy.hpp"
#include "minsir/sir.hpp"

namespace minsir::mc {

// Deterministic simulation settings. Results are bit-identical for fixed
// (seed, trials) regardless of parallel_chunks: every trial derives its own
// engine from (seed, trial index) and scalar summaries reduce in trial
// order.
struct McConfig {
  std::uint64_t seed = 1;
  long long trials = 100000;
  int parallel_chunks = 1;

  void validate() const;  // throws InvalidParam
};

// trials draws of X / sum_j Y_j, in trial order.
std::vector<double> simulate_sir(const sir::SirModel& model,
                                 const McConfig& cfg);

// trials draws of min over k independent SIRs, in trial order.
std::vector<double> simulate_min_sir(const sir::SirModel& model, int k,
                                     const McConfig& cfg);

struct OutageRateResult {
  double primary_outage = 0.0;    // P(min primary SIR <= gamma0)
  double secondary_outage = 0.0;  // P(min secondary SIR <= threshold)
  double rate_per_user = 0.0;     // E[log2(1 + min secondary SIR)]
};

// Joint policy/rate simulation at secondary power p_s. Primary receiver m
// sees SIR P_p h_m / (p_s a_m); secondary receiver l sees p_s g_l /
// (P_p b_l). secondary_threshold < 0 selects the default gamma0.
OutageRateResult simulate_outage_and_rate(
    const policy::PowerPolicyProblem& policy_problem,
    const policy::RateProblem& rate_problem, double p_s, const McConfig& cfg,
    double secondary_threshold = -1.0);

// Empirical CDF of `samples` evaluated at z (fraction <= z).
double empirical_cdf(const std::vector<double>& sorted_samples, double z);

}  // namespace minsir::mc
