#include "minsir/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "minsir/errors.hpp"
#include "minsir/fading.hpp"
#include "minsir/rng.hpp"

namespace minsir::mc {

namespace {

// Runs fn(trial_index) over [0, trials) split across chunks. Each trial is
// independent of chunk layout, so any chunk count gives identical results.
template <typename Fn>
void for_each_trial(long long trials, int chunks, Fn&& fn) {
  const int used = static_cast<int>(
      std::min<long long>(std::max(chunks, 1), trials));
  if (used <= 1) {
    for (long long i = 0; i < trials; ++i) fn(i);
    return;
  }
  std::vector<std::thread> workers;
  workers.reserve(used);
  for (int t = 0; t < used; ++t) {
    const long long lo = trials * t / used;
    const long long hi = trials * (t + 1) / used;
    workers.emplace_back([&fn, lo, hi] {
      for (long long i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& w : workers) w.join();
}

double one_sir(const sir::SirModel& model, RngStream& stream) {
  const double sig = fading::kmu_shadowed_sample(model.signal, stream);
  double den = 0.0;
  for (const auto& q : model.interferers)
    den += fading::kmu_shadowed_sample(q, stream);
  return sig / den;
}

}  // namespace

void McConfig::validate() const {
  if (trials < 1) throw InvalidParam("McConfig: trials must be >= 1");
  if (parallel_chunks < 1)
    throw InvalidParam("McConfig: parallel_chunks must be >= 1");
}

std::vector<double> simulate_sir(const sir::SirModel& model,
                                 const McConfig& cfg) {
  cfg.validate();
  model.validate();
  std::vector<double> out(static_cast<std::size_t>(cfg.trials));
  for_each_trial(cfg.trials, cfg.parallel_chunks, [&](long long i) {
    RngStream stream(trial_seed(cfg.seed, static_cast<std::uint64_t>(i)));
    out[static_cast<std::size_t>(i)] = one_sir(model, stream);
  });
  return out;
}

std::vector<double> simulate_min_sir(const sir::SirModel& model, int k,
                                     const McConfig& cfg) {
  cfg.validate();
  model.validate();
  if (k < 1) throw InvalidParam("simulate_min_sir: k must be >= 1");
  std::vector<double> out(static_cast<std::size_t>(cfg.trials));
  for_each_trial(cfg.trials, cfg.parallel_chunks, [&](long long i) {
    RngStream stream(trial_seed(cfg.seed, static_cast<std::uint64_t>(i)));
    double best = std::numeric_limits<double>::infinity();
    for (int r = 0; r < k; ++r) best = std::min(best, one_sir(model, stream));
    out[static_cast<std::size_t>(i)] = best;
  });
  return out;
}

OutageRateResult simulate_outage_and_rate(
    const policy::PowerPolicyProblem& policy_problem,
    const policy::RateProblem& rate_problem, double p_s, const McConfig& cfg,
    double secondary_threshold) {
  cfg.validate();
  policy_problem.validate();
  rate_problem.validate();
  if (!(p_s > 0.0))
    throw InvalidParam("simulate_outage_and_rate: p_s must be positive");
  const double threshold =
      secondary_threshold < 0.0 ? policy_problem.gamma0 : secondary_threshold;

  const std::size_t n = static_cast<std::size_t>(cfg.trials);
  std::vector<double> rates(n);
  std::vector<std::uint8_t> prim_out(n), sec_out(n);

  for_each_trial(cfg.trials, cfg.parallel_chunks, [&](long long i) {
    RngStream stream(trial_seed(cfg.seed, static_cast<std::uint64_t>(i)));
    // Primary receivers first, secondary second: fixed draw order per trial.
    double min_prim = std::numeric_limits<double>::infinity();
    for (int m = 0; m < policy_problem.m_users; ++m) {
      const double ratio = one_sir(policy_problem.primary_model, stream);
      min_prim = std::min(min_prim, policy_problem.p_primary * ratio / p_s);
    }
    double min_sec = std::numeric_limits<double>::infinity();
    for (int l = 0; l < rate_problem.l_users; ++l) {
      const double ratio = one_sir(rate_problem.secondary_model, stream);
      min_sec = std::min(min_sec, p_s * ratio / rate_problem.p_primary);
    }
    const std::size_t j = static_cast<std::size_t>(i);
    prim_out[j] = min_prim <= policy_problem.gamma0 ? 1 : 0;
    sec_out[j] = min_sec <= threshold ? 1 : 0;
    rates[j] = std::log2(1.0 + min_sec);
  });

  // Sequential trial-order reduction keeps summaries chunk-invariant.
  long long prim = 0, sec = 0;
  double rate_sum = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    prim += prim_out[j];
    sec += sec_out[j];
    rate_sum += rates[j];
  }
  OutageRateResult res;
  res.primary_outage = static_cast<double>(prim) / static_cast<double>(n);
  res.secondary_outage = static_cast<double>(sec) / static_cast<double>(n);
  res.rate_per_user = rate_sum / static_cast<double>(n);
  return res;
}

double empirical_cdf(const std::vector<double>& sorted_samples, double z) {
  if (sorted_samples.empty())
    throw InvalidParam("empirical_cdf: empty sample vector");
  const auto it = std::upper_bound(sorted_samples.begin(),
                                   sorted_samples.end(), z);
  return static_cast<double>(it - sorted_samples.begin()) /
         static_cast<double>(sorted_samples.size());
}

}  // namespace minsir::mc
