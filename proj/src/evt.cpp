#include "minsir/evt.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "minsir/errors.hpp"

namespace minsir::evt {

double exact_min_cdf(const sir::SirModel& model, int k, double z,
                     const special::TruncationControl& ctl) {
  if (k < 1) throw InvalidParam("exact_min_cdf: k must be >= 1");
  const double f = sir::sir_cdf(model, z, ctl);
  // 1 - (1-F)^K via expm1/log1p keeps precision when F is tiny.
  return -std::expm1(static_cast<double>(k) * std::log1p(-f));
}

WeibullMinLaw asymptotic_min_law(const sir::SirModel& model, int k,
                                 const special::TruncationControl& ctl) {
  if (k < 2) throw InvalidParam("asymptotic_min_law: k must be >= 2");
  model.validate();
  WeibullMinLaw law;
  law.shape = model.signal.mu;
  law.scale = sir::sir_cdf_inverse(model, 1.0 / static_cast<double>(k), ctl);
  law.k_users = k;
  return law;
}

double weibull_min_cdf(const WeibullMinLaw& law, double z) {
  if (!(law.shape > 0.0) || !(law.scale > 0.0))
    throw InvalidParam("weibull_min_cdf: shape and scale must be positive");
  if (z <= 0.0) return 0.0;
  return -std::expm1(-std::pow(z / law.scale, law.shape));
}

double weibull_min_pdf(const WeibullMinLaw& law, double z) {
  if (!(law.shape > 0.0) || !(law.scale > 0.0))
    throw InvalidParam("weibull_min_pdf: shape and scale must be positive");
  if (z <= 0.0) return 0.0;
  const double t = z / law.scale;
  return law.shape / law.scale * std::pow(t, law.shape - 1.0) *
         std::exp(-std::pow(t, law.shape));
}

ConvergenceDiagnostic convergence_diagnostic(
    const sir::SirModel& model, const std::vector<int>& k_list,
    const std::vector<double>& z_grid, const special::TruncationControl& ctl) {
  if (k_list.size() < 3)
    throw InvalidParam("convergence_diagnostic: need at least 3 K values");
  for (std::size_t i = 1; i < k_list.size(); ++i)
    if (k_list[i] <= k_list[i - 1])
      throw InvalidParam("convergence_diagnostic: k_list must increase");
  if (k_list.front() < 2)
    throw InvalidParam("convergence_diagnostic: K values must be >= 2");

  ConvergenceDiagnostic diag;
  for (int k : k_list) {
    const WeibullMinLaw law = asymptotic_min_law(model, k, ctl);
    std::vector<double> grid = z_grid;
    if (grid.empty()) {
      // Default per-K grid: 200 log-spaced points over (a_K/100, 5 a_K).
      const double lo = std::log(law.scale / 100.0);
      const double hi = std::log(5.0 * law.scale);
      grid.resize(200);
      for (int j = 0; j < 200; ++j)
        grid[j] = std::exp(lo + (hi - lo) * j / 199.0);
    }
    double sup = 0.0;
    for (double z : grid)
      sup = std::max(sup, std::fabs(exact_min_cdf(model, k, z, ctl) -
                                    weibull_min_cdf(law, z)));
    diag.sup_errors.push_back(sup);
  }

  // OLS slope of log e(K) on log K.
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double n = static_cast<double>(k_list.size());
  for (std::size_t i = 0; i < k_list.size(); ++i) {
    const double lx = std::log(static_cast<double>(k_list[i]));
    const double ly = std::log(diag.sup_errors[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  diag.loglog_slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return diag;
}

}  // namespace minsir::evt
