#pragma once

#include <vector>

#include "minsir/sir.hpp"

namespace minsir::evt {

// Weibull law of the minimum of k_users i.i.d. SIRs: shape = signal-link mu,
// scale = F^{-1}(1/k_users) of the single-user SIR CDF.
struct WeibullMinLaw {
  double shape = 1.0;
  double scale = 1.0;
  int k_users = 1;
};

// Exact minimum CDF 1 - (1 - F(z))^K.
double exact_min_cdf(const sir::SirModel& model, int k, double z,
                     const special::TruncationControl& ctl);

// Limiting law of the minimum (K >= 2).
WeibullMinLaw asymptotic_min_law(const sir::SirModel& model, int k,
                                 const special::TruncationControl& ctl);

// 1 - exp(-(z/scale)^shape) for z >= 0, 0 for z < 0.
double weibull_min_cdf(const WeibullMinLaw& law, double z);

// (shape/scale)(z/scale)^(shape-1) exp(-(z/scale)^shape), z > 0.
double weibull_min_pdf(const WeibullMinLaw& law, double z);

struct ConvergenceDiagnostic {
  std::vector<double> sup_errors;  // e(K) = sup_z |exact - weibull|, per K
  double loglog_slope = 0.0;       // OLS slope of log e(K) vs log K
};

// Sup-distance between the exact and limiting minimum CDFs for each K in
// k_list (increasing, length >= 3), plus the fitted log-log decay slope.
// With an empty z_grid each K uses its own default grid of 200 log-spaced
// points in (a_K/100, 5 a_K); a nonempty grid is used verbatim for all K.
ConvergenceDiagnostic convergence_diagnostic(
    const sir::SirModel& model, const std::vector<int>& k_list,
    const std::vector<double>& z_grid, const special::TruncationControl& ctl);

}  // namespace minsir::evt
