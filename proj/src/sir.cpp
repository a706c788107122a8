#include "minsir/sir.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <tuple>
#include <vector>

#include "minsir/errors.hpp"
#include "minsir/special.hpp"

namespace minsir::sir {

namespace {

using fading::KappaMuShadowedParams;

// Model quantities shared by every analytic form. Interferers are held in
// a canonical order (ascending theta, deterministic tie-break) so results
// are exactly permutation invariant.
struct Prepared {
  double mu_s, m_s;
  double th, lam;  // signal envelope parameters
  std::vector<double> mu_i, m_i, th_i, lam_i;
  double th1;       // smallest interferer theta
  double sum_mu;    // total interferer fading order
  double log_const; // -sum_i [(mu_i - m_i) ln th_i + m_i ln lam_i]
};

Prepared prepare(const SirModel& model) {
  model.validate();
  std::vector<KappaMuShadowedParams> ints = model.interferers;
  std::sort(ints.begin(), ints.end(),
            [](const KappaMuShadowedParams& a, const KappaMuShadowedParams& b) {
              return std::tie(a.mean_power, a.kappa, a.mu, a.m) <
                     std::tie(b.mean_power, b.kappa, b.mu, b.m);
            });
  std::stable_sort(ints.begin(), ints.end(),
                   [](const KappaMuShadowedParams& a,
                      const KappaMuShadowedParams& b) {
                     return a.theta() < b.theta();
                   });

  Prepared p;
  p.mu_s = model.signal.mu;
  p.m_s = model.signal.m;
  p.th = model.signal.theta();
  p.lam = model.signal.lambda();
  p.log_const = 0.0;
  for (const auto& q : ints) {
    p.mu_i.push_back(q.mu);
    p.m_i.push_back(q.m);
    p.th_i.push_back(q.theta());
    p.lam_i.push_back(q.lambda());
    p.log_const -= (q.mu - q.m) * std::log(q.theta()) +
                   q.m * std::log(q.lambda());
  }
  p.th1 = p.th_i.front();
  p.sum_mu = 0.0;
  for (double v : p.mu_i) p.sum_mu += v;
  return p;
}

// Depth budget for the layered series given its geometric decay rate; the
// caller's per-variable cap is widened, never narrowed.
special::TruncationControl widen(const special::TruncationControl& ctl,
                                 const std::vector<double>& x, int k) {
  double g1 = 0.0, g2 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double& g = static_cast<int>(i) < k ? g1 : g2;
    g = std::max(g, std::fabs(x[i]));
  }
  const double rate = g1 + g2;
  long needed = 6000;
  if (rate > 0.0 && rate < 0.9999)
    needed = std::lround(std::log(1e-13) / std::log(rate)) + 40;
  needed = std::clamp<long>(needed, 200, 6000);
  special::TruncationControl out = ctl;
  out.per_variable_cap =
      std::max<int>(ctl.per_variable_cap, static_cast<int>(needed));
  return out;
}

}  // namespace

void SirModel::validate() const {
  signal.validate();
  if (interferers.empty())
    throw InvalidParam("SirModel: need at least one interferer");
  for (const auto& q : interferers) q.validate();
}

double sir_cdf(const SirModel& model, double z,
               const special::TruncationControl& ctl) {
  ctl.validate();
  if (z <= 0.0) {
    model.validate();
    return 0.0;
  }
  const Prepared p = prepare(model);
  const std::size_t nI = p.mu_i.size();
  const double D = p.th + p.th1 * z;

  std::vector<double> b, x;
  b.reserve(2 * nI + 1);
  x.reserve(2 * nI + 1);
  b.push_back(1.0);
  x.push_back(p.th1 * z / D);
  b.push_back(p.m_s);
  x.push_back(p.th1 * (p.lam - p.th) * z / (p.lam * D));
  for (std::size_t i = 1; i < nI; ++i) {
    b.push_back(p.mu_i[i] - p.m_i[i]);
    x.push_back(p.th * (p.th_i[i] - p.th1) / (p.th_i[i] * D));
  }
  for (std::size_t i = 0; i < nI; ++i) {
    b.push_back(p.m_i[i]);
    x.push_back(p.th * (p.lam_i[i] - p.th1) / (p.lam_i[i] * D));
  }

  const special::SeriesResult ed = special::lauricella_ed(
      2, p.mu_s + p.sum_mu, b, p.mu_s + 1.0, p.sum_mu, x, widen(ctl, x, 2));

  const double lp = -p.sum_mu * std::log(z) +
                    (p.sum_mu + p.m_s) * std::log(p.th) +
                    std::lgamma(p.sum_mu + p.mu_s) -
                    p.m_s * std::log(p.lam) - std::lgamma(p.mu_s + 1.0) -
                    std::lgamma(p.sum_mu) +
                    (p.mu_s + p.sum_mu) * std::log(p.th1 * z / D) +
                    p.log_const;
  return std::clamp(std::exp(lp) * ed.value, 0.0, 1.0);
}

double sir_cdf_ccdf_form(const SirModel& model, double z,
                         const special::TruncationControl& ctl) {
  ctl.validate();
  if (z <= 0.0) {
    model.validate();
    return 0.0;
  }
  const Prepared p = prepare(model);
  const std::size_t nI = p.mu_i.size();
  const double D = p.th + p.th1 * z;

  std::vector<double> b, x;
  b.reserve(2 * nI + 1);
  x.reserve(2 * nI + 1);
  b.push_back(p.m_s);
  x.push_back(p.th1 * (p.lam - p.th) * z / (p.lam * D));
  b.push_back(1.0);
  x.push_back(p.th / D);
  for (std::size_t i = 1; i < nI; ++i) {
    b.push_back(p.mu_i[i] - p.m_i[i]);
    x.push_back(p.th * (p.th_i[i] - p.th1) / (p.th_i[i] * D));
  }
  for (std::size_t i = 0; i < nI; ++i) {
    b.push_back(p.m_i[i]);
    x.push_back(p.th * (p.lam_i[i] - p.th1) / (p.lam_i[i] * D));
  }

  const special::SeriesResult ed = special::lauricella_ed(
      1, p.sum_mu + p.mu_s, b, p.mu_s, 1.0 + p.sum_mu, x, widen(ctl, x, 1));

  const double lp = std::lgamma(p.sum_mu + p.mu_s) +
                    (p.sum_mu + p.m_s) * std::log(p.th) -
                    std::lgamma(p.sum_mu + 1.0) - p.sum_mu * std::log(z) -
                    p.m_s * std::log(p.lam) - std::lgamma(p.mu_s) +
                    (p.sum_mu + p.mu_s) * std::log(z * p.th1 / D) +
                    p.log_const;
  return std::clamp(1.0 - std::exp(lp) * ed.value, 0.0, 1.0);
}

double sir_pdf(const SirModel& model, double z,
               const special::TruncationControl& ctl) {
  ctl.validate();
  const Prepared p = prepare(model);
  if (z < 0.0) throw InvalidParam("sir_pdf: z must be nonnegative");
  if (z == 0.0) {
    if (p.mu_s > 1.0) return 0.0;
    if (p.mu_s < 1.0)
      throw InvalidParam("sir_pdf: density diverges at z = 0 for mu < 1");
  }
  const std::size_t nI = p.mu_i.size();
  const double D = p.th + p.th1 * z;

  std::vector<double> b, x;
  b.reserve(2 * nI);
  x.reserve(2 * nI);
  b.push_back(p.m_s);
  x.push_back(z * p.th1 * (p.lam - p.th) / (p.lam * D));
  for (std::size_t i = 1; i < nI; ++i) {
    b.push_back(p.mu_i[i] - p.m_i[i]);
    x.push_back(p.th * (p.th_i[i] - p.th1) / (p.th_i[i] * D));
  }
  for (std::size_t i = 0; i < nI; ++i) {
    b.push_back(p.m_i[i]);
    x.push_back(p.th * (p.lam_i[i] - p.th1) / (p.lam_i[i] * D));
  }

  const special::SeriesResult ed = special::lauricella_ed(
      1, p.mu_s + p.sum_mu, b, p.mu_s, p.sum_mu, x, widen(ctl, x, 1));

  double lp = (p.m_s + p.sum_mu) * std::log(p.th) +
              std::lgamma(p.mu_s + p.sum_mu) - p.m_s * std::log(p.lam) -
              std::lgamma(p.mu_s) - std::lgamma(p.sum_mu) + p.log_const +
              (p.mu_s + p.sum_mu) * std::log(p.th1) -
              (p.mu_s + p.sum_mu) * std::log(D);
  if (z > 0.0) lp += (p.mu_s - 1.0) * std::log(z);
  return std::max(0.0, std::exp(lp) * ed.value);
}

double sir_cdf_inverse(const SirModel& model, double p,
                       const special::TruncationControl& ctl) {
  if (!(p > 0.0 && p < 1.0))
    throw InvalidParam("sir_cdf_inverse: p must lie strictly in (0, 1)");
  const auto cdf = [&](double z) { return sir_cdf(model, z, ctl); };

  double lo, hi;
  if (cdf(1.0) >= p) {
    hi = 1.0;
    lo = 0.5;
    int guard = 0;
    while (cdf(lo) >= p) {
      hi = lo;
      lo *= 0.5;
      if (++guard > 1100)
        throw BracketFailure("sir_cdf_inverse: lower bracket not found");
    }
  } else {
    lo = 1.0;
    hi = 2.0;
    int guard = 0;
    while (cdf(hi) < p) {
      lo = hi;
      hi *= 2.0;
      if (!std::isfinite(hi) || ++guard > 1100)
        throw BracketFailure("sir_cdf_inverse: upper bracket not found");
    }
  }

  // Invariant: cdf(lo) < p <= cdf(hi).
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // interval at floating resolution
    (cdf(mid) >= p ? hi : lo) = mid;
  }
  double z = 0.5 * (lo + hi);

  // Tighten further if the residual still exceeds the value tolerance.
  for (int i = 0; i < 128 && std::fabs(cdf(z) - p) > 1e-10; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (cdf(mid) >= p ? hi : lo) = mid;
    z = 0.5 * (lo + hi);
  }
  if (std::fabs(cdf(z) - p) > 1e-10)
    throw BracketFailure("sir_cdf_inverse: residual above tolerance at p = " +
                         std::to_string(p));
  return z;
}

GammaApprox gamma_moment_match(const fading::KappaMuShadowedParams& params) {
  params.validate();
  const double k = params.kappa, mu = params.mu, m = params.m;
  GammaApprox g;
  g.shape = m * mu * (1.0 + k) * (1.0 + k) / (m + mu * k * k + 2.0 * m * k);
  g.scale = params.mean_power / g.shape;
  return g;
}

double sir_cdf_betaprime(const GammaApprox& signal_approx,
                         const GammaApprox& interferer_approx, double z) {
  if (!(signal_approx.shape > 0.0) || !(signal_approx.scale > 0.0) ||
      !(interferer_approx.shape > 0.0) || !(interferer_approx.scale > 0.0))
    throw InvalidParam("sir_cdf_betaprime: shapes and scales must be positive");
  if (z <= 0.0) return 0.0;
  const double y = z * interferer_approx.scale / signal_approx.scale;
  return special::regularized_incomplete_beta(
      signal_approx.shape, interferer_approx.shape, y / (1.0 + y));
}

}  // namespace minsir::sir
