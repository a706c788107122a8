#include "minsir/special.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "minsir/errors.hpp"

namespace minsir::special {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

bool nonpositive_integer(double v) {
  return v <= 0.0 && v == std::floor(v);
}

// Consecutive quiet layers required before the stagnation stop fires.
constexpr int kQuietLayers = 3;

// Hard bound on the total series degree regardless of caller budget.
constexpr long kMaxTotalDegree = 30000;

struct LogArray {
  std::vector<double> logmag;
  std::vector<double> sign;
};

// log-magnitude/sign split of a linear-space coefficient array.
LogArray to_log(const std::vector<double>& v) {
  LogArray out;
  out.logmag.resize(v.size());
  out.sign.resize(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0.0) {
      out.logmag[i] = kNegInf;
      out.sign[i] = 0.0;
    } else {
      out.logmag[i] = std::log(std::fabs(v[i]));
      out.sign[i] = v[i] > 0.0 ? 1.0 : -1.0;
    }
  }
  return out;
}

// Single-variable coefficients g[p] = (b)_p x^p / p!, truncated at p_cap.
std::vector<double> pochhammer_power_series(double b, double x, long p_cap) {
  std::vector<double> g(static_cast<std::size_t>(p_cap) + 1, 0.0);
  g[0] = 1.0;
  for (long p = 1; p <= p_cap; ++p) {
    g[p] = g[p - 1] * (b + static_cast<double>(p) - 1.0) * x /
           static_cast<double>(p);
    if (g[p] == 0.0) break;  // terminating Pochhammer or x == 0
  }
  return g;
}

// Truncated product convolution: (f * g)[s] for s <= max_degree.
std::vector<double> convolve(const std::vector<double>& f,
                             const std::vector<double>& g, long max_degree) {
  const long nf = static_cast<long>(f.size());
  const long ng = static_cast<long>(g.size());
  const long out_len = std::min(max_degree + 1, nf + ng - 1);
  std::vector<double> out(static_cast<std::size_t>(out_len), 0.0);
  for (long i = 0; i < nf; ++i) {
    if (f[i] == 0.0) continue;
    const long jmax = std::min(ng - 1, out_len - 1 - i);
    for (long j = 0; j <= jmax; ++j) out[i + j] += f[i] * g[j];
  }
  return out;
}

// log|(q)_t| and sign for t = 0..t_max, built by the running recurrence.
LogArray log_pochhammer_table(double q, long t_max) {
  LogArray out;
  out.logmag.assign(static_cast<std::size_t>(t_max) + 1, 0.0);
  out.sign.assign(static_cast<std::size_t>(t_max) + 1, 1.0);
  double lm = 0.0, sg = 1.0;
  for (long t = 1; t <= t_max; ++t) {
    const double factor = q + static_cast<double>(t) - 1.0;
    if (factor == 0.0 || sg == 0.0) {
      lm = kNegInf;
      sg = 0.0;
    } else {
      lm += std::log(std::fabs(factor));
      if (factor < 0.0) sg = -sg;
    }
    out.logmag[t] = lm;
    out.sign[t] = sg;
  }
  return out;
}

}  // namespace

void TruncationControl::validate() const {
  if (per_variable_cap < 1)
    throw InvalidParam("TruncationControl: per_variable_cap must be >= 1");
  if (!(rel_tol > 0.0))
    throw InvalidParam("TruncationControl: rel_tol must be positive");
  if (!(abs_tol > 0.0))
    throw InvalidParam("TruncationControl: abs_tol must be positive");
}

SeriesResult confluent_1f1(double a, double b, double z,
                           const TruncationControl& ctl) {
  ctl.validate();
  if (nonpositive_integer(b))
    throw InvalidParam("confluent_1f1: b is a nonpositive integer");

  if (z < 0.0) {
    // Kummer transform: 1F1(a,b,z) = e^z 1F1(b-a, b, -z); the transformed
    // series has same-sign growth, avoiding alternating cancellation.
    SeriesResult r = confluent_1f1(b - a, b, -z, ctl);
    const double scale = std::exp(z);
    r.value *= scale;
    r.tail_estimate *= scale;
    return r;
  }

  SeriesResult res;
  double term = 1.0;
  double sum = 1.0;
  int quiet = 0;
  const long cap = ctl.per_variable_cap;
  for (long p = 0; p < cap; ++p) {
    term *= (a + static_cast<double>(p)) * z /
            ((b + static_cast<double>(p)) * static_cast<double>(p + 1));
    sum += term;
    res.terms_used = p + 2;
    const double thresh = std::max(ctl.abs_tol, ctl.rel_tol * std::fabs(sum));
    const double ratio =
        std::fabs((a + static_cast<double>(p + 1)) * z /
                  ((b + static_cast<double>(p + 1)) * static_cast<double>(p + 2)));
    quiet = (std::fabs(term) <= thresh) ? quiet + 1 : 0;
    if (quiet >= kQuietLayers && ratio < 1.0) {
      const double r = std::min(ratio, 0.999);
      const double tail = std::fabs(term) * r / (1.0 - r);
      // Stop only once the geometric tail majorant itself passes.
      if (tail <= thresh) {
        res.value = sum;
        res.tail_estimate = tail;
        res.converged = true;
        return res;
      }
    }
  }
  throw NonConvergent("confluent_1f1: cap " + std::to_string(cap) +
                      " reached without stagnation (a=" + std::to_string(a) +
                      ", b=" + std::to_string(b) + ", z=" + std::to_string(z) +
                      ")");
}

SeriesResult lauricella_ed(int k, double a, const std::vector<double>& b,
                           double c, double c_prime,
                           const std::vector<double>& x,
                           const TruncationControl& ctl) {
  ctl.validate();
  const int n = static_cast<int>(x.size());
  if (n < 1) throw InvalidParam("lauricella_ed: need n >= 1 variables");
  if (static_cast<int>(b.size()) != n)
    throw InvalidParam("lauricella_ed: b and x must have equal length");
  if (k < 1 || k > n)
    throw InvalidParam("lauricella_ed: k must satisfy 1 <= k <= n");
  if (n > kMaxLauricellaDimension)
    throw DimensionTooLarge("lauricella_ed: n = " + std::to_string(n) +
                            " exceeds the supported dimension " +
                            std::to_string(kMaxLauricellaDimension));
  for (double xi : x)
    if (!(std::fabs(xi) < 1.0))
      throw OutOfConvergenceRegion(
          "lauricella_ed: |x_i| >= 1 (x_i = " + std::to_string(xi) + ")");
  if (nonpositive_integer(c))
    throw InvalidParam("lauricella_ed: c is a nonpositive integer");
  if (k < n && nonpositive_integer(c_prime))
    throw InvalidParam("lauricella_ed: c_prime is a nonpositive integer");

  // Structural convergence rate of the diagonal-layer sums: within a group
  // the generating function is prod (1-x_i t)^(-b_i), whose coefficient
  // growth is max|x_i|; the cross-group coupling is binomial, so the group
  // rates add.
  double g1 = 0.0, g2 = 0.0;
  for (int i = 0; i < k; ++i) g1 = std::max(g1, std::fabs(x[i]));
  for (int i = k; i < n; ++i) g2 = std::max(g2, std::fabs(x[i]));
  const double rate_bound = g1 + g2;

  // A layer of total degree t only contains per-variable indices <= t, so
  // truncating every variable series at degree d makes exactly the layers
  // t <= d complete; d is therefore the honest degree budget of the sum.
  // Layers above it are missing high-order terms and must never enter.
  const long t_cap = std::min<long>(kMaxTotalDegree, ctl.per_variable_cap);

  long t_work = std::min<long>(t_cap, 64);

  for (;;) {
    std::vector<double> A{1.0}, B{1.0};
    for (int i = 0; i < k; ++i)
      A = convolve(A, pochhammer_power_series(b[i], x[i], t_work), t_work);
    for (int i = k; i < n; ++i)
      B = convolve(B, pochhammer_power_series(b[i], x[i], t_work), t_work);
    const LogArray lA = to_log(A), lB = to_log(B);
    const long s_max = static_cast<long>(A.size()) - 1;
    const long u_max = static_cast<long>(B.size()) - 1;
    const long t_reach = t_work;

    const LogArray la = log_pochhammer_table(a, t_reach);
    const LogArray lc = log_pochhammer_table(c, s_max);
    const LogArray lcp = log_pochhammer_table(c_prime, u_max);

    double sum = 0.0;
    long terms = 0;
    int quiet = 0;
    double prev_abs = 0.0;
    double ratio_obs = rate_bound < 1.0 ? rate_bound : 0.999;

    for (long t = 0; t <= t_reach; ++t) {
      double layer = 0.0;
      const long s_lo = std::max<long>(0, t - u_max);
      const long s_hi = std::min(t, s_max);
      for (long s = s_lo; s <= s_hi; ++s) {
        const long u = t - s;
        const double sg = la.sign[t] * lc.sign[s] * lcp.sign[u] * lA.sign[s] *
                          lB.sign[u];
        if (sg == 0.0) continue;
        const double lm =
            la.logmag[t] - lc.logmag[s] - lcp.logmag[u] + lA.logmag[s] +
            lB.logmag[u];
        layer += sg * std::exp(lm);
        ++terms;
      }
      sum += layer;
      if (!std::isfinite(sum))
        throw NonConvergent("lauricella_ed: partial sum overflowed");

      const double labs = std::fabs(layer);
      if (prev_abs > 0.0 && labs > 0.0)
        ratio_obs = std::max(std::min(labs / prev_abs, 0.999),
                             rate_bound < 1.0 ? rate_bound : 0.0);
      prev_abs = labs;

      const double thresh = std::max(ctl.abs_tol, ctl.rel_tol * std::fabs(sum));
      quiet = (labs <= thresh) ? quiet + 1 : 0;
      if (quiet >= kQuietLayers) {
        // Geometric majorant of the dropped tail from the decay rate; keep
        // accumulating until the majorant itself passes the tolerance.
        const double r = std::min(
            0.999, rate_bound < 1.0 ? std::max(rate_bound, ratio_obs)
                                    : ratio_obs);
        const double tail = labs * r / (1.0 - r);
        if (tail <= thresh) {
          SeriesResult res;
          res.value = sum;
          res.terms_used = terms;
          res.tail_estimate = tail;
          res.converged = true;
          return res;
        }
      }
    }

    if (t_reach >= t_cap) break;
    t_work = std::min(t_cap, t_work * 2);
  }
  throw NonConvergent(
      "lauricella_ed: degree budget " + std::to_string(t_cap) +
      " exhausted without stagnation (rate bound " +
      std::to_string(rate_bound) + ")");
}

namespace {

// Continued fraction for the incomplete beta (Lentz's method).
double beta_continued_fraction(double a, double b, double x) {
  constexpr int kMaxIter = 400;
  constexpr double kEps = 3e-16;
  constexpr double kTiny = 1e-300;
  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) return h;
  }
  throw NonConvergent("regularized_incomplete_beta: continued fraction");
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0))
    throw InvalidParam("regularized_incomplete_beta: a, b must be positive");
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) -
                           std::lgamma(b) + a * std::log(x) +
                           b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0))
    return front * beta_continued_fraction(a, b, x) / a;
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

}  // namespace minsir::special
