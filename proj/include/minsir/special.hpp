#pragma once

#include <vector>

namespace minsir::special {

// Truncation budget shared by every series evaluator. per_variable_cap is
// the maximum summation index per variable; rel_tol drives the stagnation
// stop; abs_tol is the floor used when the value is near zero.
struct TruncationControl {
  int per_variable_cap = 60;
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;

  void validate() const;  // throws InvalidParam
};

struct SeriesResult {
  double value = 0.0;
  long terms_used = 0;
  double tail_estimate = 0.0;  // geometric majorant of the dropped tail
  bool converged = false;      // implies tail_estimate <= max(abs_tol, rel_tol*|value|)
};

// Kummer confluent hypergeometric 1F1(a; b; z) by direct series for z >= 0
// and the Kummer transform e^z 1F1(b-a; b; -z) for z < 0 (avoids alternating
// cancellation). Throws InvalidParam if b is a nonpositive integer,
// NonConvergent if the cap is hit before stagnation.
SeriesResult confluent_1f1(double a, double b, double z,
                           const TruncationControl& ctl);

// Confluent Lauricella-type series
//   (1)^(k)E_D^(n)(a, b_1..b_n; c, c'; x_1..x_n)
//     = sum (a)_{p_1+..+p_n} prod (b_i)_{p_i} x_i^{p_i}/p_i!
//           / ( (c)_{p_1+..+p_k} (c')_{p_{k+1}+..+p_n} )
// The first k indices share the (c) Pochhammer denominator, the remaining
// n-k share (c'). Requires |x_i| < 1 (throws OutOfConvergenceRegion),
// n <= kMaxLauricellaDimension (throws DimensionTooLarge), and throws
// NonConvergent if the per-variable cap is exhausted before stagnation.
// Negative b_i are supported (terms alternate until b_i + p > 0).
inline constexpr int kMaxLauricellaDimension = 9;

SeriesResult lauricella_ed(int k, double a, const std::vector<double>& b,
                           double c, double c_prime,
                           const std::vector<double>& x,
                           const TruncationControl& ctl);

// Regularized incomplete beta I_x(a,b) via the Lentz continued fraction,
// using the symmetry I_x(a,b) = 1 - I_{1-x}(b,a) for fast convergence.
double regularized_incomplete_beta(double a, double b, double x);

}  // namespace minsir::special
