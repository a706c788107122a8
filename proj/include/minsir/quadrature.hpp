#pragma once

#include <functional>

namespace minsir::quadrature {

// Adaptive Gauss-Kronrod 15(7) on a finite interval. Splits the worst
// interval until the summed error estimate is below max(abs_tol,
// rel_tol*|integral|); throws QuadratureFailure once max_intervals
// subdivisions fail to reach the tolerance.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-10, double rel_tol = 1e-10,
                 int max_intervals = 2000);

}  // namespace minsir::quadrature
