#pragma once

#include <functional>

namespace fpplab {

/// Adaptive Simpson integral of f over [a, b] to absolute tolerance `tol`.
/// Throws std::runtime_error when the recursion cannot reach the tolerance
/// (non-smooth or singular integrand).
double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol = 1e-11);

}  // namespace fpplab
