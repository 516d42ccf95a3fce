#include "fpplab/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace fpplab {
namespace {

struct Simpson {
  const std::function<double(double)>& f;
  int max_depth;

  double run(double a, double fa, double b, double fb, double whole, double fm,
             double tol, int depth) const {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double h6 = (b - a) / 12.0;
    const double left = h6 * (fa + 4.0 * flm + fm);
    const double right = h6 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol || (b - a) < 1e-14)
      return left + right + delta / 15.0;
    if (depth >= max_depth)
      throw std::runtime_error("integrate: adaptive Simpson did not converge");
    return run(a, fa, m, fm, left, flm, 0.5 * tol, depth + 1) +
           run(m, fm, b, fb, right, frm, 0.5 * tol, depth + 1);
  }
};

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol) {
  if (a == b) return 0.0;
  if (!(tol > 0)) throw std::invalid_argument("integrate: tolerance must be positive");
  const double fa = f(a), fb = f(b);
  const double m = 0.5 * (a + b);
  const double fm = f(m);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return Simpson{f, 60}.run(a, fa, b, fb, whole, fm, tol, 0);
}

}  // namespace fpplab
