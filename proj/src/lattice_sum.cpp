#include "gtorus/lattice_sum.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "gtorus/common.hpp"

namespace gtorus {

double gaussian_lattice_tail(double alpha, int d, int radius) {
  if (!(alpha > 0.0)) return std::numeric_limits<double>::infinity();
  double tail = 0.0;
  for (int j = radius + 1;; ++j) {
    const double shell = std::pow(2.0 * j + 1.0, d) - std::pow(2.0 * j - 1.0, d);
    const double r = j - 0.5;
    const double term = shell * std::exp(-alpha * r * r);
    tail += term;
    // Terms decay super-geometrically once past the peak of shell * exp(...).
    if (r * r * alpha > d && (term <= 1e-18 * tail || term < 1e-300)) break;
    if (j > radius + 100000) break;
  }
  return tail;
}

int gaussian_lattice_radius(double alpha, int d, double tol, int cap) {
  for (int R = 0; R <= cap; ++R) {
    if (gaussian_lattice_tail(alpha, d, R) <= tol) return R;
  }
  std::ostringstream msg;
  msg << "Gaussian tail with decay rate " << alpha << " needs radius > " << cap
      << " to reach tolerance " << tol;
  throw Error(ErrorCode::ToleranceUnreachable, msg.str());
}

}  // namespace gtorus
