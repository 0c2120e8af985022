#pragma once

// Truncation radii for Gaussian-weighted sums over Z^d.
//
// For a sum over k in Z^d whose terms are bounded by exp(-alpha |k - c|^2),
// the box |k - round(c)|_inf <= R is kept. A lattice point on the shell
// |k - round(c)|_inf = j satisfies |k - c|_2 >= j - 1/2, and the shell has
// (2j+1)^d - (2j-1)^d points, which gives the tail bound below.

#include <span>
#include <vector>

namespace gtorus {

double gaussian_lattice_tail(double alpha, int d, int radius);

/// Smallest radius whose tail bound is <= tol. Throws
/// Error(ToleranceUnreachable) if it would exceed `cap`.
int gaussian_lattice_radius(double alpha, int d, double tol, int cap = 200);

/// Visits every k in Z^d with |k - center|_inf <= radius, last axis fastest.
template <class Fn>
void for_each_in_box(std::span<const long> center, int radius, Fn&& fn) {
  const std::size_t d = center.size();
  std::vector<long> k(d);
  for (std::size_t i = 0; i < d; ++i) k[i] = center[i] - radius;
  while (true) {
    fn(std::span<const long>(k));
    std::size_t axis = d;
    while (axis > 0) {
      --axis;
      if (k[axis] < center[axis] + radius) {
        ++k[axis];
        break;
      }
      k[axis] = center[axis] - radius;
      if (axis == 0) return;
    }
    if (d == 0) return;
  }
}

}  // namespace gtorus
