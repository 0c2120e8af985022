#pragma once

// Riemann theta functions of order N:
//   theta_N(z, Omega) = sum_{k in Z^d} exp(pi i N k^T Omega k + 2 pi i N k^T z).
// Quasiperiodicity:
//   theta_N(z + m + Omega k) = exp(-pi i N k^T Omega k - 2 pi i N z^T k) theta_N(z).

#include <vector>

#include "gtorus/common.hpp"
#include "gtorus/core.hpp"
#include "gtorus/scaled_complex.hpp"

namespace gtorus {

struct ThetaEval {
  ScaledComplex value;
  int radius = 0;
  /// Bound on the omitted terms relative to the absolute mass of the kept ones.
  double tail_bound = 0.0;
  /// Floating-point rounding allowance for the kept sum, same units.
  double rounding_bound = 0.0;
  /// Absolute mass sum |terms| of the kept sum, including the reassembled factor.
  ScaledComplex mass;
};

/// Certified evaluation with argument reduction. Throws
/// Error(ToleranceUnreachable) when the radius would exceed `max_radius`.
ThetaEval theta_eval(const CVector& z, const GaborParams& params, int order = 1,
                     double tol = 1e-14, int max_radius = 200);

/// Same reduction, fixed radius.
ThetaEval theta_eval_radius(const CVector& z, const GaborParams& params, int order, int radius);

/// exp(-pi i order k^T Omega k - 2 pi i order z^T k).
ScaledComplex theta_factor(const CVector& z, const std::vector<long>& k, const GaborParams& params,
                           int order);

/// theta and its gradient, both equal to scale * (value, gradient).
struct ThetaJet {
  ScaledComplex scale;
  cplx value;
  CVector gradient;
};
ThetaJet theta_jet(const CVector& z, const GaborParams& params, int order = 1, double tol = 1e-15);

/// |theta_1(i z, Omega)| exp(-phi(z)/2), invariant under z -> z + Lambda.
double theta_weighted_magnitude(const CVector& z, const GaborParams& params);
double theta_weighted_logmag(const CVector& z, const GaborParams& params);

struct ThetaZero {
  ComplexPoint z0;
  int attempts = 0;
  double weighted_residual = 0.0;
};

/// Unique zero of z -> theta_1(i z, Omega) for d = 1, reduced to box
/// coordinates in [0,1)^2. Throws Error(InvalidArgument) for d != 1 and
/// Error(WindingNotOne) when no jittered contour certifies a single zero.
ThetaZero theta_zero_1d(const GaborParams& params);

}  // namespace gtorus
