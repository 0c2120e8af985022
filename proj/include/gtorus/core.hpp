#pragma once

// Global parameters and coordinate bookkeeping between the real
// time-frequency torus T_N = R^{2d} / (N Z^d x Z^d) and the complex torus
// C^d / Lambda with Lambda = -i Omega Z^d + i Z^d.

#include <cstddef>
#include <vector>

#include "gtorus/common.hpp"

namespace gtorus {

/// Unchecked configuration as read from a file or the command line.
struct GaborConfig {
  int d = 1;
  int N = 1;
  CMatrix omega;
};

/// Validated configuration: Omega is symmetric with positive definite
/// imaginary part. Derived quantities are cached at construction.
class GaborParams {
 public:
  int dim() const noexcept { return d_; }
  int samples() const noexcept { return N_; }
  /// N^d, the dimension of S_N.
  std::size_t basis_size() const noexcept { return basis_size_; }

  const CMatrix& omega() const noexcept { return omega_; }
  const RMatrix& real_part() const noexcept { return re_; }
  const RMatrix& imag_part() const noexcept { return im_; }
  const RMatrix& imag_inverse() const noexcept { return im_inv_; }
  double imag_min_eigenvalue() const noexcept { return im_min_eig_; }
  double imag_det() const noexcept { return im_det_; }

  GaborConfig config() const { return {d_, N_, omega_}; }
  /// Same Omega, different number of samples per axis.
  GaborParams with_samples(int N) const;

 private:
  friend GaborParams validate(const GaborConfig& config);
  GaborParams() = default;

  int d_ = 0;
  int N_ = 0;
  std::size_t basis_size_ = 0;
  CMatrix omega_;
  RMatrix re_, im_, im_inv_;
  double im_min_eig_ = 0.0;
  double im_det_ = 0.0;
};

/// Throws Error(NonSymmetric | NotPositiveDefinite | InvalidArgument).
GaborParams validate(const GaborConfig& config);

/// Convenience for the common Omega = scale * i * I case.
GaborParams make_params(int d, int N, cplx omega_diag);

/// Point of T_N; x in [0,N)^d, xi in [0,1)^d after reduction.
struct TFPoint {
  RVector x;
  RVector xi;

  TFPoint reduced(int N) const;
};

/// Representative z in C^d of a point of the complex torus.
struct ComplexPoint {
  CVector z;
};

/// z = -i (Omega x / N + xi).
ComplexPoint to_complex(const TFPoint& p, const GaborParams& params);

/// Inverse of to_complex, reduced into the fundamental box.
TFPoint from_complex(const ComplexPoint& z, const GaborParams& params);

/// Real coordinates (a, b) with z = -i (Omega a + b).
struct BoxCoordinates {
  RVector a;
  RVector b;
};
BoxCoordinates box_coordinates(const CVector& z, const GaborParams& params);
CVector from_box_coordinates(const RVector& a, const RVector& b, const GaborParams& params);

/// Representative of z mod Lambda with box coordinates in [0,1)^d x [0,1)^d.
CVector reduce_mod_lattice(const CVector& z, const GaborParams& params);

struct LatticeMembership {
  bool member = false;
  // Integer witness (in units of `scale`) with z = -i Omega a + i b.
  std::vector<long> a;
  std::vector<long> b;
  // Largest distance of a/scale, b/scale to the nearest integers.
  double max_deviation = 0.0;
};

/// Tests z in scale * Lambda, i.e. z = -i Omega a + i b with a, b in scale * Z^d.
LatticeMembership dual_lattice_member(const CVector& z, const GaborParams& params,
                                      double scale = 1.0, double tol = 1e-9);

}  // namespace gtorus
