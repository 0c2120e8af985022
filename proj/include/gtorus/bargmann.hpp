#pragma once

// Bargmann-type transform S_N -> sections of L^N on C^d / Lambda:
//   B eps_n(z) = sum_{t in n + N Z^d} exp(pi i t^T Omega t / N - 2 pi z^T t).
// Quasiperiods: B(z + i m) = B(z),
//   B(z - i Omega k) = exp(-pi i N k^T Omega k + 2 pi N z^T k) B(z).
// For the Gaussian window h_0^{Omega/N} and z = to_complex(x, xi),
//   V eps_n(x, xi) = exp(pi i x^T Omega x / N) B eps_{-n}(z),
// so |V phi|^2 = |B R phi|^2 exp(-N phi(z)) with R a_n = a_{-n}.

#include <cstddef>
#include <limits>
#include <vector>

#include "gtorus/common.hpp"
#include "gtorus/contour.hpp"
#include "gtorus/core.hpp"
#include "gtorus/metric.hpp"
#include "gtorus/scaled_complex.hpp"
#include "gtorus/signal.hpp"

namespace gtorus {

struct SectionValue {
  ScaledComplex raw;
  /// |raw| exp(-N phi(z) / 2).
  double weighted_mag = 0.0;
  double weighted_logmag = -std::numeric_limits<double>::infinity();
  /// Relative difference to the theta closed form; NaN when not computed
  /// or when weighted_mag <= 1e-12.
  double closed_form_discrepancy = std::numeric_limits<double>::quiet_NaN();
  int radius = 0;
  /// Bound on the omitted terms in weighted units.
  double tail_bound = 0.0;
};

/// Direct series for a single basis element.
SectionValue bargmann_basis(std::size_t n, const CVector& z, const GaborParams& params,
                            double tol = 1e-14, bool cross_check = true);

/// exp(pi i n^T Omega n / N - 2 pi z^T n) theta_N(i z + Omega n / N, Omega).
ScaledComplex bargmann_basis_closed_form(std::size_t n, const CVector& z, const GaborParams& params);

SectionValue bargmann(const Signal& phi, const CVector& z, const GaborParams& params,
                      double tol = 1e-14);

/// B eps_n(z) exp(-N phi(z)/2) for every n, from one lattice sum.
CVector weighted_basis(const CVector& z, const GaborParams& params, double tol = 1e-14);

/// Winding number of B phi on the fundamental parallelogram (d = 1),
/// retried with jittered origins while the contour passes near a zero.
WindingResult section_zero_count(const Signal& phi, const GaborParams& params);

struct QuadratureOptions {
  int oversample = 8;
  double rel_tol = 1e-6;
  int max_doublings = 2;
  int threads = 1;
};

struct GramReport {
  CMatrix G;
  int rank = 0;
  /// Mean of the diagonal, the fitted constant in G = c I.
  double c = 0.0;
  /// max |G_mn| (m != n) divided by c.
  double offdiag_resid = 0.0;
  /// max |G_nn - c| / c.
  double diag_spread = 0.0;
  /// ||h||^2 det(Im Omega) / N^d.
  double c_norm_identity = 0.0;
  /// 2^{d/2} N^{d/2} det(Im Omega)^{-1/2}.
  double c_closed_form = 0.0;
  int grid_per_axis = 0;
  /// Relative change of G between the final grid and its half.
  double doubling_change = 0.0;
};

/// G_mn = integral over the fundamental domain of B eps_n conj(B eps_m) exp(-N phi),
/// Lebesgue measure on C^d. Throws Error(QuadratureUnderResolved).
GramReport gram(const GaborParams& params, const QuadratureOptions& options = {});

struct DensityReport {
  int grid_x = 0;   // points per x-axis over [0, N)
  int grid_xi = 0;  // points per xi-axis over [0, 1)
  /// rho on the tensor grid, x axes slowest, then xi axes.
  std::vector<double> rho;
  double integral = 0.0;
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
  /// (max - min) / mean.
  double flatness = 0.0;
};

/// rho(x, xi) = sum_n |V_h eps_n(x, xi)|^2 / ||h||^2 for h = h_0^{Omega/N};
/// its integral over T_N is N^d. Trapezoid grid with oversample * N points
/// per axis.
DensityReport bergman_density(const GaborParams& params, int oversample = 8, int threads = 1);

/// Grid point (x, xi) for a flat index of a DensityReport.
TFPoint density_grid_point(const DensityReport& report, const GaborParams& params, std::size_t flat);

}  // namespace gtorus
