#pragma once

// Restriction operators on S_N:
//   <R phi, psi> = (1/||g||^2) integral over T_N of a(x/N, xi) V_g phi conj(V_g psi),
// and the equivalent Toeplitz operators on sections of L^N.

#include <optional>
#include <string>
#include <vector>

#include "gtorus/common.hpp"
#include "gtorus/core.hpp"
#include "gtorus/symbol.hpp"
#include "gtorus/window.hpp"

namespace gtorus {

struct LocalizationOptions {
  /// Grid points per unit length on the x axes (x in [0, N)).
  int x_per_unit = 4;
  /// Grid points on each xi axis are xi_factor * N.
  int xi_factor = 4;
  /// Number of grid doublings allowed while the trace is unconverged.
  int max_doublings = 2;
  /// Accepted trace change between a grid and its doubling (see RestrictionReport).
  double trace_tol = 1e-8;
  /// Accepted change for discontinuous symbols.
  double box_trace_tol = 5e-2;
  int threads = 1;
};

struct RestrictionReport {
  CMatrix M;
  /// max |M - M^H| before symmetrization (real symbols).
  double asymmetry = 0.0;
  int grid_x = 0;
  int grid_xi = 0;
  /// Trace change against the previous (half) grid, relative to
  /// max(|Tr M|, sup|a| N^d); 0 if not doubled.
  double trace_change = 0.0;
  int doublings = 0;
};

/// Throws Error(QuadratureUnderResolved) or Error(NonHermitianBeyondTolerance).
RestrictionReport restriction_matrix(const Symbol& a, const Window& window, const GaborParams& params,
                                     const LocalizationOptions& options = {});

/// T_mn = integral over the fundamental domain of a(coordinates) B R eps_n conj(B R eps_m) e^{-N phi}
/// (Lebesgue measure, R the reflection n -> -n), on the same grid as restriction_matrix.
/// R = N^d / (det(Im Omega) ||h||^2) T for the Gaussian window h.
CMatrix toeplitz_matrix(const Symbol& a, const GaborParams& params, int grid_x, int grid_xi,
                        int threads = 1);

/// N^d / (det(Im Omega) ||h_0^{Omega/N}||^2).
double toeplitz_scalar(const GaborParams& params);

struct CountSample {
  double alpha = 0.0;
  std::size_t below = 0;  // #{lambda < alpha}
  std::size_t above = 0;  // #{lambda > alpha}
};

struct SpectrumReport {
  bool hermitian = true;
  /// Set for non-Hermitian input; `eigenvalues` then holds singular values.
  bool non_normal_warning = false;
  std::vector<double> eigenvalues;  // ascending
  double trace = 0.0;
  std::vector<CountSample> counting;
};

/// Hermitian eigen-solve when ||M - M^H|| <= herm_tol ||M||, otherwise
/// singular values with the warning flag. Eigenvalues within
/// count_tol * max(1, max |lambda|) of alpha are counted on neither side.
/// Throws Error(EigSolverFailure).
SpectrumReport spectrum(const CMatrix& M, const std::vector<double>& alpha_grid = {},
                        double herm_tol = 1e-10, double count_tol = 1e-9);

/// Fraction of eigenvalues in (delta, top - delta).
double plunge_fraction(const std::vector<double>& eigenvalues, double delta, double top = 1.0);

/// Grid of alpha values "a:b:step" inclusive of b up to rounding.
std::vector<double> alpha_range(double from, double to, double step);

struct SweepRow {
  int N = 0;
  double trace_norm = 0.0;
  double target_integral = 0.0;
  double alpha = 0.0;
  double count_norm = 0.0;
  double target_volume = 0.0;
  double plunge_fraction = 0.0;
};

struct SweepReport {
  std::vector<SweepRow> rows;
  /// Per N: 2^{-d/2} N^{-3d/2} det(Im Omega)^{-1/2}, alternative closed-form normalization, reported only.
  std::vector<std::pair<int, double>> closed_form_constants;
  /// Per N: relative trace change of the final quadrature grid.
  std::vector<std::pair<int, double>> trace_changes;
};

/// For each N: R_N = restriction_matrix(a, h_0^{Omega/N}); records
/// N^{-d} Tr R_N and N^{-d} #{lambda < alpha} against the integral of a and
/// Vol(a < alpha) on [0,1]^{2d}.
SweepReport asymptotic_sweep(const Symbol& a, const std::vector<int>& N_list, const GaborConfig& base,
                             const std::vector<double>& alpha_grid, double plunge_delta = 0.1,
                             const LocalizationOptions& options = {});

/// Midpoint-rule integral of a and Vol(a < alpha) over [0,1]^{2d}.
double symbol_integral(const Symbol& a, int per_axis);
double symbol_sublevel_volume(const Symbol& a, double alpha, int per_axis);

}  // namespace gtorus
