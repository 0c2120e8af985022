#pragma once

#include <functional>
#include <optional>

#include "gtorus/common.hpp"
#include "gtorus/core.hpp"
#include "gtorus/signal.hpp"

namespace gtorus {

/// |f(t)| <= C exp(-alpha |t|^2) for all t in R^d.
struct DecayEnvelope {
  double C = 1.0;
  double alpha = 0.0;
};

/// A window on R^d (Gaussian chirp or decay-bounded callable) or an
/// explicitly sampled window on I_N.
class Window {
 public:
  enum class Kind { Gaussian, ExplicitSamples, Callable };
  using Function = std::function<cplx(const RVector&)>;

  /// h_0^{Omega/N}(t) = conj(exp(pi i t^T (Omega/N) t)).
  static Window gaussian(const GaborParams& params);
  /// exp(pi i t^T A t) with A symmetric and Im A positive definite.
  static Window gaussian_chirp(const CMatrix& A, int N);
  static Window samples(Signal h);
  /// Throws Error(NoDecay) when no envelope is given.
  static Window callable(int d, int N, Function f, std::optional<DecayEnvelope> envelope);

  Kind kind() const noexcept { return kind_; }
  int dim() const noexcept { return d_; }
  int samples_per_axis() const noexcept { return N_; }

  /// Pointwise value on R^d. Throws Error(NoDecay) for sampled windows.
  cplx operator()(const RVector& t) const;
  /// Throws Error(NoDecay) for sampled windows.
  DecayEnvelope envelope() const;
  /// Chirp matrix A for Gaussian windows.
  const CMatrix& chirp() const;
  /// The sampled values for ExplicitSamples windows.
  const Signal& sampled() const;

  Window conjugated() const;

 private:
  Window() = default;

  Kind kind_ = Kind::Gaussian;
  int d_ = 1;
  int N_ = 1;
  CMatrix chirp_;
  Function fn_;
  std::optional<DecayEnvelope> envelope_;
  std::optional<Signal> samples_;
};

struct PeriodizeDiagnostics {
  int radius = 0;
  double tail_bound = 0.0;
};

/// h_N[n] = sum_{k in Z^d} h(n - kN), truncated so the Gaussian tail bound is
/// below `tol` relative to the envelope peak. Sampled windows are returned as is.
Signal periodize_sample(const Window& window, double tol = 1e-14,
                        PeriodizeDiagnostics* diagnostics = nullptr);

/// ||g||^2_{L^2(R^d)}; closed form for Gaussians, quadrature otherwise.
double l2_norm_sq(const Window& g);
/// Trapezoid quadrature of |g|^2 on a truncated box.
double l2_norm_sq_quadrature(const Window& g, double h = 0.05);
/// Closed form (N/2)^{d/2} det(Im Omega)^{-1/2} for h_0^{Omega/N}.
double gaussian_window_norm_sq(const GaborParams& params);
/// <g1, g2>_{L^2} for two Gaussian chirps (closed form).
cplx l2_inner(const Window& g1, const Window& g2);

}  // namespace gtorus
