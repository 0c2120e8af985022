#pragma once

// Discrete Gabor transform on C^{N^d}, the Zak transform with parameter N,
// and the STFT of elements of S_N evaluated at arbitrary points of T_N.

#include "gtorus/common.hpp"
#include "gtorus/core.hpp"
#include "gtorus/signal.hpp"
#include "gtorus/window.hpp"

namespace gtorus {

enum class DgtMethod { Direct, Fft };

/// V_g f[k,l] = sum_m f[m] conj(g[m-k]) exp(-2 pi i l^T m / N).
/// Concurrent calls on distinct inputs are safe.
DGTCoefficients dgt(const Signal& f, const Signal& g, DgtMethod method = DgtMethod::Fft);

/// f = (N^d ||g||^2)^{-1} sum_{k,l} V[k,l] M_l T_k g.
Signal dgt_inverse(const DGTCoefficients& V, const Signal& g);

struct SumDiagnostics {
  int radius = 0;
  double tail_bound = 0.0;
};

/// Z_N g(x, xi) = sum_k g(x - N k) exp(2 pi i N k^T xi), truncated with a
/// tail bound below `tol` relative to the envelope peak.
cplx zak(const Window& g, const RVector& x, const RVector& xi, double tol = 1e-13,
         SumDiagnostics* diagnostics = nullptr);

/// V_g eps_n(x, xi) = exp(-2 pi i xi^T n) Z_N conj(g)(n - x, xi).
cplx stft_basis(std::size_t n, const RVector& x, const RVector& xi, const Window& g,
                double tol = 1e-13);
cplx stft_basis(std::size_t n, const TFPoint& p, const Window& g, double tol = 1e-13);

/// All N^d values V_g eps_n(x, xi) in one pass over the integer lattice.
CVector stft_basis_all(const RVector& x, const RVector& xi, const Window& g, double tol = 1e-13);

/// Linear extension sum_n a_n V_g eps_n(x, xi).
cplx stft(const Signal& phi, const RVector& x, const RVector& xi, const Window& g, double tol = 1e-13);
cplx stft(const Signal& phi, const TFPoint& p, const Window& g, double tol = 1e-13);

}  // namespace gtorus
