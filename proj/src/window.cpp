#include "gtorus/window.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "gtorus/lattice_sum.hpp"

namespace gtorus {

namespace {

double min_eigenvalue(const RMatrix& m) {
  Eigen::SelfAdjointEigenSolver<RMatrix> eig(m, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff();
}

// Principal branch of det(M)^{-1/2} for complex symmetric M with positive
// definite real part; every eigenvalue then has positive real part.
cplx det_inv_sqrt(const CMatrix& m) {
  Eigen::ComplexEigenSolver<CMatrix> eig(m, false);
  cplx r = 1.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) r /= std::sqrt(eig.eigenvalues()[i]);
  return r;
}

}  // namespace

Window Window::gaussian(const GaborParams& params) {
  return gaussian_chirp(-params.omega().conjugate() / static_cast<double>(params.samples()),
                        params.samples());
}

Window Window::gaussian_chirp(const CMatrix& A, int N) {
  if (A.rows() != A.cols() || A.rows() < 1) throw Error(ErrorCode::InvalidArgument, "chirp matrix must be square");
  const RMatrix im = 0.5 * (A.imag() + A.imag().transpose());
  const double mu = min_eigenvalue(im);
  if (!(mu > 0.0)) throw Error(ErrorCode::NotPositiveDefinite, "Im A of a Gaussian window must be positive definite");
  Window w;
  w.kind_ = Kind::Gaussian;
  w.d_ = static_cast<int>(A.rows());
  w.N_ = N;
  w.chirp_ = 0.5 * (A + A.transpose());
  w.envelope_ = DecayEnvelope{1.0, kPi * mu};
  return w;
}

Window Window::samples(Signal h) {
  if (h.norm_sq() == 0.0) throw Error(ErrorCode::ZeroWindow, "sampled window has zero S_N norm");
  Window w;
  w.kind_ = Kind::ExplicitSamples;
  w.d_ = h.dim();
  w.N_ = h.samples();
  w.samples_ = std::move(h);
  return w;
}

Window Window::callable(int d, int N, Function f, std::optional<DecayEnvelope> envelope) {
  if (!envelope) throw Error(ErrorCode::NoDecay, "callable window supplied without a decay envelope");
  if (!(envelope->alpha > 0.0) || !(envelope->C > 0.0)) {
    throw Error(ErrorCode::NoDecay, "decay envelope needs C > 0 and alpha > 0");
  }
  Window w;
  w.kind_ = Kind::Callable;
  w.d_ = d;
  w.N_ = N;
  w.fn_ = std::move(f);
  w.envelope_ = envelope;
  return w;
}

cplx Window::operator()(const RVector& t) const {
  switch (kind_) {
    case Kind::Gaussian: {
      const cplx q = t.cast<cplx>().dot(chirp_ * t.cast<cplx>());
      return std::exp(kI * kPi * q);
    }
    case Kind::Callable:
      return fn_(t);
    case Kind::ExplicitSamples:
      break;
  }
  throw Error(ErrorCode::NoDecay, "sampled window has no continuous form");
}

DecayEnvelope Window::envelope() const {
  if (!envelope_) throw Error(ErrorCode::NoDecay, "sampled window has no decay envelope");
  return *envelope_;
}

const CMatrix& Window::chirp() const {
  if (kind_ != Kind::Gaussian) throw Error(ErrorCode::InvalidArgument, "window is not a Gaussian chirp");
  return chirp_;
}

const Signal& Window::sampled() const {
  if (!samples_) throw Error(ErrorCode::InvalidArgument, "window is not explicitly sampled");
  return *samples_;
}

Window Window::conjugated() const {
  switch (kind_) {
    case Kind::Gaussian:
      return gaussian_chirp(-chirp_.conjugate(), N_);
    case Kind::Callable: {
      Function f = fn_;
      return callable(d_, N_, [f](const RVector& t) { return std::conj(f(t)); }, envelope_);
    }
    case Kind::ExplicitSamples: {
      Signal s = *samples_;
      for (cplx& c : s.coeffs()) c = std::conj(c);
      return samples(std::move(s));
    }
  }
  return *this;
}

Signal periodize_sample(const Window& window, double tol, PeriodizeDiagnostics* diagnostics) {
  if (window.kind() == Window::Kind::ExplicitSamples) {
    if (diagnostics) *diagnostics = {};
    return window.sampled();
  }
  const int d = window.dim();
  const int N = window.samples_per_axis();
  const DecayEnvelope env = window.envelope();
  const int radius = gaussian_lattice_radius(env.alpha * N * N, d, tol);

  Signal out(d, N);
  const IndexSpace space(d, N);
  RVector t(d);
  std::vector<long> center(d, 0);
  for (std::size_t n = 0; n < space.size(); ++n) {
    const std::vector<int> idx = space.unflatten(n);
    for (int i = 0; i < d; ++i) center[i] = std::lround(static_cast<double>(idx[i]) / N);
    cplx acc = 0.0;
    for_each_in_box(std::span<const long>(center), radius, [&](std::span<const long> k) {
      for (int i = 0; i < d; ++i) t[i] = idx[i] - static_cast<double>(k[i]) * N;
      acc += window(t);
    });
    out[n] = acc;
  }
  if (out.norm_sq() == 0.0) throw Error(ErrorCode::ZeroWindow, "periodized window vanishes");
  if (diagnostics) *diagnostics = {radius, gaussian_lattice_tail(env.alpha * N * N, d, radius)};
  return out;
}

double gaussian_window_norm_sq(const GaborParams& params) {
  const double N = params.samples();
  return std::pow(N / 2.0, params.dim() / 2.0) / std::sqrt(params.imag_det());
}

double l2_norm_sq(const Window& g) {
  switch (g.kind()) {
    case Window::Kind::Gaussian: {
      const RMatrix two_im = g.chirp().imag() * 2.0;
      return 1.0 / std::sqrt(two_im.determinant());
    }
    case Window::Kind::Callable:
      return l2_norm_sq_quadrature(g);
    case Window::Kind::ExplicitSamples:
      break;
  }
  throw Error(ErrorCode::NoDecay, "sampled window has no L^2(R^d) norm");
}

double l2_norm_sq_quadrature(const Window& g, double h) {
  const DecayEnvelope env = g.envelope();
  const int d = g.dim();
  // |g|^2 <= C^2 exp(-2 alpha |t|^2); cut where that drops below 1e-20 C^2.
  const double half_width = std::sqrt(46.0 / (2.0 * env.alpha));
  const long steps = static_cast<long>(std::ceil(half_width / h));
  std::vector<long> center(d, 0);
  RVector t(d);
  double acc = 0.0;
  for_each_in_box(std::span<const long>(center), static_cast<int>(steps), [&](std::span<const long> k) {
    for (int i = 0; i < d; ++i) t[i] = static_cast<double>(k[i]) * h;
    acc += std::norm(g(t));
  });
  return acc * std::pow(h, d);
}

cplx l2_inner(const Window& g1, const Window& g2) {
  if (g1.kind() != Window::Kind::Gaussian || g2.kind() != Window::Kind::Gaussian) {
    throw Error(ErrorCode::InvalidArgument, "closed-form inner product needs Gaussian windows");
  }
  // int exp(pi i t^T (A1 - conj A2) t) dt = det(-i (A1 - conj A2))^{-1/2}
  const CMatrix m = -kI * (g1.chirp() - g2.chirp().conjugate());
  return det_inv_sqrt(m);
}

}  // namespace gtorus
