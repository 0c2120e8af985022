#include "gtorus/transforms.hpp"

#include <cmath>
#include <mutex>
#include <sstream>

#include <fftw3.h>

#include "gtorus/lattice_sum.hpp"

namespace gtorus {

namespace {

// The FFTW planner is not re-entrant; execution on distinct arrays is.
std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

class FftPlan {
 public:
  FftPlan(int d, int N, int sign) : size_(IndexSpace(d, N).size()) {
    in_ = fftw_alloc_complex(size_);
    out_ = fftw_alloc_complex(size_);
    std::vector<int> dims(d, N);
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    plan_ = fftw_plan_dft(d, dims.data(), in_, out_, sign, FFTW_ESTIMATE);
  }
  ~FftPlan() {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    fftw_destroy_plan(plan_);
    fftw_free(in_);
    fftw_free(out_);
  }
  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;

  cplx* input() { return reinterpret_cast<cplx*>(in_); }
  const cplx* output() const { return reinterpret_cast<const cplx*>(out_); }
  void execute() { fftw_execute(plan_); }

 private:
  std::size_t size_;
  fftw_complex* in_ = nullptr;
  fftw_complex* out_ = nullptr;
  fftw_plan plan_ = nullptr;
};

void check_shapes(const Signal& f, const Signal& g) {
  if (f.dim() != g.dim() || f.samples() != g.samples()) {
    std::ostringstream msg;
    msg << "signal shape (d=" << f.dim() << ", N=" << f.samples() << ") differs from window shape (d="
        << g.dim() << ", N=" << g.samples() << ")";
    throw Error(ErrorCode::ShapeMismatch, msg.str());
  }
}

DGTCoefficients dgt_direct(const Signal& f, const Signal& g) {
  const int d = f.dim();
  const int N = f.samples();
  const IndexSpace space(d, N);
  const std::size_t M = space.size();
  std::vector<std::vector<int>> idx(M);
  for (std::size_t m = 0; m < M; ++m) idx[m] = space.unflatten(m);
  std::vector<cplx> roots(N);
  for (int j = 0; j < N; ++j) roots[j] = std::polar(1.0, -2.0 * kPi * j / N);

  DGTCoefficients V{d, N, std::vector<cplx>(M * M)};
  for (std::size_t k = 0; k < M; ++k) {
    for (std::size_t l = 0; l < M; ++l) {
      cplx acc = 0.0;
      for (std::size_t m = 0; m < M; ++m) {
        long dot = 0;
        for (int i = 0; i < d; ++i) dot += static_cast<long>(idx[l][i]) * idx[m][i];
        acc += f[m] * std::conj(g[space.difference(m, k)]) * roots[dot % N];
      }
      V.at(k, l) = acc;
    }
  }
  return V;
}

DGTCoefficients dgt_fft(const Signal& f, const Signal& g) {
  const int d = f.dim();
  const int N = f.samples();
  const IndexSpace space(d, N);
  const std::size_t M = space.size();
  DGTCoefficients V{d, N, std::vector<cplx>(M * M)};
  FftPlan plan(d, N, FFTW_FORWARD);
  for (std::size_t k = 0; k < M; ++k) {
    cplx* in = plan.input();
    for (std::size_t m = 0; m < M; ++m) in[m] = f[m] * std::conj(g[space.difference(m, k)]);
    plan.execute();
    std::copy(plan.output(), plan.output() + M, V.values.begin() + static_cast<std::ptrdiff_t>(k * M));
  }
  return V;
}

}  // namespace

DGTCoefficients dgt(const Signal& f, const Signal& g, DgtMethod method) {
  check_shapes(f, g);
  return method == DgtMethod::Direct ? dgt_direct(f, g) : dgt_fft(f, g);
}

Signal dgt_inverse(const DGTCoefficients& V, const Signal& g) {
  if (V.d != g.dim() || V.N != g.samples() || V.values.size() != g.size() * g.size()) {
    throw Error(ErrorCode::ShapeMismatch, "coefficient array does not match the window shape");
  }
  const double gnorm = g.norm_sq();
  if (gnorm == 0.0) throw Error(ErrorCode::ZeroWindow, "window has zero norm");
  const IndexSpace space(g.dim(), g.samples());
  const std::size_t M = space.size();
  FftPlan plan(g.dim(), g.samples(), FFTW_BACKWARD);
  std::vector<cplx> acc(M, 0.0);
  for (std::size_t k = 0; k < M; ++k) {
    std::copy(V.values.begin() + static_cast<std::ptrdiff_t>(k * M),
              V.values.begin() + static_cast<std::ptrdiff_t>((k + 1) * M), plan.input());
    plan.execute();
    const cplx* synth = plan.output();
    for (std::size_t m = 0; m < M; ++m) acc[m] += g[space.difference(m, k)] * synth[m];
  }
  const double scale = 1.0 / (static_cast<double>(M) * gnorm);
  for (cplx& c : acc) c *= scale;
  return Signal(g.dim(), g.samples(), std::move(acc));
}

cplx zak(const Window& g, const RVector& x, const RVector& xi, double tol, SumDiagnostics* diagnostics) {
  const int d = g.dim();
  if (x.size() != d || xi.size() != d) throw Error(ErrorCode::ShapeMismatch, "point dimension differs from window dimension");
  const int N = g.samples_per_axis();
  const DecayEnvelope env = g.envelope();
  const double alpha = env.alpha * N * N;
  const int radius = gaussian_lattice_radius(alpha, d, tol);
  std::vector<long> center(d);
  for (int i = 0; i < d; ++i) center[i] = std::lround(x[i] / N);
  RVector t(d);
  cplx acc = 0.0;
  for_each_in_box(std::span<const long>(center), radius, [&](std::span<const long> k) {
    double phase = 0.0;
    for (int i = 0; i < d; ++i) {
      t[i] = x[i] - static_cast<double>(N * k[i]);
      phase += static_cast<double>(k[i]) * xi[i];
    }
    acc += g(t) * std::polar(1.0, 2.0 * kPi * N * phase);
  });
  if (diagnostics) *diagnostics = {radius, env.C * gaussian_lattice_tail(alpha, d, radius)};
  return acc;
}

cplx stft_basis(std::size_t n, const RVector& x, const RVector& xi, const Window& g, double tol) {
  const IndexSpace space(g.dim(), g.samples_per_axis());
  const std::vector<int> idx = space.unflatten(n);
  RVector shift(g.dim());
  double phase = 0.0;
  for (int i = 0; i < g.dim(); ++i) {
    shift[i] = idx[i] - x[i];
    phase += xi[i] * idx[i];
  }
  return std::polar(1.0, -2.0 * kPi * phase) * zak(g.conjugated(), shift, xi, tol);
}

cplx stft_basis(std::size_t n, const TFPoint& p, const Window& g, double tol) {
  return stft_basis(n, p.x, p.xi, g, tol);
}

CVector stft_basis_all(const RVector& x, const RVector& xi, const Window& g, double tol) {
  const int d = g.dim();
  if (x.size() != d || xi.size() != d) throw Error(ErrorCode::ShapeMismatch, "point dimension differs from window dimension");
  const int N = g.samples_per_axis();
  const IndexSpace space(d, N);
  const DecayEnvelope env = g.envelope();
  // Terms conj(g(t - x)) over t in Z^d, bounded by C exp(-alpha |t - x|^2).
  const int radius = gaussian_lattice_radius(env.alpha, d, tol);
  std::vector<long> center(d);
  for (int i = 0; i < d; ++i) center[i] = std::lround(x[i]);
  CVector out = CVector::Zero(static_cast<Eigen::Index>(space.size()));
  RVector u(d);
  for_each_in_box(std::span<const long>(center), radius, [&](std::span<const long> t) {
    double phase = 0.0;
    for (int i = 0; i < d; ++i) {
      u[i] = static_cast<double>(t[i]) - x[i];
      phase += xi[i] * static_cast<double>(t[i]);
    }
    out[static_cast<Eigen::Index>(space.flatten_mod(t))] +=
        std::conj(g(u)) * std::polar(1.0, -2.0 * kPi * phase);
  });
  return out;
}

cplx stft(const Signal& phi, const RVector& x, const RVector& xi, const Window& g, double tol) {
  if (phi.dim() != g.dim() || phi.samples() != g.samples_per_axis()) {
    throw Error(ErrorCode::ShapeMismatch, "signal and window shapes differ");
  }
  const CVector basis = stft_basis_all(x, xi, g, tol);
  cplx acc = 0.0;
  for (std::size_t n = 0; n < phi.size(); ++n) acc += phi[n] * basis[static_cast<Eigen::Index>(n)];
  return acc;
}

cplx stft(const Signal& phi, const TFPoint& p, const Window& g, double tol) {
  return stft(phi, p.x, p.xi, g, tol);
}

}  // namespace gtorus
