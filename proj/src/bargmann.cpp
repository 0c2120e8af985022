#include "gtorus/bargmann.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "gtorus/lattice_sum.hpp"
#include "gtorus/parallel.hpp"
#include "gtorus/theta.hpp"
#include "gtorus/window.hpp"

namespace gtorus {

namespace {

// z = z_r - i Omega k0 + i m with Re z_r = Y a_r, a_r in [-1/2, 1/2]^d.
struct Reduced {
  CVector z;
  RVector a;
  std::vector<long> k0;
  ScaledComplex factor;  // B(z) = factor * B(z_r)
  double shift;          // pi N a_r^T Y a_r
  double log_weight;     // log|factor| + shift - N phi(z) / 2, zero up to rounding
};

Reduced reduce(const CVector& z, const GaborParams& params) {
  const int d = params.dim();
  const double N = params.samples();
  const RMatrix& Y = params.imag_part();
  const RVector a = params.imag_inverse() * z.real();
  const RVector b = params.real_part() * a + z.imag();
  Reduced r;
  r.k0.resize(static_cast<std::size_t>(d));
  RVector k0(d), m(d);
  for (int i = 0; i < d; ++i) {
    k0(i) = std::round(a(i));
    m(i) = std::round(b(i));
    r.k0[static_cast<std::size_t>(i)] = static_cast<long>(k0(i));
  }
  const CVector kc = k0.cast<cplx>();
  r.z = z + kI * (params.omega() * kc) - kI * m.cast<cplx>();
  r.a = a - k0;
  const cplx quad = kc.transpose() * params.omega() * kc;
  const cplx lin = r.z.transpose() * kc;
  r.factor = ScaledComplex::exp(-kI * kPi * N * quad + 2.0 * kPi * N * lin);
  r.shift = kPi * N * r.a.dot(Y * r.a);
  r.log_weight = r.factor.logmag() + r.shift - 0.5 * N * weight_phi(z, params);
  return r;
}

// Scaled term exp(pi i t^T Omega t / N - 2 pi z_r^T t - shift).
inline cplx scaled_term(const CVector& t, const Reduced& r, const CMatrix& omega, double N) {
  const cplx quad = t.transpose() * omega * t;
  const cplx lin = r.z.transpose() * t;
  return std::exp(kI * kPi * quad / N - 2.0 * kPi * lin - r.shift);
}

// Sum over all t in Z^d binned by t mod N; entries are weighted basis values
// before the unit-modulus factor.
std::vector<cplx> binned_sum(const Reduced& r, const GaborParams& params, double tol, int* radius_out,
                             double* tail_out) {
  const int d = params.dim();
  const int N = params.samples();
  const double alpha = kPi * params.imag_min_eigenvalue() / N;
  const int radius = gaussian_lattice_radius(alpha, d, tol, 100000);
  std::vector<long> center(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) center[static_cast<std::size_t>(i)] = std::lround(-N * r.a(i));
  const IndexSpace space(d, N);
  std::vector<cplx> bins(space.size(), cplx(0.0, 0.0));
  CVector t(d);
  for_each_in_box(std::span<const long>(center), radius, [&](std::span<const long> k) {
    for (int i = 0; i < d; ++i) t(i) = static_cast<double>(k[static_cast<std::size_t>(i)]);
    bins[space.flatten_mod(k)] += scaled_term(t, r, params.omega(), N);
  });
  if (radius_out) *radius_out = radius;
  if (tail_out) *tail_out = gaussian_lattice_tail(alpha, d, radius);
  return bins;
}

}  // namespace

ScaledComplex bargmann_basis_closed_form(std::size_t n, const CVector& z, const GaborParams& params) {
  const int d = params.dim();
  const double N = params.samples();
  const IndexSpace space(d, params.samples());
  const std::vector<int> idx = space.unflatten(n);
  CVector nv(d);
  for (int i = 0; i < d; ++i) nv(i) = idx[static_cast<std::size_t>(i)];
  const cplx quad = nv.transpose() * params.omega() * nv;
  const cplx lin = z.transpose() * nv;
  const ScaledComplex pre = ScaledComplex::exp(kI * kPi * quad / N - 2.0 * kPi * lin);
  const CVector w = kI * z + params.omega() * nv / N;
  return pre * theta_eval(w, params, params.samples()).value;
}

SectionValue bargmann_basis(std::size_t n, const CVector& z, const GaborParams& params, double tol,
                            bool cross_check) {
  const int d = params.dim();
  const int N = params.samples();
  if (z.size() != d) throw Error(ErrorCode::ShapeMismatch, "section argument has wrong dimension");
  if (n >= params.basis_size()) throw Error(ErrorCode::InvalidArgument, "basis index out of range");
  const Reduced r = reduce(z, params);
  const IndexSpace space(d, N);
  const std::vector<int> idx = space.unflatten(n);

  const double alpha = kPi * N * params.imag_min_eigenvalue();
  const int radius = gaussian_lattice_radius(alpha, d, tol);
  std::vector<long> center(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) {
    center[static_cast<std::size_t>(i)] =
        std::lround(-(static_cast<double>(idx[static_cast<std::size_t>(i)]) / N + r.a(i)));
  }
  cplx sum(0.0, 0.0);
  CVector t(d);
  for_each_in_box(std::span<const long>(center), radius, [&](std::span<const long> k) {
    for (int i = 0; i < d; ++i) {
      t(i) = static_cast<double>(idx[static_cast<std::size_t>(i)]) +
             static_cast<double>(N) * static_cast<double>(k[static_cast<std::size_t>(i)]);
    }
    sum += scaled_term(t, r, params.omega(), N);
  });

  SectionValue out;
  out.raw = r.factor * ScaledComplex(r.shift, sum);
  out.weighted_logmag = out.raw.logmag() - 0.5 * N * weight_phi(z, params);
  out.weighted_mag = std::exp(out.weighted_logmag);
  out.radius = radius;
  out.tail_bound = gaussian_lattice_tail(alpha, d, radius);
  if (cross_check && out.weighted_mag > 1e-12) {
    out.closed_form_discrepancy = relative_difference(out.raw, bargmann_basis_closed_form(n, z, params));
  }
  return out;
}

SectionValue bargmann(const Signal& phi, const CVector& z, const GaborParams& params, double tol) {
  if (phi.dim() != params.dim() || phi.samples() != params.samples()) {
    throw Error(ErrorCode::ShapeMismatch, "signal does not match params (d, N)");
  }
  if (z.size() != params.dim()) throw Error(ErrorCode::ShapeMismatch, "section argument has wrong dimension");
  const Reduced r = reduce(z, params);
  int radius = 0;
  double tail = 0.0;
  const std::vector<cplx> bins = binned_sum(r, params, tol, &radius, &tail);
  cplx sum(0.0, 0.0);
  double amax = 0.0;
  for (std::size_t n = 0; n < bins.size(); ++n) {
    sum += phi[n] * bins[n];
    amax = std::max(amax, std::abs(phi[n]));
  }
  SectionValue out;
  out.raw = r.factor * ScaledComplex(r.shift, sum);
  out.weighted_logmag = out.raw.logmag() - 0.5 * params.samples() * weight_phi(z, params);
  out.weighted_mag = std::exp(out.weighted_logmag);
  out.radius = radius;
  out.tail_bound = amax * tail;
  return out;
}

CVector weighted_basis(const CVector& z, const GaborParams& params, double tol) {
  if (z.size() != params.dim()) throw Error(ErrorCode::ShapeMismatch, "section argument has wrong dimension");
  const Reduced r = reduce(z, params);
  const std::vector<cplx> bins = binned_sum(r, params, tol, nullptr, nullptr);
  const cplx unit = std::exp(r.log_weight) * r.factor.phase();
  CVector out(static_cast<Eigen::Index>(bins.size()));
  for (std::size_t n = 0; n < bins.size(); ++n) out(static_cast<Eigen::Index>(n)) = unit * bins[n];
  return out;
}

WindingResult section_zero_count(const Signal& phi, const GaborParams& params) {
  if (params.dim() != 1) throw Error(ErrorCode::InvalidArgument, "zero counting requires d = 1");
  const cplx omega = params.omega()(0, 0);
  const cplx e1 = -kI * omega;
  const cplx e2 = kI;
  auto fn = [&](cplx z) {
    CVector v(1);
    v(0) = z;
    const SectionValue s = bargmann(phi, v, params);
    return PhasePoint{s.raw.phase(), s.weighted_logmag};
  };
  WindingResult last;
  for (int attempt = 0; attempt < 5; ++attempt) {
    const cplx origin = (0.0137 + 0.211 * attempt) * e1 + (0.0291 + 0.157 * attempt) * e2;
    last = parallelogram_winding(fn, origin, e1, e2, 32 * params.samples());
    if (last.reliable) return last;
  }
  return last;
}

namespace {

// Grams on an M^{2d} grid over box coordinates (a, b) in [0,1)^{2d}, plus the
// same sum restricted to the even sub-grid.
std::pair<CMatrix, CMatrix> gram_on_grid(const GaborParams& params, int M, int threads) {
  const int d = params.dim();
  const Eigen::Index nb = static_cast<Eigen::Index>(params.basis_size());
  std::size_t inner = 1;
  for (int i = 0; i < 2 * d - 1; ++i) inner *= static_cast<std::size_t>(M);

  std::vector<CMatrix> full(static_cast<std::size_t>(M)), half(static_cast<std::size_t>(M));
  parallel_for(static_cast<std::size_t>(M), threads, [&](std::size_t row) {
    CMatrix W(static_cast<Eigen::Index>(inner), nb);
    CMatrix Wh(static_cast<Eigen::Index>(inner), nb);
    Eigen::Index even_rows = 0;
    std::vector<int> idx(static_cast<std::size_t>(2 * d));
    RVector a(d), b(d);
    for (std::size_t p = 0; p < inner; ++p) {
      idx[0] = static_cast<int>(row);
      std::size_t rem = p;
      for (int j = 2 * d - 1; j >= 1; --j) {
        idx[static_cast<std::size_t>(j)] = static_cast<int>(rem % static_cast<std::size_t>(M));
        rem /= static_cast<std::size_t>(M);
      }
      bool even = true;
      for (int j = 0; j < d; ++j) {
        a(j) = static_cast<double>(idx[static_cast<std::size_t>(j)]) / M;
        b(j) = static_cast<double>(idx[static_cast<std::size_t>(d + j)]) / M;
      }
      for (int v : idx) even = even && (v % 2 == 0);
      const CVector z = from_box_coordinates(a, b, params);
      const CVector w = weighted_basis(z, params);
      W.row(static_cast<Eigen::Index>(p)) = w.transpose();
      if (even) Wh.row(even_rows++) = w.transpose();
    }
    full[row] = W.adjoint() * W;
    half[row] = Wh.topRows(even_rows).adjoint() * Wh.topRows(even_rows);
  });

  CMatrix G = CMatrix::Zero(nb, nb), Gh = CMatrix::Zero(nb, nb);
  for (int row = 0; row < M; ++row) {
    G += full[static_cast<std::size_t>(row)];
    Gh += half[static_cast<std::size_t>(row)];
  }
  const double det = params.imag_det();
  G *= det / std::pow(static_cast<double>(M), 2 * d);
  Gh *= det / std::pow(static_cast<double>(M) / 2.0, 2 * d);
  // Entry (m, n) is sum conj(w_m) w_n.
  return {G, Gh};
}

}  // namespace

GramReport gram(const GaborParams& params, const QuadratureOptions& options) {
  if (options.oversample < 1) throw Error(ErrorCode::InvalidArgument, "oversample must be positive");
  const int d = params.dim();
  const double N = params.samples();
  int M = 2 * ((options.oversample * params.samples() + 1) / 2);
  GramReport rep;
  for (int attempt = 0;; ++attempt) {
    auto [G, Gh] = gram_on_grid(params, M, options.threads);
    const double scale = G.diagonal().real().cwiseAbs().maxCoeff();
    rep.doubling_change = (G - Gh).cwiseAbs().maxCoeff() / scale;
    rep.G = 0.5 * (G + G.adjoint());
    rep.grid_per_axis = M;
    if (rep.doubling_change <= options.rel_tol) break;
    if (attempt >= options.max_doublings) {
      throw Error(ErrorCode::QuadratureUnderResolved,
                  "Gram matrix changed by " + std::to_string(rep.doubling_change) +
                      " relative between grids " + std::to_string(M / 2) + " and " + std::to_string(M));
    }
    M *= 2;
  }

  const Eigen::Index nb = rep.G.rows();
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(rep.G, Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) throw Error(ErrorCode::EigSolverFailure, "Gram eigen-solve failed");
  const double top = eig.eigenvalues().maxCoeff();
  rep.rank = 0;
  for (Eigen::Index i = 0; i < nb; ++i) rep.rank += eig.eigenvalues()(i) >= 1e-8 * top ? 1 : 0;
  rep.c = rep.G.diagonal().real().mean();
  rep.offdiag_resid = 0.0;
  rep.diag_spread = 0.0;
  for (Eigen::Index m = 0; m < nb; ++m) {
    rep.diag_spread = std::max(rep.diag_spread, std::abs(rep.G(m, m).real() - rep.c) / rep.c);
    for (Eigen::Index n = 0; n < nb; ++n) {
      if (m != n) rep.offdiag_resid = std::max(rep.offdiag_resid, std::abs(rep.G(m, n)) / rep.c);
    }
  }
  const double det = params.imag_det();
  rep.c_norm_identity = gaussian_window_norm_sq(params) * det / std::pow(N, d);
  rep.c_closed_form = std::pow(2.0, d / 2.0) * std::pow(N, d / 2.0) / std::sqrt(det);
  return rep;
}

TFPoint density_grid_point(const DensityReport& report, const GaborParams& params, std::size_t flat) {
  const int d = params.dim();
  const double N = params.samples();
  TFPoint p{RVector(d), RVector(d)};
  for (int j = 2 * d - 1; j >= 0; --j) {
    const int M = j < d ? report.grid_x : report.grid_xi;
    const std::size_t i = flat % static_cast<std::size_t>(M);
    flat /= static_cast<std::size_t>(M);
    if (j < d) {
      p.x(j) = N * static_cast<double>(i) / M;
    } else {
      p.xi(j - d) = static_cast<double>(i) / M;
    }
  }
  return p;
}

DensityReport bergman_density(const GaborParams& params, int oversample, int threads) {
  if (oversample < 1) throw Error(ErrorCode::InvalidArgument, "oversample must be positive");
  const int d = params.dim();
  const double N = params.samples();
  DensityReport rep;
  rep.grid_x = oversample * params.samples();
  rep.grid_xi = oversample * params.samples();
  std::size_t total = 1;
  for (int i = 0; i < d; ++i) total *= static_cast<std::size_t>(rep.grid_x) * static_cast<std::size_t>(rep.grid_xi);
  rep.rho.assign(total, 0.0);
  const double hnorm = gaussian_window_norm_sq(params);

  const std::size_t chunks = static_cast<std::size_t>(rep.grid_x);
  const std::size_t per_chunk = total / chunks;
  parallel_for(chunks, threads, [&](std::size_t c) {
    for (std::size_t q = 0; q < per_chunk; ++q) {
      const std::size_t flat = c * per_chunk + q;
      const TFPoint p = density_grid_point(rep, params, flat);
      const CVector w = weighted_basis(to_complex(p, params).z, params);
      rep.rho[flat] = w.squaredNorm() / hnorm;
    }
  });

  double sum = 0.0;
  rep.min = rep.rho.front();
  rep.max = rep.rho.front();
  for (double v : rep.rho) {
    sum += v;
    rep.min = std::min(rep.min, v);
    rep.max = std::max(rep.max, v);
  }
  rep.mean = sum / static_cast<double>(total);
  double cell = 1.0;
  for (int i = 0; i < d; ++i) cell *= (N / rep.grid_x) * (1.0 / rep.grid_xi);
  rep.integral = sum * cell;
  rep.flatness = (rep.max - rep.min) / rep.mean;
  return rep;
}

}  // namespace gtorus
