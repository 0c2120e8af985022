#include "gtorus/localization.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "gtorus/bargmann.hpp"
#include "gtorus/parallel.hpp"
#include "gtorus/signal.hpp"
#include "gtorus/transforms.hpp"

namespace gtorus {

namespace {

struct Grid {
  int d;
  int N;
  int mx;
  int mxi;

  std::size_t total() const {
    std::size_t t = 1;
    for (int i = 0; i < d; ++i) t *= static_cast<std::size_t>(mx) * static_cast<std::size_t>(mxi);
    return t;
  }
  std::size_t chunk_count() const { return static_cast<std::size_t>(mx); }
  std::size_t chunk_size() const { return total() / chunk_count(); }

  // x axes slowest, then xi axes.
  TFPoint point(std::size_t flat) const {
    TFPoint p{RVector(d), RVector(d)};
    for (int j = 2 * d - 1; j >= 0; --j) {
      const int m = j < d ? mx : mxi;
      const auto i = static_cast<double>(flat % static_cast<std::size_t>(m));
      flat /= static_cast<std::size_t>(m);
      if (j < d) {
        p.x(j) = N * i / m;
      } else {
        p.xi(j - d) = i / m;
      }
    }
    return p;
  }
};

cplx symbol_at(const Symbol& a, const TFPoint& p, int N) { return a(p.x / static_cast<double>(N), p.xi); }

// sum_p w_p conj(rows_p)^T rows_p accumulated chunk by chunk in index order.
template <class RowFn>
CMatrix weighted_gram(const Grid& grid, Eigen::Index nb, int threads, const Symbol& a, RowFn&& row_fn) {
  std::vector<CMatrix> parts(grid.chunk_count());
  parallel_for(grid.chunk_count(), threads, [&](std::size_t c) {
    const std::size_t n = grid.chunk_size();
    CMatrix V(static_cast<Eigen::Index>(n), nb);
    CMatrix WV(static_cast<Eigen::Index>(n), nb);
    for (std::size_t q = 0; q < n; ++q) {
      const TFPoint p = grid.point(c * n + q);
      const CVector row = row_fn(p);
      V.row(static_cast<Eigen::Index>(q)) = row.transpose();
      WV.row(static_cast<Eigen::Index>(q)) = symbol_at(a, p, grid.N) * row.transpose();
    }
    parts[c] = V.adjoint() * WV;
  });
  CMatrix M = CMatrix::Zero(nb, nb);
  for (const CMatrix& p : parts) M += p;
  return M;
}

CMatrix restriction_on_grid(const Symbol& a, const Window& window, const GaborParams& params, const Grid& grid,
                            int threads) {
  const Eigen::Index nb = static_cast<Eigen::Index>(params.basis_size());
  CMatrix M = weighted_gram(grid, nb, threads, a, [&](const TFPoint& p) { return stft_basis_all(p.x, p.xi, window); });
  double cell = 1.0;
  for (int i = 0; i < params.dim(); ++i) cell *= (static_cast<double>(params.samples()) / grid.mx) / grid.mxi;
  return M * (cell / l2_norm_sq(window));
}

}  // namespace

RestrictionReport restriction_matrix(const Symbol& a, const Window& window, const GaborParams& params,
                                     const LocalizationOptions& options) {
  if (a.dim() != params.dim()) throw Error(ErrorCode::ShapeMismatch, "symbol dimension does not match params");
  if (window.dim() != params.dim() || window.samples_per_axis() != params.samples()) {
    throw Error(ErrorCode::ShapeMismatch, "window does not match params (d, N)");
  }
  if (options.x_per_unit < 1 || options.xi_factor < 1) {
    throw Error(ErrorCode::InvalidArgument, "grid densities must be positive");
  }
  const double tol = a.is_discontinuous() ? options.box_trace_tol : options.trace_tol;
  Grid grid{params.dim(), params.samples(), options.x_per_unit * params.samples(), options.xi_factor * params.samples()};

  RestrictionReport rep;
  CMatrix M = restriction_on_grid(a, window, params, grid, options.threads);
  for (int level = 1; level <= options.max_doublings + 1; ++level) {
    Grid finer{grid.d, grid.N, 2 * grid.mx, 2 * grid.mxi};
    CMatrix Mf = restriction_on_grid(a, window, params, finer, options.threads);
    const cplx t0 = M.trace();
    const cplx t1 = Mf.trace();
    // |Tr R| <= sup|a| N^d; measuring against that keeps zero-mean symbols meaningful.
    const double ref = std::max(std::abs(t1), a.bound() * static_cast<double>(params.basis_size()));
    rep.trace_change = std::abs(t1 - t0) / std::max(ref, 1e-300);
    rep.doublings = level;
    grid = finer;
    M = std::move(Mf);
    if (rep.trace_change <= tol || ref == 0.0) break;
    if (level == options.max_doublings + 1) {
      throw Error(ErrorCode::QuadratureUnderResolved,
                  "restriction trace changed by " + std::to_string(rep.trace_change) + " relative at grid " +
                      std::to_string(grid.mx) + "x" + std::to_string(grid.mxi) + " per axis");
    }
  }
  rep.grid_x = grid.mx;
  rep.grid_xi = grid.mxi;
  const double scale = std::max(M.cwiseAbs().maxCoeff(), 1e-300);
  rep.asymmetry = (M - M.adjoint()).cwiseAbs().maxCoeff();
  if (a.is_real()) {
    if (rep.asymmetry > std::max(tol, 1e-10) * scale) {
      throw Error(ErrorCode::NonHermitianBeyondTolerance,
                  "restriction matrix asymmetry " + std::to_string(rep.asymmetry) + " for a real symbol");
    }
    M = 0.5 * (M + M.adjoint()).eval();
  }
  rep.M = std::move(M);
  return rep;
}

double toeplitz_scalar(const GaborParams& params) {
  return std::pow(static_cast<double>(params.samples()), params.dim()) /
         (params.imag_det() * gaussian_window_norm_sq(params));
}

CMatrix toeplitz_matrix(const Symbol& a, const GaborParams& params, int grid_x, int grid_xi, int threads) {
  const Grid grid{params.dim(), params.samples(), grid_x, grid_xi};
  const IndexSpace space(params.dim(), params.samples());
  const Eigen::Index nb = static_cast<Eigen::Index>(space.size());
  CMatrix T = weighted_gram(grid, nb, threads, a, [&](const TFPoint& p) {
    const CVector w = weighted_basis(to_complex(p, params).z, params);
    CVector r(nb);
    for (Eigen::Index n = 0; n < nb; ++n) r(n) = w(static_cast<Eigen::Index>(space.negate(static_cast<std::size_t>(n))));
    return r;
  });
  double cell = params.imag_det();
  for (int i = 0; i < params.dim(); ++i) cell /= static_cast<double>(grid_x) * grid_xi;
  return T * cell;
}

SpectrumReport spectrum(const CMatrix& M, const std::vector<double>& alpha_grid, double herm_tol,
                        double count_tol) {
  if (M.rows() != M.cols()) throw Error(ErrorCode::ShapeMismatch, "spectrum needs a square matrix");
  SpectrumReport rep;
  const double scale = M.size() ? M.cwiseAbs().maxCoeff() : 0.0;
  const double asym = M.size() ? (M - M.adjoint()).cwiseAbs().maxCoeff() : 0.0;
  rep.hermitian = asym <= herm_tol * std::max(scale, 1e-300);
  rep.trace = M.trace().real();
  if (rep.hermitian) {
    const CMatrix H = 0.5 * (M + M.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(H, Eigen::EigenvaluesOnly);
    if (eig.info() != Eigen::Success) throw Error(ErrorCode::EigSolverFailure, "Hermitian eigen-solve failed");
    rep.eigenvalues.assign(eig.eigenvalues().data(), eig.eigenvalues().data() + eig.eigenvalues().size());
  } else {
    rep.non_normal_warning = true;
    Eigen::JacobiSVD<CMatrix> svd(M);
    rep.eigenvalues.assign(svd.singularValues().data(), svd.singularValues().data() + svd.singularValues().size());
  }
  std::sort(rep.eigenvalues.begin(), rep.eigenvalues.end());
  double top = 1.0;
  for (double v : rep.eigenvalues) top = std::max(top, std::abs(v));
  const double band = count_tol * top;
  for (double alpha : alpha_grid) {
    CountSample c;
    c.alpha = alpha;
    for (double v : rep.eigenvalues) {
      c.below += v < alpha - band ? 1 : 0;
      c.above += v > alpha + band ? 1 : 0;
    }
    rep.counting.push_back(c);
  }
  return rep;
}

double plunge_fraction(const std::vector<double>& eigenvalues, double delta, double top) {
  if (eigenvalues.empty()) return 0.0;
  std::size_t inside = 0;
  for (double v : eigenvalues) inside += (v > delta && v < top - delta) ? 1 : 0;
  return static_cast<double>(inside) / static_cast<double>(eigenvalues.size());
}

std::vector<double> alpha_range(double from, double to, double step) {
  if (!(step > 0.0) || to < from) throw Error(ErrorCode::InvalidArgument, "alpha grid needs step > 0 and from <= to");
  std::vector<double> out;
  const auto count = static_cast<long>(std::floor((to - from) / step + 1e-9));
  for (long i = 0; i <= count; ++i) out.push_back(from + static_cast<double>(i) * step);
  return out;
}

namespace {

template <class Fn>
void for_each_midpoint(int d, int per_axis, Fn&& fn) {
  std::size_t total = 1;
  for (int i = 0; i < 2 * d; ++i) total *= static_cast<std::size_t>(per_axis);
  RVector x(d), xi(d);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rem = flat;
    for (int j = 2 * d - 1; j >= 0; --j) {
      const double t = (static_cast<double>(rem % static_cast<std::size_t>(per_axis)) + 0.5) / per_axis;
      rem /= static_cast<std::size_t>(per_axis);
      if (j < d) {
        x(j) = t;
      } else {
        xi(j - d) = t;
      }
    }
    fn(x, xi);
  }
}

}  // namespace

double symbol_integral(const Symbol& a, int per_axis) {
  double sum = 0.0;
  std::size_t count = 0;
  for_each_midpoint(a.dim(), per_axis, [&](const RVector& x, const RVector& xi) {
    sum += a(x, xi).real();
    ++count;
  });
  return sum / static_cast<double>(count);
}

double symbol_sublevel_volume(const Symbol& a, double alpha, int per_axis) {
  std::size_t below = 0, count = 0;
  for_each_midpoint(a.dim(), per_axis, [&](const RVector& x, const RVector& xi) {
    below += a(x, xi).real() < alpha ? 1 : 0;
    ++count;
  });
  return static_cast<double>(below) / static_cast<double>(count);
}

SweepReport asymptotic_sweep(const Symbol& a, const std::vector<int>& N_list, const GaborConfig& base,
                             const std::vector<double>& alpha_grid, double plunge_delta,
                             const LocalizationOptions& options) {
  if (N_list.empty()) throw Error(ErrorCode::InvalidArgument, "N list is empty");
  if (!a.is_real()) throw Error(ErrorCode::InvalidArgument, "eigenvalue counting needs a real symbol");
  const std::vector<double> alphas = alpha_grid.empty() ? std::vector<double>{0.5} : alpha_grid;
  const int d = base.d;
  const int per_axis = d == 1 ? 512 : (d == 2 ? 48 : 12);
  const double target_integral = symbol_integral(a, per_axis);
  std::vector<double> target_volume;
  for (double alpha : alphas) target_volume.push_back(symbol_sublevel_volume(a, alpha, per_axis));

  SweepReport rep;
  for (int N : N_list) {
    const GaborParams params = validate({d, N, base.omega});
    const RestrictionReport R = restriction_matrix(a, Window::gaussian(params), params, options);
    const SpectrumReport S = spectrum(R.M, alphas);
    const double nd = std::pow(static_cast<double>(N), d);
    const double plunge = plunge_fraction(S.eigenvalues, plunge_delta, a.bound());
    for (std::size_t i = 0; i < alphas.size(); ++i) {
      SweepRow row;
      row.N = N;
      row.trace_norm = S.trace / nd;
      row.target_integral = target_integral;
      row.alpha = alphas[i];
      row.count_norm = static_cast<double>(S.counting[i].below) / nd;
      row.target_volume = target_volume[i];
      row.plunge_fraction = plunge;
      rep.rows.push_back(row);
    }
    rep.closed_form_constants.emplace_back(N, std::pow(2.0, -d / 2.0) * std::pow(nd, -1.5) / std::sqrt(params.imag_det()));
    rep.trace_changes.emplace_back(N, R.trace_change);
  }
  return rep;
}

}  // namespace gtorus
