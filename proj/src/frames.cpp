#include "gtorus/frames.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

#include <Eigen/SVD>

#include "gtorus/parallel.hpp"
#include "gtorus/signal.hpp"
#include "gtorus/theta.hpp"
#include "gtorus/transforms.hpp"

namespace gtorus {

namespace {

ComplexPoint sample_image(std::size_t k, std::size_t l, const GaborParams& params) {
  const IndexSpace space(params.dim(), params.samples());
  const std::vector<int> kk = space.unflatten(k);
  const std::vector<int> ll = space.unflatten(l);
  TFPoint p{RVector(params.dim()), RVector(params.dim())};
  for (int i = 0; i < params.dim(); ++i) {
    p.x(i) = kk[static_cast<std::size_t>(i)];
    p.xi(i) = static_cast<double>(ll[static_cast<std::size_t>(i)]) / params.samples();
  }
  return to_complex(p, params);
}

// Row j of the analysis matrix: g[n - k] exp(2 pi i l.n / N).
CMatrix analysis_rows(const std::vector<std::pair<std::size_t, std::size_t>>& samples, const Signal& g,
                      const GaborParams& params) {
  const IndexSpace space(params.dim(), params.samples());
  const Eigen::Index nb = static_cast<Eigen::Index>(space.size());
  CMatrix M(static_cast<Eigen::Index>(samples.size()), nb);
  const double N = params.samples();
  for (std::size_t j = 0; j < samples.size(); ++j) {
    const auto [k, l] = samples[j];
    const std::vector<int> ll = space.unflatten(l);
    for (Eigen::Index n = 0; n < nb; ++n) {
      const std::vector<int> nn = space.unflatten(static_cast<std::size_t>(n));
      long dot = 0;
      for (std::size_t i = 0; i < nn.size(); ++i) dot += static_cast<long>(ll[i]) * nn[i];
      const double phase = 2.0 * kPi * static_cast<double>(dot % params.samples()) / N;
      M(static_cast<Eigen::Index>(j), n) = g[space.difference(static_cast<std::size_t>(n), k)] * std::polar(1.0, phase);
    }
  }
  return M;
}

std::pair<double, double> bounds_from_matrix(const CMatrix& M) {
  const Eigen::JacobiSVD<CMatrix> svd(M);
  const RVector s = svd.singularValues();
  const double top = s.size() > 0 ? s(0) : 0.0;
  double bottom = 0.0;
  if (M.rows() >= M.cols() && s.size() == M.cols()) bottom = s(s.size() - 1);
  return {bottom * bottom, top * top};
}

FrameReport finish_report(std::size_t K, std::pair<double, double> ab, double tau,
                          const GaborParams& params) {
  FrameReport rep;
  rep.K = K;
  rep.A = ab.first;
  rep.B = ab.second;
  rep.is_frame = rep.A > tau * rep.B;
  rep.guarantees = counting_guarantees(K, params);
  return rep;
}

}  // namespace

PointSet PointSet::from_samples(const GaborParams& params,
                                std::vector<std::pair<std::size_t, std::size_t>> samples) {
  const std::size_t side = params.basis_size();
  PointSet D;
  D.d = params.dim();
  D.N = params.samples();
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& [k, l] : samples) {
    if (k >= side || l >= side) throw Error(ErrorCode::InvalidArgument, "sample index outside I_N");
    if (!seen.insert({k, l}).second) D.distinct = false;
    D.images.push_back(sample_image(k, l, params));
  }
  D.samples = std::move(samples);
  return D;
}

PointSet PointSet::from_flat(const GaborParams& params, const std::vector<std::size_t>& flat) {
  const std::size_t side = params.basis_size();
  std::vector<std::pair<std::size_t, std::size_t>> s;
  s.reserve(flat.size());
  for (std::size_t f : flat) s.emplace_back(f / side, f % side);
  return from_samples(params, std::move(s));
}

bool parity_applicable(const PointSet& D, const GaborParams& params) {
  return params.dim() == 1 && D.size() == static_cast<std::size_t>(params.samples()) && D.distinct;
}

FrameReport frame_bounds(const PointSet& D, const Window& window, const GaborParams& params, double tau) {
  if (D.size() == 0) throw Error(ErrorCode::EmptyPointSet, "point set is empty");
  const Signal g = periodize_sample(window);
  FrameReport rep = finish_report(D.size(), bounds_from_matrix(analysis_rows(D.samples, g, params)), tau, params);
  if (parity_applicable(D, params)) rep.parity = parity_predicate(D, params);
  return rep;
}

FrameReport frame_bounds(const std::vector<TFPoint>& points, const Window& window,
                         const GaborParams& params, double tau) {
  if (points.empty()) throw Error(ErrorCode::EmptyPointSet, "point set is empty");
  const Eigen::Index nb = static_cast<Eigen::Index>(params.basis_size());
  CMatrix M(static_cast<Eigen::Index>(points.size()), nb);
  for (std::size_t j = 0; j < points.size(); ++j) {
    const CVector row = stft_basis_all(points[j].x, points[j].xi, window);
    M.row(static_cast<Eigen::Index>(j)) = row.conjugate().transpose();
  }
  return finish_report(points.size(), bounds_from_matrix(M), tau, params);
}

ParityResult parity_predicate(const PointSet& D, const GaborParams& params, double scale) {
  if (!parity_applicable(D, params)) {
    throw Error(ErrorCode::NotApplicable, "parity predicate needs d = 1 and N distinct samples");
  }
  return parity_predicate(D, params, theta_zero_1d(params).z0.z, scale);
}

ParityResult parity_predicate(const PointSet& D, const GaborParams& params, const CVector& z0,
                              double scale) {
  if (!parity_applicable(D, params)) {
    throw Error(ErrorCode::NotApplicable, "parity predicate needs d = 1 and N distinct samples");
  }
  const int N = params.samples();
  ParityResult r;
  r.s = -static_cast<double>(N) * z0;
  for (const ComplexPoint& z : D.images) r.s += z.z;
  r.witness = dual_lattice_member(r.s, params, scale);
  r.no_frame = r.witness.member;
  if (params.real_part().cwiseAbs().maxCoeff() == 0.0 && scale == 1.0) {
    std::size_t sk = 0, sl = 0;
    for (const auto& [k, l] : D.samples) {
      sk += k;
      sl += l;
    }
    const auto n = static_cast<std::size_t>(N);
    r.integer_form = N % 2 == 0 && sk % n == 0 && sl % n == 0;
    if (*r.integer_form != r.no_frame) {
      throw std::logic_error("parity predicate: lattice form and integer form disagree");
    }
  }
  return r;
}

CountingGuarantees counting_guarantees(std::size_t K, const GaborParams& params) {
  const int d = params.dim();
  const auto N = static_cast<std::size_t>(params.samples());
  CountingGuarantees c;
  c.frame_by_count = d == 1 && K > N;
  c.no_frame_by_count = K < params.basis_size() || (d == 1 && K < N);
  c.interpolation_by_count = N > static_cast<std::size_t>(d) * K;
  if (K > 0) {
    c.seshadri_lower = 1.0 / static_cast<double>(K);
    c.seshadri_upper = std::pow(std::tgamma(d + 1.0) / static_cast<double>(K), 1.0 / d);
  }
  return c;
}

std::vector<double> zero_set_diagnostic(const PointSet& D, const std::vector<CVector>& translates,
                                        const GaborParams& params) {
  if (translates.size() != static_cast<std::size_t>(params.samples())) {
    throw Error(ErrorCode::TranslateSumNotInDualLattice,
                "expected N = " + std::to_string(params.samples()) + " translates, got " +
                    std::to_string(translates.size()));
  }
  CVector sum = CVector::Zero(params.dim());
  for (const CVector& t : translates) {
    if (t.size() != params.dim()) throw Error(ErrorCode::ShapeMismatch, "translate has wrong dimension");
    sum += t;
  }
  const LatticeMembership m = dual_lattice_member(sum, params);
  if (!m.member) {
    throw Error(ErrorCode::TranslateSumNotInDualLattice,
                "sum of translates is off the lattice by " + std::to_string(m.max_deviation));
  }
  std::vector<double> out;
  out.reserve(D.size());
  for (const ComplexPoint& z : D.images) {
    double best = std::numeric_limits<double>::infinity();
    for (const CVector& t : translates) best = std::min(best, theta_weighted_magnitude(z.z - t, params));
    out.push_back(best);
  }
  return out;
}

double binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return r;
}

ScanReport scan_subsets(const GaborParams& params, std::size_t K, const ScanOptions& options) {
  const std::size_t side = params.basis_size();
  const std::size_t P = side * side;
  if (K == 0 || K > P) throw Error(ErrorCode::InvalidArgument, "subset size must be in [1, N^{2d}]");

  std::vector<std::vector<std::size_t>> subsets;
  if (options.mode == ScanMode::Exhaustive) {
    const double total = binomial(P, K);
    if (total > 1e6) {
      throw Error(ErrorCode::TooManySubsets,
                  "exhaustive scan would visit " + std::to_string(total) + " subsets (limit 1e6)");
    }
    subsets.reserve(static_cast<std::size_t>(total));
    std::vector<std::size_t> c(K);
    std::iota(c.begin(), c.end(), 0);
    while (true) {
      subsets.push_back(c);
      std::size_t i = K;
      while (i > 0 && c[i - 1] == P - K + (i - 1)) --i;
      if (i == 0) break;
      ++c[i - 1];
      for (std::size_t j = i; j < K; ++j) c[j] = c[j - 1] + 1;
    }
  } else {
    std::mt19937_64 rng(options.seed);
    std::uniform_int_distribution<std::size_t> pick(0, P - 1);
    subsets.reserve(options.count);
    for (std::size_t draw = 0; draw < options.count; ++draw) {
      std::set<std::size_t> s;
      while (s.size() < K) s.insert(pick(rng));
      subsets.emplace_back(s.begin(), s.end());
    }
  }

  const Signal g = periodize_sample(Window::gaussian(params));
  std::vector<std::pair<std::size_t, std::size_t>> all;
  all.reserve(P);
  for (std::size_t f = 0; f < P; ++f) all.emplace_back(f / side, f % side);
  const CMatrix rows = analysis_rows(all, g, params);

  std::optional<CVector> z0;
  if (params.dim() == 1 && K == static_cast<std::size_t>(params.samples())) z0 = theta_zero_1d(params).z0.z;
  const CountingGuarantees guarantees = counting_guarantees(K, params);

  struct Outcome {
    double A = 0.0, B = 0.0;
    bool frame = false;
    bool applicable = false;
    bool no_frame = false;
  };
  std::vector<Outcome> results(subsets.size());
  parallel_for(subsets.size(), options.threads, [&](std::size_t i) {
    const std::vector<std::size_t>& s = subsets[i];
    CMatrix M(static_cast<Eigen::Index>(K), rows.cols());
    for (std::size_t j = 0; j < K; ++j) M.row(static_cast<Eigen::Index>(j)) = rows.row(static_cast<Eigen::Index>(s[j]));
    Outcome o;
    std::tie(o.A, o.B) = bounds_from_matrix(M);
    o.frame = o.A > options.tau * o.B;
    if (z0) {
      const PointSet D = PointSet::from_flat(params, s);
      if (parity_applicable(D, params)) {
        o.applicable = true;
        o.no_frame = parity_predicate(D, params, *z0).no_frame;
      }
    }
    results[i] = o;
  });

  ScanReport rep;
  rep.K = K;
  rep.subsets = subsets.size();
  rep.margin_histogram.assign(19, 0);
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    const Outcome& o = results[i];
    const double ratio = o.B > 0.0 ? o.A / o.B : 0.0;
    rep.frames += o.frame ? 1 : 0;
    if (o.frame) {
      rep.min_frame_ratio = std::min(rep.min_frame_ratio, ratio);
    } else {
      rep.max_nonframe_ratio = std::max(rep.max_nonframe_ratio, ratio);
    }
    std::size_t bin = 0;
    if (ratio > 0.0) bin = static_cast<std::size_t>(std::clamp(std::floor(std::log10(ratio)), -17.0, 0.0) + 18.0);
    ++rep.margin_histogram[bin];
    if ((guarantees.frame_by_count && !o.frame) || (guarantees.no_frame_by_count && o.frame)) {
      ++rep.counting_violations;
    }
    if (o.applicable) {
      ++rep.applicable;
      ++rep.confusion[o.no_frame ? 1 : 0][o.frame ? 1 : 0];
      if (o.no_frame == o.frame) rep.disagreements.push_back({subsets[i], ratio, o.no_frame, o.frame});
    }
  }
  return rep;
}

}  // namespace gtorus
