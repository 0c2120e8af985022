#include "gtorus/theta.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gtorus/contour.hpp"
#include "gtorus/lattice_sum.hpp"
#include "gtorus/metric.hpp"

namespace gtorus {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// w = w_r + m + Omega k with Y^{-1} Im w_r and Re w_r near zero.
struct Reduced {
  CVector w;
  std::vector<long> k;
  RVector delta;  // Y^{-1} Im w
  double shift;   // pi order delta^T Y delta, the largest term exponent
};

Reduced reduce(const CVector& z, const GaborParams& params, int order) {
  const int d = params.dim();
  Reduced r;
  r.k.resize(static_cast<std::size_t>(d));
  RVector kv(d);
  const RVector a = params.imag_inverse() * z.imag();
  for (int i = 0; i < d; ++i) {
    r.k[static_cast<std::size_t>(i)] = std::lround(a(i));
    kv(i) = static_cast<double>(r.k[static_cast<std::size_t>(i)]);
  }
  CVector w = z - params.omega() * kv.cast<cplx>();
  for (int i = 0; i < d; ++i) w(i) -= std::round(w(i).real());
  r.w = w;
  r.delta = params.imag_inverse() * w.imag();
  r.shift = kPi * order * r.delta.dot(params.imag_part() * r.delta);
  return r;
}

struct Partial {
  cplx sum{0.0, 0.0};
  CVector grad;
  double mass = 0.0;
  double max_exponent = 0.0;
  std::size_t terms = 0;
};

// Sum of exp(pi i o k^T Omega k + 2 pi i o k^T w - shift) over |k|_inf <= radius.
Partial partial_sum(const Reduced& r, const GaborParams& params, int order, int radius,
                    bool with_gradient) {
  const int d = params.dim();
  const CMatrix& omega = params.omega();
  Partial p;
  if (with_gradient) p.grad = CVector::Zero(d);
  std::vector<long> center(static_cast<std::size_t>(d), 0);
  CVector kv(d);
  for_each_in_box(std::span<const long>(center), radius, [&](std::span<const long> k) {
    for (int i = 0; i < d; ++i) kv(i) = static_cast<double>(k[static_cast<std::size_t>(i)]);
    const cplx quad = kv.transpose() * omega * kv;
    const cplx lin = kv.transpose() * r.w;
    const cplx e = kI * kPi * static_cast<double>(order) * (quad + 2.0 * lin) - r.shift;
    const cplx t = std::exp(e);
    p.sum += t;
    p.mass += std::abs(t);
    p.max_exponent = std::max(p.max_exponent, std::abs(e.imag()));
    ++p.terms;
    if (with_gradient) p.grad += (2.0 * kPi * kI * static_cast<double>(order) * t) * kv;
  });
  return p;
}

ThetaEval assemble(const Reduced& r, const Partial& p, const GaborParams& params, int order,
                   int radius) {
  const double alpha = kPi * order * params.imag_min_eigenvalue();
  const ScaledComplex factor = theta_factor(r.w, r.k, params, order);
  ThetaEval out;
  out.radius = radius;
  out.value = factor * ScaledComplex(r.shift, p.sum);
  out.mass = ScaledComplex(factor.logmag() + r.shift, p.mass);
  out.tail_bound = gaussian_lattice_tail(alpha, params.dim(), radius) / p.mass;
  out.rounding_bound = 4.0 * kEps * (static_cast<double>(p.terms) + p.max_exponent);
  return out;
}

}  // namespace

ScaledComplex theta_factor(const CVector& z, const std::vector<long>& k, const GaborParams& params,
                           int order) {
  const int d = params.dim();
  CVector kv(d);
  for (int i = 0; i < d; ++i) kv(i) = static_cast<double>(k[static_cast<std::size_t>(i)]);
  const cplx quad = kv.transpose() * params.omega() * kv;
  const cplx lin = z.transpose() * kv;
  return ScaledComplex::exp(-kI * kPi * static_cast<double>(order) * (quad + 2.0 * lin));
}

ThetaEval theta_eval(const CVector& z, const GaborParams& params, int order, double tol,
                     int max_radius) {
  if (order < 1) throw Error(ErrorCode::InvalidArgument, "theta order must be positive");
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
  if (z.size() != params.dim()) throw Error(ErrorCode::ShapeMismatch, "theta argument has wrong dimension");
  const Reduced r = reduce(z, params, order);
  const double alpha = kPi * order * params.imag_min_eigenvalue();
  // The k = 0 term contributes exp(-shift) to the scaled mass.
  const int radius = gaussian_lattice_radius(alpha, params.dim(), tol * std::exp(-r.shift), max_radius);
  const Partial p = partial_sum(r, params, order, radius, false);
  return assemble(r, p, params, order, radius);
}

ThetaEval theta_eval_radius(const CVector& z, const GaborParams& params, int order, int radius) {
  if (order < 1) throw Error(ErrorCode::InvalidArgument, "theta order must be positive");
  if (z.size() != params.dim()) throw Error(ErrorCode::ShapeMismatch, "theta argument has wrong dimension");
  const Reduced r = reduce(z, params, order);
  const Partial p = partial_sum(r, params, order, radius, false);
  return assemble(r, p, params, order, radius);
}

ThetaJet theta_jet(const CVector& z, const GaborParams& params, int order, double tol) {
  const Reduced r = reduce(z, params, order);
  const double alpha = kPi * order * params.imag_min_eigenvalue();
  const int radius = gaussian_lattice_radius(alpha, params.dim(), tol * std::exp(-r.shift));
  const Partial p = partial_sum(r, params, order, radius, true);
  ThetaJet jet;
  jet.scale = theta_factor(r.w, r.k, params, order) * ScaledComplex(r.shift, 1.0);
  jet.value = p.sum;
  CVector kv(params.dim());
  for (int i = 0; i < params.dim(); ++i) kv(i) = static_cast<double>(r.k[static_cast<std::size_t>(i)]);
  jet.gradient = p.grad - (2.0 * kPi * kI * static_cast<double>(order) * p.sum) * kv;
  return jet;
}

double theta_weighted_logmag(const CVector& z, const GaborParams& params) {
  const ThetaEval t = theta_eval(kI * z, params, 1);
  return t.value.logmag() - 0.5 * weight_phi(z, params);
}

double theta_weighted_magnitude(const CVector& z, const GaborParams& params) {
  return std::exp(theta_weighted_logmag(z, params));
}

ThetaZero theta_zero_1d(const GaborParams& params) {
  if (params.dim() != 1) throw Error(ErrorCode::InvalidArgument, "theta_zero_1d requires d = 1");
  const cplx omega = params.omega()(0, 0);
  const cplx e1 = -kI * omega;
  const cplx e2 = kI;

  auto phase_fn = [&](cplx z) {
    CVector v(1);
    v(0) = z;
    const ThetaEval t = theta_eval(kI * v, params, 1);
    return PhasePoint{t.value.phase(), t.value.logmag() - 0.5 * weight_phi(v, params)};
  };

  constexpr int kMaxAttempts = 5;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    const double alpha = 0.0123 + 0.173 * attempt;
    const double beta = 0.0311 + 0.191 * attempt;
    const cplx origin = alpha * e1 + beta * e2;
    const WindingResult w = parallelogram_winding(phase_fn, origin, e1, e2);
    if (!w.reliable || std::abs(w.winding) != 1) continue;

    // Coarse minimum of the weighted magnitude inside the contour.
    constexpr int kGrid = 48;
    cplx best = origin;
    double best_val = std::numeric_limits<double>::infinity();
    for (int i = 0; i < kGrid; ++i) {
      for (int j = 0; j < kGrid; ++j) {
        const cplx z = origin + ((i + 0.5) / kGrid) * e1 + ((j + 0.5) / kGrid) * e2;
        const double v = phase_fn(z).weighted_logmag;
        if (v < best_val) {
          best_val = v;
          best = z;
        }
      }
    }

    // Newton on f(z) = theta(i z), f'(z) = i theta'(i z).
    cplx z = best;
    for (int it = 0; it < 60; ++it) {
      CVector v(1);
      v(0) = kI * z;
      const ThetaJet jet = theta_jet(v, params, 1);
      const cplx step = jet.value / (kI * jet.gradient(0));
      z -= step;
      if (std::abs(step) < 1e-15 * (1.0 + std::abs(z))) break;
    }

    CVector zv(1);
    zv(0) = z;
    ThetaZero out;
    out.z0.z = reduce_mod_lattice(zv, params);
    out.attempts = attempt + 1;
    out.weighted_residual = theta_weighted_magnitude(out.z0.z, params);
    if (out.weighted_residual > 1e-10) continue;
    return out;
  }
  throw Error(ErrorCode::WindingNotOne,
              "no contour certified a single zero of theta(i z) after 5 jittered attempts");
}

}  // namespace gtorus
