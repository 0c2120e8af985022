#include "gtorus/core.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace gtorus {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonSymmetric: return "NonSymmetric";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::NoDecay: return "NoDecay";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::ZeroWindow: return "ZeroWindow";
    case ErrorCode::ToleranceUnreachable: return "ToleranceUnreachable";
    case ErrorCode::WindingNotOne: return "WindingNotOne";
    case ErrorCode::QuadratureUnderResolved: return "QuadratureUnderResolved";
    case ErrorCode::EmptyPointSet: return "EmptyPointSet";
    case ErrorCode::NotApplicable: return "NotApplicable";
    case ErrorCode::TranslateSumNotInDualLattice: return "TranslateSumNotInDualLattice";
    case ErrorCode::TooManySubsets: return "TooManySubsets";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnknownVariable: return "UnknownVariable";
    case ErrorCode::NonHermitianBeyondTolerance: return "NonHermitianBeyondTolerance";
    case ErrorCode::EigSolverFailure: return "EigSolverFailure";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

GaborParams validate(const GaborConfig& config) {
  if (config.d < 1) throw Error(ErrorCode::InvalidArgument, "dimension d must be positive");
  if (config.N < 1) throw Error(ErrorCode::InvalidArgument, "samples per axis N must be positive");
  const CMatrix& omega = config.omega;
  if (omega.rows() != config.d || omega.cols() != config.d) {
    std::ostringstream msg;
    msg << "Omega must be " << config.d << "x" << config.d << ", got " << omega.rows() << "x"
        << omega.cols();
    throw Error(ErrorCode::InvalidArgument, msg.str());
  }
  if (!omega.allFinite()) throw Error(ErrorCode::InvalidArgument, "Omega has non-finite entries");

  const double scale = omega.cwiseAbs().maxCoeff();
  const double asym = (omega - omega.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * scale) {
    std::ostringstream msg;
    msg << "max |Omega_ij - Omega_ji| = " << asym << " exceeds 1e-12 * max|Omega_ij| = "
        << 1e-12 * scale;
    throw Error(ErrorCode::NonSymmetric, msg.str());
  }

  GaborParams p;
  p.d_ = config.d;
  p.N_ = config.N;
  p.basis_size_ = 1;
  for (int i = 0; i < config.d; ++i) p.basis_size_ *= static_cast<std::size_t>(config.N);
  // Symmetrize exactly so that downstream quadratic forms are real-symmetric.
  p.omega_ = 0.5 * (omega + omega.transpose());
  p.re_ = p.omega_.real();
  p.im_ = p.omega_.imag();

  Eigen::SelfAdjointEigenSolver<RMatrix> eig(p.im_, Eigen::EigenvaluesOnly);
  p.im_min_eig_ = eig.eigenvalues().minCoeff();
  if (!(p.im_min_eig_ > 0.0)) {
    std::ostringstream msg;
    msg << "smallest eigenvalue of Im Omega is " << p.im_min_eig_;
    throw Error(ErrorCode::NotPositiveDefinite, msg.str());
  }
  p.im_det_ = eig.eigenvalues().prod();
  p.im_inv_ = p.im_.inverse();
  p.im_inv_ = 0.5 * (p.im_inv_ + p.im_inv_.transpose()).eval();
  return p;
}

GaborParams GaborParams::with_samples(int N) const {
  return validate({d_, N, omega_});
}

GaborParams make_params(int d, int N, cplx omega_diag) {
  CMatrix omega = CMatrix::Identity(d, d) * omega_diag;
  return validate({d, N, omega});
}

namespace {

double wrap(double v, double period) {
  double r = std::fmod(v, period);
  if (r < 0) r += period;
  if (r >= period) r -= period;
  return r;
}

}  // namespace

TFPoint TFPoint::reduced(int N) const {
  TFPoint out{x, xi};
  for (Eigen::Index i = 0; i < x.size(); ++i) out.x[i] = wrap(x[i], N);
  for (Eigen::Index i = 0; i < xi.size(); ++i) out.xi[i] = wrap(xi[i], 1.0);
  return out;
}

ComplexPoint to_complex(const TFPoint& p, const GaborParams& params) {
  const CVector w = params.omega() * (p.x / params.samples()).cast<cplx>() + p.xi.cast<cplx>();
  return {-kI * w};
}

BoxCoordinates box_coordinates(const CVector& z, const GaborParams& params) {
  // i z = Omega a + b  =>  Im(iz) = Y a,  Re(iz) = X a + b.
  const CVector w = kI * z;
  RVector a = params.imag_inverse() * w.imag();
  RVector b = w.real() - params.real_part() * a;
  return {std::move(a), std::move(b)};
}

CVector from_box_coordinates(const RVector& a, const RVector& b, const GaborParams& params) {
  return -kI * (params.omega() * a.cast<cplx>() + b.cast<cplx>());
}

TFPoint from_complex(const ComplexPoint& z, const GaborParams& params) {
  if (z.z.size() != params.dim()) throw Error(ErrorCode::ShapeMismatch, "point dimension differs from d");
  BoxCoordinates c = box_coordinates(z.z, params);
  TFPoint p{c.a * params.samples(), c.b};
  return p.reduced(params.samples());
}

CVector reduce_mod_lattice(const CVector& z, const GaborParams& params) {
  BoxCoordinates c = box_coordinates(z, params);
  for (int i = 0; i < params.dim(); ++i) {
    c.a[i] = wrap(c.a[i], 1.0);
    c.b[i] = wrap(c.b[i], 1.0);
  }
  return from_box_coordinates(c.a, c.b, params);
}

LatticeMembership dual_lattice_member(const CVector& z, const GaborParams& params, double scale,
                                      double tol) {
  if (!(scale > 0.0)) throw Error(ErrorCode::InvalidArgument, "scale must be positive");
  // z = -i Omega a + i b  <=>  i z = Omega a - b.
  const CVector w = kI * z;
  const RVector a = params.imag_inverse() * w.imag();
  const RVector b = params.real_part() * a - w.real();

  LatticeMembership out;
  out.a.resize(params.dim());
  out.b.resize(params.dim());
  for (int i = 0; i < params.dim(); ++i) {
    const double sa = a[i] / scale;
    const double sb = b[i] / scale;
    out.a[i] = std::lround(sa);
    out.b[i] = std::lround(sb);
    out.max_deviation = std::max({out.max_deviation, std::abs(sa - static_cast<double>(out.a[i])),
                                  std::abs(sb - static_cast<double>(out.b[i]))});
  }
  out.member = out.max_deviation <= tol;
  return out;
}

}  // namespace gtorus
