#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace gtorus {

using cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr cplx kI{0.0, 1.0};

enum class ErrorCode {
  NonSymmetric,
  NotPositiveDefinite,
  SingularSystem,
  NoDecay,
  ShapeMismatch,
  ZeroWindow,
  ToleranceUnreachable,
  WindingNotOne,
  QuadratureUnderResolved,
  EmptyPointSet,
  NotApplicable,
  TranslateSumNotInDualLattice,
  TooManySubsets,
  ParseError,
  UnknownVariable,
  NonHermitianBeyondTolerance,
  EigSolverFailure,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code);

// All domain failures raised by the library. The code identifies the failed
// contract; the message carries the measured quantity where one exists.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace gtorus
