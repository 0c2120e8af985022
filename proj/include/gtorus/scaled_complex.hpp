#pragma once

#include <limits>

#include "gtorus/common.hpp"

namespace gtorus {

/// A complex number stored as exp(logmag) * phase with |phase| = 1.
/// Values like exp(2 pi z^T n) and exp(-N phi(z)) overflow separately but
/// not in combination; products and sums are formed without leaving log space.
class ScaledComplex {
 public:
  ScaledComplex() = default;
  ScaledComplex(double logmag, cplx phase);

  static ScaledComplex zero() { return {}; }
  static ScaledComplex from(cplx value);
  /// exp(w) for arbitrary complex w.
  static ScaledComplex exp(cplx w);

  double logmag() const noexcept { return logmag_; }
  cplx phase() const noexcept { return phase_; }
  bool is_zero() const noexcept { return logmag_ == -std::numeric_limits<double>::infinity(); }

  /// exp(logmag) * phase; may overflow to inf.
  cplx value() const;
  /// The value multiplied by exp(-shift).
  cplx value_scaled(double shift) const;

  ScaledComplex operator*(const ScaledComplex& o) const;
  ScaledComplex operator/(const ScaledComplex& o) const;
  ScaledComplex operator+(const ScaledComplex& o) const;
  ScaledComplex operator-(const ScaledComplex& o) const;
  ScaledComplex operator*(cplx c) const;
  ScaledComplex& operator+=(const ScaledComplex& o) { return *this = *this + o; }
  ScaledComplex& operator*=(const ScaledComplex& o) { return *this = *this * o; }

 private:
  double logmag_ = -std::numeric_limits<double>::infinity();
  cplx phase_{1.0, 0.0};
};

/// |a - b| / max(|a|, |b|), evaluated in log space; 0 when both vanish.
double relative_difference(const ScaledComplex& a, const ScaledComplex& b);

}  // namespace gtorus
