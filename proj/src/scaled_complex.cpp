#include "gtorus/scaled_complex.hpp"

#include <cmath>

namespace gtorus {

ScaledComplex::ScaledComplex(double logmag, cplx phase) : logmag_(logmag), phase_(phase) {
  const double m = std::abs(phase_);
  if (m == 0.0 || !std::isfinite(m)) {
    logmag_ = -std::numeric_limits<double>::infinity();
    phase_ = 1.0;
  } else {
    logmag_ += std::log(m);
    phase_ /= m;
  }
}

ScaledComplex ScaledComplex::from(cplx value) { return {0.0, value}; }

ScaledComplex ScaledComplex::exp(cplx w) {
  ScaledComplex r;
  r.logmag_ = w.real();
  r.phase_ = std::polar(1.0, w.imag());
  return r;
}

cplx ScaledComplex::value() const {
  if (is_zero()) return 0.0;
  return std::exp(logmag_) * phase_;
}

cplx ScaledComplex::value_scaled(double shift) const {
  if (is_zero()) return 0.0;
  return std::exp(logmag_ - shift) * phase_;
}

ScaledComplex ScaledComplex::operator*(const ScaledComplex& o) const {
  if (is_zero() || o.is_zero()) return {};
  ScaledComplex r;
  r.logmag_ = logmag_ + o.logmag_;
  r.phase_ = phase_ * o.phase_;
  r.phase_ /= std::abs(r.phase_);
  return r;
}

ScaledComplex ScaledComplex::operator/(const ScaledComplex& o) const {
  if (o.is_zero()) return {std::numeric_limits<double>::infinity(), phase_};
  if (is_zero()) return {};
  ScaledComplex r;
  r.logmag_ = logmag_ - o.logmag_;
  r.phase_ = phase_ * std::conj(o.phase_);
  r.phase_ /= std::abs(r.phase_);
  return r;
}

ScaledComplex ScaledComplex::operator+(const ScaledComplex& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  const double top = std::max(logmag_, o.logmag_);
  const cplx sum = std::exp(logmag_ - top) * phase_ + std::exp(o.logmag_ - top) * o.phase_;
  return {top, sum};
}

ScaledComplex ScaledComplex::operator-(const ScaledComplex& o) const {
  ScaledComplex neg = o;
  neg.phase_ = -neg.phase_;
  return *this + neg;
}

ScaledComplex ScaledComplex::operator*(cplx c) const { return *this * from(c); }

double relative_difference(const ScaledComplex& a, const ScaledComplex& b) {
  if (a.is_zero() && b.is_zero()) return 0.0;
  const double top = std::max(a.logmag(), b.logmag());
  return std::abs(a.value_scaled(top) - b.value_scaled(top));
}

}  // namespace gtorus
