#include "gtorus/metric.hpp"

namespace gtorus {

double weight_phi(const CVector& z, const GaborParams& params) {
  const RMatrix& yinv = params.imag_inverse();
  const cplx h = z.transpose() * yinv * z.conjugate();
  const cplx b = z.transpose() * yinv * z;
  return kPi * (h.real() + b.real());
}

const RMatrix& chern_form(const GaborParams& params) { return params.imag_inverse(); }

}  // namespace gtorus
