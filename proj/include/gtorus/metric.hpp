#pragma once

#include "gtorus/common.hpp"
#include "gtorus/core.hpp"

namespace gtorus {

/// phi(z) = pi [H(z,z) + Re B(z,z)] with H(w,z) = w^T (Im Omega)^{-1} conj(z)
/// and B(w,z) = w^T (Im Omega)^{-1} z. |s|^2 exp(-N phi) is Lambda-periodic
/// for sections s of L^N.
double weight_phi(const CVector& z, const GaborParams& params);

/// The constant matrix (Im Omega)^{-1} of the Chern form
/// (i/2) sum_{jk} (Im Omega)^{-1}_{jk} dz_j ^ dzbar_k.
const RMatrix& chern_form(const GaborParams& params);

}  // namespace gtorus
