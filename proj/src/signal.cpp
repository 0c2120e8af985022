#include "gtorus/signal.hpp"

#include <sstream>

namespace gtorus {

IndexSpace::IndexSpace(int d, int N) : d_(d), N_(N), size_(1) {
  if (d < 1 || N < 1) throw Error(ErrorCode::InvalidArgument, "index space needs d >= 1 and N >= 1");
  for (int i = 0; i < d; ++i) size_ *= static_cast<std::size_t>(N);
}

std::vector<int> IndexSpace::unflatten(std::size_t flat) const {
  std::vector<int> idx(d_);
  for (int i = d_ - 1; i >= 0; --i) {
    idx[i] = static_cast<int>(flat % N_);
    flat /= N_;
  }
  return idx;
}

std::size_t IndexSpace::flatten(std::span<const int> index) const {
  std::size_t flat = 0;
  for (int i = 0; i < d_; ++i) flat = flat * N_ + static_cast<std::size_t>(index[i]);
  return flat;
}

std::size_t IndexSpace::flatten_mod(std::span<const long> index) const {
  std::size_t flat = 0;
  for (int i = 0; i < d_; ++i) {
    long r = index[i] % N_;
    if (r < 0) r += N_;
    flat = flat * N_ + static_cast<std::size_t>(r);
  }
  return flat;
}

std::size_t IndexSpace::difference(std::size_t m, std::size_t k) const {
  std::size_t flat = 0;
  std::size_t stride = 1;
  for (int i = 0; i < d_; ++i) {
    const std::size_t mi = m % N_;
    const std::size_t ki = k % N_;
    m /= N_;
    k /= N_;
    flat += ((mi + N_ - ki) % N_) * stride;
    stride *= N_;
  }
  return flat;
}

std::size_t IndexSpace::negate(std::size_t m) const { return difference(0, m); }

Signal::Signal(int d, int N) : d_(d), N_(N), coeffs_(IndexSpace(d, N).size()) {}

Signal::Signal(int d, int N, std::vector<cplx> coeffs) : d_(d), N_(N), coeffs_(std::move(coeffs)) {
  const std::size_t expected = IndexSpace(d, N).size();
  if (coeffs_.size() != expected) {
    std::ostringstream msg;
    msg << "signal has " << coeffs_.size() << " coefficients, expected N^d = " << expected;
    throw Error(ErrorCode::ShapeMismatch, msg.str());
  }
}

double Signal::norm_sq() const {
  double s = 0.0;
  for (const cplx& c : coeffs_) s += std::norm(c);
  return s;
}

cplx Signal::inner(const Signal& other) const {
  if (other.size() != size()) throw Error(ErrorCode::ShapeMismatch, "inner product of signals of different size");
  cplx s = 0.0;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) s += coeffs_[i] * std::conj(other.coeffs_[i]);
  return s;
}

Signal Signal::delta(int d, int N, std::size_t n) {
  Signal s(d, N);
  s[n] = 1.0;
  return s;
}

Signal reflect(const Signal& s) {
  Signal out(s.dim(), s.samples());
  const IndexSpace space = s.index_space();
  for (std::size_t n = 0; n < s.size(); ++n) out[space.negate(n)] = s[n];
  return out;
}

std::size_t DGTCoefficients::side() const noexcept {
  std::size_t s = 1;
  for (int i = 0; i < d; ++i) s *= static_cast<std::size_t>(N);
  return s;
}

}  // namespace gtorus
