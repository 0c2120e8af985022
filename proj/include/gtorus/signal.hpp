#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gtorus/common.hpp"

namespace gtorus {

/// Row-major flattening of I_N = (Z_N)^d; axis 0 is the slowest index.
class IndexSpace {
 public:
  IndexSpace(int d, int N);

  int dim() const noexcept { return d_; }
  int samples() const noexcept { return N_; }
  std::size_t size() const noexcept { return size_; }

  std::vector<int> unflatten(std::size_t flat) const;
  std::size_t flatten(std::span<const int> index) const;
  /// Flattens an arbitrary integer vector after reduction mod N.
  std::size_t flatten_mod(std::span<const long> index) const;
  /// Flat index of (m - k) mod N.
  std::size_t difference(std::size_t m, std::size_t k) const;
  /// Flat index of -m mod N.
  std::size_t negate(std::size_t m) const;

 private:
  int d_;
  int N_;
  std::size_t size_;
};

/// Element of S_N: coefficients a_n of sum_n a_n eps_n, n in I_N.
class Signal {
 public:
  Signal(int d, int N);
  Signal(int d, int N, std::vector<cplx> coeffs);

  int dim() const noexcept { return d_; }
  int samples() const noexcept { return N_; }
  std::size_t size() const noexcept { return coeffs_.size(); }
  IndexSpace index_space() const { return {d_, N_}; }

  cplx& operator[](std::size_t n) { return coeffs_[n]; }
  const cplx& operator[](std::size_t n) const { return coeffs_[n]; }
  std::span<cplx> coeffs() noexcept { return coeffs_; }
  std::span<const cplx> coeffs() const noexcept { return coeffs_; }

  double norm_sq() const;
  cplx inner(const Signal& other) const;

  static Signal delta(int d, int N, std::size_t n);

 private:
  int d_;
  int N_;
  std::vector<cplx> coeffs_;
};

/// a_n -> a_{-n}.
Signal reflect(const Signal& s);

/// Values of a DGT indexed by (k, l) in I_N x I_N, flat index k * N^d + l.
struct DGTCoefficients {
  int d = 1;
  int N = 1;
  std::vector<cplx> values;

  std::size_t side() const noexcept;
  cplx& at(std::size_t k, std::size_t l) { return values[k * side() + l]; }
  const cplx& at(std::size_t k, std::size_t l) const { return values[k * side() + l]; }
};

}  // namespace gtorus
