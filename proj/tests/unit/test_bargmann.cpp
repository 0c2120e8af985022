#include <random>

#include "catch_amalgamated.hpp"
#include "gtorus/bargmann.hpp"
#include "gtorus/metric.hpp"
#include "gtorus/theta.hpp"
#include "gtorus/transforms.hpp"
#include "gtorus/window.hpp"
#include "oracles.hpp"

using namespace gtorus;

namespace {

CMatrix omega2() {
  CMatrix om(2, 2);
  om << cplx(0.2, 1.1), cplx(0.1, 0.2), cplx(0.1, 0.2), cplx(-0.3, 0.9);
  return om;
}

CVector random_z(int d, std::mt19937_64& rng, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  CVector z(d);
  for (int i = 0; i < d; ++i) z(i) = cplx(u(rng), u(rng));
  return z;
}

Signal random_signal(int d, int N, std::mt19937_64& rng) {
  return Signal(d, N, oracle::random_vector(oracle::size_pow(N, d), rng));
}

}  // namespace

TEST_CASE("basis sections match the direct series") {
  std::mt19937_64 rng(31);
  for (int d : {1, 2}) {
    const CMatrix om = d == 1 ? CMatrix::Constant(1, 1, cplx(0.3, 0.9)) : omega2();
    const int N = 3;
    const GaborParams p = validate({d, N, om});
    for (int trial = 0; trial < 4; ++trial) {
      const CVector z = random_z(d, rng, 0.3);
      for (std::size_t n = 0; n < p.basis_size(); ++n) {
        const SectionValue v = bargmann_basis(n, z, p);
        const cplx ref = oracle::bargmann_direct(n, z, om, N, 10);
        CHECK(std::abs(v.raw.value() - ref) <= 1e-12 * std::max(1.0, std::abs(ref)));
        if (v.weighted_mag > 1e-12) CHECK(v.closed_form_discrepancy <= 1e-9);
      }
    }
  }
}

TEST_CASE("N = 1, n = 0 section is the theta function") {
  const GaborParams p = make_params(1, 1, cplx(0.3, 0.9));
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 5; ++trial) {
    const CVector z = random_z(1, rng, 1.0);
    CHECK(relative_difference(bargmann_basis(0, z, p).raw, theta_eval(kI * z, p).value) <= 1e-12);
  }
}

TEST_CASE("section quasiperiodicity") {
  std::mt19937_64 rng(33);
  std::uniform_int_distribution<int> ki(-2, 2);
  for (int d : {1, 2}) {
    const CMatrix om = d == 1 ? CMatrix::Constant(1, 1, cplx(-0.4, 1.2)) : omega2();
    const int N = 3;
    const GaborParams p = validate({d, N, om});
    for (int trial = 0; trial < 6; ++trial) {
      const CVector z = random_z(d, rng, 0.7);
      const std::size_t n = std::size_t(trial) % p.basis_size();
      CVector m(d);
      RVector k(d);
      for (int i = 0; i < d; ++i) {
        m(i) = double(ki(rng));
        k(i) = double(ki(rng));
      }
      const ScaledComplex base = bargmann_basis(n, z, p).raw;
      CHECK(relative_difference(bargmann_basis(n, z + kI * m, p).raw, base) <= 1e-10);
      const CVector kc = k.cast<cplx>();
      const cplx expo = -kI * kPi * double(N) * cplx(kc.transpose() * om * kc) +
                        2.0 * kPi * double(N) * cplx(z.transpose() * kc);
      const ScaledComplex shifted = bargmann_basis(n, z - kI * (om * kc), p).raw;
      CHECK(relative_difference(shifted, ScaledComplex::exp(expo) * base) <= 1e-10);
    }
  }
}

TEST_CASE("weighted magnitude is lattice invariant") {
  std::mt19937_64 rng(34);
  std::uniform_int_distribution<int> ki(-3, 3);
  const int N = 3;
  const GaborParams p = validate({1, N, CMatrix::Constant(1, 1, cplx(0.3, 0.8))});
  const Signal phi = random_signal(1, N, rng);
  for (int trial = 0; trial < 20; ++trial) {
    const CVector z = random_z(1, rng, 0.6);
    CVector lam(1);
    lam(0) = -kI * p.omega()(0, 0) * double(ki(rng)) + kI * double(ki(rng));
    const SectionValue a = bargmann(phi, z, p), b = bargmann(phi, z + lam, p);
    CHECK(std::abs(a.weighted_mag - b.weighted_mag) <= 1e-10 * a.weighted_mag);
  }
}

TEST_CASE("bargmann is linear and agrees with the basis") {
  std::mt19937_64 rng(35);
  const GaborParams p = make_params(1, 4, cplx(0.1, 1.0));
  const CVector z = random_z(1, rng, 0.5);
  for (std::size_t n = 0; n < 4; ++n) {
    CHECK(relative_difference(bargmann(Signal::delta(1, 4, n), z, p).raw, bargmann_basis(n, z, p).raw) <= 1e-14);
  }
  const Signal phi = random_signal(1, 4, rng);
  cplx sum = 0.0;
  for (std::size_t n = 0; n < 4; ++n) sum += phi[n] * oracle::bargmann_direct(n, z, p.omega(), 4, 10);
  CHECK(std::abs(bargmann(phi, z, p).raw.value() - sum) <= 1e-12 * std::abs(sum));

  const CVector w = weighted_basis(z, p);
  for (std::size_t n = 0; n < 4; ++n) {
    const SectionValue v = bargmann_basis(n, z, p);
    const cplx expect = v.raw.value() * std::exp(-0.5 * 4.0 * weight_phi(z, p));
    CHECK(std::abs(w(Eigen::Index(n)) - expect) <= 1e-12);
  }
}

TEST_CASE("STFT with the Gaussian window factors through the sections") {
  std::mt19937_64 rng(36);
  const int N = 4;
  const GaborParams p = make_params(1, N, cplx(0.3, 0.9));
  const Window g = Window::gaussian(p);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    TFPoint pt{RVector::Constant(1, N * u(rng)), RVector::Constant(1, u(rng))};
    const CVector z = to_complex(pt, p).z;
    const CVector V = stft_basis_all(pt.x, pt.xi, g);
    const IndexSpace I(1, N);
    for (std::size_t n = 0; n < std::size_t(N); ++n) {
      const double lhs = std::abs(V(Eigen::Index(n)));
      CHECK(std::abs(lhs - bargmann_basis(I.negate(n), z, p).weighted_mag) <= 1e-12);
    }
  }
}

TEST_CASE("section zero count equals N") {
  std::mt19937_64 rng(37);
  for (int N : {2, 3, 5}) {
    const GaborParams p = make_params(1, N, cplx(0.2, 1.0));
    for (int trial = 0; trial < 3; ++trial) {
      const WindingResult w = section_zero_count(random_signal(1, N, rng), p);
      CHECK(w.reliable);
      CHECK(w.winding == N);
    }
  }
  const GaborParams p = make_params(1, 3, kI);
  const Signal phi = random_signal(1, 3, rng);
  const cplx om = kI;
  auto f = [&](cplx z) {
    CVector v(1);
    v(0) = z;
    return bargmann(phi, v, p).raw.value();
  };
  const cplx e1 = -kI * om, e2 = kI, o = 0.013 * e1 + 0.021 * e2;
  CHECK(oracle::winding_fixed_steps(f, {o, o + e1, o + e1 + e2, o + e2}, 4000) == 3);
}

TEST_CASE("gram matrix is a multiple of the identity with rank N^d") {
  for (int N : {2, 3}) {
    const GaborParams p = make_params(1, N, kI);
    const GramReport r = gram(p);
    CHECK(r.rank == N);
    CHECK(r.offdiag_resid <= 1e-8);
    CHECK(r.diag_spread <= 1e-8);
    CHECK(std::abs(r.c - r.c_norm_identity) <= 1e-8 * r.c);
  }
  const GramReport r2 = gram(make_params(2, 2, kI));
  CHECK(r2.rank == 4);
  CHECK(r2.offdiag_resid <= 1e-8);
}

TEST_CASE("gaussian window norm closed form agrees with quadrature") {
  for (cplx om : {kI, cplx(0.3, 0.7)}) {
    const GaborParams p = make_params(1, 4, om);
    const Window g = Window::gaussian(p);
    CHECK(std::abs(gaussian_window_norm_sq(p) - oracle::gaussian_norm_sq(p.omega(), 4)) < 1e-13);
    CHECK(std::abs(l2_norm_sq(g) - l2_norm_sq_quadrature(g)) <= 1e-10 * l2_norm_sq(g));
  }
}

TEST_CASE("bergman density integrates to N^d and flattens") {
  const DensityReport r8 = bergman_density(make_params(1, 8, kI));
  const DensityReport r32 = bergman_density(make_params(1, 32, kI));
  CHECK(std::abs(r8.integral - 8.0) <= 1e-8 * 8.0);
  CHECK(std::abs(r32.integral - 32.0) <= 1e-8 * 32.0);
  CHECK(r32.flatness < r8.flatness);

  const DensityReport r1 = bergman_density(make_params(1, 1, kI));
  CHECK(std::abs(r1.integral - 1.0) <= 1e-8);
  CHECK(r1.max / r1.min > 1.0);

  const DensityReport r2 = bergman_density(validate({2, 2, omega2()}), 4);
  CHECK(std::abs(r2.integral - 4.0) <= 1e-8 * 4.0);
}
