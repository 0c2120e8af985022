#include <random>

#include "catch_amalgamated.hpp"
#include "gtorus/core.hpp"
#include "gtorus/signal.hpp"
#include "oracles.hpp"

using namespace gtorus;
using Catch::Matchers::ContainsSubstring;

TEST_CASE("validate accepts Siegel matrices and names failed invariants") {
  CHECK_NOTHROW(make_params(1, 4, {0.0, 1.0}));
  CHECK_NOTHROW(make_params(2, 3, {0.0, 1.0}));

  try {
    make_params(1, 4, {1.0, 0.0});
    FAIL("real Omega accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotPositiveDefinite);
    CHECK_THAT(e.what(), ContainsSubstring("smallest eigenvalue"));
  }

  CMatrix om(2, 2);
  om << kI, 0.3, 0.1, kI;
  try {
    validate({2, 3, om});
    FAIL("asymmetric Omega accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonSymmetric);
  }
  CHECK_THROWS_AS(validate({1, 0, CMatrix::Constant(1, 1, kI)}), Error);
}

TEST_CASE("to_complex examples") {
  const GaborParams p = make_params(1, 4, kI);
  TFPoint origin{RVector::Zero(1), RVector::Zero(1)};
  CHECK(std::abs(to_complex(origin, p).z(0)) == 0.0);
  TFPoint q{RVector::Constant(1, 1.0), RVector::Constant(1, 0.25)};
  const cplx z = to_complex(q, p).z(0);
  CHECK(std::abs(z - cplx(0.25, -0.25)) < 1e-15);
}

TEST_CASE("from_complex inverts to_complex on the fundamental box") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int d : {1, 2}) {
    CMatrix om(d, d);
    if (d == 1) {
      om << cplx(0.3, 1.2);
    } else {
      om << cplx(0.2, 1.1), cplx(0.1, 0.2), cplx(0.1, 0.2), cplx(-0.3, 0.9);
    }
    const GaborParams p = validate({d, 5, om});
    for (int trial = 0; trial < 100; ++trial) {
      TFPoint pt{RVector(d), RVector(d)};
      for (int i = 0; i < d; ++i) {
        pt.x(i) = 5.0 * u(rng);
        pt.xi(i) = u(rng);
      }
      const TFPoint back = from_complex(to_complex(pt, p), p);
      for (int i = 0; i < d; ++i) {
        // Wrap-around at the period is the same torus point.
        double dx = std::abs(back.x(i) - pt.x(i));
        double dxi = std::abs(back.xi(i) - pt.xi(i));
        dx = std::min(dx, 5.0 - dx);
        dxi = std::min(dxi, 1.0 - dxi);
        CHECK(dx <= 1e-12);
        CHECK(dxi <= 1e-12);
      }
    }
  }
}

TEST_CASE("lattice maps to the periods of T_N") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> k(-3, 3);
  CMatrix om(2, 2);
  om << cplx(0.2, 1.1), cplx(0.1, 0.2), cplx(0.1, 0.2), cplx(-0.3, 0.9);
  const GaborParams p = validate({2, 4, om});
  for (int trial = 0; trial < 20; ++trial) {
    TFPoint pt{RVector(2), RVector(2)};
    for (int i = 0; i < 2; ++i) {
      pt.x(i) = 4.0 * k(rng);
      pt.xi(i) = k(rng);
    }
    CHECK(dual_lattice_member(to_complex(pt, p).z, p).member);
  }
}

TEST_CASE("dual_lattice_member examples and invariance") {
  for (cplx omega : {kI, cplx(0.3, 1.0), cplx(-0.2, 2.0)}) {
    const GaborParams p = make_params(1, 3, omega);
    CVector z(1);
    z(0) = -kI * omega;
    const LatticeMembership m = dual_lattice_member(z, p);
    CHECK(m.member);
    CHECK(m.a == std::vector<long>{1});
    CHECK(m.b == std::vector<long>{0});
  }
  const GaborParams p = make_params(1, 3, kI);
  CVector half(1);
  half(0) = -kI * (kI + 1.0) / 2.0;
  CHECK_FALSE(dual_lattice_member(half, p).member);
  CHECK(dual_lattice_member(half, p, 0.5).member);

  CVector shifted = half;
  shifted(0) += -kI * kI * 3.0 + kI * 2.0;
  CHECK_FALSE(dual_lattice_member(shifted, p).member);
  CHECK(dual_lattice_member(shifted, p, 0.5).member);
}

TEST_CASE("reduce_mod_lattice returns a box representative") {
  const GaborParams p = make_params(1, 2, cplx(0.4, 0.8));
  CVector z(1);
  z(0) = cplx(3.7, -5.2);
  const CVector r = reduce_mod_lattice(z, p);
  const BoxCoordinates c = box_coordinates(r, p);
  CHECK(c.a(0) >= 0.0);
  CHECK(c.a(0) < 1.0);
  CHECK(c.b(0) >= 0.0);
  CHECK(c.b(0) < 1.0);
  CHECK(dual_lattice_member(r - z, p).member);
}

TEST_CASE("IndexSpace flattening is row-major") {
  const IndexSpace s(2, 3);
  CHECK(s.size() == 9);
  const std::vector<int> idx{1, 2};
  CHECK(s.flatten(idx) == 5);
  CHECK(s.unflatten(5) == idx);
  const std::vector<long> neg{-1, 4};
  CHECK(s.flatten_mod(neg) == 2 * 3 + 1);
  CHECK(s.negate(5) == s.flatten(std::vector<int>{2, 1}));
  CHECK(s.difference(5, 4) == s.flatten(std::vector<int>{0, 1}));
}

TEST_CASE("Signal shape errors name the expected length") {
  try {
    Signal(1, 4, std::vector<cplx>(3));
    FAIL("wrong length accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ShapeMismatch);
    CHECK_THAT(e.what(), ContainsSubstring("N^d = 4"));
  }
}
