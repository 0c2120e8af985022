#include <random>

#include "catch_amalgamated.hpp"
#include "gtorus/transforms.hpp"
#include "oracles.hpp"

using namespace gtorus;

namespace {

Signal random_signal(int d, int N, std::mt19937_64& rng) {
  return Signal(d, N, oracle::random_vector(oracle::size_pow(N, d), rng));
}

double rel_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += std::norm(a[i] - b[i]);
    den += std::norm(b[i]);
  }
  return std::sqrt(num / den);
}

std::vector<cplx> to_vec(const Signal& s) { return {s.coeffs().begin(), s.coeffs().end()}; }

CMatrix omega2() {
  CMatrix om(2, 2);
  om << cplx(0.2, 1.1), cplx(0.1, 0.2), cplx(0.1, 0.2), cplx(-0.3, 0.9);
  return om;
}

}  // namespace

TEST_CASE("periodize_sample matches the defining sum") {
  const Signal h1 = periodize_sample(Window::gaussian(make_params(1, 1, kI)));
  CHECK(std::abs(h1[0] - oracle::periodized_gaussian(CMatrix::Constant(1, 1, kI), 1, 1, 6)[0]) < 1e-14);
  CHECK(std::abs(h1[0] - 1.0864348112133080) < 1e-14);

  const Signal h4 = periodize_sample(Window::gaussian(make_params(1, 4, kI)));
  CHECK(std::abs(h4[0] - (1.0 + 2.0 * std::exp(-4.0 * kPi))) < 1e-15);

  const GaborParams p2 = validate({2, 3, omega2()});
  const Signal h = periodize_sample(Window::gaussian(p2));
  CHECK(rel_diff(to_vec(h), oracle::periodized_gaussian(omega2(), 2, 3, 8)) < 1e-13);

  const GaborParams big = make_params(1, 3, cplx(0.4, 40.0));
  const Signal hb = periodize_sample(Window::gaussian(big));
  for (int n = 0; n < 2; ++n) {
    const cplx single = std::exp(-kI * kPi * std::conj(big.omega()(0, 0)) * double(n * n) / 3.0);
    CHECK(std::abs(hb[n] - single) < 1e-12);
  }
}

TEST_CASE("callable windows need a decay envelope") {
  try {
    Window::callable(1, 4, [](const RVector&) { return cplx(1.0); }, std::nullopt);
    FAIL("missing envelope accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoDecay);
  }
}

TEST_CASE("dgt hand examples") {
  const Signal d0 = Signal::delta(1, 4, 0);
  const DGTCoefficients V = dgt(d0, d0);
  for (std::size_t k = 0; k < 4; ++k) {
    for (std::size_t l = 0; l < 4; ++l) CHECK(V.at(k, l) == cplx(k == 0 ? 1.0 : 0.0));
  }
  const DGTCoefficients W = dgt(Signal(1, 2, {1.0, 0.0}), Signal(1, 2, {1.0, 1.0}));
  for (const cplx& v : W.values) CHECK(std::abs(v - 1.0) < 1e-15);

  CHECK_THROWS_AS(dgt(Signal(1, 4), Signal(1, 3)), Error);
}

TEST_CASE("dgt direct and FFT paths agree with the definition") {
  std::mt19937_64 rng(3);
  for (auto [d, N] : {std::pair{1, 8}, std::pair{2, 4}, std::pair{1, 5}}) {
    const Signal f = random_signal(d, N, rng);
    const Signal g = random_signal(d, N, rng);
    const auto ref = oracle::dgt_direct(to_vec(f), to_vec(g), d, N);
    CHECK(rel_diff(dgt(f, g, DgtMethod::Direct).values, ref) < 1e-12);
    CHECK(rel_diff(dgt(f, g, DgtMethod::Fft).values, ref) < 1e-12);
  }
}

TEST_CASE("dgt tightness and (conjugate-)linearity") {
  std::mt19937_64 rng(5);
  for (int d : {1, 2}) {
    for (int N : {4, 8}) {
      const Signal f = random_signal(d, N, rng);
      const Signal g = random_signal(d, N, rng);
      double energy = 0.0;
      for (const cplx& v : dgt(f, g).values) energy += std::norm(v);
      const double expect = double(f.size()) * f.norm_sq() * g.norm_sq();
      CHECK(std::abs(energy - expect) <= 1e-10 * expect);
    }
  }
  const Signal f1 = random_signal(1, 6, rng), f2 = random_signal(1, 6, rng), g = random_signal(1, 6, rng);
  const cplx a(0.7, -1.3), b(-0.2, 0.4);
  Signal lin(1, 6), gs(1, 6);
  for (std::size_t i = 0; i < 6; ++i) {
    lin[i] = a * f1[i] + b * f2[i];
    gs[i] = a * g[i];
  }
  const auto V1 = dgt(f1, g).values, V2 = dgt(f2, g).values, VL = dgt(lin, g).values, VS = dgt(f1, gs).values;
  for (std::size_t i = 0; i < V1.size(); ++i) {
    CHECK(std::abs(VL[i] - (a * V1[i] + b * V2[i])) < 1e-12);
    CHECK(std::abs(VS[i] - std::conj(a) * V1[i]) < 1e-12);
  }
}

TEST_CASE("dgt_inverse round trip") {
  std::mt19937_64 rng(9);
  {
    const Signal f = random_signal(1, 16, rng);
    const Signal g = periodize_sample(Window::gaussian(make_params(1, 16, kI)));
    CHECK(rel_diff(to_vec(dgt_inverse(dgt(f, g), g)), to_vec(f)) <= 1e-10);
  }
  {
    const Signal f = random_signal(2, 4, rng);
    const Signal g = periodize_sample(Window::gaussian(validate({2, 4, omega2()})));
    CHECK(rel_diff(to_vec(dgt_inverse(dgt(f, g), g)), to_vec(f)) <= 1e-10);
  }
  const Signal d0 = Signal::delta(1, 4, 0);
  const Signal back = dgt_inverse(dgt(d0, d0), d0);
  for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(back[i] - d0[i]) < 1e-15);
  try {
    dgt_inverse(dgt(d0, d0), Signal(1, 4));
    FAIL("zero window accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ZeroWindow);
  }
}

TEST_CASE("zak transform values and quasi-periodicity") {
  const Window g1 = Window::gaussian(make_params(1, 1, kI));
  const RVector zero = RVector::Zero(1);
  CHECK(std::abs(zak(g1, zero, zero) - 1.0864348112133080) < 1e-13);

  const int N = 3;
  const Window g = Window::gaussian(make_params(1, N, cplx(0.3, 0.8)));
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    RVector x(1), xi(1);
    x(0) = u(rng);
    xi(0) = u(rng);
    const cplx base = zak(g, x, xi);
    for (int k : {-2, 1, 3}) {
      RVector xs = x, xis = xi;
      xis(0) += double(k) / N;
      CHECK(std::abs(zak(g, x, xis) - base) <= 1e-12);
      xs(0) += double(N * k);
      CHECK(std::abs(zak(g, xs, xi) - std::polar(1.0, 2.0 * kPi * N * k * xi(0)) * base) <= 1e-12);
    }
  }
}

TEST_CASE("zak unitarity relation") {
  const int N = 3;
  const Window f = Window::gaussian(make_params(1, N, cplx(0.3, 0.8)));
  const Window g = Window::gaussian(make_params(1, N, cplx(-0.2, 1.4)));
  const int M = 8 * N;
  cplx s = 0.0;
  RVector x(1), xi(1);
  for (int i = 0; i < M; ++i) {
    for (int j = 0; j < M; ++j) {
      x(0) = double(N) * i / M;
      xi(0) = (1.0 / N) * j / M;
      s += zak(f, x, xi) * std::conj(zak(g, x, xi));
    }
  }
  s *= (double(N) / M) * (1.0 / N / M);
  CHECK(std::abs(s - l2_inner(f, g) / double(N)) <= 1e-8);
}

TEST_CASE("stft_basis matches the defining lattice sum") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-3.0, 5.0);
  for (int d : {1, 2}) {
    const int N = 3;
    const CMatrix om = d == 1 ? CMatrix::Constant(1, 1, cplx(0.3, 0.9)) : omega2();
    const GaborParams p = validate({d, N, om});
    const Window g = Window::gaussian(p);
    for (int trial = 0; trial < 5; ++trial) {
      RVector x(d), xi(d);
      for (int i = 0; i < d; ++i) {
        x(i) = u(rng);
        xi(i) = u(rng);
      }
      const CVector all = stft_basis_all(x, xi, g);
      const auto ref = oracle::stft_basis_direct(x, xi, om, N, 14);
      for (std::size_t n = 0; n < ref.size(); ++n) {
        CHECK(std::abs(all(Eigen::Index(n)) - ref[n]) < 1e-12);
        CHECK(std::abs(stft_basis(n, x, xi, g) - ref[n]) < 1e-12);
      }
    }
  }
  const Window g = Window::gaussian(make_params(1, 4, kI));
  const RVector zero = RVector::Zero(1);
  CHECK(std::abs(stft_basis(0, zero, zero, g) - zak(g.conjugated(), zero, zero)) < 1e-14);
}

TEST_CASE("stft quasi-periodicity on T_N") {
  const int N = 4;
  const GaborParams p = make_params(1, N, cplx(0.25, 1.0));
  const Window g = Window::gaussian(p);
  std::mt19937_64 rng(4);
  const Signal phi = random_signal(1, N, rng);
  RVector x(1), xi(1);
  x(0) = 0.37;
  xi(0) = 0.81;
  const cplx v = stft(phi, x, xi, g);
  RVector xs = x, xis = xi;
  xs(0) += 2.0 * N;
  xis(0) += 3.0;
  CHECK(std::abs(std::abs(stft(phi, xs, xi, g)) - std::abs(v)) < 1e-12);
  const cplx w = stft(phi, x, xis, g);
  CHECK(std::abs(std::abs(w) - std::abs(v)) < 1e-12);
}

TEST_CASE("sampled equivalence with the DGT") {
  std::mt19937_64 rng(6);
  for (auto [d, N] : {std::pair{1, 8}, std::pair{2, 3}}) {
    const CMatrix om = d == 1 ? CMatrix::Constant(1, 1, cplx(0.3, 0.9)) : omega2();
    const GaborParams p = validate({d, N, om});
    const Window g = Window::gaussian(p);
    const Signal gN = periodize_sample(g);
    const Signal f = random_signal(d, N, rng);
    const DGTCoefficients V = dgt(f, gN);
    const IndexSpace I(d, N);
    for (std::size_t k = 0; k < I.size(); ++k) {
      for (std::size_t l = 0; l < I.size(); ++l) {
        const auto kk = I.unflatten(k), ll = I.unflatten(l);
        RVector x(d), xi(d);
        for (int i = 0; i < d; ++i) {
          x(i) = kk[std::size_t(i)];
          xi(i) = double(ll[std::size_t(i)]) / N;
        }
        CHECK(std::abs(stft(f, x, xi, g) - V.at(k, l)) <= 1e-10 * (1.0 + std::abs(V.at(k, l))));
      }
    }
  }
}

TEST_CASE("Moyal relation by quadrature over T_N") {
  const int N = 4;
  const Window g1 = Window::gaussian(make_params(1, N, kI));
  const Window g2 = Window::gaussian(make_params(1, N, cplx(0.3, 1.3)));
  std::mt19937_64 rng(8);
  const Signal p1 = random_signal(1, N, rng), p2 = random_signal(1, N, rng);
  const int M = 8 * N;
  cplx s = 0.0;
  RVector x(1), xi(1);
  for (int i = 0; i < M; ++i) {
    for (int j = 0; j < M; ++j) {
      x(0) = double(N) * i / M;
      xi(0) = double(j) / M;
      s += stft(p1, x, xi, g1) * std::conj(stft(p2, x, xi, g2));
    }
  }
  s *= (double(N) / M) * (1.0 / M);
  const cplx expect = p1.inner(p2) * std::conj(l2_inner(g1, g2));
  CHECK(std::abs(s - expect) <= 1e-8 * std::abs(expect));
}
