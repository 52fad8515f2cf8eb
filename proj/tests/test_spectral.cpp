#include <cmath>
#include <future>
#include <numbers>
#include <random>

#include "doctest.h"
#include "deepwave/spectral.hpp"
#include "support.hpp"

using namespace deepwave;
using namespace deepwave::test;

namespace {

double rel_diff(const RealField& a, const RealField& b) {
  return max_abs_diff(a, b) / std::max(1.0, b.max_abs());
}

double l2(const RealField& u) { return sobolev_norm(u, 0.0); }

}  // namespace

TEST_CASE("grid construction") {
  const Grid g(30.0, 256);
  CHECK(g.size() == 256);
  CHECK(g.dx() == doctest::Approx(60.0 / 256).epsilon(1e-15));
  CHECK(g.nodes()[0] == -30.0);
  CHECK(g.wavenumbers()[1] == doctest::Approx(std::numbers::pi / 30.0));
  CHECK(g.wavenumbers()[255] == doctest::Approx(-std::numbers::pi / 30.0));
  CHECK(g.max_wavenumber() == doctest::Approx(std::numbers::pi * 128 / 30.0));
  CHECK(Grid(30.0, 256) == g);
  CHECK_FALSE(Grid(20.0, 256) == g);

  CHECK_THROWS_AS(Grid(0.0, 64), InvalidParam);
  CHECK_THROWS_AS(Grid(-1.0, 64), InvalidParam);
  CHECK_THROWS_AS(Grid(1.0, 100), InvalidParam);
  CHECK_THROWS_AS(Grid(1.0, 2), InvalidParam);
  CHECK_THROWS_AS(RealField(g, std::vector<double>(3)), InvalidParam);
}

TEST_CASE("forward transform against the direct DFT sum") {
  const Grid g(30.0, 64);
  const std::size_t n = g.size();

  SUBCASE("zero field") {
    const SpectralField z = forward_transform(RealField(g));
    CHECK(z.max_abs() == 0.0);
  }
  SUBCASE("constant one") {
    const SpectralField u = forward_transform(constant(g, 1.0));
    CHECK(u[0].real() == doctest::Approx(n));
    for (std::size_t k = 1; k < n; ++k) CHECK(std::abs(u[k]) < 1e-12);
  }
  SUBCASE("cos(pi x / L) has two coefficients of magnitude N/2") {
    const RealField u = cos_mode(g, 1);
    const SpectralField u_hat = forward_transform(u);
    const auto oracle = brute_dft(u);
    for (std::size_t k = 0; k < n; ++k) {
      CHECK(std::abs(u_hat[k] - oracle[k]) < 1e-11);
      const bool plus_minus_one = (k == 1 || k == n - 1);
      CHECK(std::abs(u_hat[k]) == doctest::Approx(plus_minus_one ? n / 2.0 : 0.0).epsilon(1e-12));
    }
    // x_0 = -L puts a phase of exp(i pi) on the first mode.
    CHECK(u_hat[1].real() == doctest::Approx(-(n / 2.0)));
  }
  SUBCASE("random field") {
    std::mt19937_64 rng(7);
    const RealField u = random_field(g, rng, 0.5);
    const SpectralField u_hat = forward_transform(u);
    const auto oracle = brute_dft(u);
    double scale = 0.0, err = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      scale = std::max(scale, std::abs(oracle[k]));
      err = std::max(err, std::abs(u_hat[k] - oracle[k]));
    }
    CHECK(err / scale < 1e-12);
  }
}

TEST_CASE("inverse transform") {
  const Grid g(1.0, 16);
  SUBCASE("zero") { CHECK(inverse_transform(SpectralField(g)).max_abs() == 0.0); }
  SUBCASE("mode-0 coefficient N gives ones") {
    SpectralField u(g);
    u[0] = 16.0;
    const RealField r = inverse_transform(u);
    for (std::size_t j = 0; j < r.size(); ++j) CHECK(r[j] == doctest::Approx(1.0).epsilon(1e-15));
  }
  SUBCASE("non-Hermitian spectrum is rejected") {
    SpectralField u(g);
    u[1] = 1.0;
    CHECK_THROWS_AS(inverse_transform(u), SymmetryViolation);
  }
}

TEST_CASE("round trip for every size 2^4 .. 2^12") {
  std::mt19937_64 rng(11);
  for (std::size_t n = 16; n <= 4096; n *= 2) {
    const Grid g(5.0, n);
    const RealField u = random_field(g, rng, 1.0);
    const RealField back = inverse_transform(forward_transform(u));
    CAPTURE(n);
    CHECK(rel_diff(back, u) < 1e-12);
  }
}

TEST_CASE("apply_multiplier basics") {
  const Grid g(30.0, 128);
  std::mt19937_64 rng(3);
  const RealField u = random_field(g, rng, 0.2);

  CHECK(rel_diff(apply_multiplier(u, [](double) { return Complex(1.0); }), u) < 1e-12);
  CHECK(apply_multiplier(u, [](double) { return Complex(0.0); }).max_abs() == 0.0);

  const double xi0 = std::numbers::pi / 30.0;
  const RealField s = sin_mode(g, 1);
  const RealField ds = apply_multiplier(s, [](double xi) { return Complex(0.0, xi); });
  CHECK(max_abs_diff(ds, xi0 * cos_mode(g, 1)) < 1e-12);
}

TEST_CASE("derivative") {
  const Grid g(30.0, 128);
  CHECK(derivative(constant(g, 3.5)).max_abs() < 1e-14);

  for (int m : {1, 5, 40}) {
    const double xi0 = m * std::numbers::pi / 30.0;
    CAPTURE(m);
    CHECK(max_abs_diff(derivative(sin_mode(g, m)), xi0 * cos_mode(g, m)) < 1e-12 * xi0);
  }
  const RealField two = 2.0 * sin_mode(g, 2) - 0.5 * cos_mode(g, 7);
  const RealField expected = 2.0 * derivative(sin_mode(g, 2)) - 0.5 * derivative(cos_mode(g, 7));
  CHECK(max_abs_diff(derivative(two), expected) < 1e-12);
}

TEST_CASE("H_mu on single modes") {
  // L = pi makes mode 1 the wavenumber xi = 1.
  const Grid g(std::numbers::pi, 64);
  CHECK(apply_h_mu(constant(g, 2.0), 1.0).max_abs() < 1e-15);

  const RealField c = cos_mode(g, 1);
  const RealField hc = apply_h_mu(c, 1.0);
  CHECK(max_abs_diff(hc, std::tanh(1.0) * sin_mode(g, 1)) < 1e-12);
  CHECK(std::tanh(1.0) == doctest::Approx(0.761594).epsilon(1e-6));

  for (double mu : {0.01, 1.0, 4.0}) {
    const double t = std::tanh(std::sqrt(mu) * 3.0);
    CHECK(max_abs_diff(apply_h_mu(sin_mode(g, 3), mu), -t * cos_mode(g, 3)) < 1e-12);
  }
  CHECK_THROWS_AS(apply_h_mu(c, 0.0), InvalidParam);
  CHECK_THROWS_AS(apply_h_mu(c, -1.0), InvalidParam);
}

TEST_CASE("smoothing and B_mu") {
  const Grid g(std::numbers::pi, 64);
  const double mu = 1.0;
  const auto sech2 = [mu](double xi) {
    const double s = 1.0 / std::cosh(std::sqrt(mu) * xi);
    return s * s;
  };

  CHECK(max_abs_diff(apply_smoothing(constant(g, 1.7), mu), constant(g, 1.7)) < 1e-15);
  CHECK(max_abs_diff(apply_smoothing(cos_mode(g, 2), mu), sech2(2.0) * cos_mode(g, 2)) < 1e-14);

  SUBCASE("identity with H_mu^2 + 1 on band-limited data") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
      const RealField u = random_field(g, rng, 0.0, 20);
      const RealField rhs = u + apply_h_mu(apply_h_mu(u, mu), mu);
      CHECK(max_abs_diff(apply_smoothing(u, mu), rhs) < 1e-12);
    }
  }
  SUBCASE("per-mode attenuation is exactly sech^2") {
    std::mt19937_64 rng(6);
    const RealField u = random_field(g, rng, 1.0);
    const SpectralField in = forward_transform(u);
    const SpectralField out = forward_transform(apply_smoothing(u, mu));
    const auto xi = g.wavenumbers();
    for (std::size_t k = 0; k < g.size(); ++k) {
      if (std::abs(in[k]) < 1e-3) continue;
      const double ratio = std::abs(out[k]) / std::abs(in[k]);
      CHECK(std::abs(ratio - sech2(xi[k])) <= 1e-14 * std::max(1.0, ratio) + 1e-14);
    }
    CHECK(l2(apply_smoothing(u, mu)) <= l2(u));
  }
  SUBCASE("B_mu") {
    std::mt19937_64 rng(8);
    const RealField u = random_field(g, rng, 0.3);
    CHECK(apply_b_mu(u, RealField(g), mu).max_abs() == 0.0);
    CHECK(max_abs_diff(apply_b_mu(u, constant(g, 1.0), mu), apply_smoothing(u, mu)) < 1e-12);
    CHECK(max_abs_diff(apply_b_mu(cos_mode(g, 3), constant(g, 1.0), mu),
                       sech2(3.0) * cos_mode(g, 3)) < 1e-12);
    CHECK_THROWS_AS(apply_b_mu(u, RealField(Grid(1.0, 64)), mu), GridMismatch);
  }
}

TEST_CASE("multipliers are linear") {
  const Grid g(30.0, 256);
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> coef(-3.0, 3.0);
  const RealField b = random_field(g, rng);
  for (int trial = 0; trial < 20; ++trial) {
    const RealField u = random_field(g, rng, 0.5);
    const RealField w = random_field(g, rng, 0.5);
    const double a = coef(rng), c = coef(rng);
    const RealField mix = a * u + c * w;
    const auto check = [&](auto&& op) {
      const RealField lhs = op(mix);
      const RealField rhs = a * op(u) + c * op(w);
      CHECK(max_abs_diff(lhs, rhs) <= 1e-12 * std::max(1.0, rhs.max_abs()));
    };
    check([](const RealField& f) { return derivative(f); });
    check([](const RealField& f) { return apply_h_mu(f, 0.7); });
    check([](const RealField& f) { return apply_sech(f, 0.7); });
    check([](const RealField& f) { return apply_smoothing(f, 0.7); });
    check([&](const RealField& f) { return apply_b_mu(f, b, 0.7); });
  }
}

TEST_CASE("H_mu is bounded on L2 (1000 random fields)") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> mu_dist(0.01, 4.0);
  int violations = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const Grid g(10.0, 64u << (trial % 3));
    const RealField u = random_field(g, rng, (trial % 2) ? 1.0 : 0.0, 30);
    if (l2(apply_h_mu(u, mu_dist(rng))) > l2(u)) ++violations;
  }
  CHECK(violations == 0);
}

TEST_CASE("H_mu commutes with the derivative on band-limited data") {
  const Grid g(30.0, 256);
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 20; ++trial) {
    const RealField u = random_field(g, rng, 0.0, 40);
    const RealField a = apply_h_mu(derivative(u), 1.0);
    const RealField b = derivative(apply_h_mu(u, 1.0));
    CHECK(max_abs_diff(a, b) < 1e-12);
  }
}

TEST_CASE("real output for every symbol on rough data") {
  const Grid g(30.0, 512);
  std::mt19937_64 rng(23);
  const RealField b = random_field(g, rng, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const RealField u = random_field(g, rng, 1.0);
    CHECK_NOTHROW(derivative(u));
    CHECK_NOTHROW(apply_h_mu(u, 1.0));
    CHECK_NOTHROW(apply_sech(u, 1.0));
    CHECK_NOTHROW(apply_smoothing(u, 1.0));
    CHECK_NOTHROW(apply_b_mu(u, b, 1.0));
    CHECK_NOTHROW(apply_sech(u, 100.0));  // strong attenuation
  }
}

TEST_CASE("Sobolev norms") {
  const double L = 30.0;
  const Grid g(L, 128);
  const double xi0 = std::numbers::pi / L;

  CHECK(sobolev_norm(RealField(g), 1.0) == 0.0);
  for (double s : {0.0, 0.5, 1.0, 3.0}) {
    CHECK(sobolev_norm(constant(g, -2.0), s) == doctest::Approx(2.0 * std::sqrt(2.0 * L)));
  }
  CHECK(sobolev_norm(sin_mode(g, 1), 0.0) == doctest::Approx(std::sqrt(L)).epsilon(1e-13));
  CHECK(sobolev_norm(sin_mode(g, 1), 1.0) ==
        doctest::Approx(std::sqrt(L * (1.0 + xi0 * xi0))).epsilon(1e-13));

  CHECK(half_derivative_norm(constant(g, 4.0)) < 1e-14);
  const double a = 1.5;
  CHECK(half_derivative_norm(a * sin_mode(g, 1)) ==
        doctest::Approx(a * std::sqrt(L * xi0)).epsilon(1e-13));
  std::mt19937_64 rng(29);
  const RealField u = random_field(g, rng, 0.1);
  CHECK(half_derivative_norm(2.0 * u) == doctest::Approx(2.0 * half_derivative_norm(u)));
}

TEST_CASE("energy") {
  const double L = 30.0;
  const Grid g(L, 128);
  std::mt19937_64 rng(31);
  const RealField v = random_field(g, rng, 0.1);

  CHECK(energy(RealField(g), RealField(g), 2, 1.0) == 0.0);
  for (int order : {0, 1, 3}) {
    const double s = sobolev_norm(v, order);
    CHECK(energy(RealField(g), v, order, 0.3) == doctest::Approx(s * s).epsilon(1e-13));
  }
  // mu = 1, zeta a single mode: (1 + xi^2)^N (1 + |xi|) times the L2 mass L.
  const int m = 3;
  const double xi0 = m * std::numbers::pi / L;
  for (int order : {0, 1, 2}) {
    const double expected = std::pow(1.0 + xi0 * xi0, order) * (1.0 + xi0) * L;
    CHECK(energy(sin_mode(g, m), RealField(g), order, 1.0) ==
          doctest::Approx(expected).epsilon(1e-12));
  }
  CHECK_THROWS_AS(energy(v, v, 0, 0.0), InvalidParam);
  CHECK_THROWS_AS(energy(v, v, -1, 1.0), InvalidParam);
  CHECK_THROWS_AS(energy(v, RealField(Grid(1.0, 128)), 0, 1.0), GridMismatch);
}

TEST_CASE("field arithmetic checks grids") {
  const RealField a(Grid(1.0, 16));
  const RealField b(Grid(2.0, 16));
  CHECK_THROWS_AS(a + b, GridMismatch);
  CHECK_THROWS_AS(a * b, GridMismatch);
}

TEST_CASE("a grid is shareable across threads") {
  const Grid g(30.0, 1024);
  std::mt19937_64 rng(37);
  const RealField u = random_field(g, rng, 0.5);
  const RealField serial = apply_h_mu(derivative(u), 1.0);
  std::vector<std::future<RealField>> jobs;
  for (int t = 0; t < 8; ++t) {
    jobs.push_back(std::async(std::launch::async, [&] { return apply_h_mu(derivative(u), 1.0); }));
  }
  for (auto& j : jobs) CHECK(max_abs_diff(j.get(), serial) == 0.0);
}
