#pragma once

// Shared helpers for the unit tests: seeded random fields, a brute-force DFT
// and small comparison utilities.

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "deepwave/spectral.hpp"

namespace deepwave::test {

inline double max_abs_diff(const RealField& a, const RealField& b) {
  double m = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a[j] - b[j]));
  return m;
}

/// Sum of a few random Fourier modes (with random phase) plus white noise
/// when `noise` > 0. Deterministic for a given seed.
inline RealField random_field(const Grid& grid, std::mt19937_64& rng, double noise = 0.0,
                              int max_mode = 8) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_int_distribution<int> mode(1, max_mode);
  const double k0 = std::numbers::pi / grid.half_length();
  RealField u(grid);
  const double c = unit(rng);
  std::vector<std::pair<double, double>> terms;
  for (int t = 0; t < 4; ++t) terms.emplace_back(mode(rng) * k0, unit(rng));
  const double phase = 3.0 * unit(rng);
  const auto x = grid.nodes();
  for (std::size_t j = 0; j < u.size(); ++j) {
    double s = c;
    for (auto [k, a] : terms) s += a * std::cos(k * x[j] + phase * a);
    u[j] = s + noise * unit(rng);
  }
  return u;
}

/// Direct evaluation of U_k = sum_j u_j exp(-2 pi i j k / N).
inline std::vector<std::complex<double>> brute_dft(const RealField& u) {
  const std::size_t n = u.size();
  std::vector<std::complex<double>> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<double> s{};
    for (std::size_t j = 0; j < n; ++j) {
      const double arg = -2.0 * std::numbers::pi * static_cast<double>((j * k) % n) /
                         static_cast<double>(n);
      s += u[j] * std::complex<double>(std::cos(arg), std::sin(arg));
    }
    out[k] = s;
  }
  return out;
}

/// Single mode cos(m pi x / L + phase) with integer m.
inline RealField cos_mode(const Grid& grid, int m, double phase = 0.0) {
  const double k = m * std::numbers::pi / grid.half_length();
  return RealField::from_function(grid, [=](double x) { return std::cos(k * x + phase); });
}

inline RealField sin_mode(const Grid& grid, int m) {
  const double k = m * std::numbers::pi / grid.half_length();
  return RealField::from_function(grid, [=](double x) { return std::sin(k * x); });
}

inline RealField constant(const Grid& grid, double c) {
  return RealField::from_function(grid, [=](double) { return c; });
}

}  // namespace deepwave::test
