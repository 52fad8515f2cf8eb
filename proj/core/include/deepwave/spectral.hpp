#pragma once

// Periodic grid, discrete Fourier transforms, Fourier multipliers and the
// discrete Sobolev/energy norms used throughout the solver.
//
// Transform convention: U_k = sum_j u_j exp(-2 pi i j k / N) and
// u_j = (1/N) sum_k U_k exp(2 pi i j k / N), coefficients stored in the usual
// FFT order. Index k carries the physical wavenumber xi_k = pi m / L where m is
// the signed index (k for k < N/2, k - N otherwise).

#include <complex>
#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "deepwave/errors.hpp"

namespace deepwave {

using Complex = std::complex<double>;

/// Uniform periodic grid on [-L, L) with N = 2^p nodes.
///
/// Cheap to copy: all copies share one immutable block holding the nodes,
/// wavenumbers and FFT plans, so a Grid may be handed to any number of
/// threads.
class Grid {
 public:
  /// Throws InvalidParam unless half_length > 0 and n_points is a power of
  /// two no smaller than 4.
  Grid(double half_length, std::size_t n_points);

  double half_length() const noexcept;
  std::size_t size() const noexcept;
  double dx() const noexcept;

  std::span<const double> nodes() const noexcept;
  /// Physical wavenumbers in transform order.
  std::span<const double> wavenumbers() const noexcept;

  std::size_t nyquist_index() const noexcept { return size() / 2; }
  /// |xi| of the Nyquist mode, pi N / (2 L).
  double max_wavenumber() const noexcept;

  /// Same half-length and node count.
  bool operator==(const Grid& other) const noexcept;

  /// Unnormalised forward DFT of a real sequence.
  void forward(std::span<const double> in, std::span<Complex> out) const;
  /// Unnormalised backward DFT (no 1/N factor).
  void backward(std::span<const Complex> in, std::span<Complex> out) const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

/// Real samples on a grid.
class RealField {
 public:
  /// Zero field.
  explicit RealField(Grid grid);
  /// Throws InvalidParam if the sample count differs from the grid size.
  RealField(Grid grid, std::vector<double> values);

  template <class F>
  static RealField from_function(const Grid& grid, F&& f) {
    RealField out(grid);
    const auto x = grid.nodes();
    for (std::size_t j = 0; j < x.size(); ++j) out.values_[j] = f(x[j]);
    return out;
  }

  const Grid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }
  double operator[](std::size_t j) const noexcept { return values_[j]; }
  double& operator[](std::size_t j) noexcept { return values_[j]; }

  double max_abs() const noexcept;
  bool all_finite() const noexcept;
  /// Riemann sum sum_j u_j dx.
  double integral() const noexcept;

  RealField& operator+=(const RealField& other);
  RealField& operator-=(const RealField& other);
  RealField& operator*=(double scale) noexcept;
  /// Pointwise product.
  RealField& operator*=(const RealField& other);

  friend RealField operator+(RealField a, const RealField& b) { return a += b; }
  friend RealField operator-(RealField a, const RealField& b) { return a -= b; }
  friend RealField operator*(RealField a, const RealField& b) { return a *= b; }
  friend RealField operator*(double s, RealField a) { return a *= s; }
  friend RealField operator*(RealField a, double s) { return a *= s; }
  friend RealField operator-(RealField a) { return a *= -1.0; }

 private:
  Grid grid_;
  std::vector<double> values_;
};

/// Fourier coefficients in transform order.
class SpectralField {
 public:
  explicit SpectralField(Grid grid);
  SpectralField(Grid grid, std::vector<Complex> coefficients);

  const Grid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return coefficients_.size(); }
  std::span<const Complex> coefficients() const noexcept { return coefficients_; }
  std::span<Complex> coefficients() noexcept { return coefficients_; }
  Complex operator[](std::size_t k) const noexcept { return coefficients_[k]; }
  Complex& operator[](std::size_t k) noexcept { return coefficients_[k]; }

  double max_abs() const noexcept;
  /// max_k |U_k - conj(U_{-k})| relative to max_k |U_k| (0 for a zero field).
  double hermitian_defect() const noexcept;

 private:
  Grid grid_;
  std::vector<Complex> coefficients_;
};

/// Throws GridMismatch when the two grids differ.
void require_same_grid(const Grid& a, const Grid& b, const char* context);

SpectralField forward_transform(const RealField& u);

/// Inverse DFT with the imaginary part dropped. Throws SymmetryViolation if
/// the discarded residue exceeds 1e-10 max|U| / N.
RealField inverse_transform(const SpectralField& u_hat);

/// As above with the tolerance taken relative to max(max|U|, reference_scale).
/// A multiplier that strongly attenuates passes the pre-multiplication scale
/// here, since the roundoff asymmetry of the forward transform is relative to
/// that scale rather than to the attenuated output.
RealField inverse_transform(const SpectralField& u_hat, double reference_scale);

/// Odd real-valued symbols (i xi, -i tanh) cannot be represented on the
/// Nyquist mode of a real field; such multipliers must drop it.
enum class NyquistPolicy { keep, zero };

using Symbol = std::function<Complex(double)>;

/// Multiplies U_k by symbol(xi_k) in place. Returns max|U_in| * max|symbol|,
/// the scale to hand to inverse_transform.
double multiply_spectrum(SpectralField& u_hat, const Symbol& symbol,
                       NyquistPolicy nyquist = NyquistPolicy::keep);

RealField apply_multiplier(const RealField& u, const Symbol& symbol,
                           NyquistPolicy nyquist = NyquistPolicy::keep);

/// d/dx, symbol i xi with the Nyquist mode zeroed.
RealField derivative(const RealField& u);

/// H_mu with symbol -i tanh(sqrt(mu) xi); zero at xi = 0 and at Nyquist.
RealField apply_h_mu(const RealField& u, double mu);

/// sech(sqrt(mu) D).
RealField apply_sech(const RealField& u, double mu);

/// H_mu^2 + 1, i.e. sech^2(sqrt(mu) D).
RealField apply_smoothing(const RealField& u, double mu);

/// B_mu u = sech(sqrt(mu) D)(b sech(sqrt(mu) D) u).
RealField apply_b_mu(const RealField& u, const RealField& b, double mu);

/// Discrete H^s norm: sqrt((2L / N^2) sum_k (1 + xi_k^2)^s |U_k|^2).
double sobolev_norm(const RealField& u, double s);

/// | |D|^{1/2} Lambda^s u |_2 with the same quadrature as sobolev_norm.
double half_derivative_norm(const RealField& u, double s = 0.0);

/// E^N = (1/sqrt(mu)) |Lambda^N zeta|^2 + | |D|^{1/2} Lambda^N zeta |^2 + |v|_{H^N}^2.
double energy(const RealField& zeta, const RealField& v, int order, double mu);

}  // namespace deepwave
