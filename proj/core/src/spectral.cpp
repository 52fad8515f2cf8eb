#include "deepwave/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cstdio>
#include <cmath>
#include <mutex>
#include <numbers>
#include <string>

namespace deepwave {

namespace {

// The FFTW planner is not re-entrant; execution with fftw_execute_dft is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::string format_sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

fftw_complex* as_fftw(Complex* p) { return reinterpret_cast<fftw_complex*>(p); }

}  // namespace

struct Grid::Impl {
  double half_length;
  std::size_t n;
  double dx;
  std::vector<double> nodes;
  std::vector<double> wavenumbers;
  fftw_plan forward_plan = nullptr;
  fftw_plan backward_plan = nullptr;

  Impl(double L, std::size_t n_points) : half_length(L), n(n_points), dx(2.0 * L / n_points) {
    nodes.resize(n);
    wavenumbers.resize(n);
    const auto half = static_cast<std::ptrdiff_t>(n / 2);
    for (std::size_t j = 0; j < n; ++j) {
      nodes[j] = -L + static_cast<double>(j) * dx;
      auto m = static_cast<std::ptrdiff_t>(j);
      if (m >= half) m -= static_cast<std::ptrdiff_t>(n);
      wavenumbers[j] = std::numbers::pi * static_cast<double>(m) / L;
    }

    // Plans are made on scratch buffers and later executed on caller arrays.
    std::vector<Complex> a(n), b(n);
    const int len = static_cast<int>(n);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    std::lock_guard lock(planner_mutex());
    forward_plan = fftw_plan_dft_1d(len, as_fftw(a.data()), as_fftw(b.data()), FFTW_FORWARD, flags);
    backward_plan = fftw_plan_dft_1d(len, as_fftw(a.data()), as_fftw(b.data()), FFTW_BACKWARD, flags);
  }

  ~Impl() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(forward_plan);
    fftw_destroy_plan(backward_plan);
  }

  Impl(const Impl&) = delete;
  Impl& operator=(const Impl&) = delete;
};

Grid::Grid(double half_length, std::size_t n_points) {
  if (!(half_length > 0.0) || !std::isfinite(half_length)) {
    throw InvalidParam("grid half_length must be positive and finite");
  }
  if (n_points < 4 || !is_power_of_two(n_points)) {
    throw InvalidParam("grid n_points must be a power of two >= 4, got " +
                       std::to_string(n_points));
  }
  impl_ = std::make_shared<const Impl>(half_length, n_points);
}

double Grid::half_length() const noexcept { return impl_->half_length; }
std::size_t Grid::size() const noexcept { return impl_->n; }
double Grid::dx() const noexcept { return impl_->dx; }
std::span<const double> Grid::nodes() const noexcept { return impl_->nodes; }
std::span<const double> Grid::wavenumbers() const noexcept { return impl_->wavenumbers; }

double Grid::max_wavenumber() const noexcept {
  return std::abs(impl_->wavenumbers[nyquist_index()]);
}

bool Grid::operator==(const Grid& other) const noexcept {
  return impl_ == other.impl_ ||
         (impl_->n == other.impl_->n && impl_->half_length == other.impl_->half_length);
}

void Grid::forward(std::span<const double> in, std::span<Complex> out) const {
  std::vector<Complex> buffer(in.begin(), in.end());
  fftw_execute_dft(impl_->forward_plan, as_fftw(buffer.data()), as_fftw(out.data()));
}

void Grid::backward(std::span<const Complex> in, std::span<Complex> out) const {
  // FFTW may clobber the input of an out-of-place transform.
  std::vector<Complex> buffer(in.begin(), in.end());
  fftw_execute_dft(impl_->backward_plan, as_fftw(buffer.data()), as_fftw(out.data()));
}

// ---------------------------------------------------------------------------

RealField::RealField(Grid grid) : grid_(std::move(grid)), values_(grid_.size(), 0.0) {}

RealField::RealField(Grid grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw InvalidParam("field has " + std::to_string(values_.size()) + " samples, grid has " +
                       std::to_string(grid_.size()));
  }
}

double RealField::max_abs() const noexcept {
  double m = 0.0;
  for (double x : values_) m = std::max(m, std::abs(x));
  return m;
}

bool RealField::all_finite() const noexcept {
  return std::all_of(values_.begin(), values_.end(), [](double x) { return std::isfinite(x); });
}

double RealField::integral() const noexcept {
  double s = 0.0;
  for (double x : values_) s += x;
  return s * grid_.dx();
}

RealField& RealField::operator+=(const RealField& other) {
  require_same_grid(grid_, other.grid_, "field addition");
  for (std::size_t j = 0; j < values_.size(); ++j) values_[j] += other.values_[j];
  return *this;
}

RealField& RealField::operator-=(const RealField& other) {
  require_same_grid(grid_, other.grid_, "field subtraction");
  for (std::size_t j = 0; j < values_.size(); ++j) values_[j] -= other.values_[j];
  return *this;
}

RealField& RealField::operator*=(double scale) noexcept {
  for (double& x : values_) x *= scale;
  return *this;
}

RealField& RealField::operator*=(const RealField& other) {
  require_same_grid(grid_, other.grid_, "field product");
  for (std::size_t j = 0; j < values_.size(); ++j) values_[j] *= other.values_[j];
  return *this;
}

// ---------------------------------------------------------------------------

SpectralField::SpectralField(Grid grid)
    : grid_(std::move(grid)), coefficients_(grid_.size(), Complex{}) {}

SpectralField::SpectralField(Grid grid, std::vector<Complex> coefficients)
    : grid_(std::move(grid)), coefficients_(std::move(coefficients)) {
  if (coefficients_.size() != grid_.size()) {
    throw InvalidParam("spectral field size does not match grid");
  }
}

double SpectralField::max_abs() const noexcept {
  double m = 0.0;
  for (const Complex& c : coefficients_) m = std::max(m, std::abs(c));
  return m;
}

double SpectralField::hermitian_defect() const noexcept {
  const double scale = max_abs();
  if (scale == 0.0) return 0.0;
  const std::size_t n = coefficients_.size();
  double worst = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t mirror = (n - k) % n;
    worst = std::max(worst, std::abs(coefficients_[k] - std::conj(coefficients_[mirror])));
  }
  return worst / scale;
}

// ---------------------------------------------------------------------------

void require_same_grid(const Grid& a, const Grid& b, const char* context) {
  if (!(a == b)) throw GridMismatch(std::string(context) + ": fields live on different grids");
}

SpectralField forward_transform(const RealField& u) {
  SpectralField out(u.grid());
  u.grid().forward(u.values(), out.coefficients());
  return out;
}

RealField inverse_transform(const SpectralField& u_hat) { return inverse_transform(u_hat, 0.0); }

RealField inverse_transform(const SpectralField& u_hat, double reference_scale) {
  const Grid& grid = u_hat.grid();
  const std::size_t n = grid.size();
  std::vector<Complex> raw(n);
  grid.backward(u_hat.coefficients(), raw);

  const double inv_n = 1.0 / static_cast<double>(n);
  const double bound = 1e-10 * std::max(u_hat.max_abs(), reference_scale) * inv_n;
  RealField out(grid);
  double residue = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    out[j] = raw[j].real() * inv_n;
    residue = std::max(residue, std::abs(raw[j].imag()) * inv_n);
  }
  if (residue > bound) {
    throw SymmetryViolation("inverse transform: imaginary residue " + format_sci(residue) +
                            " exceeds " + format_sci(bound));
  }
  return out;
}

double multiply_spectrum(SpectralField& u_hat, const Symbol& symbol, NyquistPolicy nyquist) {
  const auto xi = u_hat.grid().wavenumbers();
  auto c = u_hat.coefficients();
  double input_max = 0.0;
  double symbol_max = 0.0;
  for (std::size_t k = 0; k < c.size(); ++k) {
    const Complex m = symbol(xi[k]);
    input_max = std::max(input_max, std::abs(c[k]));
    symbol_max = std::max(symbol_max, std::abs(m));
    c[k] *= m;
  }
  if (nyquist == NyquistPolicy::zero) c[u_hat.grid().nyquist_index()] = 0.0;
  return input_max * symbol_max;
}

RealField apply_multiplier(const RealField& u, const Symbol& symbol, NyquistPolicy nyquist) {
  SpectralField u_hat = forward_transform(u);
  const double scale = multiply_spectrum(u_hat, symbol, nyquist);
  return inverse_transform(u_hat, scale);
}

namespace {

void require_positive_mu(double mu) {
  if (!(mu > 0.0)) throw InvalidParam("mu must be positive");
}

}  // namespace

RealField derivative(const RealField& u) {
  return apply_multiplier(u, [](double xi) { return Complex(0.0, xi); }, NyquistPolicy::zero);
}

RealField apply_h_mu(const RealField& u, double mu) {
  require_positive_mu(mu);
  const double root_mu = std::sqrt(mu);
  return apply_multiplier(
      u, [root_mu](double xi) { return Complex(0.0, -std::tanh(root_mu * xi)); },
      NyquistPolicy::zero);
}

RealField apply_sech(const RealField& u, double mu) {
  require_positive_mu(mu);
  const double root_mu = std::sqrt(mu);
  return apply_multiplier(u, [root_mu](double xi) { return Complex(1.0 / std::cosh(root_mu * xi)); });
}

RealField apply_smoothing(const RealField& u, double mu) {
  require_positive_mu(mu);
  const double root_mu = std::sqrt(mu);
  return apply_multiplier(u, [root_mu](double xi) {
    const double s = 1.0 / std::cosh(root_mu * xi);
    return Complex(s * s);
  });
}

RealField apply_b_mu(const RealField& u, const RealField& b, double mu) {
  require_same_grid(u.grid(), b.grid(), "apply_b_mu");
  return apply_sech(b * apply_sech(u, mu), mu);
}

namespace {

template <class Weight>
double weighted_norm(const RealField& u, Weight&& weight) {
  const Grid& grid = u.grid();
  const SpectralField u_hat = forward_transform(u);
  const auto xi = grid.wavenumbers();
  double sum = 0.0;
  for (std::size_t k = 0; k < xi.size(); ++k) sum += weight(xi[k]) * std::norm(u_hat[k]);
  const double n = static_cast<double>(grid.size());
  return std::sqrt(2.0 * grid.half_length() / (n * n) * sum);
}

}  // namespace

double sobolev_norm(const RealField& u, double s) {
  if (s == 0.0) return weighted_norm(u, [](double) { return 1.0; });
  return weighted_norm(u, [s](double xi) { return std::pow(1.0 + xi * xi, s); });
}

double half_derivative_norm(const RealField& u, double s) {
  return weighted_norm(u, [s](double xi) { return std::abs(xi) * std::pow(1.0 + xi * xi, s); });
}

double energy(const RealField& zeta, const RealField& v, int order, double mu) {
  require_positive_mu(mu);
  if (order < 0) throw InvalidParam("energy order must be nonnegative");
  require_same_grid(zeta.grid(), v.grid(), "energy");
  const double s = static_cast<double>(order);
  const double z = sobolev_norm(zeta, s);
  const double h = half_derivative_norm(zeta, s);
  const double w = sobolev_norm(v, s);
  return z * z / std::sqrt(mu) + h * h + w * w;
}

}  // namespace deepwave
