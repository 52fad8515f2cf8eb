#include "deepwave/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <future>
#include <limits>

namespace deepwave {

double state_error(const WaveState& a, const WaveState& b) {
  require_same_grid(a.grid(), b.grid(), "state_error");
  const double dz = sobolev_norm(a.zeta - b.zeta, 1.0);
  const double dv = sobolev_norm(a.v - b.v, 0.0);
  return std::sqrt(dz * dz + dv * dv);
}

OrderFit fit_order(std::span<const ErrorRow> rows) {
  if (rows.size() < 2) throw InsufficientPoints("order fit needs at least two (dt, error) rows");
  const double n = static_cast<double>(rows.size());
  double sx = 0.0, sy = 0.0;
  for (const ErrorRow& r : rows) {
    if (!(r.dt > 0.0) || !(r.error > 0.0)) {
      throw InvalidParam("order fit needs positive dt and error values");
    }
    sx += std::log(r.dt);
    sy += std::log(r.error);
  }
  const double mx = sx / n;
  const double my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (const ErrorRow& r : rows) {
    const double x = std::log(r.dt) - mx;
    sxx += x * x;
    sxy += x * (std::log(r.error) - my);
  }
  if (sxx == 0.0) throw InsufficientPoints("order fit needs at least two distinct step sizes");

  OrderFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0.0;
  for (const ErrorRow& r : rows) {
    const double e = std::log(r.error) - (fit.intercept + fit.slope * std::log(r.dt));
    ss += e * e;
  }
  fit.residual = std::sqrt(ss / n);
  return fit;
}

double estimate_order(const ErrorTable& table) { return fit_order(table.rows).slope; }

namespace {

void finish_table(ErrorTable& table) {
  const bool fittable = std::all_of(table.rows.begin(), table.rows.end(),
                                    [](const ErrorRow& r) { return r.error > 0.0; });
  if (fittable) {
    const OrderFit fit = fit_order(table.rows);
    table.slope = fit.slope;
    table.residual = fit.residual;
  } else {
    table.slope = std::numeric_limits<double>::quiet_NaN();
    table.residual = std::numeric_limits<double>::quiet_NaN();
  }
}

// Distinct step sizes, largest first.
std::vector<double> distinct_descending(std::span<const double> dts) {
  std::vector<double> out(dts.begin(), dts.end());
  for (double dt : out) {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidParam("time steps must be positive");
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (out.size() < 2) {
    throw InsufficientPoints("a convergence study needs at least two distinct time steps");
  }
  return out;
}

WaveState run_fixed(const Scenario& sc, double dt) {
  StepConfig cfg;
  cfg.dt_mode = DtMode::fixed;
  cfg.dt_fixed = dt;
  return run(sc.initial, sc.params, sc.bathymetry, cfg, sc.t_final).final_state;
}

}  // namespace

Scenario example1_scenario(BathymetryKind bottom, double t_final) {
  const Grid grid(30.0, 256);
  PhysicalParams params{0.1, 1.0, 0.5};
  return Scenario{params, make_bathymetry(BathymetrySpec{bottom}, grid),
                  make_initial(InitialSpec{InitialKind::sech_pulse}, grid), t_final};
}

ErrorTable convergence_study(const Scenario& scenario, std::span<const double> dts) {
  const std::vector<double> steps = distinct_descending(dts);
  const double dt_ref = steps.back() / 4.0;

  auto reference = std::async(std::launch::async, run_fixed, std::cref(scenario), dt_ref);
  std::vector<std::future<WaveState>> runs;
  runs.reserve(steps.size());
  for (double dt : steps) runs.push_back(std::async(std::launch::async, run_fixed, std::cref(scenario), dt));

  const WaveState ref = reference.get();
  ErrorTable table;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    table.rows.push_back({steps[i], state_error(runs[i].get(), ref)});
  }
  finish_table(table);
  return table;
}

RealField kdv_soliton(double alpha, double t, const Grid& grid) {
  if (!(alpha > 0.0)) throw InvalidParam("soliton amplitude must be positive");
  const double width = std::sqrt(0.75 * alpha);
  const double shift = 0.5 * alpha * t;
  return RealField::from_function(grid, [=](double x) {
    const double s = 1.0 / std::cosh(width * (x - shift));
    return alpha * s * s;
  });
}

QuotientTable kdv_comparison(std::span<const double> eps_list, const Grid& grid, double t_final,
                             double cfl_sigma) {
  constexpr double kAlpha = 1.0;
  // eps = mu = 0 leaves the model's range; the mu -> 0+ limit is used instead.
  constexpr double kMuFloor = 1e-12;

  const WaveState initial = make_initial(InitialSpec{InitialKind::kdv_soliton, kAlpha}, grid);
  const Bathymetry flat = make_bathymetry(BathymetrySpec{BathymetryKind::flat}, grid);

  auto one = [&](double eps) {
    const PhysicalParams params{eps, std::max(eps, kMuFloor), 0.0};
    params.validate();
    StepConfig cfg;
    cfg.cfl_sigma = cfl_sigma;
    const WaveState end = run(initial, params, flat, cfg, t_final).final_state;
    // (zeta, v)(t, x) ~ (f, f)(mu t, x - t) with f the KdV soliton, i.e. the
    // profile f0 translated by (1 + mu alpha / 2) T.
    const double width = std::sqrt(0.75 * kAlpha);
    const double travel = (1.0 + 0.5 * kAlpha * eps) * t_final;
    const RealField shifted = RealField::from_function(grid, [&](double x) {
      const double s = 1.0 / std::cosh(width * (x - travel));
      return kAlpha * s * s;
    });
    return (end.zeta - shifted).max_abs() / kAlpha;
  };

  std::vector<std::future<double>> jobs;
  for (double eps : eps_list) jobs.push_back(std::async(std::launch::async, one, eps));
  QuotientTable table;
  for (std::size_t i = 0; i < eps_list.size(); ++i) table.rows.push_back({eps_list[i], jobs[i].get()});
  return table;
}

std::pair<WaveState, WaveState> run_paired(const WaveState& initial, const PhysicalParams& params,
                                           const Bathymetry& first, const Bathymetry& second,
                                           double t_final, double cfl_sigma) {
  StepConfig cfg;
  cfg.cfl_sigma = cfl_sigma;
  WaveState a = initial;
  WaveState b = initial;
  while (a.time < t_final) {
    double dt = std::min(cfl_dt(a, params, cfg), cfl_dt(b, params, cfg));
    const bool land = a.time + dt >= t_final - 1e-9 * dt;
    if (land) dt = t_final - a.time;
    a = lie_step(a, params, first, dt);
    b = lie_step(b, params, second, dt);
    if (land) a.time = b.time = t_final;
  }
  return {std::move(a), std::move(b)};
}

QuotientTable homogenization_sweep(std::span<const double> alpha_list,
                                   const PhysicalParams& params, const Grid& grid,
                                   double t_final, double cfl_sigma) {
  params.validate();
  const WaveState initial = make_initial(InitialSpec{InitialKind::sech2_pulse}, grid);
  const Bathymetry flat = make_bathymetry(BathymetrySpec{BathymetryKind::flat}, grid);
  const double peak = initial.zeta.max_abs();

  auto one = [&](double alpha) {
    const Bathymetry rough =
        make_bathymetry(BathymetrySpec{BathymetryKind::cos_alpha, alpha}, grid);
    const auto [over_rough, over_flat] =
        run_paired(initial, params, rough, flat, t_final, cfl_sigma);
    return (over_rough.zeta - over_flat.zeta).max_abs() / peak;
  };

  std::vector<std::future<double>> jobs;
  for (double alpha : alpha_list) jobs.push_back(std::async(std::launch::async, one, alpha));
  QuotientTable table;
  for (std::size_t i = 0; i < alpha_list.size(); ++i) {
    table.rows.push_back({alpha_list[i], jobs[i].get()});
  }
  return table;
}

WaveState exact_linear_propagator(const WaveState& initial, double mu, double t) {
  if (!(mu > 0.0)) throw InvalidParam("mu must be positive");
  if (t == 0.0) return initial;
  const Grid& grid = initial.grid();
  SpectralField z = forward_transform(initial.zeta);
  SpectralField v = forward_transform(initial.v);
  const auto xi = grid.wavenumbers();
  const double root_mu = std::sqrt(mu);
  const Complex i(0.0, 1.0);

  for (std::size_t k = 0; k < xi.size(); ++k) {
    if (xi[k] == 0.0 || k == grid.nyquist_index()) continue;
    const double tau = std::tanh(root_mu * xi[k]);
    const double omega = std::sqrt(xi[k] * tau);
    const double c = std::cos(omega * t);
    const double sn = std::sin(omega * t) / omega;
    const Complex z0 = z[k];
    const Complex v0 = v[k];
    z[k] = c * z0 - i * (tau * sn) * v0;
    v[k] = -i * (xi[k] * sn) * z0 + c * v0;
  }
  return WaveState(inverse_transform(z), inverse_transform(v), initial.time + t);
}

double linear_invariant(const WaveState& state, double mu) {
  const Grid& grid = state.grid();
  const SpectralField z = forward_transform(state.zeta);
  const SpectralField v = forward_transform(state.v);
  const auto xi = grid.wavenumbers();
  const double root_mu = std::sqrt(mu);
  double sum = 0.0;
  for (std::size_t k = 0; k < xi.size(); ++k) {
    const double weight = xi[k] == 0.0 ? 1.0 / root_mu : xi[k] / std::tanh(root_mu * xi[k]);
    sum += weight * std::norm(z[k]) + std::norm(v[k]);
  }
  const double n = static_cast<double>(grid.size());
  return 2.0 * grid.half_length() / (n * n) * sum;
}

ErrorTable linear_oracle_check(const Grid& grid, double mu, std::span<const double> dts,
                               double t_final) {
  const PhysicalParams params{0.0, mu, 0.0};
  params.validate();
  const WaveState initial = make_initial(InitialSpec{InitialKind::sech_pulse}, grid);
  const Bathymetry flat = make_bathymetry(BathymetrySpec{BathymetryKind::flat}, grid);
  const WaveState exact = exact_linear_propagator(initial, mu, t_final);

  ErrorTable table;
  for (double dt : dts) {
    StepConfig cfg;
    cfg.dt_mode = DtMode::fixed;
    cfg.dt_fixed = dt;
    const WaveState end = run(initial, params, flat, cfg, t_final).final_state;
    table.rows.push_back({dt, state_error(end, exact)});
  }
  finish_table(table);
  return table;
}

}  // namespace deepwave
