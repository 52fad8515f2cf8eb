#include "deepwave/stepping.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace deepwave {

void StepConfig::validate() const {
  if (!(cfl_sigma > 0.0 && cfl_sigma < 1.0)) throw InvalidParam("cfl_sigma must lie in (0, 1)");
  if (dt_mode == DtMode::fixed && !(dt_fixed > 0.0)) {
    throw InvalidParam("fixed time stepping needs dt_fixed > 0");
  }
  if (!(dt_max >= 0.0) || !std::isfinite(dt_max)) throw InvalidParam("dt_max must be >= 0");
}

double default_dt_max(const Grid& grid, double mu) {
  if (!(mu > 0.0)) throw InvalidParam("mu must be positive");
  const double xi = grid.max_wavenumber();
  const double omega_max = std::sqrt(xi * std::tanh(std::sqrt(mu) * xi));
  // Forward Euler multiplies the stiffest mode by sqrt(1 + (omega dt)^2) per
  // step, i.e. roughly exp(omega^2 dt / 2) per unit time. The second bound
  // keeps that growth rate at 1/4 regardless of resolution.
  return std::min(0.5 / omega_max, 0.5 / (omega_max * omega_max));
}

void lax_wendroff_advect(std::span<const double> u, std::span<const double> courant,
                         std::span<double> out) {
  const std::size_t n = u.size();
  for (std::size_t j = 0; j < n; ++j) {
    const double left = u[(j + n - 1) % n];
    const double right = u[(j + 1) % n];
    const double c = courant[j];
    out[j] = u[j] - 0.5 * c * (right - left) + 0.5 * c * c * (right - 2.0 * u[j] + left);
  }
}

void lax_wendroff_quadratic_flux(std::span<const double> v, double flux_coeff,
                                 double dt_over_dx, std::span<double> out) {
  const std::size_t n = v.size();
  // face[j] is the numerical flux through j+1/2.
  std::vector<double> face(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double vl = v[j];
    const double vr = v[(j + 1) % n];
    const double fl = flux_coeff * vl * vl;
    const double fr = flux_coeff * vr * vr;
    const double jacobian = 2.0 * flux_coeff * 0.5 * (vl + vr);
    face[j] = 0.5 * (fl + fr) - 0.5 * dt_over_dx * jacobian * (fr - fl);
  }
  for (std::size_t j = 0; j < n; ++j) {
    out[j] = v[j] - dt_over_dx * (face[j] - face[(j + n - 1) % n]);
  }
}

namespace {

void require_positive_dt(double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidParam("dt must be positive and finite");
}

// Largest transport speed (eps sqrt(mu)/2) max(|w|, 3|v|).
double max_transport_speed(const TransportSpeeds& speeds, double steepness) {
  return 0.5 * steepness * std::max(speeds.w.max_abs(), 3.0 * speeds.v.max_abs());
}

}  // namespace

WaveState dispersive_step(const WaveState& state, const PhysicalParams& params,
                          const Bathymetry& bathy, double dt) {
  require_positive_dt(dt);
  const Tendency rhs = dispersive_rhs(state, params, bathy);
  WaveState next(state.zeta + dt * rhs.d_zeta, state.v + dt * rhs.d_v, state.time + dt);
  if (!next.all_finite()) {
    throw NonFiniteError("dispersive step produced non-finite values at t=" +
                             std::to_string(state.time),
                         state);
  }
  return next;
}

double transport_courant(const WaveState& state, const PhysicalParams& params, double dt) {
  const double s = params.steepness();
  if (s == 0.0) return 0.0;
  return max_transport_speed(transport_speeds(state, params), s) * dt / state.grid().dx();
}

WaveState transport_step(const WaveState& state, const PhysicalParams& params, double dt) {
  require_positive_dt(dt);
  params.validate();
  const double s = params.steepness();
  if (s == 0.0) {
    WaveState same = state;
    same.time += dt;
    return same;
  }

  const TransportSpeeds speeds = transport_speeds(state, params);
  const double dx = state.grid().dx();
  const double lambda = max_transport_speed(speeds, s) * dt / dx;
  if (!(lambda < 1.0)) {
    throw CflViolation("transport Courant number " + std::to_string(lambda) + " >= 1");
  }

  const Grid& grid = state.grid();
  RealField courant = (0.5 * s * dt / dx) * speeds.w;
  RealField zeta(grid);
  RealField v(grid);
  lax_wendroff_advect(state.zeta.values(), courant.values(), zeta.values());
  lax_wendroff_quadratic_flux(state.v.values(), 0.75 * s, dt / dx, v.values());

  WaveState next(std::move(zeta), std::move(v), state.time + dt);
  if (!next.all_finite()) {
    throw NonFiniteError("transport step produced non-finite values at t=" +
                             std::to_string(state.time),
                         state);
  }
  return next;
}

WaveState lie_step(const WaveState& state, const PhysicalParams& params, const Bathymetry& bathy,
                   double dt) {
  WaveState out = transport_step(dispersive_step(state, params, bathy, dt), params, dt);
  out.time = state.time + dt;
  return out;
}

double cfl_dt(const WaveState& state, const PhysicalParams& params, const StepConfig& cfg) {
  cfg.validate();
  params.validate();
  if (cfg.dt_mode == DtMode::fixed) {
    const double lambda = transport_courant(state, params, cfg.dt_fixed);
    if (!(lambda < 1.0)) {
      throw CflViolation("fixed dt " + std::to_string(cfg.dt_fixed) +
                         " gives transport Courant number " + std::to_string(lambda));
    }
    return cfg.dt_fixed;
  }

  const double dt_max = cfg.dt_max > 0.0 ? cfg.dt_max : default_dt_max(state.grid(), params.mu);
  const double s = params.steepness();
  if (s == 0.0) return dt_max;
  const double s_max = max_transport_speed(transport_speeds(state, params), s);
  if (s_max == 0.0) return dt_max;
  return std::min(cfg.cfl_sigma * state.grid().dx() / s_max, dt_max);
}

StepRecord measure(const WaveState& state, double mu, double dt) {
  StepRecord r;
  r.time = state.time;
  r.dt = dt;
  r.energy0 = energy(state, 0, mu);
  r.max_zeta = state.zeta.max_abs();
  r.max_v = state.v.max_abs();
  r.mass = state.zeta.integral();
  r.momentum = state.v.integral();
  return r;
}

RunResult run(const WaveState& initial, const PhysicalParams& params, const Bathymetry& bathy,
              const StepConfig& cfg, double t_final, std::span<const double> snapshot_times) {
  params.validate();
  cfg.validate();
  require_same_grid(initial.grid(), bathy.grid(), "run");
  const double t_start = initial.time;
  if (!(t_final >= t_start) || !std::isfinite(t_final)) {
    throw InvalidParam("t_final must not precede the initial time");
  }
  if (!std::is_sorted(snapshot_times.begin(), snapshot_times.end())) {
    throw InvalidParam("snapshot times must be sorted");
  }
  for (double t : snapshot_times) {
    if (t < t_start || t > t_final) throw InvalidParam("snapshot time outside the run interval");
  }

  RunResult result{{}, {}, initial};
  WaveState& state = result.final_state;
  std::size_t next_snapshot = 0;

  auto take_snapshots = [&] {
    while (next_snapshot < snapshot_times.size() && snapshot_times[next_snapshot] <= state.time) {
      result.snapshots.push_back(state);
      ++next_snapshot;
    }
  };
  take_snapshots();

  while (state.time < t_final) {
    const double target =
        next_snapshot < snapshot_times.size() ? snapshot_times[next_snapshot] : t_final;
    double dt = cfl_dt(state, params, cfg);
    // Clip onto the target, absorbing slivers left by accumulated roundoff.
    const bool land = state.time + dt >= target - 1e-9 * dt;
    if (land) dt = target - state.time;

    WaveState next = [&] {
      try {
        return lie_step(state, params, bathy, dt);
      } catch (const NonFiniteError& e) {
        throw NonFiniteError(e.what(), state);
      }
    }();
    if (land) next.time = target;
    state = std::move(next);
    result.diagnostics.records.push_back(measure(state, params.mu, dt));
    take_snapshots();
  }

  if (snapshot_times.empty()) result.snapshots.push_back(state);
  return result;
}

}  // namespace deepwave
