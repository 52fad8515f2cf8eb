#pragma once

// Lie splitting Y^dt = Phi_A^dt o Phi_D^dt: one forward-Euler pseudospectral
// step of the dispersive subsystem followed by one Lax-Wendroff step of the
// transport subsystem
//
//   zeta_t + (eps sqrt(mu) / 2) w zeta_x = 0,   w = (H^2 + 1) v
//   v_t + (3 eps sqrt(mu) / 2) v v_x = 0.

#include <span>
#include <vector>

#include "deepwave/model.hpp"

namespace deepwave {

enum class DtMode { fixed, cfl };

struct StepConfig {
  DtMode dt_mode = DtMode::cfl;
  double dt_fixed = 0.0;
  double cfl_sigma = 0.5;
  /// Upper bound on the step; 0 selects default_dt_max().
  double dt_max = 0.0;

  void validate() const;
};

/// min(0.5 / omega_max, 0.5 / omega_max^2) with
/// omega_max = sqrt(xi_max tanh(sqrt(mu) xi_max)), the fastest linear
/// dispersive frequency the grid resolves.
double default_dt_max(const Grid& grid, double mu);

/// Raised when a step produces NaN/Inf; carries the last finite state.
class NonFiniteError : public Error {
 public:
  NonFiniteError(const std::string& what, WaveState last_valid)
      : Error(what), last_valid_(std::move(last_valid)) {}
  const WaveState& last_valid() const noexcept { return last_valid_; }

 private:
  WaveState last_valid_;
};

// --- stencil kernels (periodic) ----------------------------------------------

/// Lax-Wendroff for u_t + a(x) u_x = 0 with frozen per-node Courant numbers
/// c_j = a_j dt / dx:
///   out_j = u_j - (c_j/2)(u_{j+1} - u_{j-1}) + (c_j^2/2)(u_{j+1} - 2u_j + u_{j-1}).
void lax_wendroff_advect(std::span<const double> u, std::span<const double> courant,
                         std::span<double> out);

/// Conservative Lax-Wendroff for v_t + (k v^2)_x = 0, with the Jacobian at
/// j+1/2 taken from the averaged state (v_j + v_{j+1}) / 2. Written in flux
/// form so sum_j v_j is preserved up to roundoff.
void lax_wendroff_quadratic_flux(std::span<const double> v, double flux_coeff,
                                 double dt_over_dx, std::span<double> out);

// --- substeps ------------------------------------------------------------------

/// One explicit Euler step of the dispersive subsystem. Throws NonFiniteError.
WaveState dispersive_step(const WaveState& state, const PhysicalParams& params,
                          const Bathymetry& bathy, double dt);

/// Largest Courant number of the transport subsystem for a step dt:
/// (eps sqrt(mu) / 2) max_j max(|w_j|, 3|v_j|) dt / dx.
double transport_courant(const WaveState& state, const PhysicalParams& params, double dt);

/// One Lax-Wendroff step of the transport subsystem. Throws CflViolation if
/// transport_courant(...) >= 1, NonFiniteError on blow-up.
WaveState transport_step(const WaveState& state, const PhysicalParams& params, double dt);

/// Dispersive substep then transport substep; time advances by dt.
WaveState lie_step(const WaveState& state, const PhysicalParams& params,
                   const Bathymetry& bathy, double dt);

/// Fixed mode: dt_fixed after checking the Courant bound (CflViolation).
/// CFL mode: min(sigma dx / s_max, dt_max), or dt_max when nothing moves.
double cfl_dt(const WaveState& state, const PhysicalParams& params, const StepConfig& cfg);

// --- driver -----------------------------------------------------------------

struct StepRecord {
  double time = 0.0;  ///< time at the end of the step
  double dt = 0.0;
  double energy0 = 0.0;
  double max_zeta = 0.0;
  double max_v = 0.0;
  double mass = 0.0;      ///< sum zeta_j dx
  double momentum = 0.0;  ///< sum v_j dx
};

struct Diagnostics {
  std::vector<StepRecord> records;
};

StepRecord measure(const WaveState& state, double mu, double dt);

struct RunResult {
  /// One state per requested snapshot time, or just the final state when no
  /// snapshot times were requested.
  std::vector<WaveState> snapshots;
  Diagnostics diagnostics;
  WaveState final_state;
};

/// Advances `initial` to t_final with lie_step, landing exactly on every
/// snapshot time and on t_final. NonFiniteError from a step is rethrown with
/// the state preceding that step.
RunResult run(const WaveState& initial, const PhysicalParams& params, const Bathymetry& bathy,
              const StepConfig& cfg, double t_final, std::span<const double> snapshot_times = {});

}  // namespace deepwave
