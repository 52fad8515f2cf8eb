#pragma once

// Deep-water Saut-Xu system with a variable bottom -1 + beta b(x):
//
//   zeta_t - H v + eps sqrt(mu) (v zeta_x / 2 + H(v (H zeta)_x) / 2 + H(zeta (H v)_x) + zeta v_x)
//       = beta sqrt(mu) (B v)_x
//   v_t + zeta_x + (3 eps sqrt(mu) / 2) v v_x - (eps sqrt(mu) / 2) zeta_x H zeta_x
//       - (eps sqrt(mu) / 2) v H^2 v_x = 0
//
// split into a nonlocal dispersive part (evaluated pseudospectrally) and a
// local transport part (see stepping.hpp).

#include <string>
#include <string_view>

#include "deepwave/spectral.hpp"

namespace deepwave {

struct PhysicalParams {
  double epsilon = 0.0;  ///< nonlinearity
  double mu = 1.0;       ///< shallowness
  double beta = 0.0;     ///< bathymetric amplitude

  double delta() const noexcept { return epsilon > beta ? epsilon : beta; }
  /// eps sqrt(mu), the coefficient carried by every nonlinear term.
  double steepness() const noexcept;

  /// Throws InvalidParam unless 0 <= eps, beta <= 1 and mu > 0.
  void validate() const;
};

struct Bathymetry {
  RealField samples;
  double sup_norm = 0.0;

  explicit Bathymetry(RealField b);
  const Grid& grid() const noexcept { return samples.grid(); }
};

struct WaveState {
  RealField zeta;
  RealField v;
  double time = 0.0;

  WaveState(RealField zeta_, RealField v_, double t = 0.0);
  /// Zero state on `grid`.
  static WaveState zero(const Grid& grid, double t = 0.0);

  const Grid& grid() const noexcept { return zeta.grid(); }
  bool all_finite() const noexcept { return zeta.all_finite() && v.all_finite(); }
};

struct Tendency {
  RealField d_zeta;
  RealField d_v;
};

/// Right-hand side of the dispersive subsystem, returned as (d_zeta, d_v).
/// Products are taken pointwise on the collocation grid without any filter.
Tendency dispersive_rhs(const WaveState& state, const PhysicalParams& params,
                        const Bathymetry& bathy);

struct TransportSpeeds {
  RealField w;  ///< sech^2(sqrt(mu) D) v, the frozen advection speed of zeta
  RealField v;
};

TransportSpeeds transport_speeds(const WaveState& state, const PhysicalParams& params);

/// v~ = v + (eps sqrt(mu) / 2) v H zeta_x,  zeta~ = zeta - (eps sqrt(mu) / 4) v^2.
WaveState to_tilde(const WaveState& state, const PhysicalParams& params);

/// Inverse of to_tilde by fixed-point iteration (tolerance 1e-12, at most 100
/// sweeps). Throws InvalidParam when eps sqrt(mu) (1 + max|state|) >= 0.5 and
/// NoConvergence when the sweep budget runs out.
WaveState from_tilde(const WaveState& tilde, const PhysicalParams& params);

double energy(const WaveState& state, int order, double mu);

// --- catalog ---------------------------------------------------------------

enum class BathymetryKind { flat, bump_cos, ripple, smoothed_step, cos_alpha };

struct BathymetrySpec {
  BathymetryKind kind = BathymetryKind::flat;
  double alpha = 1.0;  ///< frequency for cos_alpha
  double beta = 0.5;   ///< prefactor embedded in smoothed_step
};

/// Throws UnknownKind.
BathymetryKind parse_bathymetry_kind(std::string_view name);
std::string_view to_string(BathymetryKind kind) noexcept;

/// flat: 0; bump_cos: cos x; ripple: 0.5 - (x - 8)^2 / 18 on [5, 11], else 0;
/// smoothed_step: (beta/4)(1 + tanh(100(x - 2)))(1 - tanh(100(x - 8)));
/// cos_alpha: cos(alpha x).
Bathymetry make_bathymetry(const BathymetrySpec& spec, const Grid& grid);
Bathymetry make_bathymetry(std::string_view kind, const Grid& grid, double alpha = 1.0,
                           double beta = 0.5);

enum class InitialKind { sech_pulse, gaussian, sech2_pulse, kdv_soliton };

struct InitialSpec {
  InitialKind kind = InitialKind::sech_pulse;
  double alpha = 1.0;  ///< soliton amplitude for kdv_soliton
};

InitialKind parse_initial_kind(std::string_view name);
std::string_view to_string(InitialKind kind) noexcept;

/// Pulses with zeta0 = v0:
/// sech_pulse: sech(sqrt(3)/2 x); gaussian: exp(-x^2); sech2_pulse:
/// sech^2(sqrt(3)/2 x); kdv_soliton: alpha sech^2(sqrt(3 alpha / 4) x).
WaveState make_initial(const InitialSpec& spec, const Grid& grid);
WaveState make_initial(std::string_view kind, const Grid& grid, double alpha = 1.0);

}  // namespace deepwave
