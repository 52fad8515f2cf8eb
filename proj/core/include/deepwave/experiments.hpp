#pragma once

// Numerical studies: splitting convergence order, the shallow-water (KdV)
// regime, homogenization over rapidly varying bottoms, and an exact linear
// propagator used as an oracle for the dispersive substep.

#include <span>
#include <utility>
#include <vector>

#include "deepwave/stepping.hpp"

namespace deepwave {

/// sqrt(|zeta_a - zeta_b|_{H^1}^2 + |v_a - v_b|_{L^2}^2). Throws GridMismatch.
double state_error(const WaveState& a, const WaveState& b);

struct ErrorRow {
  double dt = 0.0;
  double error = 0.0;
};

struct ErrorTable {
  std::vector<ErrorRow> rows;
  double slope = 0.0;
  double residual = 0.0;  ///< RMS deviation of log(error) from the fitted line
};

struct OrderFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;
};

/// Least-squares fit of log(error) against log(dt). Throws
/// InsufficientPoints with fewer than two rows and InvalidParam for
/// non-positive entries.
OrderFit fit_order(std::span<const ErrorRow> rows);
double estimate_order(const ErrorTable& table);

struct QuotientRow {
  double parameter = 0.0;
  double quotient = 0.0;
};

struct QuotientTable {
  std::vector<QuotientRow> rows;
};

struct Scenario {
  PhysicalParams params;
  Bathymetry bathymetry;
  WaveState initial;
  double t_final = 0.0;
};

/// Sech pulse over cos(x) (bump_cos) or the compact parabola (ripple),
/// eps = 0.1, mu = 1, beta = 1/2, N = 256, L = 30.
Scenario example1_scenario(BathymetryKind bottom, double t_final);

/// Self-convergence in fixed-dt mode: every dt is compared against a run at
/// min(dt) / 4. Duplicated step sizes collapse; fewer than two distinct step
/// sizes throws InsufficientPoints.
ErrorTable convergence_study(const Scenario& scenario, std::span<const double> dts);

/// alpha sech^2(sqrt(3 alpha / 4)(x - alpha t / 2)).
RealField kdv_soliton(double alpha, double t, const Grid& grid);

/// For each eps (= mu, beta = 0) runs the soliton pair at alpha = 1 to T and
/// reports max|zeta(T) - f0(x - (1 + eps/2) T)| / alpha.
QuotientTable kdv_comparison(std::span<const double> eps_list, const Grid& grid, double t_final,
                             double cfl_sigma = 0.5);

/// For each alpha runs the sech^2 pulse pair over cos(alpha x) and over a flat
/// bottom on a shared step sequence; quotient = max|zeta_alpha - zeta_flat| / max|zeta0|.
QuotientTable homogenization_sweep(std::span<const double> alpha_list,
                                   const PhysicalParams& params, const Grid& grid,
                                   double t_final, double cfl_sigma = 0.5);

/// Pair run of two bathymetries sharing every step; returns the final states.
std::pair<WaveState, WaveState> run_paired(const WaveState& initial, const PhysicalParams& params,
                                           const Bathymetry& first, const Bathymetry& second,
                                           double t_final, double cfl_sigma = 0.5);

/// Exact flow of zeta_t = H_mu v, v_t = -zeta_x (the eps = beta = 0 system)
/// on the grid: each mode is rotated by exp(t M), M = [[0, -i tanh(sqrt(mu) xi)], [-i xi, 0]].
/// The Nyquist mode is left unchanged, matching the discrete operators.
WaveState exact_linear_propagator(const WaveState& initial, double mu, double t);

/// Sum over modes of (xi / tanh(sqrt(mu) xi)) |zeta_k|^2 + |v_k|^2 (weight
/// 1/sqrt(mu) on mode 0): the quadratic form the linear flow conserves.
double linear_invariant(const WaveState& state, double mu);

/// Runs the eps = beta = 0 solver (sech pulse) with each fixed dt and compares to
/// the exact propagator at T.
ErrorTable linear_oracle_check(const Grid& grid, double mu, std::span<const double> dts,
                               double t_final);

}  // namespace deepwave
