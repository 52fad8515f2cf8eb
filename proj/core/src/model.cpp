#include "deepwave/model.hpp"

#include <cmath>
#include <string>

namespace deepwave {

double PhysicalParams::steepness() const noexcept { return epsilon * std::sqrt(mu); }

void PhysicalParams::validate() const {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw InvalidParam("epsilon must lie in [0, 1]");
  if (!(beta >= 0.0 && beta <= 1.0)) throw InvalidParam("beta must lie in [0, 1]");
  if (!(mu > 0.0) || !std::isfinite(mu)) throw InvalidParam("mu must be positive and finite");
}

Bathymetry::Bathymetry(RealField b) : samples(std::move(b)), sup_norm(samples.max_abs()) {
  if (!samples.all_finite()) throw InvalidParam("bathymetry samples must be finite");
}

WaveState::WaveState(RealField zeta_, RealField v_, double t)
    : zeta(std::move(zeta_)), v(std::move(v_)), time(t) {
  require_same_grid(zeta.grid(), v.grid(), "WaveState");
}

WaveState WaveState::zero(const Grid& grid, double t) {
  return WaveState(RealField(grid), RealField(grid), t);
}

Tendency dispersive_rhs(const WaveState& state, const PhysicalParams& params,
                        const Bathymetry& bathy) {
  params.validate();
  require_same_grid(state.grid(), bathy.grid(), "dispersive_rhs");
  const double mu = params.mu;
  const double s = params.steepness();

  const RealField& zeta = state.zeta;
  const RealField& v = state.v;
  const RealField zeta_x = derivative(zeta);

  RealField d_zeta = apply_h_mu(v, mu);
  RealField d_v = -zeta_x;

  if (s != 0.0) {
    const RealField h_zeta = apply_h_mu(zeta, mu);
    const RealField h_v = apply_h_mu(v, mu);
    const RealField hh_v = apply_h_mu(h_v, mu);

    RealField bracket = 0.5 * apply_h_mu(v * derivative(h_zeta), mu);
    bracket += apply_h_mu(zeta * derivative(h_v), mu);
    bracket += zeta * derivative(v);
    bracket -= 0.5 * (zeta_x * hh_v);
    d_zeta -= s * bracket;

    RealField quad = zeta_x * apply_h_mu(zeta_x, mu);
    quad += v * apply_h_mu(apply_h_mu(derivative(v), mu), mu);
    d_v += (0.5 * s) * quad;
  }

  if (params.beta != 0.0) {
    d_zeta += (params.beta * std::sqrt(mu)) * derivative(apply_b_mu(v, bathy.samples, mu));
  }
  return {std::move(d_zeta), std::move(d_v)};
}

TransportSpeeds transport_speeds(const WaveState& state, const PhysicalParams& params) {
  params.validate();
  return {apply_smoothing(state.v, params.mu), state.v};
}

WaveState to_tilde(const WaveState& state, const PhysicalParams& params) {
  params.validate();
  const double s = params.steepness();
  if (s == 0.0) return state;
  RealField v_t = state.v + (0.5 * s) * (state.v * apply_h_mu(derivative(state.zeta), params.mu));
  RealField zeta_t = state.zeta - (0.25 * s) * (state.v * state.v);
  return WaveState(std::move(zeta_t), std::move(v_t), state.time);
}

WaveState from_tilde(const WaveState& tilde, const PhysicalParams& params) {
  params.validate();
  const double s = params.steepness();
  if (s == 0.0) return tilde;

  const double size = std::max(tilde.zeta.max_abs(), tilde.v.max_abs());
  if (!(s * (1.0 + size) < 0.5)) {
    throw InvalidParam("from_tilde: eps sqrt(mu) (1 + |state|) must be below 0.5");
  }

  WaveState current = tilde;
  constexpr int kMaxSweeps = 100;
  constexpr double kTolerance = 1e-12;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    RealField zeta = tilde.zeta + (0.25 * s) * (current.v * current.v);
    RealField v = tilde.v - (0.5 * s) * (current.v * apply_h_mu(derivative(current.zeta), params.mu));
    const double change = std::max((zeta - current.zeta).max_abs(), (v - current.v).max_abs());
    current = WaveState(std::move(zeta), std::move(v), tilde.time);
    if (change < kTolerance) return current;
  }
  throw NoConvergence("from_tilde: fixed-point iteration did not converge in 100 sweeps");
}

double energy(const WaveState& state, int order, double mu) {
  return energy(state.zeta, state.v, order, mu);
}

// --- catalog ---------------------------------------------------------------

BathymetryKind parse_bathymetry_kind(std::string_view name) {
  if (name == "flat") return BathymetryKind::flat;
  if (name == "bump_cos") return BathymetryKind::bump_cos;
  if (name == "ripple") return BathymetryKind::ripple;
  if (name == "smoothed_step") return BathymetryKind::smoothed_step;
  if (name == "cos_alpha") return BathymetryKind::cos_alpha;
  throw UnknownKind("unknown bathymetry kind '" + std::string(name) + "'");
}

std::string_view to_string(BathymetryKind kind) noexcept {
  switch (kind) {
    case BathymetryKind::flat: return "flat";
    case BathymetryKind::bump_cos: return "bump_cos";
    case BathymetryKind::ripple: return "ripple";
    case BathymetryKind::smoothed_step: return "smoothed_step";
    case BathymetryKind::cos_alpha: return "cos_alpha";
  }
  return "flat";
}

Bathymetry make_bathymetry(const BathymetrySpec& spec, const Grid& grid) {
  switch (spec.kind) {
    case BathymetryKind::flat:
      return Bathymetry(RealField(grid));
    case BathymetryKind::bump_cos:
      return Bathymetry(RealField::from_function(grid, [](double x) { return std::cos(x); }));
    case BathymetryKind::ripple:
      return Bathymetry(RealField::from_function(grid, [](double x) {
        if (x < 5.0 || x > 11.0) return 0.0;
        const double d = x - 8.0;
        return 0.5 - d * d / 18.0;
      }));
    case BathymetryKind::smoothed_step: {
      const double beta = spec.beta;
      return Bathymetry(RealField::from_function(grid, [beta](double x) {
        return beta / 4.0 * (1.0 + std::tanh(100.0 * (x - 2.0))) *
               (1.0 - std::tanh(100.0 * (x - 8.0)));
      }));
    }
    case BathymetryKind::cos_alpha: {
      if (!(spec.alpha > 0.0)) throw InvalidParam("cos_alpha bathymetry needs alpha > 0");
      const double alpha = spec.alpha;
      return Bathymetry(
          RealField::from_function(grid, [alpha](double x) { return std::cos(alpha * x); }));
    }
  }
  throw UnknownKind("unknown bathymetry kind");
}

Bathymetry make_bathymetry(std::string_view kind, const Grid& grid, double alpha, double beta) {
  return make_bathymetry(BathymetrySpec{parse_bathymetry_kind(kind), alpha, beta}, grid);
}

InitialKind parse_initial_kind(std::string_view name) {
  if (name == "sech_pulse") return InitialKind::sech_pulse;
  if (name == "gaussian") return InitialKind::gaussian;
  if (name == "sech2_pulse") return InitialKind::sech2_pulse;
  if (name == "kdv_soliton") return InitialKind::kdv_soliton;
  throw UnknownKind("unknown initial kind '" + std::string(name) + "'");
}

std::string_view to_string(InitialKind kind) noexcept {
  switch (kind) {
    case InitialKind::sech_pulse: return "sech_pulse";
    case InitialKind::gaussian: return "gaussian";
    case InitialKind::sech2_pulse: return "sech2_pulse";
    case InitialKind::kdv_soliton: return "kdv_soliton";
  }
  return "sech_pulse";
}

namespace {

double sech(double x) { return 1.0 / std::cosh(x); }

}  // namespace

WaveState make_initial(const InitialSpec& spec, const Grid& grid) {
  const double k = std::sqrt(3.0) / 2.0;
  RealField profile(grid);
  switch (spec.kind) {
    case InitialKind::sech_pulse:
      profile = RealField::from_function(grid, [k](double x) { return sech(k * x); });
      break;
    case InitialKind::gaussian:
      profile = RealField::from_function(grid, [](double x) { return std::exp(-x * x); });
      break;
    case InitialKind::sech2_pulse:
      profile = RealField::from_function(grid, [k](double x) {
        const double s = sech(k * x);
        return s * s;
      });
      break;
    case InitialKind::kdv_soliton: {
      const double alpha = spec.alpha;
      if (!(alpha > 0.0)) throw InvalidParam("kdv_soliton needs alpha > 0");
      const double width = std::sqrt(0.75 * alpha);
      profile = RealField::from_function(grid, [alpha, width](double x) {
        const double s = sech(width * x);
        return alpha * s * s;
      });
      break;
    }
  }
  RealField v = profile;
  return WaveState(std::move(profile), std::move(v), 0.0);
}

WaveState make_initial(std::string_view kind, const Grid& grid, double alpha) {
  return make_initial(InitialSpec{parse_initial_kind(kind), alpha}, grid);
}

}  // namespace deepwave
