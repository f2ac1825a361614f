#pragma once

// Spatial discretization and time integration of the wave-map equation
//   a^k = c^2 u_mm^k + G^k_ij (c^2 u_m^i u_m^j - u_t^i u_t^j)
// on a uniform m-grid with Dirichlet endpoints, advanced by method of lines
// with the classical 4-stage one-step integrator.

#include <cmath>
#include <string>
#include <vector>

#include "wavemap/errors.hpp"
#include "wavemap/geometry.hpp"
#include "wavemap/string_model.hpp"

namespace wavemap {

// Grid samples of the string at one instant: positions and velocities over
// m_i = m0 + i*dm. Endpoints are pinned: vel[0] = vel[n-1] = 0 always.
struct StringState {
  double t = 0.0;
  double m0 = 0.0;
  double dm = 1.0;
  std::vector<ChartPoint> pos;
  std::vector<Vec2> vel;

  int n() const { return static_cast<int>(pos.size()); }
  double m(int i) const { return m0 + i * dm; }
};

struct SolverConfig {
  double cfl = 0.5;               // dt = cfl * dm / c
  std::string scheme = "rk4_mol";
  int record_every = 1;
  long long max_steps = 50000000;
};

inline double time_step(const SolverConfig& cfg, double dm, double c) {
  return cfg.cfl * dm / c;
}

// Right-hand side of the semi-discrete system at interior node i. The second
// derivative u_mm uses the standard central difference. The quadratic first-
// derivative form u_m^i u_m^j is discretized as the symmetrized product of
// the forward and backward differences rather than the square of the central
// difference: with that choice a grid lying on a geodesic (where the
// continuous right-hand side vanishes) is an exact discrete equilibrium —
// e.g. y_i = e^{m_i} in the half-plane chart gives
//   u_mm^y = e^m (e^{dm} - 2 + e^{-dm})/dm^2   and
//   Q^{yy} = e^{2m} (e^{dm} - 1)(1 - e^{-dm})/dm^2,
// which cancel exactly against G^y_yy = -1/y. The square of the central
// difference would leave an O(dm^2) residual force. Both forms are
// second-order accurate.
inline Vec2 wave_map_accel(const MetricChart& chart, const StringState& st,
                           int i, double c) {
  if (i < 1 || i + 1 >= st.n()) {
    throw OutOfRange("wave_map_accel: index must be interior");
  }
  const ChartPoint p = st.pos[i];
  chart.require_inside(p, "wave_map_accel");
  const double inv_dm = 1.0 / st.dm;
  const Vec2 fwd = inv_dm * (st.pos[i + 1] - p);
  const Vec2 bwd = inv_dm * (p - st.pos[i - 1]);
  const Vec2 u_mm = inv_dm * (fwd - bwd);
  const Vec2 ut = st.vel[i];
  const double c2 = c * c;
  const double qxx = c2 * fwd.x * bwd.x - ut.x * ut.x;
  const double qxy =
      0.5 * c2 * (fwd.x * bwd.y + bwd.x * fwd.y) - ut.x * ut.y;
  const double qyy = c2 * fwd.y * bwd.y - ut.y * ut.y;
  const Vec2 curv = chart.christoffel(p).contract_form(qxx, qxy, qyy);
  const Vec2 a = c2 * u_mm + curv;
  if (!std::isfinite(a.x) || !std::isfinite(a.y)) {
    throw NonFinite("wave_map_accel: non-finite acceleration at node " +
                    std::to_string(i));
  }
  return a;
}

// Samples a constant-density-parametrized curve onto n uniform grid nodes.
// v0, when given, prescribes interior velocities as a function of m;
// endpoints always start (and stay) at rest.
inline StringState initial_state(
    const MetricChart& chart, const ParametrizedCurve& curve, int n,
    const std::function<Vec2(double)>& v0 = nullptr) {
  if (n < 3) throw ValidationError("initial_state: need n >= 3");
  StringState st;
  st.m0 = curve.m_a;
  st.dm = (curve.m_b - curve.m_a) / (n - 1);
  st.pos.resize(n);
  st.vel.assign(n, Vec2{});
  for (int i = 0; i < n; ++i) {
    const double m = (i + 1 == n) ? curve.m_b : st.m(i);
    st.pos[i] = curve.eval(m);
    chart.require_inside(st.pos[i], "initial_state");
    if (v0 && i > 0 && i + 1 < n) st.vel[i] = v0(m);
  }
  return st;
}

// One time step of size cfl*dm/c. Pure: returns the advanced state, leaving
// the input untouched; endpoint entries are copied through bit-identically.
// Throws ChartDomainExceeded the moment any stage sees a node outside the
// chart, and NonFinite if the update produces NaN or infinity.
inline StringState step(const MetricChart& chart, const StringState& s0,
                        const SolverConfig& cfg, double c) {
  if (cfg.scheme != "rk4_mol") {
    throw ValidationError("step: unknown scheme '" + cfg.scheme + "'");
  }
  const int n = s0.n();
  if (n < 3) throw ValidationError("step: need n >= 3");
  const double dt = time_step(cfg, s0.dm, c);

  struct Slopes {
    std::vector<Vec2> dp, dv;
  };
  const auto eval = [&](const StringState& st, Slopes& out) {
    out.dp.assign(n, Vec2{});
    out.dv.assign(n, Vec2{});
    for (int i = 1; i + 1 < n; ++i) {
      out.dp[i] = st.vel[i];
      out.dv[i] = wave_map_accel(chart, st, i, c);
    }
  };
  const auto displace = [&](const Slopes& k, double h, StringState& out) {
    for (int i = 1; i + 1 < n; ++i) {
      out.pos[i] = s0.pos[i] + h * k.dp[i];
      out.vel[i] = s0.vel[i] + h * k.dv[i];
    }
  };

  Slopes k1, k2, k3, k4;
  StringState stage = s0;
  eval(s0, k1);
  displace(k1, 0.5 * dt, stage);
  eval(stage, k2);
  displace(k2, 0.5 * dt, stage);
  eval(stage, k3);
  displace(k3, dt, stage);
  eval(stage, k4);

  StringState out = s0;
  out.t = s0.t + dt;
  const double w = dt / 6.0;
  for (int i = 1; i + 1 < n; ++i) {
    out.pos[i] =
        s0.pos[i] +
        w * (k1.dp[i] + 2.0 * k2.dp[i] + 2.0 * k3.dp[i] + k4.dp[i]);
    out.vel[i] =
        s0.vel[i] +
        w * (k1.dv[i] + 2.0 * k2.dv[i] + 2.0 * k3.dv[i] + k4.dv[i]);
    if (!std::isfinite(out.pos[i].x) || !std::isfinite(out.pos[i].y) ||
        !std::isfinite(out.vel[i].x) || !std::isfinite(out.vel[i].y)) {
      throw NonFinite("step: non-finite value at node " + std::to_string(i));
    }
    chart.require_inside(out.pos[i], "step");
  }
  return out;
}

}  // namespace wavemap
