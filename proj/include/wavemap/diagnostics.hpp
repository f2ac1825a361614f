#pragma once

// Post-processing over recorded frames: discrete energy, error norms against
// reference solutions, period estimation from recurrence minima, and
// convergence-order tables.

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "wavemap/errors.hpp"
#include "wavemap/geometry.hpp"
#include "wavemap/solver.hpp"
#include "wavemap/string_model.hpp"

namespace wavemap {

struct EnergySample {
  double t = 0.0;
  double kinetic = 0.0;
  double potential = 0.0;
  double total = 0.0;
};

struct ConvergenceRow {
  int n = 0;
  double error = 0.0;
  double order = 0.0;      // log2(error ratio) vs next-finer grid; 0 for last
  bool saturated = false;  // error at rounding level, order meaningless
};

struct EnergyReport {
  std::vector<EnergySample> samples;
  double relative_drift = 0.0;
  std::optional<double> estimated_period;
  std::vector<ConvergenceRow> convergence;
};

namespace detail {

// Grid derivative of the positions at node i. Fourth-order stencils: the
// energy integrand must not limit accuracy, and second-order differences of
// a sine profile bias the potential by a sinc^2 factor well above the
// drift tolerances used in the tests. Falls back to low order only on
// grids too small to matter.
inline Vec2 grid_derivative(const StringState& st, int i) {
  const int n = st.n();
  const auto& p = st.pos;
  const auto combo = [&](double c0, int i0, double c1, int i1, double c2,
                         int i2, double c3, int i3, double c4, int i4) {
    const double inv12 = 1.0 / (12.0 * st.dm);
    return Vec2{inv12 * (c0 * p[i0].x + c1 * p[i1].x + c2 * p[i2].x +
                         c3 * p[i3].x + c4 * p[i4].x),
                inv12 * (c0 * p[i0].y + c1 * p[i1].y + c2 * p[i2].y +
                         c3 * p[i3].y + c4 * p[i4].y)};
  };
  if (n >= 5) {
    if (i >= 2 && i + 2 < n) {
      return combo(1.0, i - 2, -8.0, i - 1, 0.0, i, 8.0, i + 1, -1.0, i + 2);
    }
    if (i == 0) return combo(-25.0, 0, 48.0, 1, -36.0, 2, 16.0, 3, -3.0, 4);
    if (i == 1) return combo(-3.0, 0, -10.0, 1, 18.0, 2, -6.0, 3, 1.0, 4);
    if (i == n - 2) {
      return combo(3.0, n - 1, 10.0, n - 2, -18.0, n - 3, 6.0, n - 4, -1.0,
                   n - 5);
    }
    // i == n - 1
    return combo(25.0, n - 1, -48.0, n - 2, 36.0, n - 3, -16.0, n - 4, 3.0,
                 n - 5);
  }
  const double inv_dm = 1.0 / st.dm;
  if (i == 0) return inv_dm * (p[1] - p[0]);
  if (i == n - 1) return inv_dm * (p[n - 1] - p[n - 2]);
  return (0.5 * inv_dm) * (p[i + 1] - p[i - 1]);
}

}  // namespace detail

// Discrete kinetic and potential energy:
//   K = 1/2 rho  sum w_i g(u_t, u_t) , P = 1/2 T0 sum w_i g(u_m, u_m),
// trapezoid weights w_i on the solver grid.
inline std::pair<double, double> energy(const MetricChart& chart,
                                        const StringState& st,
                                        const MaterialParams& mp) {
  const int n = st.n();
  double kin = 0.0, pot = 0.0;
  for (int i = 0; i < n; ++i) {
    const double w = (i == 0 || i == n - 1) ? 0.5 * st.dm : st.dm;
    const Metric2 g = chart.metric(st.pos[i]);
    kin += w * g.quad(st.vel[i], st.vel[i]);
    const Vec2 um = detail::grid_derivative(st, i);
    pot += w * g.quad(um, um);
  }
  return {0.5 * mp.rho * kin, 0.5 * mp.T0 * pot};
}

inline EnergyReport energy_report(const MetricChart& chart,
                                  std::span<const StringState> frames,
                                  const MaterialParams& mp) {
  EnergyReport rep;
  rep.samples.reserve(frames.size());
  for (const StringState& st : frames) {
    const auto [k, p] = energy(chart, st, mp);
    rep.samples.push_back({st.t, k, p, k + p});
  }
  if (!rep.samples.empty() && rep.samples.front().total != 0.0) {
    double lo = rep.samples.front().total, hi = lo;
    for (const EnergySample& s : rep.samples) {
      lo = std::min(lo, s.total);
      hi = std::max(hi, s.total);
    }
    rep.relative_drift = (hi - lo) / rep.samples.front().total;
  }
  return rep;
}

struct ErrorSeries {
  std::vector<double> t;
  std::vector<double> linf;
  std::vector<double> l2;
  double max_linf = 0.0;
  double max_l2 = 0.0;
};

// Chart-coordinate error of each frame against a reference map (m, t) -> point.
inline ErrorSeries error_vs_oracle(
    std::span<const StringState> frames,
    const std::function<ChartPoint(double, double)>& oracle) {
  ErrorSeries es;
  for (const StringState& st : frames) {
    double linf = 0.0, l2sq = 0.0;
    for (int i = 0; i < st.n(); ++i) {
      const ChartPoint want = oracle(st.m(i), st.t);
      const Vec2 d = st.pos[i] - want;
      linf = std::max({linf, std::abs(d.x), std::abs(d.y)});
      const double w = (i == 0 || i + 1 == st.n()) ? 0.5 * st.dm : st.dm;
      l2sq += w * (d.x * d.x + d.y * d.y);
    }
    es.t.push_back(st.t);
    es.linf.push_back(linf);
    es.l2.push_back(std::sqrt(l2sq));
    es.max_linf = std::max(es.max_linf, linf);
    es.max_l2 = std::max(es.max_l2, es.l2.back());
  }
  return es;
}

// L2 distance between the node positions of two frames on the same grid.
inline double frame_distance(const StringState& a, const StringState& b) {
  double acc = 0.0;
  for (int i = 0; i < a.n(); ++i) {
    const Vec2 d = a.pos[i] - b.pos[i];
    const double w = (i == 0 || i + 1 == a.n()) ? 0.5 * a.dm : a.dm;
    acc += w * (d.x * d.x + d.y * d.y);
  }
  return std::sqrt(acc);
}

// Fundamental period from the recurrence record D(t) = distance of each
// frame to the initial curve: locate interior local minima of D, refine each
// by the vertex of the parabola through its frame triple, and average the
// gaps between successive minima.
inline double estimate_period(std::span<const StringState> frames) {
  if (frames.size() < 3) throw NoPeriodFound("need at least 3 frames");
  std::vector<double> d(frames.size());
  for (std::size_t k = 0; k < frames.size(); ++k) {
    d[k] = frame_distance(frames[k], frames.front());
  }
  std::vector<double> minima;
  for (std::size_t k = 1; k + 1 < frames.size(); ++k) {
    if (!(d[k] < d[k - 1] && d[k] <= d[k + 1])) continue;
    // Parabola through (t_{k-1}, d_{k-1}), (t_k, d_k), (t_{k+1}, d_{k+1}).
    const double t0 = frames[k - 1].t, t1 = frames[k].t, t2 = frames[k + 1].t;
    const double h1 = t1 - t0, h2 = t2 - t1;
    const double s1 = (d[k] - d[k - 1]) / h1, s2 = (d[k + 1] - d[k]) / h2;
    const double curvature = (s2 - s1) / (h1 + h2);
    double t_min = t1;
    if (curvature > 0.0) {
      // Vertex of d(t) = d0 + s1 (t - t0) + curvature (t - t0)(t - t1).
      t_min = t1 - 0.5 * h1 - s1 / (2.0 * curvature);
    }
    minima.push_back(t_min);
  }
  if (minima.size() < 2) {
    throw NoPeriodFound("fewer than 2 recurrence minima in the record");
  }
  return (minima.back() - minima.front()) /
         static_cast<double>(minima.size() - 1);
}

// Fills in order_k = log2(error_k / error_{k+1}) for successive rows; rows
// whose error sits at rounding level are flagged saturated instead.
inline std::vector<ConvergenceRow> convergence_table(
    std::vector<std::pair<int, double>> errors) {
  constexpr double kSaturation = 1e-13;
  std::vector<ConvergenceRow> rows;
  rows.reserve(errors.size());
  for (std::size_t k = 0; k < errors.size(); ++k) {
    ConvergenceRow row;
    row.n = errors[k].first;
    row.error = errors[k].second;
    row.saturated = row.error <= kSaturation;
    if (k + 1 < errors.size() && !row.saturated &&
        errors[k + 1].second > kSaturation) {
      row.order = std::log2(row.error / errors[k + 1].second);
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace wavemap
