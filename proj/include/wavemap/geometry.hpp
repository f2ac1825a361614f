#pragma once

// Coordinate-chart representation of Riemannian surfaces: metric and
// Christoffel evaluation, parallel transport along polylines, and geodesic
// integration. All functions here are pure; charts are value types.

#include <array>
#include <cmath>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wavemap/errors.hpp"

namespace wavemap {

struct Vec2 {
  double x = 0.0, y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }

struct ChartPoint {
  double x = 0.0, y = 0.0;
};

inline Vec2 operator-(ChartPoint a, ChartPoint b) {
  return {a.x - b.x, a.y - b.y};
}
inline ChartPoint operator+(ChartPoint p, Vec2 d) {
  return {p.x + d.x, p.y + d.y};
}

struct TangentVector {
  ChartPoint base;
  Vec2 v;
};

// Symmetric 2x2 metric in the chart basis.
struct Metric2 {
  double xx = 1.0, xy = 0.0, yy = 1.0;

  double det() const { return xx * yy - xy * xy; }
  bool positive_definite() const { return xx > 0.0 && det() > 0.0; }

  double quad(Vec2 a, Vec2 b) const {
    return xx * a.x * b.x + xy * (a.x * b.y + a.y * b.x) + yy * a.y * b.y;
  }
};

// The six independent connection coefficients; symmetric in the lower pair.
struct ChristoffelSymbols {
  double x_xx = 0.0, x_xy = 0.0, x_yy = 0.0;
  double y_xx = 0.0, y_xy = 0.0, y_yy = 0.0;

  // Contraction against an arbitrary pair of vectors, using the (i,j)
  // symmetry: returns G^k_ij a^i b^j for k = x, y.
  Vec2 contract(Vec2 a, Vec2 b) const {
    const double qxx = a.x * b.x;
    const double qxy = 0.5 * (a.x * b.y + a.y * b.x);
    const double qyy = a.y * b.y;
    return contract_form(qxx, qxy, qyy);
  }

  // Contraction against a symmetric 2-tensor given by its components.
  Vec2 contract_form(double qxx, double qxy, double qyy) const {
    return {x_xx * qxx + 2.0 * x_xy * qxy + x_yy * qyy,
            y_xx * qxx + 2.0 * y_xy * qxy + y_yy * qyy};
  }
};

struct ChartDomain {
  double x_min = -1e6, x_max = 1e6;
  double y_min = -1e6, y_max = 1e6;

  bool contains(ChartPoint p) const {
    return p.x > x_min && p.x < x_max && p.y > y_min && p.y < y_max;
  }
};

inline constexpr double kChartMargin = 1e-6;
inline constexpr double kChartGuard = 1e6;

// A coordinate chart on a surface. The stored domain is the open rectangle
// on which metric and Christoffel evaluation is legal; margins around
// coordinate singularities are already folded into the bounds.
struct MetricChart {
  std::string name;
  std::array<std::string, 2> coord_names{"x", "y"};
  std::function<Metric2(ChartPoint)> metric_fn;
  std::function<ChristoffelSymbols(ChartPoint)> christoffel_fn;
  ChartDomain domain;

  bool contains(ChartPoint p) const { return domain.contains(p); }

  void require_inside(ChartPoint p, const char* context) const {
    if (!contains(p)) throw ChartDomainExceeded(name, p.x, p.y, context);
  }

  Metric2 metric(ChartPoint p) const { return metric_fn(p); }
  ChristoffelSymbols christoffel(ChartPoint p) const {
    return christoffel_fn(p);
  }
};

// ---------------------------------------------------------------------------
// Finite-difference Christoffel symbols from the metric alone, via
//   G^k_ij = 1/2 g^{kl} (d_i g_jl + d_j g_il - d_l g_ij),
// with central differences of step h. Serves as the validation oracle for
// the analytic symbols and as the default for user-defined charts.
inline ChristoffelSymbols christoffel_fd(const MetricChart& chart,
                                         ChartPoint p, double h) {
  if (!(h > 0.0)) throw NearBoundary("christoffel_fd: step must be positive");
  const ChartPoint px_p{p.x + h, p.y}, px_m{p.x - h, p.y};
  const ChartPoint py_p{p.x, p.y + h}, py_m{p.x, p.y - h};
  for (ChartPoint q : {px_p, px_m, py_p, py_m}) {
    if (!chart.contains(q)) {
      throw NearBoundary("christoffel_fd: stencil leaves domain of chart '" +
                         chart.name + "'");
    }
  }

  const Metric2 g = chart.metric(p);
  const Metric2 gxp = chart.metric(px_p), gxm = chart.metric(px_m);
  const Metric2 gyp = chart.metric(py_p), gym = chart.metric(py_m);

  // dg[l][i][j]: derivative of g_ij along coordinate l.
  const double inv2h = 1.0 / (2.0 * h);
  double gmat[2][2] = {{g.xx, g.xy}, {g.xy, g.yy}};
  double dg[2][2][2];
  dg[0][0][0] = (gxp.xx - gxm.xx) * inv2h;
  dg[0][0][1] = dg[0][1][0] = (gxp.xy - gxm.xy) * inv2h;
  dg[0][1][1] = (gxp.yy - gxm.yy) * inv2h;
  dg[1][0][0] = (gyp.xx - gym.xx) * inv2h;
  dg[1][0][1] = dg[1][1][0] = (gyp.xy - gym.xy) * inv2h;
  dg[1][1][1] = (gyp.yy - gym.yy) * inv2h;

  const double det = g.det();
  const double ginv[2][2] = {{gmat[1][1] / det, -gmat[0][1] / det},
                             {-gmat[0][1] / det, gmat[0][0] / det}};

  double gamma[2][2][2];
  for (int k = 0; k < 2; ++k) {
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        double sum = 0.0;
        for (int l = 0; l < 2; ++l) {
          sum += ginv[k][l] * (dg[i][j][l] + dg[j][i][l] - dg[l][i][j]);
        }
        gamma[k][i][j] = 0.5 * sum;
      }
    }
  }

  ChristoffelSymbols out;
  out.x_xx = gamma[0][0][0];
  out.x_xy = 0.5 * (gamma[0][0][1] + gamma[0][1][0]);
  out.x_yy = gamma[0][1][1];
  out.y_xx = gamma[1][0][0];
  out.y_xy = 0.5 * (gamma[1][0][1] + gamma[1][1][0]);
  out.y_yy = gamma[1][1][1];
  return out;
}

// Wraps a metric-only definition into a full chart; Christoffel symbols come
// from christoffel_fd with the given step.
inline MetricChart chart_from_metric(std::string name,
                                     std::function<Metric2(ChartPoint)> metric,
                                     ChartDomain domain,
                                     double fd_step = 1e-5) {
  MetricChart chart;
  chart.name = std::move(name);
  chart.metric_fn = std::move(metric);
  chart.domain = domain;
  chart.christoffel_fn = [chart_copy = MetricChart{chart.name, chart.coord_names,
                                                   chart.metric_fn, nullptr,
                                                   domain},
                          fd_step](ChartPoint p) {
    return christoffel_fd(chart_copy, p, fd_step);
  };
  return chart;
}

inline MetricChart builtin_chart(std::string_view name) {
  MetricChart chart;
  if (name == "euclidean") {
    chart.name = "euclidean";
    chart.domain = {-kChartGuard, kChartGuard, -kChartGuard, kChartGuard};
    chart.metric_fn = [](ChartPoint) { return Metric2{1.0, 0.0, 1.0}; };
    chart.christoffel_fn = [](ChartPoint) { return ChristoffelSymbols{}; };
  } else if (name == "sphere") {
    // ds^2 = cos^2(y) dx^2 + dy^2; y is excluded near +-pi/2 where the
    // chart degenerates.
    chart.name = "sphere";
    const double y_lim = 0.5 * M_PI - kChartMargin;
    chart.domain = {-kChartGuard, kChartGuard, -y_lim, y_lim};
    chart.metric_fn = [](ChartPoint p) {
      const double c = std::cos(p.y);
      return Metric2{c * c, 0.0, 1.0};
    };
    chart.christoffel_fn = [](ChartPoint p) {
      ChristoffelSymbols s;
      s.x_xy = -std::tan(p.y);
      s.y_xx = std::sin(p.y) * std::cos(p.y);
      return s;
    };
  } else if (name == "half_plane") {
    // ds^2 = (dx^2 + dy^2) / y^2 on y > 0.
    chart.name = "half_plane";
    chart.domain = {-kChartGuard, kChartGuard, kChartMargin, kChartGuard};
    chart.metric_fn = [](ChartPoint p) {
      const double w = 1.0 / (p.y * p.y);
      return Metric2{w, 0.0, w};
    };
    chart.christoffel_fn = [](ChartPoint p) {
      ChristoffelSymbols s;
      const double inv_y = 1.0 / p.y;
      s.x_xy = -inv_y;
      s.y_xx = inv_y;
      s.y_yy = -inv_y;
      return s;
    };
  } else {
    throw UnknownChart(std::string(name));
  }
  return chart;
}

// ---------------------------------------------------------------------------
// Pointwise metric pairing g_ij v^i w^j. Both vectors must share a base point.
inline double inner(const MetricChart& chart, const TangentVector& v,
                    const TangentVector& w) {
  if (std::abs(v.base.x - w.base.x) > 1e-12 ||
      std::abs(v.base.y - w.base.y) > 1e-12) {
    throw BaseMismatch("inner: tangent vectors based at different points");
  }
  chart.require_inside(v.base, "inner");
  return chart.metric(v.base).quad(v.v, w.v);
}

inline double norm(const MetricChart& chart, const TangentVector& v) {
  return std::sqrt(inner(chart, v, v));
}

// ---------------------------------------------------------------------------
// Parallel transport along a polyline: on each segment the transport ODE
//   dv^k/ds = -G^k_ij (dgamma^i/ds) v^j
// is advanced by one classical 4-stage step over the whole segment.
inline TangentVector parallel_transport(const MetricChart& chart,
                                        std::span<const ChartPoint> path,
                                        const TangentVector& v0) {
  if (path.size() < 2) {
    throw ValidationError("parallel_transport: path needs >= 2 points");
  }
  if (std::abs(v0.base.x - path[0].x) > 1e-12 ||
      std::abs(v0.base.y - path[0].y) > 1e-12) {
    throw BaseMismatch("parallel_transport: vector not based at path start");
  }
  for (const ChartPoint& p : path) {
    chart.require_inside(p, "parallel_transport");
  }

  Vec2 v = v0.v;
  for (std::size_t s = 0; s + 1 < path.size(); ++s) {
    const ChartPoint a = path[s];
    const Vec2 delta = path[s + 1] - a;
    const auto rate = [&](double frac, Vec2 w) -> Vec2 {
      const ChartPoint q = a + frac * delta;
      return -1.0 * chart.christoffel(q).contract(delta, w);
    };
    const Vec2 k1 = rate(0.0, v);
    const Vec2 k2 = rate(0.5, v + 0.5 * k1);
    const Vec2 k3 = rate(0.5, v + 0.5 * k2);
    const Vec2 k4 = rate(1.0, v + k3);
    v = v + (1.0 / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return TangentVector{path.back(), v};
}

// ---------------------------------------------------------------------------
// Geodesic integration: gamma'' = -G(gamma)(gamma', gamma'), fixed-step
// classical 4-stage method. Returns the visited points, starting at p0 and
// ending exactly at arc parameter s_max.
inline std::vector<ChartPoint> geodesic_evolve(const MetricChart& chart,
                                               ChartPoint p0,
                                               const TangentVector& v0,
                                               double s_max, double ds) {
  if (!(ds > 0.0) || !(s_max > 0.0)) {
    throw ValidationError("geodesic_evolve: s_max and ds must be positive");
  }
  if (std::abs(v0.base.x - p0.x) > 1e-12 ||
      std::abs(v0.base.y - p0.y) > 1e-12) {
    throw BaseMismatch("geodesic_evolve: velocity not based at p0");
  }
  chart.require_inside(p0, "geodesic_evolve");

  struct State {
    ChartPoint p;
    Vec2 v;
  };
  const auto rate = [&](const State& s) -> State {
    chart.require_inside(s.p, "geodesic_evolve");
    const Vec2 acc = -1.0 * chart.christoffel(s.p).contract(s.v, s.v);
    return State{ChartPoint{s.v.x, s.v.y}, acc};
  };
  const auto advance = [&](State s, double h) -> State {
    const State k1 = rate(s);
    const State k2 = rate({s.p + 0.5 * h * Vec2{k1.p.x, k1.p.y},
                           s.v + 0.5 * h * k1.v});
    const State k3 = rate({s.p + 0.5 * h * Vec2{k2.p.x, k2.p.y},
                           s.v + 0.5 * h * k2.v});
    const State k4 = rate({s.p + h * Vec2{k3.p.x, k3.p.y}, s.v + h * k3.v});
    const Vec2 dp = (h / 6.0) * (Vec2{k1.p.x, k1.p.y} +
                                 2.0 * Vec2{k2.p.x, k2.p.y} +
                                 2.0 * Vec2{k3.p.x, k3.p.y} +
                                 Vec2{k4.p.x, k4.p.y});
    const Vec2 dv = (h / 6.0) * (k1.v + 2.0 * k2.v + 2.0 * k3.v + k4.v);
    return State{s.p + dp, s.v + dv};
  };

  std::vector<ChartPoint> out;
  out.reserve(static_cast<std::size_t>(s_max / ds) + 2);
  State state{p0, v0.v};
  out.push_back(state.p);
  double s = 0.0;
  while (s + ds <= s_max * (1.0 + 1e-14)) {
    state = advance(state, ds);
    chart.require_inside(state.p, "geodesic_evolve");
    out.push_back(state.p);
    s += ds;
  }
  const double rem = s_max - s;
  if (rem > 1e-12 * s_max) {
    state = advance(state, rem);
    chart.require_inside(state.p, "geodesic_evolve");
    out.push_back(state.p);
  }
  return out;
}

}  // namespace wavemap
