#include "wavemap/geometry.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

using namespace wavemap;

namespace {

double max_symbol_diff(const ChristoffelSymbols& a,
                       const ChristoffelSymbols& b) {
  double m = 0.0;
  m = std::max(m, std::abs(a.x_xx - b.x_xx));
  m = std::max(m, std::abs(a.x_xy - b.x_xy));
  m = std::max(m, std::abs(a.x_yy - b.x_yy));
  m = std::max(m, std::abs(a.y_xx - b.y_xx));
  m = std::max(m, std::abs(a.y_xy - b.y_xy));
  m = std::max(m, std::abs(a.y_yy - b.y_yy));
  return m;
}

}  // namespace

TEST(BuiltinChart, EuclideanIsFlat) {
  const MetricChart chart = builtin_chart("euclidean");
  const ChartPoint p{12.3, -4.5};
  const Metric2 g = chart.metric(p);
  EXPECT_DOUBLE_EQ(g.xx, 1.0);
  EXPECT_DOUBLE_EQ(g.xy, 0.0);
  EXPECT_DOUBLE_EQ(g.yy, 1.0);
  EXPECT_EQ(max_symbol_diff(chart.christoffel(p), ChristoffelSymbols{}), 0.0);
}

TEST(BuiltinChart, SphereSymbolsAtReferencePoint) {
  const MetricChart chart = builtin_chart("sphere");
  const ChartPoint p{0.3, 0.2};
  const ChristoffelSymbols s = chart.christoffel(p);
  EXPECT_NEAR(s.x_xy, -std::tan(0.2), 1e-15);
  EXPECT_NEAR(s.y_xx, std::sin(0.2) * std::cos(0.2), 1e-15);
  EXPECT_DOUBLE_EQ(s.x_xx, 0.0);
  EXPECT_DOUBLE_EQ(s.x_yy, 0.0);
  EXPECT_DOUBLE_EQ(s.y_xy, 0.0);
  EXPECT_DOUBLE_EQ(s.y_yy, 0.0);
}

TEST(BuiltinChart, HalfPlaneSymbolsAtReferencePoint) {
  const MetricChart chart = builtin_chart("half_plane");
  const ChristoffelSymbols s = chart.christoffel({0.0, 2.0});
  EXPECT_DOUBLE_EQ(s.x_xy, -0.5);
  EXPECT_DOUBLE_EQ(s.y_xx, 0.5);
  EXPECT_DOUBLE_EQ(s.y_yy, -0.5);
}

TEST(BuiltinChart, UnknownNameThrows) {
  EXPECT_THROW(builtin_chart("torus"), UnknownChart);
}

TEST(BuiltinChart, DomainsExcludeSingularities) {
  const MetricChart sphere = builtin_chart("sphere");
  EXPECT_TRUE(sphere.contains({0.0, 1.5}));
  EXPECT_FALSE(sphere.contains({0.0, 0.5 * M_PI}));
  const MetricChart hp = builtin_chart("half_plane");
  EXPECT_TRUE(hp.contains({0.0, 0.1}));
  EXPECT_FALSE(hp.contains({0.0, 0.0}));
  EXPECT_FALSE(hp.contains({0.0, -1.0}));
}

TEST(ChristoffelFd, EuclideanVanishes) {
  const MetricChart chart = builtin_chart("euclidean");
  const ChristoffelSymbols s = christoffel_fd(chart, {3.0, -7.0}, 1e-4);
  EXPECT_LE(max_symbol_diff(s, ChristoffelSymbols{}), 1e-8);
}

TEST(ChristoffelFd, MatchesAnalyticSphere) {
  const MetricChart chart = builtin_chart("sphere");
  const ChartPoint p{0.3, 0.2};
  const double diff =
      max_symbol_diff(christoffel_fd(chart, p, 1e-4), chart.christoffel(p));
  EXPECT_LE(diff, 1e-6);
}

TEST(ChristoffelFd, MatchesAnalyticHalfPlane) {
  const MetricChart chart = builtin_chart("half_plane");
  const ChartPoint p{1.0, 1.0};
  const ChristoffelSymbols s = christoffel_fd(chart, p, 1e-4);
  EXPECT_NEAR(s.x_xy, -1.0, 1e-6);
  EXPECT_LE(max_symbol_diff(s, chart.christoffel(p)), 1e-6);
}

TEST(ChristoffelFd, RandomPointConsistencyAllCharts) {
  // 100 interior points per chart; finite-difference symbols must agree with
  // the analytic ones componentwise.
  std::mt19937_64 rng(20240811);
  for (const char* name : {"euclidean", "sphere", "half_plane"}) {
    const MetricChart chart = builtin_chart(name);
    // Stay away from the half-plane boundary: the oracle's truncation error
    // grows like h^2 / y^3 near y = 0.
    std::uniform_real_distribution<double> ux(-2.0, 2.0);
    std::uniform_real_distribution<double> uy =
        std::string(name) == "half_plane"
            ? std::uniform_real_distribution<double>(0.35, 4.0)
            : std::uniform_real_distribution<double>(-1.3, 1.3);
    for (int k = 0; k < 100; ++k) {
      const ChartPoint p{ux(rng), uy(rng)};
      const double diff = max_symbol_diff(christoffel_fd(chart, p, 1e-4),
                                          chart.christoffel(p));
      EXPECT_LE(diff, 1e-6) << name << " at (" << p.x << ", " << p.y << ")";
    }
  }
}

TEST(ChristoffelFd, StencilLeavingDomainThrows) {
  const MetricChart chart = builtin_chart("half_plane");
  EXPECT_THROW(christoffel_fd(chart, {0.0, 1e-5}, 1e-4), NearBoundary);
}

TEST(ChartFromMetric, DefaultsToFiniteDifferenceSymbols) {
  // User chart given by the metric alone; symbols must still be accurate.
  MetricChart chart = chart_from_metric(
      "poincare_disk_like",
      [](ChartPoint p) {
        const double w = 2.0 / (1.0 - 0.1 * (p.x * p.x + p.y * p.y));
        return Metric2{w * w, 0.0, w * w};
      },
      ChartDomain{-2.0, 2.0, -2.0, 2.0});
  const ChartPoint p{0.4, -0.3};
  const double diff = max_symbol_diff(chart.christoffel(p),
                                      christoffel_fd(chart, p, 1e-4));
  EXPECT_LE(diff, 1e-5);
}

TEST(Inner, FlatFrameOrthogonality) {
  const MetricChart chart = builtin_chart("euclidean");
  const ChartPoint base{5.0, 5.0};
  EXPECT_DOUBLE_EQ(
      inner(chart, TangentVector{base, {1, 0}}, TangentVector{base, {0, 1}}),
      0.0);
}

TEST(Inner, SphereLatitudeWeight) {
  const MetricChart chart = builtin_chart("sphere");
  for (double y0 : {0.0, 0.4, -1.1}) {
    const ChartPoint base{0.0, y0};
    const TangentVector v{base, {1, 0}};
    EXPECT_NEAR(inner(chart, v, v), std::cos(y0) * std::cos(y0), 1e-15);
  }
}

TEST(Inner, HalfPlaneScaling) {
  const MetricChart chart = builtin_chart("half_plane");
  const ChartPoint base{0.0, 2.0};
  const TangentVector v{base, {1, 1}};
  EXPECT_DOUBLE_EQ(inner(chart, v, v), 0.5);
}

TEST(Inner, BaseMismatchThrows) {
  const MetricChart chart = builtin_chart("euclidean");
  const TangentVector v{{0.0, 0.0}, {1, 0}};
  const TangentVector w{{0.0, 1e-6}, {1, 0}};
  EXPECT_THROW(inner(chart, v, w), BaseMismatch);
}

TEST(ParallelTransport, FlatConnectionIsIdentity) {
  const MetricChart chart = builtin_chart("euclidean");
  const std::vector<ChartPoint> path{{0, 0}, {1, 2}, {-3, 1}, {4, 4}};
  const TangentVector v0{path.front(), {0.7, -1.3}};
  const TangentVector v1 = parallel_transport(chart, path, v0);
  EXPECT_DOUBLE_EQ(v1.v.x, 0.7);
  EXPECT_DOUBLE_EQ(v1.v.y, -1.3);
}

TEST(ParallelTransport, EquatorPreservesNormalFrame) {
  // The equator is a geodesic; a frame orthogonal to it transports rigidly.
  const MetricChart chart = builtin_chart("sphere");
  std::vector<ChartPoint> path;
  for (int i = 0; i <= 50; ++i) path.push_back({i / 50.0, 0.0});
  const TangentVector v0{path.front(), {0.0, 1.0}};
  const TangentVector v1 = parallel_transport(chart, path, v0);
  EXPECT_NEAR(v1.v.x, 0.0, 1e-12);
  EXPECT_NEAR(v1.v.y, 1.0, 1e-12);
  // Norm and the angle against the tangent direction are both preserved.
  const TangentVector tangent{v1.base, {1.0, 0.0}};
  EXPECT_NEAR(norm(chart, v1), 1.0, 1e-12);
  EXPECT_NEAR(inner(chart, v1, tangent), 0.0, 1e-12);
}

TEST(ParallelTransport, RoundTripReturnsStart) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> step(-0.02, 0.02);
  for (const char* name : {"sphere", "half_plane"}) {
    const MetricChart chart = builtin_chart(name);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<ChartPoint> path;
      ChartPoint p{0.0, name == std::string("half_plane") ? 1.5 : 0.1};
      path.push_back(p);
      for (int s = 0; s < 30; ++s) {
        p = {p.x + step(rng), p.y + step(rng)};
        path.push_back(p);
      }
      std::vector<ChartPoint> back(path.rbegin(), path.rend());
      const TangentVector v0{path.front(), {0.8, 0.6}};
      const TangentVector fwd = parallel_transport(chart, path, v0);
      const TangentVector rt = parallel_transport(chart, back, fwd);
      EXPECT_NEAR(rt.v.x, v0.v.x, 1e-8) << name;
      EXPECT_NEAR(rt.v.y, v0.v.y, 1e-8) << name;
    }
  }
}

TEST(ParallelTransport, PreservesMetricNorm) {
  // Random short-segment walks; the g-norm of the vector must survive the
  // trip to within 1e-8 relative.
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> step(-0.018, 0.018);
  std::uniform_real_distribution<double> comp(-2.0, 2.0);
  for (const char* name : {"euclidean", "sphere", "half_plane"}) {
    const MetricChart chart = builtin_chart(name);
    for (int trial = 0; trial < 25; ++trial) {
      std::vector<ChartPoint> path;
      ChartPoint p{0.2, name == std::string("half_plane") ? 2.0 : -0.2};
      path.push_back(p);
      for (int s = 0; s < 50; ++s) {
        p = {p.x + step(rng), p.y + step(rng)};
        path.push_back(p);
      }
      const TangentVector v0{path.front(), {comp(rng), comp(rng)}};
      const double n0 = norm(chart, v0);
      if (n0 == 0.0) continue;
      const TangentVector v1 = parallel_transport(chart, path, v0);
      EXPECT_LE(std::abs(norm(chart, v1) - n0), 1e-8 * n0) << name;
    }
  }
}

TEST(ParallelTransport, RejectsShortPathAndForeignBase) {
  const MetricChart chart = builtin_chart("euclidean");
  const std::vector<ChartPoint> one{{0, 0}};
  EXPECT_THROW(
      parallel_transport(chart, one, TangentVector{{0, 0}, {1, 0}}),
      ValidationError);
  const std::vector<ChartPoint> path{{0, 0}, {1, 0}};
  EXPECT_THROW(
      parallel_transport(chart, path, TangentVector{{0.5, 0}, {1, 0}}),
      BaseMismatch);
}

TEST(ParallelTransport, OutOfDomainPathThrows) {
  const MetricChart chart = builtin_chart("half_plane");
  const std::vector<ChartPoint> path{{0, 1}, {0, -1}};
  EXPECT_THROW(
      parallel_transport(chart, path, TangentVector{{0, 1}, {1, 0}}),
      ChartDomainExceeded);
}

TEST(GeodesicEvolve, EuclideanStraightLine) {
  const MetricChart chart = builtin_chart("euclidean");
  const auto pts = geodesic_evolve(chart, {0, 0},
                                   TangentVector{{0, 0}, {1, 0}}, 1.0, 1e-3);
  EXPECT_NEAR(pts.back().x, 1.0, 1e-12);
  EXPECT_NEAR(pts.back().y, 0.0, 1e-12);
}

TEST(GeodesicEvolve, SphereEquatorStaysFlat) {
  const MetricChart chart = builtin_chart("sphere");
  const auto pts = geodesic_evolve(chart, {0, 0},
                                   TangentVector{{0, 0}, {1, 0}}, 2.0, 1e-3);
  for (const ChartPoint& p : pts) EXPECT_NEAR(p.y, 0.0, 1e-13);
  EXPECT_NEAR(pts.back().x, 2.0, 1e-10);
}

TEST(GeodesicEvolve, HalfPlaneVerticalIsExponential) {
  // Unit-speed vertical geodesics satisfy y(s) = y0 * e^s.
  const MetricChart chart = builtin_chart("half_plane");
  const auto pts = geodesic_evolve(chart, {0, 1},
                                   TangentVector{{0, 1}, {0, 1}}, 1.0, 1e-3);
  EXPECT_NEAR(pts.back().x, 0.0, 1e-12);
  EXPECT_NEAR(pts.back().y, std::exp(1.0), 1e-9);
}

TEST(GeodesicEvolve, SpeedConservedOverLongArc) {
  // Reconstruct the velocity along the output by central differences and
  // check the metric speed drifts by at most 1e-6 relative over s_max = 10.
  const double ds = 1e-3;
  const double s_max = 10.0;
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> ang(-0.5, 0.5);
  for (const char* name : {"sphere", "half_plane"}) {
    const MetricChart chart = builtin_chart(name);
    for (int trial = 0; trial < 3; ++trial) {
      const ChartPoint p0{0.0, name == std::string("half_plane") ? 1.0 : 0.0};
      // Launch mostly along a safe axis so the arc stays inside the chart.
      const double a = ang(rng);
      const Vec2 dir = name == std::string("half_plane")
                           ? Vec2{std::sin(a) * 0.2, std::cos(a)}
                           : Vec2{std::cos(a), std::sin(a) * 0.5};
      const TangentVector v0{p0, dir};
      const double speed0 = norm(chart, v0);
      const auto pts = geodesic_evolve(chart, p0, v0, s_max, ds);
      ASSERT_GE(pts.size(), static_cast<std::size_t>(s_max / ds) + 1);
      const std::size_t n_grid = static_cast<std::size_t>(s_max / ds) + 1;
      double max_drift = 0.0;
      for (std::size_t i = 1; i + 1 < n_grid; i += 25) {
        const Vec2 vel = (1.0 / (2.0 * ds)) * (pts[i + 1] - pts[i - 1]);
        const double speed = norm(chart, TangentVector{pts[i], vel});
        max_drift = std::max(max_drift, std::abs(speed - speed0) / speed0);
      }
      EXPECT_LE(max_drift, 1e-6) << name << " trial " << trial;
    }
  }
}

TEST(GeodesicEvolve, DomainExitThrows) {
  const MetricChart chart = builtin_chart("sphere");
  // Launch straight at the pole; the chart must refuse before reaching it.
  EXPECT_THROW(geodesic_evolve(chart, {0, 0}, TangentVector{{0, 0}, {0, 1}},
                               3.0, 1e-3),
               ChartDomainExceeded);
}
