#pragma once

// End-to-end driver: instantiate a scenario, march it to t_end with uniform
// steps that land exactly on the final time, record frames on the configured
// cadence, and assemble the energy/period report. Also provides grid-
// refinement order measurement against an analytic or fine-grid reference.

#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include "wavemap/diagnostics.hpp"
#include "wavemap/errors.hpp"
#include "wavemap/geometry.hpp"
#include "wavemap/scenarios.hpp"
#include "wavemap/solver.hpp"
#include "wavemap/string_model.hpp"

namespace wavemap {

struct RunResult {
  Scenario scenario;
  std::vector<StringState> frames;
  EnergyReport report;
  double dt = 0.0;
  long long steps = 0;
};

// Called once per recorded frame, in order, starting with the initial one.
// Lets callers stream frames to disk (or keep partial records) even when the
// run later aborts.
using FrameHook = std::function<void(const StringState&)>;

// Advances the scenario from t = 0 to t_end. The step count is the smallest
// one keeping dt within the configured bound cfl*dm/c, so the run lands on
// t_end exactly (up to accumulation roundoff). Frames are recorded at step 0,
// every record_every-th step, and at the final step. Chart exits and
// non-finite values abort the run with the last good time attached.
inline RunResult run(const Scenario& sc, const FrameHook& hook = nullptr) {
  validate_scenario(sc);
  const MetricChart chart = builtin_chart(sc.chart);
  const MaterialParams mp = sc.material();
  const ParametrizedCurve curve = make_curve(sc.curve, sc.m_a, sc.m_b);

  RunResult res;
  res.scenario = sc;
  StringState st = initial_state(chart, curve, sc.n);

  const double dt_bound = sc.cfl * st.dm / sc.c;
  const long long steps =
      std::max(1LL, static_cast<long long>(
                        std::ceil(sc.t_end / dt_bound - 1e-9)));
  SolverConfig cfg;
  cfg.cfl = (sc.t_end / static_cast<double>(steps)) * sc.c / st.dm;
  cfg.record_every = sc.record_every;
  if (steps > cfg.max_steps) {
    throw ValidationError("run: step count exceeds the configured maximum");
  }
  res.dt = time_step(cfg, st.dm, sc.c);
  res.steps = steps;

  const auto record = [&](const StringState& frame) {
    res.frames.push_back(frame);
    if (hook) hook(frame);
  };
  record(st);
  for (long long k = 1; k <= steps; ++k) {
    try {
      st = step(chart, st, cfg, sc.c);
    } catch (const ChartDomainExceeded& e) {
      throw SolverAbort(st.t, e.what());
    } catch (const NonFinite& e) {
      throw SolverAbort(st.t, e.what());
    }
    if (k % sc.record_every == 0 || k == steps) record(st);
  }

  res.report = energy_report(chart, res.frames, mp);
  try {
    res.report.estimated_period = estimate_period(res.frames);
  } catch (const NoPeriodFound&) {
    res.report.estimated_period.reset();
  }
  return res;
}

namespace detail {

// L-infinity distance between a coarse final frame and the matching nodes of
// a finer final frame on the same m-interval.
inline double nested_grid_distance(const StringState& coarse,
                                   const StringState& fine) {
  const int stride = (fine.n() - 1) / (coarse.n() - 1);
  if (stride * (coarse.n() - 1) != fine.n() - 1) {
    throw ValidationError(
        "convergence_order: grids do not nest (n-1 values must divide)");
  }
  double err = 0.0;
  for (int i = 0; i < coarse.n(); ++i) {
    const Vec2 d = coarse.pos[i] - fine.pos[i * stride];
    err = std::max({err, std::abs(d.x), std::abs(d.y)});
  }
  return err;
}

}  // namespace detail

// Richardson-style order measurement over a strictly increasing resolution
// list. With an oracle, the error is the max-over-frames L-infinity distance
// to it; without one, a run at 4x the finest resolution serves as the
// reference and errors are final-frame distances on the shared nodes.
inline std::vector<ConvergenceRow> convergence_order(
    const Scenario& base, const std::vector<int>& n_list,
    const std::function<ChartPoint(double, double)>& oracle = nullptr) {
  if (n_list.size() < 3) {
    throw ValidationError("convergence_order: need at least 3 resolutions");
  }
  for (std::size_t k = 1; k < n_list.size(); ++k) {
    if (n_list[k] <= n_list[k - 1]) {
      throw ValidationError(
          "convergence_order: resolutions must strictly increase");
    }
  }
  std::vector<std::pair<int, double>> errors;
  if (oracle) {
    for (int n : n_list) {
      Scenario sc = base;
      sc.n = n;
      const RunResult res = run(sc);
      errors.emplace_back(n, error_vs_oracle(res.frames, oracle).max_linf);
    }
  } else {
    Scenario ref = base;
    ref.n = 4 * (n_list.back() - 1) + 1;
    const RunResult fine = run(ref);
    for (int n : n_list) {
      Scenario sc = base;
      sc.n = n;
      const RunResult res = run(sc);
      errors.emplace_back(
          n, detail::nested_grid_distance(res.frames.back(),
                                          fine.frames.back()));
    }
  }
  return convergence_table(std::move(errors));
}

}  // namespace wavemap
