#pragma once

// Scenario registry: the built-in experiments (flat, spherical, and
// hyperbolic targets) plus JSON load/save of user scenarios with strict
// schema checking. Initial curves are stored as expression identifiers with
// parameters, or as sampled point tables interpolated monotonically.

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "wavemap/errors.hpp"
#include "wavemap/geometry.hpp"
#include "wavemap/numerics.hpp"
#include "wavemap/string_model.hpp"

namespace wavemap {

using ordered_json = nlohmann::ordered_json;

// Initial-curve description: either a named closed-form expression with
// numeric parameters, or a table of sampled points over m.
struct CurveSpec {
  std::string kind = "builtin";  // "builtin" | "samples"
  std::string id;                // expression identifier
  std::map<std::string, double> params;
  std::vector<double> sample_m, sample_x, sample_y;
};

struct Scenario {
  std::string name;
  std::string chart = "euclidean";
  CurveSpec curve;
  double m_a = 0.0, m_b = 1.0;
  double c = 1.0;
  double rho = 1.0;
  double T0 = 1.0;  // = c^2 * rho unless set explicitly
  int n = 201;
  double t_end = 2.0;
  double cfl = 0.5;
  int record_every = 1;
  std::string density = "unit";  // parametrization provenance, informational
  std::vector<std::string> outputs{"csv", "svg"};

  MaterialParams material() const { return MaterialParams(rho, T0, c); }
};

namespace detail {

inline double param_or(const CurveSpec& cs, const std::string& key,
                       double fallback) {
  const auto it = cs.params.find(key);
  return it == cs.params.end() ? fallback : it->second;
}

inline void check_param_names(const CurveSpec& cs,
                              std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : cs.params) {
    (void)value;
    bool ok = false;
    for (const char* name : allowed) ok = ok || key == name;
    if (!ok) {
      throw SchemaError("curve '" + cs.id + "': unknown parameter '" + key +
                        "'");
    }
  }
}

}  // namespace detail

// Instantiates a curve spec over [m_a, m_b]. Expression identifiers:
//   graph_sine            (m, A sin(w m));            params amplitude, angular_freq
//   graph_sine_sqrt_mass  (s, A sin(w s)), s = sqrt(m) - shift;
//                         params amplitude, angular_freq, shift
//   horizontal_line       (m, y0);                    params y0
//   exp_sine              (A e^m sin(e^m - 1), e^m);  params amplitude
inline ParametrizedCurve make_curve(const CurveSpec& cs, double m_a,
                                    double m_b) {
  ParametrizedCurve pc;
  pc.m_a = m_a;
  pc.m_b = m_b;
  if (cs.kind == "builtin") {
    if (cs.id == "graph_sine") {
      detail::check_param_names(cs, {"amplitude", "angular_freq"});
      const double a = detail::param_or(cs, "amplitude", 1.0);
      const double w = detail::param_or(cs, "angular_freq", M_PI);
      pc.eval = [a, w](double m) {
        return ChartPoint{m, a * std::sin(w * m)};
      };
    } else if (cs.id == "graph_sine_sqrt_mass") {
      detail::check_param_names(cs, {"amplitude", "angular_freq", "shift"});
      const double a = detail::param_or(cs, "amplitude", 1.0);
      const double w = detail::param_or(cs, "angular_freq", M_PI);
      const double shift = detail::param_or(cs, "shift", 0.5);
      pc.eval = [a, w, shift](double m) {
        const double s = std::sqrt(m) - shift;
        return ChartPoint{s, a * std::sin(w * s)};
      };
    } else if (cs.id == "horizontal_line") {
      detail::check_param_names(cs, {"y0"});
      const double y0 = detail::param_or(cs, "y0", 1.0);
      pc.eval = [y0](double m) { return ChartPoint{m, y0}; };
    } else if (cs.id == "exp_sine") {
      detail::check_param_names(cs, {"amplitude"});
      const double a = detail::param_or(cs, "amplitude", 1.0);
      pc.eval = [a](double m) {
        const double e = std::exp(m);
        return ChartPoint{a * e * std::sin(e - 1.0), e};
      };
    } else {
      throw SchemaError("unknown builtin curve id '" + cs.id + "'");
    }
    return pc;
  }
  if (cs.kind == "samples") {
    if (cs.sample_m.size() != cs.sample_x.size() ||
        cs.sample_m.size() != cs.sample_y.size()) {
      throw SchemaError("sampled curve: m, x, y must have equal lengths");
    }
    if (cs.sample_m.size() < 2) {
      throw SchemaError("sampled curve: need at least 2 samples");
    }
    const double slack = 1e-9 * (1.0 + std::abs(m_b - m_a));
    if (cs.sample_m.front() > m_a + slack || cs.sample_m.back() < m_b - slack) {
      throw ValidationError("sampled curve does not cover the m_range");
    }
    auto cx = std::make_shared<MonotoneCubic>(cs.sample_m, cs.sample_x);
    auto cy = std::make_shared<MonotoneCubic>(cs.sample_m, cs.sample_y);
    pc.eval = [cx, cy](double m) {
      return ChartPoint{(*cx)(m), (*cy)(m)};
    };
    return pc;
  }
  throw SchemaError("curve kind must be 'builtin' or 'samples', got '" +
                    cs.kind + "'");
}

inline const std::vector<std::string>& builtin_scenario_names() {
  static const std::vector<std::string> names{
      "e2-classic",    "e2-affine-density", "s2-small", "s2-large",
      "h2-horizontal", "h2-small",          "h2-large"};
  return names;
}

// Fully populated built-in experiments. Flat-target runs default to one
// exact period; curved-target t_end values are frozen at three times the
// fundamental period measured at the default resolution.
inline Scenario builtin_scenario(const std::string& name) {
  Scenario sc;
  sc.name = name;
  if (name == "e2-classic") {
    sc.chart = "euclidean";
    sc.curve = {"builtin", "graph_sine", {{"amplitude", 1.0},
                                          {"angular_freq", M_PI}}, {}, {}, {}};
    sc.m_a = 0.0;
    sc.m_b = 1.0;
    sc.n = 201;
    sc.t_end = 2.0;
    sc.record_every = 4;
    sc.density = "unit";
  } else if (name == "e2-affine-density") {
    sc.chart = "euclidean";
    sc.curve = {"builtin",
                "graph_sine_sqrt_mass",
                {{"amplitude", 1.0}, {"angular_freq", M_PI}, {"shift", 0.5}},
                {}, {}, {}};
    sc.m_a = 0.25;
    sc.m_b = 2.25;
    sc.n = 201;
    sc.t_end = 4.0;
    sc.record_every = 4;
    sc.density = "affine";
  } else if (name == "s2-small" || name == "s2-large") {
    sc.chart = "sphere";
    const double amp = name == "s2-small" ? 0.5 : 1.0;
    sc.curve = {"builtin",
                "graph_sine",
                {{"amplitude", amp}, {"angular_freq", 2.0 * M_PI / 3.0}},
                {}, {}, {}};
    sc.m_a = 0.0;
    sc.m_b = 1.5;
    sc.n = 401;
    // Three times the fundamental period measured by the recurrence
    // estimator over a 30-unit window at the defaults below.
    sc.t_end = name == "s2-small" ? 8.219 : 7.549;
    sc.record_every = 25;
    sc.density = "unit";
  } else if (name == "h2-horizontal") {
    sc.chart = "half_plane";
    sc.curve = {"builtin", "horizontal_line", {{"y0", 1.0}}, {}, {}, {}};
    sc.m_a = 0.0;
    sc.m_b = 2.0;
    sc.n = 401;
    sc.t_end = 9.021;  // three measured fundamental periods
    sc.record_every = 25;
    sc.density = "unit";
  } else if (name == "h2-small" || name == "h2-large") {
    sc.chart = "half_plane";
    const double amp = name == "h2-small" ? 0.5 : 1.0;
    sc.curve = {"builtin", "exp_sine", {{"amplitude", amp}}, {}, {}, {}};
    sc.m_a = 0.0;
    sc.m_b = std::log(M_PI + 1.0);
    sc.n = 401;
    sc.t_end = name == "h2-small" ? 7.572 : 6.819;  // 3x measured period
    sc.record_every = 10;
    sc.density = "log_arclen";
  } else {
    throw UnknownScenario(name);
  }
  return sc;
}

// Grid-samples the scenario's initial curve and confirms every node sits
// inside the chart, reporting the first offender by index.
inline void validate_scenario(const Scenario& sc) {
  if (sc.chart != "euclidean" && sc.chart != "sphere" &&
      sc.chart != "half_plane") {
    throw ValidationError("scenario '" + sc.name + "': unknown chart '" +
                          sc.chart + "'");
  }
  if (sc.n < 3) throw ValidationError("scenario: n must be >= 3");
  if (!(sc.m_b > sc.m_a)) throw ValidationError("scenario: empty m_range");
  if (!(sc.t_end > 0.0)) throw ValidationError("scenario: t_end must be > 0");
  if (!(sc.cfl > 0.0) || sc.cfl > 1.0) {
    throw ValidationError("scenario: cfl must lie in (0, 1]");
  }
  if (sc.record_every < 1) {
    throw ValidationError("scenario: record_every must be >= 1");
  }
  (void)sc.material();  // positivity + consistency of c, rho, T0
  const MetricChart chart = builtin_chart(sc.chart);
  const ParametrizedCurve curve = make_curve(sc.curve, sc.m_a, sc.m_b);
  const double dm = (sc.m_b - sc.m_a) / (sc.n - 1);
  for (int i = 0; i < sc.n; ++i) {
    const double m = (i + 1 == sc.n) ? sc.m_b : sc.m_a + i * dm;
    const ChartPoint p = curve.eval(m);
    if (!chart.contains(p)) {
      std::ostringstream msg;
      msg << "scenario '" << sc.name << "': initial node " << i << " at ("
          << p.x << ", " << p.y << ") lies outside chart '" << sc.chart
          << "'";
      throw ValidationError(msg.str());
    }
  }
}

// --------------------------------------------------------------------------
// JSONround-trip. Schema (all keys lower_snake_case, unknown keys rejected):
//   {"name", "chart", "curve", "m_range", "c"?, "rho"?, "n", "t_end",
//    "cfl"?, "record_every"?}
// with curve either {"kind":"builtin","id":...,"params"?:{...}} or
// {"kind":"samples","m":[...],"x":[...],"y":[...]}.

namespace detail {

inline void reject_unknown_keys(const ordered_json& j,
                                std::initializer_list<const char*> allowed,
                                const char* ctx) {
  for (const auto& [key, value] : j.items()) {
    (void)value;
    bool ok = false;
    for (const char* name : allowed) ok = ok || key == name;
    if (!ok) {
      throw SchemaError(std::string(ctx) + ": unknown key '" + key + "'");
    }
  }
}

inline const ordered_json& require_key(const ordered_json& j,
                                       const char* key, const char* ctx) {
  const auto it = j.find(key);
  if (it == j.end()) {
    throw SchemaError(std::string(ctx) + ": missing key '" + key + "'");
  }
  return *it;
}

inline double as_number(const ordered_json& j, const char* key,
                        const char* ctx) {
  if (!j.is_number()) {
    throw SchemaError(std::string(ctx) + ": '" + key + "' must be a number");
  }
  return j.get<double>();
}

inline int as_integer(const ordered_json& j, const char* key,
                      const char* ctx) {
  if (!j.is_number_integer()) {
    throw SchemaError(std::string(ctx) + ": '" + key +
                      "' must be an integer");
  }
  return j.get<int>();
}

inline std::string as_string(const ordered_json& j, const char* key,
                             const char* ctx) {
  if (!j.is_string()) {
    throw SchemaError(std::string(ctx) + ": '" + key + "' must be a string");
  }
  return j.get<std::string>();
}

inline std::vector<double> as_number_array(const ordered_json& j,
                                           const char* key, const char* ctx) {
  if (!j.is_array()) {
    throw SchemaError(std::string(ctx) + ": '" + key + "' must be an array");
  }
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& v : j) {
    if (!v.is_number()) {
      throw SchemaError(std::string(ctx) + ": '" + key +
                        "' must contain only numbers");
    }
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace detail

inline CurveSpec curve_from_json(const ordered_json& j) {
  if (!j.is_object()) throw SchemaError("curve: must be an object");
  CurveSpec cs;
  cs.kind = detail::as_string(detail::require_key(j, "kind", "curve"), "kind",
                              "curve");
  if (cs.kind == "builtin") {
    detail::reject_unknown_keys(j, {"kind", "id", "params"}, "curve");
    cs.id = detail::as_string(detail::require_key(j, "id", "curve"), "id",
                              "curve");
    if (j.contains("params")) {
      const ordered_json& p = j.at("params");
      if (!p.is_object()) throw SchemaError("curve: 'params' must be an object");
      for (const auto& [key, value] : p.items()) {
        if (!value.is_number()) {
          throw SchemaError("curve: parameter '" + key +
                            "' must be a number");
        }
        cs.params[key] = value.get<double>();
      }
    }
  } else if (cs.kind == "samples") {
    detail::reject_unknown_keys(j, {"kind", "m", "x", "y"}, "curve");
    cs.sample_m = detail::as_number_array(
        detail::require_key(j, "m", "curve"), "m", "curve");
    cs.sample_x = detail::as_number_array(
        detail::require_key(j, "x", "curve"), "x", "curve");
    cs.sample_y = detail::as_number_array(
        detail::require_key(j, "y", "curve"), "y", "curve");
  } else {
    throw SchemaError("curve: 'kind' must be 'builtin' or 'samples'");
  }
  return cs;
}

inline ordered_json curve_to_json(const CurveSpec& cs) {
  ordered_json j;
  j["kind"] = cs.kind;
  if (cs.kind == "builtin") {
    j["id"] = cs.id;
    if (!cs.params.empty()) {
      ordered_json p;
      for (const auto& [key, value] : cs.params) p[key] = value;
      j["params"] = p;
    }
  } else {
    j["m"] = cs.sample_m;
    j["x"] = cs.sample_x;
    j["y"] = cs.sample_y;
  }
  return j;
}

inline Scenario scenario_from_json(const ordered_json& j) {
  if (!j.is_object()) throw SchemaError("scenario: root must be an object");
  detail::reject_unknown_keys(j,
                              {"name", "chart", "curve", "m_range", "c",
                               "rho", "n", "t_end", "cfl", "record_every"},
                              "scenario");
  Scenario sc;
  sc.name = detail::as_string(detail::require_key(j, "name", "scenario"),
                              "name", "scenario");
  sc.chart = detail::as_string(detail::require_key(j, "chart", "scenario"),
                               "chart", "scenario");
  if (sc.chart != "euclidean" && sc.chart != "sphere" &&
      sc.chart != "half_plane") {
    throw SchemaError(
        "scenario: 'chart' must be euclidean, sphere, or half_plane");
  }
  sc.curve = curve_from_json(detail::require_key(j, "curve", "scenario"));
  const std::vector<double> mr = detail::as_number_array(
      detail::require_key(j, "m_range", "scenario"), "m_range", "scenario");
  if (mr.size() != 2) {
    throw SchemaError("scenario: 'm_range' must be [m_a, m_b]");
  }
  sc.m_a = mr[0];
  sc.m_b = mr[1];
  if (j.contains("c")) {
    sc.c = detail::as_number(j.at("c"), "c", "scenario");
  }
  if (j.contains("rho")) {
    sc.rho = detail::as_number(j.at("rho"), "rho", "scenario");
  }
  sc.T0 = sc.c * sc.c * sc.rho;
  sc.n = detail::as_integer(detail::require_key(j, "n", "scenario"), "n",
                            "scenario");
  sc.t_end = detail::as_number(detail::require_key(j, "t_end", "scenario"),
                               "t_end", "scenario");
  if (j.contains("cfl")) {
    sc.cfl = detail::as_number(j.at("cfl"), "cfl", "scenario");
  }
  if (j.contains("record_every")) {
    sc.record_every =
        detail::as_integer(j.at("record_every"), "record_every", "scenario");
  }
  validate_scenario(sc);
  return sc;
}

inline ordered_json scenario_to_json(const Scenario& sc) {
  ordered_json j;
  j["name"] = sc.name;
  j["chart"] = sc.chart;
  j["curve"] = curve_to_json(sc.curve);
  j["m_range"] = {sc.m_a, sc.m_b};
  j["c"] = sc.c;
  j["rho"] = sc.rho;
  j["n"] = sc.n;
  j["t_end"] = sc.t_end;
  j["cfl"] = sc.cfl;
  j["record_every"] = sc.record_every;
  return j;
}

inline Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open scenario file '" + path + "'");
  ordered_json j;
  try {
    j = ordered_json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("scenario file '" + path + "': " + e.what());
  }
  return scenario_from_json(j);
}

inline void save_scenario(const Scenario& sc, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write scenario file '" + path + "'");
  out << scenario_to_json(sc).dump(2) << "\n";
}

}  // namespace wavemap
