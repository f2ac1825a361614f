#pragma once

#include <stdexcept>
#include <string>

namespace wavemap {

// Base class for everything thrown by this library.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct UnknownChart : Error {
  explicit UnknownChart(const std::string& name)
      : Error("unknown chart: " + name) {}
};

struct ChartDomainExceeded : Error {
  ChartDomainExceeded(const std::string& chart, double x, double y,
                      const std::string& context)
      : Error("point (" + std::to_string(x) + ", " + std::to_string(y) +
              ") outside domain of chart '" + chart + "' (" + context + ")"),
        x(x), y(y) {}
  double x, y;
};

struct NearBoundary : Error {
  explicit NearBoundary(const std::string& what) : Error(what) {}
};

struct BaseMismatch : Error {
  explicit BaseMismatch(const std::string& what) : Error(what) {}
};

struct UnknownModel : Error {
  explicit UnknownModel(const std::string& name)
      : Error("unknown comparator model: " + name) {}
};

struct OutOfRange : Error {
  explicit OutOfRange(const std::string& what) : Error(what) {}
};

struct NonMonotoneMass : Error {
  explicit NonMonotoneMass(const std::string& what) : Error(what) {}
};

struct NonFinite : Error {
  explicit NonFinite(const std::string& what) : Error(what) {}
};

struct UnknownScenario : Error {
  explicit UnknownScenario(const std::string& name)
      : Error("unknown scenario: " + name) {}
};

struct ParseError : Error {
  explicit ParseError(const std::string& what) : Error(what) {}
};

struct SchemaError : Error {
  explicit SchemaError(const std::string& what) : Error(what) {}
};

struct ValidationError : Error {
  explicit ValidationError(const std::string& what) : Error(what) {}
};

struct NoPeriodFound : Error {
  explicit NoPeriodFound(const std::string& what) : Error(what) {}
};

// Raised by run() when a step fails; carries the simulation time of the
// failure so callers can report and retain partial output.
struct SolverAbort : Error {
  SolverAbort(double t, const std::string& cause)
      : Error("solver aborted at t = " + std::to_string(t) + ": " + cause),
        t_fail(t), cause(cause) {}
  double t_fail;
  std::string cause;
};

}  // namespace wavemap
