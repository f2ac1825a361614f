#pragma once

// String material model: density 1-forms and constant-density
// reparametrization, stretch and tension under perfect elasticity, the
// classical transverse-string tension law with its force-balance residuals,
// the comparator models, and the d'Alembert reference solution.

#include <cmath>
#include <functional>
#include <string>
#include <string_view>
#include <utility>

#include "wavemap/errors.hpp"
#include "wavemap/geometry.hpp"
#include "wavemap/numerics.hpp"

namespace wavemap {

// Mass distribution along a material curve, given as a positive density
// dmu/dx over the curve parameter x. When a closed-form antiderivative is
// supplied it defines the m-coordinate directly (including its additive
// origin, so built-in forms reproduce their conventional m-ranges exactly);
// otherwise masses come from adaptive quadrature anchored at a_x.
struct DensityForm {
  std::function<double(double)> density_fn;
  double a_x = 0.0, b_x = 1.0;
  std::function<double(double)> antiderivative;  // optional closed form

  bool has_closed_form() const { return static_cast<bool>(antiderivative); }
};

inline DensityForm unit_density(double a, double b) {
  return {[](double) { return 1.0; }, a, b, [](double x) { return x; }};
}

// dmu = 2(x + 1/2) dx with antiderivative m(x) = (x + 1/2)^2.
inline DensityForm affine_density(double a, double b) {
  return {[](double x) { return 2.0 * (x + 0.5); }, a, b,
          [](double x) { return (x + 0.5) * (x + 0.5); }};
}

inline DensityForm constant_density(double k, double a, double b) {
  return {[k](double) { return k; }, a, b, [k](double x) { return k * x; }};
}

// dmu = dx / x on x > 0 with antiderivative m(x) = ln x; this is hyperbolic
// arc length along a vertical line when x plays the role of the height.
inline DensityForm log_arclen_density(double a, double b) {
  return {[](double x) { return 1.0 / x; }, a, b,
          [](double x) { return std::log(x); }};
}

// m-coordinate of the material point at parameter x: the antiderivative value
// when a closed form is attached (its origin convention included), otherwise
// the integral of the density from a_x.
inline double mass_coordinate(const DensityForm& d, double x) {
  if (x < d.a_x || x > d.b_x) {
    throw OutOfRange("mass_coordinate: parameter outside density range");
  }
  if (d.has_closed_form()) return d.antiderivative(x);
  return adaptive_simpson(d.density_fn, d.a_x, x, 1e-10);
}

// Mass of the material segment between a_x and x.
inline double cumulative_mass(const DensityForm& d, double x) {
  if (x < d.a_x || x > d.b_x) {
    throw OutOfRange("cumulative_mass: parameter outside density range");
  }
  if (d.has_closed_form()) return d.antiderivative(x) - d.antiderivative(d.a_x);
  return adaptive_simpson(d.density_fn, d.a_x, x, 1e-10);
}

// Linear density rho and equilibrium tension T0 in the constant-density
// parametrization, with the wave speed c stored redundantly and checked.
struct MaterialParams {
  double rho = 1.0;
  double T0 = 1.0;
  double c = 1.0;

  MaterialParams() = default;
  MaterialParams(double rho_, double T0_, double c_)
      : rho(rho_), T0(T0_), c(c_) {
    if (!(rho > 0.0) || !(T0 > 0.0) || !(c > 0.0)) {
      throw ValidationError("material parameters must be positive");
    }
    if (std::abs(c * c * rho - T0) > 1e-12 * T0) {
      throw ValidationError("material parameters violate c^2 * rho = T0");
    }
  }

  static MaterialParams from_c_rho(double c, double rho) {
    return MaterialParams(rho, c * c * rho, c);
  }
};

// A curve as a function of the constant-density parameter m.
struct ParametrizedCurve {
  std::function<ChartPoint(double)> eval;
  double m_a = 0.0, m_b = 1.0;

  ChartPoint operator()(double m) const { return eval(m); }
};

// Recasts a curve given over the density's parameter range as a function of
// the m-coordinate, inverting the cumulative mass numerically.
inline ParametrizedCurve reparametrize_by_density(
    std::function<ChartPoint(double)> curve, const DensityForm& d) {
  // Defensive positivity probe; a valid DensityForm cannot fail this.
  const int probes = 64;
  for (int i = 0; i <= probes; ++i) {
    const double x = d.a_x + (d.b_x - d.a_x) * i / probes;
    if (!(d.density_fn(x) > 0.0)) {
      throw NonMonotoneMass("density must be strictly positive");
    }
  }
  ParametrizedCurve out;
  out.m_a = mass_coordinate(d, d.a_x);
  out.m_b = mass_coordinate(d, d.b_x);
  out.eval = [curve = std::move(curve), d](double m) {
    const double x = invert_increasing(
        [&d](double s) { return mass_coordinate(d, s); }, d.density_fn, m,
        d.a_x, d.b_x, 1e-10);
    return curve(x);
  };
  return out;
}

// Stretch factor sigma = |u_m|_g, the ratio of deformed arc length to the
// constant-density parameter.
inline double stretch_factor(const MetricChart& chart,
                             const TangentVector& u_m) {
  return norm(chart, u_m);
}

// Perfect elasticity: tension proportional to stretch.
inline double tension(const MaterialParams& mp, double sigma) {
  return mp.T0 * sigma;
}

// Classical transverse tension law T(x)= C sqrt(1 + u_x^2) for a string that
// is the graph of u over x; u_x is the slope field.
inline double transverse_tension_field(const std::function<double(double)>& u_x,
                                       double C, double x) {
  const double s = u_x(x);
  return C * std::sqrt(1.0 + s * s);
}

// Residual of the horizontal force balance
//   T_x / sqrt(1 + u_x^2) - T u_x u_xx / (1 + u_x^2)^{3/2} = 0
// under the transverse tension law, with derivatives taken by finite
// differences of step h. Zero (to truncation) for every slope field.
inline double horizontal_balance_residual(
    const std::function<double(double)>& u_x, double C, double x,
    double h = 1e-3) {
  const double s = u_x(x);
  const double T = transverse_tension_field(u_x, C, x);
  const double T_x = fd_derivative(
      [&](double q) { return transverse_tension_field(u_x, C, q); }, x, h);
  const double s_x = fd_derivative(u_x, x, h);
  const double w = 1.0 + s * s;
  return T_x / std::sqrt(w) - T * s * s_x / (w * std::sqrt(w));
}

// Residual of the vertical force balance (Newton's law for the transverse
// motion u(x,t)):
//   rho u_tt - d/dx [ T sin(theta) ],  sin(theta) = u_x / sqrt(1 + u_x^2),
// with T = C sqrt(1 + u_x^2) and all derivatives by finite differences.
inline double transverse_newton_residual(
    const std::function<double(double, double)>& u, double C, double rho,
    double x, double t, double h = 1e-3) {
  const double u_tt =
      fd_second_derivative([&](double q) { return u(x, q); }, t, h);
  const auto flux = [&](double q) {
    const double s = fd_derivative([&](double r) { return u(r, t); }, q, h);
    const double T = C * std::sqrt(1.0 + s * s);
    return T * s / std::sqrt(1.0 + s * s);
  };
  return rho * u_tt - fd_derivative(flux, x, h);
}

// Transverse-acceleration models for comparison; the first two are the
// textbook candidates that the exact solution does NOT satisfy, the third is
// the linearized equation.
inline double comparator_rhs(std::string_view model, double u_x, double u_xx,
                             double T, double rho) {
  const double w = 1.0 + u_x * u_x;
  if (model == "cj_wrong_mass") return T * u_xx / (rho * w * w);
  if (model == "cj_fixed_mass") return T * u_xx / (rho * w * std::sqrt(w));
  if (model == "linear") return T * u_xx / rho;
  throw UnknownModel(std::string(model));
}

// D'Alembert evolution of a plucked profile with zero initial velocity and
// fixed ends at 0 and L: u = (P(x + ct) + P(x - ct)) / 2 where P is the odd,
// 2L-periodic extension of the profile.
inline double dalembert(const std::function<double(double)>& profile, double L,
                        double c, double x, double t) {
  const auto P = [&](double s) {
    double r = std::fmod(s, 2.0 * L);
    if (r < 0.0) r += 2.0 * L;
    return r <= L ? profile(r) : -profile(2.0 * L - r);
  };
  return 0.5 * (P(x + c * t) + P(x - c * t));
}

}  // namespace wavemap
