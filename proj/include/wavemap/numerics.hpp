#pragma once

// Small numerical utilities shared across the library: adaptive quadrature,
// finite-difference stencils, monotone root finding, and shape-preserving
// cubic interpolation.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "wavemap/errors.hpp"

namespace wavemap {

// ---------------------------------------------------------------------------
// Adaptive Simpson quadrature with absolute tolerance.

namespace detail {

template <typename F>
double simpson_rec(const F& f, double a, double b, double fa, double fm,
                   double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

template <typename F>
double adaptive_simpson(const F& f, double a, double b, double tol = 1e-10,
                        int max_depth = 48) {
  if (a == b) return 0.0;
  const double fa = f(a), fm = f(0.5 * (a + b)), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return detail::simpson_rec(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

// ---------------------------------------------------------------------------
// Fourth-order central finite-difference stencils over callables.

template <typename F>
double fd_derivative(const F& f, double x, double h) {
  return (-f(x + 2.0 * h) + 8.0 * f(x + h) - 8.0 * f(x - h) + f(x - 2.0 * h)) /
         (12.0 * h);
}

template <typename F>
double fd_second_derivative(const F& f, double x, double h) {
  return (-f(x + 2.0 * h) + 16.0 * f(x + h) - 30.0 * f(x) +
          16.0 * f(x - h) - f(x - 2.0 * h)) /
         (12.0 * h * h);
}

// ---------------------------------------------------------------------------
// Inversion of a strictly increasing function: bisection bracket plus Newton
// polish, to |F(x) - target| <= tol.

template <typename F, typename DF>
double invert_increasing(const F& fn, const DF& dfn, double target, double lo,
                         double hi, double tol = 1e-10) {
  double flo = fn(lo) - target;
  double fhi = fn(hi) - target;
  if (flo > tol || fhi < -tol) {
    throw OutOfRange("inversion target outside function range");
  }
  if (std::abs(flo) <= tol) return lo;
  if (std::abs(fhi) <= tol) return hi;
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const double fx = fn(x) - target;
    if (std::abs(fx) <= tol) return x;
    if (fx > 0.0) hi = x; else lo = x;
    const double d = dfn(x);
    double next = (d > 0.0) ? x - fx / d : 0.5 * (lo + hi);
    if (!(next > lo) || !(next < hi)) next = 0.5 * (lo + hi);
    x = next;
  }
  return x;
}

// ---------------------------------------------------------------------------
// Monotone (shape-preserving) piecewise-cubic Hermite interpolation over a
// strictly increasing abscissa grid. Fritsch-Carlson tangent limiting.

class MonotoneCubic {
 public:
  MonotoneCubic() = default;

  MonotoneCubic(std::vector<double> xs, std::vector<double> ys)
      : x_(std::move(xs)), y_(std::move(ys)) {
    const std::size_t n = x_.size();
    if (n < 2 || y_.size() != n) {
      throw ValidationError("interpolation needs >= 2 matching samples");
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (!(x_[i + 1] > x_[i])) {
        throw ValidationError("interpolation abscissae must increase");
      }
    }
    tan_.assign(n, 0.0);
    std::vector<double> h(n - 1), slope(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      h[i] = x_[i + 1] - x_[i];
      slope[i] = (y_[i + 1] - y_[i]) / h[i];
    }
    if (n == 2) {
      tan_[0] = tan_[1] = slope[0];
      return;
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
      if (slope[i - 1] * slope[i] <= 0.0) {
        tan_[i] = 0.0;
      } else {
        const double w1 = 2.0 * h[i] + h[i - 1];
        const double w2 = h[i] + 2.0 * h[i - 1];
        tan_[i] = (w1 + w2) / (w1 / slope[i - 1] + w2 / slope[i]);
      }
    }
    tan_[0] = end_tangent(h[0], h[1], slope[0], slope[1]);
    tan_[n - 1] = end_tangent(h[n - 2], h[n - 3], slope[n - 2], slope[n - 3]);
  }

  double operator()(double x) const {
    const std::size_t n = x_.size();
    if (x <= x_.front()) return hermite(0, x);
    if (x >= x_.back()) return hermite(n - 2, x);
    const auto it = std::upper_bound(x_.begin(), x_.end(), x);
    const std::size_t k = static_cast<std::size_t>(it - x_.begin()) - 1;
    return hermite(k, x);
  }

  double x_front() const { return x_.front(); }
  double x_back() const { return x_.back(); }

 private:
  static double end_tangent(double h0, double h1, double s0, double s1) {
    // Non-centered three-point estimate, clamped per Fritsch-Carlson.
    double t = ((2.0 * h0 + h1) * s0 - h0 * s1) / (h0 + h1);
    if (t * s0 <= 0.0) return 0.0;
    if (s0 * s1 <= 0.0 && std::abs(t) > 3.0 * std::abs(s0)) return 3.0 * s0;
    return t;
  }

  double hermite(std::size_t k, double x) const {
    const double h = x_[k + 1] - x_[k];
    const double s = (x - x_[k]) / h;
    const double s2 = s * s, s3 = s2 * s;
    const double h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
    const double h10 = s3 - 2.0 * s2 + s;
    const double h01 = -2.0 * s3 + 3.0 * s2;
    const double h11 = s3 - s2;
    return h00 * y_[k] + h * h10 * tan_[k] + h01 * y_[k + 1] +
           h * h11 * tan_[k + 1];
  }

  std::vector<double> x_, y_, tan_;
};

}  // namespace wavemap
