#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "errors.hpp"

namespace frontlab {

// Piecewise-cubic interpolant from nodes, values, and exact slopes.
// Nodes must be strictly increasing.  Evaluation outside the node range
// extrapolates with the boundary cubic; callers that need controlled tails
// should handle them explicitly.
class CubicHermite {
 public:
  CubicHermite() = default;
  CubicHermite(std::vector<double> x, std::vector<double> y, std::vector<double> dydx)
      : x_(std::move(x)), y_(std::move(y)), d_(std::move(dydx)) {
    if (x_.size() < 2 || x_.size() != y_.size() || x_.size() != d_.size())
      throw DomainError("CubicHermite: need >=2 nodes with matching values/slopes");
    for (std::size_t i = 1; i < x_.size(); ++i)
      if (!(x_[i] > x_[i - 1]))
        throw DomainError("CubicHermite: nodes must be strictly increasing");
  }

  double front() const { return x_.front(); }
  double back() const { return x_.back(); }
  std::size_t size() const { return x_.size(); }

  double value(double x) const {
    const std::size_t i = segment(x);
    const double h = x_[i + 1] - x_[i];
    const double s = (x - x_[i]) / h;
    const double s2 = s * s, s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * y_[i] + (s3 - 2 * s2 + s) * h * d_[i] +
           (-2 * s3 + 3 * s2) * y_[i + 1] + (s3 - s2) * h * d_[i + 1];
  }

  double derivative(double x) const {
    const std::size_t i = segment(x);
    const double h = x_[i + 1] - x_[i];
    const double s = (x - x_[i]) / h;
    const double s2 = s * s;
    return ((6 * s2 - 6 * s) * y_[i] / h + (3 * s2 - 4 * s + 1) * d_[i] +
            (-6 * s2 + 6 * s) * y_[i + 1] / h + (3 * s2 - 2 * s) * d_[i + 1]);
  }

  double second_derivative(double x) const {
    const std::size_t i = segment(x);
    const double h = x_[i + 1] - x_[i];
    const double s = (x - x_[i]) / h;
    return ((12 * s - 6) * (y_[i] - y_[i + 1]) / (h * h) + (6 * s - 4) * d_[i] / h +
            (6 * s - 2) * d_[i + 1] / h);
  }

 private:
  std::size_t segment(double x) const {
    // Index of the interval [x_i, x_{i+1}] containing x, clamped to the range.
    auto it = std::upper_bound(x_.begin(), x_.end(), x);
    std::size_t i = (it == x_.begin()) ? 0 : static_cast<std::size_t>(it - x_.begin()) - 1;
    return std::min(i, x_.size() - 2);
  }

  std::vector<double> x_, y_, d_;
};

// Composite Simpson rule on uniformly spaced samples.  Handles an odd number
// of intervals by finishing with a Simpson 3/8 panel.
inline double simpson_uniform(const std::vector<double>& f, double dx) {
  const std::size_t n = f.size();
  if (n < 2) return 0.0;
  if (n == 2) return 0.5 * dx * (f[0] + f[1]);
  const std::size_t m = n - 1;  // interval count
  double total = 0.0;
  std::size_t last = n - 1;
  if (m % 2 != 0) {
    // 3/8 rule on the final three intervals (m is odd and >= 3 here).
    total += 3.0 * dx / 8.0 * (f[n - 4] + 3 * f[n - 3] + 3 * f[n - 2] + f[n - 1]);
    last = n - 4;
  }
  if (last > 0) {
    double s_odd = 0.0, s_even = 0.0;
    for (std::size_t i = 1; i < last; i += 2) s_odd += f[i];
    for (std::size_t i = 2; i < last; i += 2) s_even += f[i];
    total += dx / 3.0 * (f[0] + 4 * s_odd + 2 * s_even + f[last]);
  }
  return total;
}

// Cumulative integral of uniformly spaced samples, fourth-order accurate:
// each increment uses the quadratic through three neighboring samples.
inline std::vector<double> cumulative_simpson(const std::vector<double>& f, double dx) {
  const std::size_t n = f.size();
  std::vector<double> s(n, 0.0);
  if (n < 2) return s;
  if (n == 2) {
    s[1] = 0.5 * dx * (f[0] + f[1]);
    return s;
  }
  for (std::size_t i = 1; i < n; ++i) {
    double inc;
    if (i == 1) {
      // forward parabola through f0,f1,f2 integrated over [x0,x1]
      inc = dx / 12.0 * (5 * f[0] + 8 * f[1] - f[2]);
    } else {
      // backward parabola through f_{i-2},f_{i-1},f_i integrated over [x_{i-1},x_i]
      inc = dx / 12.0 * (-f[i - 2] + 8 * f[i - 1] + 5 * f[i]);
    }
    s[i] = s[i - 1] + inc;
  }
  return s;
}

namespace detail {
template <class F>
double adaptive_simpson_rec(F&& f, double a, double b, double fa, double fm, double fb,
                            double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}
}  // namespace detail

// Adaptive Simpson quadrature of f over [a, b] to absolute tolerance tol.
template <class F>
double adaptive_simpson(F&& f, double a, double b, double tol = 1e-12) {
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4 * fm + fb);
  return detail::adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, 48);
}

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};

// Ordinary least-squares line through (x_i, y_i).
inline LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw DomainError("fit_line: need >=2 matching samples");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) { sx += x[i]; sy += y[i]; }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw DomainError("fit_line: degenerate abscissae");
  LineFit out;
  out.slope = sxy / sxx;
  out.intercept = my - out.slope * mx;
  return out;
}

// Thomas algorithm for a tridiagonal system.  sub has size n-1 (row i couples
// to i-1), diag size n, sup size n-1 (row i couples to i+1).  Scalar may be
// double or std::complex<double>.  Throws NumericalError on a vanishing pivot.
template <class Scalar>
std::vector<Scalar> solve_tridiagonal(const std::vector<Scalar>& sub,
                                      const std::vector<Scalar>& diag,
                                      const std::vector<Scalar>& sup,
                                      const std::vector<Scalar>& rhs,
                                      double pivot_floor = 1e-300) {
  const std::size_t n = diag.size();
  if (sub.size() != n - 1 || sup.size() != n - 1 || rhs.size() != n || n == 0)
    throw DomainError("solve_tridiagonal: inconsistent band sizes");
  std::vector<Scalar> c(n - 1), d(n);
  Scalar pivot = diag[0];
  if (std::abs(pivot) <= pivot_floor)
    throw NumericalError("solve_tridiagonal: singular pivot at row 0");
  if (n > 1) c[0] = sup[0] / pivot;
  d[0] = rhs[0] / pivot;
  for (std::size_t i = 1; i < n; ++i) {
    pivot = diag[i] - sub[i - 1] * c[i - 1];
    if (std::abs(pivot) <= pivot_floor)
      throw NumericalError("solve_tridiagonal: singular pivot at row " + std::to_string(i));
    if (i < n - 1) c[i] = sup[i] / pivot;
    d[i] = (rhs[i] - sub[i - 1] * d[i - 1]) / pivot;
  }
  for (std::size_t i = n - 1; i-- > 0;) d[i] -= c[i] * d[i + 1];
  return d;
}

// Deterministic Gaussian generator: mt19937_64 bits mapped to (0,1] / [0,1)
// uniforms, Box-Muller transform, one cached partner draw.
class GaussianRng {
 public:
  explicit GaussianRng(std::uint64_t seed) : eng_(seed) {}

  double uniform01() {  // in [0,1)
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  double operator()() {
    if (has_cached_) {
      has_cached_ = false;
      return cached_;
    }
    const double u1 = (static_cast<double>(eng_() >> 11) + 1.0) * 0x1.0p-53;  // (0,1]
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    cached_ = r * std::sin(a);
    has_cached_ = true;
    return r * std::cos(a);
  }

 private:
  std::mt19937_64 eng_;
  bool has_cached_ = false;
  double cached_ = 0.0;
};

}  // namespace frontlab
