#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <type_traits>

#include "errors.hpp"

namespace frontlab {

// Adaptive Dormand-Prince 5(4) integrator with FSAL, a PI step-size
// controller, an optional observer at accepted nodes, an optional
// state-dependent step cap, and an optional terminal event.

struct OdeOptions {
  double rtol = 1e-10;
  double atol = 1e-13;
  double max_step = std::numeric_limits<double>::infinity();
  double first_step = 0.0;  // 0 -> automatic
  std::size_t max_steps = 10'000'000;
};

template <class State>
struct OdeResult {
  double t = 0.0;
  State y{};
  bool event_hit = false;
  std::size_t steps = 0;
};

namespace detail {

inline double ode_wnorm(double v, double y0, double y1, double atol, double rtol) {
  const double sc = atol + rtol * std::max(std::abs(y0), std::abs(y1));
  return std::abs(v) / sc;
}

template <class Derived>
double ode_wnorm(const Eigen::MatrixBase<Derived>& v, const Eigen::MatrixBase<Derived>& y0,
                 const Eigen::MatrixBase<Derived>& y1, double atol, double rtol) {
  using std::abs;
  double acc = 0.0;
  const auto n = v.size();
  for (Eigen::Index i = 0; i < n; ++i) {
    const double sc = atol + rtol * std::max(abs(y0[i]), abs(y1[i]));
    const double e = abs(v[i]) / sc;
    acc += e * e;
  }
  return std::sqrt(acc / static_cast<double>(n));
}

}  // namespace detail

struct OdeNoObserver {
  template <class S>
  void operator()(double, const S&, const S&) const {}
};

struct OdeNoCap {
  template <class S>
  double operator()(double, const S&) const { return std::numeric_limits<double>::infinity(); }
};

struct OdeNoEvent {};

template <class State, class System, class Observer = OdeNoObserver,
          class StepCap = OdeNoCap, class Event = OdeNoEvent>
OdeResult<State> integrate_dopri5(System&& f, double t0, State y0, double t1,
                                  const OdeOptions& opt = {},
                                  Observer&& observe = Observer{},
                                  StepCap&& cap = StepCap{}, Event&& event = Event{}) {
  constexpr bool kHasEvent = !std::is_same_v<std::decay_t<Event>, OdeNoEvent>;

  // Butcher tableau (Dormand-Prince 5(4)).
  constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                   a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                   a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                   b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                   e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  OdeResult<State> out;
  out.t = t0;
  out.y = y0;
  if (t1 == t0) return out;
  const double dir = (t1 > t0) ? 1.0 : -1.0;

  double t = t0;
  State y = y0;
  State k1 = f(t, y);
  observe(t, y, k1);

  if constexpr (kHasEvent) {
    if (event(t, y) <= 0.0) {
      out.event_hit = true;
      return out;
    }
  }

  // Initial step selection (standard two-derivative heuristic).
  double h;
  if (opt.first_step > 0.0) {
    h = opt.first_step;
  } else {
    const double d0 = detail::ode_wnorm(y, y, y, opt.atol, opt.rtol);
    const double d1 = detail::ode_wnorm(k1, y, y, opt.atol, opt.rtol);
    double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    h0 = std::min(h0, std::abs(t1 - t0));
    State y_eul = y + (dir * h0) * k1;
    State f_eul = f(t + dir * h0, y_eul);
    State df = f_eul - k1;
    const double d2 = detail::ode_wnorm(df, y, y, opt.atol, opt.rtol) / h0;
    double h1;
    if (std::max(d1, d2) <= 1e-15)
      h1 = std::max(1e-6, h0 * 1e-3);
    else
      h1 = std::pow(0.01 / std::max(d1, d2), 0.2);
    h = std::min(100.0 * h0, h1);
  }
  h = std::min(h, opt.max_step);

  constexpr double beta = 0.04, expo = 0.2 - 0.75 * beta, safe = 0.9;
  constexpr double fac_min = 0.2, fac_max = 10.0;
  double facold = 1e-4;

  while (dir * (t1 - t) > 0.0) {
    if (++out.steps > opt.max_steps)
      throw NumericalError("integrate_dopri5: step budget exhausted");
    h = std::min(h, opt.max_step);
    h = std::min(h, cap(t, y));
    if (!(h > std::abs(t) * 1e-14 + 1e-300))
      throw NumericalError("integrate_dopri5: step size underflow");
    const bool final_step = std::abs(t1 - t) <= h;
    const double hs = final_step ? (t1 - t) : dir * h;

    State k2 = f(t + c2 * hs, y + hs * (a21 * k1));
    State k3 = f(t + c3 * hs, y + hs * (a31 * k1 + a32 * k2));
    State k4 = f(t + c4 * hs, y + hs * (a41 * k1 + a42 * k2 + a43 * k3));
    State k5 = f(t + c5 * hs, y + hs * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    State k6 = f(t + hs, y + hs * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    State ynew = y + hs * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    State k7 = f(t + hs, ynew);
    State yerr = hs * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    const double err = detail::ode_wnorm(yerr, y, ynew, opt.atol, opt.rtol);
    if (!std::isfinite(err)) {
      h *= 0.1;
      continue;
    }

    if (err <= 1.0) {
      const double t_new = t + hs;
      if constexpr (kHasEvent) {
        const double ev_new = event(t_new, ynew);
        if (ev_new <= 0.0) {
          // Locate the crossing on the cubic Hermite interpolant of the step.
          auto interp = [&](double s, State& ys) {
            const double s2 = s * s, s3 = s2 * s;
            ys = (2 * s3 - 3 * s2 + 1) * y + ((s3 - 2 * s2 + s) * hs) * k1 +
                 (-2 * s3 + 3 * s2) * ynew + ((s3 - s2) * hs) * k7;
          };
          double lo = 0.0, hi = 1.0;
          State ys = ynew;
          for (int it = 0; it < 80 && (hi - lo) > 1e-15; ++it) {
            const double mid = 0.5 * (lo + hi);
            interp(mid, ys);
            if (event(t + mid * hs, ys) <= 0.0)
              hi = mid;
            else
              lo = mid;
          }
          interp(hi, ys);
          const double t_ev = t + hi * hs;
          State k_ev = f(t_ev, ys);
          observe(t_ev, ys, k_ev);
          out.t = t_ev;
          out.y = ys;
          out.event_hit = true;
          return out;
        }
      }
      t = final_step ? t1 : t_new;
      y = ynew;
      k1 = k7;  // FSAL
      observe(t, y, k1);

      const double fac11 = std::pow(std::max(err, 1e-32), expo);
      double fac = fac11 / std::pow(facold, beta);
      fac = std::max(1.0 / fac_max, std::min(1.0 / fac_min, fac / safe));
      h = h / fac;
      facold = std::max(err, 1e-4);
    } else {
      const double fac11 = std::pow(err, expo);
      h = h / std::min(1.0 / fac_min, fac11 / safe);
    }
  }

  out.t = t;
  out.y = y;
  return out;
}

}  // namespace frontlab
