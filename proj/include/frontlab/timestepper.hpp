#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "interp.hpp"
#include "model.hpp"
#include "profile.hpp"

namespace frontlab {

// Finite-difference integration of the nonlinear system in a frame moving at
// speed c (c = 0: lab frame):
//   tau*u_tt - 2*c*tau*u_xt + g(u)*u_t = (1 - c^2 tau)*u_xx + c*g(u)*u_x + f(u)
// Second-order central differences in space, leapfrog in time with the
// damping and mixed-derivative terms averaged across time levels (the update
// stays a tridiagonal solve).  Neumann (mirror) boundaries.  For tau = 0 the
// update reduces to explicit Euler for g(u)*u_t = u_xx + c*g(u)*u_x + f(u).

struct SimState {
  std::vector<double> x;       // uniform grid
  std::vector<double> u;       // current level
  std::vector<double> u_t;     // time derivative estimate at the current level
  std::vector<double> u_prev;  // leapfrog history; empty until the first step
  double time = 0.0;
  double frame_speed = 0.0;

  double dx() const { return x[1] - x[0]; }
};

inline SimState make_sim_state(std::vector<double> x, std::vector<double> u0,
                               std::vector<double> ut0, double frame_speed) {
  if (x.size() < 8 || u0.size() != x.size() || ut0.size() != x.size())
    throw DomainError("make_sim_state: need matching grids with >= 8 points");
  SimState s;
  s.x = std::move(x);
  s.u = std::move(u0);
  s.u_t = std::move(ut0);
  s.frame_speed = frame_speed;
  return s;
}

// Largest admissible step (safety factor included): characteristic bound for
// the damped wave, diffusive bound for the parabolic limit.
inline double cfl_limit(const Model& model, const SimState& state, double safety = 0.8) {
  const double dx = state.dx();
  const double c = state.frame_speed, tau = model.tau();
  if (tau > 0.0) {
    const double d = 1.0 - c * c * tau;
    if (!(d > 0.0)) throw DomainError("cfl_limit: frame speed breaks the subcharacteristic bound");
    return safety * dx * std::sqrt(tau) * std::sqrt(d);
  }
  return safety * dx * dx / 2.0;
}

// Internal default step: the stated bound can slightly exceed the true
// characteristic speed limit dx*sqrt(tau)/(1 + |c|*sqrt(tau)) at moderate
// |c|*sqrt(tau), so the default takes the minimum of both.
inline double default_timestep(const Model& model, const SimState& state, double safety = 0.8) {
  const double dx = state.dx();
  const double c = state.frame_speed, tau = model.tau();
  if (tau > 0.0) {
    const double d = 1.0 - c * c * tau;
    if (!(d > 0.0))
      throw DomainError("default_timestep: frame speed breaks the subcharacteristic bound");
    const double stated = dx * std::sqrt(tau) * std::sqrt(d);
    const double characteristic = dx * std::sqrt(tau) / (1.0 + std::abs(c) * std::sqrt(tau));
    return safety * std::min(stated, characteristic);
  }
  double gmin = model.g(0.0);
  for (int k = 1; k <= 64; ++k) gmin = std::min(gmin, model.g(static_cast<double>(k) / 64.0));
  return safety * dx * dx / 2.0 * std::min(1.0, gmin);
}

namespace detail {

// mirror-ghost first and second differences
inline double dxc(const std::vector<double>& u, std::size_t i, double dx) {
  const std::size_t n = u.size();
  const double um = (i == 0) ? u[1] : u[i - 1];
  const double up = (i + 1 == n) ? u[n - 2] : u[i + 1];
  return (up - um) / (2.0 * dx);
}
inline double dxx(const std::vector<double>& u, std::size_t i, double dx) {
  const std::size_t n = u.size();
  const double um = (i == 0) ? u[1] : u[i - 1];
  const double up = (i + 1 == n) ? u[n - 2] : u[i + 1];
  return (up - 2.0 * u[i] + um) / (dx * dx);
}

inline std::vector<double> pde_rhs(const Model& model, const SimState& s) {
  const std::size_t n = s.u.size();
  const double dx = s.dx();
  const double c = s.frame_speed, tau = model.tau();
  const double d = 1.0 - c * c * tau;
  std::vector<double> r(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double g = model.g(s.u[i]);
    r[i] = d * dxx(s.u, i, dx) + c * g * dxc(s.u, i, dx) + model.f(s.u[i]);
  }
  return r;
}

inline void bootstrap_history(const Model& model, SimState& s, double dt) {
  // u_prev from a Taylor step backward, with u_tt supplied by the equation
  const std::size_t n = s.u.size();
  const double dx = s.dx();
  const double c = s.frame_speed, tau = model.tau();
  const auto r = pde_rhs(model, s);
  s.u_prev.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double g = model.g(s.u[i]);
    const double utt =
        (r[i] - g * s.u_t[i] + 2.0 * c * tau * dxc(s.u_t, i, dx)) / tau;
    s.u_prev[i] = s.u[i] - dt * s.u_t[i] + 0.5 * dt * dt * utt;
  }
}

}  // namespace detail

// One time step in place.  Throws on a CFL violation.
inline void step_inplace(SimState& state, const Model& model, double dt) {
  if (!(dt > 0.0)) throw DomainError("step: dt must be positive");
  if (dt > cfl_limit(model, state) * (1.0 + 1e-12))
    throw DomainError("step: CFL violation, step rejected");
  const std::size_t n = state.u.size();
  const double dx = state.dx();
  const double c = state.frame_speed, tau = model.tau();

  if (tau == 0.0) {
    const auto r = detail::pde_rhs(model, state);
    for (std::size_t i = 0; i < n; ++i) {
      const double g = model.g(state.u[i]);
      state.u_t[i] = r[i] / g;
    }
    for (std::size_t i = 0; i < n; ++i) state.u[i] += dt * state.u_t[i];
    state.time += dt;
    return;
  }

  if (state.u_prev.size() != n) detail::bootstrap_history(model, state, dt);

  const auto r = detail::pde_rhs(model, state);
  const double A = tau / (dt * dt);
  const double C = c * tau / dt;  // coefficient of D_x(u_next - u_prev)
  const double off = C / (2.0 * dx);

  // (A + B_i) u+_i - off*(u+_{i+1} - u+_{i-1}) = r_i + 2A u_i - A u-_i
  //                                              - off*(u-_{i+1} - u-_{i-1}) + B_i u-_i
  // with mirror ghosts collapsing the off-diagonal at the ends.
  std::vector<double> sub(n - 1), diag(n), sup(n - 1), rhs(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double B = model.g(state.u[i]) / (2.0 * dt);
    diag[i] = A + B;
    const double dprev = detail::dxc(state.u_prev, i, dx);
    rhs[i] = r[i] + 2.0 * A * state.u[i] - A * state.u_prev[i] - C * dprev +
             B * state.u_prev[i];
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    sup[i] = -off;
    sub[i] = off;
  }
  // mirror ghosts: at i=0 the u+_{-1} term folds onto u+_1 and cancels the
  // coupling; same at i=n-1
  sup[0] = 0.0;
  sub[n - 2] = 0.0;

  auto unew = solve_tridiagonal<double>(sub, diag, sup, rhs);
  for (std::size_t i = 0; i < n; ++i) state.u_t[i] = (unew[i] - state.u[i]) / dt;
  state.u_prev = std::move(state.u);
  state.u = std::move(unew);
  state.time += dt;
}

inline SimState step(const SimState& state, const Model& model, double dt) {
  SimState next = state;
  step_inplace(next, model, dt);
  return next;
}

struct Trajectory {
  std::vector<double> x;
  std::vector<double> t;
  std::vector<std::vector<double>> u;
  double frame_speed = 0.0;
};

// Advances to time T, recording about n_snapshots equally spaced snapshots
// (always including the initial and final states).
inline Trajectory run_simulation(SimState state, const Model& model, double T,
                                 std::size_t n_snapshots = 64, double dt = 0.0) {
  if (dt <= 0.0) dt = default_timestep(model, state);
  const std::size_t total = static_cast<std::size_t>(std::ceil(T / dt));
  if (total == 0) throw DomainError("run_simulation: horizon shorter than one step");
  dt = T / static_cast<double>(total);
  if (dt > cfl_limit(model, state))
    throw DomainError("run_simulation: requested dt violates the CFL bound");
  const std::size_t stride = std::max<std::size_t>(1, total / std::max<std::size_t>(1, n_snapshots));

  Trajectory traj;
  traj.x = state.x;
  traj.frame_speed = state.frame_speed;
  traj.t.push_back(state.time);
  traj.u.push_back(state.u);
  for (std::size_t k = 1; k <= total; ++k) {
    step_inplace(state, model, dt);
    if (k % stride == 0 || k == total) {
      traj.t.push_back(state.time);
      traj.u.push_back(state.u);
    }
  }
  return traj;
}

// Position where u crosses the given level, chosen as the crossing nearest to
// the reference abscissa (linear interpolation between grid nodes).
inline double level_position(const std::vector<double>& x, const std::vector<double>& u,
                             double level, double reference) {
  double best = 0.0;
  double best_dist = -1.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const double f0 = u[i] - level, f1 = u[i + 1] - level;
    if (f0 == 0.0 || f0 * f1 < 0.0) {
      const double t = f0 / (f0 - f1);
      const double pos = x[i] + t * (x[i + 1] - x[i]);
      const double dist = std::abs(pos - reference);
      if (best_dist < 0.0 || dist < best_dist) {
        best_dist = dist;
        best = pos;
      }
    }
  }
  if (best_dist < 0.0)
    throw DomainError("level_position: level set left the domain (domain too small)");
  return best;
}

// Least-squares slope of the level-set position over the trailing part of a
// lab-frame run.
inline double measure_front_speed(const Trajectory& traj, const Model& model,
                                  double discard_fraction = 0.25) {
  if (traj.t.size() < 8) throw DomainError("measure_front_speed: need >= 8 snapshots");
  const double level = model.alpha();
  const double margin = 0.05 * (traj.x.back() - traj.x.front());
  std::vector<double> ts, ps;
  double ref = 0.5 * (traj.x.front() + traj.x.back());
  for (std::size_t k = 0; k < traj.t.size(); ++k) {
    const double pos = level_position(traj.x, traj.u[k], level, ref);
    if (pos < traj.x.front() + margin || pos > traj.x.back() - margin)
      throw DomainError("measure_front_speed: level set left the domain (domain too small)");
    ref = pos;
    ts.push_back(traj.t[k]);
    ps.push_back(pos);
  }
  const std::size_t skip = static_cast<std::size_t>(discard_fraction * static_cast<double>(ts.size()));
  std::vector<double> tt(ts.begin() + skip, ts.end()), pp(ps.begin() + skip, ps.end());
  return fit_line(tt, pp).slope + traj.frame_speed;
}

// Best translate of the reference front: minimizes ||u - U(. - s)||_2 by a
// guarded Newton iteration on the normal equation.
inline double fit_translate(const FrontProfile& front, const std::vector<double>& x,
                            const std::vector<double>& u, double s0 = 0.0) {
  const auto& interp = *front.interp;
  double s = s0;
  for (int it = 0; it < 60; ++it) {
    double g = 0.0, h = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double xs = x[i] - s;
      const double d = u[i] - interp.U(xs);
      const double ux = interp.Ux(xs);
      g += d * ux;   // +(1/2) d/ds ||.||^2  (dR/ds = +Ux at fixed u)
      h += ux * ux;  // Gauss-Newton curvature
    }
    const double ds = -g / h;
    s += std::clamp(ds, -0.5, 0.5);
    if (std::abs(ds) < 1e-12) break;
  }
  return s;
}

struct DecayMeasurement {
  double fitted_rate = 0.0;       // exponential rate of the translate-subtracted deviation
  double chi_reference = 0.0;     // spectral-gap proxy used for comparison
  double ratio = 0.0;             // fitted_rate / chi_reference
  bool instability = false;
  std::vector<double> t, deviation, shift;
};

// Co-moving-frame perturbation experiment: integrate front + perturbation
// alongside an unperturbed control run, subtract the best translate of U (in
// difference form against the control, so the O(dx^2) discrete-steady-state
// offset cancels instead of flooring the signal), and fit an exponential to
// the remaining deviation norm.
inline DecayMeasurement measure_decay_rate(const Model& model, const FrontProfile& front,
                                           const std::vector<double>& perturbation,
                                           double horizon, double chi_reference,
                                           std::size_t n_snapshots = 80, double dt = 0.0) {
  if (perturbation.size() != front.xi.size())
    throw DomainError("measure_decay_rate: perturbation must live on the front grid");
  std::vector<double> u0(front.U);
  for (std::size_t i = 0; i < u0.size(); ++i) u0[i] += perturbation[i];
  SimState pert = make_sim_state(front.xi, u0, std::vector<double>(u0.size(), 0.0),
                                 front.c_star);
  SimState ctrl = make_sim_state(front.xi, front.U, std::vector<double>(front.U.size(), 0.0),
                                 front.c_star);
  if (dt <= 0.0) dt = default_timestep(model, ctrl);
  Trajectory traj = run_simulation(std::move(pert), model, horizon, n_snapshots, dt);
  Trajectory base = run_simulation(std::move(ctrl), model, horizon, n_snapshots, dt);

  DecayMeasurement out;
  out.chi_reference = chi_reference;
  const double dx = front.xi[1] - front.xi[0];
  const std::size_t npts = front.xi.size();
  std::vector<double> uref(npts);
  for (std::size_t i = 0; i < npts; ++i) uref[i] = front.interp->U(front.xi[i]);

  double s = 0.0;
  std::vector<double> diff(npts);
  for (std::size_t k = 0; k < traj.t.size(); ++k) {
    for (std::size_t i = 0; i < npts; ++i) diff[i] = traj.u[k][i] - base.u[k][i];
    // Gauss-Newton on min_s || diff - (U(.-s) - U) ||
    for (int it = 0; it < 60; ++it) {
      double grad = 0.0, curv = 0.0;
      for (std::size_t i = 0; i < npts; ++i) {
        const double r = diff[i] - (front.interp->U(front.xi[i] - s) - uref[i]);
        const double ux = front.interp->Ux(front.xi[i] - s);
        grad += r * ux;
        curv += ux * ux;
      }
      const double ds = -grad / curv;
      s += std::clamp(ds, -0.5, 0.5);
      if (std::abs(ds) < 1e-13) break;
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < npts; ++i) {
      const double r = diff[i] - (front.interp->U(front.xi[i] - s) - uref[i]);
      acc += r * r;
    }
    out.t.push_back(traj.t[k]);
    out.deviation.push_back(std::sqrt(dx * acc));
    out.shift.push_back(s);
  }

  const double dev0 = out.deviation.front();
  double dev_max = 0.0, dev_min = std::numeric_limits<double>::infinity();
  for (double d : out.deviation) {
    dev_max = std::max(dev_max, d);
    dev_min = std::min(dev_min, d);
  }
  if (dev_max <= 1e-12) return out;  // no perturbation signal: rate 0, noise-level deviations
  if (dev_max > 10.0 * std::max(dev0, 1e-300)) {
    out.instability = true;
    throw NumericalError("measure_decay_rate: deviation grew beyond 10x initial (instability)");
  }

  // fit window: from the first post-transient sample down to the larger of
  // five e-folds and twice the terminal plateau (discretization floor)
  const double floor_level = std::max(2.0 * dev_min, dev_max * std::exp(-5.0));
  std::vector<double> ft, fl;
  bool started = false;
  for (std::size_t k = 0; k < out.t.size(); ++k) {
    const double d = out.deviation[k];
    if (!started && d >= 0.5 * dev_max) started = true;
    if (!started) continue;
    if (d <= floor_level && ft.size() >= 5) break;
    if (d > 0.0) {
      ft.push_back(out.t[k]);
      fl.push_back(std::log(d));
    }
  }
  if (ft.size() < 3)
    throw NumericalError("measure_decay_rate: too few usable samples for the rate fit");
  out.fitted_rate = -fit_line(ft, fl).slope;
  out.ratio = (chi_reference > 0.0) ? out.fitted_rate / chi_reference : 0.0;
  return out;
}

// Smooth compactly supported bump, convenient default perturbation.
inline std::vector<double> bump_perturbation(const std::vector<double>& x, double amplitude = 1e-3,
                                             double width = 3.0, double center = 0.0) {
  std::vector<double> p(x.size(), 0.0);
  constexpr double kPi = 3.14159265358979323846;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double z = (x[i] - center) / width;
    if (std::abs(z) < 1.0) {
      const double c = std::cos(0.5 * kPi * z);
      p[i] = amplitude * c * c;
    }
  }
  return p;
}

}  // namespace frontlab
