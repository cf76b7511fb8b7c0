#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <memory>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "interp.hpp"
#include "model.hpp"
#include "ode.hpp"

namespace frontlab {

// Front construction by phase-plane shooting.  Work happens in the normalized
// frame eta where the profile solves V'' + gamma*g(V)*V' + f(V) = 0 with
// gamma = c/sqrt(1-c^2 tau); the physical profile is U(xi) = V(xi/s) with
// s = sqrt(1-c^2 tau).  Traces integrate the scalar trajectory equation
// d(omega)/dV = -f(V)/omega - gamma*g(V) between the saddles at V=0 and V=1.

enum class ManifoldSide { UnstableFromZero, StableFromOne };

struct ManifoldTrace {
  double gamma = 0.0;
  ManifoldSide side = ManifoldSide::UnstableFromZero;
  double terminal_W = 0.0;  // omega at V = alpha (0 if the trace hit the axis)
  bool hit_axis = false;    // trajectory fell into the middle-root connection
  std::vector<double> V, omega, eta;  // samples; eta in the saddle-linearization gauge
};

// Saddle eigenvalues of the normalized profile equation.
inline double saddle_rate_zero(const Model& m, double gamma) {
  // positive eigenvalue at (V, V') = (0, 0)
  const double x = gamma * m.g(0.0);
  const double q = -4.0 * m.fp(0.0);  // > 0
  if (x > 0.0) return 0.5 * q / (std::sqrt(x * x + q) + x);
  return 0.5 * (std::sqrt(x * x + q) - x);
}

inline double saddle_rate_one(const Model& m, double gamma) {
  // negative eigenvalue at (V, V') = (1, 0)
  const double x = gamma * m.g(1.0);
  const double q = -4.0 * m.fp(1.0);  // > 0
  if (x < 0.0) return -0.5 * q / (std::sqrt(x * x + q) - x);
  return -0.5 * (std::sqrt(x * x + q) + x);
}

inline ManifoldTrace trace_manifold(const Model& model, double gamma, ManifoldSide side,
                                    double epsilon = 1e-8) {
  if (!(epsilon > 1e-10 && epsilon < 1e-3))
    throw DomainError("trace_manifold: epsilon outside (1e-10, 1e-3)");

  const double alpha = model.alpha();
  ManifoldTrace trace;
  trace.gamma = gamma;
  trace.side = side;

  // eta starts in the saddle-linearization gauge (V ~ e^{mu*eta} resp.
  // 1-V ~ e^{mu*eta}), which keeps the integrator's relative error weights
  // meaningful; any gauge constant is re-based away when traces are glued.
  double v_start, w_start, v_end, eta_start;
  if (side == ManifoldSide::UnstableFromZero) {
    v_start = epsilon;
    w_start = saddle_rate_zero(model, gamma) * epsilon;
    v_end = alpha;
    eta_start = std::log(epsilon) / saddle_rate_zero(model, gamma);
  } else {
    v_start = 1.0 - epsilon;
    w_start = -saddle_rate_one(model, gamma) * epsilon;
    v_end = alpha;
    eta_start = std::log(epsilon) / saddle_rate_one(model, gamma);
  }

  using State = Eigen::Vector2d;  // (omega, eta)
  auto rhs = [&](double v, const State& y) -> State {
    const double w = y[0];
    return State(-model.f(v) / w - gamma * model.g(v), 1.0 / w);
  };
  // Step cap keeps |d(eta)| per step below ~0.05 so the Hermite resampling of
  // the traced path stays accurate in the saddle tails.
  auto cap = [](double, const State& y) { return 0.05 * std::max(y[0], 1e-12); };
  auto event = [](double, const State& y) { return y[0] - 1e-12; };
  auto observer = [&](double v, const State& y, const State&) {
    trace.V.push_back(v);
    trace.omega.push_back(y[0]);
    trace.eta.push_back(y[1]);
  };

  OdeOptions opt;
  opt.rtol = 1e-10;
  opt.atol = 1e-13;
  const auto res = integrate_dopri5<State>(rhs, v_start, State(w_start, eta_start), v_end, opt,
                                           observer, cap, event);
  if (res.event_hit) {
    trace.terminal_W = 0.0;
    trace.hit_axis = true;
  } else {
    trace.terminal_W = res.y[0];
  }
  return trace;
}

inline double speed_from_gamma(double gamma, double tau) {
  if (tau < 0.0) throw DomainError("speed_from_gamma: tau must be >= 0");
  return gamma / std::sqrt(1.0 + tau * gamma * gamma);
}

inline double gamma_from_speed(double c, double tau) {
  const double d = 1.0 - c * c * tau;
  if (!(d > 0.0)) throw DomainError("gamma_from_speed: c^2 tau must be < 1");
  return c / std::sqrt(d);
}

namespace detail {

inline double shooting_mismatch(const Model& model, double gamma, double epsilon) {
  const auto t0 = trace_manifold(model, gamma, ManifoldSide::UnstableFromZero, epsilon);
  const auto t1 = trace_manifold(model, gamma, ManifoldSide::StableFromOne, epsilon);
  return t1.terminal_W - t0.terminal_W;
}

}  // namespace detail

// Unique connecting speed parameter: the shooting mismatch
// h(gamma) = W1(gamma) - W0(gamma) is nondecreasing, so expand a bracket and
// bisect to 1e-10.
inline double find_gamma_star(const Model& model) {
  const auto report = validate_hypotheses(model);
  if (!report.all_pass())
    throw DomainError("find_gamma_star: model fails structural hypotheses");

  const double epsilon = 1e-8;
  double scale = 1.0;
  if (model.reaction().kind == ReactionKind::Cubic)
    scale = std::max(1.0, std::sqrt(2.0 / model.reaction().kappa));
  double b = 2.0 * scale;

  double lo = -b, hi = b;
  double h_lo = detail::shooting_mismatch(model, lo, epsilon);
  double h_hi = detail::shooting_mismatch(model, hi, epsilon);
  int expansions = 0;
  while (h_lo * h_hi > 0.0) {
    if (++expansions > 10)
      throw BracketingError("find_gamma_star: no sign change of the shooting mismatch");
    b *= 2.0;
    lo = -b;
    hi = b;
    h_lo = detail::shooting_mismatch(model, lo, epsilon);
    h_hi = detail::shooting_mismatch(model, hi, epsilon);
  }
  if (h_lo == 0.0) return lo;
  if (h_hi == 0.0) return hi;

  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    const double h_mid = detail::shooting_mismatch(model, mid, epsilon);
    if (h_mid == 0.0) return mid;
    // h is nondecreasing: the root has h_lo < 0 < h_hi.
    if ((h_mid < 0.0) == (h_lo < 0.0))
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

// Evaluates U and U_x anywhere, gluing the traced core to the exact
// linearized saddle tails.
struct ProfileInterpolant {
  double s = 1.0;    // sqrt(1 - c^2 tau): xi = s * eta
  double xi0 = 0.0;  // pin position, U(xi0) = alpha
  CubicHermite V_of_eta, omega_of_eta;
  double eta_lo = 0.0, eta_hi = 0.0;  // traced range
  double V_lo = 0.0, V_hi = 1.0;      // profile values at the traced ends
  double mu0 = 1.0;                   // rate at the V=0 tail (> 0)
  double mu1 = -1.0;                  // rate at the V=1 tail (< 0)

  double value_eta(double eta) const {
    if (eta < eta_lo) return V_lo * std::exp(mu0 * (eta - eta_lo));
    if (eta > eta_hi) return 1.0 - (1.0 - V_hi) * std::exp(mu1 * (eta - eta_hi));
    return V_of_eta.value(eta);
  }

  double slope_eta(double eta) const {
    if (eta < eta_lo) return mu0 * V_lo * std::exp(mu0 * (eta - eta_lo));
    if (eta > eta_hi) return -mu1 * (1.0 - V_hi) * std::exp(mu1 * (eta - eta_hi));
    return omega_of_eta.value(eta);
  }

  double U(double xi) const { return value_eta((xi - xi0) / s); }
  double Ux(double xi) const { return slope_eta((xi - xi0) / s) / s; }
};

struct GridSpec {
  double half_length = 0.0;   // 0 -> decay-informed default 12/min(eta-, eta+)
  std::size_t points = 4097;  // odd keeps xi0 on the grid
  double xi0 = 0.0;           // translation pin: U(xi0) = alpha
};

struct FrontProfile {
  double gamma_star = 0.0;
  double c_star = 0.0;
  double tau = 0.0;
  double alpha = 0.5;
  std::vector<double> xi, U, Ux, Uxx;
  double eta_minus = 0.0;  // decay rate of U toward 0 at -inf (xi frame)
  double eta_plus = 0.0;   // decay rate of 1-U at +inf (xi frame)
  double half_length = 0.0;
  double xi0 = 0.0;
  bool truncated = false;  // tails underflow before the requested half-length
  double achieved_half_length = 0.0;
  std::shared_ptr<const ProfileInterpolant> interp;
};

// Closed-form linearization rates at the rest states, in the physical frame.
inline std::pair<double, double> decay_rates_closed_form(const Model& model, double c) {
  const double tau = model.tau();
  const double d = 1.0 - c * c * tau;
  const double am = std::abs(model.fp(0.0)), ap = std::abs(model.fp(1.0));
  const double bm = model.g(0.0), bp = model.g(1.0);
  const double eta_minus = (-c * bm + std::sqrt(c * c * bm * bm + 4.0 * d * am)) / (2.0 * d);
  const double eta_plus = (c * bp + std::sqrt(c * c * bp * bp + 4.0 * d * ap)) / (2.0 * d);
  return {eta_minus, eta_plus};
}

inline FrontProfile reconstruct_profile(const Model& model, double gamma_star,
                                        const GridSpec& grid = {}) {
  if (grid.points < 9) throw DomainError("reconstruct_profile: need at least 9 points");

  const double tau = model.tau();
  const double c = speed_from_gamma(gamma_star, tau);
  const double s = std::sqrt(1.0 - c * c * tau);
  const double epsilon = 1e-8;

  auto t0 = trace_manifold(model, gamma_star, ManifoldSide::UnstableFromZero, epsilon);
  auto t1 = trace_manifold(model, gamma_star, ManifoldSide::StableFromOne, epsilon);
  if (t0.hit_axis || t1.hit_axis)
    throw NumericalError("reconstruct_profile: no heteroclinic connection at this gamma");

  // Glue the two traces into monotone eta-ordered nodes with V(eta=0) = alpha.
  auto interp = std::make_shared<ProfileInterpolant>();
  interp->s = s;
  interp->xi0 = grid.xi0;
  interp->mu0 = saddle_rate_zero(model, gamma_star);
  interp->mu1 = saddle_rate_one(model, gamma_star);

  std::vector<double> eta, V, W;
  const std::size_t n0 = t0.V.size(), n1 = t1.V.size();
  eta.reserve(n0 + n1);
  V.reserve(n0 + n1);
  W.reserve(n0 + n1);
  const double eta_shift0 = t0.eta.back();  // re-base so the alpha sample sits at eta = 0
  for (std::size_t i = 0; i < n0; ++i) {
    eta.push_back(t0.eta[i] - eta_shift0);
    V.push_back(t0.V[i]);
    W.push_back(t0.omega[i]);
  }
  // Stable-side trace ran from V=1-eps down to alpha: reverse into ascending
  // order and drop its alpha sample (already provided by the other trace).
  const double eta_shift1 = t1.eta.back();
  for (std::size_t k = n1 - 1; k-- > 0;) {
    const double e = t1.eta[k] - eta_shift1;
    if (e <= eta.back() + 1e-12) continue;
    eta.push_back(e);
    V.push_back(t1.V[k]);
    W.push_back(t1.omega[k]);
  }

  std::vector<double> dW(eta.size());
  for (std::size_t i = 0; i < eta.size(); ++i)
    dW[i] = -model.f(V[i]) - gamma_star * model.g(V[i]) * W[i];

  interp->V_of_eta = CubicHermite(eta, V, W);
  interp->omega_of_eta = CubicHermite(eta, W, dW);
  interp->eta_lo = eta.front();
  interp->eta_hi = eta.back();
  interp->V_lo = V.front();
  interp->V_hi = V.back();

  FrontProfile front;
  front.gamma_star = gamma_star;
  front.c_star = c;
  front.tau = tau;
  front.alpha = model.alpha();
  front.xi0 = grid.xi0;
  std::tie(front.eta_minus, front.eta_plus) = decay_rates_closed_form(model, c);

  double L = grid.half_length;
  if (L <= 0.0) L = 12.0 / std::min(front.eta_minus, front.eta_plus);
  front.half_length = L;

  // Floating-point reach of the exponential tails (exp underflow at ~ -708).
  const double eta_reach_lo = interp->eta_lo - 700.0 / interp->mu0;
  const double eta_reach_hi = interp->eta_hi + 700.0 / (-interp->mu1);
  front.achieved_half_length = std::min(-eta_reach_lo * s, eta_reach_hi * s);
  front.truncated = L > front.achieved_half_length;

  const std::size_t n = grid.points;
  const double dxi = 2.0 * L / static_cast<double>(n - 1);
  front.xi.resize(n);
  front.U.resize(n);
  front.Ux.resize(n);
  front.Uxx.resize(n);
  const double d = 1.0 - c * c * tau;
  for (std::size_t j = 0; j < n; ++j) {
    const double offset = static_cast<double>(j) * dxi - L;
    const double e = offset / s;
    front.xi[j] = grid.xi0 + offset;
    const double u = interp->value_eta(e);
    const double ux = interp->slope_eta(e) / s;
    front.U[j] = u;
    front.Ux[j] = ux;
    front.Uxx[j] = -(c * model.g(u) * ux + model.f(u)) / d;
  }
  front.interp = std::move(interp);
  return front;
}

// Physical-frame decay rates (eta_minus at -inf, eta_plus at +inf).
inline std::pair<double, double> decay_rates(const Model& model, const FrontProfile& front) {
  return decay_rates_closed_form(model, front.c_star);
}

// Admissible candidate for the variational speed bracket, sampled on a
// uniform grid in the normalized frame.
struct CandidateFront {
  std::vector<double> x, W;
};

// Evaluates (inf, sup) over the grid interior of -(W'' + f(W)) / (g(W) W');
// the connecting gamma* lies between them for any admissible candidate.
inline std::pair<double, double> minmax_bracket(const Model& model,
                                                const CandidateFront& cand) {
  const std::size_t n = cand.x.size();
  if (n < 9 || cand.W.size() != n)
    throw DomainError("minmax_bracket: need >= 9 matching samples");
  const double dx = cand.x[1] - cand.x[0];
  for (std::size_t i = 1; i + 1 < n; ++i)
    if (std::abs((cand.x[i + 1] - cand.x[i]) - dx) > 1e-9 * std::max(1.0, std::abs(dx)))
      throw DomainError("minmax_bracket: grid must be uniform");

  for (std::size_t i = 0; i < n; ++i)
    if (!(cand.W[i] > 0.0 && cand.W[i] < 1.0))
      throw AdmissibilityError("minmax_bracket: candidate values must lie in (0,1)");
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (!(cand.W[i + 1] > cand.W[i]))
      throw AdmissibilityError("minmax_bracket: candidate must be strictly increasing");

  double lower = std::numeric_limits<double>::infinity();
  double upper = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 2; i + 2 < n; ++i) {
    // fourth-order central stencils
    const double w1 = (cand.W[i - 2] - 8.0 * cand.W[i - 1] + 8.0 * cand.W[i + 1] -
                       cand.W[i + 2]) / (12.0 * dx);
    const double w2 = (-cand.W[i - 2] + 16.0 * cand.W[i - 1] - 30.0 * cand.W[i] +
                       16.0 * cand.W[i + 1] - cand.W[i + 2]) / (12.0 * dx * dx);
    if (!(w1 > 0.0))
      throw AdmissibilityError("minmax_bracket: candidate derivative vanishes on the grid");
    const double ratio = -(w2 + model.f(cand.W[i])) / (model.g(cand.W[i]) * w1);
    lower = std::min(lower, ratio);
    upper = std::max(upper, ratio);
  }
  return {lower, upper};
}

}  // namespace frontlab
