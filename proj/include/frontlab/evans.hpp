#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <memory>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "interp.hpp"
#include "model.hpp"
#include "ode.hpp"
#include "profile.hpp"
#include "spectrum.hpp"

namespace frontlab {

// Variable-coefficient spectral machinery on a computed front: the first-order
// system W_x = A(x, lambda) W, its decaying solutions, the Evans determinant
// D(lambda), argument-principle winding numbers, and the Melnikov integral
// certifying simplicity of the translation eigenvalue.
//
// Coordinates are centered on the front: x = 0 is the point where U = alpha.

class CoefficientFields {
 public:
  CoefficientFields(const Model& model, const FrontProfile& front)
      : model_(model), prof_(front.interp), limits_(asymptotic_data(model, front)),
        half_length_(front.half_length), xi0_(front.xi0) {
    if (!prof_) throw DependencyError("CoefficientFields: front carries no interpolant");
    xs_ = front.xi;
    as_.resize(xs_.size());
    bs_.resize(xs_.size());
    for (std::size_t i = 0; i < xs_.size(); ++i) {
      const double x = xs_[i] - xi0_;
      as_[i] = a(x);
      bs_[i] = b(x);
    }
  }

  // a(x) = c * d/dx[g(U)] + f'(U), b(x) = g(U), evaluated through the profile
  // interpolant so integrator stages off the grid stay accurate.
  double a(double x) const {
    const double u = prof_->U(x + xi0_);
    const double ux = prof_->Ux(x + xi0_);
    return limits_.c * model_.gu(u) * ux + model_.fp(u);
  }
  double b(double x) const { return model_.g(prof_->U(x + xi0_)); }

  const AsymptoticSpectralData& limits() const { return limits_; }
  const Model& model() const { return model_; }
  double half_length() const { return half_length_; }
  double c() const { return limits_.c; }
  double tau() const { return limits_.tau; }

  const std::vector<double>& x_samples() const { return xs_; }
  const std::vector<double>& a_samples() const { return as_; }
  const std::vector<double>& b_samples() const { return bs_; }

 private:
  Model model_;
  std::shared_ptr<const ProfileInterpolant> prof_;
  AsymptoticSpectralData limits_;
  double half_length_ = 0.0;
  double xi0_ = 0.0;
  std::vector<double> xs_, as_, bs_;
};

// Interior coefficient matrix A(x, lambda).
inline Eigen::Matrix2cd coefficient_matrix(const CoefficientFields& fields, double x,
                                           Complex lambda) {
  const double tau = fields.tau(), c = fields.c();
  const double d = 1.0 - c * c * tau;
  const double ax = fields.a(x), bx = fields.b(x);
  Eigen::Matrix2cd m;
  m(0, 0) = 0.0;
  m(0, 1) = 1.0;
  m(1, 0) = (tau * lambda * lambda + lambda * bx - ax) / d;
  m(1, 1) = -c * (bx + 2.0 * tau * lambda) / d;
  return m;
}

// Polynomial-in-lambda decomposition A = A0 + lambda*A1 + lambda^2*A2.
inline std::array<Eigen::Matrix2d, 3> coefficient_matrix_parts(const CoefficientFields& fields,
                                                               double x) {
  const double tau = fields.tau(), c = fields.c();
  const double d = 1.0 - c * c * tau;
  const double ax = fields.a(x), bx = fields.b(x);
  Eigen::Matrix2d a0 = Eigen::Matrix2d::Zero();
  Eigen::Matrix2d a1 = Eigen::Matrix2d::Zero();
  Eigen::Matrix2d a2 = Eigen::Matrix2d::Zero();
  a0(0, 1) = 1.0;
  a0(1, 0) = -ax / d;
  a0(1, 1) = -c * bx / d;
  a1(1, 0) = bx / d;
  a1(1, 1) = -2.0 * c * tau / d;
  a2(1, 0) = tau / d;
  return {a0, a1, a2};
}

inline Eigen::Matrix2cd coefficient_matrix_dlambda(const CoefficientFields& fields, double x,
                                                   Complex lambda) {
  const auto parts = coefficient_matrix_parts(fields, x);
  return parts[1].cast<Complex>() + 2.0 * lambda * parts[2].cast<Complex>();
}

struct DecayingSolution {
  Side side = Side::Minus;
  Complex mu;                        // asymptotic rate removed by rescaling
  Eigen::Vector2cd at_match;         // rescaled value at x = 0
  std::vector<double> x;             // sample locations
  std::vector<Eigen::Vector2cd> W;   // rescaled samples
};

// Integrates the exponentially rescaled system Y' = (A(x,lambda) - mu I) Y
// from the appropriate end toward the matching point x = 0, starting on the
// asymptotic eigenvector (1, mu) of the end-state matrix.
inline DecayingSolution decaying_solution(const CoefficientFields& fields, Side side,
                                          Complex lambda, double L = 0.0) {
  if (L <= 0.0) L = fields.half_length();
  const auto& data = fields.limits();
  auto [mu1, mu2] = spatial_eigenvalues(data, side, lambda);
  // decaying mode: mu2 at -inf, mu1 at +inf
  const Complex mu = (side == Side::Minus) ? mu2 : mu1;
  const double x_start = (side == Side::Minus) ? -L : L;

  DecayingSolution sol;
  sol.side = side;
  sol.mu = mu;

  using State = Eigen::Vector2cd;
  auto rhs = [&](double x, const State& y) -> State {
    const double tau = fields.tau(), c = fields.c();
    const double d = 1.0 - c * c * tau;
    const double ax = fields.a(x), bx = fields.b(x);
    const Complex m10 = (tau * lambda * lambda + lambda * bx - ax) / d;
    const Complex m11 = -c * (bx + 2.0 * tau * lambda) / d;
    return State(y[1] - mu * y[0], m10 * y[0] + (m11 - mu) * y[1]);
  };
  auto observer = [&](double x, const State& y, const State&) {
    sol.x.push_back(x);
    sol.W.push_back(y);
  };

  OdeOptions opt;
  opt.rtol = 1e-12;
  opt.atol = 1e-14;
  const State y0(Complex(1.0, 0.0), mu);
  const auto res = integrate_dopri5<State>(rhs, x_start, y0, 0.0, opt, observer);
  if (!res.y.allFinite())
    throw NumericalError(
        "decaying_solution: rescaled solution overflowed; increase L or shrink the contour");
  sol.at_match = res.y;
  return sol;
}

// Evans determinant D(lambda) = det[W-(0), W+(0)] with the analytically
// normalized decaying solutions.
inline Complex evans(const CoefficientFields& fields, Complex lambda, double L = 0.0) {
  const auto wm = decaying_solution(fields, Side::Minus, lambda, L);
  const auto wp = decaying_solution(fields, Side::Plus, lambda, L);
  return wm.at_match[0] * wp.at_match[1] - wm.at_match[1] * wp.at_match[0];
}

// Contour builders (closed polylines; first vertex is not repeated).
inline std::vector<Complex> circle_contour(Complex center, double radius, std::size_t n = 128) {
  std::vector<Complex> pts;
  pts.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double t = 6.283185307179586476925286766559 * static_cast<double>(k) /
                     static_cast<double>(n);
    pts.emplace_back(center + radius * Complex(std::cos(t), std::sin(t)));
  }
  return pts;
}

inline std::vector<Complex> rectangle_contour(double re_lo, double re_hi, double im_lo,
                                              double im_hi, std::size_t per_edge = 64) {
  std::vector<Complex> pts;
  pts.reserve(4 * per_edge);
  for (std::size_t k = 0; k < per_edge; ++k) {
    const double t = static_cast<double>(k) / static_cast<double>(per_edge);
    pts.emplace_back(re_lo + t * (re_hi - re_lo), im_lo);
  }
  for (std::size_t k = 0; k < per_edge; ++k) {
    const double t = static_cast<double>(k) / static_cast<double>(per_edge);
    pts.emplace_back(re_hi, im_lo + t * (im_hi - im_lo));
  }
  for (std::size_t k = 0; k < per_edge; ++k) {
    const double t = static_cast<double>(k) / static_cast<double>(per_edge);
    pts.emplace_back(re_hi - t * (re_hi - re_lo), im_hi);
  }
  for (std::size_t k = 0; k < per_edge; ++k) {
    const double t = static_cast<double>(k) / static_cast<double>(per_edge);
    pts.emplace_back(re_lo, im_hi - t * (im_hi - im_lo));
  }
  return pts;
}

// Heuristic contour scale: no zeros live beyond O(parameter) magnitudes.
inline double default_contour_scale(const AsymptoticSpectralData& data) {
  double s = std::max({std::abs(data.a_minus), std::abs(data.a_plus),
                       data.b_minus * data.b_minus, data.b_plus * data.b_plus});
  if (data.tau > 0.0) s = std::max(s, 1.0 / data.tau);
  return 1.0 + 10.0 * s;
}

struct WindingResult {
  int winding = 0;
  double min_abs = 0.0;     // over all evaluated samples
  double median_abs = 0.0;  // over the initial samples (sets zero_floor)
  double zero_floor = 0.0;
  double max_arg_step = 0.0;
  std::size_t samples_used = 0;
  std::vector<Complex> lambdas;  // final refined samples in contour order
  std::vector<Complex> values;   // D at those samples
};

// Argument-principle winding of D along a closed contour, refining segment
// midpoints until every argument increment is below pi/2 (max 2^14 samples).
template <class Fn>
WindingResult winding_number_of(Fn&& func, const std::vector<Complex>& contour) {
  if (contour.size() < 8)
    throw DomainError("winding_number: contour needs at least 8 samples");
  std::vector<Complex> ls = contour;
  std::vector<Complex> vs(ls.size());
  for (std::size_t i = 0; i < ls.size(); ++i) vs[i] = func(ls[i]);

  std::vector<double> mags;
  mags.reserve(vs.size());
  for (const auto& v : vs) mags.push_back(std::abs(v));
  std::vector<double> sorted = mags;
  std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
  const double median = sorted[sorted.size() / 2];
  const double zero_floor = 1e-10 * median;

  constexpr double kPi = 3.14159265358979323846;
  constexpr std::size_t kMaxSamples = 1 << 14;

  auto arg_step = [](Complex za, Complex zb) { return std::arg(zb / za); };

  bool refined = true;
  while (refined) {
    refined = false;
    std::vector<Complex> nls, nvs;
    nls.reserve(ls.size() * 2);
    nvs.reserve(ls.size() * 2);
    const std::size_t n = ls.size();
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t j = (i + 1) % n;
      nls.push_back(ls[i]);
      nvs.push_back(vs[i]);
      if (std::abs(arg_step(vs[i], vs[j])) >= 0.5 * kPi &&
          nls.size() + (n - i) < kMaxSamples) {
        const Complex mid = 0.5 * (ls[i] + ls[j]);
        nls.push_back(mid);
        nvs.push_back(func(mid));
        refined = true;
      }
    }
    ls = std::move(nls);
    vs = std::move(nvs);
    if (ls.size() >= kMaxSamples) break;
  }

  WindingResult out;
  out.median_abs = median;
  out.zero_floor = zero_floor;
  out.samples_used = ls.size();
  double total = 0.0, max_step = 0.0, min_abs = std::numeric_limits<double>::infinity();
  const std::size_t n = ls.size();
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + 1) % n;
    const double st = arg_step(vs[i], vs[j]);
    total += st;
    max_step = std::max(max_step, std::abs(st));
    min_abs = std::min(min_abs, std::abs(vs[i]));
  }
  out.max_arg_step = max_step;
  out.min_abs = min_abs;
  if (min_abs <= zero_floor)
    throw NumericalError("winding_number: contour passes through a zero of D");
  if (max_step >= 0.5 * kPi)
    throw NumericalError("winding_number: argument steps unresolved at max refinement");
  const double w = total / (2.0 * kPi);
  const double rounded = std::round(w);
  if (std::abs(w - rounded) > 1e-6)
    throw NumericalError("winding_number: argument sum is not an integer multiple of 2*pi");
  out.winding = static_cast<int>(rounded);
  out.lambdas = std::move(ls);
  out.values = std::move(vs);
  return out;
}

inline WindingResult winding_number_detailed(const CoefficientFields& fields,
                                             const std::vector<Complex>& contour) {
  return winding_number_of([&](Complex l) { return evans(fields, l); }, contour);
}

inline int winding_number(const CoefficientFields& fields, const std::vector<Complex>& contour) {
  return winding_number_detailed(fields, contour).winding;
}

// Melnikov integral Gamma = (1-c^2 tau)^{-2} * int b(x) phi(x)^2 / h(x)^2 dx
// with phi = U_x and weight h = exp(theta), theta_x = -c b(x)/(2(1-c^2 tau)),
// theta(0) = 0.  Positive Gamma certifies algebraic simplicity of lambda = 0.
inline double melnikov_gamma(const CoefficientFields& fields, const FrontProfile& front) {
  const std::size_t n = front.xi.size();
  if (n < 9) throw DomainError("melnikov_gamma: front grid too small");
  const double dx = front.xi[1] - front.xi[0];
  const double c = fields.c(), tau = fields.tau();
  const double d = 1.0 - c * c * tau;

  std::vector<double> theta_x(n);
  for (std::size_t i = 0; i < n; ++i) theta_x[i] = -c * fields.b_samples()[i] / (2.0 * d);
  std::vector<double> theta = cumulative_simpson(theta_x, dx);
  // gauge: theta = 0 at x = 0 (fronts are pinned there by default)
  double theta0 = 0.0;
  {
    const double x_first = front.xi.front() - front.xi0;
    const double pos = -x_first / dx;
    const std::size_t i0 = std::min(static_cast<std::size_t>(std::max(pos, 0.0)), n - 2);
    const double t = pos - static_cast<double>(i0);
    theta0 = (1.0 - t) * theta[i0] + t * theta[i0 + 1];
  }

  std::vector<double> integrand(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double h = std::exp(theta[i] - theta0);
    const double phi = front.Ux[i];
    integrand[i] = fields.b_samples()[i] * phi * phi / (h * h);
  }
  const double gamma = simpson_uniform(integrand, dx) / (d * d);
  if (!(gamma > 0.0))
    throw NumericalError("melnikov_gamma: integral is not positive (profile or quadrature defect)");
  return gamma;
}

// Max-norm residual of the translation eigenfunction Phi = s*(U_x, U_xx) in
// the first-order system at lambda = 0, with grid derivatives of the sampled
// profile (fourth-order central stencils).
inline double translation_eigenvalue_residual(const CoefficientFields& fields,
                                              const FrontProfile& front, double scale = 1.0) {
  const std::size_t n = front.xi.size();
  if (n < 9) throw DomainError("translation_eigenvalue_residual: grid too small");
  const double dx = front.xi[1] - front.xi[0];
  const double c = fields.c(), tau = fields.tau();
  const double d = 1.0 - c * c * tau;
  double worst = 0.0;
  for (std::size_t i = 2; i + 2 < n; ++i) {
    auto d4 = [&](const std::vector<double>& y) {
      return (y[i - 2] - 8.0 * y[i - 1] + 8.0 * y[i + 1] - y[i + 2]) / (12.0 * dx);
    };
    const double phi1 = scale * front.Ux[i];
    const double phi2 = scale * front.Uxx[i];
    const double x = front.xi[i] - front.xi0;
    const double r1 = scale * d4(front.Ux) - phi2;
    const double r2 = scale * d4(front.Uxx) -
                      ((-fields.a(x)) * phi1 + (-c * fields.b(x)) * phi2) / d;
    worst = std::max({worst, std::abs(r1), std::abs(r2)});
  }
  return worst;
}

struct CompanionResiduals {
  double companion = 0.0;    // residual of lambda*(v1,v2) = L^tau (v1,v2)
  double first_order = 0.0;  // residual of the 2x2 system W_x = A(x,lambda) W
};

// Consistency check between the quadratic pencil and its companion form
// (tau > 0 only): v2 = lambda*v - c*v_x, and the companion operator acts as
//   L(v1, v2) = (c v1_x + v2,  tau^{-1} v1_xx + c v2_x + tau^{-1}(a v1 - b v2)).
inline CompanionResiduals companion_equivalence_check(const CoefficientFields& fields,
                                                      Complex lambda,
                                                      const std::vector<Complex>& v_samples,
                                                      const std::vector<double>& x_samples) {
  const double tau = fields.tau();
  if (!(tau > 0.0))
    throw DomainError("companion_equivalence_check: companion operator is defined for tau > 0 only");
  const std::size_t n = v_samples.size();
  if (n < 9 || x_samples.size() != n)
    throw DomainError("companion_equivalence_check: need >= 9 matching samples");
  const double dx = x_samples[1] - x_samples[0];
  const double c = fields.c();
  const double d = 1.0 - c * c * tau;

  auto d1 = [&](const std::vector<Complex>& y, std::size_t i) {
    return (y[i - 2] - 8.0 * y[i - 1] + 8.0 * y[i + 1] - y[i + 2]) / (12.0 * dx);
  };
  auto d2c = [&](const std::vector<Complex>& y, std::size_t i) {
    return (-y[i - 2] + 16.0 * y[i - 1] - 30.0 * y[i] + 16.0 * y[i + 1] - y[i + 2]) /
           (12.0 * dx * dx);
  };

  std::vector<Complex> v2(n);
  std::vector<Complex> vx(n, Complex(0.0, 0.0));
  for (std::size_t i = 2; i + 2 < n; ++i) vx[i] = d1(v_samples, i);
  // one-sided fallback at the edges (only needed to differentiate v2 later)
  vx[0] = vx[2];
  vx[1] = vx[2];
  vx[n - 2] = vx[n - 3];
  vx[n - 1] = vx[n - 3];
  for (std::size_t i = 0; i < n; ++i) v2[i] = lambda * v_samples[i] - c * vx[i];

  CompanionResiduals out;
  for (std::size_t i = 4; i + 4 < n; ++i) {
    const double x = x_samples[i];
    const double ax = fields.a(x), bx = fields.b(x);
    // companion system rows
    const Complex row1 = lambda * v_samples[i] - (c * vx[i] + v2[i]);
    const Complex row2 = lambda * v2[i] -
                         (d2c(v_samples, i) / tau + c * d1(v2, i) +
                          (ax * v_samples[i] - bx * v2[i]) / tau);
    // first-order system rows for W = (v, v_x)
    const Complex w1 = d1(v_samples, i) - vx[i];
    const Complex w2 = d2c(v_samples, i) -
                       ((tau * lambda * lambda + lambda * bx - ax) * v_samples[i] / d -
                        c * (bx + 2.0 * tau * lambda) * vx[i] / d);
    out.companion = std::max({out.companion, std::abs(row1), std::abs(row2)});
    out.first_order = std::max({out.first_order, std::abs(w1), std::abs(w2)});
  }
  return out;
}

struct EvansReport {
  std::vector<Complex> contour;   // refined sample polyline
  std::vector<Complex> D_samples; // Evans values at those samples
  int winding = 0;
  double min_abs_on_contour = 0.0;
  double melnikov_gamma = 0.0;
};

inline EvansReport make_evans_report(const CoefficientFields& fields, const FrontProfile& front,
                                     const std::vector<Complex>& contour) {
  auto res = winding_number_detailed(fields, contour);
  EvansReport rep;
  rep.contour = std::move(res.lambdas);
  rep.D_samples = std::move(res.values);
  rep.winding = res.winding;
  rep.min_abs_on_contour = res.min_abs;
  rep.melnikov_gamma = melnikov_gamma(fields, front);
  return rep;
}

}  // namespace frontlab
