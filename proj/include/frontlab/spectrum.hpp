#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "model.hpp"
#include "profile.hpp"

namespace frontlab {

// Constant-coefficient spectral data of the linearization at the rest states:
// asymptotic matrices, spatial eigenvalues, dispersion curves bounding the
// essential spectrum, and the spectral gap chi0(tau).

using Complex = std::complex<double>;

enum class Side { Minus, Plus };
enum class GapRegime { TauZero, SmallTau, LargeTau };

struct AsymptoticSpectralData {
  double a_minus = 0.0, a_plus = 0.0;  // f'(U_-), f'(U_+), both < 0
  double b_minus = 1.0, b_plus = 1.0;  // g(U_-), g(U_+), both > 0
  double c = 0.0;                      // front speed
  double tau = 0.0;

  double a(Side s) const { return s == Side::Minus ? a_minus : a_plus; }
  double b(Side s) const { return s == Side::Minus ? b_minus : b_plus; }
};

inline AsymptoticSpectralData asymptotic_data(const Model& model, double c) {
  AsymptoticSpectralData d;
  d.a_minus = model.fp(0.0);
  d.a_plus = model.fp(1.0);
  d.b_minus = model.g(0.0);
  d.b_plus = model.g(1.0);
  d.c = c;
  d.tau = model.tau();
  if (!(d.a_minus < 0.0 && d.a_plus < 0.0))
    throw DomainError("asymptotic_data: endpoint reaction slopes must be negative");
  if (!(d.b_minus > 0.0 && d.b_plus > 0.0))
    throw DomainError("asymptotic_data: endpoint damping must be positive");
  if (!(d.c * d.c * d.tau < 1.0))
    throw DomainError("asymptotic_data: subcharacteristic condition violated");
  return d;
}

inline AsymptoticSpectralData asymptotic_data(const Model& model, const FrontProfile& front) {
  return asymptotic_data(model, front.c_star);
}

struct SpectralGap {
  double chi0_minus = 0.0, chi0_plus = 0.0, chi0 = 0.0;
  GapRegime regime_minus = GapRegime::TauZero;
  GapRegime regime_plus = GapRegime::TauZero;
};

inline const char* gap_regime_name(GapRegime r) {
  switch (r) {
    case GapRegime::TauZero: return "tau-zero";
    case GapRegime::SmallTau: return "case-small-tau";
    case GapRegime::LargeTau: return "case-large-tau";
  }
  return "?";
}

// Piecewise gap formula per endpoint; chi0 is the minimum of the two.
inline SpectralGap spectral_gap(const AsymptoticSpectralData& data) {
  SpectralGap gap;
  auto endpoint = [&](Side s, double& chi, GapRegime& regime) {
    const double a = std::abs(data.a(s)), b = data.b(s), tau = data.tau;
    if (tau == 0.0) {
      regime = GapRegime::TauZero;
      chi = 0.5 * a / b;
    } else if (b * b >= 4.0 * tau * a) {
      regime = GapRegime::SmallTau;
      const double r = 0.5 * b / tau;
      const double disc = std::sqrt(r * r - a / tau);
      chi = 0.5 * (a / tau) / (r + disc);  // = (r - disc)/2, cancellation-free
    } else {
      regime = GapRegime::LargeTau;
      chi = 0.25 * b / tau;
    }
  };
  endpoint(Side::Minus, gap.chi0_minus, gap.regime_minus);
  endpoint(Side::Plus, gap.chi0_plus, gap.regime_plus);
  gap.chi0 = std::min(gap.chi0_minus, gap.chi0_plus);
  return gap;
}

// Limit of the first-order coefficient matrix at the chosen rest state.
inline Eigen::Matrix2cd asymptotic_matrix(const AsymptoticSpectralData& data, Side side,
                                          Complex lambda) {
  const double a = std::abs(data.a(side)), b = data.b(side);
  const double d = 1.0 - data.c * data.c * data.tau;
  Eigen::Matrix2cd m;
  m(0, 0) = 0.0;
  m(0, 1) = 1.0;
  m(1, 0) = (data.tau * lambda * lambda + lambda * b + a) / d;
  m(1, 1) = -data.c * (b + 2.0 * data.tau * lambda) / d;
  return m;
}

// Roots of the spatial symbol at one endpoint; mu1 decays at +inf (Re < 0),
// mu2 decays at -inf (Re > 0).  Defined on Omega = {Re lambda > -chi0}.
inline std::pair<Complex, Complex> spatial_eigenvalues(const AsymptoticSpectralData& data,
                                                       Side side, Complex lambda) {
  const SpectralGap gap = spectral_gap(data);
  if (!(lambda.real() > -gap.chi0))
    throw RegionError("spatial_eigenvalues: lambda outside the consistent-splitting region");
  const double a = std::abs(data.a(side)), b = data.b(side);
  const double tau = data.tau, c = data.c;
  const double d = 1.0 - c * c * tau;
  const Complex theta = c * c * b * b + 4.0 * tau * lambda * lambda + 4.0 * b * lambda +
                        4.0 * d * a;
  const Complex root = std::sqrt(theta);  // principal branch: Re >= 0
  const Complex drift = -c * (b + 2.0 * tau * lambda);
  const Complex mu1 = (drift - root) / (2.0 * d);
  const Complex mu2 = (drift + root) / (2.0 * d);
  if (!(mu1.real() < 0.0 && mu2.real() > 0.0))
    throw NumericalError("spatial_eigenvalues: splitting sign pattern violated");
  return {mu1, mu2};
}

// Path variant: principal-branch evaluation with continuity tracking along the
// sample sequence (swaps roots if a branch flip would produce a jump), plus a
// final sign-pattern guard.
inline std::pair<std::vector<Complex>, std::vector<Complex>> spatial_eigenvalues_path(
    const AsymptoticSpectralData& data, Side side, const std::vector<Complex>& lambdas) {
  std::vector<Complex> mu1s, mu2s;
  mu1s.reserve(lambdas.size());
  mu2s.reserve(lambdas.size());
  for (std::size_t k = 0; k < lambdas.size(); ++k) {
    auto [m1, m2] = spatial_eigenvalues(data, side, lambdas[k]);
    if (k > 0) {
      const double keep = std::abs(m1 - mu1s.back()) + std::abs(m2 - mu2s.back());
      const double swap = std::abs(m2 - mu1s.back()) + std::abs(m1 - mu2s.back());
      if (swap < keep) std::swap(m1, m2);
    }
    mu1s.push_back(m1);
    mu2s.push_back(m2);
  }
  for (std::size_t k = 0; k < lambdas.size(); ++k)
    if (!(mu1s[k].real() < 0.0 && mu2s[k].real() > 0.0))
      throw NumericalError("spatial_eigenvalues_path: branch tracking lost the splitting");
  return {std::move(mu1s), std::move(mu2s)};
}

struct SplittingReport {
  double min_stable_margin = 0.0;    // min over samples of -Re mu1
  double min_unstable_margin = 0.0;  // min over samples of +Re mu2
  bool pass = false;
};

inline constexpr double kSplittingFloor = 1e-8;

inline SplittingReport consistent_splitting_check(const AsymptoticSpectralData& data,
                                                  const std::vector<Complex>& lambdas) {
  const SpectralGap gap = spectral_gap(data);
  for (const auto& l : lambdas)
    if (!(l.real() > -gap.chi0))
      throw RegionError("consistent_splitting_check: sample outside Omega");
  SplittingReport rep;
  rep.min_stable_margin = std::numeric_limits<double>::infinity();
  rep.min_unstable_margin = std::numeric_limits<double>::infinity();
  for (Side side : {Side::Minus, Side::Plus}) {
    auto [mu1s, mu2s] = spatial_eigenvalues_path(data, side, lambdas);
    for (std::size_t k = 0; k < lambdas.size(); ++k) {
      rep.min_stable_margin = std::min(rep.min_stable_margin, -mu1s[k].real());
      rep.min_unstable_margin = std::min(rep.min_unstable_margin, mu2s[k].real());
    }
  }
  rep.pass = rep.min_stable_margin > kSplittingFloor &&
             rep.min_unstable_margin > kSplittingFloor;
  if (!rep.pass)
    throw NumericalError(
        "consistent_splitting_check: margin below floor (sample outside Omega or branch error)");
  return rep;
}

struct DispersionCurve {
  Side side = Side::Minus;
  int branch = 1;
  std::vector<double> xi;
  std::vector<Complex> lambda;
};

// Independent evaluation of the temporal eigenvalues via the real/imaginary
// case analysis (tau > 0).  For |xi| >= xi0 the real part is flat at -b/2tau;
// for |xi| < xi0 the two branches split along the real axis.
inline std::pair<Complex, Complex> dispersion_case_values(const AsymptoticSpectralData& data,
                                                          Side side, double xi) {
  const double a = std::abs(data.a(side)), b = data.b(side);
  const double tau = data.tau, c = data.c;
  const double d = 1.0 - c * c * tau;
  if (tau == 0.0) {
    // closed-form single curve, derived from the quadratic's tau -> 0 limit
    const Complex lam(-(a + xi * xi) / b, c * xi);
    return {lam, lam};
  }
  const double xi0_sq = d * d * (b * b / (4.0 * tau) - a);
  if (xi * xi >= xi0_sq) {
    const double delta1 = 4.0 * tau * (xi * xi / (d * d) + a - b * b / (4.0 * tau));
    const double eta = -0.5 * b / tau;
    const double beta0 = c * xi / d;
    const double split = std::sqrt(std::max(delta1, 0.0)) / (2.0 * tau);
    return {Complex(eta, beta0 + split), Complex(eta, beta0 - split)};
  }
  const double delta2 = b * b - 4.0 * tau * (a + xi * xi / (d * d));
  const double beta = c * xi / d;
  const double split = std::sqrt(std::max(delta2, 0.0));
  return {Complex((-b + split) / (2.0 * tau), beta),
          Complex((-b - split) / (2.0 * tau), beta)};
}

// Residual of the dispersion relation at (xi, lambda).
inline Complex dispersion_residual(const AsymptoticSpectralData& data, Side side, double xi,
                                   Complex lambda) {
  const double a = std::abs(data.a(side)), b = data.b(side);
  const double tau = data.tau, c = data.c;
  const double d = 1.0 - c * c * tau;
  const Complex icxi(0.0, c * xi);
  return xi * xi - icxi * (b + 2.0 * tau * lambda) +
         d * (tau * lambda * lambda + b * lambda + a);
}

// Quadratic-formula roots of the dispersion relation in lambda at fixed xi.
// For tau = 0 the relation is affine and both entries are the single root.
inline std::pair<Complex, Complex> dispersion_quadratic_roots(
    const AsymptoticSpectralData& data, Side side, double xi) {
  const double a = std::abs(data.a(side)), b = data.b(side);
  const double tau = data.tau, c = data.c;
  const double d = 1.0 - c * c * tau;
  const Complex icxi(0.0, c * xi);
  const Complex A = d * tau;
  const Complex B = d * b - 2.0 * tau * icxi;
  const Complex C = d * a + xi * xi - icxi * b;
  if (tau == 0.0) {
    const Complex lam = -C / B;
    return {lam, lam};
  }
  const Complex disc = std::sqrt(B * B - 4.0 * A * C);
  // pick the larger-magnitude numerator to avoid cancellation
  const Complex q = (std::abs(B - disc) > std::abs(B + disc)) ? (-B + disc) * 0.5
                                                              : (-B - disc) * 0.5;
  return {q / A, C / q};
}

// Primary path (quadratic solve) cross-checked against the case analysis; the
// returned branches follow the case-analysis labeling.
inline std::pair<DispersionCurve, DispersionCurve> dispersion_curves(
    const AsymptoticSpectralData& data, Side side, const std::vector<double>& xi_grid) {
  const SpectralGap gap = spectral_gap(data);
  DispersionCurve c1{side, 1, {}, {}}, c2{side, 2, {}, {}};
  c1.xi.reserve(xi_grid.size());
  c1.lambda.reserve(xi_grid.size());
  if (data.tau > 0.0) {
    c2.xi.reserve(xi_grid.size());
    c2.lambda.reserve(xi_grid.size());
  }
  for (double xi : xi_grid) {
    auto [q1, q2] = dispersion_quadratic_roots(data, side, xi);
    auto [z1, z2] = dispersion_case_values(data, side, xi);
    // match quadratic roots to case-analysis values
    const double direct = std::abs(q1 - z1) + std::abs(q2 - z2);
    const double crossed = std::abs(q2 - z1) + std::abs(q1 - z2);
    if (crossed < direct) std::swap(q1, q2);
    const double mismatch = std::max(std::abs(q1 - z1), std::abs(q2 - z2));
    const double scale = std::max(1.0, std::max(std::abs(z1), std::abs(z2)));
    if (mismatch > 1e-9 * scale)
      throw NumericalError(
          "dispersion_curves: quadratic roots disagree with the case analysis at xi=" +
          std::to_string(xi));
    for (Complex lam : {q1, q2}) {
      if (!(lam.real() <= -gap.chi0 + 1e-9))
        throw NumericalError("dispersion_curves: curve sample above the spectral gap bound");
      if (data.tau == 0.0) break;
    }
    c1.xi.push_back(xi);
    c1.lambda.push_back(q1);
    if (data.tau > 0.0) {
      c2.xi.push_back(xi);
      c2.lambda.push_back(q2);
    }
  }
  return {std::move(c1), std::move(c2)};
}

// Location of the case I / case II junction (returns a negative value when the
// entire axis is case I).
inline double dispersion_junction_xi(const AsymptoticSpectralData& data, Side side) {
  const double a = std::abs(data.a(side)), b = data.b(side);
  const double tau = data.tau, c = data.c;
  if (tau == 0.0) return -1.0;
  const double d = 1.0 - c * c * tau;
  const double xi0_sq = d * d * (b * b / (4.0 * tau) - a);
  return xi0_sq > 0.0 ? std::sqrt(xi0_sq) : -1.0;
}

}  // namespace frontlab
