// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure.  Every tolerance is pinned here as a named constant next to the
// check that uses it.  The suite exercises the full pipeline on four
// canonical models:
//
//   M1  constant damping,        alpha = 0.3, tau = 0    (parabolic, moving)
//   M2  constant damping,        alpha = 0.5, tau = 1    (damped wave, stationary)
//   M3  derivative-dependent g,  alpha = 0.3, tau = 1    (moving)
//   M4  derivative-dependent g,  alpha = 0.5, tau = 1    (stationary)

#include "frontlab/frontlab.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

using namespace frontlab;
using Clock = std::chrono::steady_clock;

namespace {

// ---------------------------------------------------------------------------
// pinned tolerances
// ---------------------------------------------------------------------------
constexpr double kClosedFormSpeedTol = 1e-6;      // |gamma* - sqrt(2 kappa)(alpha - 1/2)|
constexpr double kClosedFormTimeLimit = 5.0;      // seconds for the 27-case sweep
constexpr double kBracketTimeLimit = 2.0;         // seconds for one bracketed search
constexpr double kProfileSupTol = 1e-5;           // sup |U - logistic| at 2049 points
constexpr double kTailRateRelTol = 0.02;          // fitted tail slope vs closed-form rate
constexpr double kGapMarginTol = 1e-9;            // Re lambda <= -chi0 + this
constexpr double kSmallTauNominalTol = 1e-4;      // leading-order tau -> 0 gap estimate
constexpr double kSmallTauPinnedTol = 1.05e-4;    // includes the O(tau xi^4) remainder at |xi| = 10
constexpr double kEvansZeroRelTol = 1e-8;         // |D(0)| relative to median |D| on a small circle
constexpr double kEvansTimeLimitPerModel = 60.0;  // seconds
constexpr double kMelnikovStationaryTol = 1e-4;   // |Gamma - sqrt(1/2)/6| for M2
constexpr double kEvansSlopeStep = 5e-3;          // finite-difference step for D'(0)
constexpr double kMmsOrderLo = 1.8, kMmsOrderHi = 2.2;
constexpr double kHalvingLo = 0.425, kHalvingHi = 0.575;
constexpr double kRefinementRelTol = 0.05;        // bound ratios under grid doubling
constexpr double kSpeedRelTol = 0.02;             // measured front speed vs c*
constexpr double kSpeedAbsFloor = 0.01;           // absolute floor for stationary fronts
constexpr double kDecayRateFraction = 0.5;        // heuristic: fitted rate >= this * chi0
constexpr double kPropertyTimeLimit = 180.0;      // seconds for the compact property re-runs

struct CriterionFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int g_failures = 0;

void require(bool cond, const std::string& msg) {
  if (!cond) throw CriterionFailure(msg);
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

void criterion(int idx, const char* name, const std::function<std::string()>& body) {
  const auto t0 = Clock::now();
  bool pass = true;
  std::string metric;
  try {
    metric = body();
  } catch (const std::exception& e) {
    pass = false;
    metric = e.what();
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  std::printf("[%s] %2d. %s: %s (%.2fs)\n", pass ? "PASS" : "FAIL", idx, name, metric.c_str(),
              secs);
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

double logistic(double eta, double alpha, double rate) {
  return 1.0 / (1.0 + (1.0 - alpha) / alpha * std::exp(-rate * eta));
}

std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i)
    x[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  return x;
}

struct Canonical {
  std::string tag;
  Model model;
  double gamma_star;
  FrontProfile front;  // 4097 points, decay-informed half-length
  Canonical(std::string t, double alpha, DampingKind kind, double tau)
      : tag(std::move(t)),
        model(make_cubic_model(alpha, 1.0, kind, tau)),
        gamma_star(find_gamma_star(model)),
        front(reconstruct_profile(model, gamma_star, GridSpec{0.0, 4097, 0.0})) {}
};

double elapsed_since(const Clock::time_point& t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

int main() {
  std::printf("acceptance suite: traveling fronts of damped nonlinear wave equations\n");

  const auto t_setup = Clock::now();
  std::vector<Canonical> canon;
  canon.reserve(4);
  canon.emplace_back("M1", 0.3, DampingKind::ConstantOne, 0.0);
  canon.emplace_back("M2", 0.5, DampingKind::ConstantOne, 1.0);
  canon.emplace_back("M3", 0.3, DampingKind::CattaneoMaxwell, 1.0);
  canon.emplace_back("M4", 0.5, DampingKind::CattaneoMaxwell, 1.0);
  std::printf("canonical fronts built at 4097 points (%.2fs)\n", elapsed_since(t_setup));

  // 1. Closed-form speeds for the parabolic cubic family.
  criterion(1, "closed-form speeds (g = 1, tau = 0)", [&] {
    const auto t0 = Clock::now();
    double worst = 0.0;
    int cases = 0;
    for (double kappa : {0.5, 1.0, 2.0}) {
      for (int k = 1; k <= 9; ++k) {
        const double alpha = 0.1 * k;
        const Model m = make_cubic_model(alpha, kappa, DampingKind::ConstantOne, 0.0);
        const double gs = find_gamma_star(m);
        const double exact = std::sqrt(2.0 * kappa) * (alpha - 0.5);
        worst = std::max(worst, std::abs(gs - exact));
        ++cases;
      }
    }
    const double secs = elapsed_since(t0);
    require(cases == 27, "expected 27 cases");
    require(worst <= kClosedFormSpeedTol,
            "max closed-form deviation " + fmt(worst) + " > " + fmt(kClosedFormSpeedTol));
    require(secs < kClosedFormTimeLimit, "sweep took " + fmt(secs) + "s >= 5s");
    return "max |gamma* - sqrt(2k)(a - 1/2)| = " + fmt(worst) + " over 27 cases";
  });

  // 2. Bracketed search for the derivative-dependent damping model.
  criterion(2, "bracketed speed for derivative-dependent damping", [&] {
    const auto t0 = Clock::now();
    const double gs = find_gamma_star(canon[2].model);  // fresh search, timed
    const double secs = elapsed_since(t0);
    require(gs > -0.40 && gs < -0.32,
            "gamma* = " + fmt(gs) + " outside (-0.40, -0.32)");
    require(secs < kBracketTimeLimit, "search took " + fmt(secs) + "s >= 2s");
    return "gamma* = " + fmt(gs) + " in (-0.40, -0.32)";
  });

  // 3. Reconstructed profiles match the logistic closed form and their tails
  //    decay at the closed-form rates.
  criterion(3, "profile closed form and tail decay rates", [&] {
    double worst_sup = 0.0, worst_rate = 0.0;
    for (double tau : {0.0, 1.0}) {
      const Model m = make_cubic_model(0.3, 1.0, DampingKind::ConstantOne, tau);
      const double gs = find_gamma_star(m);
      const FrontProfile fr = reconstruct_profile(m, gs, GridSpec{0.0, 2049, 0.0});
      const double s = std::sqrt(1.0 - fr.c_star * fr.c_star * tau);
      const double rate = std::sqrt(0.5);
      double sup = 0.0;
      for (std::size_t i = 0; i < fr.xi.size(); ++i)
        sup = std::max(sup, std::abs(fr.U[i] - logistic(fr.xi[i] / s, 0.3, rate)));
      require(sup <= kProfileSupTol,
              "tau = " + fmt(tau) + ": sup deviation " + fmt(sup) + " > 1e-5");
      worst_sup = std::max(worst_sup, sup);

      // log-linear fit of each tail on the window where it is resolved
      auto tail_slope = [&](bool plus_side) {
        std::vector<double> xs, ys;
        for (std::size_t i = 0; i < fr.xi.size(); ++i) {
          const double w = plus_side ? 1.0 - fr.U[i] : fr.U[i];
          if (w >= 1e-5 && w <= 1e-3) {
            xs.push_back(fr.xi[i]);
            ys.push_back(std::log(w));
          }
        }
        require(xs.size() >= 8, "tail window too thin");
        return fit_line(xs, ys).slope;
      };
      const double rm = std::abs(tail_slope(false) - fr.eta_minus) / fr.eta_minus;
      const double rp = std::abs(-tail_slope(true) - fr.eta_plus) / fr.eta_plus;
      require(rm <= kTailRateRelTol, "tau = " + fmt(tau) + ": left tail rate off by " + fmt(rm));
      require(rp <= kTailRateRelTol, "tau = " + fmt(tau) + ": right tail rate off by " + fmt(rp));
      worst_rate = std::max({worst_rate, rm, rp});
    }
    return "sup dev " + fmt(worst_sup) + ", worst tail-rate error " + fmt(worst_rate);
  });

  // 4. Structural laws across a parameter sweep: subcharacteristic speeds and
  //    the potential-difference sign rule.
  criterion(4, "speed sign and subcharacteristic bound across sweep", [&] {
    int cases = 0;
    double min_margin = 1e300;
    for (double alpha : {0.1, 0.25, 0.4, 0.5, 0.6, 0.75, 0.9}) {
      for (double tau : {0.0, 0.5, 1.0, 2.0}) {
        for (DampingKind kind : {DampingKind::ConstantOne, DampingKind::CattaneoMaxwell}) {
          const Model m = make_cubic_model(alpha, 1.0, kind, tau);
          const double gs = find_gamma_star(m);
          const double c = speed_from_gamma(gs, tau);
          const double margin = 1.0 - c * c * tau;
          require(margin > 0.0, "supercharacteristic speed at alpha = " + fmt(alpha));
          min_margin = std::min(min_margin, margin);
          const double potential_diff = (2.0 * alpha - 1.0) / 12.0;  // kappa = 1
          if (alpha == 0.5) {
            require(std::abs(c) <= 1e-8, "stationary case has |c| = " + fmt(std::abs(c)));
          } else {
            require(c * potential_diff > 0.0,
                    "speed sign disagrees with potential difference at alpha = " + fmt(alpha) +
                        ", tau = " + fmt(tau));
          }
          ++cases;
        }
      }
    }
    require(cases >= 50, "sweep too small");
    return std::to_string(cases) + " cases, min (1 - c^2 tau) = " + fmt(min_margin) +
           ", all signs match the potential difference";
  });

  // 5. Essential spectrum stays left of the gap on |xi| <= 50 in both
  //    branch-structure regimes (M2: no real splitting; M3: junction present).
  criterion(5, "dispersion curves respect the spectral gap", [&] {
    const std::vector<double> grid = linspace(-50.0, 50.0, 10001);
    double worst = -1e300;
    for (const Canonical* cp : {&canon[1], &canon[2]}) {
      const AsymptoticSpectralData data = asymptotic_data(cp->model, cp->front.c_star);
      const SpectralGap gap = spectral_gap(data);
      for (Side side : {Side::Minus, Side::Plus}) {
        const auto [c1, c2] = dispersion_curves(data, side, grid);
        for (const auto& curve : {c1, c2})
          for (Complex lam : curve.lambda) worst = std::max(worst, lam.real() + gap.chi0);
      }
    }
    require(worst <= kGapMarginTol, "curve sample above -chi0 by " + fmt(worst));
    return "max (Re lambda + chi0) = " + fmt(worst) + " over 2 models x 2 sides x 10001 points";
  });

  // 6. Vanishing relaxation: at tau = 1e-8 the surviving branch tracks the
  //    parabolic curve -(|a| + xi^2)/b + i c xi.  The leading-order estimate
  //    is 1e-4; on |xi| <= 10 the O(tau (|a| + xi^2)^2) remainder raises the
  //    true gap to ~1.016e-4 at the edge, so the pinned bound adds headroom.
  criterion(6, "vanishing-relaxation limit of the dispersion curves", [&] {
    const double tau = 1e-8;
    const Model m = make_cubic_model(0.3, 1.0, DampingKind::ConstantOne, tau);
    const double gs = find_gamma_star(m);
    const double c0 = speed_from_gamma(gs, 0.0);  // parabolic-limit speed
    const AsymptoticSpectralData data = asymptotic_data(m, speed_from_gamma(gs, tau));
    std::vector<double> grid;
    grid.reserve(2001);
    for (int k = -1000; k <= 1000; ++k) grid.push_back(static_cast<double>(k) / 100.0);
    double worst = 0.0;
    for (Side side : {Side::Minus, Side::Plus}) {
      const double a = side == Side::Minus ? std::abs(data.a_minus) : std::abs(data.a_plus);
      const double b = side == Side::Minus ? data.b_minus : data.b_plus;
      const auto [c1, c2] = dispersion_curves(data, side, grid);
      for (std::size_t i = 0; i < grid.size(); ++i) {
        const double xi = grid[i];
        const Complex limit(-(a + xi * xi) / b, c0 * xi);
        worst = std::max(worst, std::abs(c1.lambda[i] - limit));
      }
    }
    require(worst <= kSmallTauPinnedTol,
            "max gap " + fmt(worst) + " > pinned " + fmt(kSmallTauPinnedTol));
    return "max |lambda_tau - lambda_0| = " + fmt(worst) + " (leading order " +
           fmt(kSmallTauNominalTol) + ", pinned " + fmt(kSmallTauPinnedTol) + ")";
  });

  // 7. Evans function: simple zero at the origin and no other roots in the
  //    right-of-gap rectangle, for all four canonical models.
  criterion(7, "Evans winding isolates the translation eigenvalue", [&] {
    double worst_zero = 0.0, worst_secs = 0.0;
    for (const Canonical& cc : canon) {
      const auto t0 = Clock::now();
      const CoefficientFields fields(cc.model, cc.front);
      const auto circle = winding_number_detailed(fields, circle_contour(Complex(0.0, 0.0), 0.05, 128));
      require(circle.winding == 1,
              cc.tag + ": circle winding " + std::to_string(circle.winding) + " != 1");
      const double d0 = std::abs(evans(fields, Complex(0.0, 0.0)));
      const double rel = d0 / circle.median_abs;
      require(rel <= kEvansZeroRelTol, cc.tag + ": |D(0)| / median = " + fmt(rel));
      worst_zero = std::max(worst_zero, rel);

      const double chi0 = spectral_gap(asymptotic_data(cc.model, cc.front.c_star)).chi0;
      const auto rect = winding_number_detailed(
          fields, rectangle_contour(-0.5 * chi0, 1.0, -2.0, 2.0, 64));
      require(rect.winding == 1,
              cc.tag + ": rectangle winding " + std::to_string(rect.winding) + " != 1");
      require(rect.winding - circle.winding == 0, cc.tag + ": extra roots in the rectangle");
      const double secs = elapsed_since(t0);
      require(secs < kEvansTimeLimitPerModel, cc.tag + " took " + fmt(secs) + "s >= 60s");
      worst_secs = std::max(worst_secs, secs);
    }
    return "all windings 1, max |D(0)|/median = " + fmt(worst_zero) + ", max per-model time " +
           fmt(worst_secs) + "s";
  });

  // 8. Melnikov integral: positive for every model, closed form for the
  //    stationary constant-damping case, and consistent with the sign change
  //    of D across the origin.
  criterion(8, "Melnikov integral certifies a simple zero", [&] {
    double stationary_dev = -1.0;
    double min_gamma = 1e300;
    for (const Canonical& cc : canon) {
      const CoefficientFields fields(cc.model, cc.front);
      const double gamma = melnikov_gamma(fields, cc.front);  // throws unless > 0
      min_gamma = std::min(min_gamma, gamma);
      if (cc.tag == "M2") {
        stationary_dev = std::abs(gamma - std::sqrt(0.5) / 6.0);
        require(stationary_dev <= kMelnikovStationaryTol,
                "stationary Gamma off closed form by " + fmt(stationary_dev));
      }
      const double dp = evans(fields, Complex(kEvansSlopeStep, 0.0)).real();
      const double dm = evans(fields, Complex(-kEvansSlopeStep, 0.0)).real();
      require(dp * dm < 0.0, cc.tag + ": D does not change sign across 0");
      require(std::abs(dp - dm) > 0.5 * (std::abs(dp) + std::abs(dm)),
              cc.tag + ": finite-difference slope of D at 0 is degenerate");
    }
    return "min Gamma = " + fmt(min_gamma) + ", stationary closed-form dev = " +
           fmt(stationary_dev) + ", D changes sign at 0 for all models";
  });

  // 9. Resolvent solver: manufactured-solution convergence at second order,
  //    high-frequency bound ratios halve as Re lambda doubles, and the
  //    fitted bounds are stable under grid refinement.
  criterion(9, "resolvent bounds and manufactured-solution convergence", [&] {
    const Canonical& cc = canon[3];  // stationary, tau = 1

    // (a) manufactured solution u* = cos(pi x / 2L), real lambda = 1
    std::vector<double> errs;
    for (std::size_t n : {257u, 513u, 1025u, 2049u}) {
      const FrontProfile fr = reconstruct_profile(cc.model, cc.gamma_star, GridSpec{0.0, n, 0.0});
      const ResolventProblem p = make_resolvent_problem(cc.model, fr);
      const double k = 0.5 * 3.14159265358979323846 / p.L;
      const Complex lambda(1.0, 0.0);
      std::vector<double> phi(p.size(), 0.0), psi(p.size());
      std::vector<Complex> ustar(p.size());
      for (std::size_t i = 0; i < p.size(); ++i) {
        const double u = std::cos(k * p.x[i]);
        ustar[i] = u;
        psi[i] = (p.tau * 1.0 + p.b[i] * 1.0 + p.tau + k * k) * u;
      }
      const auto sol = solve_resolvent(p, lambda, phi, psi);
      std::vector<Complex> diff(p.size());
      for (std::size_t i = 0; i < p.size(); ++i) diff[i] = sol.u[i] - ustar[i];
      errs.push_back(grid_norm(diff, p.dx()));
    }
    double order_lo = 1e300, order_hi = -1e300;
    for (std::size_t j = 0; j + 1 < errs.size(); ++j) {
      const double order = std::log2(errs[j] / errs[j + 1]);
      order_lo = std::min(order_lo, order);
      order_hi = std::max(order_hi, order);
      require(order > kMmsOrderLo && order < kMmsOrderHi,
              "convergence order " + fmt(order) + " outside [1.8, 2.2]");
    }

    // (b) high-frequency decay: doubling Re lambda halves the norm ratio
    const FrontProfile fr1 = reconstruct_profile(cc.model, cc.gamma_star, GridSpec{0.0, 1025, 0.0});
    const ResolventProblem p1 = make_resolvent_problem(cc.model, fr1);
    const auto rep1 = verify_bounds(p1);
    require(rep1.records.size() >= 8, "too few bound records");
    double halving_lo = 1e300, halving_hi = -1e300;
    for (std::size_t j = rep1.records.size() - 4; j + 1 < rep1.records.size(); ++j) {
      const auto& r1 = rep1.records[j];
      const auto& r2 = rep1.records[j + 1];
      require(std::abs(r2.lambda.real() - 2.0 * r1.lambda.real()) < 1e-12,
              "decay records are not at doubling real parts");
      const double ratio = r2.ratio_uell2 / r1.ratio_uell2;
      halving_lo = std::min(halving_lo, ratio);
      halving_hi = std::max(halving_hi, ratio);
      require(ratio > kHalvingLo && ratio < kHalvingHi,
              "halving ratio " + fmt(ratio) + " outside [0.425, 0.575]");
    }

    // (c) fitted bound ratios stable under grid doubling
    const FrontProfile fr2 = reconstruct_profile(cc.model, cc.gamma_star, GridSpec{0.0, 2049, 0.0});
    const ResolventProblem p2 = make_resolvent_problem(cc.model, fr2);
    const auto rep2 = verify_bounds(p2);
    const double ch_v = std::abs(rep2.max_ratio_vuprime - rep1.max_ratio_vuprime) /
                        rep1.max_ratio_vuprime;
    const double ch_u = std::abs(rep2.max_ratio_uell2 - rep1.max_ratio_uell2) /
                        rep1.max_ratio_uell2;
    require(ch_v < kRefinementRelTol, "bound ratio drifts " + fmt(ch_v) + " under refinement");
    require(ch_u < kRefinementRelTol, "bound ratio drifts " + fmt(ch_u) + " under refinement");

    return "orders in [" + fmt(order_lo) + ", " + fmt(order_hi) + "], halving in [" +
           fmt(halving_lo) + ", " + fmt(halving_hi) + "], refinement drift " +
           fmt(std::max(ch_v, ch_u));
  });

  // 10. Direct simulation: lab-frame front speeds match c* within 2%, and the
  //     perturbation decay rate for the parabolic model clears half the
  //     spectral gap (heuristic threshold: the gap bounds the essential
  //     spectrum only, so the fitted rate is compared against a labeled
  //     fraction rather than an exact constant).
  criterion(10, "simulated speeds and perturbation decay", [&] {
    double worst_speed = 0.0;
    for (const Canonical& cc : canon) {
      const std::vector<double> x = linspace(-25.0, 25.0, 1024);
      std::vector<double> u0(x.size()), ut0(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) {
        u0[i] = cc.front.interp->U(x[i]);
        ut0[i] = -cc.front.c_star * cc.front.interp->Ux(x[i]);
      }
      const SimState st = make_sim_state(x, u0, ut0, 0.0);
      const auto traj = run_simulation(st, cc.model, 25.0, 40);
      const double measured = measure_front_speed(traj, cc.model);
      const double err = std::abs(measured - cc.front.c_star);
      const double tol = kSpeedRelTol * std::max(std::abs(cc.front.c_star), kSpeedAbsFloor);
      require(err <= tol, cc.tag + ": measured speed " + fmt(measured) + " vs c* = " +
                              fmt(cc.front.c_star));
      worst_speed = std::max(worst_speed, err);
    }

    const Canonical& m1 = canon[0];
    const FrontProfile fr = reconstruct_profile(m1.model, m1.gamma_star, GridSpec{0.0, 1025, 0.0});
    const double chi0 = spectral_gap(asymptotic_data(m1.model, fr.c_star)).chi0;
    const auto meas = measure_decay_rate(m1.model, fr, bump_perturbation(fr.xi, 1e-3, 3.0, 0.0),
                                         25.0, chi0);
    require(!meas.instability, "perturbation grew");
    require(meas.fitted_rate >= kDecayRateFraction * chi0,
            "fitted decay rate " + fmt(meas.fitted_rate) + " < " +
                fmt(kDecayRateFraction * chi0));
    return "max |speed - c*| = " + fmt(worst_speed) + "; tau = 0 decay rate " +
           fmt(meas.fitted_rate) + " >= " + fmt(kDecayRateFraction * chi0) +
           " (heuristic threshold 0.5 chi0)";
  });

  // 11. Compact re-runs of the cross-cutting properties.
  criterion(11, "property suite (monotonicity, brackets, kernel, winding)", [&] {
    const auto t0 = Clock::now();

    // (a) shooting mismatch is nondecreasing in gamma
    for (const Canonical* cp : {&canon[0], &canon[2]}) {
      double prev = -1e300;
      for (double g : {-1.5, -1.0, -0.6, -0.3, 0.0, 0.3, 0.6, 1.0, 1.5}) {
        const double h = detail::shooting_mismatch(cp->model, g, 1e-8);
        require(h >= prev - 1e-12, cp->tag + ": mismatch not monotone at gamma = " + fmt(g));
        prev = h;
      }
    }

    // (b) min-max bracket contains gamma*, tightly for the exact profile
    {
      const Canonical& m1 = canon[0];
      const double rate = std::sqrt(0.5);
      CandidateFront exact, skew;
      exact.x = linspace(-8.0, 8.0, 1025);
      skew.x = exact.x;
      for (double eta : exact.x) {
        exact.W.push_back(logistic(eta, 0.3, rate));
        skew.W.push_back(logistic(eta, 0.3, 1.3 * rate));
      }
      const auto [lo1, hi1] = minmax_bracket(m1.model, exact);
      require(lo1 <= m1.gamma_star + 1e-9 && hi1 >= m1.gamma_star - 1e-9,
              "exact candidate bracket misses gamma*");
      require(hi1 - lo1 <= 1e-3, "exact candidate bracket too wide: " + fmt(hi1 - lo1));
      const auto [lo2, hi2] = minmax_bracket(m1.model, skew);
      require(lo2 < m1.gamma_star && hi2 > m1.gamma_star,
              "perturbed candidate bracket misses gamma*");
    }

    // (c) translation eigenfunction residual on all four models
    for (const Canonical& cc : canon) {
      const CoefficientFields fields(cc.model, cc.front);
      const double r = translation_eigenvalue_residual(fields, cc.front);
      require(r <= 1e-5, cc.tag + ": translation residual " + fmt(r));
    }

    // (d) companion/first-order equivalence on the kernel (tau > 0 models)
    for (std::size_t idx : {1u, 2u, 3u}) {
      const Canonical& cc = canon[idx];
      const CoefficientFields fields(cc.model, cc.front);
      const std::size_t n = cc.front.xi.size();
      std::vector<Complex> v(n);
      std::vector<double> xs(n);
      for (std::size_t i = 0; i < n; ++i) {
        v[i] = Complex(cc.front.Ux[i], 0.0);
        xs[i] = cc.front.xi[i] - cc.front.xi0;
      }
      const auto res = companion_equivalence_check(fields, Complex(0.0, 0.0), v, xs);
      require(res.companion <= 1e-5, cc.tag + ": companion residual " + fmt(res.companion));
      require(res.first_order <= 1e-5, cc.tag + ": first-order residual " + fmt(res.first_order));
    }

    // (e) winding integrality on analytic references
    {
      auto shifted = [](Complex l) { return l - Complex(5.0, 0.0); };
      require(winding_number_of(shifted, circle_contour(Complex(5.0, 0.0), 1.0, 64)).winding == 1,
              "winding of (lambda - 5) around 5 is not 1");
      require(winding_number_of(shifted, circle_contour(Complex(0.0, 0.0), 1.0, 64)).winding == 0,
              "winding of (lambda - 5) around 0 is not 0");
      auto squared = [](Complex l) {
        const Complex z = l - Complex(5.0, 0.0);
        return z * z;
      };
      require(winding_number_of(squared, circle_contour(Complex(5.0, 0.0), 1.0, 64)).winding == 2,
              "winding of (lambda - 5)^2 around 5 is not 2");
    }

    const double secs = elapsed_since(t0);
    require(secs < kPropertyTimeLimit, "property suite took " + fmt(secs) + "s >= 180s");
    return "monotone mismatch, brackets contain gamma*, kernel residuals <= 1e-5, windings exact";
  });

  std::printf("%d/11 criteria passed\n", 11 - g_failures);
  return g_failures == 0 ? 0 : 1;
}
