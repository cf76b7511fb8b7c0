#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "frontlab/spectrum.hpp"
#include "frontlab/timestepper.hpp"

using namespace frontlab;

namespace {

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i)
    x[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  return x;
}

struct FrontFixture {
  Model model;
  double gamma_star;
  FrontProfile front;
  FrontFixture(double alpha, DampingKind kind, double tau, std::size_t pts)
      : model(make_cubic_model(alpha, 1.0, kind, tau)),
        gamma_star(find_gamma_star(model)),
        front(reconstruct_profile(model, gamma_star, GridSpec{0.0, pts, 0.0})) {}
};

FrontFixture& cm_front() {
  static FrontFixture fx(0.3, DampingKind::CattaneoMaxwell, 1.0, 513);
  return fx;
}

}  // namespace

TEST_CASE("step bounds follow the characteristic and diffusive formulas") {
  Model wave = make_cubic_model(0.3, 1.0, DampingKind::CattaneoMaxwell, 1.0);
  Model heat = make_cubic_model(0.3, 1.0, DampingKind::ConstantOne, 0.0);
  const auto x = linspace(-10.0, 10.0, 101);
  const std::vector<double> z(x.size(), 0.0);

  SimState rest = make_sim_state(x, z, z, 0.0);
  const double dx = rest.dx();
  CHECK(cfl_limit(wave, rest) == 0.8 * dx);
  CHECK(cfl_limit(heat, rest) == 0.8 * dx * dx / 2.0);

  SimState moving = make_sim_state(x, z, z, -0.3);
  CHECK(cfl_limit(wave, moving) == 0.8 * dx * std::sqrt(1.0 - 0.09));

  SimState superluminal = make_sim_state(x, z, z, 1.5);
  CHECK_THROWS_AS(cfl_limit(wave, superluminal), DomainError);
  CHECK_THROWS_AS(default_timestep(wave, superluminal), DomainError);
  CHECK(default_timestep(wave, rest) <= cfl_limit(wave, rest));
  CHECK(default_timestep(heat, rest) <= cfl_limit(heat, rest));
}

TEST_CASE("oversized or non-positive steps are rejected") {
  Model wave = make_cubic_model(0.3, 1.0, DampingKind::CattaneoMaxwell, 1.0);
  const auto x = linspace(-5.0, 5.0, 64);
  const std::vector<double> z(x.size(), 0.0);
  SimState st = make_sim_state(x, z, z, 0.0);
  CHECK_THROWS_AS(step(st, wave, 1.5 * cfl_limit(wave, st)), DomainError);
  CHECK_THROWS_AS(step(st, wave, 0.0), DomainError);
  CHECK_THROWS_AS(step(st, wave, -0.1), DomainError);
  CHECK_THROWS_AS(make_sim_state(linspace(0, 1, 4), std::vector<double>(4, 0.0),
                                 std::vector<double>(4, 0.0), 0.0),
                  DomainError);
}

TEST_CASE("spatially constant equilibria are preserved exactly") {
  const auto x = linspace(-8.0, 8.0, 129);
  for (double tau : {0.0, 1.0}) {
    Model m = make_cubic_model(0.3, 1.0,
                               tau > 0.0 ? DampingKind::CattaneoMaxwell
                                         : DampingKind::ConstantOne,
                               tau);
    for (double level : {0.0, 1.0}) {
      SimState st = make_sim_state(x, std::vector<double>(x.size(), level),
                                   std::vector<double>(x.size(), 0.0), 0.0);
      const double dt = default_timestep(m, st);
      for (int k = 0; k < 50; ++k) st = step(st, m, dt);
      for (double u : st.u) CHECK(u == Catch::Approx(level).margin(1e-14));
      CHECK(st.time == Catch::Approx(50.0 * dt).margin(1e-12));
    }
  }
}

TEST_CASE("step returns a new state and leaves the input untouched") {
  Model m = make_cubic_model(0.4, 1.0, DampingKind::CattaneoMaxwell, 1.0);
  const auto x = linspace(-5.0, 5.0, 64);
  std::vector<double> u0(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) u0[i] = 0.5 + 0.4 * std::tanh(x[i]);
  SimState st = make_sim_state(x, u0, std::vector<double>(x.size(), 0.0), 0.0);
  const SimState next = step(st, m, default_timestep(m, st));
  CHECK(st.time == 0.0);
  CHECK(st.u == u0);
  CHECK(next.time > 0.0);
  CHECK(next.u != u0);
}

TEST_CASE("solution values stay inside the bistable slab") {
  auto& fx = cm_front();
  std::vector<double> u0 = fx.front.U;
  const auto bump = bump_perturbation(fx.front.xi, 1e-3, 3.0, 0.0);
  for (std::size_t i = 0; i < u0.size(); ++i) u0[i] += bump[i];
  SimState st = make_sim_state(fx.front.xi, u0,
                               std::vector<double>(u0.size(), 0.0), fx.front.c_star);
  const auto traj = run_simulation(st, fx.model, 5.0, 16);
  for (const auto& frame : traj.u)
    for (double v : frame) {
      CHECK(v > -1e-4);
      CHECK(v < 1.0 + 1e-4);
    }
}

TEST_CASE("co-moving steady-state deviation shrinks at second order") {
  std::vector<double> devs;
  for (std::size_t pts : {513u, 1025u, 2049u}) {
    FrontFixture fx(0.3, DampingKind::CattaneoMaxwell, 1.0, pts);
    SimState st = make_sim_state(fx.front.xi, fx.front.U,
                                 std::vector<double>(pts, 0.0), fx.front.c_star);
    const auto traj = run_simulation(st, fx.model, 3.0, 4);
    // Measure over the central half of the domain: the mirror boundary forces
    // u_x = 0 where the true tails are merely small (~5e-6 at the default
    // half-length), and that grid-independent wall mismatch would floor the
    // deviation.  Away from the walls the error is pure discretization.
    double dev = 0.0;
    const auto& uT = traj.u.back();
    for (std::size_t i = 0; i < pts; ++i)
      if (std::abs(fx.front.xi[i] - fx.front.xi0) <= 0.5 * fx.front.half_length)
        dev = std::max(dev, std::abs(uT[i] - fx.front.U[i]));
    devs.push_back(dev);
  }
  CHECK(devs[0] / devs[1] > 3.0);
  CHECK(devs[0] / devs[1] < 5.0);
  CHECK(devs[1] / devs[2] > 3.0);
  CHECK(devs[1] / devs[2] < 5.0);
}

TEST_CASE("trajectory bookkeeping covers the requested horizon") {
  auto& fx = cm_front();
  SimState st = make_sim_state(fx.front.xi, fx.front.U,
                               std::vector<double>(fx.front.U.size(), 0.0),
                               fx.front.c_star);
  const auto traj = run_simulation(st, fx.model, 1.0, 10);
  REQUIRE(traj.t.size() >= 10);
  CHECK(traj.t.size() == traj.u.size());
  CHECK(traj.t.front() == 0.0);
  CHECK(traj.t.back() == Catch::Approx(1.0).margin(1e-10));
  CHECK(traj.x == fx.front.xi);
  CHECK(traj.frame_speed == fx.front.c_star);
  for (std::size_t k = 1; k < traj.t.size(); ++k) CHECK(traj.t[k] > traj.t[k - 1]);
}

TEST_CASE("level positions interpolate crossings nearest the reference") {
  const std::vector<double> x = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  //                        crossing of 0.5 between 2-3 (at 2.25) and 7-8 (at 7.75)
  const std::vector<double> u = {0, 0, 0.25, 1, 1, 1, 1, 0.75, 0, 0};
  CHECK(level_position(x, u, 0.5, 3.0) == Catch::Approx(2.0 + 0.25 / 0.75).margin(1e-14));
  CHECK(level_position(x, u, 0.5, 8.0) == Catch::Approx(7.0 + 0.25 / 0.75).margin(1e-14));
  CHECK(level_position(x, u, 0.25, 0.0) == 2.0);  // exact node hit
  CHECK_THROWS_AS(level_position(x, u, 2.0, 0.0), DomainError);
}

TEST_CASE("translate fit recovers imposed shifts to high accuracy") {
  auto& fx = cm_front();
  for (double shift : {0.3, -0.2}) {
    std::vector<double> u(fx.front.xi.size());
    for (std::size_t i = 0; i < u.size(); ++i)
      u[i] = fx.front.interp->U(fx.front.xi[i] - shift);
    const double s = fit_translate(fx.front, fx.front.xi, u);
    CHECK(s == Catch::Approx(shift).margin(1e-10));
  }
}

TEST_CASE("lab-frame run reproduces the parabolic front speed") {
  FrontFixture fx(0.3, DampingKind::ConstantOne, 0.0, 1025);
  const double c_star = fx.front.c_star;
  const auto x = linspace(-25.0, 25.0, 1024);
  std::vector<double> u0(x.size()), ut0(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    u0[i] = fx.front.interp->U(x[i]);
    ut0[i] = -c_star * fx.front.interp->Ux(x[i]);
  }
  SimState st = make_sim_state(x, u0, ut0, 0.0);
  const auto traj = run_simulation(st, fx.model, 25.0, 40);
  const double measured = measure_front_speed(traj, fx.model);
  CHECK(measured == Catch::Approx(c_star).epsilon(0.02));
  CHECK(measured < 0.0);
}

TEST_CASE("perturbation deviations decay at a gap-scale rate") {
  auto& fx = cm_front();
  const auto gap = spectral_gap(asymptotic_data(fx.model, fx.front.c_star));
  const auto pert = bump_perturbation(fx.front.xi, 1e-3, 3.0, 0.0);
  const auto meas = measure_decay_rate(fx.model, fx.front, pert, 25.0, gap.chi0);
  CHECK(!meas.instability);
  CHECK(meas.fitted_rate > 0.0);
  CHECK(meas.ratio > 0.2);
  CHECK(meas.ratio < 10.0);
  CHECK(meas.t.size() >= 5);
  CHECK(meas.deviation.front() > 0.0);
  CHECK(meas.deviation.back() < meas.deviation.front());
}

TEST_CASE("zero perturbation reports a zero rate with noise-level deviations") {
  auto& fx = cm_front();
  const std::vector<double> zero(fx.front.xi.size(), 0.0);
  const auto meas = measure_decay_rate(fx.model, fx.front, zero, 5.0, 0.15);
  CHECK(meas.fitted_rate == 0.0);
  CHECK(meas.ratio == 0.0);
  CHECK(!meas.instability);
  for (double d : meas.deviation) CHECK(d <= 1e-12);
  CHECK_THROWS_AS(
      measure_decay_rate(fx.model, fx.front, std::vector<double>(7, 0.0), 5.0, 0.15),
      DomainError);
}

TEST_CASE("bump perturbation is compactly supported and smooth-peaked") {
  const auto x = linspace(-10.0, 10.0, 201);
  const auto p = bump_perturbation(x, 2e-3, 3.0, 1.0);
  double peak = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (std::abs(x[i] - 1.0) >= 3.0) CHECK(p[i] == 0.0);
    peak = std::max(peak, p[i]);
  }
  CHECK(peak == Catch::Approx(2e-3).margin(1e-6));
}
