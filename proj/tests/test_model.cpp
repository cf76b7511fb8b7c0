#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "frontlab/model.hpp"

using namespace frontlab;

namespace {

// closed-form quartic antiderivative of -f for the cubic reaction
double cubic_potential(double u, double alpha, double kappa) {
  return kappa * (0.25 * u * u * u * u - (1.0 + alpha) * u * u * u / 3.0 +
                  0.5 * alpha * u * u);
}

}  // namespace

TEST_CASE("cubic reaction has the bistable root and slope structure") {
  const double alpha = 0.3, kappa = 1.0;
  Model m = make_cubic_model(alpha, kappa, DampingKind::ConstantOne, 0.0);

  CHECK(m.f(0.0) == 0.0);
  CHECK(m.f(alpha) == Catch::Approx(0.0).margin(1e-15));
  CHECK(m.f(1.0) == 0.0);

  CHECK(m.fp(0.0) == Catch::Approx(-alpha * kappa).epsilon(1e-14));
  CHECK(m.fp(1.0) == Catch::Approx(-kappa * (1.0 - alpha)).epsilon(1e-14));
  CHECK(m.fp(alpha) > 0.0);

  for (int i = 1; i < 200; ++i) {
    const double u = alpha * i / 200.0;
    CHECK(m.f(u) < 0.0);
  }
  for (int i = 1; i < 200; ++i) {
    const double u = alpha + (1.0 - alpha) * i / 200.0;
    if (u < 1.0) CHECK(m.f(u) > 0.0);
  }
}

TEST_CASE("reaction derivatives agree with central differences") {
  Model m = make_cubic_model(0.37, 1.6, DampingKind::ConstantOne, 0.0);
  const double h = 1e-6;
  for (double u : {0.05, 0.3, 0.62, 0.9}) {
    const double fd1 = (m.f(u + h) - m.f(u - h)) / (2.0 * h);
    const double fd2 = (m.fp(u + h) - m.fp(u - h)) / (2.0 * h);
    CHECK(m.fp(u) == Catch::Approx(fd1).margin(1e-8));
    CHECK(m.fpp(u) == Catch::Approx(fd2).margin(1e-7));
  }
}

TEST_CASE("potential matches the closed-form quartic on a dense grid") {
  for (double kappa : {0.5, 1.0, 2.0}) {
    Model m = make_cubic_model(0.3, kappa, DampingKind::ConstantOne, 0.0);
    for (int i = 0; i <= 1000; ++i) {
      const double u = i / 1000.0;
      CHECK(std::abs(m.potential(u) - cubic_potential(u, 0.3, kappa)) < 1e-10);
    }
  }
}

TEST_CASE("well imbalance follows the closed form") {
  // F(1) - F(0) = kappa*(2*alpha - 1)/12 for the cubic
  for (double kappa : {0.5, 1.0, 2.0})
    for (double alpha : {0.1, 0.3, 0.5, 0.7, 0.9}) {
      Model m = make_cubic_model(alpha, kappa, DampingKind::ConstantOne, 0.0);
      const double diff = m.potential(1.0) - m.potential(0.0);
      CHECK(diff == Catch::Approx(kappa * (2.0 * alpha - 1.0) / 12.0).margin(1e-12));
    }
  // frozen spot value: alpha = 0.3, kappa = 1 gives -1/30
  Model m = make_cubic_model(0.3, 1.0, DampingKind::ConstantOne, 0.0);
  CHECK(m.potential(1.0) == Catch::Approx(-1.0 / 30.0).margin(1e-12));
}

TEST_CASE("cattaneo-maxwell damping collapses to constant damping at tau zero") {
  Model cm = make_cubic_model(0.3, 1.0, DampingKind::CattaneoMaxwell, 0.0);
  for (int i = 0; i <= 50; ++i) {
    const double u = i / 50.0;
    CHECK(cm.g(u) == 1.0);
    CHECK(cm.gu(u) == 0.0);
  }
}

TEST_CASE("cattaneo-maxwell damping stays positive below the admissibility bound") {
  const double alpha = 0.3, kappa = 1.0;
  Model m = make_cubic_model(alpha, kappa, DampingKind::CattaneoMaxwell, 1.0);
  // bound = 3/(kappa*(1 - alpha + alpha^2)), frozen: 3.7974683544303797
  CHECK(m.tau_admissible_bound() ==
        Catch::Approx(3.0 / (kappa * (1.0 - alpha + alpha * alpha))).epsilon(1e-9));
  CHECK(m.tau_admissible_bound() == Catch::Approx(3.7974683544303797).epsilon(1e-9));

  double gmin = 1e300;
  for (int i = 0; i <= 1000; ++i) gmin = std::min(gmin, m.g(i / 1000.0));
  CHECK(gmin > 0.0);
}

TEST_CASE("hypothesis report passes for admissible models") {
  for (auto kind : {DampingKind::ConstantOne, DampingKind::CattaneoMaxwell}) {
    Model m = make_cubic_model(0.3, 1.0, kind, 1.0);
    const auto rep = validate_hypotheses(m);
    CHECK(rep.all_pass());
    for (const auto& c : rep.clauses) {
      INFO(c.name);
      CHECK(c.pass);
    }
  }
}

TEST_CASE("hypothesis report flags an inadmissible relaxation time") {
  // tau = 5 exceeds 3/(1 - alpha + alpha^2) ~ 3.797 for alpha = 0.3
  Model m = make_cubic_model(0.3, 1.0, DampingKind::CattaneoMaxwell, 5.0);
  const auto rep = validate_hypotheses(m);
  CHECK_FALSE(rep.all_pass());
  bool saw_relaxation = false, saw_damping = false;
  for (const auto& c : rep.clauses) {
    if (c.name == "relaxation-admissibility") {
      saw_relaxation = true;
      CHECK_FALSE(c.pass);
      // witness sits near the maximizer of f' at (1+alpha)/3
      CHECK(c.witness_u == Catch::Approx((1.0 + 0.3) / 3.0).margin(1e-3));
    }
    if (c.name == "damping-positivity") {
      saw_damping = true;
      CHECK_FALSE(c.pass);  // g dips negative once tau crosses the bound
    }
    if (c.name == "bistable-roots") CHECK(c.pass);
  }
  CHECK(saw_relaxation);
  CHECK(saw_damping);
}

TEST_CASE("hypothesis check rejects a too-coarse grid") {
  Model m = make_cubic_model(0.5, 1.0, DampingKind::ConstantOne, 0.0);
  CHECK_THROWS_AS(validate_hypotheses(m, 50), DomainError);
}

TEST_CASE("sampled reaction nodes reproduce the cubic they came from") {
  const double alpha = 0.4, kappa = 1.3;
  Model ref = make_cubic_model(alpha, kappa, DampingKind::ConstantOne, 0.0);

  ReactionSpec r;
  r.kind = ReactionKind::CustomSampled;
  const int nn = 41;
  for (int i = 0; i < nn; ++i) {
    const double u = static_cast<double>(i) / (nn - 1);
    r.nodes_u.push_back(u);
    r.nodes_f.push_back(ref.f(u));
    r.nodes_fp.push_back(ref.fp(u));
  }
  Model m(r, DampingSpec{}, 0.0);

  // node values are interpolated exactly
  for (int i = 0; i < nn; ++i) {
    const double u = static_cast<double>(i) / (nn - 1);
    CHECK(m.f(u) == Catch::Approx(ref.f(u)).margin(1e-15));
  }

  // Away from the interior extrema of f the slope limiter is inert and the
  // piecewise Hermite cubic reproduces cubic data exactly.  Near an extremum
  // the local secant passes through zero, so exact slopes can exceed the 3x
  // secant cap and get pulled back -- an O(h^2) shape-preservation cost.
  const double disc = std::sqrt(alpha * alpha - alpha + 1.0);
  const double ext_lo = (1.0 + alpha - disc) / 3.0;  // extrema of the cubic
  const double ext_hi = (1.0 + alpha + disc) / 3.0;
  const double h = 1.0 / (nn - 1);
  for (int i = 0; i <= 500; ++i) {
    const double u = i / 500.0;
    if (std::abs(u - ext_lo) < 3.0 * h || std::abs(u - ext_hi) < 3.0 * h) continue;
    CHECK(m.f(u) == Catch::Approx(ref.f(u)).margin(1e-12));
  }

  // near the extrema the deviation shrinks with the node spacing
  auto sup_dev = [&](int nodes) {
    ReactionSpec rr;
    rr.kind = ReactionKind::CustomSampled;
    for (int i = 0; i < nodes; ++i) {
      const double u = static_cast<double>(i) / (nodes - 1);
      rr.nodes_u.push_back(u);
      rr.nodes_f.push_back(ref.f(u));
      rr.nodes_fp.push_back(ref.fp(u));
    }
    Model mm(rr, DampingSpec{}, 0.0);
    double sup = 0.0;
    for (int i = 0; i <= 2000; ++i) {
      const double u = i / 2000.0;
      sup = std::max(sup, std::abs(mm.f(u) - ref.f(u)));
    }
    return sup;
  };
  CHECK(sup_dev(41) < 1e-4);
  CHECK(sup_dev(161) < 1e-5);

  CHECK(m.alpha() == Catch::Approx(alpha).margin(1e-9));
  CHECK(validate_hypotheses(m).all_pass());
}

TEST_CASE("model construction rejects out-of-domain parameters") {
  CHECK_THROWS_AS(make_cubic_model(0.0, 1.0, DampingKind::ConstantOne, 0.0), DomainError);
  CHECK_THROWS_AS(make_cubic_model(1.0, 1.0, DampingKind::ConstantOne, 0.0), DomainError);
  CHECK_THROWS_AS(make_cubic_model(0.5, -1.0, DampingKind::ConstantOne, 0.0), DomainError);
  CHECK_THROWS_AS(make_cubic_model(0.5, 1.0, DampingKind::ConstantOne, -0.1), DomainError);
  CHECK_THROWS_AS(make_cubic_model(0.5, 1.0, DampingKind::ConstantOne, 1.0, 0.0), DomainError);
}
