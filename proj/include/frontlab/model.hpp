#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "interp.hpp"

namespace frontlab {

// Reaction/damping pair for the damped wave equation
//   tau*u_tt + g(u,tau)*u_t = u_xx + f(u)
// with a bistable reaction: roots at 0, alpha, 1; stable at 0 and 1.

enum class ReactionKind { Cubic, CustomSampled };
enum class DampingKind { ConstantOne, CattaneoMaxwell, Custom };

struct ReactionSpec {
  ReactionKind kind = ReactionKind::Cubic;
  // cubic: f(u) = kappa * u * (1-u) * (u-alpha)
  double alpha = 0.5;
  double kappa = 1.0;
  // custom-sampled: values of f and f' at nodes on [0,1]
  std::vector<double> nodes_u, nodes_f, nodes_fp;
};

struct DampingSpec {
  DampingKind kind = DampingKind::ConstantOne;
  // custom: values of g and g_u at nodes on [0,1] (tau-independent)
  std::vector<double> nodes_u, nodes_g, nodes_gu;
};

struct HypothesisClause {
  std::string name;
  bool pass = false;
  double witness_u = 0.0;      // worst-case point for this clause
  double witness_value = 0.0;  // quantity evaluated there
};

struct HypothesisReport {
  std::vector<HypothesisClause> clauses;
  bool all_pass() const {
    for (const auto& c : clauses)
      if (!c.pass) return false;
    return true;
  }
};

namespace detail {

// Slope limiting in the Fritsch-Carlson style: where the supplied slopes are
// badly inconsistent with the local secants, pull them back so the interpolant
// cannot oscillate across a data sign pattern.  Dense consistent samples pass
// through unchanged.
inline void limit_slopes(const std::vector<double>& x, const std::vector<double>& y,
                         std::vector<double>& d) {
  const std::size_t n = x.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double h = x[i + 1] - x[i];
    const double delta = (y[i + 1] - y[i]) / h;
    if (delta == 0.0) continue;
    const double r0 = d[i] / delta, r1 = d[i + 1] / delta;
    if (r0 > 3.0) d[i] = 3.0 * delta;
    if (r1 > 3.0) d[i + 1] = 3.0 * delta;
  }
}

}  // namespace detail

class Model {
 public:
  Model(ReactionSpec reaction, DampingSpec damping, double tau, double delta0 = 1e-6)
      : reaction_(std::move(reaction)), damping_(std::move(damping)), tau_(tau),
        delta0_(delta0) {
    if (tau_ < 0.0) throw DomainError("Model: tau must be >= 0");
    if (delta0_ <= 0.0) throw DomainError("Model: delta0 must be > 0");

    if (reaction_.kind == ReactionKind::Cubic) {
      if (!(reaction_.alpha > 0.0 && reaction_.alpha < 1.0))
        throw DomainError("Model: cubic reaction needs alpha in (0,1)");
      if (!(reaction_.kappa > 0.0))
        throw DomainError("Model: cubic reaction needs kappa > 0");
      alpha_ = reaction_.alpha;
    } else {
      build_reaction_interpolant();
    }

    if (damping_.kind == DampingKind::Custom) build_damping_interpolant();
    tau_m_ = compute_tau_bound();
  }

  double tau() const { return tau_; }
  double delta0() const { return delta0_; }
  double alpha() const { return alpha_; }
  double tau_admissible_bound() const { return tau_m_; }
  const ReactionSpec& reaction() const { return reaction_; }
  const DampingSpec& damping() const { return damping_; }

  double f(double u) const {
    if (reaction_.kind == ReactionKind::Cubic)
      return reaction_.kappa * u * (1.0 - u) * (u - reaction_.alpha);
    return f_interp_.value(u);
  }

  double fp(double u) const {
    if (reaction_.kind == ReactionKind::Cubic) {
      const double a = reaction_.alpha;
      return reaction_.kappa * (-3.0 * u * u + 2.0 * (1.0 + a) * u - a);
    }
    return f_interp_.derivative(u);
  }

  double fpp(double u) const {
    if (reaction_.kind == ReactionKind::Cubic)
      return reaction_.kappa * (-6.0 * u + 2.0 * (1.0 + reaction_.alpha));
    return f_interp_.second_derivative(u);
  }

  double g(double u) const {
    switch (damping_.kind) {
      case DampingKind::ConstantOne: return 1.0;
      case DampingKind::CattaneoMaxwell: return 1.0 - tau_ * fp(u);
      case DampingKind::Custom: return g_interp_.value(u);
    }
    return 1.0;
  }

  double gu(double u) const {
    switch (damping_.kind) {
      case DampingKind::ConstantOne: return 0.0;
      case DampingKind::CattaneoMaxwell: return -tau_ * fpp(u);
      case DampingKind::Custom: return g_interp_.derivative(u);
    }
    return 0.0;
  }

  // Two-well potential F(u) = -integral of f from 0 to u, by adaptive
  // quadrature (one code path for cubic and sampled reactions).
  double potential(double u) const {
    if (u < 0.0 || u > 1.0)
      throw DomainError("eval_potential: u outside [0,1]");
    if (u == 0.0) return 0.0;
    return -adaptive_simpson([this](double v) { return f(v); }, 0.0, u, 1e-14);
  }

 private:
  void build_reaction_interpolant() {
    const auto& u = reaction_.nodes_u;
    if (u.size() < 4 || u.size() != reaction_.nodes_f.size() ||
        u.size() != reaction_.nodes_fp.size())
      throw DomainError("Model: custom reaction needs >=4 consistent nodes");
    if (std::abs(u.front()) > 1e-12 || std::abs(u.back() - 1.0) > 1e-12)
      throw DomainError("Model: custom reaction nodes must span [0,1]");
    std::vector<double> d = reaction_.nodes_fp;
    detail::limit_slopes(u, reaction_.nodes_f, d);
    f_interp_ = CubicHermite(u, reaction_.nodes_f, d);

    // Interior root of the interpolant = effective alpha.
    double lo = 0.0, hi = 1.0;
    bool found = false;
    const int scan = 2048;
    double prev_u = u.front(), prev_f = f_interp_.value(prev_u);
    for (int i = 1; i <= scan; ++i) {
      const double ui = static_cast<double>(i) / scan;
      const double fi = f_interp_.value(ui);
      if (prev_f < 0.0 && fi >= 0.0 && ui > 1e-6 && prev_u < 1.0 - 1e-6) {
        lo = prev_u;
        hi = ui;
        found = true;
        break;
      }
      prev_u = ui;
      prev_f = fi;
    }
    if (!found)
      throw DomainError("Model: custom reaction has no interior sign change");
    for (int it = 0; it < 200 && (hi - lo) > 1e-15; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (f_interp_.value(mid) < 0.0)
        lo = mid;
      else
        hi = mid;
    }
    alpha_ = 0.5 * (lo + hi);
  }

  void build_damping_interpolant() {
    const auto& u = damping_.nodes_u;
    if (u.size() < 2 || u.size() != damping_.nodes_g.size() ||
        u.size() != damping_.nodes_gu.size())
      throw DomainError("Model: custom damping needs >=2 consistent nodes");
    g_interp_ = CubicHermite(u, damping_.nodes_g, damping_.nodes_gu);
  }

  double compute_tau_bound() const {
    if (damping_.kind != DampingKind::CattaneoMaxwell)
      return std::numeric_limits<double>::infinity();
    // g = 1 - tau*f' stays positive iff tau < 1/max f'.
    double fp_max = -std::numeric_limits<double>::infinity();
    double u_at = 0.0;
    const int n = 4096;
    for (int i = 0; i <= n; ++i) {
      const double u = static_cast<double>(i) / n;
      const double v = fp(u);
      if (v > fp_max) {
        fp_max = v;
        u_at = u;
      }
    }
    // Parabolic refinement around the grid maximizer.
    const double h = 1.0 / n;
    if (u_at > 0.0 && u_at < 1.0) {
      const double fm = fp(u_at - h), f0 = fp_max, fp1 = fp(u_at + h);
      const double denom = fm - 2.0 * f0 + fp1;
      if (denom < 0.0) {
        const double du = 0.5 * h * (fm - fp1) / denom;
        const double u_ref = u_at + du;
        if (u_ref > 0.0 && u_ref < 1.0) fp_max = std::max(fp_max, fp(u_ref));
      }
    }
    if (fp_max <= 0.0) return std::numeric_limits<double>::infinity();
    return 1.0 / fp_max;
  }

  ReactionSpec reaction_;
  DampingSpec damping_;
  double tau_ = 0.0;
  double delta0_ = 1e-6;
  double alpha_ = 0.5;
  double tau_m_ = std::numeric_limits<double>::infinity();
  CubicHermite f_interp_;
  CubicHermite g_interp_;
};

// Checks the structural hypotheses on a dense grid: bistability of f (roots,
// slope signs, sign pattern between roots) and strict damping positivity,
// plus the relaxation-time bound for Cattaneo-Maxwell damping.  Failures are
// reported, never thrown.
inline HypothesisReport validate_hypotheses(const Model& model, int grid_points = 1000) {
  if (grid_points < 100) throw DomainError("validate_hypotheses: grid_points >= 100");
  HypothesisReport report;
  const double tol = 1e-9;
  const double alpha = model.alpha();

  std::vector<double> grid;
  grid.reserve(grid_points + 3);
  for (int i = 0; i < grid_points; ++i)
    grid.push_back(static_cast<double>(i) / (grid_points - 1));
  grid.push_back(0.0);
  grid.push_back(alpha);
  grid.push_back(1.0);

  {
    HypothesisClause c{"bistable-roots", true, 0.0, 0.0};
    for (double r : {0.0, alpha, 1.0}) {
      const double v = std::abs(model.f(r));
      if (v > c.witness_value) {
        c.witness_value = v;
        c.witness_u = r;
      }
    }
    c.pass = c.witness_value <= tol;
    report.clauses.push_back(c);
  }
  {
    HypothesisClause c{"bistable-slopes", true, 0.0, 0.0};
    // margin = how far each slope is on the correct side of 0
    double worst = std::numeric_limits<double>::infinity();
    double worst_u = 0.0, worst_v = 0.0;
    for (auto [r, want_neg] : {std::pair{0.0, true}, {1.0, true}, {alpha, false}}) {
      const double v = model.fp(r);
      const double margin = want_neg ? -v : v;
      if (margin < worst) {
        worst = margin;
        worst_u = r;
        worst_v = v;
      }
    }
    c.pass = worst > 0.0;
    c.witness_u = worst_u;
    c.witness_value = worst_v;
    report.clauses.push_back(c);
  }
  {
    HypothesisClause c{"bistable-sign-pattern", true, 0.0, 0.0};
    double worst = -std::numeric_limits<double>::infinity();
    double worst_u = alpha;
    for (double u : grid) {
      double violation = 0.0;
      if (u > tol && u < alpha - tol) violation = model.f(u);    // should be < 0
      else if (u > alpha + tol && u < 1.0 - tol) violation = -model.f(u);  // f should be > 0
      if (violation > worst) {
        worst = violation;
        worst_u = u;
      }
    }
    c.pass = worst <= tol;
    c.witness_u = worst_u;
    c.witness_value = model.f(worst_u);
    report.clauses.push_back(c);
  }
  {
    HypothesisClause c{"damping-positivity", true, 0.0, 0.0};
    double gmin = std::numeric_limits<double>::infinity();
    double u_at = 0.0;
    for (double u : grid) {
      const double v = model.g(u);
      if (v < gmin) {
        gmin = v;
        u_at = u;
      }
    }
    c.pass = gmin >= model.delta0();
    c.witness_u = u_at;
    c.witness_value = gmin;
    report.clauses.push_back(c);
  }
  if (model.damping().kind == DampingKind::CattaneoMaxwell) {
    HypothesisClause c{"relaxation-admissibility", true, 0.0, 0.0};
    const double tau_m = model.tau_admissible_bound();
    c.pass = model.tau() < tau_m;
    // witness: maximizer of f' (the u that first loses damping positivity)
    double fp_max = -std::numeric_limits<double>::infinity();
    for (double u : grid) {
      const double v = model.fp(u);
      if (v > fp_max) {
        fp_max = v;
        c.witness_u = u;
      }
    }
    c.witness_value = tau_m;
    report.clauses.push_back(c);
  }
  return report;
}

// Convenience constructors for the two model families used throughout.
inline Model make_cubic_model(double alpha, double kappa, DampingKind damping, double tau,
                              double delta0 = 1e-6) {
  ReactionSpec r;
  r.kind = ReactionKind::Cubic;
  r.alpha = alpha;
  r.kappa = kappa;
  DampingSpec d;
  d.kind = damping;
  return Model(std::move(r), std::move(d), tau, delta0);
}

}  // namespace frontlab
