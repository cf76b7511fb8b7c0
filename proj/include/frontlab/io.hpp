#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "errors.hpp"
#include "evans.hpp"
#include "model.hpp"
#include "profile.hpp"
#include "resolvent.hpp"
#include "spectrum.hpp"
#include "timestepper.hpp"

namespace frontlab::io {

using json = nlohmann::json;

// round-trip-exact float to text
inline std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output file: " + path.string());
  out << content;
}

inline std::string profile_csv(const FrontProfile& front) {
  std::string s;
  s += "# gamma_star=" + fmt(front.gamma_star) + "\n";
  s += "# c_star=" + fmt(front.c_star) + "\n";
  s += "# tau=" + fmt(front.tau) + "\n";
  s += "# eta_minus=" + fmt(front.eta_minus) + "\n";
  s += "# eta_plus=" + fmt(front.eta_plus) + "\n";
  s += "xi,U,Ux,Uxx\n";
  for (std::size_t i = 0; i < front.xi.size(); ++i)
    s += fmt(front.xi[i]) + "," + fmt(front.U[i]) + "," + fmt(front.Ux[i]) + "," +
         fmt(front.Uxx[i]) + "\n";
  return s;
}

inline std::string manifold_csv(const std::vector<ManifoldTrace>& traces) {
  std::string s = "gamma,side,V,W\n";
  for (const auto& tr : traces) {
    const char* side = (tr.side == ManifoldSide::UnstableFromZero) ? "unstable-from-zero"
                                                                   : "stable-from-one";
    for (std::size_t i = 0; i < tr.V.size(); ++i)
      s += fmt(tr.gamma) + "," + side + "," + fmt(tr.V[i]) + "," + fmt(tr.omega[i]) + "\n";
  }
  return s;
}

inline std::string dispersion_csv(const DispersionCurve& curve) {
  const char* side = (curve.side == Side::Minus) ? "minus" : "plus";
  std::string s = "xi,re_lambda,im_lambda,side,branch\n";
  for (std::size_t i = 0; i < curve.xi.size(); ++i)
    s += fmt(curve.xi[i]) + "," + fmt(curve.lambda[i].real()) + "," +
         fmt(curve.lambda[i].imag()) + "," + side + "," + std::to_string(curve.branch) + "\n";
  return s;
}

inline json hypothesis_json(const HypothesisReport& report) {
  json arr = json::array();
  for (const auto& c : report.clauses)
    arr.push_back({{"name", c.name},
                   {"pass", c.pass},
                   {"witness_u", c.witness_u},
                   {"witness_value", c.witness_value}});
  return arr;
}

inline json gap_json(const SpectralGap& gap) {
  return {{"chi0", gap.chi0},
          {"chi0_minus", gap.chi0_minus},
          {"chi0_plus", gap.chi0_plus},
          {"regime_minus", gap_regime_name(gap.regime_minus)},
          {"regime_plus", gap_regime_name(gap.regime_plus)}};
}

inline json evans_json(const EvansReport& report) {
  json samples = json::array();
  for (std::size_t i = 0; i < report.contour.size(); ++i)
    samples.push_back({{"re_lambda", report.contour[i].real()},
                       {"im_lambda", report.contour[i].imag()},
                       {"re_d", report.D_samples[i].real()},
                       {"im_d", report.D_samples[i].imag()}});
  return {{"winding", report.winding},
          {"min_abs_on_contour", report.min_abs_on_contour},
          {"melnikov_gamma", report.melnikov_gamma},
          {"samples", samples}};
}

inline std::string evans_contour_csv(const EvansReport& report) {
  std::string s = "re_lambda,im_lambda,re_d,im_d,abs_d\n";
  for (std::size_t i = 0; i < report.contour.size(); ++i)
    s += fmt(report.contour[i].real()) + "," + fmt(report.contour[i].imag()) + "," +
         fmt(report.D_samples[i].real()) + "," + fmt(report.D_samples[i].imag()) + "," +
         fmt(std::abs(report.D_samples[i])) + "\n";
  return s;
}

inline json resolvent_records_json(const ResolventReport& report) {
  json arr = json::array();
  for (const auto& r : report.records)
    arr.push_back({{"re_lambda", r.lambda.real()},
                   {"im_lambda", r.lambda.imag()},
                   {"ratio_vuprime", r.ratio_vuprime},
                   {"ratio_uell2", r.ratio_uell2}});
  return arr;
}

inline json resolvent_meta_json(const ResolventReport& report) {
  return {{"fitted_M", report.fitted_M},
          {"theta0", report.theta0},
          {"max_ratio_vuprime", report.max_ratio_vuprime},
          {"max_ratio_uell2", report.max_ratio_uell2},
          {"decay_slope", report.decay_slope},
          {"decay_constant", report.decay_constant},
          {"perturbation_scale", report.perturbation_scale},
          {"seed", report.seed},
          {"grid_points", report.grid_points},
          {"trials", report.trials}};
}

inline std::string simulation_csv(const Trajectory& traj) {
  std::string s = "# frame_speed=" + fmt(traj.frame_speed) + "\n";
  s += "t";
  for (double xv : traj.x) s += "," + fmt(xv);
  s += "\n";
  for (std::size_t k = 0; k < traj.t.size(); ++k) {
    s += fmt(traj.t[k]);
    for (double uv : traj.u[k]) s += "," + fmt(uv);
    s += "\n";
  }
  return s;
}

}  // namespace frontlab::io
