#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "errors.hpp"
#include "evans.hpp"
#include "io.hpp"
#include "model.hpp"
#include "profile.hpp"
#include "resolvent.hpp"
#include "spectrum.hpp"
#include "timestepper.hpp"

namespace frontlab {

using nlohmann::json;

// Run configuration: a single JSON document.  Unknown keys are rejected by
// name; tolerance-like overrides must be positive.  A previously written
// summary document can be fed back as a config: its embedded resolved
// "config" object is used, which reproduces the original outputs.

struct RunConfig {
  std::string command = "all";
  std::string out_dir = "out";
  std::uint64_t seed = 20240901ull;

  // model
  ReactionSpec reaction;
  DampingSpec damping;
  double tau = 1.0;
  double delta0 = 1e-6;

  // front
  std::size_t front_points = 4097;
  double front_half_length = 0.0;  // 0 -> decay-informed default
  double front_xi0 = 0.0;

  // spectrum
  double xi_max = 50.0;
  double xi_step = 0.01;

  // evans
  double circle_radius = 0.05;
  std::size_t circle_points = 128;
  double rect_re_hi = 1.0;
  double rect_im = 2.0;
  std::size_t rect_per_edge = 64;

  // resolvent
  std::size_t resolvent_trials = 8;
  std::size_t resolvent_points = 1025;
  std::size_t rhs_base_points = 257;

  // simulate
  double sim_horizon = 40.0;
  std::size_t sim_snapshots = 80;
  double sim_amplitude = 1e-3;
  double sim_bump_width = 3.0;
  std::size_t sim_points = 1025;
  double lab_half_length = 30.0;
  std::size_t lab_points = 2048;
  double lab_horizon = 40.0;

  std::vector<double> manifold_gammas;
};

namespace detail_cli {

inline const std::set<std::string>& known_commands() {
  static const std::set<std::string> cmds = {"validate", "front",     "spectrum", "gap",
                                             "evans",    "resolvent", "simulate", "all"};
  return cmds;
}

inline void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                                const std::string& section) {
  for (const auto& item : obj.items())
    if (!allowed.count(item.key()))
      throw ConfigError("unknown key \"" + item.key() + "\" in " + section);
}

inline double positive(const json& v, const std::string& key) {
  const double x = v.get<double>();
  if (!(x > 0.0)) throw ConfigError("config value \"" + key + "\" must be positive");
  return x;
}

inline std::size_t positive_int(const json& v, const std::string& key) {
  const auto x = v.get<std::int64_t>();
  if (x <= 0) throw ConfigError("config value \"" + key + "\" must be a positive integer");
  return static_cast<std::size_t>(x);
}

inline std::vector<double> double_list(const json& v, const std::string& key) {
  if (!v.is_array()) throw ConfigError("config value \"" + key + "\" must be an array of numbers");
  std::vector<double> out;
  for (const auto& e : v) out.push_back(e.get<double>());
  return out;
}

inline void parse_reaction(const json& r, RunConfig& cfg) {
  reject_unknown_keys(r, {"kind", "alpha", "kappa", "u", "f", "fp"}, "model.reaction");
  const std::string kind = r.value("kind", std::string("cubic"));
  if (kind == "cubic") {
    cfg.reaction.kind = ReactionKind::Cubic;
    if (r.contains("alpha")) cfg.reaction.alpha = r.at("alpha").get<double>();
    if (r.contains("kappa")) cfg.reaction.kappa = positive(r.at("kappa"), "model.reaction.kappa");
  } else if (kind == "custom-sampled") {
    cfg.reaction.kind = ReactionKind::CustomSampled;
    if (!r.contains("u") || !r.contains("f") || !r.contains("fp"))
      throw ConfigError("custom-sampled reaction needs \"u\", \"f\", \"fp\" arrays");
    cfg.reaction.nodes_u = double_list(r.at("u"), "model.reaction.u");
    cfg.reaction.nodes_f = double_list(r.at("f"), "model.reaction.f");
    cfg.reaction.nodes_fp = double_list(r.at("fp"), "model.reaction.fp");
  } else {
    throw ConfigError("unknown reaction kind \"" + kind + "\"");
  }
}

inline void parse_damping(const json& d, RunConfig& cfg) {
  reject_unknown_keys(d, {"kind", "u", "g", "gu"}, "model.damping");
  const std::string kind = d.value("kind", std::string("constant-one"));
  if (kind == "constant-one") {
    cfg.damping.kind = DampingKind::ConstantOne;
  } else if (kind == "cattaneo-maxwell") {
    cfg.damping.kind = DampingKind::CattaneoMaxwell;
  } else if (kind == "custom-sampled") {
    cfg.damping.kind = DampingKind::Custom;
    if (!d.contains("u") || !d.contains("g") || !d.contains("gu"))
      throw ConfigError("custom-sampled damping needs \"u\", \"g\", \"gu\" arrays");
    cfg.damping.nodes_u = double_list(d.at("u"), "model.damping.u");
    cfg.damping.nodes_g = double_list(d.at("g"), "model.damping.g");
    cfg.damping.nodes_gu = double_list(d.at("gu"), "model.damping.gu");
  } else {
    throw ConfigError("unknown damping kind \"" + kind + "\"");
  }
}

}  // namespace detail_cli

inline RunConfig parse_config(const json& doc) {
  using namespace detail_cli;
  // a summary document round-trips through its embedded resolved config
  if (doc.is_object() && doc.contains("config") && doc.contains("hypothesis_report"))
    return parse_config(doc.at("config"));

  if (!doc.is_object()) throw ConfigError("config root must be a JSON object");
  reject_unknown_keys(doc,
                      {"command", "out_dir", "seed", "model", "front", "spectrum", "evans",
                       "resolvent", "simulate", "manifold_gammas"},
                      "config root");
  RunConfig cfg;
  if (doc.contains("command")) {
    cfg.command = doc.at("command").get<std::string>();
    if (!known_commands().count(cfg.command))
      throw ConfigError("unknown command \"" + cfg.command + "\"");
  }
  if (doc.contains("out_dir")) cfg.out_dir = doc.at("out_dir").get<std::string>();
  if (doc.contains("seed")) cfg.seed = doc.at("seed").get<std::uint64_t>();

  if (doc.contains("model")) {
    const auto& m = doc.at("model");
    reject_unknown_keys(m, {"reaction", "damping", "tau", "delta0"}, "model");
    if (m.contains("tau")) {
      cfg.tau = m.at("tau").get<double>();
      if (cfg.tau < 0.0) throw ConfigError("config value \"model.tau\" must be >= 0");
    }
    if (m.contains("delta0")) cfg.delta0 = positive(m.at("delta0"), "model.delta0");
    if (m.contains("reaction")) parse_reaction(m.at("reaction"), cfg);
    if (m.contains("damping")) parse_damping(m.at("damping"), cfg);
  }

  if (doc.contains("front")) {
    const auto& f = doc.at("front");
    reject_unknown_keys(f, {"points", "half_length", "xi0"}, "front");
    if (f.contains("points")) cfg.front_points = positive_int(f.at("points"), "front.points");
    if (f.contains("half_length")) {
      cfg.front_half_length = f.at("half_length").get<double>();
      if (cfg.front_half_length < 0.0)
        throw ConfigError("config value \"front.half_length\" must be >= 0");
    }
    if (f.contains("xi0")) cfg.front_xi0 = f.at("xi0").get<double>();
  }

  if (doc.contains("spectrum")) {
    const auto& s = doc.at("spectrum");
    reject_unknown_keys(s, {"xi_max", "xi_step"}, "spectrum");
    if (s.contains("xi_max")) cfg.xi_max = positive(s.at("xi_max"), "spectrum.xi_max");
    if (s.contains("xi_step")) cfg.xi_step = positive(s.at("xi_step"), "spectrum.xi_step");
  }

  if (doc.contains("evans")) {
    const auto& e = doc.at("evans");
    reject_unknown_keys(e, {"circle_radius", "circle_points", "rect_re_hi", "rect_im", "per_edge"},
                        "evans");
    if (e.contains("circle_radius"))
      cfg.circle_radius = positive(e.at("circle_radius"), "evans.circle_radius");
    if (e.contains("circle_points"))
      cfg.circle_points = positive_int(e.at("circle_points"), "evans.circle_points");
    if (e.contains("rect_re_hi")) cfg.rect_re_hi = positive(e.at("rect_re_hi"), "evans.rect_re_hi");
    if (e.contains("rect_im")) cfg.rect_im = positive(e.at("rect_im"), "evans.rect_im");
    if (e.contains("per_edge")) cfg.rect_per_edge = positive_int(e.at("per_edge"), "evans.per_edge");
  }

  if (doc.contains("resolvent")) {
    const auto& r = doc.at("resolvent");
    reject_unknown_keys(r, {"trials", "grid_points", "rhs_base_points"}, "resolvent");
    if (r.contains("trials")) cfg.resolvent_trials = positive_int(r.at("trials"), "resolvent.trials");
    if (r.contains("grid_points"))
      cfg.resolvent_points = positive_int(r.at("grid_points"), "resolvent.grid_points");
    if (r.contains("rhs_base_points"))
      cfg.rhs_base_points = positive_int(r.at("rhs_base_points"), "resolvent.rhs_base_points");
  }

  if (doc.contains("simulate")) {
    const auto& s = doc.at("simulate");
    reject_unknown_keys(s,
                        {"horizon", "snapshots", "amplitude", "bump_width", "points",
                         "lab_half_length", "lab_points", "lab_horizon"},
                        "simulate");
    if (s.contains("horizon")) cfg.sim_horizon = positive(s.at("horizon"), "simulate.horizon");
    if (s.contains("snapshots"))
      cfg.sim_snapshots = positive_int(s.at("snapshots"), "simulate.snapshots");
    if (s.contains("amplitude"))
      cfg.sim_amplitude = positive(s.at("amplitude"), "simulate.amplitude");
    if (s.contains("bump_width"))
      cfg.sim_bump_width = positive(s.at("bump_width"), "simulate.bump_width");
    if (s.contains("points")) cfg.sim_points = positive_int(s.at("points"), "simulate.points");
    if (s.contains("lab_half_length"))
      cfg.lab_half_length = positive(s.at("lab_half_length"), "simulate.lab_half_length");
    if (s.contains("lab_points"))
      cfg.lab_points = positive_int(s.at("lab_points"), "simulate.lab_points");
    if (s.contains("lab_horizon"))
      cfg.lab_horizon = positive(s.at("lab_horizon"), "simulate.lab_horizon");
  }

  if (doc.contains("manifold_gammas"))
    cfg.manifold_gammas = detail_cli::double_list(doc.at("manifold_gammas"), "manifold_gammas");

  return cfg;
}

inline RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    // translate byte offset into a line number for the diagnostic
    std::size_t line = 1;
    for (std::size_t i = 0; i < std::min(text.size(), static_cast<std::size_t>(e.byte)); ++i)
      if (text[i] == '\n') ++line;
    throw ConfigError("malformed config " + path.string() + " at line " + std::to_string(line) +
                      ": " + e.what());
  }
  return parse_config(doc);
}

inline json resolved_config_json(const RunConfig& cfg) {
  json reaction;
  if (cfg.reaction.kind == ReactionKind::Cubic) {
    reaction = {{"kind", "cubic"}, {"alpha", cfg.reaction.alpha}, {"kappa", cfg.reaction.kappa}};
  } else {
    reaction = {{"kind", "custom-sampled"},
                {"u", cfg.reaction.nodes_u},
                {"f", cfg.reaction.nodes_f},
                {"fp", cfg.reaction.nodes_fp}};
  }
  json damping;
  switch (cfg.damping.kind) {
    case DampingKind::ConstantOne: damping = {{"kind", "constant-one"}}; break;
    case DampingKind::CattaneoMaxwell: damping = {{"kind", "cattaneo-maxwell"}}; break;
    case DampingKind::Custom:
      damping = {{"kind", "custom-sampled"},
                 {"u", cfg.damping.nodes_u},
                 {"g", cfg.damping.nodes_g},
                 {"gu", cfg.damping.nodes_gu}};
      break;
  }
  return {{"command", cfg.command},
          {"out_dir", cfg.out_dir},
          {"seed", cfg.seed},
          {"model",
           {{"reaction", reaction}, {"damping", damping}, {"tau", cfg.tau}, {"delta0", cfg.delta0}}},
          {"front",
           {{"points", cfg.front_points},
            {"half_length", cfg.front_half_length},
            {"xi0", cfg.front_xi0}}},
          {"spectrum", {{"xi_max", cfg.xi_max}, {"xi_step", cfg.xi_step}}},
          {"evans",
           {{"circle_radius", cfg.circle_radius},
            {"circle_points", cfg.circle_points},
            {"rect_re_hi", cfg.rect_re_hi},
            {"rect_im", cfg.rect_im},
            {"per_edge", cfg.rect_per_edge}}},
          {"resolvent",
           {{"trials", cfg.resolvent_trials},
            {"grid_points", cfg.resolvent_points},
            {"rhs_base_points", cfg.rhs_base_points}}},
          {"simulate",
           {{"horizon", cfg.sim_horizon},
            {"snapshots", cfg.sim_snapshots},
            {"amplitude", cfg.sim_amplitude},
            {"bump_width", cfg.sim_bump_width},
            {"points", cfg.sim_points},
            {"lab_half_length", cfg.lab_half_length},
            {"lab_points", cfg.lab_points},
            {"lab_horizon", cfg.lab_horizon}}},
          {"manifold_gammas", cfg.manifold_gammas}};
}

inline Model build_model(const RunConfig& cfg) {
  return Model(cfg.reaction, cfg.damping, cfg.tau, cfg.delta0);
}

struct RunResults {
  std::optional<HypothesisReport> hypotheses;
  std::optional<FrontProfile> front;
  std::vector<ManifoldTrace> manifold;
  std::optional<SpectralGap> gap;
  std::vector<DispersionCurve> dispersion;
  std::optional<EvansReport> evans_report;
  std::optional<int> winding_origin;
  std::optional<int> winding_region;
  std::optional<double> melnikov;
  std::optional<ResolventReport> resolvent;
  std::optional<Trajectory> trajectory;
  std::optional<DecayMeasurement> decay;
  std::optional<double> measured_speed;
  std::vector<std::string> notes;
};

// Writes the plot-data files for one result kind.  Throws DependencyError when
// the corresponding computation has not been run.
inline void emit_plot_data(const RunResults& results, const std::string& kind,
                           const std::filesystem::path& out_dir) {
  if (kind == "profile") {
    if (!results.front) throw DependencyError("emit_plot_data: profile not computed");
    io::write_file(out_dir / "profile.csv", io::profile_csv(*results.front));
    if (!results.manifold.empty())
      io::write_file(out_dir / "manifold.csv", io::manifold_csv(results.manifold));
    return;
  }
  if (kind == "dispersion") {
    if (results.dispersion.empty()) throw DependencyError("emit_plot_data: dispersion not computed");
    for (const auto& curve : results.dispersion) {
      const std::string side = (curve.side == Side::Minus) ? "minus" : "plus";
      const std::string name = "dispersion_" + side + "_c" + std::to_string(curve.branch) + ".csv";
      io::write_file(out_dir / name, io::dispersion_csv(curve));
    }
    return;
  }
  if (kind == "evans-contour") {
    if (!results.evans_report) throw DependencyError("emit_plot_data: evans contour not computed");
    io::write_file(out_dir / "evans_contour.csv", io::evans_contour_csv(*results.evans_report));
    return;
  }
  if (kind == "simulation") {
    if (!results.trajectory) throw DependencyError("emit_plot_data: simulation not computed");
    io::write_file(out_dir / "simulation.csv", io::simulation_csv(*results.trajectory));
    return;
  }
  throw DomainError("emit_plot_data: unknown kind \"" + kind + "\"");
}

namespace detail_cli {

inline FrontProfile compute_front(const Model& model, const RunConfig& cfg,
                                  std::size_t points_override = 0) {
  const double gamma_star = find_gamma_star(model);
  GridSpec grid;
  grid.points = points_override ? points_override : cfg.front_points;
  grid.half_length = cfg.front_half_length;
  grid.xi0 = cfg.front_xi0;
  return reconstruct_profile(model, gamma_star, grid);
}

inline void run_spectrum(const Model& model, const RunConfig& cfg, RunResults& res) {
  const auto data = asymptotic_data(model, *res.front);
  res.gap = spectral_gap(data);
  std::vector<double> grid;
  const std::size_t n = static_cast<std::size_t>(std::round(2.0 * cfg.xi_max / cfg.xi_step)) + 1;
  grid.reserve(n);
  for (std::size_t i = 0; i < n; ++i) grid.push_back(-cfg.xi_max + static_cast<double>(i) * cfg.xi_step);
  for (Side side : {Side::Minus, Side::Plus}) {
    auto [c1, c2] = dispersion_curves(data, side, grid);
    res.dispersion.push_back(std::move(c1));
    if (!c2.xi.empty()) res.dispersion.push_back(std::move(c2));
  }
}

inline void run_evans(const Model& model, const RunConfig& cfg, RunResults& res) {
  const CoefficientFields fields(model, *res.front);
  if (!res.gap) res.gap = spectral_gap(fields.limits());
  const auto circle = circle_contour(Complex(0.0, 0.0), cfg.circle_radius, cfg.circle_points);
  const auto wc = winding_number_detailed(fields, circle);
  const auto rect = rectangle_contour(-0.5 * res.gap->chi0, cfg.rect_re_hi, -cfg.rect_im,
                                      cfg.rect_im, cfg.rect_per_edge);
  auto wr = winding_number_of([&](Complex l) { return evans(fields, l); }, rect);
  res.winding_origin = wc.winding;
  res.winding_region = wr.winding - wc.winding;
  res.melnikov = melnikov_gamma(fields, *res.front);

  EvansReport rep;
  rep.contour = std::move(wr.lambdas);
  rep.D_samples = std::move(wr.values);
  rep.winding = wr.winding;
  rep.min_abs_on_contour = wr.min_abs;
  rep.melnikov_gamma = *res.melnikov;
  res.evans_report = std::move(rep);
}

inline void run_resolvent(const Model& model, const RunConfig& cfg, RunResults& res) {
  GridSpec grid;
  grid.points = cfg.resolvent_points;
  FrontProfile stat = reconstruct_profile(model, res.front->gamma_star, grid);
  const auto problem = make_resolvent_problem(model, stat);
  ResolventOptions opt;
  opt.trials = cfg.resolvent_trials;
  opt.seed = cfg.seed;
  opt.rhs_base_points = cfg.rhs_base_points;
  res.resolvent = verify_bounds(problem, opt);
}

inline void run_simulate(const Model& model, const RunConfig& cfg, RunResults& res) {
  // co-moving decay experiment on a simulation-sized front grid
  GridSpec grid;
  grid.points = cfg.sim_points;
  FrontProfile simfront = reconstruct_profile(model, res.front->gamma_star, grid);
  if (!res.gap) res.gap = spectral_gap(asymptotic_data(model, simfront));
  const auto bump = bump_perturbation(simfront.xi, cfg.sim_amplitude, cfg.sim_bump_width);
  res.decay = measure_decay_rate(model, simfront, bump, cfg.sim_horizon, res.gap->chi0,
                                 cfg.sim_snapshots);

  // lab-frame speed experiment
  std::vector<double> x(cfg.lab_points), u0(cfg.lab_points), ut0(cfg.lab_points);
  const double dxl = 2.0 * cfg.lab_half_length / static_cast<double>(cfg.lab_points - 1);
  for (std::size_t i = 0; i < cfg.lab_points; ++i) {
    x[i] = -cfg.lab_half_length + dxl * static_cast<double>(i);
    u0[i] = simfront.interp->U(x[i]);
    ut0[i] = -simfront.c_star * simfront.interp->Ux(x[i]);
  }
  SimState lab = make_sim_state(std::move(x), std::move(u0), std::move(ut0), 0.0);
  Trajectory traj = run_simulation(std::move(lab), model, cfg.lab_horizon, cfg.sim_snapshots);
  res.measured_speed = measure_front_speed(traj, model);
  res.trajectory = std::move(traj);
}

}  // namespace detail_cli

inline json summary_json(const RunConfig& cfg, const RunResults& res) {
  json s;
  s["command"] = cfg.command;
  s["seed"] = cfg.seed;
  s["config"] = resolved_config_json(cfg);
  s["hypothesis_report"] =
      res.hypotheses ? io::hypothesis_json(*res.hypotheses) : json(nullptr);
  s["gamma_star"] = res.front ? json(res.front->gamma_star) : json(nullptr);
  s["c_star"] = res.front ? json(res.front->c_star) : json(nullptr);
  s["chi0"] = res.gap ? json(res.gap->chi0) : json(nullptr);
  s["winding_origin"] = res.winding_origin ? json(*res.winding_origin) : json(nullptr);
  s["winding_stability_region"] = res.winding_region ? json(*res.winding_region) : json(nullptr);
  s["melnikov_gamma"] = res.melnikov ? json(*res.melnikov) : json(nullptr);
  s["resolvent"] = res.resolvent ? io::resolvent_meta_json(*res.resolvent) : json(nullptr);
  if (res.decay || res.measured_speed) {
    json sim;
    sim["measured_speed"] = res.measured_speed ? json(*res.measured_speed) : json(nullptr);
    sim["fitted_decay_rate"] = res.decay ? json(res.decay->fitted_rate) : json(nullptr);
    sim["decay_over_chi0"] = res.decay ? json(res.decay->ratio) : json(nullptr);
    s["simulation"] = sim;
  } else {
    s["simulation"] = nullptr;
  }
  s["notes"] = res.notes;
  return s;
}

// Executes a parsed configuration.  Returns the process exit code:
// 0 success, 1 malformed config (thrown before this point normally),
// 2 hypothesis failure, 3 numerical failure.
inline int run(const RunConfig& cfg, std::ostream& err = std::cerr) {
  const std::filesystem::path out_dir(cfg.out_dir);
  RunResults res;
  try {
    const Model model = build_model(cfg);
    res.hypotheses = validate_hypotheses(model);
    if (!res.hypotheses->all_pass()) {
      io::write_file(out_dir / "summary.json", summary_json(cfg, res).dump(2) + "\n");
      err << "frontlab: structural hypotheses failed (see summary.json)\n";
      return 2;
    }
    if (cfg.command != "validate") {
      res.front = detail_cli::compute_front(model, cfg);
      for (double g : cfg.manifold_gammas)
        res.manifold.push_back(trace_manifold(model, g, ManifoldSide::UnstableFromZero));

      const bool want_all = cfg.command == "all";
      if (want_all || cfg.command == "spectrum" || cfg.command == "gap")
        detail_cli::run_spectrum(model, cfg, res);
      if (want_all || cfg.command == "evans") detail_cli::run_evans(model, cfg, res);
      if (cfg.command == "resolvent") {
        detail_cli::run_resolvent(model, cfg, res);
      } else if (want_all) {
        if (std::abs(res.front->c_star) <= 1e-8)
          detail_cli::run_resolvent(model, cfg, res);
        else
          res.notes.push_back("resolvent skipped: front is not stationary (c != 0)");
      }
      if (want_all || cfg.command == "simulate") detail_cli::run_simulate(model, cfg, res);

      if (cfg.command == "front" || want_all) emit_plot_data(res, "profile", out_dir);
      if (!res.dispersion.empty()) {
        emit_plot_data(res, "dispersion", out_dir);
        io::write_file(out_dir / "gap.json", io::gap_json(*res.gap).dump(2) + "\n");
      }
      if (res.evans_report) {
        emit_plot_data(res, "evans-contour", out_dir);
        io::write_file(out_dir / "evans.json", io::evans_json(*res.evans_report).dump(2) + "\n");
      }
      if (res.resolvent)
        io::write_file(out_dir / "resolvent.json",
                       io::resolvent_records_json(*res.resolvent).dump(2) + "\n");
      if (res.trajectory) emit_plot_data(res, "simulation", out_dir);
    }
    io::write_file(out_dir / "summary.json", summary_json(cfg, res).dump(2) + "\n");
    return 0;
  } catch (const ConfigError& e) {
    err << "frontlab: " << e.what() << "\n";
    return 1;
  } catch (const AdmissibilityError& e) {
    err << "frontlab: hypothesis failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "frontlab: numerical failure: " << e.what() << "\n";
    return 3;
  }
}

inline const char* usage_text() {
  return "usage: frontlab <command> --config <path> [--out <dir>] [--seed <n>]\n"
         "  commands: validate front spectrum gap evans resolvent simulate all\n"
         "  --config  JSON configuration file (required)\n"
         "  --out     output directory override\n"
         "  --seed    random-seed override (recorded in summary.json)\n";
}

}  // namespace frontlab
