#include <CLI11.hpp>
#include <frontlab/frontlab.hpp>

#include <cstdint>
#include <iostream>
#include <string>

int main(int argc, char** argv) {
  CLI::App app{"traveling fronts of damped nonlinear wave equations: construction and stability"};
  app.name("frontlab");

  std::string command;
  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool seed_set = false;

  app.add_option("command", command,
                 "one of: validate front spectrum gap evans resolvent simulate all");
  app.add_option("--config", config_path, "JSON configuration file");
  app.add_option("--out", out_dir, "output directory override");
  auto* seed_opt = app.add_option("--seed", seed, "random-seed override");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  seed_set = seed_opt->count() > 0;

  if (command.empty()) {
    std::cout << frontlab::usage_text();
    return 1;
  }

  try {
    if (config_path.empty()) throw frontlab::ConfigError("--config is required");
    frontlab::RunConfig cfg = frontlab::load_config(config_path);
    cfg.command = command;  // the positional always wins over the config body
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (seed_set) cfg.seed = seed;
    if (!frontlab::detail_cli::known_commands().count(cfg.command)) {
      std::cerr << "frontlab: unknown command \"" << cfg.command << "\"\n" << frontlab::usage_text();
      return 1;
    }
    return frontlab::run(cfg);
  } catch (const frontlab::ConfigError& e) {
    std::cerr << "frontlab: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "frontlab: numerical failure: " << e.what() << "\n";
    return 3;
  }
}
