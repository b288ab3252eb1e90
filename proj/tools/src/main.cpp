#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"
#include "run_config.hpp"

int main(int argc, char** argv) {
  CLI::App app{"softfoot-lab: statics of an adaptive tendon-driven foot and its planar references"};
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand

  std::optional<std::filesystem::path> config_path;
  std::vector<std::string> overrides;
  std::string out_dir;
  std::string units;
  int seed = -1;

  app.add_option("-c,--config", config_path, "JSON config file (schema 1)");
  app.add_option("--set", overrides, "override a config key, e.g. --set softfoot.L=0.02");
  app.add_option("--out", out_dir, "output directory (overrides config)");
  app.add_option("--units", units, "unit of geometric lengths in the config: m or mm");
  app.add_option("--seed", seed, "seed for randomized property helpers");

  auto* equilibrium = app.add_subcommand("equilibrium", "solve the articulated-foot statics");
  auto* linearize = app.add_subcommand("linearize", "nonlinear vs linear vs closed-form");
  auto* map = app.add_subcommand("compliance-map", "compliance over a stiffness grid");
  auto* sweep = app.add_subcommand("tilt-sweep", "quasi-static support sweeps per foot/terrain");
  auto* planar = app.add_subcommand("planar-compare", "planar reference-model evaluations");
  auto* gallery = app.add_subcommand("gallery", "equilibrium shapes over a load sequence");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    // Flags override file keys.
    if (!units.empty()) overrides.push_back("units=" + units);
    if (!out_dir.empty()) overrides.push_back("out=" + out_dir);
    if (seed >= 0) overrides.push_back("seed=" + std::to_string(seed));
    const auto cfg = softfoot::cli::parse_config(config_path, overrides);

    if (equilibrium->parsed()) return softfoot::cli::cmd_equilibrium(cfg);
    if (linearize->parsed()) return softfoot::cli::cmd_linearize(cfg);
    if (map->parsed()) return softfoot::cli::cmd_compliance_map(cfg);
    if (sweep->parsed()) return softfoot::cli::cmd_tilt_sweep(cfg);
    if (planar->parsed()) return softfoot::cli::cmd_planar_compare(cfg);
    if (gallery->parsed()) return softfoot::cli::cmd_gallery(cfg);
    std::cerr << "no subcommand selected\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
