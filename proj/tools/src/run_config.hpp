#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "softfoot/experiment.hpp"

namespace softfoot::cli {

struct MapGridSpec {
  double e_bar_min = 1.0, e_bar_max = 6.0;
  int e_bar_count = 20;
  double e0_min = 1.0, e0_max = 6.0;
  int e0_count = 20;
  std::vector<double> loads_kg = {0.0, 1.5};

  std::vector<double> e_bar_values() const;
  std::vector<double> e0_values() const;
};

/// Fully validated run configuration. Every omitted key is filled with the
/// nominal default and echoed in `provenance`.
struct RunConfig {
  std::string units = "m";  // accepted: m | mm (geometric lengths only)
  std::filesystem::path out_dir = "out";
  unsigned seed = 0;        // consumed only by randomized property helpers

  model::SoftFootParams softfoot = model::SoftFootParams::nominal();
  model::FootLoad load{1.5 * kGravity};
  planar::RigidFootScenario rigid{0.219, 0.25, 0.0, 0.0, 0.6};
  planar::CompliantLumpedParams compliant{2000.0, 0.219, 15.0, 1.53, kGravity, 0.25};
  planar::AdaptiveArchParams adaptive{0.2, 15.0, 0.1, M_PI / 6, M_PI / 6, M_PI / 6};

  lab::TerrainProfile terrain;       // default flat
  bool terrain_catalog_all = false;  // terrain: "catalog"
  lab::SweepSpec sweep{lab::FootModelKind::softfoot, lab::SweptParameter::load_arm,
                       0.004, 0.1, 0.002, 0.6, 15.0};
  bool sweep_all_feet = false;       // sweep.foot_model: "all"
  MapGridSpec map;
  std::vector<double> gallery_loads_kg = {0,  5,  10, 15, 20, 25, 30,
                                          35, 40, 45, 50, 55, 60};

  std::vector<std::string> provenance;  // one line per applied default
};

/// Parses a JSON config file (schema 1) plus `key.path=value` overrides.
/// Unknown keys are rejected by name; geometric lengths are converted to
/// meters when units is "mm"; all values are validated after conversion.
RunConfig parse_config(const std::optional<std::filesystem::path>& path,
                       const std::vector<std::string>& overrides = {});

}  // namespace softfoot::cli
