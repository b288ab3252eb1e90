#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "softfoot/experiment.hpp"

namespace softfoot::lab {

/// Shortest round-trip decimal form of a double (17 significant digits are
/// recoverable bit-exactly on re-import).
std::string format_double(double value);

/// Parses a double written by format_double.
double parse_double(const std::string& text);

/// Sweep table CSV: header
/// swept_value_m,cop_m,ankle_comp_rad,F1_N,F2_N,F3_N,T_N,admissible
void write_sweep_csv(const SweepTable& table, const std::filesystem::path& path);
SweepTable read_sweep_csv(const std::filesystem::path& path);

/// Compliance map CSV: header e_bar,e0,load_kg,compliance_m_per_N with rows
/// ordered by load, then e0, then e_bar (all ascending as given).
void write_map_csv(const ComplianceMap& map, const std::filesystem::path& path);

struct MapRow {
  double e_bar = 0.0, e0 = 0.0, load_kg = 0.0, compliance = 0.0;
};
std::vector<MapRow> read_map_csv(const std::filesystem::path& path);

/// Gallery CSV: load_kg,node_index,x_m,y_m polylines plus the ankle point
/// (node_index -1) per load.
void write_gallery_csv(const Gallery& gallery, const std::filesystem::path& path);

}  // namespace softfoot::lab
