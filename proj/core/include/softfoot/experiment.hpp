#pragma once

#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "softfoot/foot_model.hpp"
#include "softfoot/linear_model.hpp"
#include "softfoot/planar.hpp"

namespace softfoot::lab {

enum class TerrainKind { flat, step, bump, ridge, custom };

/// One ground feature the sole can rest on (a bar top, a step edge, ...).
struct TerrainFeature {
  double position = 0.0;  // [m from heel placement]
  double height = 0.0;    // [m]
};

/// Piecewise terrain description plus the single-scalar equivalent used by
/// the articulated-foot model (its ground constraint admits one height).
struct TerrainProfile {
  std::string name = "flat";
  TerrainKind kind = TerrainKind::flat;
  std::vector<TerrainFeature> features;  // positions strictly increasing
  bool plateau_after_last = false;       // last feature extends forward at its height
  double softfoot_delta = 0.0;           // [m]

  void validate() const;
  bool flat() const { return features.empty(); }
};

/// The eight default terrains used by the standing-stability experiment.
/// Dimensions are defaults, not measurements; every field is overridable.
std::vector<TerrainProfile> terrain_catalog();

enum class FootModelKind { rigid, compliant, softfoot };
enum class SweptParameter { load_arm, com_offset };

struct SweepSpec {
  FootModelKind foot_model = FootModelKind::rigid;
  SweptParameter parameter = SweptParameter::com_offset;
  double min = 0.0;   // [m]
  double max = 0.0;   // [m]
  double step = 0.0;  // [m]
  double ankle_limit = 0.5;  // theta_max [rad]
  double load = 15.0;        // P [N]

  void validate() const;
};

struct SweepRow {
  double swept = 0.0;       // [m]
  double cop = 0.0;         // [m from heel]
  double ankle_comp = 0.0;  // [rad]
  double f1 = 0.0, f2 = 0.0, f3 = 0.0, tension = 0.0;  // [N]
  bool admissible = false;
  std::string diagnostic;   // nonempty when the solve failed
};

struct SweepTable {
  std::vector<SweepRow> rows;
  double neutral_cop = 0.0;  // mid-footprint reference point [m]
  double footprint = 0.0;    // [m]
};

using FootParams =
    std::variant<planar::RigidFootScenario, planar::CompliantLumpedParams, model::SoftFootParams>;

/// Center of pressure of vertical contact forces on the flat base.
double cop_from_forces(const std::vector<double>& forces, const std::vector<double>& positions);

/// Quasi-static sweep: a sequence of independent static solves of the chosen
/// model. Solver failures mark the row inadmissible and the sweep continues.
SweepTable tilt_sweep(const SweepSpec& spec, const TerrainProfile& terrain,
                      const FootParams& foot);

/// Candidate resting poses of a rigid sole on a terrain profile.
struct TerrainPose {
  double tilt = 0.0;
  double support_lo = 0.0;
  double support_hi = 0.0;
};

std::vector<TerrainPose> rigid_poses_on_terrain(const TerrainProfile& terrain,
                                                double sole_length);

struct SupportInterval {
  double lo = 0.0;
  double hi = 0.0;
  double comp_min = 0.0;
  double comp_max = 0.0;
};

struct SupportReport {
  std::vector<SupportInterval> intervals;  // all contiguous admissible runs
  int primary = -1;                        // interval containing the neutral point
  double length = 0.0;                     // primary extent [m]
  double comp_min = 0.0, comp_max = 0.0;   // over the primary interval
  std::string diagnostic;
};

/// Contiguous admissible CoP intervals of a sweep. When a refiner is given
/// the interval endpoints are bisection-refined to `refine_tol` on the swept
/// parameter (the refiner re-solves one sweep point).
SupportReport support_length(const SweepTable& table,
                             const std::function<SweepRow(double)>& refiner = nullptr,
                             double refine_tol = 1e-6);

struct ComplianceMap {
  std::vector<double> e_bar;     // [N*m/rad]
  std::vector<double> e0;        // [N*m/rad]
  std::vector<double> loads_kg;  // [kg]
  // values[load_index](e0_index, e_bar_index); NaN marks a failed cell
  std::vector<Eigen::MatrixXd> values;
};

/// Compliance-to-compression over a stiffness grid for each load.
ComplianceMap compliance_map(const std::vector<double>& e_bar_grid,
                             const std::vector<double>& e0_grid,
                             const std::vector<double>& loads_kg,
                             const model::SoftFootParams& base);

struct GalleryEntry {
  double load_kg = 0.0;
  model::FootShape shape;
  double arch_height = 0.0;  // [m]
  double compression = 0.0;  // deviation-from-flat measure [m]
  bool solved = false;
  std::string diagnostic;
};

struct Gallery {
  std::vector<GalleryEntry> entries;
  bool arch_height_non_increasing = false;
};

/// Equilibrium shapes for an ascending load sequence, each solve warm-started
/// from the previous one.
Gallery configuration_gallery(const model::SoftFootParams& params,
                              const std::vector<double>& loads_kg);

}  // namespace softfoot::lab
