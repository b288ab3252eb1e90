#include "softfoot/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace softfoot::lab {

void TerrainProfile::validate() const {
  for (std::size_t i = 0; i < features.size(); ++i) {
    require(features[i].height >= 0.0, "terrain heights must be >= 0");
    if (i > 0) {
      require(features[i].position > features[i - 1].position,
              "terrain feature positions must be strictly increasing");
    }
  }
  if (kind == TerrainKind::flat) {
    require(features.empty() && softfoot_delta == 0.0,
            "flat terrain must have no features and delta = 0");
  }
}

std::vector<TerrainProfile> terrain_catalog() {
  std::vector<TerrainProfile> cat;
  auto add = [&cat](std::string name, TerrainKind kind, std::vector<TerrainFeature> f,
                    bool plateau, double delta) {
    TerrainProfile t;
    t.name = std::move(name);
    t.kind = kind;
    t.features = std::move(f);
    t.plateau_after_last = plateau;
    t.softfoot_delta = delta;
    t.validate();
    cat.push_back(std::move(t));
  };
  // Features sit under the mid-foot, like the obstacle plates of the physical
  // test; softfoot_delta is the terrain height at the toe-end contact.
  add("flat", TerrainKind::flat, {}, false, 0.0);
  add("low-ridge", TerrainKind::ridge, {{0.090, 0.005}}, false, 0.0);
  add("mid-bump", TerrainKind::bump, {{0.110, 0.010}}, false, 0.0);
  add("step", TerrainKind::step, {{0.115, 0.015}}, true, 0.015);
  add("round", TerrainKind::bump, {{0.100, 0.012}}, false, 0.0);
  add("double-ridge", TerrainKind::ridge, {{0.070, 0.008}, {0.130, 0.004}}, false, 0.0);
  add("incline", TerrainKind::custom, {{0.130, 0.012}}, false, 0.0);
  add("tall-step", TerrainKind::step, {{0.120, 0.025}}, true, 0.025);
  return cat;
}

void SweepSpec::validate() const {
  require(step > 0.0, "sweep step must be > 0");
  require(max >= min, "sweep range must be nonempty");
  require(load > 0.0, "sweep load must be > 0");
  require(ankle_limit > 0.0, "ankle_limit must be > 0");
}

double cop_from_forces(const std::vector<double>& forces, const std::vector<double>& positions) {
  require(forces.size() == positions.size() && !forces.empty(),
          "forces and positions must match and be nonempty");
  double total = 0.0, weighted = 0.0;
  for (std::size_t i = 0; i < forces.size(); ++i) {
    total += forces[i];
    weighted += forces[i] * positions[i];
  }
  if (!(total > 0.0)) throw invalid_input("zero total vertical force");
  return weighted / total;
}

std::vector<TerrainPose> rigid_poses_on_terrain(const TerrainProfile& terrain,
                                                double sole_length) {
  terrain.validate();
  require(sole_length > 0.0, "sole_length must be > 0");
  const double L = sole_length;
  const auto& pts = terrain.features;

  std::vector<TerrainPose> poses;
  if (pts.empty()) {
    poses.push_back({0.0, 0.0, L});
    return poses;
  }

  auto below_line = [&pts](double x0, double y0, double slope, int skip_a, int skip_b) {
    for (int i = 0; i < static_cast<int>(pts.size()); ++i) {
      if (i == skip_a || i == skip_b) continue;
      if (pts[i].height > y0 + (pts[i].position - x0) * slope + 1e-12) return false;
    }
    return true;
  };

  for (int i = 0; i < static_cast<int>(pts.size()); ++i) {
    const double xf = pts[i].position;
    const double hf = pts[i].height;
    if (hf == 0.0) continue;

    // Heel on the ground, sole resting on this feature.
    if (xf > 0.0 && std::hypot(xf, hf) <= L) {
      const double tilt = std::atan2(hf, xf);
      if (below_line(0.0, 0.0, std::tan(tilt), i, -1)) {
        poses.push_back({tilt, 0.0, xf});
      }
    }
    // Tip on the ground past the feature (small-tilt projection of the arm).
    if (!terrain.plateau_after_last || i + 1 < static_cast<int>(pts.size())) {
      const double arm = L - xf;
      if (arm > 0.0 && hf <= arm) {
        const double tilt = -std::atan2(hf, arm);
        if (below_line(xf, hf, std::tan(tilt), i, -1)) {
          poses.push_back({tilt, xf, L});
        }
      }
    }
    // Feature-pair poses.
    for (int j = i + 1; j < static_cast<int>(pts.size()); ++j) {
      const double x2 = pts[j].position, h2 = pts[j].height;
      const double tilt = std::atan2(h2 - hf, x2 - xf);
      const double slope = std::tan(tilt);
      const double heel_y = hf - xf * slope;
      const double tip_y = hf + (L - xf) * slope;
      if (heel_y >= -1e-12 && tip_y >= -1e-12 && below_line(xf, hf, slope, i, j)) {
        poses.push_back({tilt, xf, x2});
      }
    }
  }

  // Flat stance on a forward-extending plateau.
  if (terrain.plateau_after_last && !pts.empty()) {
    const double xe = pts.back().position;
    if (xe < L && below_line(xe, pts.back().height, 0.0, static_cast<int>(pts.size()) - 1, -1)) {
      poses.push_back({0.0, xe, L});
    }
  }
  return poses;
}

namespace {

SweepTable sweep_rigid(const SweepSpec& spec, const TerrainProfile& terrain,
                       const planar::RigidFootScenario& scenario) {
  scenario.validate();
  const double L = scenario.sole_length;
  const auto poses = rigid_poses_on_terrain(terrain, L);

  SweepTable table;
  table.footprint = L;
  table.neutral_cop = L / 2.0;
  for (double x = spec.min; x <= spec.max + 1e-15; x += spec.step) {
    SweepRow row;
    row.swept = x;
    row.cop = x;

    const TerrainPose* best = nullptr;
    for (const auto& pose : poses) {
      if (x >= pose.support_lo - 1e-12 && x <= pose.support_hi + 1e-12) {
        if (!best || std::abs(pose.tilt) < std::abs(best->tilt)) best = &pose;
      }
    }
    if (best) {
      row.ankle_comp = -best->tilt;
      const double span = best->support_hi - best->support_lo;
      if (span > 0.0) {
        row.f1 = spec.load * (best->support_hi - x) / span;
        row.f2 = spec.load * (x - best->support_lo) / span;
      } else {
        row.f1 = spec.load;
      }
      row.admissible = std::abs(row.ankle_comp) <= spec.ankle_limit && row.f1 >= -1e-9 &&
                       row.f2 >= -1e-9;
    } else {
      // Nearest pose for reporting; the stance itself is not admissible.
      const TerrainPose* nearest = nullptr;
      double dist = std::numeric_limits<double>::infinity();
      for (const auto& pose : poses) {
        const double d = std::max({pose.support_lo - x, x - pose.support_hi, 0.0});
        if (d < dist) {
          dist = d;
          nearest = &pose;
        }
      }
      row.ankle_comp = nearest ? -nearest->tilt : 0.0;
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

SweepTable sweep_compliant(const SweepSpec& spec, const TerrainProfile& terrain,
                           const planar::CompliantLumpedParams& base) {
  planar::CompliantLumpedParams params = base;
  params.load = spec.load;
  params.validate();
  const double L = params.sole_length;

  // A soft sole absorbs features up to its static deflection.
  const double absorb = params.load / (2.0 * params.spring_stiffness);
  TerrainProfile effective = terrain;
  for (auto& f : effective.features) f.height = std::max(0.0, f.height - absorb);
  std::erase_if(effective.features, [](const TerrainFeature& f) { return f.height <= 0.0; });
  if (effective.features.empty()) {
    effective.kind = TerrainKind::flat;
    effective.softfoot_delta = 0.0;
    effective.plateau_after_last = false;
  }
  const auto poses = rigid_poses_on_terrain(effective, L);

  SweepTable table;
  table.footprint = L;
  table.neutral_cop = L / 2.0;
  for (double x = spec.min; x <= spec.max + 1e-15; x += spec.step) {
    SweepRow row;
    row.swept = x;
    row.cop = x;

    const TerrainPose* best = nullptr;
    for (const auto& pose : poses) {
      if (x >= pose.support_lo - 1e-12 && x <= pose.support_hi + 1e-12) {
        if (!best || std::abs(pose.tilt) < std::abs(best->tilt)) best = &pose;
      }
    }
    if (best) {
      const double mid = 0.5 * (best->support_lo + best->support_hi);
      const double tilt_springs =
          2.0 * spec.load * (x - mid) / (params.spring_stiffness * L * L);
      row.ankle_comp = -best->tilt - tilt_springs;
      const double span = best->support_hi - best->support_lo;
      if (span > 0.0) {
        row.f1 = spec.load * (best->support_hi - x) / span;
        row.f2 = spec.load * (x - best->support_lo) / span;
      } else {
        row.f1 = spec.load;
      }
      row.admissible = std::abs(row.ankle_comp) <= spec.ankle_limit && row.f1 >= -1e-9 &&
                       row.f2 >= -1e-9;
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

SweepTable sweep_softfoot(const SweepSpec& spec, const TerrainProfile& terrain,
                          const model::SoftFootParams& base) {
  model::SoftFootParams params = base;
  params.terrain_height = terrain.softfoot_delta;
  params.validate();
  const model::FootLoad load{spec.load};

  SweepTable table;
  table.footprint = (params.n + 3) * params.phalanx_length;
  table.neutral_cop = table.footprint / 2.0;

  for (double xh = spec.min; xh <= spec.max + 1e-15; xh += spec.step) {
    SweepRow row;
    row.swept = xh;
    params.load_arm = xh;
    try {
      params.validate();
      const auto state = model::solve_equilibrium_ramped(params, load);
      const auto shape = model::foot_shape(params, state.q);
      const Vec2& heel = shape.sole[shape.heel_attachment_index];
      const Vec2& front = shape.sole[shape.front_attachment_index];
      const Vec2& toe = shape.sole[shape.toe_index];
      row.cop = cop_from_forces({state.f1, state.f2, state.f3},
                                {heel.x(), front.x(), toe.x()});
      row.ankle_comp = -std::atan2(toe.y() - heel.y(), toe.x() - heel.x());
      row.f1 = state.f1;
      row.f2 = state.f2;
      row.f3 = state.f3;
      row.tension = state.tension;
      row.admissible = std::min({state.f1, state.f2, state.f3}) >= -1e-9 &&
                       std::abs(row.ankle_comp) <= spec.ankle_limit;
    } catch (const std::exception& e) {
      row.diagnostic = e.what();
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace

SweepTable tilt_sweep(const SweepSpec& spec, const TerrainProfile& terrain,
                      const FootParams& foot) {
  spec.validate();
  terrain.validate();
  return std::visit(
      [&](const auto& params) -> SweepTable {
        using T = std::decay_t<decltype(params)>;
        if constexpr (std::is_same_v<T, planar::RigidFootScenario>) {
          require(spec.foot_model == FootModelKind::rigid, "spec/foot model mismatch");
          return sweep_rigid(spec, terrain, params);
        } else if constexpr (std::is_same_v<T, planar::CompliantLumpedParams>) {
          require(spec.foot_model == FootModelKind::compliant, "spec/foot model mismatch");
          return sweep_compliant(spec, terrain, params);
        } else {
          require(spec.foot_model == FootModelKind::softfoot, "spec/foot model mismatch");
          return sweep_softfoot(spec, terrain, params);
        }
      },
      foot);
}

SupportReport support_length(const SweepTable& table,
                             const std::function<SweepRow(double)>& refiner,
                             double refine_tol) {
  SupportReport report;
  if (table.rows.empty()) {
    report.diagnostic = "empty sweep table";
    return report;
  }

  // Adjacent admissible rows whose compensation jumps by more than this are
  // different equilibrium branches (flat feet straddling an obstacle admit
  // two), reported as separate intervals.
  constexpr double kBranchJump = 0.01;  // [rad]

  const auto& rows = table.rows;
  std::size_t i = 0;
  while (i < rows.size()) {
    if (!rows[i].admissible) {
      ++i;
      continue;
    }
    std::size_t j = i;
    SupportInterval iv;
    iv.lo = rows[i].cop;
    iv.hi = rows[i].cop;
    iv.comp_min = rows[i].ankle_comp;
    iv.comp_max = rows[i].ankle_comp;
    while (j + 1 < rows.size() && rows[j + 1].admissible &&
           std::abs(rows[j + 1].ankle_comp - rows[j].ankle_comp) <= kBranchJump) {
      ++j;
      iv.lo = std::min(iv.lo, rows[j].cop);
      iv.hi = std::max(iv.hi, rows[j].cop);
      iv.comp_min = std::min(iv.comp_min, rows[j].ankle_comp);
      iv.comp_max = std::max(iv.comp_max, rows[j].ankle_comp);
    }

    if (refiner) {
      // Bisect the swept parameter across each admissibility boundary.
      auto refine = [&](double good, double bad) -> SweepRow {
        SweepRow last_good = refiner(good);
        while (std::abs(bad - good) > refine_tol) {
          const double mid = 0.5 * (good + bad);
          SweepRow row = refiner(mid);
          if (row.admissible) {
            good = mid;
            last_good = row;
          } else {
            bad = mid;
          }
        }
        return last_good;
      };
      if (i > 0 && !rows[i - 1].admissible && rows[i - 1].diagnostic.empty()) {
        const SweepRow edge = refine(rows[i].swept, rows[i - 1].swept);
        iv.lo = std::min(iv.lo, edge.cop);
        iv.comp_min = std::min(iv.comp_min, edge.ankle_comp);
        iv.comp_max = std::max(iv.comp_max, edge.ankle_comp);
      }
      if (j + 1 < rows.size() && !rows[j + 1].admissible && rows[j + 1].diagnostic.empty()) {
        const SweepRow edge = refine(rows[j].swept, rows[j + 1].swept);
        iv.hi = std::max(iv.hi, edge.cop);
        iv.comp_min = std::min(iv.comp_min, edge.ankle_comp);
        iv.comp_max = std::max(iv.comp_max, edge.ankle_comp);
      }
    }
    report.intervals.push_back(iv);
    i = j + 1;
  }

  if (report.intervals.empty()) {
    report.diagnostic = "no admissible rows";
    return report;
  }

  for (std::size_t k = 0; k < report.intervals.size(); ++k) {
    const auto& iv = report.intervals[k];
    if (table.neutral_cop >= iv.lo - 1e-12 && table.neutral_cop <= iv.hi + 1e-12) {
      report.primary = static_cast<int>(k);
      break;
    }
  }
  if (report.primary < 0) {
    // Nearest interval to the neutral point.
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < report.intervals.size(); ++k) {
      const auto& iv = report.intervals[k];
      const double d = std::max({iv.lo - table.neutral_cop, table.neutral_cop - iv.hi, 0.0});
      if (d < best) {
        best = d;
        report.primary = static_cast<int>(k);
      }
    }
    report.diagnostic = "neutral point outside every admissible interval";
  }

  const auto& primary = report.intervals[static_cast<std::size_t>(report.primary)];
  report.length = primary.hi - primary.lo;
  report.comp_min = primary.comp_min;
  report.comp_max = primary.comp_max;
  return report;
}

ComplianceMap compliance_map(const std::vector<double>& e_bar_grid,
                             const std::vector<double>& e0_grid,
                             const std::vector<double>& loads_kg,
                             const model::SoftFootParams& base) {
  require(!e_bar_grid.empty() && !e0_grid.empty() && !loads_kg.empty(),
          "compliance map grids must be nonempty");
  for (double v : e_bar_grid) require(v > 0.0, "e_bar grid values must be > 0");
  for (double v : e0_grid) require(v > 0.0, "e0 grid values must be > 0");

  ComplianceMap map;
  map.e_bar = e_bar_grid;
  map.e0 = e0_grid;
  map.loads_kg = loads_kg;
  for (double kg : loads_kg) {
    Eigen::MatrixXd grid(static_cast<int>(e0_grid.size()), static_cast<int>(e_bar_grid.size()));
    for (int r = 0; r < grid.rows(); ++r) {
      for (int col = 0; col < grid.cols(); ++col) {
        model::SoftFootParams p = base;
        p.arch_stiffness = e0_grid[static_cast<std::size_t>(r)];
        p.joint_stiffness.setConstant(e_bar_grid[static_cast<std::size_t>(col)]);
        try {
          grid(r, col) = model::compliance_to_compression(p, model::FootLoad::from_mass(kg));
        } catch (const std::exception&) {
          grid(r, col) = std::numeric_limits<double>::quiet_NaN();
        }
      }
    }
    map.values.push_back(std::move(grid));
  }
  return map;
}

Gallery configuration_gallery(const model::SoftFootParams& params,
                              const std::vector<double>& loads_kg) {
  require(!loads_kg.empty(), "gallery load list must be nonempty");
  for (std::size_t i = 0; i < loads_kg.size(); ++i) {
    require(loads_kg[i] >= 0.0, "gallery loads must be >= 0");
    if (i > 0) require(loads_kg[i] > loads_kg[i - 1], "gallery loads must be ascending");
  }

  Gallery gallery;
  gallery.arch_height_non_increasing = true;
  std::optional<model::EquilibriumCandidate> warm;
  double prev_height = std::numeric_limits<double>::infinity();
  for (double kg : loads_kg) {
    GalleryEntry entry;
    entry.load_kg = kg;
    try {
      const auto state =
          warm ? model::solve_equilibrium(params, model::FootLoad::from_mass(kg), warm)
               : model::solve_equilibrium_ramped(params, model::FootLoad::from_mass(kg));
      warm = state.candidate();
      entry.shape = model::foot_shape(params, state.q);
      entry.arch_height = model::arch_height(params, state.q);
      entry.compression = model::compression_measure(params, state.q);
      entry.solved = true;
      if (entry.arch_height > prev_height + 1e-12) gallery.arch_height_non_increasing = false;
      prev_height = entry.arch_height;
    } catch (const std::exception& e) {
      entry.diagnostic = e.what();
    }
    gallery.entries.push_back(std::move(entry));
  }
  return gallery;
}

}  // namespace softfoot::lab
