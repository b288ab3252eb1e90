#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "softfoot/contact.hpp"
#include "softfoot/csv.hpp"
#include "softfoot/experiment.hpp"

using namespace softfoot;
using namespace softfoot::lab;

namespace {

model::SoftFootParams standing_params() {
  auto p = model::SoftFootParams::nominal();
  p.pretension_angle = 0.0;  // standing sweeps run pretension-released
  return p;
}

planar::RigidFootScenario reference_rigid() {
  planar::RigidFootScenario s;
  s.sole_length = 0.219;
  s.leg_height = 0.25;
  s.obstacle_position = 0.0;
  s.obstacle_height = 0.0;
  s.ankle_limit = 0.6;
  return s;
}

SweepSpec rigid_spec() {
  SweepSpec spec;
  spec.foot_model = FootModelKind::rigid;
  spec.parameter = SweptParameter::com_offset;
  spec.min = -0.02;
  spec.max = 0.24;
  spec.step = 0.002;
  spec.ankle_limit = 0.6;
  spec.load = 15.0;
  return spec;
}

TerrainProfile catalog_terrain(const std::string& name) {
  for (auto& t : terrain_catalog()) {
    if (t.name == name) return t;
  }
  FAIL("terrain not in catalog: " << name);
  return {};
}

}  // namespace

TEST_CASE("cop_from_forces basics") {
  CHECK(cop_from_forces({10.0}, {0.1}) == doctest::Approx(0.1));
  CHECK(cop_from_forces({5.0, 5.0}, {-0.1, 0.1}) == doctest::Approx(0.0));
  CHECK_THROWS_WITH_AS(cop_from_forces({0.0, 0.0}, {0.0, 1.0}), "zero total vertical force",
                       invalid_input);
}

TEST_CASE("softfoot CoP coincides with the contact-geometry ZMP") {
  const auto p = standing_params();
  const model::FootLoad load{15.0};
  const auto state = model::solve_equilibrium_ramped(p, load);
  const auto shape = model::foot_shape(p, state.q);

  const double x1 = shape.sole[shape.heel_attachment_index].x();
  const double x2 = shape.sole[shape.front_attachment_index].x();
  const double x3 = shape.sole[shape.toe_index].x();
  const double cop = cop_from_forces({state.f1, state.f2, state.f3}, {x1, x2, x3});

  // Assemble the same force system as a traction field on the ground plane.
  contact::ContactRegion field;
  field.plane = contact::ContactPlane::from_normal(Vec3::Zero(), Vec3::UnitZ());
  const double area = 1e-4;
  auto to_plane = [&](double x) {
    const Vec3 world(x, 0.0, 0.0);
    return Vec2((world - field.plane.origin).dot(field.plane.tangent1),
                (world - field.plane.origin).dot(field.plane.tangent2));
  };
  field.samples.push_back({to_plane(x1), Vec3(state.f1 / area, 0, 0), area});
  field.samples.push_back({to_plane(x2), Vec3(state.f2 / area, 0, 0), area});
  field.samples.push_back({to_plane(x3), Vec3(state.f3 / area, 0, 0), area});

  const auto zmp = contact::zmp_on_plane(contact::resultant_of_field(field), field.plane);
  REQUIRE(zmp.has_value());
  const Vec3 zmp_world = field.plane.to_world(*zmp);
  CHECK(std::abs(zmp_world.x() - cop) <= 1e-10);
}

TEST_CASE("rigid foot on flat ground spans the whole sole with zero compensation") {
  const auto table = tilt_sweep(rigid_spec(), catalog_terrain("flat"), reference_rigid());
  for (const auto& row : table.rows) {
    if (row.swept >= 0.0 && row.swept <= 0.219) {
      CHECK(row.admissible);
      CHECK(row.ankle_comp == 0.0);
    } else {
      CHECK_FALSE(row.admissible);
    }
  }

  const auto report = support_length(table);
  REQUIRE(report.primary >= 0);
  CHECK(report.length == doctest::Approx(0.219).epsilon(0.02));
  CHECK(report.comp_min == 0.0);
  CHECK(report.comp_max == 0.0);
}

TEST_CASE("support length refinement recovers the exact sole extent") {
  const auto terrain = catalog_terrain("flat");
  const auto scenario = reference_rigid();
  const auto spec = rigid_spec();
  const auto table = tilt_sweep(spec, terrain, scenario);

  auto refiner = [&](double swept) {
    SweepSpec one = spec;
    one.min = swept;
    one.max = swept;
    one.step = 1.0;
    return tilt_sweep(one, terrain, scenario).rows.at(0);
  };
  const auto report = support_length(table, refiner, 1e-6);
  REQUIRE(report.primary >= 0);
  CHECK(report.length == doctest::Approx(0.219).epsilon(1e-4));
}

TEST_CASE("mid-sole bar produces two admissible intervals with opposite tilts") {
  auto terrain = catalog_terrain("mid-bump");  // single bar at 0.110, 10 mm
  const auto table = tilt_sweep(rigid_spec(), terrain, reference_rigid());
  const auto report = support_length(table);
  REQUIRE(report.intervals.size() == 2);
  CHECK(report.intervals[0].comp_max < 0.0);  // heel-side pose tilts up
  CHECK(report.intervals[1].comp_min > 0.0);  // tip-side pose tilts down
  // Neutral point (mid-sole) lands in the heel-side interval here.
  REQUIRE(report.primary == 0);
}

TEST_CASE("double ridge admits the bridge pose") {
  const auto poses = rigid_poses_on_terrain(catalog_terrain("double-ridge"), 0.219);
  bool bridge = false;
  for (const auto& pose : poses) {
    if (pose.support_lo == doctest::Approx(0.07) && pose.support_hi == doctest::Approx(0.13)) {
      bridge = true;
      CHECK(pose.tilt == doctest::Approx(std::atan2(0.004 - 0.008, 0.06)));
    }
  }
  CHECK(bridge);
}

TEST_CASE("softfoot flat sweep stays strictly inside the footprint") {
  SweepSpec spec;
  spec.foot_model = FootModelKind::softfoot;
  spec.parameter = SweptParameter::load_arm;
  spec.min = 0.004;
  spec.max = 0.1;
  spec.step = 0.004;
  spec.load = 15.0;
  spec.ankle_limit = 0.6;

  const auto table = tilt_sweep(spec, catalog_terrain("flat"), standing_params());
  const auto report = support_length(table);
  REQUIRE(report.primary >= 0);
  const auto& primary = report.intervals[static_cast<std::size_t>(report.primary)];
  CHECK(primary.lo > 0.0);
  CHECK(primary.hi < table.footprint);
  CHECK(std::max(std::abs(report.comp_min), std::abs(report.comp_max)) < 0.02);
}

TEST_CASE("softfoot compensates less than the rigid foot on a step") {
  const auto terrain = catalog_terrain("step");

  const auto rigid_table = tilt_sweep(rigid_spec(), terrain, reference_rigid());
  const auto rigid_report = support_length(rigid_table);
  REQUIRE(rigid_report.primary >= 0);
  const double rigid_comp =
      std::max(std::abs(rigid_report.comp_min), std::abs(rigid_report.comp_max));

  SweepSpec spec;
  spec.foot_model = FootModelKind::softfoot;
  spec.parameter = SweptParameter::load_arm;
  spec.min = 0.004;
  spec.max = 0.1;
  spec.step = 0.004;
  spec.load = 15.0;
  spec.ankle_limit = 0.6;
  const auto soft_table = tilt_sweep(spec, terrain, standing_params());
  const auto soft_report = support_length(soft_table);
  REQUIRE(soft_report.primary >= 0);
  const double soft_comp =
      std::max(std::abs(soft_report.comp_min), std::abs(soft_report.comp_max));

  CHECK(soft_comp < rigid_comp);
}

TEST_CASE("inadmissible-only tables report zero support with a diagnostic") {
  SweepSpec spec = rigid_spec();
  spec.min = 0.3;  // entirely beyond the sole
  spec.max = 0.4;
  const auto table = tilt_sweep(spec, catalog_terrain("flat"), reference_rigid());
  const auto report = support_length(table);
  CHECK(report.intervals.empty());
  CHECK(report.length == 0.0);
  CHECK_FALSE(report.diagnostic.empty());
}

TEST_CASE("compliant support shrinks toward the stiffness-bound prediction") {
  planar::CompliantLumpedParams foot;
  foot.sole_length = 0.219;
  foot.load = 15.0;
  foot.mass = 1.53;
  foot.leg_height = 0.25;

  SweepSpec spec;
  spec.foot_model = FootModelKind::compliant;
  spec.parameter = SweptParameter::com_offset;
  spec.min = 0.0;
  spec.max = 0.219;
  spec.step = 0.219 / 400.0;
  spec.load = 15.0;

  for (const double theta_max : {0.2, 0.1, 0.05, 0.02}) {
    spec.ankle_limit = theta_max;
    foot.spring_stiffness = 0.7 * planar::k_min_support(spec.load, foot.sole_length, 0.2);
    const auto table = tilt_sweep(spec, catalog_terrain("flat"), foot);
    const auto report = support_length(table);
    const double predicted = std::min(
        foot.sole_length,
        theta_max * foot.spring_stiffness * foot.sole_length * foot.sole_length / spec.load);
    REQUIRE(report.primary >= 0);
    CHECK(report.length == doctest::Approx(predicted).epsilon(0.03));
  }
}

TEST_CASE("compliance map is deterministic and rigid at zero load without pretension") {
  const auto base = standing_params();
  const std::vector<double> e_bar = {2.0, 3.0};
  const std::vector<double> e0 = {2.0, 3.0};
  const auto map1 = compliance_map(e_bar, e0, {0.0}, base);
  const auto map2 = compliance_map(e_bar, e0, {0.0}, base);
  CHECK(map1.values[0] == map2.values[0]);
  // Without pretension the zero-load state is rigid for every stiffness.
  CHECK(map1.values[0].cwiseAbs().maxCoeff() <= 1e-9);
}

TEST_CASE("compliance magnitude decreases along the joint-stiffness axis") {
  const auto base = model::SoftFootParams::nominal();  // pretensioned
  const std::vector<double> e_bar = {1.5, 2.5, 4.0, 6.0};
  const std::vector<double> e0 = {2.5};
  const auto map = compliance_map(e_bar, e0, {0.0, 1.5}, base);
  for (const auto& grid : map.values) {
    for (int col = 1; col < grid.cols(); ++col) {
      CHECK(std::abs(grid(0, col)) <= std::abs(grid(0, col - 1)) * (1.0 + 1e-9));
    }
  }
}

TEST_CASE("gallery of the unpretensioned unloaded foot is a straight sole") {
  const auto gallery = configuration_gallery(standing_params(), {0.0});
  REQUIRE(gallery.entries.size() == 1);
  REQUIRE(gallery.entries[0].solved);
  CHECK(gallery.entries[0].compression == 0.0);
  for (const auto& node : gallery.entries[0].shape.sole) {
    CHECK(node.y() == doctest::Approx(0.0));
  }
}

TEST_CASE("gallery arch height flattens monotonically under load") {
  const auto gallery = configuration_gallery(model::SoftFootParams::nominal(),
                                             {0, 5, 10, 15, 20, 25, 30, 35, 40, 45, 50, 55, 60});
  CHECK(gallery.arch_height_non_increasing);
  for (const auto& entry : gallery.entries) CHECK(entry.solved);
}

TEST_CASE("csv writer emits the documented schema and round-trips bit-exactly") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "softfoot_csv_test";
  fs::create_directories(dir);

  SweepTable table;
  table.neutral_cop = 0.1;
  table.footprint = 0.2;
  SUBCASE("empty table gives a header-only file") {
    const fs::path path = dir / "empty.csv";
    write_sweep_csv(table, path);
    std::ifstream in(path, std::ios::binary);
    std::string content((std::istreambuf_iterator<char>(in)), {});
    CHECK(content == "swept_value_m,cop_m,ankle_comp_rad,F1_N,F2_N,F3_N,T_N,admissible\n");
  }

  SUBCASE("three rows give four LF-terminated lines and exact re-import") {
    table.rows.push_back({0.1, 0.2 / 3.0, -0.034, 1.25, 2.5, 3.75, -7.5, true, ""});
    table.rows.push_back({0.2, 1e-17, 0.0, 0.1 + 0.2, 0.0, 0.0, 0.0, false, ""});
    table.rows.push_back({0.3, -5e300, M_PI, 0.0, 0.0, 0.0, 1e-300, true, ""});
    const fs::path path = dir / "rows.csv";
    write_sweep_csv(table, path);

    std::ifstream in(path, std::ios::binary);
    std::string content((std::istreambuf_iterator<char>(in)), {});
    CHECK(std::count(content.begin(), content.end(), '\n') == 4);
    CHECK(content.find("\r") == std::string::npos);

    const auto back = read_sweep_csv(path);
    REQUIRE(back.rows.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(back.rows[i].swept == table.rows[i].swept);
      CHECK(back.rows[i].cop == table.rows[i].cop);
      CHECK(back.rows[i].ankle_comp == table.rows[i].ankle_comp);
      CHECK(back.rows[i].f1 == table.rows[i].f1);
      CHECK(back.rows[i].tension == table.rows[i].tension);
      CHECK(back.rows[i].admissible == table.rows[i].admissible);
    }
  }
}

TEST_CASE("map csv round-trips values and ordering") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "softfoot_csv_test";
  fs::create_directories(dir);

  ComplianceMap map;
  map.e_bar = {1.0, 2.0};
  map.e0 = {3.0};
  map.loads_kg = {0.0, 1.5};
  map.values = {Eigen::MatrixXd(1, 2), Eigen::MatrixXd(1, 2)};
  map.values[0] << 0.125, -2.5e-7;
  map.values[1] << 1.0 / 3.0, 7.25;

  const fs::path path = dir / "map.csv";
  write_map_csv(map, path);
  const auto rows = read_map_csv(path);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].e_bar == 1.0);
  CHECK(rows[0].load_kg == 0.0);
  CHECK(rows[0].compliance == 0.125);
  CHECK(rows[1].compliance == -2.5e-7);
  CHECK(rows[2].compliance == 1.0 / 3.0);
  CHECK(rows[3].load_kg == 1.5);
}

TEST_CASE("terrain catalog ships eight validated profiles") {
  const auto catalog = terrain_catalog();
  REQUIRE(catalog.size() == 8);
  CHECK(catalog.front().flat());
  for (const auto& t : catalog) t.validate();
  // Step terrains carry the toe-contact height for the articulated model.
  CHECK(catalog_terrain("step").softfoot_delta == doctest::Approx(0.015));
  CHECK(catalog_terrain("tall-step").softfoot_delta == doctest::Approx(0.025));
}

TEST_CASE("terrain validation rejects inconsistent profiles") {
  TerrainProfile bad;
  bad.kind = TerrainKind::ridge;
  bad.features = {{0.1, 0.01}, {0.05, 0.01}};  // not increasing
  CHECK_THROWS_AS(bad.validate(), invalid_input);

  TerrainProfile flat_with_delta;
  flat_with_delta.kind = TerrainKind::flat;
  flat_with_delta.softfoot_delta = 0.01;
  CHECK_THROWS_AS(flat_with_delta.validate(), invalid_input);
}
