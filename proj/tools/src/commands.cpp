#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <iostream>

#include "softfoot/csv.hpp"

namespace softfoot::cli {

namespace {

namespace fs = std::filesystem;
using lab::format_double;

std::ofstream open_csv(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw solve_error("cannot open for writing: " + path.string());
  return out;
}

void ensure_out_dir(const RunConfig& cfg) { fs::create_directories(cfg.out_dir); }

std::string foot_name(lab::FootModelKind kind) {
  switch (kind) {
    case lab::FootModelKind::rigid: return "rigid";
    case lab::FootModelKind::compliant: return "compliant";
    case lab::FootModelKind::softfoot: return "softfoot";
  }
  return "?";
}

lab::FootParams foot_params_for(const RunConfig& cfg, lab::FootModelKind kind,
                                bool release_pretension) {
  switch (kind) {
    case lab::FootModelKind::rigid: return cfg.rigid;
    case lab::FootModelKind::compliant: return cfg.compliant;
    case lab::FootModelKind::softfoot: {
      model::SoftFootParams p = cfg.softfoot;
      if (release_pretension) p.pretension_angle = 0.0;
      return p;
    }
  }
  throw invalid_input("unknown foot model");
}

}  // namespace

int cmd_equilibrium(const RunConfig& cfg) {
  ensure_out_dir(cfg);
  const auto state = model::solve_equilibrium_ramped(cfg.softfoot, cfg.load);
  const auto shape = model::foot_shape(cfg.softfoot, state.q);

  std::cout << "equilibrium at F_P = " << format_double(cfg.load.force) << " N\n"
            << "  iterations    " << state.iterations << "\n"
            << "  residual norm " << format_double(state.residual_norm) << "\n"
            << "  F1, F2, F3    " << format_double(state.f1) << ", " << format_double(state.f2)
            << ", " << format_double(state.f3) << " N\n"
            << "  tension       " << format_double(state.tension) << " N\n"
            << "  arch height   " << format_double(model::arch_height(cfg.softfoot, state.q))
            << " m\n"
            << "  compression   "
            << format_double(model::compression_measure(cfg.softfoot, state.q)) << " m\n";

  {
    auto out = open_csv(cfg.out_dir / "equilibrium.csv");
    out << "joint,q_rad\n";
    for (int i = 0; i < state.q.size(); ++i) {
      out << i << ',' << format_double(state.q(i)) << '\n';
    }
  }
  {
    auto out = open_csv(cfg.out_dir / "shape.csv");
    out << "node_index,x_m,y_m\n";
    for (std::size_t i = 0; i < shape.sole.size(); ++i) {
      out << i << ',' << format_double(shape.sole[i].x()) << ','
          << format_double(shape.sole[i].y()) << '\n';
    }
    out << "-1," << format_double(shape.ankle.x()) << ',' << format_double(shape.ankle.y())
        << '\n';
  }
  return 0;
}

int cmd_linearize(const RunConfig& cfg) {
  ensure_out_dir(cfg);
  const auto nonlinear = model::solve_equilibrium_ramped(cfg.softfoot, cfg.load);
  const auto system = model::assemble_linear_system(cfg.softfoot, cfg.load);
  const auto linear = model::solve_linear(system);
  const auto closed = model::solve_closed_form(cfg.softfoot, cfg.load);

  const double dev_lin_closed = (linear.q - closed).lpNorm<Eigen::Infinity>();
  const double dev_nl_lin = (nonlinear.q - linear.q).lpNorm<Eigen::Infinity>();
  const double qmax = std::max(nonlinear.q.lpNorm<Eigen::Infinity>(), 1e-300);

  std::cout << "linearization comparison at F_P = " << format_double(cfg.load.force) << " N\n"
            << "  max|q_linear - q_closed_form| = " << format_double(dev_lin_closed) << " rad\n"
            << "  max|q_nonlinear - q_linear|   = " << format_double(dev_nl_lin) << " rad ("
            << format_double(dev_nl_lin / qmax) << " relative)\n";

  auto out = open_csv(cfg.out_dir / "linearize.csv");
  out << "joint,q_nonlinear_rad,q_linear_rad,q_closed_form_rad\n";
  for (int i = 0; i < nonlinear.q.size(); ++i) {
    out << i << ',' << format_double(nonlinear.q(i)) << ',' << format_double(linear.q(i)) << ','
        << format_double(closed(i)) << '\n';
  }
  return 0;
}

int cmd_compliance_map(const RunConfig& cfg) {
  ensure_out_dir(cfg);
  const auto map = lab::compliance_map(cfg.map.e_bar_values(), cfg.map.e0_values(),
                                       cfg.map.loads_kg, cfg.softfoot);
  lab::write_map_csv(map, cfg.out_dir / "compliance_map.csv");

  int missing = 0;
  for (const auto& grid : map.values) missing += static_cast<int>(grid.array().isNaN().count());
  std::cout << "compliance map: " << map.e_bar.size() << " x " << map.e0.size() << " grid, "
            << map.loads_kg.size() << " load(s), " << missing << " missing cell(s)\n"
            << "  wrote " << (cfg.out_dir / "compliance_map.csv").string() << "\n";
  return missing == 0 ? 0 : 1;
}

int cmd_tilt_sweep(const RunConfig& cfg) {
  ensure_out_dir(cfg);
  const auto terrains = cfg.terrain_catalog_all
                            ? lab::terrain_catalog()
                            : std::vector<lab::TerrainProfile>{cfg.terrain};
  std::vector<lab::FootModelKind> feet;
  if (cfg.sweep_all_feet) {
    feet = {lab::FootModelKind::rigid, lab::FootModelKind::compliant,
            lab::FootModelKind::softfoot};
  } else {
    feet = {cfg.sweep.foot_model};
  }

  auto summary = open_csv(cfg.out_dir / "support_summary.csv");
  summary << "terrain,foot,support_length_m,comp_min_rad,comp_max_rad\n";

  int status = 0;
  for (const auto& terrain : terrains) {
    for (const auto kind : feet) {
      lab::SweepSpec spec = cfg.sweep;
      spec.foot_model = kind;
      // The articulated model needs the pretension released to stand with
      // all-compressive contacts; see README (standing configuration).
      const auto foot = foot_params_for(cfg, kind, /*release_pretension=*/true);

      lab::SweepTable table;
      try {
        table = lab::tilt_sweep(spec, terrain, foot);
      } catch (const std::exception& e) {
        std::cerr << "sweep failed (" << terrain.name << ", " << foot_name(kind)
                  << "): " << e.what() << "\n";
        status = 1;
        continue;
      }
      const auto report = lab::support_length(table);
      const fs::path path = cfg.out_dir / ("sweep_" + terrain.name + "_" + foot_name(kind) +
                                           ".csv");
      lab::write_sweep_csv(table, path);
      summary << terrain.name << ',' << foot_name(kind) << ','
              << format_double(report.length) << ',' << format_double(report.comp_min) << ','
              << format_double(report.comp_max) << '\n';
      std::cout << terrain.name << " / " << foot_name(kind) << ": support length "
                << format_double(report.length) << " m, compensation ["
                << format_double(report.comp_min) << ", " << format_double(report.comp_max)
                << "] rad" << (report.diagnostic.empty() ? "" : " (" + report.diagnostic + ")")
                << "\n";
    }
  }
  return status;
}

int cmd_planar_compare(const RunConfig& cfg) {
  ensure_out_dir(cfg);
  auto out = open_csv(cfg.out_dir / "planar_compare.csv");
  out << "quantity,value\n";

  const auto poses = planar::rigid_foot_on_obstacle(cfg.rigid);
  std::cout << "rigid foot on obstacle (" << format_double(cfg.rigid.obstacle_height)
            << " m at " << format_double(cfg.rigid.obstacle_position) << " m):\n";
  int idx = 0;
  for (const auto& pose : poses) {
    const std::string tag = "rigid_pose" + std::to_string(idx++);
    out << tag << "_tilt_rad," << format_double(pose.tilt) << '\n'
        << tag << "_compensation_rad," << format_double(pose.compensation) << '\n'
        << tag << "_support_lo_m," << format_double(pose.support_lo) << '\n'
        << tag << "_support_hi_m," << format_double(pose.support_hi) << '\n';
    std::cout << "  tilt " << format_double(pose.tilt) << " rad, support ["
              << format_double(pose.support_lo) << ", " << format_double(pose.support_hi)
              << "] m\n";
  }

  const double x_probe = cfg.compliant.sole_length / 4.0;
  const double tilt = planar::compliant_tilt_angle(cfg.compliant, x_probe);
  const double k_s = planar::k_min_support(cfg.compliant.load, cfg.compliant.sole_length,
                                           cfg.rigid.ankle_limit);
  const double k_g_written =
      planar::k_min_stability(cfg.compliant, planar::StabilityConvention::as_written);
  const double k_g_corrected =
      planar::k_min_stability(cfg.compliant, planar::StabilityConvention::dimensional_correction);
  out << "compliant_tilt_at_quarter_sole_rad," << format_double(tilt) << '\n'
      << "k_min_support_N_per_m," << format_double(k_s) << '\n'
      << "k_min_stability_as_written," << format_double(k_g_written) << '\n'
      << "k_min_stability_dimensional_correction," << format_double(k_g_corrected) << '\n';
  std::cout << "compliant: tilt(" << format_double(x_probe) << " m) = " << format_double(tilt)
            << " rad, k_min_support = " << format_double(k_s)
            << " N/m, k_min_stability = " << format_double(k_g_written) << " (as written) / "
            << format_double(k_g_corrected) << " (dimensional correction)\n";

  const auto forces = planar::adaptive_arch_forces(cfg.adaptive);
  const auto range = planar::adaptive_admissible_com_range(cfg.adaptive);
  out << "adaptive_T_h_N," << format_double(forces.heel) << '\n'
      << "adaptive_T_o_N," << format_double(forces.obstacle) << '\n'
      << "adaptive_T_t_N," << format_double(forces.tip) << '\n'
      << "adaptive_admissible," << (forces.admissible ? "true" : "false") << '\n'
      << "adaptive_com_lo_m," << format_double(range.lo) << '\n'
      << "adaptive_com_hi_m," << format_double(range.hi) << '\n'
      << "adaptive_com_empty," << (range.empty ? "true" : "false") << '\n'
      << "adaptive_com_unclamped_lower_m," << format_double(range.unclamped_lower) << '\n';
  std::cout << "adaptive: T_h = " << format_double(forces.heel)
            << " N, T_o = " << format_double(forces.obstacle)
            << " N, T_t = " << format_double(forces.tip) << " N ("
            << (forces.admissible ? "admissible" : "inadmissible") << ")\n";
  return 0;
}

int cmd_gallery(const RunConfig& cfg) {
  ensure_out_dir(cfg);
  const auto gallery = lab::configuration_gallery(cfg.softfoot, cfg.gallery_loads_kg);
  lab::write_gallery_csv(gallery, cfg.out_dir / "gallery.csv");

  int failures = 0;
  std::cout << "configuration gallery (" << gallery.entries.size() << " loads):\n";
  for (const auto& entry : gallery.entries) {
    if (entry.solved) {
      std::cout << "  " << format_double(entry.load_kg) << " kg: arch height "
                << format_double(entry.arch_height) << " m, compression "
                << format_double(entry.compression) << " m\n";
    } else {
      std::cout << "  " << format_double(entry.load_kg) << " kg: failed (" << entry.diagnostic
                << ")\n";
      ++failures;
    }
  }
  std::cout << "arch height non-increasing: "
            << (gallery.arch_height_non_increasing ? "yes" : "no") << "\n";
  return failures == 0 ? 0 : 1;
}

}  // namespace softfoot::cli
