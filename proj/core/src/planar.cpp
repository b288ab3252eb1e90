#include "softfoot/planar.hpp"

#include <cmath>

namespace softfoot::planar {

void RigidFootScenario::validate() const {
  require(sole_length > 0.0, "sole_length must be > 0");
  require(leg_height > 0.0, "leg_height must be > 0");
  require(obstacle_position >= 0.0 && obstacle_position <= sole_length,
          "obstacle_position must lie in [0, sole_length]");
  require(obstacle_height >= 0.0, "obstacle_height must be >= 0");
  require(ankle_limit > 0.0, "ankle_limit must be > 0");
}

std::vector<RigidPose> rigid_foot_on_obstacle(const RigidFootScenario& scenario) {
  scenario.validate();
  const double L = scenario.sole_length;
  const double p = scenario.obstacle_position;
  const double h = scenario.obstacle_height;

  if (h == 0.0) {
    RigidPose flat;
    flat.support_lo = 0.0;
    flat.support_hi = L;
    flat.side = ContactSide::flat;
    return {flat};
  }

  std::vector<RigidPose> poses;

  // Heel on the ground, obstacle edge under the sole at arc length p.
  if (p > 0.0 && h <= p) {
    RigidPose pose;
    pose.tilt = std::asin(h / p);
    pose.com_displacement = pose.tilt * scenario.leg_height;
    pose.compensation = -pose.tilt;
    pose.support_lo = 0.0;
    pose.support_hi = p * std::cos(pose.tilt);
    pose.side = ContactSide::heel_side;
    poses.push_back(pose);
  }

  // Tip on the ground, obstacle edge under the sole at arc length p.
  if (p < L && h <= L - p) {
    RigidPose pose;
    pose.tilt = -std::asin(h / (L - p));
    pose.com_displacement = pose.tilt * scenario.leg_height;
    pose.compensation = -pose.tilt;
    const double c = std::cos(pose.tilt);
    pose.support_lo = p * c;            // obstacle contact, projected from the heel
    pose.support_hi = p * c + (L - p) * c;
    pose.side = ContactSide::tip_side;
    poses.push_back(pose);
  }

  if (poses.empty()) {
    throw solve_error("obstacle too tall: sole cannot touch the ground on either side");
  }
  return poses;
}

void CompliantLumpedParams::validate() const {
  require(spring_stiffness > 0.0, "spring_stiffness must be > 0");
  require(sole_length > 0.0, "sole_length must be > 0");
  require(load > 0.0, "load must be > 0");
  require(mass > 0.0, "mass must be > 0");
  require(gravity > 0.0, "gravity must be > 0");
  require(leg_height > 0.0, "leg_height must be > 0");
}

double compliant_tilt_angle(const CompliantLumpedParams& params, double com_offset) {
  params.validate();
  require(std::abs(com_offset) <= params.sole_length / 2.0 + 1e-15,
          "|com_offset| must not exceed L/2");
  const double L = params.sole_length;
  return 2.0 * params.load * com_offset / (params.spring_stiffness * L * L);
}

double k_min_support(double load, double sole_length, double ankle_limit) {
  require(load > 0.0 && sole_length > 0.0 && ankle_limit > 0.0,
          "k_min_support arguments must be > 0");
  return load / (sole_length * ankle_limit);
}

double k_min_stability(const CompliantLumpedParams& params, StabilityConvention convention) {
  params.validate();
  const double m = params.mass;
  const double g = params.gravity;
  const double L = params.sole_length;
  const double H = params.leg_height;
  switch (convention) {
    case StabilityConvention::as_written:
      return 2.0 * m * g * L * L / H;
    case StabilityConvention::dimensional_correction:
      return 2.0 * m * g * H / (L * L);
  }
  throw invalid_input("unknown stability convention");
}

void AdaptiveArchParams::validate() const {
  require(sole_length > 0.0, "sole_length must be > 0");
  require(load > 0.0, "load must be > 0");
  const auto angle_ok = [](double a) { return a > 0.0 && a < M_PI / 2.0; };
  require(angle_ok(alpha1) && angle_ok(alpha2) && angle_ok(alpha_h),
          "arch angles must lie in (0, pi/2)");
}

AdaptiveArchForces adaptive_arch_forces(const AdaptiveArchParams& params) {
  params.validate();
  const double L = params.sole_length;
  const double x = params.com_position;
  const double P = params.load;
  const double t1 = std::tan(params.alpha1);
  const double t2 = std::tan(params.alpha2);
  const double th = std::tan(params.alpha_h);

  AdaptiveArchForces f;
  f.heel = P * (L - x) / L * (1.0 - t1 * th);
  f.obstacle = P * (L - x) / L * (t1 + t2) * th;
  f.tip = P * ((x - L) * t2 * th + x) / L;
  f.admissible = f.heel >= 0.0 && f.obstacle >= 0.0 && f.tip >= 0.0;
  return f;
}

ComRange adaptive_admissible_com_range(const AdaptiveArchParams& params) {
  params.validate();
  const double L = params.sole_length;
  const double u = std::tan(params.alpha_h) * std::tan(params.alpha2);

  ComRange r;
  r.unclamped_lower = L * (1.0 - u) / u;
  r.lo = std::max(0.0, r.unclamped_lower);
  r.hi = L;
  r.empty = r.lo > r.hi;
  if (r.empty) {
    r.lo = r.hi = 0.0;
  }
  return r;
}

}  // namespace softfoot::planar
