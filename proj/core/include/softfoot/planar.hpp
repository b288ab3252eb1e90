#pragma once

#include <vector>

#include "softfoot/common.hpp"

namespace softfoot::planar {

/// Rigid flat foot standing across a single obstacle edge.
/// obstacle_position is the contact point measured along the sole from the
/// heel (no sliding, so the material contact point is fixed).
struct RigidFootScenario {
  double sole_length = 0.0;        // L [m]
  double leg_height = 0.0;         // H [m]
  double obstacle_position = 0.0;  // [m from heel]
  double obstacle_height = 0.0;    // [m]
  double ankle_limit = 0.0;        // theta_max [rad]

  void validate() const;
};

enum class ContactSide { flat, heel_side, tip_side };

/// One statically admissible resting pose of the rigid foot.
struct RigidPose {
  double tilt = 0.0;              // alpha [rad], positive = toe up
  double com_displacement = 0.0;  // ~ alpha * H [m]
  double compensation = 0.0;      // ankle angle restoring verticality [rad]
  double support_lo = 0.0;        // horizontal projection of the contact pair [m]
  double support_hi = 0.0;
  ContactSide side = ContactSide::flat;
};

/// Both candidate poses (heel<->obstacle, obstacle<->tip) when admissible.
/// Throws when the obstacle is too tall for the sole to reach the ground.
std::vector<RigidPose> rigid_foot_on_obstacle(const RigidFootScenario& scenario);

/// Flat foot with its compliance lumped into two springs at +-L/2.
struct CompliantLumpedParams {
  double spring_stiffness = 0.0;  // k [N/m]
  double sole_length = 0.0;       // L [m]
  double load = 0.0;              // P [N]
  double mass = 0.0;              // m [kg]
  double gravity = kGravity;      // g [m/s^2]
  double leg_height = 0.0;        // H [m]

  void validate() const;
};

/// Tilt of the lumped compliant foot for a COM offset x from mid-sole.
double compliant_tilt_angle(const CompliantLumpedParams& params, double com_offset);

/// Stiffness below which the ankle range cannot cover the full sole.
double k_min_support(double load, double sole_length, double ankle_limit);

enum class StabilityConvention { as_written, dimensional_correction };

/// Stiffness bound for passive stability of the elastic inverted pendulum.
/// `as_written` evaluates 2*m*g*L^2/H; `dimensional_correction` evaluates
/// 2*m*g*H/L^2, the form consistent with k_theta = k*L^2/2 > m*g*H.
double k_min_stability(const CompliantLumpedParams& params, StabilityConvention convention);

/// Adaptive two-arch foot: traction-beam angles alpha1 (tip) and alpha2
/// (heel), heel-arch angle alpha_H from the vertical.
struct AdaptiveArchParams {
  double sole_length = 0.0;  // L [m]
  double load = 0.0;         // P [N]
  double com_position = 0.0; // x_com [m from heel]
  double alpha1 = 0.0;       // [rad]
  double alpha2 = 0.0;       // [rad]
  double alpha_h = 0.0;      // [rad]

  void validate() const;
};

/// Contact forces at heel, obstacle and tip. Negative values are reported
/// and flagged inadmissible, never clamped.
struct AdaptiveArchForces {
  double heel = 0.0;      // T_h [N]
  double obstacle = 0.0;  // T_o [N]
  double tip = 0.0;       // T_t [N]
  bool admissible = false;
};

AdaptiveArchForces adaptive_arch_forces(const AdaptiveArchParams& params);

/// COM interval with guaranteed positive contact forces per the closed-form
/// lower bound; possibly empty after clamping to [0, L].
struct ComRange {
  double lo = 0.0;
  double hi = 0.0;
  bool empty = false;
  double unclamped_lower = 0.0;
};

ComRange adaptive_admissible_com_range(const AdaptiveArchParams& params);

}  // namespace softfoot::planar
