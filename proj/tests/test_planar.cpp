#include <doctest.h>

#include <cmath>
#include <random>

#include "softfoot/planar.hpp"

using namespace softfoot;
using namespace softfoot::planar;

namespace {

RigidFootScenario scenario(double pos, double h) {
  RigidFootScenario s;
  s.sole_length = 0.219;
  s.leg_height = 0.25;
  s.obstacle_position = pos;
  s.obstacle_height = h;
  s.ankle_limit = 0.6;
  return s;
}

CompliantLumpedParams compliant(double k) {
  CompliantLumpedParams p;
  p.spring_stiffness = k;
  p.sole_length = 0.2;
  p.load = 15.0;
  p.mass = 50.0;
  p.gravity = 9.81;
  p.leg_height = 1.0;
  return p;
}

}  // namespace

TEST_CASE("rigid foot on flat ground keeps the whole sole") {
  const auto poses = rigid_foot_on_obstacle(scenario(0.1, 0.0));
  REQUIRE(poses.size() == 1);
  CHECK(poses[0].tilt == 0.0);
  CHECK(poses[0].support_lo == 0.0);
  CHECK(poses[0].support_hi == doctest::Approx(0.219));
  CHECK(poses[0].side == ContactSide::flat);
}

TEST_CASE("obstacle at the tip gives the heel-side pose") {
  const double h = 0.02;
  const auto poses = rigid_foot_on_obstacle(scenario(0.219, h));
  REQUIRE(poses.size() == 1);
  const auto& pose = poses[0];
  CHECK(pose.side == ContactSide::heel_side);
  CHECK(pose.tilt == doctest::Approx(std::asin(h / 0.219)).epsilon(1e-14));

  // Trigonometry oracle: the contact point recomputed from the pose must land
  // on the obstacle corner.
  const double s = 0.219;  // contact arc length equals the obstacle position here
  CHECK(s * std::sin(pose.tilt) == doctest::Approx(h).epsilon(1e-12));
  CHECK(pose.support_hi == doctest::Approx(s * std::cos(pose.tilt)).epsilon(1e-12));
  CHECK(pose.com_displacement == doctest::Approx(pose.tilt * 0.25));
}

TEST_CASE("mid-sole obstacle returns both admissible poses") {
  const auto poses = rigid_foot_on_obstacle(scenario(0.1, 0.01));
  REQUIRE(poses.size() == 2);
  CHECK(poses[0].side == ContactSide::heel_side);
  CHECK(poses[1].side == ContactSide::tip_side);
  CHECK(poses[0].tilt == doctest::Approx(std::asin(0.01 / 0.1)));
  CHECK(poses[1].tilt == doctest::Approx(-std::asin(0.01 / 0.119)));
  // Static admissibility: each pose supports a nonempty CoP interval.
  for (const auto& pose : poses) CHECK(pose.support_hi > pose.support_lo);
}

TEST_CASE("too-tall obstacle is rejected") {
  CHECK_THROWS_AS(rigid_foot_on_obstacle(scenario(0.1, 0.15)), solve_error);
}

TEST_CASE("compliant tilt matches the stated example and linearity") {
  auto p = compliant(1000.0);
  CHECK(compliant_tilt_angle(p, 0.0) == 0.0);
  CHECK(compliant_tilt_angle(p, 0.05) == doctest::Approx(0.0375).epsilon(1e-14));

  auto stiffer = compliant(2000.0);
  CHECK(compliant_tilt_angle(p, 0.05) / compliant_tilt_angle(stiffer, 0.05) ==
        doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("compliant tilt agrees with a two-spring torque balance oracle") {
  // Springs at +-L/2 with stiffness k each: force split from moment balance,
  // tilt from the deflection difference across the span.
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> uk(200.0, 5000.0);
  std::uniform_real_distribution<double> ux(-0.5, 0.5);
  for (int i = 0; i < 100; ++i) {
    auto p = compliant(uk(rng));
    const double x = ux(rng) * p.sole_length;
    const double f_tip = p.load * (0.5 + x / p.sole_length);
    const double f_heel = p.load - f_tip;
    const double tilt_oracle =
        (f_tip - f_heel) / p.spring_stiffness / p.sole_length;
    CHECK(compliant_tilt_angle(p, x) == doctest::Approx(tilt_oracle).epsilon(1e-12));
  }
}

TEST_CASE("support stiffness bound") {
  CHECK(k_min_support(15.0, 0.2, 0.3) == doctest::Approx(250.0).epsilon(1e-14));
  // Cross-check: at k_min, the edge-of-sole offset needs exactly theta_max.
  auto p = compliant(250.0);
  CHECK(compliant_tilt_angle(p, 0.1) == doctest::Approx(0.3).epsilon(1e-12));
  // Limits and linearity.
  CHECK(k_min_support(15.0, 0.2, 3e6) < 1e-4);
  CHECK(k_min_support(30.0, 0.2, 0.3) == doctest::Approx(500.0));
}

TEST_CASE("stability stiffness bound in both conventions") {
  auto p = compliant(1000.0);
  CHECK(k_min_stability(p, StabilityConvention::as_written) ==
        doctest::Approx(39.24).epsilon(1e-12));
  CHECK(k_min_stability(p, StabilityConvention::dimensional_correction) ==
        doctest::Approx(24525.0).epsilon(1e-12));
  // m -> 0 sends both bounds to zero.
  p.mass = 1e-12;
  CHECK(k_min_stability(p, StabilityConvention::as_written) < 1e-9);
  CHECK(k_min_stability(p, StabilityConvention::dimensional_correction) < 1e-3);
}

TEST_CASE("adaptive arch forces match the worked example") {
  AdaptiveArchParams p{0.2, 15.0, 0.1, M_PI / 6, M_PI / 6, M_PI / 6};
  const auto f = adaptive_arch_forces(p);
  CHECK(f.heel == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(f.obstacle == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(f.tip == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(f.admissible);
  CHECK(f.heel + f.obstacle + f.tip == doctest::Approx(15.0).epsilon(1e-14));
}

TEST_CASE("adaptive force balance identity holds for random draws") {
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> ang(0.05, 1.5);
  std::uniform_real_distribution<double> len(0.05, 0.5);
  std::uniform_real_distribution<double> frac(0.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    AdaptiveArchParams p;
    p.sole_length = len(rng);
    p.load = 1.0 + 100.0 * frac(rng);
    p.com_position = frac(rng) * p.sole_length;
    p.alpha1 = ang(rng);
    p.alpha2 = ang(rng);
    p.alpha_h = ang(rng);
    const auto f = adaptive_arch_forces(p);
    const double sum = f.heel + f.obstacle + f.tip;
    CHECK(std::abs(sum - p.load) <= 1e-12 * p.load);
  }
}

TEST_CASE("adaptive force degeneracies") {
  // tan(alpha1)*tan(alpha_H) = 1 kills the heel force.
  AdaptiveArchParams p{0.2, 15.0, 0.1, M_PI / 4, M_PI / 6, M_PI / 4};
  CHECK(adaptive_arch_forces(p).heel == doctest::Approx(0.0));

  // COM over the tip: everything goes to the tip.
  AdaptiveArchParams q{0.2, 15.0, 0.2, M_PI / 6, M_PI / 6, M_PI / 6};
  const auto f = adaptive_arch_forces(q);
  CHECK(f.heel == doctest::Approx(0.0));
  CHECK(f.obstacle == doctest::Approx(0.0));
  CHECK(f.tip == doctest::Approx(15.0));
}

TEST_CASE("admissible COM range collapses and empties as stated") {
  AdaptiveArchParams unit{0.2, 15.0, 0.1, M_PI / 6, M_PI / 4, M_PI / 4};  // tan*tan = 1
  const auto r1 = adaptive_admissible_com_range(unit);
  CHECK_FALSE(r1.empty);
  CHECK(r1.lo == doctest::Approx(0.0));
  CHECK(r1.hi == doctest::Approx(0.2));

  AdaptiveArchParams narrow{0.2, 15.0, 0.1, M_PI / 6, M_PI / 6, M_PI / 6};  // tan*tan = 1/3
  const auto r2 = adaptive_admissible_com_range(narrow);
  CHECK(r2.empty);
  CHECK(r2.unclamped_lower == doctest::Approx(0.4).epsilon(1e-12));  // 2L
}

TEST_CASE("interior of the admissible range gives positive forces") {
  // Sampled over the moderate-angle regime where the closed-form lower bound
  // is conservative (tan(alpha_H)*tan(alpha2) below ~0.7).
  std::mt19937 rng(37);
  std::uniform_real_distribution<double> ang(0.05, 0.6);
  std::uniform_real_distribution<double> frac(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    AdaptiveArchParams p;
    p.sole_length = 0.1 + 0.3 * frac(rng);
    p.load = 5.0 + 50.0 * frac(rng);
    p.com_position = 0.5 * p.sole_length;
    p.alpha1 = ang(rng);
    p.alpha2 = ang(rng);
    p.alpha_h = ang(rng);
    const auto r = adaptive_admissible_com_range(p);
    if (r.empty) continue;
    // Dense sampling strictly inside the interval.
    for (int k = 1; k < 20; ++k) {
      const double margin = 1e-9 * p.sole_length;
      const double x = r.lo + margin + (r.hi - 2 * margin - r.lo) * k / 20.0;
      p.com_position = x;
      const auto f = adaptive_arch_forces(p);
      CHECK(f.heel >= -1e-12);
      CHECK(f.obstacle >= -1e-12);
      CHECK(f.tip >= -1e-12);
    }
  }
}

TEST_CASE("parameter validation rejects bad inputs") {
  RigidFootScenario bad = scenario(0.1, 0.01);
  bad.sole_length = -1.0;
  CHECK_THROWS_AS(rigid_foot_on_obstacle(bad), invalid_input);

  AdaptiveArchParams p{0.2, 15.0, 0.1, 2.0, M_PI / 6, M_PI / 6};  // angle >= pi/2
  CHECK_THROWS_AS(adaptive_arch_forces(p), invalid_input);

  auto c = compliant(1000.0);
  CHECK_THROWS_AS(compliant_tilt_angle(c, 0.2), invalid_input);  // beyond L/2
}
