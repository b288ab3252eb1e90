#pragma once

#include <optional>
#include <string>
#include <vector>

#include "softfoot/common.hpp"

namespace softfoot::model {

/// Constructive parameters of the articulated foot. The sole is a chain of
/// n+3 links of length L (joint angles q0..q_{n+2}, absolute link angles are
/// the partial sums of q); the two arches attach at chain nodes 1 and n+1 and
/// meet at the ankle. e0 acts at the arch joint with pretension beta_pre;
/// a tendon of fixed length runs over pulleys of radius r_i at every joint.
struct SoftFootParams {
  int n = 6;                          // sole links between the arch attachments
  double phalanx_length = 0.02;       // L [m]
  double arch_front_length = 0.04;    // a [m]
  double arch_heel_length = 0.04;     // b [m]
  double alpha_bar = M_PI / 6.0;      // front arch angle [rad]
  double beta_bar = M_PI / 3.0;       // heel arch angle [rad]
  double arch_stiffness = 2.5;        // e0 [N*m/rad]
  Eigen::VectorXd joint_stiffness;    // e1..e_{n+2} [N*m/rad]
  Eigen::VectorXd pulley_radii;       // r0..r_{n+2} [m]
  double tendon_length_offset = 0.0;  // sigma [m]
  double terrain_height = 0.0;        // delta [m]
  double pretension_angle = M_PI / 3.0;  // beta_pre [rad], defaults to beta_bar
  double load_arm = 0.04;             // x_H [m]

  /// Nominal configuration: n=6, L=20 mm, a=b=40 mm, alpha=pi/6, beta=pi/3,
  /// uniform joint stiffness e_bar=2.5 N*m/rad, e0=2.5 N*m/rad, pulleys of
  /// 1.5 mm radius, x_H=b, beta_pre=beta_bar.
  static SoftFootParams nominal();

  /// Nominal with uniform joint stiffness e_bar and arch stiffness e0.
  static SoftFootParams nominal_with_stiffness(double e_bar, double e0);

  int joint_count() const { return n + 3; }
  Eigen::VectorXd full_stiffness() const;  // diag entries (e0, e1..e_{n+2})

  void validate() const;
};

/// Vertical load applied by the robot at the ankle.
struct FootLoad {
  double force = 0.0;  // F_P [N]

  static FootLoad from_mass(double kg) { return {kg * kGravity}; }
  void validate() const { require(force >= 0.0, "load force must be >= 0"); }
};

/// Candidate unknowns of the static balance: configuration q, the three
/// ground reactions and the tendon tension.
struct EquilibriumCandidate {
  Eigen::VectorXd q;  // n+3 joint angles [rad]
  double f1 = 0.0;    // [N]
  double f2 = 0.0;
  double f3 = 0.0;
  double tension = 0.0;  // T [N]
};

enum class SolveMethod { nonlinear, linear, closed_form };

struct EquilibriumState {
  Eigen::VectorXd q;
  double f1 = 0.0;
  double f2 = 0.0;
  double f3 = 0.0;
  double tension = 0.0;
  double residual_norm = 0.0;
  int iterations = 0;
  SolveMethod method = SolveMethod::nonlinear;

  EquilibriumCandidate candidate() const { return {q, f1, f2, f3, tension}; }
};

/// Carries the best iterate and residual history of a failed solve.
class newton_failure : public solve_error {
 public:
  newton_failure(const std::string& msg, EquilibriumState best, std::vector<double> history)
      : solve_error(msg), best_iterate(std::move(best)), residual_history(std::move(history)) {}

  EquilibriumState best_iterate;
  std::vector<double> residual_history;
};

/// Residual of the n+7 static balance equations at the candidate:
/// rows 0..n+2   joint moment balance with reactions eliminated,
/// row  n+3      vertical force balance,
/// row  n+4      total moment balance about the heel attachment,
/// row  n+5      ground constraint L*sum(sin(phi_i)) - delta,
/// row  n+6      tendon constraint r.q - sigma.
Eigen::VectorXd assemble_residual(const SoftFootParams& params, const FootLoad& load,
                                  const EquilibriumCandidate& candidate);

struct SolveOptions {
  double tolerance_factor = 1e-10;  // residual max-norm <= factor*max(1, F_P*L)
  int max_iterations = 100;
  double fd_step = 1e-7;          // Jacobian step 1e-7*max(1,|x_j|)
  double min_line_search = 9.5367431640625e-7;  // 2^-20
};

/// Damped Newton iteration with finite-difference Jacobian. The default
/// initial guess is q=0 with forces from the rigid lever balance.
EquilibriumState solve_equilibrium(const SoftFootParams& params, const FootLoad& load,
                                   const std::optional<EquilibriumCandidate>& initial_guess = {},
                                   const SolveOptions& options = {});

/// solve_equilibrium with a load-ramp fallback: if the cold start fails, the
/// load is applied in steps, each warm-started from the previous solution.
EquilibriumState solve_equilibrium_ramped(const SoftFootParams& params, const FootLoad& load,
                                          int ramp_steps = 8, const SolveOptions& options = {});

/// Forward kinematics of the sole chain plus the arch attachment data.
struct FootShape {
  std::vector<Vec2> sole;          // n+4 node positions, heel end at origin
  Vec2 ankle = Vec2::Zero();       // heel attachment + b*(cos beta_bar, sin beta_bar)
  int heel_attachment_index = 1;   // node carrying F1
  int front_attachment_index = 2;  // node carrying F2 (n+1)
  int toe_index = 3;               // node carrying F3 (n+3)
};

FootShape foot_shape(const SoftFootParams& params, const Eigen::VectorXd& q);

/// Deviation-from-flat measure kappa(q) = L*cos^2(alpha)*sum(1 - cos(phi_i));
/// its gradient in the absolute link angles is the contact Jacobian.
double compression_measure(const SoftFootParams& params, const Eigen::VectorXd& q);

/// Height of the ankle over the ground line: L*sin(q0) + b*sin(beta_bar).
double arch_height(const SoftFootParams& params, const Eigen::VectorXd& q);

}  // namespace softfoot::model
