#include "softfoot/linear_model.hpp"

#include <cmath>

namespace softfoot::model {

namespace {

// Inverse of the upper-bidiagonal difference matrix: upper-triangular ones.
Eigen::MatrixXd difference_inverse(int size) {
  return Eigen::MatrixXd::Ones(size, size).triangularView<Eigen::Upper>();
}

}  // namespace

LinearEquilibriumSystem assemble_linear_system(const SoftFootParams& params,
                                               const FootLoad& load) {
  params.validate();
  load.validate();

  const int n = params.n;
  const int nj = params.joint_count();
  const double L = params.phalanx_length;
  const double ca = std::cos(params.alpha_bar);
  const double sa = std::sin(params.alpha_bar);
  const double cb = std::cos(params.beta_bar);
  const double sab = std::sin(params.alpha_bar + params.beta_bar);
  const double b = params.arch_heel_length;
  const double fp = load.force;

  if (std::abs(b * sab) < 1e-12) throw solve_error("degenerate arch geometry: b*sin(alpha+beta) = 0");

  const double arm2 = b * cb + params.arch_front_length * ca;  // heel->front attachment span
  const double arm3 = arm2 + 2.0 * L;                          // heel attachment -> toe
  if (std::abs(arm2) < 1e-12) throw solve_error("degenerate arch geometry: zero attachment span");

  const Eigen::MatrixXd minv = difference_inverse(nj);

  // Row patterns of the moment block: rows 0..n carry the arch reaction and
  // the F2+F3 share, the last two rows only F3.
  Eigen::VectorXd lead = Eigen::VectorXd::Zero(nj);
  lead.head(n + 1).setOnes();
  const Eigen::VectorXd e_r = L * sa * lead;

  LinearEquilibriumSystem sys;
  sys.n = n;

  // d column: F2 eliminated through the whole-foot moment balance.
  Eigen::VectorXd f3_pattern = Eigen::VectorXd::Ones(nj);
  f3_pattern.head(n + 1).array() = 1.0 - arm3 / arm2;
  sys.d = minv * f3_pattern;

  // Load-geometric stiffness correction. P = partial-sum matrix on rows 0..n.
  Eigen::MatrixXd partial = Eigen::MatrixXd::Zero(nj, nj);
  partial.topLeftCorner(n + 1, n + 1) =
      Eigen::MatrixXd::Ones(n + 1, n + 1).triangularView<Eigen::Lower>();
  const double scal =
      (fp * params.load_arm + params.arch_stiffness * params.pretension_angle) * ca * L / (b * sab);

  sys.e_eff = Eigen::MatrixXd(params.full_stiffness().asDiagonal());
  sys.e_eff += scal * (minv * partial);
  // Sensitivity of the arch reaction R_M to q0 (spring torque on the heel arch).
  sys.e_eff.col(0) -= (params.arch_stiffness / (b * sab)) * (minv * e_r);

  const double rm0 = (fp * params.load_arm + params.arch_stiffness * params.pretension_angle) /
                     (b * sab);
  Eigen::VectorXd e_e = Eigen::VectorXd::Zero(nj);
  e_e(0) = params.arch_stiffness;
  // The sin(alpha) of e_r cancels against the eliminated-F2 constant share.
  // The pretension torque +e0*beta_pre of the joint law lands on the right-hand
  // side with a minus sign once the constant rows move across.
  sys.m_e = minv * (e_r * rm0 - lead * (L * fp * params.load_arm / arm2)) -
            e_e * params.pretension_angle;

  sys.c = Eigen::VectorXd::LinSpaced(nj, nj, 1);
  sys.radii = params.pulley_radii;

  sys.matrix = Eigen::MatrixXd::Zero(nj + 2, nj + 2);
  sys.matrix.topLeftCorner(nj, nj) = -sys.e_eff;
  sys.matrix.block(0, nj, nj, 1) = sys.radii;
  sys.matrix.block(0, nj + 1, nj, 1) = sys.d;
  sys.matrix.block(nj, 0, 1, nj) = sys.radii.transpose();
  sys.matrix.block(nj + 1, 0, 1, nj) = sys.c.transpose();

  sys.rhs = Eigen::VectorXd::Zero(nj + 2);
  sys.rhs.head(nj) = sys.m_e;
  sys.rhs(nj) = params.tendon_length_offset;
  sys.rhs(nj + 1) = params.terrain_height / L;
  return sys;
}

LinearSolution solve_linear(const LinearEquilibriumSystem& system) {
  const int nj = system.joint_count();
  Eigen::FullPivLU<Eigen::MatrixXd> lu(system.matrix);
  if (!lu.isInvertible()) {
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(system.matrix);
    const double cond = svd.singularValues()(0) /
                        std::max(svd.singularValues().tail(1)(0), 1e-300);
    throw solve_error("singular linear system (condition estimate " + std::to_string(cond) + ")");
  }
  const Eigen::VectorXd z = lu.solve(system.rhs);
  const double rel = (system.matrix * z - system.rhs).norm() /
                     std::max(1.0, system.rhs.norm());
  if (!(rel <= 1e-12)) {
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(system.matrix);
    const double cond = svd.singularValues()(0) /
                        std::max(svd.singularValues().tail(1)(0), 1e-300);
    throw solve_error("ill-conditioned linear system: residual " + std::to_string(rel) +
                      " (condition estimate " + std::to_string(cond) + ")");
  }
  LinearSolution sol;
  sol.q = z.head(nj);
  sol.tension = z(nj);
  sol.f3_times_length = z(nj + 1);
  return sol;
}

Eigen::VectorXd solve_closed_form(const SoftFootParams& params, const FootLoad& load) {
  const LinearEquilibriumSystem sys = assemble_linear_system(params, load);
  const int nj = sys.joint_count();

  Eigen::FullPivLU<Eigen::MatrixXd> elu(sys.e_eff);
  if (!elu.isInvertible()) throw solve_error("constraint degeneracy: E block singular");

  Eigen::MatrixXd g(nj, 2);
  g.col(0) = sys.radii;
  g.col(1) = sys.d;
  Eigen::MatrixXd k(2, nj);
  k.row(0) = sys.radii.transpose();
  k.row(1) = sys.c.transpose();

  const Eigen::MatrixXd ei_g = elu.solve(g);       // E^{-1} [r^T d]
  const Eigen::Matrix2d reduced = k * ei_g;        // [r; c] E^{-1} [r^T d]
  Eigen::FullPivLU<Eigen::Matrix2d> rlu(reduced);
  if (!rlu.isInvertible()) throw solve_error("constraint degeneracy: reduced 2x2 matrix singular");

  const Eigen::VectorXd ei_me = elu.solve(sys.m_e);
  const Eigen::Vector2d s(params.tendon_length_offset,
                          params.terrain_height / params.phalanx_length);

  return -(ei_me - ei_g * rlu.solve(k * ei_me)) + ei_g * rlu.solve(s);
}

Eigen::RowVectorXd contact_jacobian(const SoftFootParams& params, const Eigen::VectorXd& q) {
  require(q.size() == params.joint_count(), "q must have n+3 entries");
  const double ca = std::cos(params.alpha_bar);
  Eigen::RowVectorXd jac(params.joint_count());
  double acc = 0.0;
  for (int i = 0; i < params.joint_count(); ++i) {
    acc += q(i);
    jac(i) = params.phalanx_length * ca * ca * std::sin(acc);
  }
  return jac;
}

double compliance_to_compression(const SoftFootParams& params, const FootLoad& load,
                                 const ComplianceOptions& options) {
  const double h = options.step > 0.0 ? options.step : std::max(1e-4 * load.force, 1e-3);
  const EquilibriumState center = solve_equilibrium_ramped(params, load, options.ramp_steps);
  const auto warm = std::optional<EquilibriumCandidate>(center.candidate());

  Eigen::VectorXd dq;
  if (load.force >= h) {
    const EquilibriumState hi = solve_equilibrium(params, FootLoad{load.force + h}, warm);
    const EquilibriumState lo = solve_equilibrium(params, FootLoad{load.force - h}, warm);
    dq = (hi.q - lo.q) / (2.0 * h);
  } else {
    // Loads below the step cannot be probed symmetrically (F_P >= 0).
    const EquilibriumState hi = solve_equilibrium(params, FootLoad{load.force + h}, warm);
    dq = (hi.q - center.q) / h;
  }
  return contact_jacobian(params, center.q) * dq;
}

double compliance_to_compression_linear(const SoftFootParams& params, const FootLoad& load) {
  const LinearEquilibriumSystem sys = assemble_linear_system(params, load);
  const LinearSolution sol = solve_linear(sys);

  // The system is affine in F_P; difference at unit load gives the exact
  // derivative of the matrix and right-hand side.
  const LinearEquilibriumSystem sys1 = assemble_linear_system(params, FootLoad{load.force + 1.0});
  const Eigen::MatrixXd mat_dot = sys1.matrix - sys.matrix;
  const Eigen::VectorXd rhs_dot = sys1.rhs - sys.rhs;

  Eigen::VectorXd z(sys.joint_count() + 2);
  z.head(sys.joint_count()) = sol.q;
  z(sys.joint_count()) = sol.tension;
  z(sys.joint_count() + 1) = sol.f3_times_length;

  Eigen::FullPivLU<Eigen::MatrixXd> lu(sys.matrix);
  if (!lu.isInvertible()) throw solve_error("singular linear system in compliance derivative");
  const Eigen::VectorXd dz = lu.solve(rhs_dot - mat_dot * z);
  return contact_jacobian(params, sol.q) * dz.head(sys.joint_count());
}

}  // namespace softfoot::model
