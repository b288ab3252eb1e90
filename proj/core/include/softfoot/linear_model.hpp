#pragma once

#include "softfoot/foot_model.hpp"

namespace softfoot::model {

/// Small-angle form of the static balance: block system
///   [ -E_eff  [r^T d] ] [ q; (T, L*F3) ] = [ m_e; (sigma, delta/L) ]
/// with unknowns ordered (q, T, L*F3). E_eff carries the diagonal stiffness
/// plus the load-geometric coupling of the arch; the constraint rows are the
/// tendon (pulley radii) and the ground row c = (n+3, n+2, ..., 1).
struct LinearEquilibriumSystem {
  int n = 0;
  Eigen::MatrixXd matrix;   // (n+5) x (n+5)
  Eigen::VectorXd rhs;      // (n+5)
  Eigen::MatrixXd e_eff;    // (n+3) x (n+3), the E block
  Eigen::VectorXd m_e;      // (n+3) elastic/load right-hand side
  Eigen::VectorXd d;        // (n+3) coupling column of the L*F3 unknown
  Eigen::VectorXd c;        // (n+3) ground constraint row
  Eigen::VectorXd radii;    // (n+3) tendon constraint row

  int joint_count() const { return n + 3; }
};

/// Exact linearization of the nonlinear balance about q=0, T=0 (reaction
/// forces at their zeroth-order values, F1 and F2 eliminated).
LinearEquilibriumSystem assemble_linear_system(const SoftFootParams& params,
                                               const FootLoad& load);

struct LinearSolution {
  Eigen::VectorXd q;
  double tension = 0.0;
  double f3_times_length = 0.0;
};

/// Direct dense solve of the assembled block system.
LinearSolution solve_linear(const LinearEquilibriumSystem& system);

/// Two-term block-inversion evaluation of the same system:
/// projector applied to E_eff^{-1} m_e plus the constraint-consistent term.
Eigen::VectorXd solve_closed_form(const SoftFootParams& params, const FootLoad& load);

/// Contact Jacobian row J(q) = L*cos^2(alpha) * [sin(phi_0) .. sin(phi_{n+2})]
/// with phi_i the partial sums of q.
Eigen::RowVectorXd contact_jacobian(const SoftFootParams& params, const Eigen::VectorXd& q);

struct ComplianceOptions {
  double step = 0.0;  // finite-difference load step; 0 = max(1e-4*F_P, 1e-3 N)
  int ramp_steps = 8;
};

/// Compliance to compression J(q) * dq/dF_P by central finite differences on
/// the nonlinear equilibrium.
double compliance_to_compression(const SoftFootParams& params, const FootLoad& load,
                                 const ComplianceOptions& options = {});

/// Same quantity from the small-angle model: analytic derivative of the
/// linear solution with respect to F_P, contracted with J(q_linear).
double compliance_to_compression_linear(const SoftFootParams& params, const FootLoad& load);

}  // namespace softfoot::model
