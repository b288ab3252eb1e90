#include "softfoot/foot_model.hpp"

#include <cmath>

namespace softfoot::model {

SoftFootParams SoftFootParams::nominal() { return nominal_with_stiffness(2.5, 2.5); }

SoftFootParams SoftFootParams::nominal_with_stiffness(double e_bar, double e0) {
  SoftFootParams p;
  p.joint_stiffness = Eigen::VectorXd::Constant(p.n + 2, e_bar);
  p.pulley_radii = Eigen::VectorXd::Constant(p.n + 3, 1.5e-3);
  p.arch_stiffness = e0;
  p.load_arm = p.arch_heel_length;
  p.pretension_angle = p.beta_bar;
  return p;
}

Eigen::VectorXd SoftFootParams::full_stiffness() const {
  Eigen::VectorXd e(joint_count());
  e(0) = arch_stiffness;
  e.tail(n + 2) = joint_stiffness;
  return e;
}

void SoftFootParams::validate() const {
  require(n >= 1, "n must be >= 1");
  require(phalanx_length > 0.0, "phalanx_length must be > 0");
  require(arch_front_length > 0.0, "arch_front_length must be > 0");
  require(arch_heel_length > 0.0, "arch_heel_length must be > 0");
  require(arch_stiffness > 0.0, "arch_stiffness must be > 0");
  require(joint_stiffness.size() == n + 2, "joint_stiffness must have n+2 entries");
  require((joint_stiffness.array() > 0.0).all(), "joint stiffnesses must be > 0");
  require(pulley_radii.size() == n + 3, "pulley_radii must have n+3 entries");
  require((pulley_radii.array() > 0.0).all(), "pulley radii must be > 0");
  require(std::isfinite(tendon_length_offset), "tendon_length_offset must be finite");
  require(std::isfinite(terrain_height), "terrain_height must be finite");
  require(std::abs(terrain_height) < (n + 3) * phalanx_length,
          "terrain_height must satisfy |delta| < (n+3)*L");
  require(load_arm > 0.0, "load_arm must be > 0");
  require(std::isfinite(pretension_angle), "pretension_angle must be finite");
}

Eigen::VectorXd assemble_residual(const SoftFootParams& params, const FootLoad& load,
                                  const EquilibriumCandidate& candidate) {
  params.validate();
  load.validate();
  const int nj = params.joint_count();
  require(candidate.q.size() == nj, "candidate q must have n+3 entries");
  require(candidate.q.allFinite(), "candidate q must be finite");

  const int n = params.n;
  const double L = params.phalanx_length;
  const double ca = std::cos(params.alpha_bar);
  const double sa = std::sin(params.alpha_bar);
  const double cb = std::cos(params.beta_bar);
  const double sab = std::sin(params.alpha_bar + params.beta_bar);
  const double fp = load.force;

  // Absolute link angles: partial sums of q.
  Eigen::VectorXd phi(nj), s(nj), c(nj);
  double acc = 0.0;
  for (int i = 0; i < nj; ++i) {
    acc += candidate.q(i);
    phi(i) = acc;
    s(i) = std::sin(acc);
    c(i) = std::cos(acc);
  }

  // Joint torques from springs, pretension and the tendon.
  const Eigen::VectorXd e = params.full_stiffness();
  Eigen::VectorXd m = -e.cwiseProduct(candidate.q) + params.pulley_radii * candidate.tension;
  m(0) += params.arch_stiffness * params.pretension_angle;

  // Structural reaction transmitted by the front arch strut.
  const double rm = (fp * params.load_arm -
                     params.arch_stiffness * (candidate.q(0) - params.pretension_angle)) /
                    (params.arch_heel_length * sab);

  Eigen::VectorXd rho(nj + 4);
  const double f23 = candidate.f2 + candidate.f3;
  for (int i = 0; i <= n; ++i) {
    rho(i) = m(i) - m(i + 1) - rm * ca * L * s(i) - (rm * sa - f23) * L * c(i);
  }
  rho(n + 1) = m(n + 1) - m(n + 2) + candidate.f3 * L * c(n + 1);
  rho(n + 2) = m(n + 2) + candidate.f3 * L * c(n + 2);

  // Whole-foot force balance.
  rho(n + 3) = fp - candidate.f1 - candidate.f2 - candidate.f3;

  // Whole-foot moment balance about the heel attachment. The toe arm keeps
  // the bare-angle cosines of the last two joints.
  const double arm2 = params.arch_heel_length * cb + params.arch_front_length * ca;
  const double arm3 = arm2 + L * (std::cos(candidate.q(n)) +
                                  std::cos(candidate.q(n) + candidate.q(n + 1)));
  rho(n + 4) = fp - (arm2 / params.load_arm) * candidate.f2 -
               (arm3 / params.load_arm) * candidate.f3;

  // Ground and tendon constraints.
  rho(n + 5) = L * s.sum() - params.terrain_height;
  rho(n + 6) = params.pulley_radii.dot(candidate.q) - params.tendon_length_offset;
  return rho;
}

namespace {

Eigen::VectorXd pack(const EquilibriumCandidate& c) {
  Eigen::VectorXd x(c.q.size() + 4);
  x.head(c.q.size()) = c.q;
  x(c.q.size() + 0) = c.f1;
  x(c.q.size() + 1) = c.f2;
  x(c.q.size() + 2) = c.f3;
  x(c.q.size() + 3) = c.tension;
  return x;
}

EquilibriumCandidate unpack(const Eigen::VectorXd& x, int nj) {
  EquilibriumCandidate c;
  c.q = x.head(nj);
  c.f1 = x(nj + 0);
  c.f2 = x(nj + 1);
  c.f3 = x(nj + 2);
  c.tension = x(nj + 3);
  return c;
}

EquilibriumCandidate default_guess(const SoftFootParams& params, const FootLoad& load) {
  EquilibriumCandidate c;
  c.q = Eigen::VectorXd::Zero(params.joint_count());
  const double arm2 = params.arch_heel_length * std::cos(params.beta_bar) +
                      params.arch_front_length * std::cos(params.alpha_bar);
  const double arm3 = arm2 + 2.0 * params.phalanx_length;
  c.f3 = load.force * params.load_arm / arm3;
  c.f1 = load.force - c.f3;
  return c;
}

EquilibriumState make_state(const EquilibriumCandidate& c, double res, int it) {
  EquilibriumState st;
  st.q = c.q;
  st.f1 = c.f1;
  st.f2 = c.f2;
  st.f3 = c.f3;
  st.tension = c.tension;
  st.residual_norm = res;
  st.iterations = it;
  st.method = SolveMethod::nonlinear;
  return st;
}

}  // namespace

EquilibriumState solve_equilibrium(const SoftFootParams& params, const FootLoad& load,
                                   const std::optional<EquilibriumCandidate>& initial_guess,
                                   const SolveOptions& options) {
  params.validate();
  load.validate();
  const int nj = params.joint_count();
  const int dim = nj + 4;

  Eigen::VectorXd x = pack(initial_guess ? *initial_guess : default_guess(params, load));
  require(x.size() == dim, "initial guess has the wrong dimension");

  const double tol = options.tolerance_factor * std::max(1.0, load.force * params.phalanx_length);
  auto residual_at = [&](const Eigen::VectorXd& v) {
    return assemble_residual(params, load, unpack(v, nj));
  };

  std::vector<double> history;
  Eigen::VectorXd r = residual_at(x);
  double rnorm = r.lpNorm<Eigen::Infinity>();
  history.push_back(rnorm);

  for (int it = 0; it < options.max_iterations; ++it) {
    if (rnorm <= tol) return make_state(unpack(x, nj), rnorm, it);

    Eigen::MatrixXd jac(dim, dim);
    for (int j = 0; j < dim; ++j) {
      const double h = options.fd_step * std::max(1.0, std::abs(x(j)));
      Eigen::VectorXd xp = x;
      xp(j) += h;
      jac.col(j) = (residual_at(xp) - r) / h;
    }

    Eigen::FullPivLU<Eigen::MatrixXd> lu(jac);
    if (!lu.isInvertible()) {
      throw newton_failure("singular Jacobian at iteration " + std::to_string(it),
                           make_state(unpack(x, nj), rnorm, it), history);
    }
    const Eigen::VectorXd dx = lu.solve(-r);

    double step = 1.0;
    Eigen::VectorXd x_next, r_next;
    double rnorm_next = rnorm;
    while (step >= options.min_line_search) {
      x_next = x + step * dx;
      r_next = residual_at(x_next);
      rnorm_next = r_next.lpNorm<Eigen::Infinity>();
      if (rnorm_next < rnorm) break;
      step *= 0.5;
    }
    if (!(rnorm_next < rnorm)) {
      throw newton_failure("line search stalled at iteration " + std::to_string(it) +
                               " (residual " + std::to_string(rnorm) + ")",
                           make_state(unpack(x, nj), rnorm, it), history);
    }
    x = x_next;
    r = r_next;
    rnorm = rnorm_next;
    history.push_back(rnorm);
  }

  if (rnorm <= tol) return make_state(unpack(x, nj), rnorm, options.max_iterations);
  throw newton_failure("no convergence after " + std::to_string(options.max_iterations) +
                           " iterations (residual " + std::to_string(rnorm) + ", tolerance " +
                           std::to_string(tol) + ")",
                       make_state(unpack(x, nj), rnorm, options.max_iterations), history);
}

EquilibriumState solve_equilibrium_ramped(const SoftFootParams& params, const FootLoad& load,
                                          int ramp_steps, const SolveOptions& options) {
  try {
    return solve_equilibrium(params, load, {}, options);
  } catch (const newton_failure&) {
    // fall through to the ramp
  }
  require(ramp_steps >= 2, "ramp_steps must be >= 2");
  std::optional<EquilibriumCandidate> guess;
  EquilibriumState state;
  for (int k = 1; k <= ramp_steps; ++k) {
    const FootLoad partial{load.force * static_cast<double>(k) / ramp_steps};
    state = solve_equilibrium(params, partial, guess, options);
    guess = state.candidate();
  }
  return state;
}

FootShape foot_shape(const SoftFootParams& params, const Eigen::VectorXd& q) {
  params.validate();
  require(q.size() == params.joint_count(), "q must have n+3 entries");

  FootShape shape;
  shape.sole.reserve(params.joint_count() + 1);
  shape.sole.emplace_back(0.0, 0.0);
  double acc = 0.0;
  Vec2 node(0.0, 0.0);
  for (int i = 0; i < params.joint_count(); ++i) {
    acc += q(i);
    node += params.phalanx_length * Vec2(std::cos(acc), std::sin(acc));
    shape.sole.push_back(node);
  }
  shape.heel_attachment_index = 1;
  shape.front_attachment_index = params.n + 1;
  shape.toe_index = params.n + 3;
  shape.ankle = shape.sole[1] + params.arch_heel_length *
                                    Vec2(std::cos(params.beta_bar), std::sin(params.beta_bar));
  return shape;
}

double compression_measure(const SoftFootParams& params, const Eigen::VectorXd& q) {
  require(q.size() == params.joint_count(), "q must have n+3 entries");
  const double ca = std::cos(params.alpha_bar);
  double acc = 0.0;
  double sum = 0.0;
  for (int i = 0; i < params.joint_count(); ++i) {
    acc += q(i);
    sum += 1.0 - std::cos(acc);
  }
  return params.phalanx_length * ca * ca * sum;
}

double arch_height(const SoftFootParams& params, const Eigen::VectorXd& q) {
  require(q.size() == params.joint_count(), "q must have n+3 entries");
  return params.phalanx_length * std::sin(q(0)) +
         params.arch_heel_length * std::sin(params.beta_bar);
}

}  // namespace softfoot::model
