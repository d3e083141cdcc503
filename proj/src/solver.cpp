#include "wfr/solver.hpp"

#include <cmath>

namespace wfr {

namespace {

// Mass below this is treated as fully destroyed; the distance degenerates to
// the square root of the total masses and dividing by F would be meaningless.
constexpr double kValueFloor = 1e-300;

void check_omega(const CostMatrix& omega) {
  if (!omega.entries.allFinite() || omega.entries.cwiseAbs().maxCoeff() > 1.0 + 1e-12)
    throw invalid_input("kernel matrix entries must be finite and within [-1, 1]");
}

void source_sweep(RestrictedCoupling& c, const DiscreteMeasure& mu, const Eigen::MatrixXd& om2,
                  Eigen::MatrixXd& w) {
  const int m = om2.rows();
  const int n = om2.cols();
  w = c.target.block(1, 1, m, n).cwiseProduct(om2);
  for (int i = 0; i < m; ++i) {
    const double denom = w.row(i).sum();
    if (denom > 0.0) {
      c.source.block(i + 1, 1, 1, n) = (mu.weight(i) / denom) * w.row(i);
    } else {
      c.source.block(i + 1, 1, 1, n).setZero();
      c.source(i + 1, 0) = mu.weight(i);
    }
  }
}

void target_sweep(RestrictedCoupling& c, const DiscreteMeasure& nu, const Eigen::MatrixXd& om2,
                  Eigen::MatrixXd& w) {
  const int m = om2.rows();
  const int n = om2.cols();
  w = c.source.block(1, 1, m, n).cwiseProduct(om2);
  for (int j = 0; j < n; ++j) {
    const double denom = w.col(j).sum();
    if (denom > 0.0) {
      c.target.block(1, j + 1, m, 1) = (nu.weight(j) / denom) * w.col(j);
    } else {
      c.target.block(1, j + 1, m, 1).setZero();
      c.target(0, j + 1) = nu.weight(j);
    }
  }
}

double fast_value(const RestrictedCoupling& c, const Eigen::MatrixXd& om) {
  const int m = om.rows();
  const int n = om.cols();
  return ((c.source.block(1, 1, m, n).array() * c.target.block(1, 1, m, n).array()).sqrt() *
          om.array())
      .sum();
}

}  // namespace

RestrictedCoupling update_source_block(const RestrictedCoupling& c, const DiscreteMeasure& mu) {
  if (!c.omega) throw invalid_input("coupling carries no kernel matrix");
  if (c.omega->rows() != mu.size() || c.source.rows() != mu.size() + 1)
    throw invalid_input("coupling shape does not match the measure");
  RestrictedCoupling out = c;
  Eigen::MatrixXd w;
  source_sweep(out, mu, c.omega->entries.cwiseAbs2(), w);
  return out;
}

RestrictedCoupling update_target_block(const RestrictedCoupling& c, const DiscreteMeasure& nu) {
  if (!c.omega) throw invalid_input("coupling carries no kernel matrix");
  if (c.omega->cols() != nu.size() || c.source.cols() != nu.size() + 1)
    throw invalid_input("coupling shape does not match the measure");
  RestrictedCoupling out = c;
  Eigen::MatrixXd w;
  target_sweep(out, nu, c.omega->entries.cwiseAbs2(), w);
  return out;
}

SolveReport solve_with_cost(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                            std::shared_ptr<const CostMatrix> omega,
                            const SolverConfig& config) {
  if (!(config.epsilon > 0.0)) throw invalid_input("solver epsilon must be positive");
  if (config.max_iterations < 1) throw invalid_input("solver needs at least one iteration");
  check_omega(*omega);
  if (omega->rows() != mu.size() || omega->cols() != nu.size())
    throw invalid_input("kernel matrix shape does not match the measures");

  const Eigen::MatrixXd& om = omega->entries;
  const Eigen::MatrixXd om2 = om.cwiseAbs2();
  const double masses = mu.total_mass() + nu.total_mass();

  SolveReport report;
  report.coupling = uniform_interior_start(mu, nu, std::move(omega));
  RestrictedCoupling& c = report.coupling;

  Eigen::MatrixXd w(om.rows(), om.cols());
  double f = fast_value(c, om);
  if (!std::isfinite(f)) throw numeric_failure("value function is not finite", 0);
  if (config.record_history) report.history.push_back(f);

  for (int it = 1; it <= config.max_iterations; ++it) {
    if (config.target_block_first) {
      target_sweep(c, nu, om2, w);
      source_sweep(c, mu, om2, w);
    } else {
      source_sweep(c, mu, om2, w);
      target_sweep(c, nu, om2, w);
    }
    const double f_prev = f;
    f = fast_value(c, om);
    if (!std::isfinite(f)) throw numeric_failure("value function is not finite", it);
    if (config.record_history) report.history.push_back(f);
    report.iterations = it;
    if (f < kValueFloor) {
      report.converged = true;
      break;
    }
    if ((f - f_prev) / f < config.epsilon) {
      report.converged = true;
      break;
    }
  }

  report.f_star = f;
  report.distance = std::sqrt(std::max(masses - 2.0 * f, 0.0));
  return report;
}

SolveReport solve_with_cost(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                            const CostMatrix& omega, const SolverConfig& config) {
  return solve_with_cost(mu, nu, std::make_shared<const CostMatrix>(omega), config);
}

SolveReport solve(const DiscreteMeasure& mu, const DiscreteMeasure& nu, const Kernel& kernel,
                  const SolverConfig& config) {
  auto omega = std::make_shared<const CostMatrix>(build_cost_matrix(mu, nu, kernel));
  return solve_with_cost(mu, nu, std::move(omega), config);
}

double closed_form_single_atom(double a, double b, const UnitVector& u, const UnitVector& v) {
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b))
    throw invalid_input("atom masses must be positive and finite");
  const double inner = a + b - 2.0 * std::sqrt(a * b) * std::max(u.dot(v), 0.0);
  return std::sqrt(std::max(inner, 0.0));
}

}  // namespace wfr
