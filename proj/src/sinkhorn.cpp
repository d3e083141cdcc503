#include "wfr/sinkhorn.hpp"

#include <cmath>
#include <limits>

namespace wfr {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Ground cost matrix, +inf on unreachable pairs (geodesic distance >= pi/2,
// i.e. nonpositive inner product).
Eigen::MatrixXd ground_cost(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  Eigen::MatrixXd c(mu.size(), nu.size());
  for (int i = 0; i < mu.size(); ++i)
    for (int j = 0; j < nu.size(); ++j) {
      const double dot = mu.support(i).dot(nu.support(j));
      c(i, j) = dot > 0.0 ? -2.0 * std::log(std::min(dot, 1.0)) : kInf;
    }
  return c;
}

double logsumexp(const Eigen::ArrayXd& x) {
  const double m = x.maxCoeff();
  if (m == -kInf) return -kInf;
  return m + std::log((x - m).exp().sum());
}

double kl_divergence(const Eigen::VectorXd& p, const DiscreteMeasure& ref) {
  double kl = 0.0;
  for (int i = 0; i < p.size(); ++i) {
    const double q = ref.weight(i);
    kl += p(i) > 0.0 ? p(i) * std::log(p(i) / q) - p(i) + q : q;
  }
  return kl;
}

}  // namespace

double plan_cost(const TransportPlan& plan, const DiscreteMeasure& mu,
                 const DiscreteMeasure& nu) {
  if (plan.gamma.rows() != mu.size() || plan.gamma.cols() != nu.size())
    throw invalid_input("plan shape does not match the measures");
  const Eigen::MatrixXd c = ground_cost(mu, nu);
  double cost = kl_divergence(plan.gamma.rowwise().sum(), mu) +
                kl_divergence(plan.gamma.colwise().sum().transpose(), nu);
  for (int i = 0; i < plan.gamma.rows(); ++i)
    for (int j = 0; j < plan.gamma.cols(); ++j)
      if (plan.gamma(i, j) > 0.0) cost += plan.gamma(i, j) * c(i, j);
  return cost;
}

SinkhornResult sinkhorn_solve(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                              double lambda, int max_iterations) {
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw invalid_input("regularization weight lambda must be positive");
  if (max_iterations < 1) throw invalid_input("needs at least one iteration");

  const int m = mu.size();
  const int n = nu.size();
  const Eigen::MatrixXd c = ground_cost(mu, nu);
  // Scaled negative cost, -inf on unreachable pairs: exp() of it is the Gibbs
  // kernel, and adding potentials over lambda keeps everything in log scale.
  const Eigen::MatrixXd m0 = (-c / lambda).eval();

  std::vector<bool> row_ok(static_cast<size_t>(m), false), col_ok(static_cast<size_t>(n), false);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j)
      if (c(i, j) < kInf) {
        row_ok[static_cast<size_t>(i)] = true;
        col_ok[static_cast<size_t>(j)] = true;
      }

  Eigen::VectorXd f = Eigen::VectorXd::Zero(m), g = Eigen::VectorXd::Zero(n);
  // Unit-strength KL marginal penalties give this damping of the potential
  // updates; as lambda -> 0 it approaches the hard marginal projection.
  const double kappa = lambda / (1.0 + lambda);

  Eigen::ArrayXd row_buf(n), col_buf(m);
  for (int it = 1; it <= max_iterations; ++it) {
    double delta = 0.0;
    for (int i = 0; i < m; ++i) {
      if (!row_ok[static_cast<size_t>(i)]) continue;
      row_buf = m0.row(i).transpose().array() + g.array() / lambda;
      const double value = kappa * (std::log(mu.weight(i)) - logsumexp(row_buf));
      delta = std::max(delta, std::abs(value - f(i)));
      f(i) = value;
    }
    for (int j = 0; j < n; ++j) {
      if (!col_ok[static_cast<size_t>(j)]) continue;
      col_buf = m0.col(j).array() + f.array() / lambda;
      const double value = kappa * (std::log(nu.weight(j)) - logsumexp(col_buf));
      delta = std::max(delta, std::abs(value - g(j)));
      g(j) = value;
    }
    if (!f.allFinite() || !g.allFinite())
      throw numeric_failure("scaling potentials diverged, try a larger lambda", it);
    if (delta <= 1e-14) break;
  }

  SinkhornResult out;
  out.plan.gamma.resize(m, n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j)
      out.plan.gamma(i, j) = std::exp((f(i) + g(j)) / lambda + m0(i, j));
  if (!out.plan.gamma.allFinite())
    throw numeric_failure("transport plan overflowed, try a larger lambda", max_iterations);
  out.cost = plan_cost(out.plan, mu, nu);
  return out;
}

TransportPlan plan_from_semicoupling(const SemiCoupling& c, const CostMatrix& omega) {
  if (c.source.rows() != omega.rows() + 1 || c.source.cols() != omega.cols() + 1 ||
      c.target.rows() != c.source.rows() || c.target.cols() != c.source.cols())
    throw invalid_input("coupling shape does not match the kernel matrix");
  TransportPlan plan;
  plan.gamma.resize(omega.rows(), omega.cols());
  for (int i = 0; i < omega.rows(); ++i)
    for (int j = 0; j < omega.cols(); ++j) {
      const double p = c.source(i + 1, j + 1) * c.target(i + 1, j + 1);
      plan.gamma(i, j) = p > 0.0 ? std::sqrt(p) * std::max(omega(i, j), 0.0) : 0.0;
    }
  return plan;
}

}  // namespace wfr
